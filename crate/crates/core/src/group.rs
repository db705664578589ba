//! Explicit finite groups of invertible matrices.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::MatrixFp;

/// Upper bound on the order of groups built by closure.
pub const MAX_GROUP_ORDER: usize = 1 << 17;

#[derive(Debug, Clone)]
pub struct FiniteMatrixGroup {
    field: FieldSpec,
    n: usize,
    elements: Vec<MatrixFp>,
    index: HashMap<MatrixFp, usize>,
    generators: Option<Vec<MatrixFp>>,
}

impl PartialEq for FiniteMatrixGroup {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.elements == other.elements
    }
}

impl Eq for FiniteMatrixGroup {}

impl FiniteMatrixGroup {
    /// Closure of the generators under multiplication (breadth-first).
    pub fn from_generators(field: FieldSpec, n: usize, gens: &[MatrixFp]) -> Result<Self> {
        for g in gens {
            check_unit(field, n, g)?;
        }
        let id = MatrixFp::identity(field, n);
        let mut seen: HashMap<MatrixFp, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = &x * g;
                if !seen.contains_key(&y) {
                    if seen.len() >= MAX_GROUP_ORDER {
                        return Err(Error::Scale { size: seen.len() + 1, max: MAX_GROUP_ORDER });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let mut group = FiniteMatrixGroup::assemble(field, n, seen.into_keys().collect());
        group.generators = Some(gens.to_vec());
        Ok(group)
    }

    /// Validates closure under products and inverses.
    pub fn from_elements(field: FieldSpec, n: usize, elements: Vec<MatrixFp>) -> Result<Self> {
        for g in &elements {
            check_unit(field, n, g)?;
        }
        let group = FiniteMatrixGroup::assemble(field, n, elements);
        if !group.contains(&MatrixFp::identity(field, n)) {
            return Err(Error::Structure("group lacks the identity".into()));
        }
        for a in &group.elements {
            let inv = a.inverse().expect("checked invertible");
            if !group.contains(&inv) {
                return Err(Error::Structure(format!("inverse of {a} missing")));
            }
            for b in &group.elements {
                if !group.contains(&(a * b)) {
                    return Err(Error::Structure(format!("product {a}·{b} missing")));
                }
            }
        }
        Ok(group)
    }

    fn assemble(field: FieldSpec, n: usize, mut elements: Vec<MatrixFp>) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        FiniteMatrixGroup { field, n, elements, index, generators: None }
    }

    pub fn trivial(field: FieldSpec, n: usize) -> Self {
        FiniteMatrixGroup::assemble(field, n, vec![MatrixFp::identity(field, n)])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in sorted order.
    pub fn elements(&self) -> &[MatrixFp] {
        &self.elements
    }

    pub fn generators(&self) -> Option<&[MatrixFp]> {
        self.generators.as_deref()
    }

    pub fn contains(&self, m: &MatrixFp) -> bool {
        self.index.contains_key(m)
    }

    pub fn index_of(&self, m: &MatrixFp) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn is_subgroup_of(&self, other: &FiniteMatrixGroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators.as_deref().unwrap_or(&self.elements);
        gens.iter().all(|a| gens.iter().all(|b| a * b == b * a))
    }

    /// `a G a⁻¹`.
    pub fn conjugate(&self, a: &MatrixFp) -> Result<FiniteMatrixGroup> {
        check_unit(self.field, self.n, a)?;
        let inv = a.inverse().expect("checked invertible");
        let els = self.elements.iter().map(|g| &(a * g) * &inv).collect();
        Ok(FiniteMatrixGroup::assemble(self.field, self.n, els))
    }

    /// Image of the group under an arbitrary map, as a set.
    pub fn map_set(&self, f: impl Fn(&MatrixFp) -> MatrixFp) -> Vec<MatrixFp> {
        let mut v: Vec<MatrixFp> = self.elements.iter().map(f).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Cayley table `t[i * order + j] = index(gᵢ gⱼ)`.
    pub fn cayley_table(&self) -> Vec<u32> {
        let k = self.order();
        let mut t = Vec::with_capacity(k * k);
        for a in &self.elements {
            for b in &self.elements {
                t.push(self.index[&(a * b)] as u32);
            }
        }
        t
    }

    /// Builds a group from a set already known to be closed (internal use).
    pub(crate) fn from_trusted(field: FieldSpec, n: usize, elements: Vec<MatrixFp>) -> Self {
        FiniteMatrixGroup::assemble(field, n, elements)
    }
}

fn check_unit(field: FieldSpec, n: usize, g: &MatrixFp) -> Result<()> {
    if g.field() != field || g.n() != n {
        return Err(Error::Dimension(format!("{g:?} is not in M_{n}(F_{})", field.p())));
    }
    if !g.is_invertible() {
        return Err(Error::Membership(format!("{g} is not invertible")));
    }
    Ok(())
}

/// Commutator `a b a⁻¹ b⁻¹`.
pub fn commutator(a: &MatrixFp, b: &MatrixFp) -> MatrixFp {
    let ai = a.inverse().expect("invertible");
    let bi = b.inverse().expect("invertible");
    &(&(a * b) * &ai) * &bi
}

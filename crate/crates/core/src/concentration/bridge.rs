//! Matrix groups as metric groups under the rank metric `d(a, b) = ρ(a − b)`.

use crate::concentration::metric_group::FiniteMetricGroup;
use crate::error::{Error, Result};
use crate::group::FiniteMatrixGroup;
use crate::matrix::MatrixFp;
use crate::rank::rho;

pub fn matrix_group_bridge(g: &FiniteMatrixGroup) -> Result<FiniteMetricGroup> {
    let id = MatrixFp::identity(g.field(), g.n());
    let labels: Vec<String> = g.elements().iter().map(ToString::to_string).collect();
    let k = g.order();
    let flat = g.cayley_table();
    let table: Vec<Vec<u32>> = flat.chunks(k).map(<[u32]>::to_vec).collect();
    // ρ(z − 1) = ρ(x − y) for z = x y⁻¹ since ρ is invariant under units
    let norm = g.elements().iter().map(|z| rho(&(z - &id))).collect();
    let out = FiniteMetricGroup::from_norm(labels, table, norm)?;
    if !out.is_bi_invariant() {
        return Err(Error::Structure("rank metric failed bi-invariance".into()));
    }
    Ok(out)
}

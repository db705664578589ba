//! Invariant means, convolution and concentration on finite metric groups.

pub mod bridge;
pub mod length;
pub mod lipschitz;
pub mod mean;
pub mod metric_group;
pub mod product;
pub mod sampling;

pub use bridge::matrix_group_bridge;
pub use length::{
    azuma_bound, azuma_bound_exact, chain_length, coset_quotient_diameter, sup_quotient_diameter, ChainLength,
};
pub use lipschitz::{is_lipschitz, lipschitz_regularize};
pub use mean::{concentration_profile, convolve_function, convolve_means, GroupFunction, MeanVector, Profile};
pub use metric_group::{FiniteMetricGroup, FiniteMetricSpace, MetricTable, SubgroupChain};
pub use product::{build_product_chain, hamming_cube, partial_sum_function};

//! Compositional data analysis built around the one-parameter α-transformation
//! family that interpolates between raw-data analysis (α = 1) and log-ratio
//! analysis (α → 0).
//!
//! The crate provides:
//!
//! - [`composition`]: simplex points, datasets, closure and the two
//!   simplicial addition operators;
//! - [`helmert`]: the orthonormal Helmert sub-matrix used by the isometric
//!   transformations;
//! - [`transforms`]: clr, ilr, alr, Box-Cox ratio, the α-power transform and
//!   its isometric form, with inverses where defined;
//! - [`geometry`]: the Δ_RDA / Δ_LRA / Δ_α distances, the matching Fréchet
//!   means and a numerical Fréchet-mean oracle;
//! - [`select`]: profile-likelihood selection of α under a multivariate
//!   normal model in the transformed coordinates;
//! - [`ternary`]: deterministic SVG ternary diagrams;
//! - [`fixtures`]: embedded reference datasets.

#![forbid(unsafe_code)]

pub mod composition;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod helmert;
pub mod select;
pub mod ternary;
pub mod transforms;

pub use composition::{perturb, simplicial_add, uniform, Composition, CompositionDataset};
pub use error::{Error, Result};
pub use geometry::{
    check_subcompositional_dominance, dist_alpha, dist_lra, dist_rda, frechet_oracle,
    mean_arithmetic, mean_frechet_alpha, mean_geometric_closed, DistanceKind, DistanceSpec,
    FrechetMeanResult,
};
pub use helmert::HelmertBasis;
pub use select::{
    profile_loglik_u, profile_loglik_z, select_alpha, simplex_escape_fraction, CriterionKind,
    CriterionSpec, ProfileLikelihoodResult,
};
pub use transforms::{
    alpha_isometric, alpha_power, alr, boxcox_ratio, clr, ilr, inverse_alpha_isometric,
    inverse_alpha_power, transform_dataset, TransformKind, TransformSpec, TransformedData,
};

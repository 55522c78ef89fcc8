//! Second Chern numbers of `SU(2)` bundles over `S⁴` from clutching
//! functions on `S³`, by quadrature of the Chern-Weil integrand.
//!
//! `S³` is covered by two hemispheres, each parametrized by the chart box
//! `(α, β, r) ∈ [0,2π]×[0,π]×[0,1]` of spherical coordinates on the unit
//! ball. A clutching function is a pair of maps on these boxes that agree
//! on the gluing sphere `r = 1`.

pub mod algebra;
pub mod charts;
pub mod curvature;
pub mod forms;
pub mod profile;
pub mod quadrature;

use thiserror::Error;

pub use algebra::{Cx, Jet, Mat2, Real, Su2, SU2Matrix, C64};
pub use charts::{
    analytic, build_clutching_pair, build_example_cocycles, build_raw_example_cocycles, example_clutching, Chart,
    ChartMap, ClutchingFunction, CocycleCheck, CocyclePair, Example, FnChart, Su2Formula,
};
pub use curvature::{curvature_local_form, det_curvature_direct, det_curvature_su2};
pub use forms::{a_form, chern2, j_form, mapping_degree, partials, Chern2, Chern2Report, Derivatives, Partials};
pub use profile::{f2_moment, PartitionProfile};
pub use quadrature::{gauss_legendre, GridSize, QuadratureGrid};

/// Radius `√8/3` where the height `−√(1 − r²)` of the lower hemisphere of
/// `S⁴` leaves the transition band of the partition of unity.
pub const COLLAR_RADIUS: f64 = 0.9428090415820634;

#[derive(Debug, Error)]
pub enum ChernWeilError {
    #[error("bad quadrature grid: {0}")]
    BadGrid(String),
    #[error("bad partition profile: {0}")]
    BadProfile(String),
    #[error("non-finite integrand in the {chart} chart at {point:?}")]
    NonFinite { chart: &'static str, point: [f64; 3] },
    #[error("point {0:?} lies outside the chart domain")]
    OutsideChart(Vec<f64>),
    #[error("chart has no closed-form derivative; use central differences")]
    NoAnalyticDerivative,
    #[error("cocycles fail to commute on the gluing sphere (‖[ρ₁, ρ₂]‖ = {0:e})")]
    NotCommuting(f64),
    #[error("unknown example {0:?}; expected paper, paper-trivial, constant or qpow:<d>")]
    UnknownExample(String),
}

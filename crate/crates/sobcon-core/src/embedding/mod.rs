//! The embedding constants A²ₙ,ₖ(a) and their extrema.
//!
//! In the symmetrizing variable t = a²−a (so a ∈ \[0;1\] maps onto t ∈ \[−1/4; 0\]),
//! every constant takes the exact form
//!
//!   A²ₙ,ₖ(a) = −t^(2n−2k−1) · Bₙ,ₖ(t) / ((n−k)!)²(2n−2k−1),
//!
//! with Bₙ,ₖ a degree-k polynomial with constant term (n−k)². The profile is
//! produced by a one-step recurrence that subtracts the square of a Legendre
//! antiderivative, re-expressed in t by the structured expansion of dᵏ(tᵐ)/daᵏ.
//!
//! On top of the profiles sit the extremum analyses: Sturm-certified critical
//! points of the derivative factor, classification, interlacing chains for
//! k = 3 and k = 5, certified enclosures of Λ²ₙ,ₖ, and the maxima-count scan.

mod closed_form;
mod extremum;
mod profile;
mod tpower;

pub use closed_form::{
    e_two_sqrt_six, e_two_sqrt_six_bound, k3_ratio_g, k3_ratio_h, k5_angle_tangent_exceeds_one,
    k5_trig_roots, lambda_k0_exact, lambda_k3_closed_form, lambda_k3_product_form,
    lambda_k3_simplified, lambda_k5_closed_form,
};
pub use extremum::{
    critical_points_k3, critical_points_k5, derivative_factor, hypothesis_scan,
    hypothesis_scan_row, k5_diagnostics, k5_sturm_maxima, lambda_constant, rescale_to_symmetric,
    CriticalKind, CriticalPoint, CriticalPointRecord, EnclosureRecord, ExtremumReport,
    K5Diagnostics, LambdaResult, ReportRecord, ScanRow,
};
pub use profile::{
    a_sq_direct_sum, profile_from_recurrence, profile_k3, profile_k5, EmbeddingProfile,
};
pub use tpower::{t_power_derivative, TPowerDerivative};

use crate::ratpoly::Rat;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("derivative order k = {k} must satisfy k <= n-1 (n = {n}, n >= 1)")]
    InvalidOrders { n: usize, k: usize },
    #[error("d^{order}(t^{m})/da^{order} requires order <= m")]
    DerivativeOrderTooLarge { m: usize, order: usize },
    #[error("the k = {k} analysis requires n >= {min_n} (got n = {n})")]
    NTooSmall { n: usize, k: usize, min_n: usize },
    #[error("evaluation point a = {a} must lie strictly inside (0, 1)")]
    PointOutOfRange { a: Rat },
    #[error("requested precision must be positive")]
    NonpositivePrecision,
}

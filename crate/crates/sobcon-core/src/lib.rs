//! Exact computation of the sharp embedding constants of W̊ⁿ₂\[0;1\] into W̊ᵏ∞\[0;1\].
//!
//! For `f` in the Sobolev space H = W̊ⁿ₂\[0;1\] (derivatives 0..n−1 vanishing at both
//! endpoints, norm ‖f‖² = ∫₀¹|f⁽ⁿ⁾|²), the evaluation functional f ↦ f⁽ᵏ⁾(a) has a
//! squared norm A²ₙ,ₖ(a), the smallest constant with |f⁽ᵏ⁾(a)|² ≤ A²ₙ,ₖ(a)·‖f‖².
//! Its supremum over a is the sharp embedding constant Λ²ₙ,ₖ.
//!
//! Everything here is exact: scalars are arbitrary-precision rationals, polynomials
//! are dense over ℚ, root locations are certified Sturm brackets, and irrational
//! quantities (Λ² at an irrational maximizer, the radical/trigonometric closed
//! forms) are produced as rational enclosures of any requested width.
//!
//! The crate is organized around three independent routes to the same numbers,
//! which cross-validate each other:
//!
//! * [`spline`]: the closed-form extremal spline gₙ,ₖ (the Riesz representer of the
//!   functional) and its exact H-norm;
//! * [`embedding`]: the Legendre-antiderivative recurrence producing A²ₙ,ₖ in the
//!   variable t = a²−a, plus the k=3 and k=5 extremum analyses and Λ² enclosures;
//! * [`oracle`]: a brute-force variational maximizer over an explicit
//!   finite-dimensional subspace, using nothing but exact linear algebra.

pub mod embedding;
pub mod interval;
pub mod legendre;
pub mod oracle;
pub mod ratpoly;
pub mod spline;
pub mod verify;

pub use interval::RatInterval;
pub use ratpoly::{Degree, PiecewisePoly, Poly, Rat};

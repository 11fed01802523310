//! Extremal splines: the Riesz representers of f ↦ f⁽ᵏ⁾(a) on W̊ⁿ₂\[0;1\].
//!
//! The representer gₙ,ₖ is a two-piece polynomial of degree 2n−1 built from an
//! auxiliary bivariate polynomial hₙ,ₖ(x,a); one piece uses (x,a), the mirror
//! piece uses (1−x, 1−a). The constructor does not trust the closed form: it
//! re-derives every defining condition (boundary values, smoothness, the single
//! derivative jump, the reproducing value) by exact arithmetic and panics on the
//! first violation, so an `ExtremalSpline` in hand is a verified object.
//!
//! ‖gₙ,ₖ‖²_H equals A²ₙ,ₖ(a), which is what ties this module to the embedding
//! recurrence and to the variational oracle.

use crate::ratpoly::{
    binomial, factorial, format_rat, parse_rat, rat_pow, sign_pow, PiecewisePoly, Poly, Rat,
};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SplineError {
    #[error("derivative order k = {k} must satisfy k <= n-1 (n = {n}, n >= 1)")]
    InvalidOrders { n: usize, k: usize },
    #[error("breakpoint a = {a} must lie strictly inside (0, 1)")]
    BreakpointOutOfRange { a: Rat },
    #[error("malformed spline record: {0}")]
    BadRecord(String),
}

/// The kernel polynomial hₙ,ₖ(x, a) for a fixed rational a.
///
/// h(x, a) = Σ_{l=0}^{n−1} (−1)^{n−1−l} C(2n−1−k, n−1−l) aˡ x^{n−1−l}
///           · Σ_{m=0}^{l} C(n−1+m, m) xᵐ,
/// a polynomial of degree ≤ n−1 in x. Any rational a is allowed; the spline
/// uses both (x, a) and (1−x, 1−a).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPoly {
    pub n: usize,
    pub k: usize,
    pub a: Rat,
    pub poly: Poly,
}

pub fn build_h(n: usize, k: usize, a: &Rat) -> Result<HPoly, SplineError> {
    if n < 1 || k >= n {
        return Err(SplineError::InvalidOrders { n, k });
    }
    let mut poly = Poly::zero();
    let mut a_pow = Rat::one();
    for l in 0..n {
        let inner = Poly::new(
            (0..=l)
                .map(|m| Rat::from_integer(binomial(n - 1 + m, m)))
                .collect(),
        );
        let outer =
            sign_pow(n - 1 - l) * Rat::from_integer(binomial(2 * n - 1 - k, n - 1 - l)) * &a_pow;
        poly = &poly + &inner.mul_xpow(n - 1 - l).scale(&outer);
        a_pow *= a;
    }
    Ok(HPoly {
        n,
        k,
        a: a.clone(),
        poly,
    })
}

/// Builds the two pieces of (2n−k−1)!·gₙ,ₖ stripped of their signs:
/// g₁ = (1−a)^(n−k)·xⁿ·h(1−x, 1−a) and g₂ = a^(n−k)·(1−x)ⁿ·h(x, a).
fn raw_pieces(n: usize, k: usize, a: &Rat) -> (Poly, Poly) {
    let one_minus_a = Rat::one() - a;
    let h_right = build_h(n, k, a).expect("orders checked by caller").poly;
    let h_left = build_h(n, k, &one_minus_a)
        .expect("orders checked by caller")
        .poly
        .reflect_unit();
    let g1 = Poly::x().pow(n).scale(&rat_pow(&one_minus_a, n - k));
    let g1 = &g1 * &h_left;
    let g2 = Poly::from_int_coeffs(&[1, -1])
        .pow(n)
        .scale(&rat_pow(a, n - k));
    let g2 = &g2 * &h_right;
    (g1, g2)
}

/// The extremal spline gₙ,ₖ for the functional f ↦ f⁽ᵏ⁾(a), together with its
/// exact squared H-norm (= A²ₙ,ₖ(a)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalSpline {
    pub n: usize,
    pub k: usize,
    pub a: Rat,
    pub g: PiecewisePoly,
    pub norm_sq: Rat,
}

pub fn build_extremal_spline(n: usize, k: usize, a: &Rat) -> Result<ExtremalSpline, SplineError> {
    if n < 1 || k >= n {
        return Err(SplineError::InvalidOrders { n, k });
    }
    if !(a > &Rat::zero() && a < &Rat::one()) {
        return Err(SplineError::BreakpointOutOfRange { a: a.clone() });
    }
    let (g1, g2) = raw_pieces(n, k, a);
    let inv_fact = Rat::new(1.into(), factorial(2 * n - k - 1));
    let left = g1.scale(&(sign_pow(n - k - 1) * &inv_fact));
    let right = g2.scale(&(sign_pow(n - 1) * &inv_fact));
    let g = PiecewisePoly::on_unit(a.clone(), left, right).expect("a checked above");
    verify_spline_conditions(&g, n, k);
    let norm_sq = g.h_norm_sq(n);
    // the representer reproduces itself: ‖g‖² = g⁽ᵏ⁾(a)
    assert_eq!(
        norm_sq,
        g.deriv_at_break_left(k),
        "representer self-evaluation failed at n={n} k={k} a={a}"
    );
    Ok(ExtremalSpline {
        n,
        k,
        a: a.clone(),
        g,
        norm_sq,
    })
}

/// Exact checks of all defining conditions; panics on any violation.
fn verify_spline_conditions(g: &PiecewisePoly, n: usize, k: usize) {
    let zero = Rat::zero();
    let one = Rat::one();
    assert!(g.left().degree() <= crate::ratpoly::Degree::Finite(2 * n - 1));
    assert!(g.right().degree() <= crate::ratpoly::Degree::Finite(2 * n - 1));
    for j in 0..n {
        assert!(
            g.left().derivative_n(j).eval(&zero).is_zero(),
            "left boundary failed at order {j}"
        );
        assert!(
            g.right().derivative_n(j).eval(&one).is_zero(),
            "right boundary failed at order {j}"
        );
    }
    let jump_order = 2 * n - k - 1;
    for i in 0..=(2 * n - 1) {
        let diff = g.deriv_at_break_left(i) - g.deriv_at_break_right(i);
        if i == jump_order {
            assert_eq!(
                diff,
                sign_pow(n - k - 1),
                "jump at order {i} has the wrong size or sign"
            );
        } else {
            assert!(diff.is_zero(), "unexpected jump at order {i}");
        }
    }
}

/// Exact squared H-norm of the spline, ∫₀¹ (g⁽ⁿ⁾)².
pub fn spline_norm_sq(s: &ExtremalSpline) -> Rat {
    s.norm_sq.clone()
}

/// Checks the piece identity g₁(x) − (−1)ᵏ·g₂(x) = (x−a)^(2n−k−1) with a
/// treated as a free parameter. Both sides are polynomials of degree ≤ 2n−1
/// in a, so agreement at 2n+2 distinct rational values of a proves the
/// identity. Panics on invalid orders (callers own the precondition).
pub fn piece_identity_check(n: usize, k: usize) -> bool {
    assert!(
        n >= 1 && k < n,
        "piece_identity_check requires 0 <= k <= n-1"
    );
    let samples = 2 * n + 2;
    for j in 1..=samples {
        let a = Rat::new((j as i64).into(), (samples as i64 + 1).into());
        let (g1, g2) = raw_pieces(n, k, &a);
        let lhs = &g1 - &g2.scale(&sign_pow(k));
        let x_minus_a = Poly::new(vec![-a.clone(), Rat::one()]);
        if lhs != x_minus_a.pow(2 * n - k - 1) {
            return false;
        }
    }
    true
}

/// Test functions spanning enough of H to exercise the reproducing property:
/// xⁿ(1−x)ⁿ·r(x) satisfies all 2n boundary conditions for any polynomial r.
pub fn h_member(n: usize, r: &Poly) -> Poly {
    let window = &Poly::x().pow(n) * &Poly::from_int_coeffs(&[1, -1]).pow(n);
    &window * r
}

/// Serialized form of an extremal spline; rationals as "p/q" strings so the
/// round trip is bit-exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplineRecord {
    pub n: usize,
    pub k: usize,
    pub a: String,
    pub left_coeffs: Vec<String>,
    pub right_coeffs: Vec<String>,
    pub norm_sq: String,
}

impl From<&ExtremalSpline> for SplineRecord {
    fn from(s: &ExtremalSpline) -> Self {
        SplineRecord {
            n: s.n,
            k: s.k,
            a: format_rat(&s.a),
            left_coeffs: s.g.left().coeffs().iter().map(format_rat).collect(),
            right_coeffs: s.g.right().coeffs().iter().map(format_rat).collect(),
            norm_sq: format_rat(&s.norm_sq),
        }
    }
}

impl SplineRecord {
    /// Reconstructs and re-verifies the spline (imports are not trusted).
    pub fn into_spline(&self) -> Result<ExtremalSpline, SplineError> {
        let bad = |e: crate::ratpoly::PolyError| SplineError::BadRecord(e.to_string());
        let a = parse_rat(&self.a).map_err(bad)?;
        let rebuilt = build_extremal_spline(self.n, self.k, &a)?;
        let left: Result<Vec<Rat>, _> = self.left_coeffs.iter().map(|s| parse_rat(s)).collect();
        let right: Result<Vec<Rat>, _> = self.right_coeffs.iter().map(|s| parse_rat(s)).collect();
        let (left, right) = (left.map_err(bad)?, right.map_err(bad)?);
        if rebuilt.g.left() != &Poly::new(left)
            || rebuilt.g.right() != &Poly::new(right)
            || rebuilt.norm_sq != parse_rat(&self.norm_sq).map_err(bad)?
        {
            return Err(SplineError::BadRecord(
                "coefficients disagree with the construction".into(),
            ));
        }
        Ok(rebuilt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;

    #[test]
    fn h_small_cases() {
        let a = rat(2, 5);
        assert_eq!(build_h(1, 0, &a).unwrap().poly, Poly::one());
        // n=2, k=0: a(1+2x) − 3x
        let expected = &Poly::from_int_coeffs(&[1, 2]).scale(&a) - &Poly::from_int_coeffs(&[0, 3]);
        assert_eq!(build_h(2, 0, &a).unwrap().poly, expected);
        // n=2, k=1: a(1+2x) − 2x
        let expected = &Poly::from_int_coeffs(&[1, 2]).scale(&a) - &Poly::from_int_coeffs(&[0, 2]);
        assert_eq!(build_h(2, 1, &a).unwrap().poly, expected);
        assert!(build_h(1, 1, &a).is_err());
        assert!(build_h(0, 0, &a).is_err());
    }

    #[test]
    fn first_order_spline_is_the_hat_kernel() {
        let a = rat(1, 3);
        let s = build_extremal_spline(1, 0, &a).unwrap();
        // left x(1−a), right a(1−x)
        assert_eq!(s.g.left(), &Poly::x().scale(&rat(2, 3)));
        assert_eq!(
            s.g.right(),
            &Poly::from_int_coeffs(&[1, -1]).scale(&rat(1, 3))
        );
        // ‖g‖² = a(1−a)
        assert_eq!(s.norm_sq, rat(2, 9));
        let half = build_extremal_spline(1, 0, &rat(1, 2)).unwrap();
        assert_eq!(half.norm_sq, rat(1, 4));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(
            build_extremal_spline(2, 2, &rat(1, 2)),
            Err(SplineError::InvalidOrders { .. })
        ));
        assert!(matches!(
            build_extremal_spline(2, 0, &rat(0, 1)),
            Err(SplineError::BreakpointOutOfRange { .. })
        ));
        assert!(matches!(
            build_extremal_spline(2, 0, &rat(7, 4)),
            Err(SplineError::BreakpointOutOfRange { .. })
        ));
    }

    #[test]
    fn jump_sign_n2_k0() {
        let s = build_extremal_spline(2, 0, &rat(1, 2)).unwrap();
        let jump = s.g.deriv_at_break_left(3) - s.g.deriv_at_break_right(3);
        assert_eq!(jump, rat(-1, 1)); // (−1)^(n−k−1) = −1
    }

    #[test]
    fn norm_values() {
        // n=2, k=1, a=1/2: A² = 1/16
        assert_eq!(
            build_extremal_spline(2, 1, &rat(1, 2)).unwrap().norm_sq,
            rat(1, 16)
        );
        // n=3, k=0, a=1/2: (1/4)⁵/(2!²·5) = 1/20480
        assert_eq!(
            build_extremal_spline(3, 0, &rat(1, 2)).unwrap().norm_sq,
            rat(1, 20480)
        );
    }

    #[test]
    fn piece_identity_small_cases() {
        // hand-checkable instances
        let a = rat(1, 3);
        let (g1, g2) = raw_pieces(1, 0, &a);
        assert_eq!(&g1 - &g2, Poly::new(vec![-a, Rat::one()]));
        let a = rat(1, 2);
        let (g1, g2) = raw_pieces(2, 1, &a);
        let expected = Poly::new(vec![-a.clone(), Rat::one()]).pow(2);
        assert_eq!(&g1 + &g2, expected); // (−1)^k = −1 for k=1
                                         // and the parametric check
        assert!(piece_identity_check(1, 0));
        assert!(piece_identity_check(2, 1));
        assert!(piece_identity_check(4, 2));
    }

    #[test]
    fn reproducing_property_spot_check() {
        let (n, k, a) = (3usize, 1usize, rat(2, 7));
        let s = build_extremal_spline(n, k, &a).unwrap();
        let f = h_member(n, &Poly::from_int_coeffs(&[2, -1, 0, 3]));
        let lhs = s.g.h_inner_poly(&f, n);
        let rhs = f.derivative_n(k).eval(&a);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn record_round_trip_is_bit_exact() {
        let s = build_extremal_spline(3, 2, &rat(2, 5)).unwrap();
        let rec = SplineRecord::from(&s);
        let json = serde_json::to_string(&rec).unwrap();
        let back: SplineRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(rec, back);
        assert_eq!(back.into_spline().unwrap(), s);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}

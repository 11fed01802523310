//! Closed forms for Λ²ₙ,₃ and Λ²ₙ,₅ and the ratio functions behind them,
//! all as certified interval enclosures.
//!
//! For k = 3 the maximizer is t₁ = −(u + √(3u))/(2(2n−1)(2n−3)) with
//! u = (n−2)(2n−3); three algebraically equivalent routes to Λ²ₙ,₃ are
//! provided so they can referee one another. For k = 5 the maximizer is the
//! leftmost root of a cubic, expressed trigonometrically through the angle
//! φ ∈ (π/4, π/2) with cos φ = (2n−11)√(2n−3)/((2n−5)√(5(n−3))); the closed
//! form composes B = 2√(5(n−3))·cos(φ/3 − π/3) + (n−3)√(2n−3) with the
//! quintic profile at t₁ = −B/(2(2n−1)√(2n−3)).

use super::profile::{profile_k3, profile_k5};
use super::EmbeddingError;
use crate::interval::{arccos_interval, cos_interval, pi, sqrt_rat, RatInterval};
use crate::ratpoly::{factorial, rat, rat_int, rat_pow, Rat};
use num_bigint::BigInt;
use num_traits::One;

fn check_n(n: usize, k: usize, min_n: usize) -> Result<i64, EmbeddingError> {
    if n < min_n {
        return Err(EmbeddingError::NTooSmall { n, k, min_n });
    }
    Ok(n as i64)
}

/// Enclosure of t₁ for k = 3: −(u + √(3u))/(2(2n−1)(2n−3)).
fn k3_t1(ni: i64, bits: u32) -> RatInterval {
    let u = rat_int((ni - 2) * (2 * ni - 3));
    let s = sqrt_rat(&(rat_int(3) * &u), bits);
    RatInterval::point(u)
        .add(&s)
        .neg()
        .scale(&(Rat::one() / rat_int(2 * (2 * ni - 1) * (2 * ni - 3))))
}

/// Λ²ₙ,₃ by plugging the radical t₁ into the exact cubic profile.
pub fn lambda_k3_closed_form(n: usize, bits: u32) -> Result<RatInterval, EmbeddingError> {
    let ni = check_n(n, 3, 4)?;
    let profile = profile_k3(n)?;
    Ok(profile.eval_t_interval(&k3_t1(ni, bits)))
}

/// Λ²ₙ,₃ via the simplified evaluation
/// (−t₁)^(2n−7) · 3(n−2)·(3(n−2)(2n−5) − (2n−7)√(3u)) / (2(2n−1)²(n−2)!²(2n−7)).
pub fn lambda_k3_simplified(n: usize, bits: u32) -> Result<RatInterval, EmbeddingError> {
    let ni = check_n(n, 3, 4)?;
    let u = rat_int((ni - 2) * (2 * ni - 3));
    let s = sqrt_rat(&(rat_int(3) * &u), bits);
    let minus_t1 = RatInterval::point(u)
        .add(&s)
        .scale(&(Rat::one() / rat_int(2 * (2 * ni - 1) * (2 * ni - 3))));
    let linear = RatInterval::point(rat_int(3 * (ni - 2) * (2 * ni - 5)))
        .sub(&s.scale(&rat_int(2 * ni - 7)));
    let f = factorial(n - 2);
    let denom =
        rat_int(2 * (2 * ni - 1) * (2 * ni - 1) * (2 * ni - 7)) * Rat::from_integer(&f * &f);
    Ok(minus_t1
        .powi(2 * n - 7)
        .mul(&linear)
        .scale(&(rat_int(3 * (ni - 2)) / denom))
        .round_out(4 * bits))
}

/// Λ²ₙ,₃ in fully multiplied-out product form:
/// ((u + √(3u))/((2n−1)(2n−3)))^(2n−7) · 3(n−2)(3(n−2)(2n−5) − (2n−7)√(3u))
///   / (4^(n−3)·(n−2)!²·(2n−1)²·(2n−7)).
pub fn lambda_k3_product_form(n: usize, bits: u32) -> Result<RatInterval, EmbeddingError> {
    let ni = check_n(n, 3, 4)?;
    let u = rat_int((ni - 2) * (2 * ni - 3));
    let s = sqrt_rat(&(rat_int(3) * &u), bits);
    let first = RatInterval::point(u)
        .add(&s)
        .scale(&(Rat::one() / rat_int((2 * ni - 1) * (2 * ni - 3))))
        .powi(2 * n - 7);
    let linear = RatInterval::point(rat_int(3 * (ni - 2) * (2 * ni - 5)))
        .sub(&s.scale(&rat_int(2 * ni - 7)));
    let f = factorial(n - 2);
    let denom = Rat::from_integer(BigInt::one() << (2 * (n - 3)))
        * Rat::from_integer(&f * &f)
        * rat_int((2 * ni - 1) * (2 * ni - 1) * (2 * ni - 7));
    Ok(first
        .mul(&linear)
        .scale(&(rat_int(3 * (ni - 2)) / denom))
        .round_out(4 * bits))
}

pub fn lambda_k3_description(n: usize) -> String {
    format!(
        "((u + sqrt(3u))/((2n-1)(2n-3)))^(2n-7) * 3(n-2)(3(n-2)(2n-5) - (2n-7)sqrt(3u)) \
         / (4^(n-3) (n-2)!^2 (2n-1)^2 (2n-7)), u = (n-2)(2n-3), n = {n}"
    )
}

/// g(n) = (t₁/t₂)^(2n−7) = ((u + √(3u))/(u − √(3u)))^(2n−7); increasing in n
/// with limit e^(2√6).
pub fn k3_ratio_g(n: usize, bits: u32) -> Result<RatInterval, EmbeddingError> {
    let ni = check_n(n, 3, 4)?;
    let u = rat_int((ni - 2) * (2 * ni - 3));
    let s = sqrt_rat(&(rat_int(3) * &u), bits);
    let num = RatInterval::point(u.clone()).add(&s);
    let den = RatInterval::point(u).sub(&s);
    Ok(num.div(&den).powi(2 * n - 7).round_out(4 * bits))
}

/// h(n) = (3(n−2)(2n−5) − (2n−7)√(3u)) / (3(n−2)(2n−5) + (2n−7)√(3u));
/// decreasing in n with limit 5 − 2√6 > 0.1.
pub fn k3_ratio_h(n: usize, bits: u32) -> Result<RatInterval, EmbeddingError> {
    let ni = check_n(n, 3, 4)?;
    let u = rat_int((ni - 2) * (2 * ni - 3));
    let s = sqrt_rat(&(rat_int(3) * &u), bits).scale(&rat_int(2 * ni - 7));
    let main = rat_int(3 * (ni - 2) * (2 * ni - 5));
    let num = RatInterval::point(main.clone()).sub(&s);
    let den = RatInterval::point(main).add(&s);
    Ok(num.div(&den).round_out(4 * bits))
}

/// The bracket π/4 < φ < π/2 reduces to tan φ > 1 together with cos φ > 0,
/// i.e. to the exact integer inequality 3(n−4)(2n−1)² > (2n−11)²(2n−3)
/// (with 2n−11 > 0 guaranteeing the positive cosine for n ≥ 6).
pub fn k5_angle_tangent_exceeds_one(n: usize) -> bool {
    let ni = n as i64;
    if ni < 6 {
        return false;
    }
    3 * (ni - 4) * (2 * ni - 1) * (2 * ni - 1) > (2 * ni - 11) * (2 * ni - 11) * (2 * ni - 3)
}

/// cos φ as a single square root of the exact rational
/// (2n−11)²(2n−3) / (5(n−3)(2n−5)²).
fn k5_cos_phi(ni: i64, bits: u32) -> RatInterval {
    let num = rat_int((2 * ni - 11) * (2 * ni - 11) * (2 * ni - 3));
    let den = rat_int(5 * (ni - 3) * (2 * ni - 5) * (2 * ni - 5));
    sqrt_rat(&(num / den), bits)
}

/// The three angles φ/3 − π/3, φ/3 + π/3, φ/3 as enclosures.
fn k5_angles(ni: i64, bits: u32) -> (RatInterval, RatInterval, RatInterval) {
    let phi = arccos_interval(&k5_cos_phi(ni, bits + 8), bits + 4);
    let third = phi.scale(&rat(1, 3));
    let pi_third = pi(bits + 4).scale(&rat(1, 3));
    (third.sub(&pi_third), third.add(&pi_third), third)
}

/// The trigonometric critical points for k = 5:
/// tᵢ = z₀ − b·cos(φᵢ) with z₀ = −(n−3)/(2(2n−1)),
/// b = √(5(n−3)) / ((2n−1)√(2n−3)), φ₁ = φ/3 − π/3, φ₂ = φ/3 + π/3, and
/// t₃ = z₀ + b·cos(φ/3). Pure cross-check data for the Sturm brackets.
pub fn k5_trig_roots(n: usize, bits: u32) -> Result<[RatInterval; 3], EmbeddingError> {
    let ni = check_n(n, 5, 6)?;
    let (phi1, phi2, third) = k5_angles(ni, bits);
    let b = sqrt_rat(
        &(rat_int(5 * (ni - 3)) / rat_int((2 * ni - 1) * (2 * ni - 1) * (2 * ni - 3))),
        bits + 8,
    );
    let z0 = RatInterval::point(-rat_int(ni - 3) / rat_int(2 * (2 * ni - 1)));
    let t1 = z0
        .sub(&b.mul(&cos_interval(&phi1, bits + 4)))
        .round_out(bits);
    let t2 = z0
        .sub(&b.mul(&cos_interval(&phi2, bits + 4)))
        .round_out(bits);
    let t3 = z0
        .add(&b.mul(&cos_interval(&third, bits + 4)))
        .round_out(bits);
    Ok([t1, t2, t3])
}

/// Λ²ₙ,₅ through the trigonometric closed form: with
/// B = 2√(5(n−3))·cos(φ/3 − π/3) + (n−3)√(2n−3), the maximizer is
/// t₁ = −B/(2(2n−1)√(2n−3)) and Λ² = A²ₙ,₅(t₁).
pub fn lambda_k5_closed_form(n: usize, bits: u32) -> Result<RatInterval, EmbeddingError> {
    let ni = check_n(n, 5, 6)?;
    let profile = profile_k5(n)?;
    let (phi1, _, _) = k5_angles(ni, bits);
    let s5 = sqrt_rat(&rat_int(5 * (ni - 3)), bits + 8);
    let s2 = sqrt_rat(&rat_int(2 * ni - 3), bits + 8);
    let big_b = cos_interval(&phi1, bits + 4)
        .mul(&s5)
        .scale(&rat_int(2))
        .add(&s2.scale(&rat_int(ni - 3)));
    let t1 = big_b
        .neg()
        .div(&s2.scale(&rat_int(2 * (2 * ni - 1))))
        .round_out(bits);
    Ok(profile.eval_t_interval(&t1))
}

pub fn lambda_k5_description(n: usize) -> String {
    format!(
        "A2(t1)/((n-3)!^2 (2n-11)) with t1 = -B/(2(2n-1)sqrt(2n-3)), \
         B = 2 sqrt(5(n-3)) cos(phi/3 - pi/3) + (n-3) sqrt(2n-3), \
         cos(phi) = (2n-11) sqrt(2n-3)/((2n-5) sqrt(5(n-3))), n = {n}"
    )
}

/// Reference enclosure of e^(2√6), the upper bound for the g(n) ratios.
pub fn e_two_sqrt_six(bits: u32) -> RatInterval {
    let arg = sqrt_rat(&rat_int(6), bits + 8).scale(&rat_int(2));
    crate::interval::exp_interval(&arg, bits)
}

/// e^(2√6) at a default working precision.
pub fn e_two_sqrt_six_bound() -> RatInterval {
    e_two_sqrt_six(120)
}

/// Exact value of Λ²ₙ,₀ = (1/4)^(2n−1)/((n−1)!²(2n−1)).
pub fn lambda_k0_exact(n: usize) -> Result<Rat, EmbeddingError> {
    if n < 1 {
        return Err(EmbeddingError::InvalidOrders { n, k: 0 });
    }
    let f = factorial(n - 1);
    Ok(rat_pow(&rat(1, 4), 2 * n - 1) / (Rat::from_integer(&f * &f) * rat_int(2 * n as i64 - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;

    #[test]
    fn g4_and_h4_anchor_values() {
        // g(4) = (13 + 2√30)/7 and h(4) = (59 − 6√30)/49 exactly
        let bits = 120;
        let s30 = sqrt_rat(&rat_int(30), bits);
        let g4 = k3_ratio_g(4, bits).unwrap();
        let expected_g = RatInterval::point(rat_int(13))
            .add(&s30.scale(&rat_int(2)))
            .scale(&rat(1, 7));
        assert!(g4.intersects(&expected_g));
        assert!(g4.width() < rat(1, 1i64 << 40));
        let h4 = k3_ratio_h(4, bits).unwrap();
        let expected_h = RatInterval::point(rat_int(59))
            .sub(&s30.scale(&rat_int(6)))
            .scale(&rat(1, 49));
        assert!(h4.intersects(&expected_h));
        // the inequalities the global-maximum argument needs
        assert!(g4.lo() > &rat_int(2));
        assert!(h4.lo() > &rat(1, 2));
    }

    #[test]
    fn g5_cubed_form() {
        // g(5) = ((4+√7)/3)³ > 10
        let bits = 120;
        let s7 = sqrt_rat(&rat_int(7), bits);
        let expected = RatInterval::point(rat_int(4))
            .add(&s7)
            .scale(&rat(1, 3))
            .powi(3);
        let g5 = k3_ratio_g(5, bits).unwrap();
        assert!(g5.intersects(&expected));
        assert!(g5.lo() > &rat_int(10));
    }

    #[test]
    fn three_k3_routes_agree() {
        for n in 4..=8usize {
            let a = lambda_k3_closed_form(n, 160).unwrap();
            let b = lambda_k3_simplified(n, 160).unwrap();
            let c = lambda_k3_product_form(n, 160).unwrap();
            assert!(
                a.intersects(&b),
                "profile route vs simplified route at n={n}"
            );
            assert!(a.intersects(&c), "profile route vs product route at n={n}");
            assert!(a.width() < rat(1, 1i64 << 60));
        }
    }

    #[test]
    fn k5_trig_roots_are_roots_of_g3() {
        // the trigonometric forms must land inside tight enclosures around the
        // actual cubic roots; checked via the polynomial value straddling zero
        let ni = 6i64;
        let g3 = Poly::new(vec![
            rat_int((ni - 3) * (ni - 4) * (ni - 5)),
            rat_int(6 * (ni - 3) * (ni - 4) * (2 * ni - 5)),
            rat_int(12 * (ni - 3) * (2 * ni - 3) * (2 * ni - 5)),
            rat_int(8 * (2 * ni - 1) * (2 * ni - 3) * (2 * ni - 5)),
        ]);
        for t in k5_trig_roots(6, 140).unwrap() {
            let img = crate::interval::eval_poly(&g3, &t);
            assert!(
                img.lo() <= &Rat::zero() && &Rat::zero() <= img.hi(),
                "trig root misses g3"
            );
        }
    }

    use crate::ratpoly::Poly;
    use num_traits::Zero;

    #[test]
    fn angle_bracket_holds_from_six() {
        for n in 6..=40usize {
            assert!(
                k5_angle_tangent_exceeds_one(n),
                "angle bracket failed at n={n}"
            );
        }
        assert!(!k5_angle_tangent_exceeds_one(5));
    }

    #[test]
    fn lambda_k0_matches_profile() {
        for n in 1..=6usize {
            let exact = lambda_k0_exact(n).unwrap();
            let profile = super::super::profile::profile_from_recurrence(n, 0).unwrap();
            assert_eq!(exact, profile.eval_at_t(&rat(-1, 4)));
        }
    }
}

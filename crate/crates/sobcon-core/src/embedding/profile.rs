//! Embedding-constant profiles: A²ₙ,ₖ as exact data in the variable t = a²−a.

use super::tpower::t_power_derivative;
use super::EmbeddingError;
use crate::interval::{eval_poly, RatInterval};
use crate::legendre::legendre_antiderivative;
use crate::ratpoly::{factorial, isolate_roots, rat, rat_int, rat_pow, Degree, Poly, Rat};
use num_traits::{One, Signed, Zero};

/// A²ₙ,ₖ(a) = −t^(2n−2k−1) · scale · B(t), t = a²−a, with
/// scale = 1/((n−k)!)²(2n−2k−1), deg B = k, B(0) = (n−k)², B > 0 on [−1/4, 0].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingProfile {
    pub n: usize,
    pub k: usize,
    b: Poly,
    scale: Rat,
}

impl EmbeddingProfile {
    fn assemble(n: usize, k: usize, b: Poly) -> Self {
        let f = factorial(n - k);
        let scale = Rat::new(
            1.into(),
            &f * &f * num_bigint::BigInt::from(2 * (n - k) as i64 - 1),
        );
        let profile = EmbeddingProfile { n, k, b, scale };
        profile.check_structure();
        profile
    }

    /// Structure facts every profile must satisfy; violations are bugs.
    fn check_structure(&self) {
        let nk = (self.n - self.k) as i64;
        assert_eq!(
            self.b.degree(),
            Degree::Finite(self.k),
            "B must have degree k"
        );
        assert_eq!(
            self.b.coeff(0),
            rat_int(nk * nk),
            "constant term of B must be (n−k)²"
        );
        let quarter = rat(-1, 4);
        let zero = Rat::zero();
        assert!(self.b.eval(&quarter).is_positive() && self.b.eval(&zero).is_positive());
        if self.k >= 1 {
            let interior = isolate_roots(&self.b, &quarter, &zero).expect("B is nonzero");
            assert!(interior.is_empty(), "B must stay positive on (−1/4, 0)");
        }
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    /// Exponent of the leading t-power, 2n−2k−1.
    pub fn t_exponent(&self) -> usize {
        2 * self.n - 2 * self.k - 1
    }

    /// Exact value at a given t ∈ [−1/4, 0].
    pub fn eval_at_t(&self, t: &Rat) -> Rat {
        -(rat_pow(t, self.t_exponent()) * &self.scale * self.b.eval(t))
    }

    /// Exact A²ₙ,ₖ(a); rejects a outside the open unit interval.
    pub fn eval(&self, a: &Rat) -> Result<Rat, EmbeddingError> {
        if !(a > &Rat::zero() && a < &Rat::one()) {
            return Err(EmbeddingError::PointOutOfRange { a: a.clone() });
        }
        let t = a * a - a;
        Ok(self.eval_at_t(&t))
    }

    /// Certified image enclosure of A² over a t-interval.
    pub fn eval_t_interval(&self, t: &RatInterval) -> RatInterval {
        let power = t.powi(self.t_exponent());
        eval_poly(&self.b, t)
            .mul(&power)
            .scale(&-self.scale.clone())
            .round_out(512)
    }
}

/// Builds A²ₙ,ₖ by descending the one-step recurrence k times from the base
/// profile A²_{n−k,0} (B = (n−k)²), at each step subtracting
/// (2n′−1)·(P_{n′−1}^{(k′−n′)})² expressed as a polynomial in t.
pub fn profile_from_recurrence(n: usize, k: usize) -> Result<EmbeddingProfile, EmbeddingError> {
    if n < 1 || k >= n {
        return Err(EmbeddingError::InvalidOrders { n, k });
    }
    let base = n - k;
    let mut b = Poly::constant(rat_int((base * base) as i64));
    let t_exp = 2 * base - 1;
    let fb = factorial(base);
    let scale_inv = Rat::from_integer(&fb * &fb * num_bigint::BigInt::from(t_exp as i64));
    for step in 1..=k {
        let np = base + step; // current n′, with k′ = step
        let sq = t_power_derivative(np - 1, step - 1)?.squared_t_poly();
        // (P_{n′−1})² carries 1/((n′−1)!)²; the whole term shares the factor t^(2(n−k)−1)
        let shifted = sq
            .div_xpow(t_exp)
            .expect("squared expansion must vanish to order 2(n−k)−1");
        let fnp = factorial(np - 1);
        let coeff = &scale_inv * rat_int(2 * np as i64 - 1) / Rat::from_integer(&fnp * &fnp);
        b = &b + &shifted.scale(&coeff);
    }
    Ok(EmbeddingProfile::assemble(n, k, b))
}

/// The explicit k = 3 cubic profile (n ≥ 4); asserted equal to the recurrence.
pub fn profile_k3(n: usize) -> Result<EmbeddingProfile, EmbeddingError> {
    if n < 4 {
        return Err(EmbeddingError::NTooSmall { n, k: 3, min_n: 4 });
    }
    let m = |v: i64| rat_int(v);
    let ni = n as i64;
    let bracket = Poly::new(vec![
        m(ni - 2) * m(ni - 2) * m(ni - 3) * m(ni - 3),
        m(3) * m(ni - 2) * m(ni - 2) * m(2 * ni - 3) * m(2 * ni - 7),
        m(12) * m(ni - 1) * m(ni - 2) * m(2 * ni - 3) * m(2 * ni - 7),
        m(4) * m(2 * ni - 1) * m(2 * ni - 3) * m(2 * ni - 3) * m(2 * ni - 7),
    ]);
    let b = bracket.scale(&Rat::new(1.into(), (m(ni - 2) * m(ni - 2)).numer().clone()));
    let explicit = EmbeddingProfile::assemble(n, 3, b);
    let recurrence = profile_from_recurrence(n, 3)?;
    assert_eq!(
        explicit, recurrence,
        "explicit k=3 profile disagrees with the recurrence at n={n}"
    );
    Ok(explicit)
}

/// The explicit k = 5 quintic profile (n ≥ 6); asserted equal to the recurrence.
pub fn profile_k5(n: usize) -> Result<EmbeddingProfile, EmbeddingError> {
    if n < 6 {
        return Err(EmbeddingError::NTooSmall { n, k: 5, min_n: 6 });
    }
    let m = |v: i64| rat_int(v);
    let ni = n as i64;
    let bracket = Poly::new(vec![
        m(ni - 3) * m(ni - 3) * m(ni - 4) * m(ni - 4) * m(ni - 5) * m(ni - 5),
        m(5) * m(ni - 3) * m(ni - 3) * m(ni - 4) * m(ni - 4) * m(2 * ni - 5) * m(2 * ni - 11),
        m(40) * m(ni - 2) * m(ni - 3) * m(ni - 3) * m(ni - 4) * m(2 * ni - 5) * m(2 * ni - 11),
        m(40)
            * m(ni - 2)
            * m(ni - 3)
            * m(2 * ni - 3)
            * m(2 * ni - 5)
            * m(2 * ni - 7)
            * m(2 * ni - 11),
        m(80)
            * m(ni - 1)
            * m(ni - 3)
            * m(2 * ni - 3)
            * m(2 * ni - 5)
            * m(2 * ni - 5)
            * m(2 * ni - 11),
        m(16)
            * m(2 * ni - 1)
            * m(2 * ni - 3)
            * m(2 * ni - 3)
            * m(2 * ni - 5)
            * m(2 * ni - 5)
            * m(2 * ni - 11),
    ]);
    let denom = m(ni - 3) * m(ni - 3) * m(ni - 4) * m(ni - 4);
    let b = bracket.scale(&(Rat::one() / denom));
    let explicit = EmbeddingProfile::assemble(n, 5, b);
    let recurrence = profile_from_recurrence(n, 5)?;
    assert_eq!(
        explicit, recurrence,
        "explicit k=5 profile disagrees with the recurrence at n={n}"
    );
    Ok(explicit)
}

/// A²ₙ,ₖ(a) assembled the long way round: the base term minus the full sum of
/// squared Legendre antiderivatives evaluated in x-space. Independent of the
/// step-by-step t-substitution path, hence usable as its referee.
pub fn a_sq_direct_sum(n: usize, k: usize, a: &Rat) -> Result<Rat, EmbeddingError> {
    if n < 1 || k >= n {
        return Err(EmbeddingError::InvalidOrders { n, k });
    }
    if !(a > &Rat::zero() && a < &Rat::one()) {
        return Err(EmbeddingError::PointOutOfRange { a: a.clone() });
    }
    let base = n - k;
    let fb = factorial(base - 1);
    let base_term = rat_pow(&(a * (Rat::one() - a)), 2 * base - 1)
        / Rat::from_integer(&fb * &fb * num_bigint::BigInt::from(2 * base as i64 - 1));
    let mut sum = Rat::zero();
    for m in base..n {
        let p = legendre_antiderivative(m, base)
            .expect("base <= m by construction")
            .poly;
        let v = p.eval(a);
        sum += &v * &v * rat_int(2 * m as i64 + 1);
    }
    Ok(base_term - sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;

    #[test]
    fn base_profiles_have_constant_b() {
        for n in 1..=6usize {
            let p = profile_from_recurrence(n, 0).unwrap();
            assert_eq!(p.b(), &Poly::constant(rat_int((n * n) as i64)));
        }
    }

    #[test]
    fn first_step_gives_one_plus_three_t() {
        let p = profile_from_recurrence(2, 1).unwrap();
        assert_eq!(p.b(), &Poly::from_int_coeffs(&[1, 3]));
        // A²₂,₁ = −t − 3t²; at a = 1/2 (t = −1/4) the value is 1/16
        assert_eq!(p.eval(&rat(1, 2)).unwrap(), rat(1, 16));
    }

    #[test]
    fn k2_profile_matches_the_closed_quadratic() {
        for n in 3..=10usize {
            let p = profile_from_recurrence(n, 2).unwrap();
            let ni = n as i64;
            let expected = Poly::new(vec![
                rat_int((ni - 2) * (ni - 2)),
                rat_int(4 * (ni - 1) * (2 * ni - 5)),
                rat_int(4 * (2 * ni - 1) * (2 * ni - 5)),
            ]);
            assert_eq!(p.b(), &expected, "k=2 quadratic mismatch at n={n}");
        }
    }

    #[test]
    fn k4_profile_matches_the_closed_quartic() {
        for n in 5..=10usize {
            let p = profile_from_recurrence(n, 4).unwrap();
            let ni = n as i64;
            let bracket = Poly::new(vec![
                rat_int((ni - 3) * (ni - 3) * (ni - 4) * (ni - 4)),
                rat_int(8 * (ni - 2) * (ni - 3) * (ni - 3) * (2 * ni - 9)),
                rat_int(24 * (ni - 2) * (ni - 3) * (2 * ni - 3) * (2 * ni - 9)),
                rat_int(32 * (ni - 1) * (2 * ni - 3) * (2 * ni - 5) * (2 * ni - 9)),
                rat_int(16 * (2 * ni - 1) * (2 * ni - 3) * (2 * ni - 3) * (2 * ni - 9)),
            ]);
            let expected = bracket.scale(&(Rat::one() / rat_int((ni - 3) * (ni - 3))));
            assert_eq!(p.b(), &expected, "k=4 quartic mismatch at n={n}");
        }
    }

    #[test]
    fn profile_eval_examples() {
        assert_eq!(
            profile_from_recurrence(1, 0)
                .unwrap()
                .eval(&rat(1, 2))
                .unwrap(),
            rat(1, 4)
        );
        assert_eq!(
            profile_from_recurrence(2, 1)
                .unwrap()
                .eval(&rat(1, 2))
                .unwrap(),
            rat(1, 16)
        );
        assert!(profile_from_recurrence(2, 1)
            .unwrap()
            .eval(&rat_int(1))
            .is_err());
        assert!(profile_from_recurrence(1, 1).is_err());
    }

    #[test]
    fn explicit_k3_and_k5_accept_only_large_enough_n() {
        assert!(profile_k3(3).is_err());
        assert!(profile_k3(4).is_ok());
        assert!(profile_k5(5).is_err());
        assert!(profile_k5(6).is_ok());
    }

    #[test]
    fn direct_sum_agrees_with_recurrence() {
        let points = [rat(1, 7), rat(1, 3), rat(1, 2), rat(2, 3), rat(9, 10)];
        for n in 1..=7usize {
            for k in 0..n {
                let p = profile_from_recurrence(n, k).unwrap();
                for a in &points {
                    assert_eq!(
                        p.eval(a).unwrap(),
                        a_sq_direct_sum(n, k, a).unwrap(),
                        "mismatch at n={n} k={k} a={a}"
                    );
                }
            }
        }
    }

    #[test]
    fn interval_evaluation_brackets_exact_values() {
        let p = profile_from_recurrence(5, 3).unwrap();
        let iv = RatInterval::new(rat(-1, 5), rat(-1, 6));
        let img = p.eval_t_interval(&iv);
        for t in [rat(-1, 5), rat(-9, 50), rat(-1, 6)] {
            assert!(img.contains(&p.eval_at_t(&t)));
        }
    }
}

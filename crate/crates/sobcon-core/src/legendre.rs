//! Shifted Legendre polynomials on \[0;1\] and their antiderivatives.
//!
//! The family is built straight from the Rodrigues form
//! Pₘ(x) = (1/m!)·Dᵐ[(x²−x)ᵐ], which also defines the antiderivatives
//! Pₘ⁽⁻ˡ⁾ = (1/m!)·Dᵐ⁻ˡ[(x²−x)ᵐ] for 0 ≤ l ≤ m. At the degrees used here
//! exact differentiation is cheap, and it keeps the normalization
//! ‖Pₘ‖² = 1/(2m+1) an emergent fact rather than an input.

use crate::ratpoly::{factorial, Poly, Rat};
use num_traits::One;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LegendreError {
    #[error("antiderivative order l = {l} exceeds the polynomial degree m = {m}")]
    OrderOutOfRange { m: usize, l: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedLegendre {
    pub m: usize,
    pub poly: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendreAntiderivative {
    pub m: usize,
    pub l: usize,
    pub poly: Poly,
}

fn cache() -> &'static Mutex<HashMap<(usize, usize), Poly>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Poly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// (1/m!)·D^(m−l)[(x²−x)^m]; the workhorse behind both public constructors.
fn rodrigues_poly(m: usize, l: usize) -> Poly {
    if let Some(p) = cache().lock().unwrap().get(&(m, l)) {
        return p.clone();
    }
    let base = Poly::from_int_coeffs(&[0, -1, 1]).pow(m);
    let poly = base
        .derivative_n(m - l)
        .scale(&Rat::new(1.into(), factorial(m)));
    cache().lock().unwrap().insert((m, l), poly.clone());
    poly
}

/// The shifted Legendre polynomial Pₘ on \[0;1\].
pub fn shifted_legendre(m: usize) -> ShiftedLegendre {
    ShiftedLegendre {
        m,
        poly: rodrigues_poly(m, 0),
    }
}

/// The l-th antiderivative Pₘ⁽⁻ˡ⁾; rejects l > m (degree m+l, vanishing to
/// order ≥ l at both endpoints when l ≥ 1).
pub fn legendre_antiderivative(
    m: usize,
    l: usize,
) -> Result<LegendreAntiderivative, LegendreError> {
    if l > m {
        return Err(LegendreError::OrderOutOfRange { m, l });
    }
    Ok(LegendreAntiderivative {
        m,
        l,
        poly: rodrigues_poly(m, l),
    })
}

/// ‖Pₘ‖²_{L₂\[0;1\]}, computed by actual integration and checked against the
/// closed form 1/(2m+1).
pub fn legendre_norm_sq(m: usize) -> Rat {
    let p = shifted_legendre(m).poly;
    let norm = (&p * &p)
        .integrate(&Rat::from_integer(0.into()), &Rat::one())
        .unwrap();
    assert_eq!(
        norm,
        Rat::new(1.into(), (2 * m as i64 + 1).into()),
        "Legendre normalization failed at m = {m}"
    );
    norm
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;
    use num_traits::Zero;

    #[test]
    fn low_degree_polynomials() {
        assert_eq!(shifted_legendre(0).poly, Poly::one());
        assert_eq!(shifted_legendre(1).poly, Poly::from_int_coeffs(&[-1, 2]));
        assert_eq!(shifted_legendre(2).poly, Poly::from_int_coeffs(&[1, -6, 6]));
    }

    #[test]
    fn antiderivative_examples() {
        // P₁⁽⁻¹⁾ = x²−x
        assert_eq!(
            legendre_antiderivative(1, 1).unwrap().poly,
            Poly::from_int_coeffs(&[0, -1, 1])
        );
        // l = 0 reduces to the polynomial itself
        assert_eq!(
            legendre_antiderivative(2, 0).unwrap().poly,
            shifted_legendre(2).poly
        );
        assert_eq!(
            legendre_antiderivative(3, 5),
            Err(LegendreError::OrderOutOfRange { m: 3, l: 5 })
        );
    }

    #[test]
    fn antiderivative_matches_t_derivative_convention() {
        // P_{n−1}^{(k−n)}(a) = (1/(n−1)!)·d^(k−1)/da^(k−1) (a²−a)^(n−1)
        let (n, k) = (5usize, 3usize);
        let anti = legendre_antiderivative(n - 1, n - k).unwrap().poly;
        let direct = Poly::from_int_coeffs(&[0, -1, 1])
            .pow(n - 1)
            .derivative_n(k - 1)
            .scale(&Rat::new(1.into(), factorial(n - 1)));
        assert_eq!(anti, direct);
        let a = rat(2, 7);
        assert_eq!(anti.eval(&a), direct.eval(&a));
    }

    #[test]
    fn normalization() {
        assert_eq!(legendre_norm_sq(0), Rat::one());
        assert_eq!(legendre_norm_sq(1), rat(1, 3));
        assert_eq!(legendre_norm_sq(7), rat(1, 15));
    }

    #[test]
    fn orthogonality_up_to_degree_20() {
        let zero = Rat::from_integer(0.into());
        let one = Rat::one();
        for i in 0..=20usize {
            let pi = shifted_legendre(i).poly;
            for j in (i + 1)..=20usize {
                let pj = shifted_legendre(j).poly;
                assert!(
                    (&pi * &pj).integrate(&zero, &one).unwrap().is_zero(),
                    "P_{i}·P_{j} not orthogonal"
                );
            }
        }
    }

    #[test]
    fn differentiating_antiderivative_recovers_polynomial() {
        for m in 0..=8usize {
            for l in 0..=m {
                let anti = legendre_antiderivative(m, l).unwrap().poly;
                assert_eq!(anti.derivative_n(l), shifted_legendre(m).poly);
            }
        }
    }

    #[test]
    fn cache_is_transparent_under_concurrency() {
        let expected = shifted_legendre(15).poly;
        let handles: Vec<_> = (0..8)
            .map(|_| std::thread::spawn(|| shifted_legendre(15).poly))
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), expected);
        }
    }

    #[test]
    fn antiderivatives_vanish_at_endpoints() {
        let zero = Rat::from_integer(0.into());
        let one = Rat::one();
        for m in 1..=8usize {
            for l in 1..=m {
                let anti = legendre_antiderivative(m, l).unwrap().poly;
                assert!(anti.eval(&zero).is_zero());
                assert!(anti.eval(&one).is_zero());
            }
        }
    }
}

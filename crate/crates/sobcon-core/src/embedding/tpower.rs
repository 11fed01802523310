//! Structured expansion of dᵏ(tᵐ)/daᵏ with t = a²−a.
//!
//! Differentiating tᵐ by a produces only terms tᵉ·(2a−1)^(2j) for even
//! derivative orders and an overall factor (2a−1) times such terms for odd
//! orders. Substituting (2a−1)² = 1+4t turns the even part into a polynomial
//! in t, which is how Legendre-antiderivative squares enter the embedding
//! recurrence as t-polynomials.

use super::EmbeddingError;
use crate::ratpoly::{rat_int, Poly, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// dᵒʳᵈᵉʳ(tᵐ)/daᵒʳᵈᵉʳ in the basis tᵉ·(2a−1)^(2j); odd orders carry one
/// implicit prefactor (2a−1) on top of the stored terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPowerDerivative {
    m: usize,
    order: usize,
    terms: BTreeMap<(usize, usize), Rat>,
}

pub fn t_power_derivative(m: usize, order: usize) -> Result<TPowerDerivative, EmbeddingError> {
    if order > m {
        return Err(EmbeddingError::DerivativeOrderTooLarge { m, order });
    }
    let mut terms = BTreeMap::new();
    terms.insert((m, 0), Rat::one());
    let mut current = TPowerDerivative { m, order: 0, terms };
    for _ in 0..order {
        current = current.differentiate();
    }
    debug_assert!(current.structure_is_banded());
    Ok(current)
}

impl TPowerDerivative {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn has_odd_prefactor(&self) -> bool {
        self.order % 2 == 1
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), Rat> {
        &self.terms
    }

    fn differentiate(&self) -> TPowerDerivative {
        let mut terms: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
        let mut add = |key: (usize, usize), val: Rat| {
            if val.is_zero() {
                return;
            }
            let entry = terms.entry(key).or_insert_with(Rat::zero);
            *entry += val;
            if entry.is_zero() {
                terms.remove(&key);
            }
        };
        for (&(e, j), c) in &self.terms {
            if self.has_odd_prefactor() {
                // c·tᵉ(2a−1)^(2j+1) ⟶ e·c·tᵉ⁻¹(2a−1)^(2j+2) + 2(2j+1)·c·tᵉ(2a−1)^(2j)
                if e > 0 {
                    add((e - 1, j + 1), c * rat_int(e as i64));
                }
                add((e, j), c * rat_int(2 * (2 * j as i64 + 1)));
            } else {
                // c·tᵉ(2a−1)^(2j) ⟶ (2a−1)·[e·c·tᵉ⁻¹(2a−1)^(2j) + 4j·c·tᵉ(2a−1)^(2j−2)]
                if e > 0 {
                    add((e - 1, j), c * rat_int(e as i64));
                }
                if j > 0 {
                    add((e, j - 1), c * rat_int(4 * j as i64));
                }
            }
        }
        TPowerDerivative {
            m: self.m,
            order: self.order + 1,
            terms,
        }
    }

    /// The banded shape of the expansion: with l = ⌊order/2⌋, every term has
    /// t-exponent m−l−j (even order) or m−l−1−j (odd order).
    fn structure_is_banded(&self) -> bool {
        let l = self.order / 2;
        self.terms.iter().all(|(&(e, j), _)| {
            if self.has_odd_prefactor() {
                e + l + 1 + j == self.m
            } else {
                e + l + j == self.m
            }
        })
    }

    /// The polynomial factor in t after substituting (2a−1)² = 1+4t. For odd
    /// orders the represented function is (2a−1) times this factor.
    pub fn t_factor(&self) -> Poly {
        let base = Poly::from_int_coeffs(&[1, 4]);
        let mut out = Poly::zero();
        for (&(e, j), c) in &self.terms {
            out = &out + &base.pow(j).mul_xpow(e).scale(c);
        }
        out
    }

    /// The square of the derivative as a polynomial in t; the odd-order
    /// prefactor squares to (2a−1)² = 1+4t. Degree 2m−order, lowest nonzero
    /// power exactly 2(m−order).
    pub fn squared_t_poly(&self) -> Poly {
        let f = self.t_factor();
        let mut sq = &f * &f;
        if self.has_odd_prefactor() {
            sq = &sq * &Poly::from_int_coeffs(&[1, 4]);
        }
        if !sq.is_zero() {
            let min_deg = 2 * (self.m - self.order);
            assert_eq!(
                sq.degree(),
                crate::ratpoly::Degree::Finite(2 * self.m - self.order)
            );
            assert!(
                sq.div_xpow(min_deg).is_some(),
                "squared expansion has terms below t^{min_deg}"
            );
            assert!(!sq.coeff(min_deg).is_zero());
        }
        sq
    }

    /// The expansion rebuilt as a polynomial in a (for cross-checks against
    /// direct differentiation of (a²−a)ᵐ).
    pub fn as_poly_in_a(&self) -> Poly {
        let t = Poly::from_int_coeffs(&[0, -1, 1]);
        let factor = self.t_factor().compose(&t);
        if self.has_odd_prefactor() {
            &factor * &Poly::from_int_coeffs(&[-1, 2])
        } else {
            factor
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat_int;

    #[test]
    fn first_derivative_is_two_a_minus_one() {
        let d = t_power_derivative(1, 1).unwrap();
        assert!(d.has_odd_prefactor());
        assert_eq!(d.t_factor(), Poly::one());
        assert_eq!(d.as_poly_in_a(), Poly::from_int_coeffs(&[-1, 2]));
    }

    #[test]
    fn second_derivative_of_t_squared() {
        // d²(t²)/da² = 2(2a−1)² + 4t, reconstructing to 2 + 12t
        let d = t_power_derivative(2, 2).unwrap();
        assert!(!d.has_odd_prefactor());
        assert_eq!(d.terms().get(&(0, 1)), Some(&rat_int(2)));
        assert_eq!(d.terms().get(&(1, 0)), Some(&rat_int(4)));
        assert_eq!(d.t_factor(), Poly::from_int_coeffs(&[2, 12]));
    }

    #[test]
    fn order_bound_is_enforced() {
        assert!(t_power_derivative(2, 3).is_err());
        assert!(t_power_derivative(3, 3).is_ok());
    }

    #[test]
    fn expansion_matches_direct_differentiation() {
        for m in 1..=7usize {
            for order in 0..=m {
                let d = t_power_derivative(m, order).unwrap();
                let direct = Poly::from_int_coeffs(&[0, -1, 1])
                    .pow(m)
                    .derivative_n(order);
                assert_eq!(d.as_poly_in_a(), direct, "mismatch at m={m} order={order}");
            }
        }
    }

    #[test]
    fn squared_degrees() {
        for m in 1..=7usize {
            for order in 0..=m {
                let sq = t_power_derivative(m, order).unwrap().squared_t_poly();
                // substitute t = a²−a and compare against the direct square
                let direct = {
                    let d = Poly::from_int_coeffs(&[0, -1, 1])
                        .pow(m)
                        .derivative_n(order);
                    &d * &d
                };
                let t = Poly::from_int_coeffs(&[0, -1, 1]);
                assert_eq!(sq.compose(&t), direct);
            }
        }
    }
}

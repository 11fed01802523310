//! Certified real-root isolation by Sturm sequences over exact rationals.
//!
//! An isolating interval here is a genuine certificate: the square-free part of
//! the input changes sign across it and the Sturm count inside is exactly one.
//! Brackets can be refined to any width without ever losing or gaining a root,
//! which is what the extremum analyses lean on when they order critical points.

use super::{Poly, PolyError, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Open interval (lo, hi) containing exactly one real root of the isolator's
/// certifying polynomial, with a sign change at the endpoints.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bracket {
    pub lo: Rat,
    pub hi: Rat,
}

impl Bracket {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    /// True when every point of self lies strictly below every point of other.
    pub fn strictly_below(&self, other: &Bracket) -> bool {
        self.hi < other.lo
    }
}

/// Root isolation context for one polynomial on one open interval.
///
/// Construction takes the square-free part, deflates any root sitting exactly
/// on an endpoint (endpoints are excluded by the open-interval contract), and
/// isolates every remaining root.
pub struct RootIsolator {
    poly: Poly,
    chain: Vec<Poly>,
    brackets: Vec<Bracket>,
}

impl RootIsolator {
    pub fn new(p: &Poly, lo: &Rat, hi: &Rat) -> Result<Self, PolyError> {
        if p.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if lo >= hi {
            return Err(PolyError::BoundsOutOfOrder {
                lo: lo.clone(),
                hi: hi.clone(),
            });
        }
        let mut q = p.square_free_part();
        for endpoint in [lo, hi] {
            if q.sign_at(endpoint) == 0 {
                let linear = Poly::new(vec![-endpoint.clone(), Rat::one()]);
                let (quot, rem) = q.divrem(&linear);
                debug_assert!(rem.is_zero());
                q = quot;
            }
        }
        let chain = sturm_chain(&q);
        let mut isolator = RootIsolator {
            poly: q,
            chain,
            brackets: Vec::new(),
        };
        isolator.brackets = isolator.isolate(lo, hi);
        Ok(isolator)
    }

    /// The certifying polynomial: square-free, endpoint roots removed.
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn brackets(&self) -> &[Bracket] {
        &self.brackets
    }

    fn variations_at(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last = 0i32;
        for member in &self.chain {
            let s = member.sign_at(x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of roots in the open interval; both endpoints must be non-roots.
    fn count_open(&self, lo: &Rat, hi: &Rat) -> usize {
        debug_assert!(self.poly.sign_at(lo) != 0 && self.poly.sign_at(hi) != 0);
        self.variations_at(lo) - self.variations_at(hi)
    }

    /// A split point strictly inside (lo, hi) that is not a root. Tries the
    /// midpoint first, then other fractions; the polynomial has at most
    /// deg(q) roots, so some candidate always survives.
    fn split_point(&self, lo: &Rat, hi: &Rat) -> Rat {
        let width = hi - lo;
        let deg = self.poly.coeffs().len();
        let half = lo + &width / Rat::from_integer(2.into());
        if self.poly.sign_at(&half) != 0 {
            return half;
        }
        let denom = Rat::from_integer(BigInt::from(deg as u64 + 2));
        for j in 1..=(deg + 1) {
            let cand = lo + &width * Rat::from_integer(BigInt::from(j as u64)) / &denom;
            if &cand > lo && &cand < hi && self.poly.sign_at(&cand) != 0 {
                return cand;
            }
        }
        unreachable!("fewer candidate split points than roots");
    }

    fn isolate(&self, lo: &Rat, hi: &Rat) -> Vec<Bracket> {
        if self.poly.degree().finite().is_none_or(|d| d == 0) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((l, h)) = stack.pop() {
            match self.count_open(&l, &h) {
                0 => {}
                1 => {
                    debug_assert!(self.poly.sign_at(&l) * self.poly.sign_at(&h) < 0);
                    out.push(Bracket { lo: l, hi: h });
                }
                _ => {
                    let m = self.split_point(&l, &h);
                    stack.push((m.clone(), h));
                    stack.push((l, m));
                }
            }
        }
        out.sort_by(|a, b| a.lo.cmp(&b.lo));
        out
    }

    /// Shrinks a bracket to at most `target_width`, preserving its root.
    pub fn refine(&self, bracket: &Bracket, target_width: &Rat) -> Bracket {
        let mut lo = bracket.lo.clone();
        let mut hi = bracket.hi.clone();
        let sign_lo = self.poly.sign_at(&lo);
        debug_assert!(sign_lo != 0 && self.poly.sign_at(&hi) == -sign_lo);
        while &hi - &lo > *target_width {
            let m = self.split_point(&lo, &hi);
            if self.poly.sign_at(&m) == sign_lo {
                lo = m;
            } else {
                hi = m;
            }
        }
        Bracket { lo, hi }
    }
}

/// Isolating intervals for all roots of p in the open interval (lo, hi).
pub fn isolate_roots(p: &Poly, lo: &Rat, hi: &Rat) -> Result<Vec<Bracket>, PolyError> {
    Ok(RootIsolator::new(p, lo, hi)?.brackets().to_vec())
}

/// Refines two brackets from (root-disjoint) polynomials until they are
/// disjoint and returns their strict order. Panics if separation fails, which
/// would mean the two polynomials share the bracketed root.
pub fn order_roots(
    ia: &RootIsolator,
    a: &Bracket,
    ib: &RootIsolator,
    b: &Bracket,
) -> (Bracket, Bracket, Ordering) {
    let mut a = a.clone();
    let mut b = b.clone();
    let two = Rat::from_integer(2.into());
    for _ in 0..100_000 {
        if a.strictly_below(&b) {
            return (a, b, Ordering::Less);
        }
        if b.strictly_below(&a) {
            return (a, b, Ordering::Greater);
        }
        let w = if a.width() < b.width() {
            a.width()
        } else {
            b.width()
        } / &two;
        a = ia.refine(&a, &w);
        b = ib.refine(&b, &w);
    }
    panic!("brackets refused to separate; the isolated roots appear to coincide");
}

/// Sturm chain of a square-free polynomial, each member scaled to a primitive
/// integer polynomial (positive scaling leaves every sign untouched).
fn sturm_chain(q: &Poly) -> Vec<Poly> {
    let mut chain = vec![primitive_part(q)];
    if q.degree().finite().is_none_or(|d| d == 0) {
        return chain;
    }
    chain.push(primitive_part(&q.derivative()));
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(primitive_part(&-&r));
    }
    chain
}

/// Scales by a positive rational so the coefficients become coprime integers.
fn primitive_part(p: &Poly) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let mut denom_lcm = BigInt::one();
    for c in p.coeffs() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut numer_gcd = BigInt::zero();
    for c in p.coeffs() {
        let scaled = c * Rat::from_integer(denom_lcm.clone());
        debug_assert!(scaled.denom().is_one());
        numer_gcd = numer_gcd.gcd(scaled.numer());
    }
    let factor = Rat::new(denom_lcm, numer_gcd);
    debug_assert!(factor.is_positive());
    p.scale(&factor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{rat, rat_int};

    #[test]
    fn isolates_linear_factor_near_minus_one_tenth() {
        // 10t+1: the linear derivative factor at n=4 in the k=3 analysis.
        let p = Poly::from_int_coeffs(&[1, 10]);
        let roots = isolate_roots(&p, &rat(-1, 4), &rat_int(0)).unwrap();
        assert_eq!(roots.len(), 1);
        let r = &roots[0];
        assert!(r.lo < rat(-1, 10) && rat(-1, 10) < r.hi);
    }

    #[test]
    fn no_real_roots() {
        let p = Poly::from_int_coeffs(&[1, 0, 1]); // t²+1
        assert!(isolate_roots(&p, &rat_int(-1), &rat_int(1))
            .unwrap()
            .is_empty());
        assert!(isolate_roots(&Poly::zero(), &rat_int(-1), &rat_int(1)).is_err());
    }

    #[test]
    fn three_close_roots_get_separated() {
        // (x−1/8)(x−1/9)(x−1/10), expanded
        let f = |r: Rat| Poly::new(vec![-r, Rat::one()]);
        let p = &(&f(rat(1, 8)) * &f(rat(1, 9))) * &f(rat(1, 10));
        let iso = RootIsolator::new(&p, &rat_int(0), &rat_int(1)).unwrap();
        assert_eq!(iso.brackets().len(), 3);
        for (b, root) in iso
            .brackets()
            .iter()
            .zip([rat(1, 10), rat(1, 9), rat(1, 8)])
        {
            let fine = iso.refine(b, &rat(1, 1_000_000));
            assert!(fine.lo < root && root < fine.hi);
            assert!(fine.width() <= rat(1, 1_000_000));
        }
    }

    #[test]
    fn refinement_never_loses_the_root() {
        let p = Poly::from_int_coeffs(&[-2, 0, 1]); // x²−2
        let iso = RootIsolator::new(&p, &rat_int(0), &rat_int(2)).unwrap();
        let b = iso.brackets()[0].clone();
        let fine = iso.refine(&b, &rat(1, 1 << 20));
        assert!(iso.poly().sign_at(&fine.lo) * iso.poly().sign_at(&fine.hi) < 0);
        // 1.4142135… lies inside
        assert!(fine.lo < rat(141_422, 100_000) && rat(141_421, 100_000) < fine.hi);
    }

    #[test]
    fn endpoint_roots_are_excluded() {
        // roots at 0, 1/2, 1; only the interior one counts on (0, 1)
        let f = |r: Rat| Poly::new(vec![-r, Rat::one()]);
        let p = &(&f(rat_int(0)) * &f(rat(1, 2))) * &f(rat_int(1));
        let roots = isolate_roots(&p, &rat_int(0), &rat_int(1)).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].lo < rat(1, 2) && rat(1, 2) < roots[0].hi);
    }

    #[test]
    fn multiple_roots_are_isolated_once() {
        let f = Poly::from_int_coeffs(&[-1, 3]); // 3x−1, double it
        let p = &(&f * &f) * &Poly::from_int_coeffs(&[-2, 3]); // (3x−1)²(3x−2)
        let roots = isolate_roots(&p, &rat_int(0), &rat_int(1)).unwrap();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn ordering_of_roots_from_two_polynomials() {
        let p = Poly::from_int_coeffs(&[-2, 0, 1]); // √2
        let q = Poly::from_int_coeffs(&[-3, 0, 1]); // √3
        let ip = RootIsolator::new(&p, &rat_int(1), &rat_int(2)).unwrap();
        let iq = RootIsolator::new(&q, &rat_int(1), &rat_int(2)).unwrap();
        let (_, _, ord) = order_roots(&ip, &ip.brackets()[0], &iq, &iq.brackets()[0]);
        assert_eq!(ord, Ordering::Less);
    }
}

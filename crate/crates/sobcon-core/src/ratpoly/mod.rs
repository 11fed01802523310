//! Exact rational scalars and dense univariate polynomial algebra over ℚ.
//!
//! Every operation in this module is exact; nothing ever rounds. Degrees stay
//! small (≤ ~4n for the spline and embedding work), so the dense representation
//! wins over anything sparse.

mod piecewise;
mod sturm;

pub use piecewise::PiecewisePoly;
pub use sturm::{isolate_roots, order_roots, Bracket, RootIsolator};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Exact rational scalar, always in lowest terms with a positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("integration bounds out of order: lo = {lo} > hi = {hi}")]
    BoundsOutOfOrder { lo: Rat, hi: Rat },
    #[error("breakpoint {brk} must lie strictly inside ({lo}, {hi})")]
    BreakpointOutsideDomain { lo: Rat, brk: Rat, hi: Rat },
    #[error("root isolation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("cannot parse {0:?} as a rational (expected \"p\" or \"p/q\")")]
    BadRational(String),
}

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Parses `"p"` or `"p/q"` (arbitrary precision, q > 0 after normalization).
pub fn parse_rat(s: &str) -> Result<Rat, PolyError> {
    let bad = || PolyError::BadRational(s.to_string());
    match s.split_once('/') {
        None => s
            .trim()
            .parse::<BigInt>()
            .map(Rat::from_integer)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Renders a rational as `"p"` or `"p/q"`; inverse of [`parse_rat`].
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n as u64).map(BigInt::from).product()
}

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n as u64), BigInt::from(k as u64))
}

/// Exact integer power of a rational.
pub fn rat_pow(base: &Rat, exp: usize) -> Rat {
    let mut acc = Rat::one();
    let mut sq = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// (−1)^e as a rational.
pub fn sign_pow(e: usize) -> Rat {
    if e.is_multiple_of(2) {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Degree of a polynomial, with the zero polynomial mapped to a value below
/// every finite degree so that degree arithmetic stays total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// Dense univariate polynomial over ℚ; `coeffs[i]` is the coefficient of xⁱ.
///
/// Canonical form: the zero polynomial has an empty coefficient vector, and
/// otherwise the leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// The identity polynomial x.
    pub fn x() -> Self {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    /// c·x^k.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of xⁱ (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInf
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by x^k.
    pub fn mul_xpow(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Divides by x^k; `None` if any coefficient below x^k is nonzero.
    pub fn div_xpow(&self, k: usize) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.coeffs.len() < k || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::new(self.coeffs[k..].to_vec()))
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        let mut sq = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat_int((i + 1) as i64))
                .collect(),
        )
    }

    /// The `order`-th derivative; order 0 is the identity.
    pub fn derivative_n(&self, order: usize) -> Poly {
        let mut p = self.clone();
        for _ in 0..order {
            if p.is_zero() {
                break;
            }
            p = p.derivative();
        }
        p
    }

    /// Antiderivative with constant term zero.
    pub fn antiderivative(&self) -> Poly {
        let mut coeffs = vec![Rat::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / rat_int((i + 1) as i64)),
        );
        Poly::new(coeffs)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact definite integral over [lo, hi]; rejects lo > hi.
    pub fn integrate(&self, lo: &Rat, hi: &Rat) -> Result<Rat, PolyError> {
        if lo > hi {
            return Err(PolyError::BoundsOutOfOrder {
                lo: lo.clone(),
                hi: hi.clone(),
            });
        }
        let anti = self.antiderivative();
        Ok(anti.eval(hi) - anti.eval(lo))
    }

    /// Substitutes `inner` for x (Horner form).
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// p(1 − x); the reflection used to mirror a construction across 1/2.
    pub fn reflect_unit(&self) -> Poly {
        self.compose(&Poly::from_int_coeffs(&[1, -1]))
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// self = q·d + r and deg r < deg d. Panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let dl = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &dl;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[i - dd + j] -= t;
            }
            quot[i - dd] = q;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd (1 for coprime inputs, 0 only if both inputs are 0).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        match a.leading() {
            Some(l) => {
                let inv = Rat::one() / l;
                a.scale(&inv)
            }
            None => a,
        }
    }

    /// The square-free part self / gcd(self, self′); shares the root set with
    /// self, every root simple.
    pub fn square_free_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Degree::Finite(0) {
            return self.clone();
        }
        let (q, r) = self.divrem(&g);
        debug_assert!(r.is_zero());
        q
    }

    /// Sign of the value at x: −1, 0, or 1.
    pub fn sign_at(&self, x: &Rat) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::new(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{}", format_rat(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", format_rat(&a))?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

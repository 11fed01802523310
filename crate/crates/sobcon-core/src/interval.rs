//! Rational interval arithmetic with certified elementary enclosures.
//!
//! Intervals carry exact rational endpoints and only ever widen, so every
//! value computed here is a proof-grade enclosure. The elementary functions
//! (square root, π, arcsin/arccos, cos, exp) are evaluated by series with
//! explicit remainder bounds; `bits` is the working precision used for
//! outward dyadic rounding and for sizing the series tails.

use crate::ratpoly::{Poly, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatInterval {
    lo: Rat,
    hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(r: Rat) -> Self {
        RatInterval {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn contains(&self, r: &Rat) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn contains_interval(&self, other: &RatInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &RatInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// True when every point of self is strictly greater than every point of
    /// other; the certified form of `self > other`.
    pub fn strictly_above(&self, other: &RatInterval) -> bool {
        self.lo > other.hi
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    /// Division; panics if the divisor contains zero.
    pub fn div(&self, other: &RatInterval) -> RatInterval {
        assert!(
            !(other.lo.is_zero()
                || other.hi.is_zero()
                || (other.lo.is_negative() && other.hi.is_positive())),
            "interval division by an interval containing zero"
        );
        let inv = RatInterval {
            lo: Rat::one() / &other.hi,
            hi: Rat::one() / &other.lo,
        };
        self.mul(&inv)
    }

    pub fn scale(&self, c: &Rat) -> RatInterval {
        if c.is_negative() {
            RatInterval {
                lo: &self.hi * c,
                hi: &self.lo * c,
            }
        } else {
            RatInterval {
                lo: &self.lo * c,
                hi: &self.hi * c,
            }
        }
    }

    pub fn shift(&self, c: &Rat) -> RatInterval {
        RatInterval {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    pub fn powi(&self, e: usize) -> RatInterval {
        let mut acc = RatInterval::point(Rat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Widens outward to dyadic endpoints with denominator 2^bits, capping
    /// coefficient growth in long computations.
    pub fn round_out(&self, bits: u32) -> RatInterval {
        RatInterval {
            lo: dyadic_floor(&self.lo, bits),
            hi: dyadic_ceil(&self.hi, bits),
        }
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

pub fn dyadic_floor(r: &Rat, bits: u32) -> Rat {
    let scaled = r.numer() << bits;
    Rat::new(scaled.div_floor(r.denom()), BigInt::one() << bits)
}

pub fn dyadic_ceil(r: &Rat, bits: u32) -> Rat {
    let scaled = r.numer() << bits;
    Rat::new(scaled.div_ceil(r.denom()), BigInt::one() << bits)
}

/// Enclosure of √x for x ≥ 0, of width 2^−bits.
pub fn sqrt_rat(x: &Rat, bits: u32) -> RatInterval {
    assert!(!x.is_negative(), "square root of a negative rational");
    if x.is_zero() {
        return RatInterval::point(Rat::zero());
    }
    // √(p/q) = √(pq)/q; floor integer sqrt after scaling by 4^bits.
    let scaled = (x.numer() * x.denom()) << (2 * bits);
    let root = scaled.sqrt();
    let denom = x.denom() << bits;
    RatInterval {
        lo: Rat::new(root.clone(), denom.clone()),
        hi: Rat::new(root + BigInt::one(), denom),
    }
}

/// Enclosure of √I for an interval with nonnegative lower endpoint.
pub fn sqrt_interval(x: &RatInterval, bits: u32) -> RatInterval {
    RatInterval {
        lo: sqrt_rat(&x.lo, bits).lo,
        hi: sqrt_rat(&x.hi, bits).hi,
    }
}

/// Enclosure of arctan(1/m) for integer m ≥ 2 by the alternating series.
fn atan_inv(m: i64, bits: u32) -> RatInterval {
    let m2 = Rat::from_integer(BigInt::from(m * m));
    let eps = Rat::new(BigInt::one(), BigInt::one() << (bits + 4));
    let mut term = Rat::new(BigInt::one(), BigInt::from(m));
    let mut sum = Rat::zero();
    let mut k = 0usize;
    loop {
        if k.is_multiple_of(2) {
            sum += &term;
        } else {
            sum -= &term;
        }
        term = term / &m2
            * Rat::new(
                BigInt::from(2 * k as u64 + 1),
                BigInt::from(2 * k as u64 + 3),
            );
        k += 1;
        if term < eps {
            break;
        }
    }
    // alternating with decreasing terms: error bounded by the next term
    RatInterval {
        lo: &sum - &term,
        hi: &sum + &term,
    }
    .round_out(bits + 2)
}

/// Enclosure of π (Machin: π = 16·atan(1/5) − 4·atan(1/239)).
pub fn pi(bits: u32) -> RatInterval {
    let a = atan_inv(5, bits + 8).scale(&Rat::from_integer(16.into()));
    let b = atan_inv(239, bits + 8).scale(&Rat::from_integer(4.into()));
    a.sub(&b).round_out(bits)
}

/// Enclosure of arcsin(x) for an exact rational |x| ≤ 7/8.
fn arcsin_rat(x: &Rat, bits: u32) -> RatInterval {
    if x.is_negative() {
        return arcsin_rat(&-x, bits).neg();
    }
    assert!(
        x <= &Rat::new(7.into(), 8.into()),
        "arcsin series argument too close to 1"
    );
    let x2 = x * x;
    let eps = Rat::new(BigInt::one(), BigInt::one() << (bits + 4));
    let mut coeff = Rat::one();
    let mut power = x.clone();
    let mut sum = Rat::zero();
    let mut k: u64 = 0;
    loop {
        let term = &coeff * &power / Rat::from_integer(BigInt::from(2 * k + 1));
        sum += &term;
        coeff *= Rat::new(BigInt::from(2 * k + 1), BigInt::from(2 * k + 2));
        power = &power * &x2;
        k += 1;
        // remaining terms are ≤ coeff·x^(2j+1) summing below coeff·power/(1−x²)
        let tail = &coeff * &power / (Rat::one() - &x2);
        if tail < eps {
            return RatInterval {
                lo: sum.clone(),
                hi: sum + tail,
            }
            .round_out(bits + 2);
        }
    }
}

/// Enclosure of arcsin over an interval (monotone increasing).
pub fn arcsin_interval(x: &RatInterval, bits: u32) -> RatInterval {
    RatInterval {
        lo: arcsin_rat(&x.lo, bits).lo,
        hi: arcsin_rat(&x.hi, bits).hi,
    }
}

/// Enclosure of arccos(x) = π/2 − arcsin(x).
pub fn arccos_interval(x: &RatInterval, bits: u32) -> RatInterval {
    let half_pi = pi(bits + 4).scale(&Rat::new(1.into(), 2.into()));
    half_pi.sub(&arcsin_interval(x, bits + 4)).round_out(bits)
}

/// Enclosure of cos at an exact rational argument, |m| ≤ 4.
fn cos_rat(m: &Rat, bits: u32) -> RatInterval {
    assert!(
        m.abs() <= Rat::from_integer(4.into()),
        "cos series argument out of the reduced range"
    );
    let m2 = m * m;
    let eps = Rat::new(BigInt::one(), BigInt::one() << (bits + 4));
    let mut term = Rat::one(); // m^(2j)/(2j)!
    let mut sum = Rat::zero();
    let mut j: u64 = 0;
    loop {
        if j.is_multiple_of(2) {
            sum += &term;
        } else {
            sum -= &term;
        }
        term = &term * &m2 / Rat::from_integer(BigInt::from((2 * j + 1) * (2 * j + 2)));
        j += 1;
        // once the ratio m²/((2j+1)(2j+2)) < 1 the series alternates with
        // decreasing terms and the next term bounds the remainder
        if m2 < Rat::from_integer(BigInt::from((2 * j + 1) * (2 * j + 2))) && term < eps {
            return RatInterval {
                lo: &sum - &term,
                hi: &sum + &term,
            }
            .round_out(bits + 2);
        }
    }
}

/// Enclosure of cos over an interval of angles within |θ| ≤ 4, using the
/// midpoint series and the Lipschitz bound |cos x − cos m| ≤ |x − m|.
pub fn cos_interval(theta: &RatInterval, bits: u32) -> RatInterval {
    let mid = theta.mid();
    let half_width = theta.width() / Rat::from_integer(2.into());
    let base = cos_rat(&mid, bits + 2);
    RatInterval {
        lo: &base.lo - &half_width,
        hi: &base.hi + &half_width,
    }
    .round_out(bits)
    .clamp_to_unit()
}

impl RatInterval {
    fn clamp_to_unit(self) -> RatInterval {
        let one = Rat::one();
        let lo = if self.lo < -&one {
            -one.clone()
        } else {
            self.lo
        };
        let hi = if self.hi > one { one } else { self.hi };
        RatInterval { lo, hi }
    }
}

/// Enclosure of exp at an exact rational x ≥ 0 (argument halving + series).
fn exp_rat(x: &Rat, bits: u32) -> RatInterval {
    assert!(
        !x.is_negative(),
        "exp enclosure implemented for nonnegative arguments"
    );
    let mut halvings = 0u32;
    let mut y = x.clone();
    let half = Rat::new(1.into(), 2.into());
    while y > half {
        y /= Rat::from_integer(2.into());
        halvings += 1;
    }
    let eps = Rat::new(BigInt::one(), BigInt::one() << (bits + 4 + 2 * halvings));
    let mut term = Rat::one();
    let mut sum = Rat::zero();
    let mut i: u64 = 0;
    loop {
        sum += &term;
        term = &term * &y / Rat::from_integer(BigInt::from(i + 1));
        i += 1;
        // for y ≤ 1/2 the tail is below 2·(next term)
        let tail = &term * Rat::from_integer(2.into());
        if tail < eps {
            let mut enc = RatInterval {
                lo: sum.clone(),
                hi: sum + tail,
            };
            for _ in 0..halvings {
                enc = enc.mul(&enc).round_out(bits + 8);
            }
            return enc.round_out(bits);
        }
    }
}

/// Enclosure of exp over an interval with nonnegative endpoints (monotone).
pub fn exp_interval(x: &RatInterval, bits: u32) -> RatInterval {
    RatInterval {
        lo: exp_rat(&x.lo, bits).lo,
        hi: exp_rat(&x.hi, bits).hi,
    }
}

/// Interval Horner evaluation of a polynomial.
pub fn eval_poly(p: &Poly, x: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(Rat::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).shift(c);
    }
    acc
}

/// Decimal rendering of a rational with directed rounding: `digits` fractional
/// digits, rounded down (`Down`) or up (`Up`). Deterministic by construction.
pub enum Rounding {
    Down,
    Up,
}

pub fn decimal_string(r: &Rat, digits: u32, dir: Rounding) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * Rat::from_integer(scale.clone());
    let units = match dir {
        Rounding::Down => scaled.numer().div_floor(scaled.denom()),
        Rounding::Up => scaled.numer().div_ceil(scaled.denom()),
    };
    let negative = units.is_negative();
    let abs = units.abs();
    let (int_part, frac_part) = abs.div_rem(&scale);
    let frac = format!("{:0width$}", frac_part, width = digits as usize);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{}{}", sign, int_part)
    } else {
        format!("{}{}.{}", sign, int_part, frac)
    }
}

//! Two-piece polynomials with a single interior breakpoint.

use super::{Poly, PolyError, Rat};

/// A function given by one polynomial on [lo, brk] and another on [brk, hi].
///
/// Nothing is assumed about continuity at the breakpoint; the spline and
/// oracle layers impose their own matching conditions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PiecewisePoly {
    lo: Rat,
    brk: Rat,
    hi: Rat,
    left: Poly,
    right: Poly,
}

impl PiecewisePoly {
    pub fn new(lo: Rat, brk: Rat, hi: Rat, left: Poly, right: Poly) -> Result<Self, PolyError> {
        if !(lo < brk && brk < hi) {
            return Err(PolyError::BreakpointOutsideDomain { lo, brk, hi });
        }
        Ok(PiecewisePoly {
            lo,
            brk,
            hi,
            left,
            right,
        })
    }

    /// Pieces over [0, a] and [a, 1] with 0 < a < 1.
    pub fn on_unit(a: Rat, left: Poly, right: Poly) -> Result<Self, PolyError> {
        PiecewisePoly::new(
            Rat::from_integer(0.into()),
            a,
            Rat::from_integer(1.into()),
            left,
            right,
        )
    }

    pub fn breakpoint(&self) -> &Rat {
        &self.brk
    }

    pub fn domain(&self) -> (&Rat, &Rat) {
        (&self.lo, &self.hi)
    }

    pub fn left(&self) -> &Poly {
        &self.left
    }

    pub fn right(&self) -> &Poly {
        &self.right
    }

    /// Evaluates the piece containing x (left piece at the breakpoint).
    pub fn eval(&self, x: &Rat) -> Rat {
        if x <= &self.brk {
            self.left.eval(x)
        } else {
            self.right.eval(x)
        }
    }

    pub fn derivative_n(&self, order: usize) -> PiecewisePoly {
        PiecewisePoly {
            lo: self.lo.clone(),
            brk: self.brk.clone(),
            hi: self.hi.clone(),
            left: self.left.derivative_n(order),
            right: self.right.derivative_n(order),
        }
    }

    /// One-sided derivative value g⁽ᵒʳᵈᵉʳ⁾(brk − 0).
    pub fn deriv_at_break_left(&self, order: usize) -> Rat {
        self.left.derivative_n(order).eval(&self.brk)
    }

    /// One-sided derivative value g⁽ᵒʳᵈᵉʳ⁾(brk + 0).
    pub fn deriv_at_break_right(&self, order: usize) -> Rat {
        self.right.derivative_n(order).eval(&self.brk)
    }

    /// Exact ∫ f⁽ⁿ⁾·g⁽ⁿ⁾ over the common domain. Panics if the two functions
    /// do not share a domain and breakpoint.
    pub fn h_inner(&self, other: &PiecewisePoly, n: usize) -> Rat {
        assert_eq!(
            (&self.lo, &self.brk, &self.hi),
            (&other.lo, &other.brk, &other.hi),
            "H inner product requires matching domains and breakpoints"
        );
        let dl = &self.left.derivative_n(n) * &other.left.derivative_n(n);
        let dr = &self.right.derivative_n(n) * &other.right.derivative_n(n);
        dl.integrate(&self.lo, &self.brk).unwrap() + dr.integrate(&self.brk, &self.hi).unwrap()
    }

    /// Exact ∫ f⁽ⁿ⁾·g⁽ⁿ⁾ where f is a single polynomial on the whole domain.
    pub fn h_inner_poly(&self, f: &Poly, n: usize) -> Rat {
        let fn_ = f.derivative_n(n);
        let dl = &fn_ * &self.left.derivative_n(n);
        let dr = &fn_ * &self.right.derivative_n(n);
        dl.integrate(&self.lo, &self.brk).unwrap() + dr.integrate(&self.brk, &self.hi).unwrap()
    }

    /// Squared H-norm ∫ (g⁽ⁿ⁾)².
    pub fn h_norm_sq(&self, n: usize) -> Rat {
        self.h_inner(self, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{rat, rat_int};

    #[test]
    fn rejects_breakpoint_outside_domain() {
        assert!(PiecewisePoly::on_unit(rat_int(0), Poly::one(), Poly::one()).is_err());
        assert!(PiecewisePoly::on_unit(rat_int(1), Poly::one(), Poly::one()).is_err());
        assert!(PiecewisePoly::on_unit(rat(3, 2), Poly::one(), Poly::one()).is_err());
        assert!(PiecewisePoly::on_unit(rat(1, 2), Poly::one(), Poly::one()).is_ok());
    }

    #[test]
    fn classical_hat_function_norm() {
        // The n=1 representer at a: x(1−a) then a(1−x); ‖g‖² = a(1−a).
        let a = rat(1, 2);
        let left = Poly::x().scale(&rat(1, 2));
        let right = Poly::from_int_coeffs(&[1, -1]).scale(&rat(1, 2));
        let g = PiecewisePoly::on_unit(a, left, right).unwrap();
        assert_eq!(g.h_norm_sq(1), rat(1, 4));
        assert_eq!(g.eval(&rat(1, 2)), rat(1, 4));
        assert_eq!(g.deriv_at_break_left(1), rat(1, 2));
        assert_eq!(g.deriv_at_break_right(1), rat(-1, 2));
    }
}

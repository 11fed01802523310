//! Brute-force variational verification of the embedding constants.
//!
//! The idea: A²ₙ,ₖ(a) is the supremum of |f⁽ᵏ⁾(a)|²/‖f‖²_H, and the supremum
//! is attained by a piecewise polynomial of degree 2n−1 with one derivative
//! jump at a. So build the *entire* finite-dimensional space M of piecewise
//! polynomials over {\[0,a\],\[a,1\]} of degree ≤ 2n−1 satisfying the 2n boundary
//! conditions and continuity of orders 0..2n−k−2, maximize the ratio over M
//! by exact linear algebra, and the answer equals A²ₙ,ₖ(a) exactly. No
//! closed form from the spline or embedding layers is consulted anywhere.
//!
//! With the Gram matrix G of the basis in the H inner product and the vector
//! v of functional values, the maximum of (vᵀc)² subject to cᵀGc ≤ 1 is
//! vᵀG⁻¹v, computed by exact elimination whose positive pivots certify that
//! G is positive definite (a singular G would mean a broken basis and is a
//! hard error, never something to regularize).

use crate::ratpoly::{rat_int, PiecewisePoly, Poly, Rat};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("derivative order k = {k} must satisfy k <= n-1 (n = {n}, n >= 1)")]
    InvalidOrders { n: usize, k: usize },
    #[error("breakpoint a = {a} must lie strictly inside the domain")]
    BreakpointOutOfRange { a: Rat },
    #[error("Gram matrix is not positive definite: the basis construction is broken")]
    SingularGram,
}

/// A basis of the trial space M ⊂ W̊ⁿ₂ described above.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    pub n: usize,
    pub k: usize,
    pub a: Rat,
    pub functions: Vec<PiecewisePoly>,
}

/// The standard trial space on [0, 1]: degree ≤ 2n−1 per piece, all 2n
/// boundary conditions, continuity of derivative orders 0..2n−k−2 at a.
/// Its dimension is k+1.
pub fn build_subspace(n: usize, k: usize, a: &Rat) -> Result<SubspaceBasis, OracleError> {
    build_subspace_custom(&Rat::zero(), &Rat::one(), n, k, a, 2 * n - 1, 2 * n - k - 1)
}

/// Same construction with an arbitrary domain, per-piece degree, and number
/// of matched continuity orders (0..continuity_count−1). The standard space
/// is (degree 2n−1, count 2n−k−1); the dominance tests enlarge either knob.
pub fn build_subspace_custom(
    lo: &Rat,
    hi: &Rat,
    n: usize,
    k: usize,
    a: &Rat,
    piece_degree: usize,
    continuity_count: usize,
) -> Result<SubspaceBasis, OracleError> {
    if n < 1 || k >= n {
        return Err(OracleError::InvalidOrders { n, k });
    }
    if !(a > lo && a < hi) {
        return Err(OracleError::BreakpointOutOfRange { a: a.clone() });
    }
    let cols_per_piece = piece_degree + 1;
    let cols = 2 * cols_per_piece;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    // boundary conditions at both ends
    for j in 0..n {
        let mut row = vec![Rat::zero(); cols];
        row[..cols_per_piece].clone_from_slice(&deriv_row(lo, cols_per_piece, j));
        rows.push(row);
        let mut row = vec![Rat::zero(); cols];
        row[cols_per_piece..].clone_from_slice(&deriv_row(hi, cols_per_piece, j));
        rows.push(row);
    }
    // matched derivatives at the breakpoint
    for i in 0..continuity_count {
        let left = deriv_row(a, cols_per_piece, i);
        let right = deriv_row(a, cols_per_piece, i);
        let mut row = Vec::with_capacity(cols);
        row.extend(left);
        row.extend(right.into_iter().map(|c| -c));
        rows.push(row);
    }
    let kernel = nullspace(rows, cols);
    let functions = kernel
        .into_iter()
        .map(|vec| {
            let left = Poly::new(vec[..cols_per_piece].to_vec());
            let right = Poly::new(vec[cols_per_piece..].to_vec());
            PiecewisePoly::new(lo.clone(), a.clone(), hi.clone(), left, right)
                .expect("breakpoint checked above")
        })
        .collect();
    Ok(SubspaceBasis {
        n,
        k,
        a: a.clone(),
        functions,
    })
}

/// Row of the functional p ↦ p⁽ᵒʳᵈᵉʳ⁾(x) against the monomial coefficients.
fn deriv_row(x: &Rat, cols: usize, order: usize) -> Vec<Rat> {
    let mut row = vec![Rat::zero(); cols];
    for p in order..cols {
        let mut falling = Rat::one();
        for i in 0..order {
            falling *= rat_int((p - i) as i64);
        }
        let mut pw = Rat::one();
        for _ in 0..(p - order) {
            pw *= x;
        }
        row[p] = falling * pw;
    }
    row
}

/// Basis of the nullspace of the given row list, by exact Gauss–Jordan
/// reduction: one basis vector per free column.
fn nullspace(mut rows: Vec<Vec<Rat>>, cols: usize) -> Vec<Vec<Rat>> {
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = Rat::one() / &rows[rank][col];
        for c in col..cols {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..cols {
                    let t = &factor * &rows[rank][c];
                    rows[r][c] -= t;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -rows[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// vᵀG⁻¹v by exact elimination; every pivot must be strictly positive, which
/// certifies that G is symmetric positive definite.
fn solve_ratio_maximum(basis: &SubspaceBasis) -> Result<Rat, OracleError> {
    let n = basis.n;
    let k = basis.k;
    let dim = basis.functions.len();
    if dim == 0 {
        return Err(OracleError::SingularGram);
    }
    let mut g: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| basis.functions[i].h_inner(&basis.functions[j], n))
                .collect()
        })
        .collect();
    let v: Vec<Rat> = basis
        .functions
        .iter()
        .map(|f| f.deriv_at_break_left(k))
        .collect();
    // symmetry is structural; check it anyway while the matrix is small
    for i in 0..dim {
        for j in (i + 1)..dim {
            debug_assert_eq!(g[i][j], g[j][i]);
        }
    }
    let mut rhs = v.clone();
    for i in 0..dim {
        let pivot = g[i][i].clone();
        if !pivot.is_positive() {
            return Err(OracleError::SingularGram);
        }
        for r in (i + 1)..dim {
            if g[r][i].is_zero() {
                continue;
            }
            let factor = &g[r][i] / &pivot;
            for c in i..dim {
                let t = &factor * &g[i][c];
                g[r][c] -= t;
            }
            let t = &factor * &rhs[i];
            rhs[r] -= t;
        }
    }
    // back substitution, then the quadratic form value vᵀc
    let mut c = vec![Rat::zero(); dim];
    for i in (0..dim).rev() {
        let mut acc = rhs[i].clone();
        for j in (i + 1)..dim {
            let t = &g[i][j] * &c[j];
            acc -= t;
        }
        c[i] = acc / &g[i][i];
    }
    let mut value = Rat::zero();
    for i in 0..dim {
        value += &v[i] * &c[i];
    }
    Ok(value)
}

/// Exact A²ₙ,ₖ(a) by brute force on [0, 1].
pub fn oracle_a_squared(n: usize, k: usize, a: &Rat) -> Result<Rat, OracleError> {
    let basis = build_subspace(n, k, a)?;
    assert_eq!(
        basis.functions.len(),
        k + 1,
        "trial space dimension must be k+1"
    );
    solve_ratio_maximum(&basis)
}

/// The same construction on [−1, 1]; the adjudicator for the orientation of
/// the interval-rescaling identity.
pub fn oracle_symmetric_interval(n: usize, k: usize, a_sym: &Rat) -> Result<Rat, OracleError> {
    let minus_one = -Rat::one();
    let basis = build_subspace_custom(
        &minus_one,
        &Rat::one(),
        n,
        k,
        a_sym,
        2 * n - 1,
        2 * n - k - 1,
    )?;
    assert_eq!(
        basis.functions.len(),
        k + 1,
        "trial space dimension must be k+1"
    );
    solve_ratio_maximum(&basis)
}

/// Ratio maximum over an enlarged trial space (used by the dominance tests).
pub fn oracle_custom(
    lo: &Rat,
    hi: &Rat,
    n: usize,
    k: usize,
    a: &Rat,
    piece_degree: usize,
    continuity_count: usize,
) -> Result<Rat, OracleError> {
    let basis = build_subspace_custom(lo, hi, n, k, a, piece_degree, continuity_count)?;
    solve_ratio_maximum(&basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;

    #[test]
    fn hand_computable_cases() {
        // n=1, k=0: one-dimensional space, ratio a(1−a); at a=1/2 equals 1/4
        assert_eq!(oracle_a_squared(1, 0, &rat(1, 2)).unwrap(), rat(1, 4));
        assert_eq!(oracle_a_squared(1, 0, &rat(1, 3)).unwrap(), rat(2, 9));
        // n=2, k=1 at a=1/2: 1/16
        assert_eq!(oracle_a_squared(2, 1, &rat(1, 2)).unwrap(), rat(1, 16));
    }

    #[test]
    fn dimension_formula() {
        for n in 1..=6usize {
            for k in 0..n {
                let basis = build_subspace(n, k, &rat(2, 7)).unwrap();
                assert_eq!(
                    basis.functions.len(),
                    k + 1,
                    "dimension wrong at n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn basis_members_satisfy_their_constraints() {
        let (n, k) = (3usize, 1usize);
        let a = rat(1, 3);
        let basis = build_subspace(n, k, &a).unwrap();
        let zero = Rat::zero();
        let one = Rat::one();
        for f in &basis.functions {
            for j in 0..n {
                assert!(f.left().derivative_n(j).eval(&zero).is_zero());
                assert!(f.right().derivative_n(j).eval(&one).is_zero());
            }
            for i in 0..(2 * n - k - 1) {
                assert_eq!(f.deriv_at_break_left(i), f.deriv_at_break_right(i));
            }
        }
    }

    #[test]
    fn rejects_degenerate_breakpoints_and_orders() {
        assert!(matches!(
            oracle_a_squared(2, 1, &Rat::zero()),
            Err(OracleError::BreakpointOutOfRange { .. })
        ));
        assert!(matches!(
            oracle_a_squared(2, 2, &rat(1, 2)),
            Err(OracleError::InvalidOrders { .. })
        ));
    }

    #[test]
    fn symmetric_interval_hand_values() {
        // n=1, k=0 at the center of [−1;1]: sup f(0)²/‖f′‖² = 1/2,
        // which is 2^(2n−2k−1) = 2 times the unit-interval value 1/4
        assert_eq!(
            oracle_symmetric_interval(1, 0, &Rat::zero()).unwrap(),
            rat(1, 2)
        );
        // n=2, k=1: factor 2 on top of 1/16
        assert_eq!(
            oracle_symmetric_interval(2, 1, &Rat::zero()).unwrap(),
            rat(1, 8)
        );
    }

    #[test]
    fn enlarging_the_space_does_not_move_the_maximum() {
        let (n, k) = (3usize, 1usize);
        let a = rat(2, 5);
        let standard = oracle_a_squared(n, k, &a).unwrap();
        let zero = Rat::zero();
        let one = Rat::one();
        // higher-degree pieces
        let bigger = oracle_custom(&zero, &one, n, k, &a, 2 * n, 2 * n - k - 1).unwrap();
        assert_eq!(standard, bigger);
        // one continuity order dropped (k <= n-2 keeps the space inside H)
        let relaxed = oracle_custom(&zero, &one, n, k, &a, 2 * n - 1, 2 * n - k - 2).unwrap();
        assert_eq!(standard, relaxed);
    }
}

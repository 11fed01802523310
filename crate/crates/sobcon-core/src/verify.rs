//! The cross-module invariant suite.
//!
//! Each check exercises one family of identities across independent routes
//! (spline norm vs. recurrence vs. variational oracle, explicit profiles vs.
//! recurrence, Sturm enclosures vs. radical/trigonometric closed forms) and
//! reports pass/fail with details. Internal assertion failures are caught and
//! folded into the result so a harness can name the violated invariant
//! instead of crashing.

use crate::embedding::{
    a_sq_direct_sum, critical_points_k3, critical_points_k5, hypothesis_scan, k3_ratio_g,
    k3_ratio_h, k5_diagnostics, k5_trig_roots, lambda_constant, lambda_k3_closed_form,
    lambda_k3_product_form, lambda_k3_simplified, lambda_k5_closed_form, profile_from_recurrence,
    profile_k3, profile_k5,
};
use crate::interval::{sqrt_rat, RatInterval};
use crate::legendre::{legendre_norm_sq, shifted_legendre};
use crate::oracle::{oracle_a_squared, oracle_custom, oracle_symmetric_interval};
use crate::ratpoly::{rat, rat_int, Poly, Rat};
use crate::spline::{build_extremal_spline, h_member, piece_identity_check};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::panic::{catch_unwind, AssertUnwindSafe};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

fn run_check<F>(name: &str, f: F) -> CheckResult
where
    F: FnOnce() -> Result<String, String>,
{
    let outcome = catch_unwind(AssertUnwindSafe(f));
    let (passed, details) = match outcome {
        Ok(Ok(details)) => (true, details),
        Ok(Err(details)) => (false, details),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic with non-string payload".to_string());
            (false, format!("panicked: {msg}"))
        }
    };
    CheckResult {
        name: name.to_string(),
        passed,
        details,
    }
}

/// The rational sample points used by every pointwise grid.
pub fn sample_points() -> Vec<Rat> {
    vec![rat(1, 7), rat(1, 3), rat(1, 2), rat(2, 3), rat(9, 10)]
}

fn pow10_inv(digits: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(10u32).pow(digits))
}

/// ‖Pₘ‖² = 1/(2m+1) for m ≤ m_max, plus pairwise orthogonality.
pub fn check_legendre(m_max: usize) -> CheckResult {
    run_check("legendre-normalization", || {
        for m in 0..=m_max {
            let norm = legendre_norm_sq(m);
            if norm != Rat::new(1.into(), (2 * m as i64 + 1).into()) {
                return Err(format!("norm wrong at m={m}"));
            }
        }
        let zero = Rat::zero();
        let one = Rat::one();
        for i in 0..=m_max {
            let pi = shifted_legendre(i).poly;
            for j in (i + 1)..=m_max {
                let pj = shifted_legendre(j).poly;
                if !(&pi * &pj).integrate(&zero, &one).unwrap().is_zero() {
                    return Err(format!("orthogonality failed at ({i}, {j})"));
                }
            }
        }
        Ok(format!(
            "m = 0..{m_max}: norms 1/(2m+1) and orthogonality exact"
        ))
    })
}

/// Boundary, smoothness, jump, reproducing property, and the piece identity
/// for every n ≤ n_max, k ≤ n−1 on the sample grid.
pub fn check_spline_suite(n_max: usize) -> CheckResult {
    run_check("spline-conditions", || {
        let test_rs: Vec<Poly> = [
            vec![1],
            vec![0, 1],
            vec![1, -1],
            vec![2, 3, -1],
            vec![1, -1, 0, 1],
        ]
        .iter()
        .map(|c| Poly::from_int_coeffs(c))
        .collect();
        let mut built = 0usize;
        for n in 1..=n_max {
            for k in 0..n {
                for a in sample_points() {
                    // the constructor re-verifies boundary/smoothness/jump exactly
                    let s = build_extremal_spline(n, k, &a).map_err(|e| e.to_string())?;
                    for r in &test_rs {
                        let f = h_member(n, r);
                        if s.g.h_inner_poly(&f, n) != f.derivative_n(k).eval(&a) {
                            return Err(format!(
                                "reproducing property failed at n={n} k={k} a={a}"
                            ));
                        }
                    }
                    built += 1;
                }
            }
        }
        Ok(format!(
            "{built} splines verified (boundary, smoothness, jump, reproduction)"
        ))
    })
}

pub fn check_piece_identity(n_max: usize) -> CheckResult {
    run_check("piece-identity", || {
        for n in 1..=n_max {
            for k in 0..n {
                if !piece_identity_check(n, k) {
                    return Err(format!("g1 - (-1)^k g2 != (x-a)^(2n-k-1) at n={n} k={k}"));
                }
            }
        }
        Ok(format!("identity holds for all n <= {n_max}"))
    })
}

/// spline norm = recurrence value = oracle value, exactly, on the grid.
pub fn check_triple_equality(n_max: usize) -> CheckResult {
    run_check("triple-equality", || {
        let mut cases = 0usize;
        for n in 1..=n_max {
            for k in 0..n {
                let profile = profile_from_recurrence(n, k).map_err(|e| e.to_string())?;
                for a in sample_points() {
                    let s = build_extremal_spline(n, k, &a).map_err(|e| e.to_string())?;
                    let p = profile.eval(&a).map_err(|e| e.to_string())?;
                    let o = oracle_a_squared(n, k, &a).map_err(|e| e.to_string())?;
                    if !(s.norm_sq == p && p == o) {
                        return Err(format!(
                            "triple equality failed at n={n} k={k} a={a}: spline={} profile={} oracle={}",
                            s.norm_sq, p, o
                        ));
                    }
                    cases += 1;
                }
            }
        }
        Ok(format!("{cases} exact three-way equalities"))
    })
}

/// deg B = k and B(0) = (n−k)² (asserted inside the profile constructor).
pub fn check_structure_theorem(n_max: usize, k_cap: usize) -> CheckResult {
    run_check("structure-theorem", || {
        let mut count = 0usize;
        for n in 1..=n_max {
            for k in 0..n.min(k_cap + 1) {
                profile_from_recurrence(n, k).map_err(|e| e.to_string())?;
                count += 1;
            }
        }
        Ok(format!(
            "{count} profiles: deg B = k, B(0) = (n-k)^2, B > 0 on [-1/4, 0]"
        ))
    })
}

/// The one-shot sum route equals the step-by-step recurrence route.
pub fn check_direct_sum(n_max: usize) -> CheckResult {
    run_check("direct-sum-consistency", || {
        for n in 1..=n_max {
            for k in 0..n {
                let profile = profile_from_recurrence(n, k).map_err(|e| e.to_string())?;
                for a in sample_points() {
                    if profile.eval(&a).map_err(|e| e.to_string())?
                        != a_sq_direct_sum(n, k, &a).map_err(|e| e.to_string())?
                    {
                        return Err(format!("direct sum disagrees at n={n} k={k} a={a}"));
                    }
                }
            }
        }
        Ok(format!(
            "antiderivative-sum route agrees through n = {n_max}"
        ))
    })
}

pub fn check_k3_explicit(n_to: usize) -> CheckResult {
    run_check("k3-explicit-vs-recurrence", || {
        for n in 4..=n_to {
            profile_k3(n).map_err(|e| e.to_string())?; // asserts equality internally
        }
        Ok(format!(
            "explicit cubic equals the recurrence for n = 4..{n_to}"
        ))
    })
}

/// Certified ordering −1/4 < t₁ < t₃ < t₂ < 0 and max/min/max classification.
pub fn check_k3_ordering(n_to: usize) -> CheckResult {
    run_check("k3-ordering", || {
        for n in 4..=n_to {
            let report = critical_points_k3(n).map_err(|e| e.to_string())?;
            if report.global_max_index != 1 {
                return Err(format!("global max is not t1 at n={n}"));
            }
        }
        Ok(format!(
            "t1 < t3 < t2 certified with global max at t1 for n = 4..{n_to}"
        ))
    })
}

/// The anchor values and monotonicity of the ratio functions g and h.
pub fn check_k3_anchors(n_to: usize) -> CheckResult {
    run_check("k3-anchors", || {
        let bits = 120;
        let tol = pow10_inv(12);
        let s30 = sqrt_rat(&rat_int(30), bits);
        let g4_expected = RatInterval::point(rat_int(13))
            .add(&s30.scale(&rat_int(2)))
            .scale(&rat(1, 7));
        let h4_expected = RatInterval::point(rat_int(59))
            .sub(&s30.scale(&rat_int(6)))
            .scale(&rat(1, 49));
        let g4 = k3_ratio_g(4, bits).map_err(|e| e.to_string())?;
        let h4 = k3_ratio_h(4, bits).map_err(|e| e.to_string())?;
        let hull = |a: &RatInterval, b: &RatInterval| -> Rat {
            let hi = if a.hi() > b.hi() {
                a.hi().clone()
            } else {
                b.hi().clone()
            };
            let lo = if a.lo() < b.lo() {
                a.lo().clone()
            } else {
                b.lo().clone()
            };
            hi - lo
        };
        if hull(&g4, &g4_expected) > tol {
            return Err("g(4) does not match (13+2*sqrt(30))/7 to 1e-12".to_string());
        }
        if hull(&h4, &h4_expected) > tol {
            return Err("h(4) does not match (59-6*sqrt(30))/49 to 1e-12".to_string());
        }
        if !(g4.lo() > &rat_int(2) && h4.lo() > &rat(1, 2)) {
            return Err("anchor inequalities g(4) > 2, h(4) > 1/2 failed".to_string());
        }
        // monotonicity over the scanned range, plus the upper/lower bounds
        let upper = crate::embedding::e_two_sqrt_six_bound();
        let mut prev_g = g4;
        let mut prev_h = h4;
        for n in 5..=n_to {
            let g = k3_ratio_g(n, bits).map_err(|e| e.to_string())?;
            let h = k3_ratio_h(n, bits).map_err(|e| e.to_string())?;
            if !(g.lo() > prev_g.hi()) {
                return Err(format!("g not certifiably increasing at n={n}"));
            }
            if !(h.hi() < prev_h.lo()) {
                return Err(format!("h not certifiably decreasing at n={n}"));
            }
            if !(g.hi() < upper.lo()) {
                return Err(format!("g(n) failed the e^(2*sqrt(6)) bound at n={n}"));
            }
            if !(h.lo() > &rat(1, 10)) {
                return Err(format!("h(n) dropped to 0.1 at n={n}"));
            }
            prev_g = g;
            prev_h = h;
        }
        Ok(format!("anchors at n=4 to 1e-12; g increasing < e^(2*sqrt(6)), h decreasing > 0.1 through n = {n_to}"))
    })
}

/// Λ²ₙ,₃ enclosures vs. the three closed-form routes.
pub fn check_k3_lambda(n_to: usize) -> CheckResult {
    run_check("k3-lambda-closed-form", || {
        let width_cap = pow10_inv(20);
        let slack = pow10_inv(40);
        for n in 4..=n_to {
            let report = critical_points_k3(n).map_err(|e| e.to_string())?;
            let lam = &report.lambda_sq;
            if lam.width() > width_cap {
                return Err(format!("lambda enclosure too wide at n={n}"));
            }
            let widened = RatInterval::new(lam.lo() - &slack, lam.hi() + &slack);
            for (route, cf) in [
                ("profile", lambda_k3_closed_form(n, 200)),
                ("simplified", lambda_k3_simplified(n, 200)),
                ("product", lambda_k3_product_form(n, 200)),
            ] {
                let cf = cf.map_err(|e| e.to_string())?;
                if !widened.contains_interval(&cf) {
                    return Err(format!(
                        "{route} closed form escapes the enclosure at n={n}"
                    ));
                }
            }
        }
        Ok(format!(
            "enclosures of width <= 1e-20 contain all three closed-form routes, n = 4..{n_to}"
        ))
    })
}

pub fn check_k5_explicit(n_to: usize) -> CheckResult {
    run_check("k5-explicit-vs-recurrence", || {
        for n in 6..=n_to {
            profile_k5(n).map_err(|e| e.to_string())?;
        }
        Ok(format!(
            "explicit quintic equals the recurrence for n = 6..{n_to}"
        ))
    })
}

/// Certified interlacing −1/4 < t₁ < t̂₁ < t₂ < t̂₂ < t₃ < 0 plus the exact
/// sign anchors of g₃.
pub fn check_k5_interlacing(n_to: usize) -> CheckResult {
    run_check("k5-interlacing", || {
        for n in 6..=n_to {
            let report = critical_points_k5(n).map_err(|e| e.to_string())?;
            if report.global_max_index != 1 {
                return Err(format!("global max is not t1 at n={n}"));
            }
            if report.maxima_count() != 3 {
                return Err(format!("k=5 must have three maxima, n={n}"));
            }
        }
        Ok(format!(
            "interlacing chain and global max at t1 certified for n = 6..{n_to}"
        ))
    })
}

/// A²(t₁)/A²(t₂) > 1 and A²(t₁)/A²(t₃) > 1 certified by intervals; the q₁/q₂
/// chain; the q₁(t₁) > 0.2 re-derivation; the angle bracket.
pub fn check_k5_ratios(n_to: usize) -> CheckResult {
    run_check("k5-ratios", || {
        let one = Rat::one();
        let mut q1_failures = Vec::new();
        for n in 6..=n_to {
            let d = k5_diagnostics(n).map_err(|e| e.to_string())?;
            if !(d.ratio_t1_over_t2.lo() > &one) {
                return Err(format!("A2(t1)/A2(t2) not certified > 1 at n={n}"));
            }
            if !(d.ratio_t1_over_t3.lo() > &one) {
                return Err(format!("A2(t1)/A2(t3) not certified > 1 at n={n}"));
            }
            if !d.q_chain_certified {
                return Err(format!("q1/q2 interlacing chain failed at n={n}"));
            }
            if !d.angle_in_bracket {
                return Err(format!("angle bracket pi/4 < phi < pi/2 failed at n={n}"));
            }
            if !d.q1_at_t1_exceeds_one_fifth {
                q1_failures.push(n);
            }
        }
        if q1_failures.is_empty() {
            Ok(format!(
                "ratios > 1, q-chain, q1(t1) > 0.2, angle bracket: n = 6..{n_to}"
            ))
        } else {
            Err(format!(
                "q1(t1) <= 0.2 at n = {q1_failures:?} (flagged, not assumed)"
            ))
        }
    })
}

/// Trigonometric root formulas agree with the Sturm enclosures to 1e-20.
pub fn check_k5_trig(n_to: usize) -> CheckResult {
    run_check("k5-trig-crosscheck", || {
        let agree = pow10_inv(21);
        let sturm_width = pow10_inv(22);
        for n in 6..=n_to {
            let sturm =
                crate::embedding::k5_sturm_maxima(n, &sturm_width).map_err(|e| e.to_string())?;
            let trig = k5_trig_roots(n, 160).map_err(|e| e.to_string())?;
            for (i, (s, tr)) in sturm.iter().zip(trig.iter()).enumerate() {
                if tr.width() > agree {
                    return Err(format!("trig enclosure too wide for t{} at n={n}", i + 1));
                }
                if !tr.intersects(s) {
                    return Err(format!(
                        "trig root t{} disagrees with Sturm at n={n}",
                        i + 1
                    ));
                }
            }
        }
        Ok(format!(
            "trig forms match Sturm enclosures within 1e-20 for n = 6..{n_to}"
        ))
    })
}

/// Λ²ₙ,₅ vs. the trigonometric closed form, 1e-12 relative.
pub fn check_k5_lambda(n_to: usize) -> CheckResult {
    run_check("k5-lambda-closed-form", || {
        for n in 6..=n_to {
            let cf = lambda_k5_closed_form(n, 256).map_err(|e| e.to_string())?;
            let prec = cf.lo() * pow10_inv(13);
            let lam = lambda_constant(n, 5, &prec).map_err(|e| e.to_string())?;
            let hi = if lam.enclosure.hi() > cf.hi() {
                lam.enclosure.hi().clone()
            } else {
                cf.hi().clone()
            };
            let lo = if lam.enclosure.lo() < cf.lo() {
                lam.enclosure.lo().clone()
            } else {
                cf.lo().clone()
            };
            let rel = (hi - lo) / cf.lo();
            if rel > pow10_inv(12) {
                return Err(format!(
                    "closed form off by more than 1e-12 relative at n={n}"
                ));
            }
        }
        Ok(format!(
            "certified enclosure matches the closed form to 1e-12 relative, n = 6..{n_to}"
        ))
    })
}

/// Exact interval rescaling: the oracle on \[−1;1\] at 2a−1 equals
/// 2^(2n−2k−1) times the oracle on \[0;1\] at a.
pub fn check_scaling(n_max: usize) -> CheckResult {
    run_check("scaling-orientation", || {
        let mut cases = 0usize;
        for n in 1..=n_max {
            for k in 0..n {
                let factor = Rat::from_integer(BigInt::one() << (2 * n - 2 * k - 1));
                for a in sample_points() {
                    let unit = oracle_a_squared(n, k, &a).map_err(|e| e.to_string())?;
                    let mapped = rat_int(2) * &a - Rat::one();
                    let sym =
                        oracle_symmetric_interval(n, k, &mapped).map_err(|e| e.to_string())?;
                    if sym != &factor * &unit {
                        return Err(format!(
                            "scaling failed at n={n} k={k} a={a}: sym={sym} unit={unit}"
                        ));
                    }
                    cases += 1;
                }
            }
        }
        Ok(format!(
            "{cases} exact cases: A2 on [-1;1] at 2a-1 = 2^(2n-2k-1) x A2 on [0;1] at a \
             (argument travels with the substitution s = 2x-1)"
        ))
    })
}

/// Maxima counts and global-max locations for k ≤ k_max, n ≤ n_max.
/// Counterexamples are listed as findings, never panics.
pub fn check_hypothesis_scan(n_max: usize, k_max: usize) -> CheckResult {
    run_check("hypothesis-scan", || {
        let rows = hypothesis_scan(n_max, k_max, 32).map_err(|e| e.to_string())?;
        let mut findings = Vec::new();
        for row in &rows {
            if !row.count_ok {
                findings.push(format!(
                    "(n={}, k={}): {} maxima, expected {}",
                    row.n, row.k, row.maxima_count, row.expected_maxima
                ));
            }
            if !row.global_at_nearest {
                findings.push(format!(
                    "(n={}, k={}): global max not at the maximum nearest -1/4",
                    row.n, row.k
                ));
            }
        }
        if findings.is_empty() {
            Ok(format!(
                "{} pairs: ceil((k+1)/2) maxima, global max nearest -1/4 (even k: at a = 1/2)",
                rows.len()
            ))
        } else {
            Err(format!("findings: {}", findings.join("; ")))
        }
    })
}

/// Enlarged trial spaces neither lower nor raise the variational maximum.
pub fn check_oracle_dominance() -> CheckResult {
    run_check("oracle-dominance", || {
        let zero = Rat::zero();
        let one = Rat::one();
        for (n, k) in [(2usize, 1usize), (3, 1), (4, 2), (5, 3)] {
            for a in [rat(1, 3), rat(2, 5)] {
                let standard = oracle_a_squared(n, k, &a).map_err(|e| e.to_string())?;
                let deg = oracle_custom(&zero, &one, n, k, &a, 2 * n, 2 * n - k - 1)
                    .map_err(|e| e.to_string())?;
                if deg != standard {
                    return Err(format!(
                        "degree enlargement moved the maximum at n={n} k={k}"
                    ));
                }
                if k + 2 <= n {
                    let relaxed = oracle_custom(&zero, &one, n, k, &a, 2 * n - 1, 2 * n - k - 2)
                        .map_err(|e| e.to_string())?;
                    if relaxed != standard {
                        return Err(format!(
                            "continuity relaxation moved the maximum at n={n} k={k}"
                        ));
                    }
                }
            }
        }
        Ok("maximum invariant under degree enlargement and continuity relaxation".to_string())
    })
}

/// The generic Λ path agrees with the dedicated analyses and pins the even-k
/// maximizer to a = 1/2.
pub fn check_lambda_referee() -> CheckResult {
    run_check("lambda-referee", || {
        let prec = pow10_inv(22);
        let k3 = critical_points_k3(6).map_err(|e| e.to_string())?;
        let l3 = lambda_constant(6, 3, &prec).map_err(|e| e.to_string())?;
        if !l3.enclosure.intersects(&k3.lambda_sq) {
            return Err("generic lambda disagrees with the k=3 analysis at n=6".to_string());
        }
        let k5 = critical_points_k5(7).map_err(|e| e.to_string())?;
        let l5 = lambda_constant(7, 5, &prec).map_err(|e| e.to_string())?;
        if !l5.enclosure.intersects(&k5.lambda_sq) {
            return Err("generic lambda disagrees with the k=5 analysis at n=7".to_string());
        }
        for (n, k) in [(3usize, 2usize), (6, 4), (8, 4)] {
            let l = lambda_constant(n, k, &prec).map_err(|e| e.to_string())?;
            if l.exact.is_none() || l.maximizer.t_lo != rat(-1, 4) {
                return Err(format!(
                    "even k = {k} maximum not located at a = 1/2 for n = {n}"
                ));
            }
        }
        Ok(
            "generic path consistent with the k=3/k=5 analyses; even-k maxima at a = 1/2"
                .to_string(),
        )
    })
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub deep: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n_max: 8,
            deep: false,
        }
    }
}

/// The full suite. `--deep` pushes the grids to n = 12 and the k = 3 / k = 5
/// certifications to n = 40.
pub fn run_all(opts: VerifyOptions) -> Vec<CheckResult> {
    let grid_n = opts.n_max;
    let deep_n = if opts.deep { 12 } else { grid_n.min(8) };
    let chain_n = if opts.deep { 40 } else { 20 };
    vec![
        check_legendre(20),
        check_spline_suite(grid_n),
        check_piece_identity(grid_n),
        check_triple_equality(grid_n),
        check_structure_theorem(12, 6),
        check_direct_sum(grid_n.min(8)),
        check_k3_explicit(deep_n.max(12)),
        check_k3_ordering(chain_n),
        check_k3_anchors(chain_n),
        check_k3_lambda(if opts.deep { 12 } else { 8 }),
        check_k5_explicit(deep_n.max(12)),
        check_k5_interlacing(chain_n),
        check_k5_ratios(chain_n),
        check_k5_trig(if opts.deep { 12 } else { 8 }),
        check_k5_lambda(if opts.deep { 12 } else { 8 }),
        check_scaling(5),
        check_hypothesis_scan(if opts.deep { 20 } else { 12 }, 5),
        check_oracle_dominance(),
        check_lambda_referee(),
    ]
}

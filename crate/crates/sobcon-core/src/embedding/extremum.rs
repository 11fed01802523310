//! Critical points and certified suprema of the embedding profiles.
//!
//! With A² = −t^e·scale·B(t) (e = 2n−2k−1), the t-derivative is
//! −scale·t^(e−1)·D(t) for the degree-k factor D = e·B + t·B′, so on
//! (−1/4, 0) the sign of dA²/dt is the opposite of the sign of D. Everything
//! below reduces to exact sign data for D: Sturm brackets for its roots,
//! exact evaluations between them, and interval refinement wherever two
//! values need to be compared or an irrational location needs a width.
//!
//! The endpoint t = −1/4 is the image of a = 1/2 and is always a critical
//! point of A² in a; it is a maximum exactly when D > 0 immediately to its
//! right, which is also the classification of a = 1/2 itself.

use super::closed_form;
use super::profile::{profile_from_recurrence, profile_k3, profile_k5, EmbeddingProfile};
use super::EmbeddingError;
use crate::interval::{decimal_string, sqrt_interval, RatInterval, Rounding};
use crate::ratpoly::{
    format_rat, order_roots, rat, rat_int, Bracket, Degree, Poly, Rat, RootIsolator,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriticalKind {
    Max,
    Min,
    /// Sign-preserving root of the derivative factor; not an extremum.
    Inflection,
}

impl CriticalKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CriticalKind::Max => "max",
            CriticalKind::Min => "min",
            CriticalKind::Inflection => "inflection",
        }
    }
}

/// A certified critical point of A² in the variable t. Exact rational
/// locations carry a zero-width enclosure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub t_lo: Rat,
    pub t_hi: Rat,
    pub kind: CriticalKind,
    pub exact_form: Option<String>,
}

impl CriticalPoint {
    fn exact(t: Rat, kind: CriticalKind, exact_form: Option<String>) -> Self {
        CriticalPoint {
            t_lo: t.clone(),
            t_hi: t,
            kind,
            exact_form,
        }
    }

    fn from_bracket(b: &Bracket, kind: CriticalKind, exact_form: Option<String>) -> Self {
        CriticalPoint {
            t_lo: b.lo.clone(),
            t_hi: b.hi.clone(),
            kind,
            exact_form,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.t_lo == self.t_hi
    }

    pub fn t_interval(&self) -> RatInterval {
        RatInterval::new(self.t_lo.clone(), self.t_hi.clone())
    }

    /// The pair a∓ = 1/2 ∓ (1/2)√(1+4t) of preimages in a, as enclosures.
    pub fn a_points(&self, bits: u32) -> (RatInterval, RatInterval) {
        let one_plus_4t = self.t_interval().scale(&rat_int(4)).shift(&Rat::one());
        let root = sqrt_interval(&one_plus_4t, bits).scale(&rat(1, 2));
        let half = RatInterval::point(rat(1, 2));
        (half.sub(&root), half.add(&root))
    }
}

/// D = e·B + t·B′, the polynomial whose roots in (−1/4, 0) are the interior
/// critical points of A².
pub fn derivative_factor(p: &EmbeddingProfile) -> Poly {
    let e = rat_int(p.t_exponent() as i64);
    &p.b().scale(&e) + &(&Poly::x() * &p.b().derivative())
}

/// Sign analysis of one profile over t ∈ (−1/4, 0).
struct Analysis {
    profile: EmbeddingProfile,
    factor: Poly,
    isolator: Option<RootIsolator>,
    /// Interior root brackets, refined until strictly separated from the
    /// endpoints and from each other.
    brackets: Vec<Bracket>,
    /// Sign of D on each of the brackets.len()+1 open regions between them.
    region_signs: Vec<i32>,
}

impl Analysis {
    fn run(profile: EmbeddingProfile) -> Analysis {
        let factor = derivative_factor(&profile);
        let quarter = rat(-1, 4);
        let zero = Rat::zero();
        let trivial = matches!(factor.degree(), Degree::NegInf | Degree::Finite(0));
        let (isolator, mut brackets) = if trivial {
            (None, Vec::new())
        } else {
            let iso = RootIsolator::new(&factor, &quarter, &zero).expect("factor is nonzero");
            let brackets = iso.brackets().to_vec();
            (Some(iso), brackets)
        };
        if let Some(iso) = &isolator {
            separate_brackets(iso, &mut brackets, &quarter, &zero);
        }
        // sample D on the gaps; the gaps are root-free so the signs are nonzero
        let mut cuts = vec![quarter];
        for b in &brackets {
            cuts.push(b.lo.clone());
            cuts.push(b.hi.clone());
        }
        cuts.push(zero);
        let region_signs: Vec<i32> = cuts
            .chunks(2)
            .map(|pair| {
                let mid = (&pair[0] + &pair[1]) / rat_int(2);
                let s = factor.sign_at(&mid);
                assert!(s != 0, "sample point unexpectedly hit a root");
                s
            })
            .collect();
        Analysis {
            profile,
            factor,
            isolator,
            brackets,
            region_signs,
        }
    }

    /// Kind of the interior root between regions i and i+1; the sign of
    /// dA²/dt is −sign(D).
    fn interior_kind(&self, i: usize) -> CriticalKind {
        match (self.region_signs[i], self.region_signs[i + 1]) {
            (-1, 1) => CriticalKind::Max,
            (1, -1) => CriticalKind::Min,
            _ => CriticalKind::Inflection,
        }
    }

    /// Classification of t = −1/4 (equivalently of a = 1/2).
    fn endpoint_kind(&self) -> CriticalKind {
        if self.region_signs[0] > 0 {
            CriticalKind::Max
        } else {
            CriticalKind::Min
        }
    }

    fn critical_points(&self) -> Vec<CriticalPoint> {
        let mut points = vec![CriticalPoint::exact(
            rat(-1, 4),
            self.endpoint_kind(),
            Some("a = 1/2 (t = -1/4)".to_string()),
        )];
        for (i, b) in self.brackets.iter().enumerate() {
            let kind = self.interior_kind(i);
            if self.factor.degree() == Degree::Finite(1) {
                // a linear factor has an exact rational root
                let root = -self.factor.coeff(0) / self.factor.coeff(1);
                debug_assert!(b.lo < root && root < b.hi);
                points.push(CriticalPoint::exact(root, kind, None));
            } else {
                points.push(CriticalPoint::from_bracket(b, kind, None));
            }
        }
        points
    }

    /// Enclosure of A² at a critical point, refined until its width drops
    /// below `width`. Exact locations give exact (zero-width) values.
    fn value_at(&self, cp: &CriticalPoint, width: &Rat) -> (CriticalPoint, RatInterval) {
        if cp.is_exact() {
            let v = self.profile.eval_at_t(&cp.t_lo);
            return (cp.clone(), RatInterval::point(v));
        }
        let iso = self
            .isolator
            .as_ref()
            .expect("bracket points imply an isolator");
        let mut bracket = Bracket {
            lo: cp.t_lo.clone(),
            hi: cp.t_hi.clone(),
        };
        let mut value = self
            .profile
            .eval_t_interval(&RatInterval::new(bracket.lo.clone(), bracket.hi.clone()));
        let two = rat_int(2);
        for _ in 0..100_000 {
            if value.width() <= *width {
                break;
            }
            let target = bracket.width() / &two;
            bracket = iso.refine(&bracket, &target);
            value = self
                .profile
                .eval_t_interval(&RatInterval::new(bracket.lo.clone(), bracket.hi.clone()));
        }
        assert!(value.width() <= *width, "enclosure refinement stalled");
        let refined = CriticalPoint {
            t_lo: bracket.lo,
            t_hi: bracket.hi,
            kind: cp.kind,
            exact_form: cp.exact_form.clone(),
        };
        (refined, value)
    }

    /// Certifies which candidate attains the largest A² value by refining
    /// enclosures until the winner's lower bound clears every rival's upper
    /// bound. Returns the winning index and the refined values.
    fn certify_champion(
        &self,
        candidates: &[CriticalPoint],
    ) -> (usize, Vec<(CriticalPoint, RatInterval)>) {
        assert!(!candidates.is_empty());
        let mut width = rat(1, 1024);
        let ten = rat_int(10);
        // refinement is incremental: each round shrinks the brackets carried
        // over from the previous round
        let mut refined: Vec<(CriticalPoint, RatInterval)> =
            candidates.iter().map(|c| self.value_at(c, &width)).collect();
        for _ in 0..300 {
            let winner = refined
                .iter()
                .enumerate()
                .max_by(|(_, a), (_, b)| a.1.hi().cmp(b.1.hi()))
                .map(|(i, _)| i)
                .unwrap();
            let beats_all = refined
                .iter()
                .enumerate()
                .all(|(i, (_, v))| i == winner || refined[winner].1.lo() > v.hi());
            if beats_all {
                // restore the callers' kind/exact_form tags
                for (r, c) in refined.iter_mut().zip(candidates) {
                    r.0.kind = c.kind;
                    r.0.exact_form = c.exact_form.clone();
                }
                return (winner, refined);
            }
            // exact ties between rational candidates cannot be separated
            let exact_tie = refined.iter().enumerate().any(|(i, (c, v))| {
                i != winner
                    && c.is_exact()
                    && refined[winner].0.is_exact()
                    && v == &refined[winner].1
            });
            assert!(
                !exact_tie,
                "two critical points attain the same exact value"
            );
            width /= &ten;
            refined = refined.iter().map(|(c, _)| self.value_at(c, &width)).collect();
        }
        panic!("could not certify a strict global maximum");
    }
}

/// Refines brackets until they are strictly inside (lo, hi) and pairwise
/// separated by nonempty gaps.
fn separate_brackets(iso: &RootIsolator, brackets: &mut [Bracket], lo: &Rat, hi: &Rat) {
    let two = rat_int(2);
    for _ in 0..100_000 {
        let mut ok = true;
        if let Some(first) = brackets.first() {
            ok &= &first.lo > lo;
        }
        if let Some(last) = brackets.last() {
            ok &= &last.hi < hi;
        }
        for w in brackets.windows(2) {
            ok &= w[0].hi < w[1].lo;
        }
        if ok {
            return;
        }
        for b in brackets.iter_mut() {
            let target = b.width() / &two;
            *b = iso.refine(b, &target);
        }
    }
    panic!("brackets refused to separate");
}

/// Everything the k = 3 / k = 5 analyses produce: the certified critical
/// points in t, their preimages in a, the certified global maximum, and an
/// enclosure of Λ²ₙ,ₖ.
#[derive(Clone, Debug)]
pub struct ExtremumReport {
    pub n: usize,
    pub k: usize,
    pub profile: EmbeddingProfile,
    /// Ascending in t; the first entry is always t = −1/4 (a = 1/2).
    pub critical_points: Vec<CriticalPoint>,
    /// (a⁻, a⁺) enclosures, parallel to `critical_points`.
    pub a_points: Vec<(RatInterval, RatInterval)>,
    pub global_max_index: usize,
    pub lambda_sq: RatInterval,
    pub lambda_exact: Option<Rat>,
    pub lambda_closed_form: Option<String>,
}

impl ExtremumReport {
    pub fn maxima_count(&self) -> usize {
        self.critical_points
            .iter()
            .filter(|c| c.kind == CriticalKind::Max)
            .count()
    }

    pub fn global_max(&self) -> &CriticalPoint {
        &self.critical_points[self.global_max_index]
    }

    pub fn to_record(&self, digits: u32) -> ReportRecord {
        ReportRecord {
            n: self.n,
            k: self.k,
            b_coeffs: self.profile.b().coeffs().iter().map(format_rat).collect(),
            scale: format_rat(self.profile.scale()),
            critical_points: self
                .critical_points
                .iter()
                .map(|c| CriticalPointRecord {
                    t_lo: format_rat(&c.t_lo),
                    t_hi: format_rat(&c.t_hi),
                    kind: c.kind.as_str().to_string(),
                    exact_form: c.exact_form.clone(),
                })
                .collect(),
            lambda_sq: EnclosureRecord {
                lo: decimal_string(self.lambda_sq.lo(), digits, Rounding::Down),
                hi: decimal_string(self.lambda_sq.hi(), digits, Rounding::Up),
                closed_form: self.lambda_closed_form.clone(),
            },
        }
    }
}

/// JSON shape of an extremum report; exact rationals as "p/q", enclosure
/// bounds as outward-rounded decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "B_coeffs")]
    pub b_coeffs: Vec<String>,
    pub scale: String,
    pub critical_points: Vec<CriticalPointRecord>,
    pub lambda_sq: EnclosureRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalPointRecord {
    pub t_lo: String,
    pub t_hi: String,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_form: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnclosureRecord {
    pub lo: String,
    pub hi: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<String>,
}

fn default_lambda_width() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(10u32).pow(24))
}

/// The k = 3 analysis: the derivative factor splits as a linear times a
/// quadratic, giving one exact rational critical point t₃ between the two
/// irrational maxima t₁ < t₂; the global maximum sits at t₁.
pub fn critical_points_k3(n: usize) -> Result<ExtremumReport, EmbeddingError> {
    let profile = profile_k3(n)?;
    let ni = n as i64;
    let analysis = Analysis::run(profile);
    // the factored split of D: (2(2n−3)t + (n−3))·(4(2n−3)(2n−1)t² + 4(n−2)(2n−3)t + (n−2)(n−3))
    let linear = Poly::new(vec![rat_int(ni - 3), rat_int(2 * (2 * ni - 3))]);
    let quad = Poly::new(vec![
        rat_int((ni - 2) * (ni - 3)),
        rat_int(4 * (ni - 2) * (2 * ni - 3)),
        rat_int(4 * (2 * ni - 3) * (2 * ni - 1)),
    ]);
    assert_proportional(&(&linear * &quad), &analysis.factor);
    let t3 = -rat_int(ni - 3) / rat_int(2 * (2 * ni - 3));
    assert_eq!(
        analysis.brackets.len(),
        3,
        "k=3 expects three interior critical points"
    );
    assert!(
        analysis.brackets[1].lo < t3 && t3 < analysis.brackets[1].hi,
        "the middle critical point must be the rational root of the linear factor"
    );
    let mut points = analysis.critical_points();
    assert_eq!(points[0].kind, CriticalKind::Min);
    assert_eq!(
        points.iter().skip(1).map(|c| c.kind).collect::<Vec<_>>(),
        [CriticalKind::Max, CriticalKind::Min, CriticalKind::Max],
        "k=3 classification must be max/min/max"
    );
    // pin the middle point to its exact rational location
    points[2] = CriticalPoint::exact(
        t3,
        CriticalKind::Min,
        Some("t3 = -(n-3)/(2(2n-3))".to_string()),
    );
    points[1].exact_form =
        Some("t1 = (-(n-2)(2n-3) - sqrt(3(n-2)(2n-3)))/(2(2n-1)(2n-3))".to_string());
    points[3].exact_form =
        Some("t2 = (-(n-2)(2n-3) + sqrt(3(n-2)(2n-3)))/(2(2n-1)(2n-3))".to_string());
    finalize_report(
        analysis,
        points,
        3,
        n,
        closed_form::lambda_k3_description(n),
    )
}

/// The k = 5 analysis: D splits as g₂ (two minima) times g₃ (three maxima),
/// whose roots interlace; the global maximum sits at the leftmost root of g₃.
pub fn critical_points_k5(n: usize) -> Result<ExtremumReport, EmbeddingError> {
    let profile = profile_k5(n)?;
    let ni = n as i64;
    let analysis = Analysis::run(profile);
    let g2 = k5_g2(ni);
    let g3 = k5_g3(ni);
    assert_proportional(&(&g2 * &g3), &analysis.factor);
    assert_eq!(
        g3.eval(&rat(-1, 4)),
        rat(-15, 8),
        "g3(−1/4) must equal −15/8"
    );
    assert_eq!(
        g3.eval(&Rat::zero()),
        rat_int((ni - 3) * (ni - 4) * (ni - 5))
    );
    assert_eq!(
        g2.gcd(&g3).degree(),
        Degree::Finite(0),
        "g2 and g3 must be coprime"
    );
    let quarter = rat(-1, 4);
    let zero = Rat::zero();
    let iso2 = RootIsolator::new(&g2, &quarter, &zero).expect("g2 nonzero");
    let iso3 = RootIsolator::new(&g3, &quarter, &zero).expect("g3 nonzero");
    assert_eq!(
        iso3.brackets().len(),
        3,
        "g3 must have exactly three roots in (−1/4, 0)"
    );
    assert_eq!(
        iso2.brackets().len(),
        2,
        "g2 must have exactly two roots in (−1/4, 0)"
    );
    // interlacing −1/4 < t1 < t̂1 < t2 < t̂2 < t3 < 0
    let chain = [
        (
            &iso3,
            iso3.brackets()[0].clone(),
            &iso2,
            iso2.brackets()[0].clone(),
        ),
        (
            &iso2,
            iso2.brackets()[0].clone(),
            &iso3,
            iso3.brackets()[1].clone(),
        ),
        (
            &iso3,
            iso3.brackets()[1].clone(),
            &iso2,
            iso2.brackets()[1].clone(),
        ),
        (
            &iso2,
            iso2.brackets()[1].clone(),
            &iso3,
            iso3.brackets()[2].clone(),
        ),
    ];
    for (ia, a, ib, b) in chain {
        let (_, _, ord) = order_roots(ia, &a, ib, &b);
        assert_eq!(ord, Ordering::Less, "k=5 interlacing chain failed at n={n}");
    }
    let points = analysis.critical_points();
    assert_eq!(points.len(), 6, "k=5 expects five interior critical points");
    assert_eq!(points[0].kind, CriticalKind::Min);
    assert_eq!(
        points.iter().skip(1).map(|c| c.kind).collect::<Vec<_>>(),
        [
            CriticalKind::Max,
            CriticalKind::Min,
            CriticalKind::Max,
            CriticalKind::Min,
            CriticalKind::Max
        ],
        "k=5 classification must alternate max/min starting and ending at a maximum"
    );
    finalize_report(
        analysis,
        points,
        5,
        n,
        closed_form::lambda_k5_description(n),
    )
}

fn k5_g2(ni: i64) -> Poly {
    Poly::new(vec![
        rat_int((ni - 4) * (ni - 5)),
        rat_int(4 * (ni - 4) * (2 * ni - 5)),
        rat_int(4 * (2 * ni - 3) * (2 * ni - 5)),
    ])
}

fn k5_g3(ni: i64) -> Poly {
    Poly::new(vec![
        rat_int((ni - 3) * (ni - 4) * (ni - 5)),
        rat_int(6 * (ni - 3) * (ni - 4) * (2 * ni - 5)),
        rat_int(12 * (ni - 3) * (2 * ni - 3) * (2 * ni - 5)),
        rat_int(8 * (2 * ni - 1) * (2 * ni - 3) * (2 * ni - 5)),
    ])
}

/// Asserts lhs = c·rhs for a positive rational c.
fn assert_proportional(lhs: &Poly, rhs: &Poly) {
    let (ll, rl) = (
        lhs.leading().expect("nonzero"),
        rhs.leading().expect("nonzero"),
    );
    let c = ll / rl;
    assert!(
        c.is_positive(),
        "factorization flips the sign of the derivative factor"
    );
    assert_eq!(
        lhs,
        &rhs.scale(&c),
        "factored split disagrees with the derivative factor"
    );
}

fn finalize_report(
    analysis: Analysis,
    points: Vec<CriticalPoint>,
    k: usize,
    n: usize,
    closed_form: String,
) -> Result<ExtremumReport, EmbeddingError> {
    // minima are dominated by their neighboring maxima through the certified
    // region signs, so the championship runs over the maxima alone
    let maxima: Vec<CriticalPoint> = points
        .iter()
        .filter(|c| c.kind == CriticalKind::Max)
        .cloned()
        .collect();
    let (winner_among_maxima, refined) = analysis.certify_champion(&maxima);
    // expected for odd k: the maximum nearest −1/4 wins
    let winner_point = refined[winner_among_maxima].0.clone();
    let global_max_index = points
        .iter()
        .position(|c| {
            c.kind == CriticalKind::Max
                && c.t_lo <= winner_point.t_hi
                && winner_point.t_lo <= c.t_hi
        })
        .expect("winner must be one of the listed points");
    let width = default_lambda_width();
    let (_, lambda_sq) = analysis.value_at(&points[global_max_index], &width);
    // the sign pattern already dominates the minima, but certify them by
    // interval comparison as well (both sides refined jointly)
    for cp in points.iter().filter(|c| c.kind == CriticalKind::Min) {
        let (winner, _) =
            analysis.certify_champion(&[points[global_max_index].clone(), cp.clone()]);
        assert_eq!(winner, 0, "a minimum dominated the certified maximum");
    }
    let a_points = points.iter().map(|c| c.a_points(192)).collect();
    Ok(ExtremumReport {
        n,
        k,
        profile: analysis.profile,
        critical_points: points,
        a_points,
        global_max_index,
        lambda_sq,
        lambda_exact: None,
        lambda_closed_form: Some(closed_form),
    })
}

/// A certified enclosure of Λ²ₙ,ₖ = sup over a of A²ₙ,ₖ(a).
#[derive(Clone, Debug)]
pub struct LambdaResult {
    pub n: usize,
    pub k: usize,
    pub enclosure: RatInterval,
    /// Exact value when the maximizer is rational (k even, k = 1, …).
    pub exact: Option<Rat>,
    pub maximizer: CriticalPoint,
    pub closed_form: Option<String>,
}

/// Generic certified computation of Λ²ₙ,ₖ for any valid (n, k): the champion
/// among t = −1/4 and every interior maximum, refined to the requested width
/// and refereed against a rational grid (the grid alone decides nothing, but
/// a grid value above the champion would expose a misclassification).
pub fn lambda_constant(
    n: usize,
    k: usize,
    precision: &Rat,
) -> Result<LambdaResult, EmbeddingError> {
    if !precision.is_positive() {
        return Err(EmbeddingError::NonpositivePrecision);
    }
    let profile = profile_from_recurrence(n, k)?;
    let analysis = Analysis::run(profile);
    let points = analysis.critical_points();
    let mut candidates: Vec<CriticalPoint> = points
        .iter()
        .filter(|c| c.kind == CriticalKind::Max)
        .cloned()
        .collect();
    if candidates.is_empty() || !candidates[0].is_exact() {
        // keep the endpoint in play even when it is not a local maximum
        candidates.insert(0, points[0].clone());
    }
    let (winner, _) = analysis.certify_champion(&candidates);
    let (refined_point, mut enclosure) = analysis.value_at(&candidates[winner], precision);
    let exact = if refined_point.is_exact() {
        let v = analysis.profile.eval_at_t(&refined_point.t_lo);
        enclosure = RatInterval::point(v.clone());
        Some(v)
    } else {
        None
    };
    grid_referee(&analysis.profile, &enclosure, 32);
    let closed_form = match k {
        0 => Some(format!(
            "(1/4)^(2n-1)/((n-1)!^2 (2n-1)) at a = 1/2, n = {n}"
        )),
        3 => Some(closed_form::lambda_k3_description(n)),
        5 => Some(closed_form::lambda_k5_description(n)),
        _ => None,
    };
    Ok(LambdaResult {
        n,
        k,
        enclosure,
        exact,
        maximizer: refined_point,
        closed_form,
    })
}

/// Exact grid evaluations must never exceed the certified supremum.
fn grid_referee(profile: &EmbeddingProfile, champion: &RatInterval, points: usize) {
    for j in 1..=points {
        let t = rat(-1, 4) + rat(j as i64, 4 * (points as i64 + 1));
        let v = profile.eval_at_t(&t);
        assert!(
            &v <= champion.hi(),
            "grid point beats the certified supremum: classification bug"
        );
    }
}

/// One row of the maxima-count scan.
#[derive(Clone, Debug)]
pub struct ScanRow {
    pub n: usize,
    pub k: usize,
    pub maxima_count: usize,
    pub expected_maxima: usize,
    pub count_ok: bool,
    /// Global maximum sits at the maximum nearest −1/4 (for even k this is
    /// t = −1/4 itself).
    pub global_at_nearest: bool,
    pub global_max: CriticalPoint,
    /// Best interior maximum when the global maximum is the midpoint a = 1/2.
    pub competitor_t: Option<RatInterval>,
    pub competitor_value: Option<RatInterval>,
}

/// Counts maxima of A²ₙ,ₖ(t) on [−1/4, 0] and locates the global maximum for
/// every pair k ≤ k_max, k < n ≤ n_max. Hypothesis violations are reported in
/// the row flags, never by panicking.
pub fn hypothesis_scan(
    n_max: usize,
    k_max: usize,
    grid: usize,
) -> Result<Vec<ScanRow>, EmbeddingError> {
    if k_max > 8 {
        return Err(EmbeddingError::InvalidOrders { n: n_max, k: k_max });
    }
    let mut rows = Vec::new();
    for k in 0..=k_max {
        for n in (k + 1)..=n_max {
            rows.push(hypothesis_scan_row(n, k, grid)?);
        }
    }
    Ok(rows)
}

/// A single (n, k) row of the maxima-count scan.
pub fn hypothesis_scan_row(n: usize, k: usize, grid: usize) -> Result<ScanRow, EmbeddingError> {
    let profile = profile_from_recurrence(n, k)?;
    let analysis = Analysis::run(profile);
    let points = analysis.critical_points();
    let maxima: Vec<CriticalPoint> = points
        .iter()
        .filter(|c| c.kind == CriticalKind::Max)
        .cloned()
        .collect();
    let expected = (k + 2) / 2; // ⌈(k+1)/2⌉
    let (winner, refined) = if maxima.is_empty() {
        (0, vec![analysis.value_at(&points[0], &rat(1, 1 << 20))])
    } else {
        analysis.certify_champion(&maxima)
    };
    let candidates: &[CriticalPoint] = if maxima.is_empty() {
        &points[..1]
    } else {
        &maxima
    };
    let global_max = refined[winner].0.clone();
    // nearest to −1/4 = smallest t among the maxima; candidates are ascending
    let global_at_nearest = if k.is_multiple_of(2) {
        winner == 0 && candidates[winner].is_exact() && candidates[winner].t_lo == rat(-1, 4)
    } else {
        winner == 0 && candidates[winner].t_lo != rat(-1, 4)
    };
    let (competitor_t, competitor_value) =
        if candidates[winner].t_lo == rat(-1, 4) && refined.len() > 1 {
            let best_interior = refined
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != winner)
                .max_by(|(_, a), (_, b)| a.1.hi().cmp(b.1.hi()))
                .map(|(_, rv)| rv.clone());
            match best_interior {
                Some((cp, v)) => {
                    // tighten to a few significant digits for the report
                    let target = v.hi().abs() / rat_int(1 << 20);
                    let (cp, v) = if target.is_positive() {
                        analysis.value_at(&cp, &target)
                    } else {
                        (cp, v)
                    };
                    (Some(cp.t_interval()), Some(v))
                }
                None => (None, None),
            }
        } else {
            (None, None)
        };
    if grid > 0 {
        let points_count = (grid / 4).max(4);
        grid_referee(&analysis.profile, &refined[winner].1, points_count);
    }
    Ok(ScanRow {
        n,
        k,
        maxima_count: maxima.len(),
        expected_maxima: expected,
        count_ok: maxima.len() == expected,
        global_at_nearest,
        global_max,
        competitor_t,
        competitor_value,
    })
}

/// Deeper k = 5 material: the interlacing of the quartic factor q = q₁·q₂ of
/// p₅′ with the maxima, the size of q₁ at the global maximizer, the ratio
/// bounds that drive the global-maximum proof, and the angle bracket for the
/// trigonometric root form.
#[derive(Clone, Debug)]
pub struct K5Diagnostics {
    pub n: usize,
    /// t₁ < w₁ < z₁ < t₂ < w₂ < z₂ < t₃ (w from q₁, z from q₂).
    pub q_chain_certified: bool,
    pub q1_at_t1: RatInterval,
    pub q1_at_t1_exceeds_one_fifth: bool,
    pub ratio_t1_over_t2: RatInterval,
    pub ratio_t1_over_t3: RatInterval,
    pub angle_in_bracket: bool,
}

pub fn k5_diagnostics(n: usize) -> Result<K5Diagnostics, EmbeddingError> {
    if n < 6 {
        return Err(EmbeddingError::NTooSmall { n, k: 5, min_n: 6 });
    }
    let ni = n as i64;
    let profile = profile_k5(n)?;
    let quarter = rat(-1, 4);
    let zero = Rat::zero();
    let g3 = k5_g3(ni);
    let iso3 = RootIsolator::new(&g3, &quarter, &zero).expect("g3 nonzero");
    assert_eq!(iso3.brackets().len(), 3);
    let q1 = Poly::new(vec![
        rat_int((ni - 3) * (ni - 4)),
        rat_int(4 * (ni - 3) * (2 * ni - 5)),
        rat_int(4 * (2 * ni - 3) * (2 * ni - 5)),
    ]);
    let q2 = Poly::new(vec![
        rat_int((ni - 3) * (ni - 4)),
        rat_int(4 * (ni - 3) * (2 * ni - 3)),
        rat_int(4 * (2 * ni - 1) * (2 * ni - 3)),
    ]);
    // q₁·q₂ is proportional to p₅′ stripped of its t-power: check against
    // B′-based data, i.e. (e·B + tB′)′ is not what we want; use p₅′ directly.
    // p₅ ∝ B, so q must be proportional to B′.
    assert_proportional(&(&q1 * &q2), &profile.b().derivative());
    // pairwise coprimality keeps the ordering refinements terminating
    assert_eq!(q1.gcd(&q2).degree(), Degree::Finite(0));
    assert_eq!(g3.gcd(&q1).degree(), Degree::Finite(0));
    assert_eq!(g3.gcd(&q2).degree(), Degree::Finite(0));
    let iso_q1 = RootIsolator::new(&q1, &quarter, &zero).expect("q1 nonzero");
    let iso_q2 = RootIsolator::new(&q2, &quarter, &zero).expect("q2 nonzero");
    let mut q_chain_certified = iso_q1.brackets().len() == 2 && iso_q2.brackets().len() == 2;
    if q_chain_certified {
        let links = [
            (
                &iso3,
                iso3.brackets()[0].clone(),
                &iso_q1,
                iso_q1.brackets()[0].clone(),
            ),
            (
                &iso_q1,
                iso_q1.brackets()[0].clone(),
                &iso_q2,
                iso_q2.brackets()[0].clone(),
            ),
            (
                &iso_q2,
                iso_q2.brackets()[0].clone(),
                &iso3,
                iso3.brackets()[1].clone(),
            ),
            (
                &iso3,
                iso3.brackets()[1].clone(),
                &iso_q1,
                iso_q1.brackets()[1].clone(),
            ),
            (
                &iso_q1,
                iso_q1.brackets()[1].clone(),
                &iso_q2,
                iso_q2.brackets()[1].clone(),
            ),
            (
                &iso_q2,
                iso_q2.brackets()[1].clone(),
                &iso3,
                iso3.brackets()[2].clone(),
            ),
        ];
        for (ia, a, ib, b) in links {
            let (_, _, ord) = order_roots(ia, &a, ib, &b);
            q_chain_certified &= ord == Ordering::Less;
        }
    }
    // q₁ at the leftmost maximum
    let width = rat(1, 1 << 40);
    let t1 = iso3.refine(&iso3.brackets()[0], &width);
    let t1_iv = RatInterval::new(t1.lo.clone(), t1.hi.clone());
    let q1_at_t1 = crate::interval::eval_poly(&q1, &t1_iv);
    let q1_at_t1_exceeds_one_fifth = q1_at_t1.lo() > &rat(1, 5);
    // ratio bounds A²(t1)/A²(tj) via refined values
    let ratio = |target: &Bracket| -> RatInterval {
        let mut w = rat(1, 1 << 20);
        for _ in 0..200 {
            let b1 = iso3.refine(&iso3.brackets()[0], &w);
            let bj = iso3.refine(target, &w);
            let v1 = profile.eval_t_interval(&RatInterval::new(b1.lo.clone(), b1.hi.clone()));
            let vj = profile.eval_t_interval(&RatInterval::new(bj.lo.clone(), bj.hi.clone()));
            if vj.lo().is_positive() {
                let r = v1.div(&vj);
                if r.width() < rat(1, 1 << 16) {
                    return r;
                }
            }
            w /= rat_int(4);
        }
        panic!("ratio enclosure failed to converge");
    };
    let ratio_t1_over_t2 = ratio(&iso3.brackets()[1]);
    let ratio_t1_over_t3 = ratio(&iso3.brackets()[2]);
    Ok(K5Diagnostics {
        n,
        q_chain_certified,
        q1_at_t1,
        q1_at_t1_exceeds_one_fifth,
        ratio_t1_over_t2,
        ratio_t1_over_t3,
        angle_in_bracket: closed_form::k5_angle_tangent_exceeds_one(n),
    })
}

/// Sturm-refined enclosures of the three k = 5 maxima t₁ < t₂ < t₃ (the
/// roots of the cubic factor g₃), each of width at most `width`.
pub fn k5_sturm_maxima(n: usize, width: &Rat) -> Result<[RatInterval; 3], EmbeddingError> {
    if n < 6 {
        return Err(EmbeddingError::NTooSmall { n, k: 5, min_n: 6 });
    }
    let g3 = k5_g3(n as i64);
    let iso = RootIsolator::new(&g3, &rat(-1, 4), &Rat::zero()).expect("g3 nonzero");
    assert_eq!(iso.brackets().len(), 3);
    let refined: Vec<RatInterval> = iso
        .brackets()
        .iter()
        .map(|b| {
            let r = iso.refine(b, width);
            RatInterval::new(r.lo, r.hi)
        })
        .collect();
    Ok([refined[0].clone(), refined[1].clone(), refined[2].clone()])
}

/// Maps a value of A²ₙ,ₖ at a ∈ (0, 1) to the symmetric interval [−1;1]:
/// the point becomes 2a−1 and the value picks up the factor 2^(2n−2k−1).
pub fn rescale_to_symmetric(
    n: usize,
    k: usize,
    value_on_01: &Rat,
    a_on_01: &Rat,
) -> Result<(Rat, Rat), EmbeddingError> {
    if n < 1 || k >= n {
        return Err(EmbeddingError::InvalidOrders { n, k });
    }
    if !(a_on_01 > &Rat::zero() && a_on_01 < &Rat::one()) {
        return Err(EmbeddingError::PointOutOfRange { a: a_on_01.clone() });
    }
    let point = rat_int(2) * a_on_01 - Rat::one();
    let factor = Rat::from_integer(BigInt::one() << (2 * n - 2 * k - 1));
    Ok((point, factor * value_on_01))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_factor_for_k1_has_the_rational_root() {
        // D = (2n−3)(n−1)² + (2n−1)(2n−3)(2n−2)·t, root −(n−1)/(2(2n−1))
        for n in 2..=8usize {
            let ni = n as i64;
            let p = profile_from_recurrence(n, 1).unwrap();
            let d = derivative_factor(&p);
            let root = -rat_int(ni - 1) / rat_int(2 * (2 * ni - 1));
            assert!(d.eval(&root).is_zero(), "k=1 critical point wrong at n={n}");
        }
    }

    #[test]
    fn k3_report_shape_and_ordering() {
        let r = critical_points_k3(4).unwrap();
        assert_eq!(r.critical_points.len(), 4);
        assert_eq!(r.maxima_count(), 2);
        // t3 = −1/10 at n = 4 (root of 10t+1)
        assert_eq!(r.critical_points[2].t_lo, rat(-1, 10));
        assert!(r.critical_points[2].is_exact());
        // global max at t1, the leftmost maximum
        assert_eq!(r.global_max_index, 1);
        // ordering −1/4 < t1 < t3 < t2 < 0
        assert!(r.critical_points[1].t_lo > rat(-1, 4));
        assert!(r.critical_points[1].t_hi < rat(-1, 10));
        assert!(r.critical_points[3].t_lo > rat(-1, 10));
        assert!(r.critical_points[3].t_hi < Rat::zero());
    }

    #[test]
    fn k3_a_points_bracket_half() {
        let r = critical_points_k3(5).unwrap();
        for (minus, plus) in &r.a_points {
            assert!(minus.hi() <= &rat(1, 2) && plus.lo() >= &rat(1, 2));
        }
    }

    #[test]
    fn lambda_for_even_k_is_exact_at_a_half() {
        let p = Rat::new(1.into(), BigInt::from(10u32).pow(20));
        let l = lambda_constant(2, 0, &p).unwrap();
        assert_eq!(l.exact, Some(rat(1, 192)));
        assert_eq!(l.enclosure.width(), Rat::zero());
        assert_eq!(l.maximizer.t_lo, rat(-1, 4));
        let l = lambda_constant(5, 2, &p).unwrap();
        assert!(l.exact.is_some());
        assert_eq!(l.maximizer.t_lo, rat(-1, 4));
    }

    #[test]
    fn lambda_k1_is_exact_at_the_rational_root() {
        let p = Rat::new(1.into(), BigInt::from(10u32).pow(10));
        let l = lambda_constant(3, 1, &p).unwrap();
        // maximizer t = −(n−1)/(2(2n−1)) = −1/5
        assert_eq!(l.maximizer.t_lo, rat(-1, 5));
        let expected = profile_from_recurrence(3, 1)
            .unwrap()
            .eval_at_t(&rat(-1, 5));
        assert_eq!(l.exact, Some(expected));
    }

    #[test]
    fn lambda_rejects_nonpositive_precision() {
        assert!(matches!(
            lambda_constant(4, 3, &Rat::zero()),
            Err(EmbeddingError::NonpositivePrecision)
        ));
    }

    #[test]
    fn scan_k3_has_two_maxima_global_at_t1() {
        let rows = hypothesis_scan(8, 3, 32).unwrap();
        for row in rows.iter().filter(|r| r.k == 3) {
            assert_eq!(row.maxima_count, 2);
            assert!(row.count_ok);
            assert!(row.global_at_nearest);
        }
    }

    #[test]
    fn scan_even_k_peaks_at_the_midpoint_with_competitor_listed() {
        let rows = hypothesis_scan(8, 2, 32).unwrap();
        for row in rows.iter().filter(|r| r.k == 2) {
            assert!(row.count_ok, "k=2 maxima count failed at n={}", row.n);
            assert!(row.global_at_nearest);
            assert_eq!(row.global_max.t_lo, rat(-1, 4));
            if row.n >= 3 {
                assert!(
                    row.competitor_t.is_some(),
                    "interior competitor missing at n={}",
                    row.n
                );
            }
        }
    }

    #[test]
    fn rescale_examples() {
        let (point, value) = rescale_to_symmetric(1, 0, &rat(1, 4), &rat(1, 2)).unwrap();
        assert_eq!(point, Rat::zero());
        assert_eq!(value, rat(1, 2));
        let (point, value) = rescale_to_symmetric(2, 1, &rat(1, 16), &rat(1, 2)).unwrap();
        assert_eq!(point, Rat::zero());
        assert_eq!(value, rat(1, 8));
        assert!(rescale_to_symmetric(2, 1, &rat(1, 16), &rat_int(1)).is_err());
    }
}

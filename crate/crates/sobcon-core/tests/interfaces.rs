//! Wire-format tests: the JSON schemas exported for splines and extremum
//! reports round-trip byte-for-byte and keep rationals exact.

use sobcon_core::embedding::{critical_points_k3, ReportRecord};
use sobcon_core::ratpoly::rat;
use sobcon_core::spline::{build_extremal_spline, SplineRecord};

#[test]
fn spline_schema_fields_and_round_trip() {
    let s = build_extremal_spline(2, 1, &rat(1, 3)).unwrap();
    let rec = SplineRecord::from(&s);
    let json = serde_json::to_string_pretty(&rec).unwrap();
    for field in [
        "\"n\"",
        "\"k\"",
        "\"a\"",
        "\"left_coeffs\"",
        "\"right_coeffs\"",
        "\"norm_sq\"",
    ] {
        assert!(json.contains(field), "missing field {field} in {json}");
    }
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["a"], "1/3");
    // rationals stay strings, never floats
    assert!(value["norm_sq"].is_string());
    let back: SplineRecord = serde_json::from_str(&json).unwrap();
    assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
}

#[test]
fn tampered_spline_record_is_rejected() {
    let s = build_extremal_spline(2, 0, &rat(1, 3)).unwrap();
    let mut rec = SplineRecord::from(&s);
    rec.norm_sq = "1/7".to_string();
    assert!(rec.into_spline().is_err());
}

#[test]
fn report_schema_fields_and_round_trip() {
    let report = critical_points_k3(5).unwrap();
    let rec = report.to_record(40);
    let json = serde_json::to_string_pretty(&rec).unwrap();
    for field in [
        "\"B_coeffs\"",
        "\"scale\"",
        "\"critical_points\"",
        "\"lambda_sq\"",
        "\"t_lo\"",
        "\"t_hi\"",
        "\"kind\"",
        "\"lo\"",
        "\"hi\"",
    ] {
        assert!(json.contains(field), "missing field {field}");
    }
    let back: ReportRecord = serde_json::from_str(&json).unwrap();
    assert_eq!(back, rec);
    assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
    // the k=3 report carries the exact rational minimum and a closed form
    assert!(json.contains("t3 = -(n-3)/(2(2n-3))"));
    assert!(rec.lambda_sq.closed_form.is_some());
    // decimal bounds bracket: lo <= hi as strings of fixed width
    let lo: f64 = rec.lambda_sq.lo.parse().unwrap();
    let hi: f64 = rec.lambda_sq.hi.parse().unwrap();
    assert!(lo <= hi);
}

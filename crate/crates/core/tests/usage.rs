//! The crate-level example, kept as a test.

use snbs::{confidence_interval, Side, TimeSeries};

#[test]
fn lower_interval_from_a_short_series() {
    let x = TimeSeries::new(vec![0.3, 1.9, -0.4, 2.2, 0.8, 1.1, -1.3, 0.05, 0.6]).unwrap();
    let ci = confidence_interval(&x, 3, 0.9, Side::LowerOneSided).unwrap();
    assert!(ci.hi.is_finite() && ci.lo == f64::NEG_INFINITY);
}

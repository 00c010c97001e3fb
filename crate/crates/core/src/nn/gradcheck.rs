/// Central-difference step used by [`grad_check`].
pub const FD_STEP: f64 = 1e-3;

/// Relative errors are measured against `max(|analytic|, |numeric|, DENOM_FLOOR)`
/// so that components whose true gradient is ~0 are compared absolutely.
const DENOM_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct GradCheckReport {
    pub max_rel_error: f64,
    /// Component with the largest error, if any components were checked.
    pub worst_index: Option<usize>,
    pub analytic: f64,
    pub numeric: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Compares an analytic gradient of `loss` at `point` with central finite
/// differences (step [`FD_STEP`]).
///
/// `loss` must be deterministic: any randomness (dropout masks) has to be
/// fixed by the caller.
pub fn grad_check<F>(
    mut loss: F,
    point: &[f64],
    analytic: &[f64],
    tolerance: f64,
) -> GradCheckReport
where
    F: FnMut(&[f64]) -> f64,
{
    assert_eq!(
        point.len(),
        analytic.len(),
        "gradient length must match point"
    );
    let mut probe = point.to_vec();
    let mut report = GradCheckReport {
        max_rel_error: 0.0,
        worst_index: None,
        analytic: 0.0,
        numeric: 0.0,
        tolerance,
        passed: true,
    };
    for i in 0..point.len() {
        let orig = probe[i];
        probe[i] = orig + FD_STEP;
        let up = loss(&probe);
        probe[i] = orig - FD_STEP;
        let down = loss(&probe);
        probe[i] = orig;

        let numeric = (up - down) / (2.0 * FD_STEP);
        let a = analytic[i];
        let denom = a.abs().max(numeric.abs()).max(DENOM_FLOOR);
        let rel = (a - numeric).abs() / denom;
        // NaN must fail the check, hence the negated comparison.
        if !(rel <= report.max_rel_error) {
            report.max_rel_error = rel;
            report.worst_index = Some(i);
            report.analytic = a;
            report.numeric = numeric;
        }
    }
    report.passed = report.max_rel_error < tolerance;
    report
}

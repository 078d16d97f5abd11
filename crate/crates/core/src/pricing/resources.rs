/// Qubit count `⌈D log₂(C/ε⁶) + log₂(√C/ε³)⌉` with `log₂ x` taken as `log₁₀ x / 0.3`,
/// the rounding convention under which the published table was computed.
pub fn resource_estimate(dims: u32, epsilon: f64, constant: f64) -> i64 {
    let bits = (dims as f64 * (constant / epsilon.powi(6)).log10()
        + (constant.sqrt() / epsilon.powi(3)).log10())
        / 0.3;
    (bits - 1e-9).ceil() as i64
}

/// Same count with exact base-2 logarithms.
pub fn resource_estimate_exact(dims: u32, epsilon: f64, constant: f64) -> i64 {
    let bits = dims as f64 * (constant / epsilon.powi(6)).log2()
        + (constant.sqrt() / epsilon.powi(3)).log2();
    (bits - 1e-9).ceil() as i64
}

/// `e^{αK} / K^{5/2}`.
pub fn cost_ratio(k: f64, alpha: f64) -> f64 {
    (alpha * k - 2.5 * k.ln()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_table_rows() {
        assert_eq!(
            (
                resource_estimate(1, 0.1, 1.0),
                resource_estimate(1, 0.1, 100.0)
            ),
            (30, 40)
        );
        assert_eq!(
            (
                resource_estimate(3, 0.01, 1.0),
                resource_estimate(3, 0.01, 100.0)
            ),
            (140, 164)
        );
        assert_eq!(resource_estimate(1, 1.0, 1.0), 0);
        assert_eq!(resource_estimate_exact(1, 1.0, 1.0), 0);
        assert!(resource_estimate_exact(3, 0.01, 100.0) <= resource_estimate(3, 0.01, 100.0));
    }

    #[test]
    fn ratio_values() {
        assert_eq!(format!("{:.2e}", cost_ratio(10.0, 0.1)), "8.60e-3");
        assert_eq!(format!("{:.2e}", cost_ratio(20.0, 1.0)), "2.71e5");
        assert_eq!(cost_ratio(1.0, 0.0), 1.0);
    }
}

use crate::error::{check_unit, Error, Result};

const RESIDUAL: f64 = 1e-12;
const DAMPING: f64 = 0.8;
const MAX_ITERATIONS: usize = 50_000_000;

/// Survival probability of the root cluster in bond percolation on the
/// `d`-regular tree.
///
/// The extinction probability of a forward branch solves
/// `q = (1 - p + p q)^(d-1)`; iteration starts at 0 so it lands on the
/// smallest root.
pub fn analytic_theta_regular(d: usize, p: f64) -> Result<f64> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!("degree d = {d} must be >= 3")));
    }
    check_unit("p", p)?;
    if p <= 1.0 / (d - 1) as f64 {
        return Ok(0.0);
    }
    let branch = |q: f64| (1.0 - p + p * q).powi(d as i32 - 1);
    let mut q = 0.0f64;
    for _ in 0..MAX_ITERATIONS {
        let f = branch(q);
        if (f - q).abs() < RESIDUAL {
            return Ok(1.0 - (1.0 - p + p * f).powi(d as i32));
        }
        q = (1.0 - DAMPING) * q + DAMPING * f;
    }
    Err(Error::NoConvergence(MAX_ITERATIONS))
}

#[cfg(test)]
mod tests {
    use super::*;

    // q = ((1-p)/p)^2 for d = 3, so theta = 1 - ((1-p)/p)^3
    fn cubic_closed_form(p: f64) -> f64 {
        if p <= 0.5 {
            0.0
        } else {
            1.0 - ((1.0 - p) / p).powi(3)
        }
    }

    #[test]
    fn matches_cubic_closed_form() {
        for p in [0.55, 0.6, 0.7, 0.8, 0.9, 1.0] {
            let got = analytic_theta_regular(3, p).unwrap();
            assert!((got - cubic_closed_form(p)).abs() < 1e-9, "p = {p}: {got}");
        }
    }

    #[test]
    fn trivial_regimes() {
        assert_eq!(analytic_theta_regular(3, 0.5).unwrap(), 0.0);
        assert_eq!(analytic_theta_regular(4, 0.3).unwrap(), 0.0);
        assert_eq!(analytic_theta_regular(5, 1.0).unwrap(), 1.0);
        assert!(analytic_theta_regular(2, 0.9).is_err());
        assert!(analytic_theta_regular(3, 1.5).is_err());
    }

    #[test]
    fn bisection_oracle_for_higher_degree() {
        // smallest root of q - (1 - p + p q)^(d-1) on [0, 1)
        for (d, p) in [(4usize, 0.5), (5, 0.4), (6, 0.9)] {
            let h = |q: f64| q - (1.0 - p + p * q).powi(d as i32 - 1);
            let (mut lo, mut hi) = (0.0f64, 1.0 - 1e-9);
            assert!(h(lo) < 0.0 && h(hi) > 0.0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if h(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let theta = 1.0 - (1.0 - p + p * lo).powi(d as i32);
            let got = analytic_theta_regular(d, p).unwrap();
            assert!((got - theta).abs() < 1e-9, "d = {d}, p = {p}");
        }
    }

    #[test]
    fn strictly_increasing_above_threshold() {
        for d in [3usize, 4] {
            let pc = 1.0 / (d - 1) as f64;
            let mut last = 0.0;
            let mut p = (pc * 1000.0).floor() / 1000.0 + 0.001;
            while p <= 1.0 + 1e-12 {
                let t = analytic_theta_regular(d, p.min(1.0)).unwrap();
                assert!(t > last, "d = {d}, p = {p}");
                last = t;
                p += 0.001;
            }
        }
    }
}

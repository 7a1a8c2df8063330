/// Weighted least-squares non-decreasing fit by pool-adjacent-violators.
pub fn isotonic_increasing(values: &[f64], weights: &[f64]) -> Vec<f64> {
    assert_eq!(values.len(), weights.len());
    // blocks of (mean, weight, length)
    let mut blocks: Vec<(f64, f64, usize)> = Vec::with_capacity(values.len());
    for (&y, &w) in values.iter().zip(weights) {
        blocks.push((y, w, 1));
        while blocks.len() > 1 {
            let (m2, w2, l2) = blocks[blocks.len() - 1];
            let (m1, w1, l1) = blocks[blocks.len() - 2];
            if m1 <= m2 {
                break;
            }
            blocks.pop();
            let w = w1 + w2;
            let m = if w > 0.0 { (m1 * w1 + m2 * w2) / w } else { (m1 + m2) / 2.0 };
            *blocks.last_mut().expect("two blocks") = (m, w, l1 + l2);
        }
    }
    blocks.into_iter().flat_map(|(m, _, l)| std::iter::repeat_n(m, l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pools_a_single_violation() {
        let fit = isotonic_increasing(&[0.0, 0.4, 0.2, 1.0], &[1.0; 4]);
        assert_eq!(fit.len(), 4);
        assert!((fit[1] - 0.3).abs() < 1e-15 && (fit[2] - 0.3).abs() < 1e-15);
    }

    #[test]
    fn weights_pull_the_pooled_mean() {
        let fit = isotonic_increasing(&[1.0, 0.0], &[3.0, 1.0]);
        assert_eq!(fit, vec![0.75, 0.75]);
    }

    // brute-force oracle: the fit minimises squared error over monotone
    // sequences, so no small monotone perturbation of it does better
    proptest! {
        #[test]
        fn monotone_and_mean_preserving(ys in prop::collection::vec(0.0f64..1.0, 1..40)) {
            let w = vec![1.0; ys.len()];
            let fit = isotonic_increasing(&ys, &w);
            prop_assert!(fit.windows(2).all(|p| p[0] <= p[1] + 1e-12));
            let s1: f64 = ys.iter().sum();
            let s2: f64 = fit.iter().sum();
            prop_assert!((s1 - s2).abs() < 1e-9);
            let sse = |f: &[f64]| f.iter().zip(&ys).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
            let base = sse(&fit);
            let sorted = { let mut s = ys.clone(); s.sort_by(f64::total_cmp); s };
            let flat = vec![s1 / ys.len() as f64; ys.len()];
            prop_assert!(base <= sse(&flat) + 1e-9);
            if ys.windows(2).all(|p| p[0] <= p[1]) {
                prop_assert_eq!(fit, sorted);
            }
        }
    }
}

use super::isotonic::isotonic_increasing;
use super::sweep::largest_two_sweep;
use crate::error::{check_unit, Error, Result};
use crate::generators::GenSpec;
use crate::trials::run_trials;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

/// Threshold above which the regressed curve counts as supercritical.
pub const DEFAULT_EPS0: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaOptions {
    pub eps0: f64,
    /// Bisection levels added inside the grid intervals around the threshold.
    pub refine_levels: u32,
}

impl Default for ThetaOptions {
    fn default() -> Self {
        ThetaOptions {
            eps0: DEFAULT_EPS0,
            refine_levels: 3,
        }
    }
}

/// `count` equispaced levels `1/count, ..., 1`.
pub fn default_p_grid(count: usize) -> Vec<f64> {
    (1..=count).map(|i| i as f64 / count as f64).collect()
}

/// Empirical `p ↦ |C₍₁₎(p)|/n`, monotone after regression.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaProfile {
    p: Vec<f64>,
    theta_mean: Vec<f64>,
    theta_regressed: Vec<f64>,
    c2_fraction: Vec<f64>,
    trials: usize,
    n: usize,
    eps0: f64,
    p_c_estimate: f64,
}

impl ThetaProfile {
    /// Builds a profile from raw means; `p` must be strictly increasing.
    pub fn from_samples(
        p: Vec<f64>,
        theta_mean: Vec<f64>,
        c2_fraction: Vec<f64>,
        trials: usize,
        n: usize,
        eps0: f64,
    ) -> Result<Self> {
        validate_levels(&p)?;
        if theta_mean.len() != p.len() || c2_fraction.len() != p.len() {
            return Err(Error::InvalidParameter("profile columns differ in length".into()));
        }
        for &t in theta_mean.iter().chain(&c2_fraction) {
            check_unit("theta", t)?;
        }
        let theta_regressed = isotonic_increasing(&theta_mean, &vec![1.0; p.len()]);
        let p_c_estimate = first_above(&p, &theta_regressed, eps0).unwrap_or(1.0);
        Ok(ThetaProfile {
            p,
            theta_mean,
            theta_regressed,
            c2_fraction,
            trials,
            n,
            eps0,
            p_c_estimate,
        })
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn theta_mean(&self) -> &[f64] {
        &self.theta_mean
    }

    pub fn theta_regressed(&self) -> &[f64] {
        &self.theta_regressed
    }

    pub fn c2_fraction(&self) -> &[f64] {
        &self.c2_fraction
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    /// Smallest sampled `p` whose regressed value exceeds `eps0`.
    pub fn p_c_estimate(&self) -> f64 {
        self.p_c_estimate
    }

    /// Regressed curve interpolated linearly; constant beyond the ends.
    pub fn theta_at(&self, p: f64) -> f64 {
        let (xs, ys) = (&self.p, &self.theta_regressed);
        if xs.is_empty() {
            return 0.0;
        }
        if p <= xs[0] {
            return ys[0];
        }
        let i = xs.partition_point(|&x| x < p);
        if i == xs.len() {
            return ys[ys.len() - 1];
        }
        let (x0, x1, y0, y1) = (xs[i - 1], xs[i], ys[i - 1], ys[i]);
        y0 + (y1 - y0) * (p - x0) / (x1 - x0)
    }

    /// `p,theta_mean,theta_regressed,c2_fraction,trials`
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "p,theta_mean,theta_regressed,c2_fraction,trials")?;
        for i in 0..self.p.len() {
            writeln!(
                out,
                "{},{},{},{},{}",
                self.p[i], self.theta_mean[i], self.theta_regressed[i], self.c2_fraction[i], self.trials
            )?;
        }
        Ok(())
    }

    /// Reads the CSV layout back; the regression is recomputed.
    pub fn read_csv<R: BufRead>(input: R, n: usize, eps0: f64) -> Result<Self> {
        let (mut p, mut mean, mut c2) = (Vec::new(), Vec::new(), Vec::new());
        let mut trials = 0;
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            if i == 0 || line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            let bad = |msg: &str| Error::Parse {
                line: i + 1,
                msg: msg.to_string(),
            };
            if cols.len() != 5 {
                return Err(bad("expected 5 columns"));
            }
            let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("bad number"));
            p.push(num(cols[0])?);
            mean.push(num(cols[1])?);
            c2.push(num(cols[3])?);
            trials = cols[4].trim().parse().map_err(|_| bad("bad trial count"))?;
        }
        ThetaProfile::from_samples(p, mean, c2, trials, n, eps0)
    }
}

fn first_above(p: &[f64], theta: &[f64], eps0: f64) -> Option<f64> {
    theta.iter().position(|&t| t > eps0).map(|i| p[i])
}

fn validate_levels(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::InvalidParameter("empty p grid".into()));
    }
    for &x in p {
        check_unit("p", x)?;
    }
    if p.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("p grid must be strictly increasing".into()));
    }
    Ok(())
}

/// `inf{p : θ(p) > t}` on the piecewise-linear regressed curve, clamped to
/// `[p_c_estimate, 1]`, with `θ⁻¹(1) = 1` and `θ⁻¹(0) = p_c_estimate`.
pub fn theta_inverse(profile: &ThetaProfile, t: f64) -> Result<f64> {
    check_unit("t", t)?;
    if t == 1.0 {
        return Ok(1.0);
    }
    let pc = profile.p_c_estimate;
    if t == 0.0 {
        return Ok(pc);
    }
    let (xs, ys) = (&profile.p, &profile.theta_regressed);
    if let Some(i) = ys.windows(2).position(|w| w[0] > w[1]) {
        return Err(Error::NonMonotoneProfile(xs[i + 1]));
    }
    let raw = match ys.iter().position(|&y| y > t) {
        None => 1.0,
        Some(0) => xs[0],
        Some(i) => {
            let (x0, x1, y0, y1) = (xs[i - 1], xs[i], ys[i - 1], ys[i]);
            x0 + (t - y0) / (y1 - y0) * (x1 - x0)
        }
    };
    Ok(raw.clamp(pc, 1.0))
}

/// Annealed estimate of `θ`: every trial draws a fresh graph and weights,
/// levels are swept in one union-find pass, and the means are regressed.
pub fn empirical_theta(spec: &GenSpec, p_list: &[f64], trials: usize) -> Result<ThetaProfile> {
    empirical_theta_with(spec, p_list, trials, &ThetaOptions::default())
}

pub fn empirical_theta_with(
    spec: &GenSpec,
    p_list: &[f64],
    trials: usize,
    opts: &ThetaOptions,
) -> Result<ThetaProfile> {
    validate_levels(p_list)?;
    if p_list[0] <= 0.0 {
        return Err(Error::InvalidParameter("p grid must lie in (0, 1]".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    spec.validate()?;
    let n = spec.vertex_count();

    // each coarse interval carries 2^L - 1 interior candidates
    let sub = 1usize << opts.refine_levels.min(10);
    let mut levels = Vec::with_capacity(p_list.len() * sub);
    let mut coarse = Vec::with_capacity(p_list.len());
    let mut interval = Vec::with_capacity(p_list.len() * sub);
    for (i, &p) in p_list.iter().enumerate() {
        if i > 0 {
            let lo = p_list[i - 1];
            for j in 1..sub {
                levels.push(lo + (p - lo) * j as f64 / sub as f64);
                interval.push(Some(i));
            }
        }
        coarse.push(levels.len());
        levels.push(p);
        interval.push(None);
    }

    let per_trial = run_trials(trials, spec.seed, |_, seed| {
        let g = spec.with_seed(seed).generate()?;
        Ok(largest_two_sweep(&g, &levels))
    })?;
    let nf = n.max(1) as f64;
    let mut c1 = vec![0.0; levels.len()];
    let mut c2 = vec![0.0; levels.len()];
    for sizes in &per_trial {
        for (j, &(a, b)) in sizes.iter().enumerate() {
            c1[j] += a as f64 / nf;
            c2[j] += b as f64 / nf;
        }
    }
    for j in 0..levels.len() {
        c1[j] /= trials as f64;
        c2[j] /= trials as f64;
    }

    let pick = |idx: &[usize]| -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        (
            idx.iter().map(|&j| levels[j]).collect(),
            idx.iter().map(|&j| c1[j].min(1.0)).collect(),
            idx.iter().map(|&j| c2[j].min(1.0)).collect(),
        )
    };
    let (cp, ct, cc) = pick(&coarse);
    let rough = ThetaProfile::from_samples(cp, ct, cc, trials, n, opts.eps0)?;
    let keep_interval = match rough.theta_regressed.iter().position(|&t| t > opts.eps0) {
        Some(j) if sub > 1 => vec![j, j + 1],
        _ => vec![],
    };
    let kept: Vec<usize> = (0..levels.len())
        .filter(|&j| interval[j].is_none_or(|i| keep_interval.contains(&i)))
        .collect();
    let (p, t, c) = pick(&kept);
    ThetaProfile::from_samples(p, t, c, trials, n, opts.eps0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{Boundary, GenSpec};

    fn hand_profile() -> ThetaProfile {
        ThetaProfile::from_samples(
            vec![0.5, 0.6, 0.7, 0.8],
            vec![0.0, 0.2, 0.53, 0.7],
            vec![0.0; 4],
            1,
            100,
            DEFAULT_EPS0,
        )
        .unwrap()
    }

    #[test]
    fn inverse_conventions() {
        let prof = hand_profile();
        assert_eq!(prof.p_c_estimate(), 0.6);
        assert_eq!(theta_inverse(&prof, 1.0).unwrap(), 1.0);
        assert_eq!(theta_inverse(&prof, 0.0).unwrap(), 0.6);
        // strict inequality: the sample at exactly 0.53 is the infimum
        assert!((theta_inverse(&prof, 0.53).unwrap() - 0.7).abs() < 1e-12);
        // halfway up the 0.2 -> 0.53 segment
        assert!((theta_inverse(&prof, 0.365).unwrap() - 0.65).abs() < 1e-12);
        // below p_c the clamp applies
        assert_eq!(theta_inverse(&prof, 0.005).unwrap(), 0.6);
        assert_eq!(theta_inverse(&prof, 0.9).unwrap(), 1.0);
        assert!(theta_inverse(&prof, 1.2).is_err());
    }

    #[test]
    fn interpolation_and_regression() {
        let prof = ThetaProfile::from_samples(
            vec![0.25, 0.5, 0.75, 1.0],
            vec![0.1, 0.3, 0.2, 1.0],
            vec![0.0; 4],
            3,
            10,
            DEFAULT_EPS0,
        )
        .unwrap();
        assert_eq!(prof.theta_regressed()[1], 0.25);
        assert_eq!(prof.theta_at(0.0), 0.1);
        assert!((prof.theta_at(0.375) - 0.175).abs() < 1e-12);
        assert_eq!(prof.theta_at(1.0), 1.0);
    }

    #[test]
    fn rejects_unsorted_grid() {
        assert!(ThetaProfile::from_samples(vec![0.5, 0.5], vec![0.0; 2], vec![0.0; 2], 1, 1, 0.01).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let prof = hand_profile();
        let mut buf = Vec::new();
        prof.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("p,theta_mean,theta_regressed,c2_fraction,trials\n0.5,0,0,0,1\n"));
        let back = ThetaProfile::read_csv(buf.as_slice(), 100, DEFAULT_EPS0).unwrap();
        assert_eq!(back, prof);
    }

    #[test]
    fn full_level_on_connected_family_is_one() {
        let spec = GenSpec::grid(20, Boundary::Torus, 3);
        let prof = empirical_theta(&spec, &default_p_grid(16), 2).unwrap();
        assert_eq!(*prof.theta_regressed().last().unwrap(), 1.0);
        assert!(prof.p().windows(2).all(|w| w[0] < w[1]));
        // refinement adds points next to the threshold only
        assert!(prof.p().len() > 16 && prof.p().len() <= 16 + 14);
        // 1% of 400 vertices is a tiny cluster, so the estimate sits low
        assert!(prof.p_c_estimate() > 0.0 && prof.p_c_estimate() < 0.5);
    }
}

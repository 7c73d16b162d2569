#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bctdcs::examples::{finite_field_channel, FiniteFieldSpec};
use bctdcs::outerbound::{support_outer, OuterConfig};
use bctdcs::regions::{capacity_polygon, InnerSupport, Thresholds};
use bctdcs::{ChannelSpec, OptConfig};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ff(k: u64, p1: f64, p2: f64) -> ChannelSpec<f64> {
    let h = if k == 2 { [[1, 1], [1, 0]] } else { [[1, 2], [1, 1]] };
    finite_field_channel(&FiniteFieldSpec::new(k, h).unwrap(), p1, p2).unwrap()
}

/// Random maps on `nx` inputs with outputs below `ny`, and random
/// probabilities. Canonical when `canonical` is set.
pub fn random_spec(rng: &mut impl Rng, nx: usize, ny: usize, canonical: bool) -> ChannelSpec<f64> {
    let f1: Vec<usize> = (0..nx).map(|_| rng.gen_range(0..ny)).collect();
    let f2: Vec<usize> = (0..nx).map(|_| rng.gen_range(0..ny)).collect();
    let (mut a, mut b) = (rng.gen::<f64>(), rng.gen::<f64>());
    if canonical && a < b {
        std::mem::swap(&mut a, &mut b);
    }
    ChannelSpec::new(f1, f2, a, b).unwrap()
}

pub fn random_pmf(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n)
        .map(|_| if rng.gen_bool(0.2) { 0.0 } else { -rng.gen::<f64>().max(1e-300).ln() })
        .collect();
    if w.iter().all(|&v| v == 0.0) {
        w[0] = 1.0;
    }
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= s);
    w
}

pub type Check = Result<(), String>;

/// Swapping receivers transposes the capacity region.
pub fn check_swap_symmetry(spec: &ChannelSpec<f64>) -> Check {
    let cfg = OptConfig::for_dimension(spec.input_size());
    let a = capacity_polygon(spec, 6, &cfg).map_err(|e| e.to_string())?;
    let b = capacity_polygon(&spec.swap_receivers(), 6, &cfg).map_err(|e| e.to_string())?;
    let d = a.transpose().vertex_distance(&b);
    if d <= 1e-6 {
        Ok(())
    } else {
        Err(format!("swap symmetry off by {d:e}"))
    }
}

pub fn check_convex(spec: &ChannelSpec<f64>) -> Check {
    let cfg = OptConfig::for_dimension(spec.input_size());
    let p = capacity_polygon(spec, 6, &cfg).map_err(|e| e.to_string())?;
    if !p.is_convex(1e-12) {
        return Err(format!("non-convex polygon {:?}", p.vertices()));
    }
    if p.vertices().iter().any(|v| v.r1 < 0.0 || v.r2 < 0.0) {
        return Err("negative rate vertex".into());
    }
    if !p.contains(bctdcs::RatePair::origin(), 1e-12) {
        return Err("origin outside region".into());
    }
    Ok(())
}

/// Non-decreasing support values, `sigma(0) = C1`, `sigma(lambda)/lambda -> C2`
/// and continuity across the case thresholds.
pub fn check_support_curve(spec: &ChannelSpec<f64>) -> Check {
    let cfg = OptConfig::for_dimension(spec.input_size());
    let inner = InnerSupport::new(spec, &cfg).map_err(|e| e.to_string())?;
    let t = Thresholds::of(spec);
    let c1 = inner.c1().map_err(|e| e.to_string())?.value;
    let c2 = inner.c2().map_err(|e| e.to_string())?.value;
    let at = |l: f64| inner.at(l).map(|s| s.value).map_err(|e| e.to_string());

    let high = if t.high.is_finite() { t.high } else { 3.0 };
    let mut lambdas: Vec<f64> = (0..=12).map(|i| i as f64 / 12.0 * (2.0 * high + 1.0)).collect();
    lambdas.extend([t.low.min(1.0), 1.0, high]);
    lambdas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let values: Vec<f64> = lambdas.iter().map(|&l| at(l)).collect::<Result<_, _>>()?;
    for w in values.windows(2).zip(lambdas.windows(2)) {
        let (v, l) = w;
        if v[1] < v[0] - 1e-9 {
            return Err(format!("support decreases between lambda {} and {}: {} > {}", l[0], l[1], v[0], v[1]));
        }
    }
    if (at(0.0)? - c1).abs() > 1e-12 {
        return Err("sigma(0) != C1".into());
    }
    let far = 10.0 * high + 1.0;
    let ratio = at(far)? / far;
    // Past a finite upper threshold the support is exactly lambda C2; with
    // p2 = 0 it only approaches it, staying inside the C1 x C2 box.
    let slack = if t.high.is_finite() { 0.0 } else { c1 / far };
    if ratio < c2 - 1e-9 || ratio > c2 + slack + 1e-9 {
        return Err(format!("sigma(lambda)/lambda = {ratio} vs C2 = {c2}"));
    }
    let tol = 2.0 * cfg.value_tolerance;
    for th in [t.low, 1.0, t.high] {
        if !th.is_finite() || th <= 0.0 {
            continue;
        }
        let eps = 1e-9 * th;
        let (lo, hi) = (at(th - eps)?, at(th + eps)?);
        if (hi - lo).abs() > tol {
            return Err(format!("jump of {:e} at threshold {th}", hi - lo));
        }
    }
    Ok(())
}

/// The outer support does not decrease when the auxiliary alphabet grows.
pub fn check_u_monotone(spec: &ChannelSpec<f64>, lambda: f64, u: usize) -> Check {
    let nx = spec.input_size();
    let small = support_outer(spec, lambda, u, &OuterConfig::for_dims(nx, u))
        .map_err(|e| e.to_string())?
        .value;
    let large = support_outer(spec, lambda, u + 1, &OuterConfig::for_dims(nx, u + 1))
        .map_err(|e| e.to_string())?
        .value;
    if large >= small - 1e-9 {
        Ok(())
    } else {
        Err(format!("u_size {u}: {small} > u_size {}: {large}", u + 1))
    }
}

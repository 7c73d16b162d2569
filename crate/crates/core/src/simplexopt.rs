//! Global maximization over the probability simplex.
//!
//! The search is an exhaustive sweep of the lattice `{k / m : sum k = m}`
//! followed by pairwise coordinate ascent from the best lattice points.
//! Refinement starts are the top candidates of the lattice and of each of
//! its dyadic sub-lattices (`m/2`, `m/4`, ...), so the start set for `2m`
//! contains the start set for `m` and the returned value never decreases
//! when the grid is doubled.

use std::cell::RefCell;
use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pmf::{JointPmf, Pmf};
use crate::scalar::Real;

/// Lattice size used to pick default denominators above six dimensions.
pub const DEFAULT_LATTICE_BUDGET: u128 = 40_000;
/// Hard cap on exhaustive enumeration.
pub const ENUMERATION_BUDGET: u128 = 100_000_000;

const GOLDEN_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct OptConfig<T> {
    /// Lattice resolution `m`.
    pub grid_denominator: usize,
    /// Number of best lattice points (per sub-lattice level) refined.
    pub refine_starts: usize,
    /// Maximum number of coordinate-ascent sweeps per start.
    pub refine_iters: usize,
    /// A sweep improving the objective by less than this ends refinement.
    pub step_tolerance: T,
    /// Accuracy the caller may expect of returned values, in bits.
    pub value_tolerance: T,
}

/// Number of points of the simplex lattice with denominator `m` in `dim` coordinates.
pub fn lattice_size(dim: usize, m: usize) -> u128 {
    if dim == 0 {
        return 0;
    }
    // C(m + dim - 1, dim - 1)
    let k = (dim - 1).min(m) as u128;
    let n = (m + dim - 1) as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

impl<T: Real> OptConfig<T> {
    /// Default denominator for a simplex of `dim` coordinates.
    pub fn default_denominator(dim: usize) -> usize {
        match dim {
            0..=4 => 48,
            5 | 6 => 24,
            _ => {
                let mut m = 2;
                while lattice_size(dim, m + 1) <= DEFAULT_LATTICE_BUDGET {
                    m += 1;
                }
                m
            }
        }
    }

    pub fn for_dimension(dim: usize) -> Self {
        Self {
            grid_denominator: Self::default_denominator(dim),
            refine_starts: 8,
            refine_iters: 200,
            step_tolerance: T::lit(1e-12),
            value_tolerance: T::lit(1e-4),
        }
    }

    pub fn with_grid(mut self, grid_denominator: usize) -> Self {
        self.grid_denominator = grid_denominator;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_denominator < 2 {
            return Err(Error::Config("grid_denominator must be at least 2".into()));
        }
        if self.refine_starts == 0 || self.refine_iters == 0 {
            return Err(Error::Config(
                "refine_starts and refine_iters must be positive".into(),
            ));
        }
        if !(self.step_tolerance > T::zero() && self.value_tolerance > T::zero()) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptResult<T, P> {
    pub argmax: P,
    pub value: T,
    pub evaluations: u64,
}

#[derive(Debug, Clone)]
struct Candidate<T> {
    value: T,
    index: Vec<u32>,
}

/// Total order used for ranking: higher value first, then lexicographically
/// smaller lattice index.
fn rank<T: Real>(a: &Candidate<T>, b: &Candidate<T>) -> Ordering {
    match b.value.partial_cmp(&a.value).unwrap_or(Ordering::Equal) {
        Ordering::Equal => a.index.cmp(&b.index),
        o => o,
    }
}

#[derive(Debug, Clone)]
struct TopK<T> {
    k: usize,
    items: Vec<Candidate<T>>,
}

impl<T: Real> TopK<T> {
    fn new(k: usize) -> Self {
        Self {
            k,
            items: Vec::with_capacity(k + 1),
        }
    }

    fn admits(&self, value: T, index: &[u32]) -> bool {
        if self.items.len() < self.k {
            return true;
        }
        let worst = self.items.last().expect("non-empty");
        value > worst.value || (value == worst.value && index < worst.index.as_slice())
    }

    fn offer(&mut self, value: T, index: &[u32]) {
        if !self.admits(value, index) {
            return;
        }
        let c = Candidate {
            value,
            index: index.to_vec(),
        };
        let pos = self
            .items
            .binary_search_by(|probe| rank(probe, &c))
            .unwrap_or_else(|p| p);
        self.items.insert(pos, c);
        self.items.truncate(self.k);
    }

    fn merge(mut self, other: TopK<T>) -> Self {
        for c in other.items {
            self.offer(c.value, &c.index);
        }
        self
    }
}

#[derive(Debug, Clone)]
struct Sweep<T> {
    levels: Vec<TopK<T>>,
    nan: Option<Vec<u32>>,
    count: u64,
}

impl<T: Real> Sweep<T> {
    fn merge(self, other: Sweep<T>) -> Self {
        let levels = self
            .levels
            .into_iter()
            .zip(other.levels)
            .map(|(a, b)| a.merge(b))
            .collect();
        let nan = match (self.nan, other.nan) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Sweep {
            levels,
            nan,
            count: self.count + other.count,
        }
    }
}

/// Visits compositions of `total` into `buf.len()` parts in lexicographic order.
fn for_each_composition(total: u32, buf: &mut [u32], mut f: impl FnMut(&[u32]) -> bool) {
    let parts = buf.len();
    if parts == 0 {
        if total == 0 {
            f(buf);
        }
        return;
    }
    buf.iter_mut().for_each(|v| *v = 0);
    buf[parts - 1] = total;
    loop {
        if !f(buf) {
            return;
        }
        // Lexicographic successor: move one unit from the last non-zero
        // tail entry into its left neighbour and push the rest to the end.
        let Some(t) = (1..parts).rev().find(|&i| buf[i] > 0) else {
            return;
        };
        let rem = buf[t];
        buf[t] = 0;
        buf[t - 1] += 1;
        buf[parts - 1] = rem - 1;
    }
}

fn dyadic_levels(m: usize) -> usize {
    m.trailing_zeros() as usize + 1
}

fn sweep_lattice<T, F>(objective: &F, dim: usize, m: usize, keep: usize) -> Sweep<T>
where
    T: Real,
    F: Fn(&[T]) -> T + Sync,
{
    let levels = dyadic_levels(m);
    let table: Vec<T> = (0..=m)
        .map(|k| T::of_usize(k) / T::of_usize(m))
        .collect();
    let prefix_len = if dim >= 3 { 2 } else { dim - 1 };
    let mut prefixes: Vec<Vec<u32>> = Vec::new();
    match prefix_len {
        0 => prefixes.push(Vec::new()),
        1 => prefixes.extend((0..=m as u32).map(|a| vec![a])),
        _ => {
            for a in 0..=m as u32 {
                for b in 0..=(m as u32 - a) {
                    prefixes.push(vec![a, b]);
                }
            }
        }
    }
    let empty = || Sweep {
        levels: vec![TopK::new(keep); levels],
        nan: None,
        count: 0,
    };
    let parts: Vec<Sweep<T>> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut out = empty();
            let used: u32 = prefix.iter().sum();
            let mut index = vec![0u32; dim];
            index[..prefix.len()].copy_from_slice(prefix);
            let mut x = vec![T::zero(); dim];
            let mut tail = vec![0u32; dim - prefix.len()];
            for_each_composition(m as u32 - used, &mut tail, |t| {
                index[prefix.len()..].copy_from_slice(t);
                for (xi, &k) in x.iter_mut().zip(index.iter()) {
                    *xi = table[k as usize];
                }
                let v = objective(&x);
                out.count += 1;
                if v.is_nan() {
                    out.nan = Some(index.clone());
                    return false;
                }
                let or = index.iter().fold(0u32, |acc, &k| acc | k);
                let depth = (or.trailing_zeros() as usize).min(levels - 1);
                for level in &mut out.levels[..=depth] {
                    level.offer(v, &index);
                }
                true
            });
            out
        })
        .collect();
    parts.into_iter().fold(empty(), Sweep::merge)
}

fn golden_max<T: Real>(mut phi: impl FnMut(T) -> T, lo: T, hi: T) -> (T, T) {
    let inv = T::lit((5f64.sqrt() - 1.0) / 2.0);
    let tol = T::lit(GOLDEN_TOLERANCE);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv * (b - a);
    let mut d = a + inv * (b - a);
    let mut fc = phi(c);
    let mut fd = phi(d);
    let mut guard = 0;
    while b - a > tol && guard < 200 {
        guard += 1;
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv * (b - a);
            fc = phi(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv * (b - a);
            fd = phi(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

struct Refined<T> {
    value: T,
    point: Vec<T>,
    evaluations: u64,
}

fn refine<T, F>(objective: &F, start: Vec<T>, cfg: &OptConfig<T>) -> Result<Refined<T>>
where
    T: Real,
    F: Fn(&[T]) -> T + Sync,
{
    let dim = start.len();
    let nan_at: RefCell<Option<Vec<T>>> = RefCell::new(None);
    let mut evaluations = 0u64;
    let mut x = start;
    let mut y = x.clone();
    let eval = |p: &[T], count: &mut u64| -> T {
        *count += 1;
        let v = objective(p);
        if v.is_nan() {
            nan_at.borrow_mut().get_or_insert_with(|| p.to_vec());
            T::neg_infinity()
        } else {
            v
        }
    };
    let mut f = eval(&x, &mut evaluations);
    for _ in 0..cfg.refine_iters {
        let before = f;
        for i in 0..dim {
            for j in (i + 1)..dim {
                if x[i] <= T::zero() && x[j] <= T::zero() {
                    continue;
                }
                let s = x[i] + x[j];
                let (lo, hi) = (-x[i], x[j]);
                let place = |t: T, y: &mut Vec<T>| {
                    if t <= lo {
                        y[i] = T::zero();
                        y[j] = s;
                    } else if t >= hi {
                        y[i] = s;
                        y[j] = T::zero();
                    } else {
                        y[i] = x[i] + t;
                        y[j] = (s - y[i]).max(T::zero());
                    }
                };
                let mut best_t = T::zero();
                let mut best_f = f;
                for t in [lo, hi] {
                    place(t, &mut y);
                    let v = eval(&y, &mut evaluations);
                    if v > best_f {
                        best_f = v;
                        best_t = t;
                    }
                }
                if hi - lo > T::lit(1e-12) {
                    let (t, v) = golden_max(
                        |t| {
                            place(t, &mut y);
                            eval(&y, &mut evaluations)
                        },
                        lo,
                        hi,
                    );
                    if v > best_f {
                        best_f = v;
                        best_t = t;
                    }
                }
                if best_f > f {
                    place(best_t, &mut y);
                    x[i] = y[i];
                    x[j] = y[j];
                    f = best_f;
                }
                y[i] = x[i];
                y[j] = x[j];
            }
        }
        if f - before < cfg.step_tolerance {
            break;
        }
    }
    if let Some(p) = nan_at.into_inner() {
        return Err(Error::NanObjective {
            point: p.iter().map(|v| v.as_f64()).collect(),
        });
    }
    Ok(Refined {
        value: f,
        point: x,
        evaluations,
    })
}

fn lattice_point<T: Real>(index: &[u32], m: usize) -> Vec<T> {
    index
        .iter()
        .map(|&k| T::of_usize(k as usize) / T::of_usize(m))
        .collect()
}

fn nan_error(index: &[u32], m: usize) -> Error {
    Error::NanObjective {
        point: index.iter().map(|&k| k as f64 / m as f64).collect(),
    }
}

fn search<T, F>(objective: &F, dim: usize, cfg: &OptConfig<T>, seeds: &[Vec<T>]) -> Result<(T, Vec<T>, u64)>
where
    T: Real,
    F: Fn(&[T]) -> T + Sync,
{
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    cfg.validate()?;
    for seed in seeds {
        if seed.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                got: seed.len(),
            });
        }
        Pmf::new(seed.clone())?;
    }
    let m = cfg.grid_denominator;
    let points = lattice_size(dim, m);
    if points > ENUMERATION_BUDGET {
        return Err(Error::Budget {
            points,
            budget: ENUMERATION_BUDGET,
        });
    }
    let sweep = sweep_lattice(objective, dim, m, cfg.refine_starts);
    if let Some(index) = sweep.nan {
        return Err(nan_error(&index, m));
    }
    let mut starts: Vec<Vec<u32>> = Vec::new();
    for level in &sweep.levels {
        for c in &level.items {
            if !starts.contains(&c.index) {
                starts.push(c.index.clone());
            }
        }
    }
    let mut start_points: Vec<Vec<T>> = starts.iter().map(|s| lattice_point(s, m)).collect();
    start_points.extend(seeds.iter().cloned());

    let refined: Vec<Result<Refined<T>>> = start_points
        .into_par_iter()
        .map(|p| refine(objective, p, cfg))
        .collect();
    let mut evaluations = sweep.count;
    let mut best: Option<Refined<T>> = None;
    for r in refined {
        let r = r?;
        evaluations += r.evaluations;
        if best.as_ref().map_or(true, |b| r.value > b.value) {
            best = Some(r);
        }
    }
    let best = best.expect("at least one lattice start");
    let value = objective(&best.point);
    evaluations += 1;
    Ok((value, best.point, evaluations))
}

/// Maximizes `objective` over the simplex of pmfs on `dim` symbols.
///
/// The objective receives the pmf weights and must be pure; it may be called
/// from several threads.
pub fn maximize_simplex<T, F>(objective: F, dim: usize, cfg: &OptConfig<T>) -> Result<OptResult<T, Pmf<T>>>
where
    T: Real,
    F: Fn(&[T]) -> T + Sync,
{
    maximize_simplex_seeded(objective, dim, cfg, &[])
}

/// As [`maximize_simplex`], additionally refining from caller-supplied points.
pub fn maximize_simplex_seeded<T, F>(
    objective: F,
    dim: usize,
    cfg: &OptConfig<T>,
    seeds: &[Vec<T>],
) -> Result<OptResult<T, Pmf<T>>>
where
    T: Real,
    F: Fn(&[T]) -> T + Sync,
{
    let (value, point, evaluations) = search(&objective, dim, cfg, seeds)?;
    Ok(OptResult {
        argmax: Pmf::from_simplex_point(point),
        value,
        evaluations,
    })
}

/// Maximizes over joint pmfs `p(u, x)` with `dims = (|U|, |X|)`.
///
/// The objective receives the weights in row-major order (`u` major).
pub fn maximize_joint<T, F>(
    objective: F,
    dims: (usize, usize),
    cfg: &OptConfig<T>,
) -> Result<OptResult<T, JointPmf<T>>>
where
    T: Real,
    F: Fn(&[T]) -> T + Sync,
{
    maximize_joint_seeded(objective, dims, cfg, &[])
}

pub fn maximize_joint_seeded<T, F>(
    objective: F,
    dims: (usize, usize),
    cfg: &OptConfig<T>,
    seeds: &[JointPmf<T>],
) -> Result<OptResult<T, JointPmf<T>>>
where
    T: Real,
    F: Fn(&[T]) -> T + Sync,
{
    let (rows, cols) = dims;
    let mut flat = Vec::with_capacity(seeds.len());
    for s in seeds {
        if (s.rows(), s.cols()) != dims {
            return Err(Error::Dimension {
                expected: rows * cols,
                got: s.rows() * s.cols(),
            });
        }
        flat.push(s.weights().to_vec());
    }
    let (value, point, evaluations) = search(&objective, rows * cols, cfg, &flat)?;
    Ok(OptResult {
        argmax: JointPmf::from_simplex_point(rows, cols, point),
        value,
        evaluations,
    })
}

/// Visits every lattice point `k / m` of the `dim`-coordinate simplex in
/// lexicographic order of `k`.
pub fn for_each_lattice_point<T: Real>(dim: usize, m: usize, mut f: impl FnMut(&[T])) -> Result<()> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let points = lattice_size(dim, m);
    if points > ENUMERATION_BUDGET {
        return Err(Error::Budget {
            points,
            budget: ENUMERATION_BUDGET,
        });
    }
    let table: Vec<T> = (0..=m)
        .map(|k| T::of_usize(k) / T::of_usize(m))
        .collect();
    let mut index = vec![0u32; dim];
    let mut x = vec![T::zero(); dim];
    for_each_composition(m as u32, &mut index, |k| {
        for (xi, &ki) in x.iter_mut().zip(k) {
            *xi = table[ki as usize];
        }
        f(&x);
        true
    });
    Ok(())
}

/// Best lattice point, without refinement.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeMax<T> {
    pub value: T,
    pub point: Vec<T>,
    pub points: u128,
}

/// Exhaustive maximum over the lattice with denominator `m`.
pub fn lattice_maximum<T, F>(objective: F, dim: usize, m: usize) -> Result<LatticeMax<T>>
where
    T: Real,
    F: Fn(&[T]) -> T + Sync,
{
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if m == 0 {
        return Err(Error::Config("grid denominator must be positive".into()));
    }
    let points = lattice_size(dim, m);
    if points > ENUMERATION_BUDGET {
        return Err(Error::Budget {
            points,
            budget: ENUMERATION_BUDGET,
        });
    }
    let sweep = sweep_lattice(&objective, dim, m, 1);
    if let Some(index) = sweep.nan {
        return Err(nan_error(&index, m));
    }
    let best = &sweep.levels[0].items[0];
    Ok(LatticeMax {
        value: best.value,
        point: lattice_point(&best.index, m),
        points,
    })
}

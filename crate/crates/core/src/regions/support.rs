//! Support function of the capacity region, `sigma(w) = max w1 R1 + w2 R2`.
//!
//! In canonical orientation (`p1 >= p2`) the maximization reduces to a
//! single optimization over `p(x)` whose objective depends on where the
//! slope `lambda = w2 / w1` falls relative to the thresholds
//! `p̄1 / p̄2 <= 1 <= p1 / p2`:
//!
//! | slope range                 | objective (per unit `w1`)                          |
//! |-----------------------------|----------------------------------------------------|
//! | `[0, p̄1/p̄2]`               | `p1 H(f1) + p̄1 H(f2)`                              |
//! | `(p̄1/p̄2, 1]`               | `p1 H(f1) + p̄1 I(f1;f2) + lambda p̄2 H(f2|f1)`      |
//! | `(1, p1/p2]`                | `p1 H(f1|f2) + lambda (p2 I(f1;f2) + p̄2 H(f2))`    |
//! | `(p1/p2, inf)`              | `lambda (p2 H(f1) + p̄2 H(f2))`                     |

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::channel::{ChannelSpec, ComponentLaws};
use crate::error::{Error, Result};
use crate::pmf::Pmf;
use crate::scalar::Real;
use crate::simplexopt::{maximize_simplex, OptConfig, OptResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SupportCase {
    /// Point-to-point rate of receiver 1, `U1 = X`.
    R1,
    /// Marton corner with `(U1, U2) = (f1, f2)`, slope at most 1.
    R3,
    /// Marton corner with `(U1, U2) = (f1, f2)`, slope above 1.
    R4,
    /// Point-to-point rate of receiver 2, `U2 = X`.
    R2,
}

impl SupportCase {
    pub fn label(self) -> &'static str {
        match self {
            SupportCase::R1 => "R1-case",
            SupportCase::R3 => "R3-case",
            SupportCase::R4 => "R4-case",
            SupportCase::R2 => "R2-case",
        }
    }
}

impl fmt::Display for SupportCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SupportCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R1-case" => Ok(SupportCase::R1),
            "R3-case" => Ok(SupportCase::R3),
            "R4-case" => Ok(SupportCase::R4),
            "R2-case" => Ok(SupportCase::R2),
            other => Err(Error::Csv(format!("unknown case label {other:?}"))),
        }
    }
}

/// Slope thresholds `p̄1/p̄2` and `p1/p2` of a canonical spec.
///
/// Degenerate ratios take their limiting values: `p̄1 = p̄2 = 0` gives
/// `(0, 1)`, and `p2 = 0` sends the upper threshold to infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds<T> {
    pub low: T,
    pub high: T,
}

impl<T: Real> Thresholds<T> {
    pub fn of(spec: &ChannelSpec<T>) -> Self {
        let (p1b, p2b) = (spec.p1_bar(), spec.p2_bar());
        let low = if p2b > T::zero() {
            p1b / p2b
        } else if p1b > T::zero() {
            T::infinity()
        } else {
            T::zero()
        };
        let high = if p1b <= T::zero() && p2b <= T::zero() {
            T::one()
        } else if spec.p2() > T::zero() {
            spec.p1() / spec.p2()
        } else {
            T::infinity()
        };
        Self { low, high }
    }

    /// Case governing direction `(w1, w2)`.
    pub fn case(&self, w1: T, w2: T) -> SupportCase {
        let slope = if w1 > T::zero() { w2 / w1 } else { T::infinity() };
        if slope <= self.low && w1 > T::zero() {
            SupportCase::R1
        } else if slope <= T::one() {
            SupportCase::R3
        } else if slope <= self.high {
            SupportCase::R4
        } else {
            SupportCase::R2
        }
    }
}

/// Value of the support function in one direction, with its witness input law.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportPoint<T> {
    pub value: T,
    pub case: SupportCase,
    pub argmax: Pmf<T>,
}

/// Support-function evaluator for one canonical channel, caching `C1` and `C2`.
pub struct InnerSupport<T: Real> {
    spec: ChannelSpec<T>,
    laws: ComponentLaws,
    thresholds: Thresholds<T>,
    cfg: OptConfig<T>,
    c1: OnceLock<Result<OptResult<T, Pmf<T>>>>,
    c2: OnceLock<Result<OptResult<T, Pmf<T>>>>,
}

impl<T: Real> InnerSupport<T> {
    pub fn new(spec: &ChannelSpec<T>, cfg: &OptConfig<T>) -> Result<Self> {
        spec.require_canonical()?;
        cfg.validate()?;
        Ok(Self {
            laws: ComponentLaws::new(spec),
            thresholds: Thresholds::of(spec),
            spec: spec.clone(),
            cfg: cfg.clone(),
            c1: OnceLock::new(),
            c2: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &ChannelSpec<T> {
        &self.spec
    }

    pub fn laws(&self) -> &ComponentLaws {
        &self.laws
    }

    pub fn thresholds(&self) -> Thresholds<T> {
        self.thresholds
    }

    pub fn config(&self) -> &OptConfig<T> {
        &self.cfg
    }

    /// Objective of `case` in direction `(w1, w2)`, as a function of `p(x)`.
    pub fn objective(&self, case: SupportCase, w1: T, w2: T) -> impl Fn(&[T]) -> T + Sync + '_ {
        let (p1, p2) = (self.spec.p1(), self.spec.p2());
        let (p1b, p2b) = (self.spec.p1_bar(), self.spec.p2_bar());
        move |px: &[T]| {
            let r = self.laws.report(px);
            match case {
                SupportCase::R1 => w1 * (p1 * r.h_f1 + p1b * r.h_f2),
                SupportCase::R3 => w1 * (p1 * r.h_f1 + p1b * r.mi_f1_f2) + w2 * p2b * r.h_f2_given_f1,
                SupportCase::R4 => w1 * p1 * r.h_f1_given_f2 + w2 * (p2 * r.mi_f1_f2 + p2b * r.h_f2),
                SupportCase::R2 => w2 * (p2 * r.h_f1 + p2b * r.h_f2),
            }
        }
    }

    /// Maximizes the objective of `case` in direction `(w1, w2)`.
    pub fn maximize_case(&self, case: SupportCase, w1: T, w2: T) -> Result<OptResult<T, Pmf<T>>> {
        maximize_simplex(self.objective(case, w1, w2), self.spec.input_size(), &self.cfg)
    }

    /// `C1 = max I(X; Y1 | S)` and its maximizer.
    pub fn c1(&self) -> Result<OptResult<T, Pmf<T>>> {
        self.c1
            .get_or_init(|| self.maximize_case(SupportCase::R1, T::one(), T::zero()))
            .clone()
    }

    /// `C2 = max I(X; Y2 | S)` and its maximizer.
    pub fn c2(&self) -> Result<OptResult<T, Pmf<T>>> {
        self.c2
            .get_or_init(|| self.maximize_case(SupportCase::R2, T::zero(), T::one()))
            .clone()
    }

    /// `max w1 R1 + w2 R2` over the capacity region.
    pub fn weighted(&self, w1: T, w2: T) -> Result<SupportPoint<T>> {
        for w in [w1, w2] {
            if !(w >= T::zero()) || !w.is_finite() {
                return Err(Error::InvalidLambda(w.as_f64()));
            }
        }
        let case = self.thresholds.case(w1, w2);
        let (value, argmax) = match case {
            SupportCase::R1 => {
                let c = self.c1()?;
                (w1 * c.value, c.argmax)
            }
            SupportCase::R2 => {
                let c = self.c2()?;
                (w2 * c.value, c.argmax)
            }
            _ => {
                let r = self.maximize_case(case, w1, w2)?;
                (r.value, r.argmax)
            }
        };
        Ok(SupportPoint {
            value,
            case,
            argmax,
        })
    }

    /// `max R1 + lambda R2`.
    pub fn at(&self, lambda: T) -> Result<SupportPoint<T>> {
        if !(lambda >= T::zero()) || !lambda.is_finite() {
            return Err(Error::InvalidLambda(lambda.as_f64()));
        }
        self.weighted(T::one(), lambda)
    }
}

/// `max R1 + lambda R2` over the capacity region of a canonical spec.
pub fn support_inner<T: Real>(
    spec: &ChannelSpec<T>,
    lambda: T,
    cfg: &OptConfig<T>,
) -> Result<(T, SupportCase, Pmf<T>)> {
    let s = InnerSupport::new(spec, cfg)?.at(lambda)?;
    Ok((s.value, s.case, s.argmax))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupportSample<T> {
    pub lambda: T,
    pub value: T,
    pub case: SupportCase,
    pub argmax: Pmf<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupportCurve<T> {
    pub samples: Vec<SupportSample<T>>,
}

impl<T: Real> SupportCurve<T> {
    /// Samples the support function of a canonical spec at `lambdas`.
    pub fn sample(spec: &ChannelSpec<T>, lambdas: &[T], cfg: &OptConfig<T>) -> Result<Self> {
        let inner = InnerSupport::new(spec, cfg)?;
        Self::sample_with(&inner, lambdas)
    }

    pub fn sample_with(inner: &InnerSupport<T>, lambdas: &[T]) -> Result<Self> {
        let samples = lambdas
            .par_iter()
            .map(|&lambda| {
                inner.at(lambda).map(|s| SupportSample {
                    lambda,
                    value: s.value,
                    case: s.case,
                    argmax: s.argmax,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { samples })
    }
}

/// `n` points on `[start, end]` including both ends, spaced geometrically
/// towards each end.
pub fn segment_points<T: Real>(start: T, end: T, n: usize) -> Vec<T> {
    if !(end > start) || n <= 1 {
        return vec![start];
    }
    let len = end - start;
    let half = (n - 2) / 2;
    let mut out = vec![start, end];
    if half > 0 {
        let closest = T::lit(1e-3);
        let ratio = (T::lit(2.0) * closest).powf(T::one() / T::of_usize(half));
        let mut offset = len / T::lit(2.0);
        for _ in 0..half {
            offset = offset * ratio;
            out.push(start + offset);
            out.push(end - offset);
        }
    }
    if (n - 2) % 2 == 1 {
        out.push(start + len / T::lit(2.0));
    }
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
    out.dedup();
    out
}

/// Samples of `[0, 1]` with `n` points on each side of `split`.
pub fn unit_interval_samples<T: Real>(split: T, n: usize) -> Vec<T> {
    let split = split.max(T::zero()).min(T::one());
    let mut out = segment_points(T::zero(), split, n);
    out.extend(segment_points(split, T::one(), n));
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
    out.dedup();
    out
}

/// Directions `(w1, w2)` sweeping the first quadrant: `(1, lambda)` for
/// `lambda` in `[0, 1]` and `(mu, 1)` for `mu` in `[0, 1)`, clustered near
/// the case thresholds.
pub fn sweep_directions<T: Real>(thresholds: Thresholds<T>, n: usize) -> Vec<(T, T)> {
    let mut dirs: Vec<(T, T)> = unit_interval_samples(thresholds.low, n)
        .into_iter()
        .map(|l| (T::one(), l))
        .collect();
    let mu_split = if thresholds.high.is_finite() {
        T::one() / thresholds.high
    } else {
        T::zero()
    };
    dirs.extend(
        unit_interval_samples(mu_split, n)
            .into_iter()
            .filter(|&mu| mu < T::one())
            .map(|mu| (mu, T::one())),
    );
    dirs
}

/// Slopes `lambda` covering `[0, inf)`: the first-quadrant sweep with the
/// vertical direction dropped.
pub fn sweep_lambdas<T: Real>(thresholds: Thresholds<T>, n: usize) -> Vec<T> {
    let mut out: Vec<T> = sweep_directions(thresholds, n)
        .into_iter()
        .filter(|&(w1, _)| w1 > T::zero())
        .map(|(w1, w2)| w2 / w1)
        .collect();
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
    out.dedup();
    out
}

//! The UV outer bound and numerical converse certification.
//!
//! For slope `lambda <= 1` the outer support is
//!
//! ```text
//! max_{p(u,x)} p1 H(f1) + p̄1 H(f2) + (lambda p2 - p1) H(f1|U) + (lambda p̄2 - p̄1) H(f2|U)
//! ```
//!
//! and for `lambda > 1`
//!
//! ```text
//! max_{p(u,x)} lambda (p2 H(f1) + p̄2 H(f2)) + (p1 - lambda p2) H(f1|U) + (p̄1 - lambda p̄2) H(f2|U)
//! ```
//!
//! Both are maximized over the full joint simplex. The joint search is
//! seeded with the four extreme auxiliaries `U in {X, f1, f2, const}`, each
//! optimized over `p(x)` first.

use rayon::prelude::*;

use crate::channel::{ChannelSpec, ComponentLaws};
use crate::error::{Error, Result};
use crate::infotheory::binary_entropy_unchecked;
use crate::pmf::JointPmf;
use crate::regions::{sweep_lambdas, InnerSupport, SupportCase, Thresholds};
use crate::scalar::Real;
use crate::simplexopt::{lattice_maximum, maximize_joint_seeded, maximize_simplex, OptConfig};

/// Slack allowed when asserting `outer >= inner`.
pub const ORDERING_SLACK: f64 = 1e-9;
/// Default converse tolerance in bits.
pub const DEFAULT_TOLERANCE: f64 = 5e-3;

/// Coefficients of `H(f1)`, `H(f2)`, `H(f1|U)`, `H(f2|U)` in the outer objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OuterObjective<T> {
    pub c_f1: T,
    pub c_f2: T,
    pub c_f1_given_u: T,
    pub c_f2_given_u: T,
}

impl<T: Real> OuterObjective<T> {
    pub fn new(spec: &ChannelSpec<T>, lambda: T) -> Result<Self> {
        if !(lambda >= T::zero()) || !lambda.is_finite() {
            return Err(Error::InvalidLambda(lambda.as_f64()));
        }
        let (p1, p2) = (spec.p1(), spec.p2());
        let (p1b, p2b) = (spec.p1_bar(), spec.p2_bar());
        Ok(if lambda <= T::one() {
            Self {
                c_f1: p1,
                c_f2: p1b,
                c_f1_given_u: lambda * p2 - p1,
                c_f2_given_u: lambda * p2b - p1b,
            }
        } else {
            Self {
                c_f1: lambda * p2,
                c_f2: lambda * p2b,
                c_f1_given_u: p1 - lambda * p2,
                c_f2_given_u: p1b - lambda * p2b,
            }
        })
    }

    pub fn eval(&self, h_f1: T, h_f2: T, h_f1_given_u: T, h_f2_given_u: T) -> T {
        self.c_f1 * h_f1 + self.c_f2 * h_f2 + self.c_f1_given_u * h_f1_given_u + self.c_f2_given_u * h_f2_given_u
    }

    /// Objective over row-major joint weights `p(u, x)`.
    pub fn joint_fn<'a>(&'a self, laws: &'a ComponentLaws, u_size: usize) -> impl Fn(&[T]) -> T + Sync + 'a {
        move |w: &[T]| {
            let a = laws.aux_report(w, u_size);
            self.eval(a.h_f1, a.h_f2, a.h_f1_given_u, a.h_f2_given_u)
        }
    }
}

/// Deterministic auxiliaries used to seed the joint search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lift {
    /// `U = X`.
    Input,
    /// `U = f1(X)`.
    First,
    /// `U = f2(X)`.
    Second,
    /// `U` constant.
    Constant,
}

impl Lift {
    pub const ALL: [Lift; 4] = [Lift::Input, Lift::First, Lift::Second, Lift::Constant];

    fn labels(self, laws: &ComponentLaws) -> Vec<usize> {
        match self {
            Lift::Input => (0..laws.input_size()).collect(),
            Lift::First => laws.f1_labels().to_vec(),
            Lift::Second => laws.f2_labels().to_vec(),
            Lift::Constant => vec![0; laws.input_size()],
        }
    }

    /// Auxiliary alphabet size the lift needs.
    pub fn required_size(self, laws: &ComponentLaws) -> usize {
        match self {
            Lift::Input => laws.input_size(),
            Lift::First => laws.f1_range(),
            Lift::Second => laws.f2_range(),
            Lift::Constant => 1,
        }
    }

    /// Joint law of `(U, X)` with `U = g(X)` and `X ~ px`, or `None` if
    /// `u_size` is too small.
    pub fn joint<T: Real>(self, laws: &ComponentLaws, px: &[T], u_size: usize) -> Option<Vec<T>> {
        if self.required_size(laws) > u_size {
            return None;
        }
        let nx = laws.input_size();
        let mut w = vec![T::zero(); u_size * nx];
        for (x, u) in self.labels(laws).into_iter().enumerate() {
            w[u * nx + x] = px[x];
        }
        Some(w)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OuterConfig<T> {
    /// Search over `p(x)` for each lifted auxiliary.
    pub lift: OptConfig<T>,
    /// Search over the joint `p(u, x)`.
    pub joint: OptConfig<T>,
}

impl<T: Real> OuterConfig<T> {
    /// Defaults for an input alphabet of `nx` symbols and `u_size` auxiliary symbols.
    pub fn for_dims(nx: usize, u_size: usize) -> Self {
        let mut joint = OptConfig::for_dimension(nx * u_size);
        joint.refine_starts = 2;
        joint.refine_iters = 25;
        Self {
            lift: OptConfig::for_dimension(nx),
            joint,
        }
    }

    pub fn with_lift(mut self, lift: OptConfig<T>) -> Self {
        self.lift = lift;
        self
    }
}

/// Default auxiliary alphabet size, `|X| + 1`.
pub fn default_u_size(input_size: usize) -> usize {
    input_size + 1
}

#[derive(Debug, Clone, PartialEq)]
pub struct OuterSupport<T> {
    pub value: T,
    pub argmax: JointPmf<T>,
}

/// `max R1 + lambda R2` over the UV outer bound with `|U| = u_size`.
pub fn support_outer<T: Real>(
    spec: &ChannelSpec<T>,
    lambda: T,
    u_size: usize,
    cfg: &OuterConfig<T>,
) -> Result<OuterSupport<T>> {
    spec.require_canonical()?;
    if u_size == 0 {
        return Err(Error::ZeroAuxiliary);
    }
    let obj = OuterObjective::new(spec, lambda)?;
    let laws = ComponentLaws::new(spec);
    let nx = spec.input_size();
    let joint_fn = obj.joint_fn(&laws, u_size);
    let mut seeds = Vec::new();
    for lift in Lift::ALL {
        if lift.required_size(&laws) > u_size {
            continue;
        }
        let lifted = |px: &[T]| joint_fn(&lift.joint(&laws, px, u_size).expect("size checked"));
        let best = maximize_simplex(lifted, nx, &cfg.lift)?;
        let w = lift.joint(&laws, best.argmax.weights(), u_size).expect("size checked");
        seeds.push(JointPmf::from_simplex_point(u_size, nx, w));
    }
    let r = maximize_joint_seeded(&joint_fn, (u_size, nx), &cfg.joint, &seeds)?;
    Ok(OuterSupport {
        value: r.value,
        argmax: r.argmax,
    })
}

/// Exhaustive lattice maximum of the outer objective, without refinement.
pub fn brute_force_support<T: Real>(spec: &ChannelSpec<T>, lambda: T, u_size: usize, grid: usize) -> Result<T> {
    spec.require_canonical()?;
    if u_size == 0 {
        return Err(Error::ZeroAuxiliary);
    }
    let obj = OuterObjective::new(spec, lambda)?;
    let laws = ComponentLaws::new(spec);
    let r = lattice_maximum(obj.joint_fn(&laws, u_size), u_size * spec.input_size(), grid)?;
    Ok(r.value)
}

fn fannes<T: Real>(t: T, n: usize) -> T {
    let n_t = T::of_usize(n.max(1));
    if n <= 1 {
        T::zero()
    } else if t >= T::one() - T::one() / n_t {
        n_t.log2()
    } else {
        t * T::of_usize(n - 1).log2() + binary_entropy_unchecked(t)
    }
}

fn conditional_continuity<T: Real>(t: T, n: usize) -> T {
    let n_t = T::of_usize(n.max(1));
    if n <= 1 {
        return T::zero();
    }
    let b = T::lit(2.0) * t * n_t.log2() + (T::one() + t) * binary_entropy_unchecked(t / (T::one() + t));
    b.min(n_t.log2())
}

/// Largest possible shortfall of the lattice maximum with denominator
/// `grid` below the true outer support.
///
/// Every joint law lies within total variation `d / (4 grid)` of a lattice
/// point (`d = u_size |X|`). Entropy terms are bounded with the
/// Fannes-Audenaert modulus and conditional terms with the
/// Alicki-Fannes-Winter modulus.
pub fn lattice_error_bound<T: Real>(spec: &ChannelSpec<T>, lambda: T, u_size: usize, grid: usize) -> Result<T> {
    if grid == 0 {
        return Err(Error::Config("grid denominator must be positive".into()));
    }
    let obj = OuterObjective::new(spec, lambda)?;
    let laws = ComponentLaws::new(spec);
    let d = u_size * spec.input_size();
    let t = (T::of_usize(d) / T::of_usize(4 * grid)).min(T::one());
    let (n1, n2) = (laws.f1_range(), laws.f2_range());
    Ok(obj.c_f1.abs() * fannes(t, n1)
        + obj.c_f2.abs() * fannes(t, n2)
        + obj.c_f1_given_u.abs() * conditional_continuity(t, n1)
        + obj.c_f2_given_u.abs() * conditional_continuity(t, n2))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConverseSample<T> {
    pub lambda: T,
    pub inner: T,
    pub outer: T,
    pub gap: T,
    pub case: SupportCase,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConverseReport<T> {
    pub samples: Vec<ConverseSample<T>>,
    pub max_gap: T,
    pub tolerance: T,
    pub pass: bool,
}

/// Slopes spanning all four cases: `n` per case interval, with the last
/// interval ending at `2 p1/p2 + 1`.
pub fn converse_lambdas<T: Real>(spec: &ChannelSpec<T>, n: usize) -> Vec<T> {
    let t = Thresholds::of(spec);
    let two = T::lit(2.0);
    let high = if t.high.is_finite() { t.high } else { T::lit(4.0) };
    let low = t.low.min(T::one());
    let mut out = Vec::new();
    let mut push = |a: T, b: T, closed_left: bool| {
        if b > a {
            for i in 0..n {
                let k = if closed_left { i } else { i + 1 };
                let denom = if closed_left { n.max(2) - 1 } else { n };
                out.push(a + (b - a) * T::of_usize(k) / T::of_usize(denom));
            }
        }
    };
    push(T::zero(), low, true);
    push(low, T::one(), false);
    push(T::one(), high, false);
    push(high, two * high + T::one(), false);
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite slopes"));
    out.dedup();
    out
}

/// Compares inner and outer supports at each slope.
///
/// Fails with [`Error::Ordering`] if the outer value falls below the inner
/// one; a gap above `tol` only clears `pass`.
pub fn verify_converse<T: Real>(
    spec: &ChannelSpec<T>,
    lambdas: &[T],
    u_size: usize,
    tol: T,
    cfg: &OptConfig<T>,
) -> Result<ConverseReport<T>> {
    let outer_cfg = OuterConfig::for_dims(spec.input_size(), u_size).with_lift(cfg.clone());
    verify_converse_with(spec, lambdas, u_size, tol, cfg, &outer_cfg)
}

pub fn verify_converse_with<T: Real>(
    spec: &ChannelSpec<T>,
    lambdas: &[T],
    u_size: usize,
    tol: T,
    inner_cfg: &OptConfig<T>,
    outer_cfg: &OuterConfig<T>,
) -> Result<ConverseReport<T>> {
    if lambdas.is_empty() {
        return Err(Error::LambdaCount { min: 1, got: 0 });
    }
    if !(tol >= T::zero()) {
        return Err(Error::Config("tolerance must be non-negative".into()));
    }
    let inner = InnerSupport::new(spec, inner_cfg)?;
    inner.c1()?;
    inner.c2()?;
    let samples = lambdas
        .par_iter()
        .map(|&lambda| {
            let s = inner.at(lambda)?;
            let outer = support_outer(spec, lambda, u_size, outer_cfg)?.value;
            if outer < s.value - T::lit(ORDERING_SLACK) {
                return Err(Error::Ordering {
                    lambda: lambda.as_f64(),
                    inner: s.value.as_f64(),
                    outer: outer.as_f64(),
                });
            }
            Ok(ConverseSample {
                lambda,
                inner: s.value,
                outer,
                gap: outer - s.value,
                case: s.case,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_gap = samples.iter().map(|s| s.gap.abs()).fold(T::zero(), T::max);
    Ok(ConverseReport {
        pass: max_gap <= tol,
        samples,
        max_gap,
        tolerance: tol,
    })
}

/// Default slopes for a converse check: the region sweep of `n` points per
/// threshold side.
pub fn default_lambdas<T: Real>(spec: &ChannelSpec<T>, n: usize) -> Vec<T> {
    sweep_lambdas(Thresholds::of(spec), n)
}

//! The two-component state-dependent deterministic broadcast channel.
//!
//! Receiver `j` observes `f1(X)` when its state is 1 (probability `pj`) and
//! `f2(X)` otherwise. Both receivers know their own state; the sender does not.

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::infotheory::{entropy_of, plogp, EntropyReport};
use crate::pmf::{JointPmf, Pmf};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpec<T> {
    f1: Vec<usize>,
    f2: Vec<usize>,
    p1: T,
    p2: T,
}

fn check_probability<T: Real>(name: &'static str, p: T) -> Result<()> {
    if p >= T::zero() && p <= T::one() {
        Ok(())
    } else {
        Err(Error::Probability {
            name,
            value: p.as_f64(),
        })
    }
}

impl<T: Real> ChannelSpec<T> {
    /// `f1` and `f2` map every input symbol `0..f1.len()` to an output symbol.
    pub fn new(f1: Vec<usize>, f2: Vec<usize>, p1: T, p2: T) -> Result<Self> {
        if f1.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if f2.len() != f1.len() {
            return Err(Error::MapLength {
                which: "f2",
                len: f2.len(),
                expected: f1.len(),
            });
        }
        check_probability("p1", p1)?;
        check_probability("p2", p2)?;
        Ok(Self { f1, f2, p1, p2 })
    }

    pub fn input_size(&self) -> usize {
        self.f1.len()
    }

    /// Size of the merged output alphabet of both components.
    pub fn output_size(&self) -> usize {
        1 + self.f1.iter().chain(&self.f2).copied().max().unwrap_or(0)
    }

    pub fn f1(&self) -> &[usize] {
        &self.f1
    }

    pub fn f2(&self) -> &[usize] {
        &self.f2
    }

    pub fn p1(&self) -> T {
        self.p1
    }

    pub fn p2(&self) -> T {
        self.p2
    }

    pub fn p1_bar(&self) -> T {
        T::one() - self.p1
    }

    pub fn p2_bar(&self) -> T {
        T::one() - self.p2
    }

    pub fn with_probabilities(&self, p1: T, p2: T) -> Result<Self> {
        Self::new(self.f1.clone(), self.f2.clone(), p1, p2)
    }

    /// Exchanges the roles of the two receivers.
    pub fn swap_receivers(&self) -> Self {
        Self {
            f1: self.f1.clone(),
            f2: self.f2.clone(),
            p1: self.p2,
            p2: self.p1,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.p1 >= self.p2
    }

    pub(crate) fn require_canonical(&self) -> Result<()> {
        if self.is_canonical() {
            Ok(())
        } else {
            Err(Error::NotCanonical {
                p1: self.p1.as_f64(),
                p2: self.p2.as_f64(),
            })
        }
    }

    pub(crate) fn check_input(&self, px: &Pmf<T>) -> Result<()> {
        if px.len() != self.input_size() {
            return Err(Error::Dimension {
                expected: self.input_size(),
                got: px.len(),
            });
        }
        Ok(())
    }
}

/// Returns the spec with `p1 >= p2` and whether the receivers were swapped.
pub fn canonicalize<T: Real>(spec: &ChannelSpec<T>) -> (ChannelSpec<T>, bool) {
    if spec.is_canonical() {
        (spec.clone(), false)
    } else {
        (spec.swap_receivers(), true)
    }
}

/// Law of `(f1(X), f2(X))` on the merged output alphabet.
pub fn induced_joint<T: Real>(spec: &ChannelSpec<T>, px: &Pmf<T>) -> Result<JointPmf<T>> {
    spec.check_input(px)?;
    let n = spec.output_size();
    let mut w = vec![T::zero(); n * n];
    for (x, &p) in px.weights().iter().enumerate() {
        let cell = &mut w[spec.f1[x] * n + spec.f2[x]];
        *cell = *cell + p;
    }
    Ok(JointPmf::from_simplex_point(n, n, w))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Receiver {
    First,
    Second,
}

/// `I(X; Yj | S) = P(Sj = 1) H(f1(X)) + P(Sj = 2) H(f2(X))`.
pub fn receiver_channel_mi<T: Real>(
    spec: &ChannelSpec<T>,
    px: &Pmf<T>,
    receiver: Receiver,
) -> Result<T> {
    spec.check_input(px)?;
    let n = spec.output_size();
    let h1 = entropy_of(px.pushforward(&spec.f1, n)?.weights());
    let h2 = entropy_of(px.pushforward(&spec.f2, n)?.weights());
    let p = match receiver {
        Receiver::First => spec.p1,
        Receiver::Second => spec.p2,
    };
    Ok(p * h1 + (T::one() - p) * h2)
}

type Buf<T> = SmallVec<[T; 32]>;

/// Precomputed index maps for fast entropy evaluation in optimizer loops.
///
/// Output values of each component are relabeled densely, and each distinct
/// pair `(f1(x), f2(x))` gets its own index.
#[derive(Debug, Clone)]
pub struct ComponentLaws {
    f1: Vec<usize>,
    f2: Vec<usize>,
    pair: Vec<usize>,
    n1: usize,
    n2: usize,
    n_pairs: usize,
}

fn relabel(map: &[usize]) -> (Vec<usize>, usize) {
    let mut seen: Vec<usize> = map.to_vec();
    seen.sort_unstable();
    seen.dedup();
    let out = map
        .iter()
        .map(|v| seen.binary_search(v).expect("value present"))
        .collect();
    (out, seen.len())
}

/// Entropies involving an auxiliary variable `U` jointly distributed with `X`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxEntropies<T> {
    pub h_f1: T,
    pub h_f2: T,
    pub h_f1_given_u: T,
    pub h_f2_given_u: T,
}

impl ComponentLaws {
    pub fn new<T: Real>(spec: &ChannelSpec<T>) -> Self {
        let (f1, n1) = relabel(&spec.f1);
        let (f2, n2) = relabel(&spec.f2);
        let codes: Vec<usize> = f1.iter().zip(&f2).map(|(&a, &b)| a * n2 + b).collect();
        let (pair, n_pairs) = relabel(&codes);
        Self {
            f1,
            f2,
            pair,
            n1,
            n2,
            n_pairs,
        }
    }

    pub fn input_size(&self) -> usize {
        self.f1.len()
    }

    /// Number of distinct values taken by `f1`.
    pub fn f1_range(&self) -> usize {
        self.n1
    }

    pub fn f2_range(&self) -> usize {
        self.n2
    }

    /// Dense `f1` label of each input symbol.
    pub fn f1_labels(&self) -> &[usize] {
        &self.f1
    }

    pub fn f2_labels(&self) -> &[usize] {
        &self.f2
    }

    /// Entropy report of `(f1(X), f2(X))` for raw input weights.
    pub fn report<T: Real>(&self, px: &[T]) -> EntropyReport<T> {
        debug_assert_eq!(px.len(), self.f1.len());
        let mut m1: Buf<T> = SmallVec::from_elem(T::zero(), self.n1);
        let mut m2: Buf<T> = SmallVec::from_elem(T::zero(), self.n2);
        let mut mj: Buf<T> = SmallVec::from_elem(T::zero(), self.n_pairs);
        for (x, &p) in px.iter().enumerate() {
            m1[self.f1[x]] = m1[self.f1[x]] + p;
            m2[self.f2[x]] = m2[self.f2[x]] + p;
            mj[self.pair[x]] = mj[self.pair[x]] + p;
        }
        EntropyReport::from_entropies(entropy_of(&m1), entropy_of(&m2), entropy_of(&mj))
    }

    /// Entropies for a row-major joint `p(u, x)` with `u_size` rows.
    pub fn aux_report<T: Real>(&self, joint: &[T], u_size: usize) -> AuxEntropies<T> {
        let nx = self.f1.len();
        debug_assert_eq!(joint.len(), u_size * nx);
        let mut m1: Buf<T> = SmallVec::from_elem(T::zero(), self.n1);
        let mut m2: Buf<T> = SmallVec::from_elem(T::zero(), self.n2);
        let mut r1: Buf<T> = SmallVec::from_elem(T::zero(), self.n1);
        let mut r2: Buf<T> = SmallVec::from_elem(T::zero(), self.n2);
        let mut h1u = T::zero();
        let mut h2u = T::zero();
        for row in joint.chunks(nx) {
            r1.iter_mut().for_each(|v| *v = T::zero());
            r2.iter_mut().for_each(|v| *v = T::zero());
            let mut w = T::zero();
            for (x, &p) in row.iter().enumerate() {
                r1[self.f1[x]] = r1[self.f1[x]] + p;
                r2[self.f2[x]] = r2[self.f2[x]] + p;
                w = w + p;
            }
            if w <= T::lit(crate::infotheory::ZERO_MASS) {
                continue;
            }
            let hw = plogp(w);
            h1u = h1u + entropy_of(&r1) - hw;
            h2u = h2u + entropy_of(&r2) - hw;
            for (a, &v) in m1.iter_mut().zip(&r1) {
                *a = *a + v;
            }
            for (a, &v) in m2.iter_mut().zip(&r2) {
                *a = *a + v;
            }
        }
        AuxEntropies {
            h_f1: entropy_of(&m1),
            h_f2: entropy_of(&m2),
            h_f1_given_u: h1u.max(T::zero()),
            h_f2_given_u: h2u.max(T::zero()),
        }
    }
}

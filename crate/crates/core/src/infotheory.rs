//! Shannon entropy and mutual information on finite alphabets, in bits.

use crate::error::{Error, Result};
use crate::pmf::{JointPmf, Pmf};
use crate::scalar::Real;

/// Masses below this are treated as exact zeros.
pub const ZERO_MASS: f64 = 1e-15;

#[inline]
pub(crate) fn plogp<T: Real>(p: T) -> T {
    if p > T::lit(ZERO_MASS) {
        -p * p.log2()
    } else {
        T::zero()
    }
}

/// Entropy of an unnormalized-safe weight slice: `-sum p log2 p`.
#[inline]
pub fn entropy_of<T: Real>(weights: &[T]) -> T {
    weights.iter().fold(T::zero(), |acc, &p| acc + plogp(p))
}

pub fn entropy<T: Real>(p: &Pmf<T>) -> T {
    entropy_of(p.weights())
}

#[inline]
pub(crate) fn binary_entropy_unchecked<T: Real>(q: T) -> T {
    plogp(q) + plogp(T::one() - q)
}

pub fn binary_entropy<T: Real>(q: T) -> Result<T> {
    if !(q >= T::zero() && q <= T::one()) {
        return Err(Error::Probability {
            name: "q",
            value: q.as_f64(),
        });
    }
    Ok(binary_entropy_unchecked(q))
}

/// Entropy summary of the pair `(f1(X), f2(X))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport<T> {
    pub h_f1: T,
    pub h_f2: T,
    pub h_f1_given_f2: T,
    pub h_f2_given_f1: T,
    pub mi_f1_f2: T,
}

impl<T: Real> EntropyReport<T> {
    /// Builds the report from the two marginal entropies and the joint entropy.
    pub fn from_entropies(h_f1: T, h_f2: T, h_joint: T) -> Self {
        Self {
            h_f1,
            h_f2,
            h_f1_given_f2: h_joint - h_f2,
            h_f2_given_f1: h_joint - h_f1,
            mi_f1_f2: h_f1 + h_f2 - h_joint,
        }
    }

    pub fn h_joint(&self) -> T {
        self.h_f1 + self.h_f2_given_f1
    }
}

/// Entropies of a joint law whose rows index `f1` and columns index `f2`.
pub fn report<T: Real>(joint: &JointPmf<T>) -> EntropyReport<T> {
    EntropyReport::from_entropies(
        entropy(&joint.row_marginal()),
        entropy(&joint.col_marginal()),
        entropy_of(joint.weights()),
    )
}

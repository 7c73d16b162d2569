//! Probability mass functions over finite alphabets.

use crate::error::{Error, Result};
use crate::scalar::Real;

fn validate<T: Real>(weights: &[T]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    for (index, &w) in weights.iter().enumerate() {
        if !w.is_finite() || w < T::zero() {
            return Err(Error::NegativeMass {
                index,
                value: w.as_f64(),
            });
        }
    }
    let total: T = weights.iter().copied().sum();
    if (total - T::one()).abs() > T::mass_tolerance(weights.len()) {
        return Err(Error::Mass {
            total: total.as_f64(),
        });
    }
    Ok(())
}

/// A probability mass function on `[0, len)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf<T> {
    weights: Vec<T>,
}

impl<T: Real> Pmf<T> {
    pub fn new(weights: Vec<T>) -> Result<Self> {
        validate(&weights)?;
        Ok(Self { weights })
    }

    /// Builds a pmf from `f64` weights, converting to the scalar type.
    pub fn from_f64(weights: &[f64]) -> Result<Self> {
        Self::new(weights.iter().map(|&w| T::lit(w)).collect())
    }

    pub fn uniform(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Self {
            weights: vec![T::one() / T::of_usize(len); len],
        })
    }

    pub fn point_mass(len: usize, at: usize) -> Result<Self> {
        if at >= len {
            return Err(Error::Dimension {
                expected: len,
                got: at,
            });
        }
        let mut weights = vec![T::zero(); len];
        weights[at] = T::one();
        Ok(Self { weights })
    }

    /// Wraps weights produced by simplex-preserving code without re-validating.
    pub(crate) fn from_simplex_point(weights: Vec<T>) -> Self {
        debug_assert!(validate(&weights).is_ok(), "{weights:?}");
        Self { weights }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn into_weights(self) -> Vec<T> {
        self.weights
    }

    /// Law of `map(X)` for `X` with this pmf, on an alphabet of `size` symbols.
    pub fn pushforward(&self, map: &[usize], size: usize) -> Result<Pmf<T>> {
        if map.len() != self.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                got: map.len(),
            });
        }
        let mut out = vec![T::zero(); size];
        for (&w, &y) in self.weights.iter().zip(map) {
            if y >= size {
                return Err(Error::Dimension {
                    expected: size,
                    got: y + 1,
                });
            }
            out[y] = out[y] + w;
        }
        Ok(Pmf { weights: out })
    }
}

/// A joint pmf on `[0, rows) x [0, cols)`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf<T> {
    rows: usize,
    cols: usize,
    weights: Vec<T>,
}

impl<T: Real> JointPmf<T> {
    pub fn new(rows: usize, cols: usize, weights: Vec<T>) -> Result<Self> {
        if rows * cols != weights.len() {
            return Err(Error::Dimension {
                expected: rows * cols,
                got: weights.len(),
            });
        }
        validate(&weights)?;
        Ok(Self {
            rows,
            cols,
            weights,
        })
    }

    pub(crate) fn from_simplex_point(rows: usize, cols: usize, weights: Vec<T>) -> Self {
        debug_assert_eq!(rows * cols, weights.len());
        Self {
            rows,
            cols,
            weights,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.weights[row * self.cols + col]
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn row_marginal(&self) -> Pmf<T> {
        let w = self
            .weights
            .chunks(self.cols)
            .map(|row| row.iter().copied().sum())
            .collect();
        Pmf { weights: w }
    }

    pub fn col_marginal(&self) -> Pmf<T> {
        let mut w = vec![T::zero(); self.cols];
        for row in self.weights.chunks(self.cols) {
            for (acc, &v) in w.iter_mut().zip(row) {
                *acc = *acc + v;
            }
        }
        Pmf { weights: w }
    }
}

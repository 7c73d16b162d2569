//! The two worked channels: the Blackwell channel with state and the
//! linear finite-field channel.

use crate::channel::ChannelSpec;
use crate::error::{Error, Result};
use crate::infotheory::binary_entropy_unchecked;
use crate::regions::{RatePair, RegionPolygon};
use crate::scalar::Real;

/// Blackwell components on inputs `{0, 1, 2}`: `f1 = [0, 1, 1]`, `f2 = [0, 0, 1]`.
///
/// With `alpha0 = P(X = 0)` and `alpha1 = P(X = 2)`, `H(f1) = H(alpha0)` and
/// `H(f2) = H(alpha1)`.
pub const BLACKWELL_F1: [usize; 3] = [0, 1, 1];
pub const BLACKWELL_F2: [usize; 3] = [0, 0, 1];

pub fn blackwell_channel<T: Real>(p1: T, p2: T) -> Result<ChannelSpec<T>> {
    ChannelSpec::new(BLACKWELL_F1.to_vec(), BLACKWELL_F2.to_vec(), p1, p2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlackwellParams<T> {
    alpha0: T,
    alpha1: T,
}

impl<T: Real> BlackwellParams<T> {
    pub fn new(alpha0: T, alpha1: T) -> Result<Self> {
        let slack = T::lit(1e-12);
        if !(alpha0 >= T::zero() && alpha1 >= T::zero() && alpha0 + alpha1 <= T::one() + slack) {
            return Err(Error::BlackwellParams {
                alpha0: alpha0.as_f64(),
                alpha1: alpha1.as_f64(),
            });
        }
        Ok(Self { alpha0, alpha1 })
    }

    pub fn alpha0(&self) -> T {
        self.alpha0
    }

    pub fn alpha1(&self) -> T {
        self.alpha1
    }

    /// Input law `(P(X=0), P(X=1), P(X=2))`.
    pub fn input_weights(&self) -> [T; 3] {
        let mid = (T::one() - self.alpha0 - self.alpha1).max(T::zero());
        [self.alpha0, mid, self.alpha1]
    }
}

/// `num / den` with `0 / 0 = 0`, clamped into `[0, 1]`.
fn ratio<T: Real>(num: T, den: T) -> T {
    if den <= T::zero() {
        T::zero()
    } else {
        (num / den).max(T::zero()).min(T::one())
    }
}

/// Rectangle corner of the closed-form Blackwell regions.
///
/// Branch 3 is the corner with `(U1, U2) = (f1, f2)` decoded for slopes at
/// most 1, branch 4 the one for slopes above 1.
pub fn blackwell_closed_form<T: Real>(params: BlackwellParams<T>, p1: T, p2: T, branch: u8) -> Result<RatePair<T>> {
    for (name, p) in [("p1", p1), ("p2", p2)] {
        if !(p >= T::zero() && p <= T::one()) {
            return Err(Error::Probability { name, value: p.as_f64() });
        }
    }
    let (a0, a1) = (params.alpha0, params.alpha1);
    let (a0b, a1b) = (T::one() - a0, T::one() - a1);
    let h = binary_entropy_unchecked::<T>;
    // H(f1 | f2) and H(f2 | f1)
    let h12 = a1b * h(ratio(a0, a1b));
    let h21 = a0b * h(ratio(a1, a0b));
    match branch {
        3 => Ok(RatePair::new(h(a0) - (T::one() - p1) * h12, (T::one() - p2) * h21)),
        4 => Ok(RatePair::new(p1 * h12, h(a1) - p2 * h21)),
        b => Err(Error::Branch(b)),
    }
}

/// Hull of the closed-form Blackwell regions over an `n x n` grid of
/// `(alpha0, alpha1)` with step `1 / (n - 1)`.
pub fn blackwell_sweep_hull<T: Real>(p1: T, p2: T, n: usize) -> Result<RegionPolygon<T>> {
    if n < 2 {
        return Err(Error::Config("sweep grid needs at least 2 points per axis".into()));
    }
    let step = T::one() / T::of_usize(n - 1);
    let mut pts = Vec::new();
    for i in 0..n {
        for j in 0..n - i {
            let params = BlackwellParams::new(T::of_usize(i) * step, T::of_usize(j) * step)?;
            for branch in [3, 4] {
                let c = blackwell_closed_form(params, p1, p2, branch)?;
                let c = RatePair::new(c.r1.max(T::zero()), c.r2.max(T::zero()));
                pts.extend([c, RatePair::new(c.r1, T::zero()), RatePair::new(T::zero(), c.r2)]);
            }
        }
    }
    Ok(RegionPolygon::from_points("blackwell-closed-form", &pts))
}

/// `Y1 = h11 X1 + h12 X2`, `Y2 = h21 X1 + h22 X2` over GF(K).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteFieldSpec {
    k: u64,
    h: [[u64; 2]; 2],
}

fn is_prime(k: u64) -> bool {
    k >= 2 && (2..).take_while(|d| d * d <= k).all(|d| k % d != 0)
}

impl FiniteFieldSpec {
    pub fn new(k: u64, h: [[u64; 2]; 2]) -> Result<Self> {
        if !is_prime(k) {
            return Err(Error::NotPrime(k));
        }
        let h = h.map(|row| row.map(|v| v % k));
        let det = (h[0][0] * h[1][1] + k * k - h[0][1] * h[1][0] % k) % k;
        if det == 0 {
            return Err(Error::Singular(k));
        }
        Ok(Self { k, h })
    }

    pub fn field_size(&self) -> u64 {
        self.k
    }

    pub fn matrix(&self) -> [[u64; 2]; 2] {
        self.h
    }

    /// `log2 K`, the rate of one field symbol.
    pub fn symbol_bits<T: Real>(&self) -> T {
        T::lit((self.k as f64).log2())
    }

    /// Component maps over inputs `x = x1 K + x2`.
    pub fn maps(&self) -> (Vec<usize>, Vec<usize>) {
        let k = self.k;
        let row = |r: [u64; 2]| -> Vec<usize> {
            (0..k * k)
                .map(|x| ((r[0] * (x / k) + r[1] * (x % k)) % k) as usize)
                .collect()
        };
        (row(self.h[0]), row(self.h[1]))
    }
}

pub fn finite_field_channel<T: Real>(ff: &FiniteFieldSpec, p1: T, p2: T) -> Result<ChannelSpec<T>> {
    let (f1, f2) = ff.maps();
    ChannelSpec::new(f1, f2, p1, p2)
}

/// Closed-form capacity region of the finite-field channel, in bits:
/// the hull of `(log K, 0)`, `(0, log K)` and `(p1 log K, p̄2 log K)`.
pub fn finite_field_region<T: Real>(ff: &FiniteFieldSpec, p1: T, p2: T) -> Result<RegionPolygon<T>> {
    let spec = ChannelSpec::new(vec![0], vec![0], p1, p2)?;
    spec.require_canonical()?;
    let l = ff.symbol_bits::<T>();
    Ok(RegionPolygon::from_points(
        "finite-field",
        &[
            RatePair::new(l, T::zero()),
            RatePair::new(T::zero(), l),
            RatePair::new(p1 * l, (T::one() - p2) * l),
        ],
    ))
}

/// Degrees of freedom `p1 + p̄2` of the fading channel with `p1 >= p2`.
pub fn dof<T: Real>(p1: T, p2: T) -> Result<T> {
    let spec = ChannelSpec::new(vec![0], vec![0], p1, p2)?;
    spec.require_canonical()?;
    Ok(p1 + (T::one() - p2))
}

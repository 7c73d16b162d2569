use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar the numerics are written against (`f32` or `f64`).
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Allowed deviation of total mass from one for a pmf over `atoms` entries.
    fn mass_tolerance(atoms: usize) -> Self {
        let rounding = Self::epsilon() * Self::of_usize(8 * atoms.max(1));
        Self::lit(1e-12).max(rounding)
    }
}

impl Real for f32 {}
impl Real for f64 {}

use std::fmt::{Debug, Display};
use std::iter::Sum;

use ndarray::LinalgScalar;
use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating point scalar used by the numeric kernels: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + NumAssign + LinalgScalar + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from `f64`.
    fn of(value: f64) -> Self {
        <Self as FromPrimitive>::from_f64(value).expect("representable")
    }

    /// Lossy conversion from a count.
    fn of_usize(value: usize) -> Self {
        <Self as FromPrimitive>::from_usize(value).expect("representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

//! Scalar abstractions for the dynamics code.
//!
//! Field evaluations only need ring arithmetic and an order, so they run on
//! any [`Scalar`], including exact rationals. Integration and tolerance
//! checks need floating point and use [`Real`].

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, Num};

pub trait Scalar: Num + Clone + PartialOrd + FromPrimitive + Debug + Send + Sync + 'static {
    /// Converts an `f64` literal, panicking if the type cannot represent it.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).unwrap_or_else(|| panic!("{x} is not representable"))
    }

    fn count(n: usize) -> Self {
        Self::from_usize(n).unwrap_or_else(|| panic!("{n} is not representable"))
    }

    fn abs_diff(&self, other: &Self) -> Self {
        if self > other {
            self.clone() - other.clone()
        } else {
            other.clone() - self.clone()
        }
    }
}

impl<T> Scalar for T where
    T: Num + Clone + PartialOrd + FromPrimitive + Debug + Send + Sync + 'static
{
}

pub trait Real: Scalar + Float + Display {}

impl<T> Real for T where T: Scalar + Float + Display {}

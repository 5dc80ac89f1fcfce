//! The floating-point scalar abstraction the crate is generic over.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, NumCast};

/// Real scalar type for all numerics in this crate.
///
/// The associated constants are the tolerances the algorithms are specified
/// against. The `f64` values are the reference ones; the `f32` values widen
/// them in proportion to the coarser machine epsilon so that the same code
/// remains usable (at reduced accuracy) in single precision.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Largest Hermiticity / unit-trace deviation accepted when validating
    /// a density matrix.
    const VALIDATION_TOL: Self;

    /// Eigenvalues in `[-PSD_FLOOR, 0)` are treated as rounding noise and
    /// clamped to zero; anything below `-PSD_FLOOR` fails PSD checks.
    const PSD_FLOOR: Self;

    /// Off-diagonal Frobenius norm at which the Jacobi iteration stops.
    const JACOBI_TOL: Self;

    /// Eigenvalues of matrix products below this are rank-deficiency noise.
    /// Square roots amplify such noise (`sqrt(1e-16) = 1e-8`), so spectral
    /// functions floor them to zero before taking roots.
    const SPECTRUM_FLOOR: Self;

    /// Snap window for region-boundary comparisons and for clamping arcsine
    /// arguments that rounding pushed just past `[-1, 1]`.
    const BOUNDARY_SNAP: Self;

    /// Shorthand for converting an `f64` constant into this scalar type.
    fn of(v: f64) -> Self {
        <Self as NumCast>::from(v).expect("f64 constant representable in scalar type")
    }

    /// Lossy view of this scalar as `f64`, for diagnostics and errors.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const VALIDATION_TOL: Self = 1e-12;
    const PSD_FLOOR: Self = 1e-10;
    const JACOBI_TOL: Self = 1e-14;
    const SPECTRUM_FLOOR: Self = 1e-14;
    const BOUNDARY_SNAP: Self = 1e-12;
}

impl Scalar for f32 {
    const VALIDATION_TOL: Self = 1e-5;
    const PSD_FLOOR: Self = 1e-4;
    const JACOBI_TOL: Self = 1e-6;
    const SPECTRUM_FLOOR: Self = 1e-6;
    const BOUNDARY_SNAP: Self = 1e-5;
}

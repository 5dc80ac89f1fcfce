//! Two-qubit density matrices and the restricted family used by the
//! phase-diagram analysis.
//!
//! The computational basis is ordered `|00>, |01>, |10>, |11>`, with the
//! first label belonging to qubit A. The restricted family, called `E0`
//! here, consists of states with no population in and no coherence to
//! `|00>`; it is parameterized by the two middle populations `a`, `b`,
//! the coherence magnitude `c = 2 |rho_23|` and its phase `theta`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result, StateViolation};
use crate::matrix::{hermitian_eigensystem, paulis, CMat2, CMat4, RealMat3};
use crate::scalar::Scalar;

/// A validated 4x4 density matrix: Hermitian, unit trace, positive
/// semidefinite (all within [`Scalar::VALIDATION_TOL`] and
/// [`Scalar::PSD_FLOOR`]).
#[derive(Clone, Copy, PartialEq)]
pub struct DensityMatrix<T>(CMat4<T>);

impl<T: Scalar> std::fmt::Debug for DensityMatrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DensityMatrix({:?})", self.0)
    }
}

impl<T: Scalar> DensityMatrix<T> {
    /// Validate and wrap a matrix. All failed checks are reported together.
    pub fn new(m: CMat4<T>) -> Result<Self> {
        let violations = validate_density(&m);
        if violations.is_empty() {
            Ok(Self(m))
        } else {
            Err(Error::InvalidState(violations))
        }
    }

    /// Wrap without validating. For matrices that are valid by
    /// construction (parameterized families, convex mixtures of validated
    /// states) where re-running the eigensolver would be wasted work.
    pub fn from_matrix_unchecked(m: CMat4<T>) -> Self {
        Self(m)
    }

    /// Density matrix `|psi><psi|` of a pure state. The amplitudes are
    /// normalized first; a near-zero vector is rejected.
    pub fn from_pure(amplitudes: [Complex<T>; 4]) -> Result<Self> {
        let norm_sq = amplitudes.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
        let norm = norm_sq.sqrt();
        if norm < T::of(1e-6) {
            return Err(Error::NotUnit { norm: norm.as_f64() });
        }
        let inv = T::one() / norm;
        let psi = amplitudes.map(|z| z * inv);
        Ok(Self(CMat4::from_fn(|i, j| psi[i] * psi[j].conj())))
    }

    pub fn matrix(&self) -> &CMat4<T> {
        &self.0
    }

    pub fn into_matrix(self) -> CMat4<T> {
        self.0
    }

    /// `tr(rho^2)`, between 1/4 and 1 for a valid state.
    pub fn purity(&self) -> T {
        (self.0 * self.0).trace().re
    }

    /// Convex mixture `p * self + (1 - p) * other`.
    pub fn mix(&self, other: &Self, p: T) -> Result<Self> {
        if !(T::zero()..=T::one()).contains(&p) || !p.is_finite() {
            return Err(Error::OutOfRange { name: "p", value: p.as_f64(), domain: "[0, 1]" });
        }
        Ok(Self(self.0.scale(p) + other.0.scale(T::one() - p)))
    }
}

impl<T: Scalar> AsRef<CMat4<T>> for DensityMatrix<T> {
    fn as_ref(&self) -> &CMat4<T> {
        &self.0
    }
}

/// Check the three density-matrix properties and return every failure.
pub fn validate_density<T: Scalar>(m: &CMat4<T>) -> Vec<StateViolation> {
    let mut violations = Vec::new();

    let herm_dev = m.hermiticity_deviation();
    if herm_dev > T::VALIDATION_TOL {
        violations.push(StateViolation::NotHermitian { deviation: herm_dev.as_f64() });
    }

    let trace = m.trace();
    let trace_dev = (trace - Complex::new(T::one(), T::zero())).norm();
    if trace_dev > T::VALIDATION_TOL {
        violations.push(StateViolation::TraceNotOne { deviation: trace_dev.as_f64() });
    }

    // Positivity is only meaningful for the Hermitian part; when the matrix
    // is badly non-Hermitian the first violation already explains the state.
    if herm_dev <= T::of(0.1) {
        match hermitian_eigensystem(&m.hermitian_part()) {
            Ok(es) => {
                let min = es.values[0];
                if min < -T::PSD_FLOOR {
                    violations.push(StateViolation::NotPsd { min_eigenvalue: min.as_f64() });
                }
            }
            Err(_) => violations.push(StateViolation::NotPsd { min_eigenvalue: f64::NAN }),
        }
    }

    violations
}

/// The maximally mixed state `I / 4`.
pub fn maximally_mixed<T: Scalar>() -> DensityMatrix<T> {
    DensityMatrix(CMat4::identity().scale(T::of(0.25)))
}

/// The Bell state `(|00> + |11>) / sqrt(2)` as a density matrix.
pub fn bell_phi_plus<T: Scalar>() -> DensityMatrix<T> {
    let h = T::FRAC_1_SQRT_2();
    DensityMatrix::from_pure([
        Complex::new(h, T::zero()),
        Complex::zero(),
        Complex::zero(),
        Complex::new(h, T::zero()),
    ])
    .expect("unit amplitudes")
}

/// Parameters of the restricted family: populations `a = rho_22`,
/// `b = rho_33`, coherence magnitude `c = 2 |rho_23|` and phase `theta`,
/// with `rho_44 = 1 - a - b` and an empty first row and column.
///
/// Positivity of the corresponding matrix is exactly `a, b >= 0`,
/// `a + b <= 1` and `a b >= c^2 / 4`, which [`E0Params::new`] enforces.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct E0Params<T> {
    a: T,
    b: T,
    c: T,
    theta: T,
}

impl<T: Scalar> E0Params<T> {
    pub fn new(a: T, b: T, c: T, theta: T) -> Result<Self> {
        let tol = T::VALIDATION_TOL;
        check_range(a, "a", tol)?;
        check_range(b, "b", tol)?;
        check_range(c, "c", tol)?;
        if !theta.is_finite() {
            return Err(Error::OutOfRange {
                name: "theta",
                value: theta.as_f64(),
                domain: "finite",
            });
        }
        let ab = a * b;
        let c_sq_over_4 = c * c * T::of(0.25);
        if a + b > T::one() + tol || ab + tol < c_sq_over_4 {
            return Err(Error::PositivityViolation {
                ab: ab.as_f64(),
                c_sq_over_4: c_sq_over_4.as_f64(),
                a_plus_b: (a + b).as_f64(),
            });
        }
        let clamp01 = |v: T| v.max(T::zero()).min(T::one());
        let two_pi = T::PI() + T::PI();
        let mut theta = theta % two_pi;
        if theta < T::zero() {
            theta += two_pi;
        }
        Ok(Self { a: clamp01(a), b: clamp01(b), c: clamp01(c), theta })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn c(&self) -> T {
        self.c
    }

    /// Coherence phase, normalized into `[0, 2 pi)`.
    pub fn theta(&self) -> T {
        self.theta
    }

    /// The remaining population `rho_44 = 1 - a - b`.
    pub fn rho44(&self) -> T {
        (T::one() - self.a - self.b).max(T::zero())
    }

    /// Build the density matrix. Valid parameters always produce a valid
    /// state, so this cannot fail.
    pub fn density(&self) -> DensityMatrix<T> {
        let mut m = CMat4::<T>::zeros();
        m[(1, 1)] = Complex::new(self.a, T::zero());
        m[(2, 2)] = Complex::new(self.b, T::zero());
        m[(3, 3)] = Complex::new(self.rho44(), T::zero());
        let half_c = self.c * T::of(0.5);
        let off = Complex::new(half_c * self.theta.cos(), half_c * self.theta.sin());
        m[(1, 2)] = off;
        m[(2, 1)] = off.conj();
        DensityMatrix(m)
    }
}

fn check_range<T: Scalar>(v: T, name: &'static str, tol: T) -> Result<()> {
    if !v.is_finite() || v < -tol || v > T::one() + tol {
        return Err(Error::OutOfRange { name, value: v.as_f64(), domain: "[0, 1]" });
    }
    Ok(())
}

/// The maximally entangled mixed state of the family at concurrence `c`:
/// the parameter choice maximizing linear entropy at fixed `c`. Below
/// `c = 2/3` both middle populations sit at `1/3`; above, they equal
/// `c / 2` and the remaining population shrinks to `1 - c`.
pub fn mems_state<T: Scalar>(c: T) -> Result<E0Params<T>> {
    check_range(c, "c", T::VALIDATION_TOL)?;
    let third = T::of(1.0 / 3.0);
    let half = T::of(0.5);
    let pop = if c < T::of(2.0 / 3.0) { third } else { c * half };
    E0Params::new(pop, pop, c, T::zero())
}

/// Bloch-Fano decomposition of a two-qubit state: local vectors `r`
/// (qubit A) and `s` (qubit B) and the 3x3 correlation matrix `t` with
/// `t[n][m] = tr(rho sigma_n (x) sigma_m)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochDecomposition<T> {
    pub r: [T; 3],
    pub s: [T; 3],
    pub t: RealMat3<T>,
}

impl<T: Scalar> BlochDecomposition<T> {
    /// Rebuild the matrix
    /// `(I (x) I + r.sigma (x) I + I (x) s.sigma + sum t_nm sigma_n (x) sigma_m) / 4`.
    pub fn reconstruct(&self) -> CMat4<T> {
        let id2 = CMat2::<T>::identity();
        let sig = paulis::<T>();
        let mut m = CMat4::<T>::identity();
        for n in 0..3 {
            m = m + crate::matrix::kron(&sig[n], &id2).scale(self.r[n]);
            m = m + crate::matrix::kron(&id2, &sig[n]).scale(self.s[n]);
            for mm in 0..3 {
                m = m + crate::matrix::kron(&sig[n], &sig[mm]).scale(self.t[(n, mm)]);
            }
        }
        m.scale(T::of(0.25))
    }
}

/// Expectation values of all Pauli words on `rho`.
pub fn bloch_decompose<T: Scalar>(rho: &DensityMatrix<T>) -> BlochDecomposition<T> {
    let m = rho.matrix();
    let id2 = CMat2::<T>::identity();
    let sig = paulis::<T>();
    let expect = |op: &CMat4<T>| (*m * *op).trace().re;

    let mut r = [T::zero(); 3];
    let mut s = [T::zero(); 3];
    let mut t = RealMat3::zeros();
    for n in 0..3 {
        r[n] = expect(&crate::matrix::kron(&sig[n], &id2));
        s[n] = expect(&crate::matrix::kron(&id2, &sig[n]));
        for mm in 0..3 {
            t[(n, mm)] = expect(&crate::matrix::kron(&sig[n], &sig[mm]));
        }
    }
    BlochDecomposition { r, s, t }
}

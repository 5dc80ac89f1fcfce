//! Small dense complex matrices and the spectral operations built on them.
//!
//! Everything the crate needs from linear algebra lives here: stack-allocated
//! complex matrices of dimension 2..4, Kronecker products, partial traces,
//! a cyclic Jacobi eigensolver for Hermitian matrices and the principal
//! square root of a positive-semidefinite matrix. The sizes are tiny and
//! fixed, so a self-contained textbook Jacobi iteration is both simpler and
//! more predictable than pulling in a general linear-algebra dependency.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Maximum number of Jacobi sweeps before giving up. For 4x4 Hermitian
/// input the iteration converges quadratically and needs about six.
const MAX_JACOBI_SWEEPS: usize = 100;

/// Dense `N x N` complex matrix in row-major order.
#[derive(Clone, Copy, PartialEq)]
pub struct CMatrix<T, const N: usize> {
    rows: [[Complex<T>; N]; N],
}

pub type CMat2<T> = CMatrix<T, 2>;
pub type CMat3<T> = CMatrix<T, 3>;
pub type CMat4<T> = CMatrix<T, 4>;

impl<T: Scalar, const N: usize> CMatrix<T, N> {
    pub fn zeros() -> Self {
        Self { rows: [[Complex::zero(); N]; N] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.rows[i][i] = Complex::one();
        }
        m
    }

    pub fn from_rows(rows: [[Complex<T>; N]; N]) -> Self {
        Self { rows }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.rows[i][j] = f(i, j);
            }
        }
        m
    }

    /// Diagonal matrix with real entries.
    pub fn diag(d: [T; N]) -> Self {
        Self::from_fn(|i, j| if i == j { Complex::new(d[i], T::zero()) } else { Complex::zero() })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j].conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i].conj())
    }

    pub fn scale(&self, k: T) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] * k)
    }

    pub fn scale_complex(&self, k: Complex<T>) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] * k)
    }

    pub fn trace(&self) -> Complex<T> {
        (0..N).fold(Complex::zero(), |acc, i| acc + self.rows[i][i])
    }

    /// Largest entry magnitude.
    pub fn max_norm(&self) -> T {
        let mut m = T::zero();
        for row in &self.rows {
            for e in row {
                m = m.max(e.norm());
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> T {
        let mut s = T::zero();
        for row in &self.rows {
            for e in row {
                s += e.norm_sqr();
            }
        }
        s.sqrt()
    }

    /// Maximum of `|m[i][j] - conj(m[j][i])|` over all entries.
    pub fn hermiticity_deviation(&self) -> T {
        let mut dev = T::zero();
        for i in 0..N {
            for j in 0..N {
                dev = dev.max((self.rows[i][j] - self.rows[j][i].conj()).norm());
            }
        }
        dev
    }

    /// `(M + M^dagger) / 2`, the Hermitian part.
    pub fn hermitian_part(&self) -> Self {
        let half = T::of(0.5);
        Self::from_fn(|i, j| (self.rows[i][j] + self.rows[j][i].conj()) * half)
    }

    /// True when every entry of `self - other` has magnitude at most `tol`.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        (*self - *other).max_norm() <= tol
    }

    fn off_diagonal_norm(&self) -> T {
        let mut s = T::zero();
        for i in 0..N {
            for j in 0..N {
                if i != j {
                    s += self.rows[i][j].norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    fn column(&self, j: usize) -> [Complex<T>; N] {
        std::array::from_fn(|i| self.rows[i][j])
    }
}

impl<T: Scalar, const N: usize> std::ops::Index<(usize, usize)> for CMatrix<T, N> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.rows[i][j]
    }
}

impl<T: Scalar, const N: usize> std::ops::IndexMut<(usize, usize)> for CMatrix<T, N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.rows[i][j]
    }
}

impl<T: Scalar, const N: usize> std::ops::Add for CMatrix<T, N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] + rhs.rows[i][j])
    }
}

impl<T: Scalar, const N: usize> std::ops::Sub for CMatrix<T, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j] - rhs.rows[i][j])
    }
}

impl<T: Scalar, const N: usize> std::ops::Mul for CMatrix<T, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| {
            (0..N).fold(Complex::zero(), |acc, k| acc + self.rows[i][k] * rhs.rows[k][j])
        })
    }
}

impl<T: Scalar, const N: usize> std::fmt::Debug for CMatrix<T, N> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CMatrix{N}x{N} [")?;
        for row in &self.rows {
            write!(f, "  ")?;
            for e in row {
                write!(f, "{:+.6}{:+.6}i  ", e.re.as_f64(), e.im.as_f64())?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product of two 2x2 matrices in the `|qubit A, qubit B>` basis
/// ordering `|00>, |01>, |10>, |11>`: `out[2i+k][2j+l] = a[i][j] * b[k][l]`.
pub fn kron<T: Scalar>(a: &CMat2<T>, b: &CMat2<T>) -> CMat4<T> {
    CMat4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// Trace over the first qubit: `out[k][l] = sum_i m[2i+k][2i+l]`.
pub fn partial_trace_a<T: Scalar>(m: &CMat4<T>) -> CMat2<T> {
    CMat2::from_fn(|k, l| m[(k, l)] + m[(2 + k, 2 + l)])
}

/// Pauli matrix `sigma_1 = [[0, 1], [1, 0]]`.
pub fn sigma1<T: Scalar>() -> CMat2<T> {
    let o = Complex::one();
    CMat2::from_rows([[Complex::zero(), o], [o, Complex::zero()]])
}

/// Pauli matrix `sigma_2 = [[0, -i], [i, 0]]`.
pub fn sigma2<T: Scalar>() -> CMat2<T> {
    let i = Complex::new(T::zero(), T::one());
    CMat2::from_rows([[Complex::zero(), -i], [i, Complex::zero()]])
}

/// Pauli matrix `sigma_3 = [[1, 0], [0, -1]]`.
pub fn sigma3<T: Scalar>() -> CMat2<T> {
    let o = Complex::one();
    CMat2::from_rows([[o, Complex::zero()], [Complex::zero(), -o]])
}

/// The three Pauli matrices, indexed 0..2 for sigma_1..sigma_3.
pub fn paulis<T: Scalar>() -> [CMat2<T>; 3] {
    [sigma1(), sigma2(), sigma3()]
}

/// Eigenvalues in ascending order with orthonormal eigenvectors as the
/// columns of `vectors` (`vectors[(i, k)]` is component `i` of eigenvector
/// `k`). Each eigenvector's first significant component is made real
/// positive so the output is deterministic.
#[derive(Clone)]
pub struct EigenSystem<T, const N: usize> {
    pub values: [T; N],
    pub vectors: CMatrix<T, N>,
}

impl<T: Scalar, const N: usize> std::fmt::Debug for EigenSystem<T, N> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EigenSystem")
            .field("values", &self.values)
            .field("vectors", &self.vectors)
            .finish()
    }
}

/// Full eigensystem of a Hermitian matrix by cyclic-by-row complex Jacobi
/// rotations.
///
/// The input must be Hermitian within the validation tolerance; the
/// iteration then runs on its exactly Hermitian part. Sweeps stop once the
/// off-diagonal Frobenius norm falls below [`Scalar::JACOBI_TOL`].
pub fn hermitian_eigensystem<T: Scalar, const N: usize>(
    h: &CMatrix<T, N>,
) -> Result<EigenSystem<T, N>> {
    let dev = h.hermiticity_deviation();
    if dev > T::VALIDATION_TOL {
        return Err(Error::NotHermitian { deviation: dev.as_f64() });
    }

    let mut a = h.hermitian_part();
    let mut v = CMatrix::<T, N>::identity();

    let mut converged = false;
    for _ in 0..MAX_JACOBI_SWEEPS {
        if a.off_diagonal_norm() <= T::JACOBI_TOL {
            converged = true;
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && a.off_diagonal_norm() > T::JACOBI_TOL {
        return Err(Error::NoConvergence { sweeps: MAX_JACOBI_SWEEPS });
    }

    let mut values = [T::zero(); N];
    for i in 0..N {
        values[i] = a[(i, i)].re;
    }
    for k in 0..N {
        canonicalize_column_phase(&mut v, k);
    }

    // Ascending eigenvalue order; exact ties fall back to lexicographic
    // comparison of the eigenvector columns so the output stays stable.
    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&i, &j| {
        values[i]
            .partial_cmp(&values[j])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| compare_columns(&v, i, j))
    });

    let mut sorted_values = [T::zero(); N];
    let mut sorted_vectors = CMatrix::<T, N>::zeros();
    for (dst, &src) in order.iter().enumerate() {
        sorted_values[dst] = values[src];
        for i in 0..N {
            sorted_vectors[(i, dst)] = v[(i, src)];
        }
    }
    Ok(EigenSystem { values: sorted_values, vectors: sorted_vectors })
}

/// One complex Jacobi rotation zeroing `a[p][q]` (and `a[q][p]`), applied
/// as `a <- U* a U`, `v <- v U`, where `U` mixes only columns `p` and `q`.
fn jacobi_rotate<T: Scalar, const N: usize>(
    a: &mut CMatrix<T, N>,
    v: &mut CMatrix<T, N>,
    p: usize,
    q: usize,
) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag <= T::min_positive_value() {
        a[(p, q)] = Complex::zero();
        a[(q, p)] = Complex::zero();
        return;
    }
    // Unit phase of the pivot; the rotation is the real Jacobi one in the
    // frame where the pivot is real positive.
    let phase = apq / Complex::new(mag, T::zero());
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let tau = (aqq - app) / (mag + mag);
    let sign = if tau >= T::zero() { T::one() } else { -T::one() };
    let t = -sign / (tau.abs() + (T::one() + tau * tau).sqrt());
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    let u_pp = Complex::new(c, T::zero());
    let u_pq = -phase * s;
    let u_qp = phase.conj() * s;
    // Columns: col_p <- c*col_p + u_qp*col_q ; col_q <- u_pq*col_p + c*col_q
    for i in 0..N {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * u_pp + aiq * u_qp;
        a[(i, q)] = aip * u_pq + aiq * u_pp;

        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * u_pp + viq * u_qp;
        v[(i, q)] = vip * u_pq + viq * u_pp;
    }
    // Rows, with U* coefficients (the conjugate transposes of the above).
    for j in 0..N {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = apj * u_pp + aqj * u_qp.conj();
        a[(q, j)] = apj * u_pq.conj() + aqj * u_pp;
    }
    // Exact zeros on the pivot; real diagonal is preserved by construction,
    // drop the rounding-level imaginary residue.
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
    a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
}

fn canonicalize_column_phase<T: Scalar, const N: usize>(v: &mut CMatrix<T, N>, k: usize) {
    let cutoff = T::of(1e-12).max(T::BOUNDARY_SNAP);
    for i in 0..N {
        let e = v[(i, k)];
        let norm = e.norm();
        if norm > cutoff {
            let phase = (e / Complex::new(norm, T::zero())).conj();
            for r in 0..N {
                v[(r, k)] = v[(r, k)] * phase;
            }
            return;
        }
    }
}

fn compare_columns<T: Scalar, const N: usize>(
    v: &CMatrix<T, N>,
    i: usize,
    j: usize,
) -> std::cmp::Ordering {
    for (a, b) in v.column(i).iter().zip(v.column(j).iter()) {
        match a.re.partial_cmp(&b.re).unwrap_or(std::cmp::Ordering::Equal) {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
        match a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal) {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
    }
    std::cmp::Ordering::Equal
}

/// Principal square root of a positive-semidefinite Hermitian matrix.
///
/// Eigenvalues in `[-PSD_FLOOR, 0)` are rounding noise and clamp to zero;
/// anything more negative is an error. The result is Hermitian PSD and
/// satisfies `sqrt(M) * sqrt(M) = M` to working accuracy.
pub fn matrix_sqrt_psd<T: Scalar, const N: usize>(m: &CMatrix<T, N>) -> Result<CMatrix<T, N>> {
    let es = hermitian_eigensystem(m)?;
    let mut roots = [T::zero(); N];
    for (r, &lambda) in roots.iter_mut().zip(es.values.iter()) {
        if lambda < -T::PSD_FLOOR {
            return Err(Error::NotPsd { min_eigenvalue: lambda.as_f64() });
        }
        *r = lambda.max(T::zero()).sqrt();
    }
    let v = es.vectors;
    let rebuilt = v * CMatrix::diag(roots) * v.adjoint();
    Ok(rebuilt.hermitian_part())
}

/// Real 3x3 matrix, used for the correlation matrix `T` of a two-qubit
/// state and its Gram matrix `T^t T`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealMat3<T> {
    rows: [[T; 3]; 3],
}

impl<T: Scalar> RealMat3<T> {
    pub fn zeros() -> Self {
        Self { rows: [[T::zero(); 3]; 3] }
    }

    pub fn from_rows(rows: [[T; 3]; 3]) -> Self {
        Self { rows }
    }

    pub fn diag(d: [T; 3]) -> Self {
        let mut m = Self::zeros();
        for (i, di) in d.into_iter().enumerate() {
            m.rows[i][i] = di;
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                m.rows[i][j] = self.rows[j][i];
            }
        }
        m
    }

    /// `T^t T`; symmetric positive semidefinite by construction.
    pub fn gram(&self) -> Self {
        let mut g = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = T::zero();
                for k in 0..3 {
                    s += self.rows[k][i] * self.rows[k][j];
                }
                g.rows[i][j] = s;
            }
        }
        g
    }

    /// Apply to a 3-vector.
    pub fn apply(&self, v: [T; 3]) -> [T; 3] {
        std::array::from_fn(|i| {
            self.rows[i][0] * v[0] + self.rows[i][1] * v[1] + self.rows[i][2] * v[2]
        })
    }

    /// Eigenvalues of a symmetric matrix, ascending, via the complex
    /// Hermitian solver on the embedded matrix.
    pub fn symmetric_eigenvalues(&self) -> Result<[T; 3]> {
        let embedded =
            CMat3::from_fn(|i, j| Complex::new((self.rows[i][j] + self.rows[j][i]) * T::of(0.5), T::zero()));
        Ok(hermitian_eigensystem(&embedded)?.values)
    }
}

impl<T: Scalar> std::ops::Index<(usize, usize)> for RealMat3<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.rows[i][j]
    }
}

impl<T: Scalar> std::ops::IndexMut<(usize, usize)> for RealMat3<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.rows[i][j]
    }
}

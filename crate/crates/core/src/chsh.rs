//! CHSH expectation values and the correlation-matrix violation criterion.
//!
//! For measurement directions `a, a', b, b'` the CHSH operator is
//! `B = a.sigma (x) (b + b').sigma + a'.sigma (x) (b - b').sigma`. The
//! maximum of `|<B>|` over all settings equals `2 sqrt(m)`, where `m` is
//! the sum of the two largest eigenvalues of `U = T^t T` and `T` is the
//! correlation matrix of the state; the state violates a CHSH inequality
//! exactly when `m > 1`. Both the closed criterion and a direct numerical
//! maximization over settings are provided, the latter deliberately built
//! on the raw operator expectation so the two routes share no code path.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{kron, paulis, CMat2, CMat4};
use crate::scalar::Scalar;
use crate::states::{bloch_decompose, DensityMatrix, E0Params};

/// A full set of CHSH measurement settings: unit vectors `a`, `a'` for the
/// first qubit and `b`, `b'` for the second.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellOperator<T> {
    a: [T; 3],
    a_prime: [T; 3],
    b: [T; 3],
    b_prime: [T; 3],
}

impl<T: Scalar> BellOperator<T> {
    /// Build a setting from four direction vectors. Each is normalized;
    /// a vector too short to carry a direction is rejected.
    pub fn new(a: [T; 3], a_prime: [T; 3], b: [T; 3], b_prime: [T; 3]) -> Result<Self> {
        Ok(Self {
            a: normalize(a)?,
            a_prime: normalize(a_prime)?,
            b: normalize(b)?,
            b_prime: normalize(b_prime)?,
        })
    }

    pub fn a(&self) -> [T; 3] {
        self.a
    }

    pub fn a_prime(&self) -> [T; 3] {
        self.a_prime
    }

    pub fn b(&self) -> [T; 3] {
        self.b
    }

    pub fn b_prime(&self) -> [T; 3] {
        self.b_prime
    }
}

fn normalize<T: Scalar>(v: [T; 3]) -> Result<[T; 3]> {
    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if !norm.is_finite() || norm < T::of(1e-9) {
        return Err(Error::NotUnit { norm: norm.as_f64() });
    }
    Ok(v.map(|x| x / norm))
}

/// `v . sigma` as a 2x2 matrix.
fn dot_sigma<T: Scalar>(v: [T; 3]) -> CMat2<T> {
    let sig = paulis::<T>();
    let mut m = sig[0].scale(v[0]) + sig[1].scale(v[1]);
    m = m + sig[2].scale(v[2]);
    m
}

/// The 4x4 CHSH operator of a setting.
pub fn bell_operator_matrix<T: Scalar>(op: &BellOperator<T>) -> CMat4<T> {
    let sum = [op.b[0] + op.b_prime[0], op.b[1] + op.b_prime[1], op.b[2] + op.b_prime[2]];
    let diff = [op.b[0] - op.b_prime[0], op.b[1] - op.b_prime[1], op.b[2] - op.b_prime[2]];
    kron(&dot_sigma(op.a), &dot_sigma(sum)) + kron(&dot_sigma(op.a_prime), &dot_sigma(diff))
}

/// `tr(rho B)` for one fixed setting. Real for Hermitian inputs.
pub fn chsh_expectation<T: Scalar>(rho: &DensityMatrix<T>, op: &BellOperator<T>) -> T {
    (*rho.matrix() * bell_operator_matrix(op)).trace().re
}

/// The violation parameter `m`: the sum of the two largest eigenvalues of
/// `T^t T`.
pub fn horodecki_m<T: Scalar>(rho: &DensityMatrix<T>) -> Result<T> {
    let t = bloch_decompose(rho).t;
    let eig = t.gram().symmetric_eigenvalues()?;
    Ok(eig[1] + eig[2])
}

/// Closed form of `m` on the restricted family:
/// `m = c^2 + max(c^2, (1 - 2 rho44)^2)`.
pub fn horodecki_m_e0<T: Scalar>(params: &E0Params<T>) -> T {
    let c_sq = params.c() * params.c();
    let w = T::one() - (params.rho44() + params.rho44());
    c_sq + c_sq.max(w * w)
}

/// Verdict and derived quantities of the violation criterion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChshReport<T> {
    /// Sum of the two largest eigenvalues of `T^t T`.
    pub m: T,
    /// Violation degree `max(0, m - 1)`.
    pub n: T,
    /// Maximal CHSH expectation `2 sqrt(m)`.
    pub max_chsh: T,
    /// True exactly when `m > 1`.
    pub violates: bool,
}

impl<T: Scalar> ChshReport<T> {
    fn from_m(m: T) -> Self {
        Self {
            m,
            n: (m - T::one()).max(T::zero()),
            max_chsh: (m.max(T::zero())).sqrt() * T::of(2.0),
            violates: m > T::one(),
        }
    }
}

/// Evaluate the criterion on an arbitrary state.
pub fn chsh_report<T: Scalar>(rho: &DensityMatrix<T>) -> Result<ChshReport<T>> {
    Ok(ChshReport::from_m(horodecki_m(rho)?))
}

/// Evaluate the criterion on the restricted family via the closed form.
pub fn chsh_report_e0<T: Scalar>(params: &E0Params<T>) -> ChshReport<T> {
    ChshReport::from_m(horodecki_m_e0(params))
}

/// Result of the direct numerical maximization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChshOptimum<T> {
    /// Best expectation value found.
    pub value: T,
    /// The setting achieving it.
    pub operator: BellOperator<T>,
}

/// Maximize `tr(rho B)` over all measurement settings by Nelder-Mead
/// descent on the eight spherical angles, restarted from `restarts` random
/// points drawn from a seeded generator. Deterministic for fixed inputs.
///
/// The objective goes through [`bell_operator_matrix`] and the trace, not
/// through the correlation matrix, so the result is an independent check
/// of `2 sqrt(m)`.
pub fn optimize_chsh<T: Scalar>(
    rho: &DensityMatrix<T>,
    restarts: usize,
    seed: u64,
) -> Result<ChshOptimum<T>> {
    assert!(restarts >= 1, "at least one restart is required");
    let objective = |angles: &[T; 8]| -> T {
        let op = operator_from_angles(angles);
        -chsh_expectation(rho, &op)
    };

    let mut best_angles: Option<[T; 8]> = None;
    let mut best_value = T::infinity();
    for k in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let mut start = [T::zero(); 8];
        for (i, angle) in start.iter_mut().enumerate() {
            let span = if i % 2 == 0 { std::f64::consts::PI } else { 2.0 * std::f64::consts::PI };
            *angle = T::of(rng.gen_range(0.0..span));
        }
        let (coarse, _) = nelder_mead(&objective, start, T::of(0.5), 600);
        let (refined, value) = nelder_mead(&objective, coarse, T::of(0.02), 200);
        if value < best_value {
            best_value = value;
            best_angles = Some(refined);
        }
    }

    let angles = best_angles.expect("restarts >= 1");
    Ok(ChshOptimum { value: -best_value, operator: operator_from_angles(&angles) })
}

/// Angles are packed as (theta, phi) pairs for a, a', b, b'.
fn operator_from_angles<T: Scalar>(angles: &[T; 8]) -> BellOperator<T> {
    let unit = |theta: T, phi: T| [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
    BellOperator {
        a: unit(angles[0], angles[1]),
        a_prime: unit(angles[2], angles[3]),
        b: unit(angles[4], angles[5]),
        b_prime: unit(angles[6], angles[7]),
    }
}

/// Plain Nelder-Mead minimization with the standard coefficients
/// (reflect 1, expand 2, contract 1/2, shrink 1/2). Returns the best
/// vertex and its value.
fn nelder_mead<T: Scalar, const N: usize>(
    f: &impl Fn(&[T; N]) -> T,
    x0: [T; N],
    step: T,
    max_iters: usize,
) -> ([T; N], T) {
    let ftol = T::of(1e-12);
    let mut simplex: Vec<[T; N]> = Vec::with_capacity(N + 1);
    simplex.push(x0);
    for i in 0..N {
        let mut v = x0;
        v[i] += step;
        simplex.push(v);
    }
    let mut values: Vec<T> = simplex.iter().map(f).collect();

    for _ in 0..max_iters {
        // Order the simplex by value, best first.
        let mut idx: Vec<usize> = (0..=N).collect();
        idx.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap_or(std::cmp::Ordering::Equal));
        let reordered: Vec<[T; N]> = idx.iter().map(|&i| simplex[i]).collect();
        let reordered_vals: Vec<T> = idx.iter().map(|&i| values[i]).collect();
        simplex = reordered;
        values = reordered_vals;

        if (values[N] - values[0]).abs() < ftol {
            break;
        }

        let mut centroid = [T::zero(); N];
        for x in simplex.iter().take(N) {
            for (c, xi) in centroid.iter_mut().zip(x.iter()) {
                *c += *xi;
            }
        }
        let inv_n = T::one() / T::of(N as f64);
        for c in centroid.iter_mut() {
            *c *= inv_n;
        }

        let worst = simplex[N];
        let blend = |towards: &[T; N], coeff: T| -> [T; N] {
            let mut out = [T::zero(); N];
            for i in 0..N {
                out[i] = centroid[i] + coeff * (towards[i] - centroid[i]);
            }
            out
        };

        let reflected = blend(&worst, -T::one());
        let fr = f(&reflected);
        if fr < values[0] {
            let expanded = blend(&worst, -T::of(2.0));
            let fe = f(&expanded);
            if fe < fr {
                simplex[N] = expanded;
                values[N] = fe;
            } else {
                simplex[N] = reflected;
                values[N] = fr;
            }
        } else if fr < values[N - 1] {
            simplex[N] = reflected;
            values[N] = fr;
        } else {
            let half = T::of(0.5);
            let contracted =
                if fr < values[N] { blend(&reflected, half) } else { blend(&worst, half) };
            let fc = f(&contracted);
            if fc < values[N].min(fr) {
                simplex[N] = contracted;
                values[N] = fc;
            } else {
                // Shrink everything towards the best vertex.
                let best = simplex[0];
                for (x, v) in simplex.iter_mut().zip(values.iter_mut()).skip(1) {
                    for i in 0..N {
                        x[i] = best[i] + half * (x[i] - best[i]);
                    }
                    *v = f(x);
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..=N {
        if values[i] < values[best] {
            best = i;
        }
    }
    (simplex[best], values[best])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell_phi_plus, maximally_mixed, mems_state};

    const TOL: f64 = 1e-12;
    const TWO_SQRT_2: f64 = 2.8284271247461901;

    #[test]
    fn bell_state_reaches_the_quantum_bound_at_its_optimal_setting() {
        // The correlation matrix of (|00> + |11>)/sqrt(2) is diag(1, -1, 1),
        // so x, y measurements on the first qubit paired with the
        // diagonal directions (x -+ y)/sqrt(2) saturate 2 sqrt(2).
        let rho = bell_phi_plus::<f64>();
        let op = BellOperator::new(
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [1.0, -1.0, 0.0],
            [1.0, 1.0, 0.0],
        )
        .unwrap();
        assert!((chsh_expectation(&rho, &op) - TWO_SQRT_2).abs() < TOL);

        // Swapping the diagonal pair flips the sign structure and the
        // expectation collapses to zero for this state.
        let swapped = BellOperator::new(
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [1.0, 1.0, 0.0],
            [1.0, -1.0, 0.0],
        )
        .unwrap();
        assert!(chsh_expectation(&rho, &swapped).abs() < TOL);
    }

    #[test]
    fn bell_state_criterion_gives_m_two() {
        let report = chsh_report(&bell_phi_plus::<f64>()).unwrap();
        assert!((report.m - 2.0).abs() < TOL);
        assert!((report.max_chsh - TWO_SQRT_2).abs() < TOL);
        assert!((report.n - 1.0).abs() < TOL);
        assert!(report.violates);
    }

    #[test]
    fn product_state_sits_exactly_on_the_classical_boundary() {
        // |00><00| has T = diag(0, 0, 1), so m = 1: no violation.
        let rho = DensityMatrix::<f64>::from_pure([
            num_complex::Complex::new(1.0, 0.0),
            num_complex::Complex::new(0.0, 0.0),
            num_complex::Complex::new(0.0, 0.0),
            num_complex::Complex::new(0.0, 0.0),
        ])
        .unwrap();
        let report = chsh_report(&rho).unwrap();
        assert!((report.m - 1.0).abs() < TOL);
        assert!(!report.violates);
        assert_eq!(report.n, 0.0);
    }

    #[test]
    fn maximally_mixed_state_has_zero_m() {
        let report = chsh_report(&maximally_mixed::<f64>()).unwrap();
        assert!(report.m.abs() < TOL);
        assert!(!report.violates);
    }

    #[test]
    fn restricted_family_m_matches_the_closed_form() {
        for (a, b, c, th) in [
            (0.5, 0.5, 1.0, 0.0),
            (0.5, 0.5, 0.5, 0.0),
            (1.0 / 3.0, 1.0 / 3.0, 0.5, 1.1),
            (0.3, 0.2, 0.4, 4.0),
            (0.1, 0.1, 0.0, 0.0),
            (0.45, 0.35, 0.7, 2.5),
        ] {
            let p = E0Params::<f64>::new(a, b, c, th).unwrap();
            let spectral = horodecki_m(&p.density()).unwrap();
            let closed = horodecki_m_e0(&p);
            assert!(
                (spectral - closed).abs() < 1e-10,
                "({a}, {b}, {c}, {th}): {spectral} vs {closed}"
            );
        }
    }

    #[test]
    fn half_half_half_state_violates_with_m_five_fourths() {
        let p = E0Params::<f64>::new(0.5, 0.5, 0.5, 0.0).unwrap();
        let report = chsh_report_e0(&p);
        assert!((report.m - 1.25).abs() < TOL);
        assert!(report.violates);
        assert!((report.max_chsh - 2.23606797749979).abs() < TOL);
    }

    #[test]
    fn mems_at_half_concurrence_does_not_violate() {
        let report = chsh_report_e0(&mems_state::<f64>(0.5).unwrap());
        assert!((report.m - 0.5).abs() < TOL);
        assert!(!report.violates);
    }

    #[test]
    fn operator_matrix_is_hermitian_and_bounded() {
        let op = BellOperator::new(
            [0.3, -0.2, 0.5],
            [1.0, 1.0, 0.0],
            [0.0, 0.4, -0.1],
            [-0.3, 0.2, 0.9],
        )
        .unwrap();
        let b = bell_operator_matrix(&op);
        assert!(b.hermiticity_deviation() < TOL);
        // |<B>| <= 2 sqrt(2) for every state and setting.
        let rho = bell_phi_plus::<f64>();
        assert!(chsh_expectation(&rho, &op).abs() <= TWO_SQRT_2 + TOL);
    }

    #[test]
    fn degenerate_directions_are_rejected() {
        assert!(matches!(
            BellOperator::new([0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]),
            Err(Error::NotUnit { .. })
        ));
    }

    #[test]
    fn optimizer_recovers_the_bell_state_bound() {
        let rho = bell_phi_plus::<f64>();
        let opt = optimize_chsh(&rho, 6, 7).unwrap();
        assert!((opt.value - TWO_SQRT_2).abs() < 1e-6, "found {}", opt.value);
        // The reported operator reproduces the reported value.
        assert!((chsh_expectation(&rho, &opt.operator) - opt.value).abs() < TOL);
    }

    #[test]
    fn optimizer_agrees_with_the_criterion_on_a_violating_mixed_state() {
        let p = E0Params::<f64>::new(0.5, 0.5, 0.5, 0.0).unwrap();
        let opt = optimize_chsh(&p.density(), 8, 11).unwrap();
        let bound = chsh_report_e0(&p).max_chsh;
        assert!((opt.value - bound).abs() < 1e-6, "found {} vs bound {bound}", opt.value);
    }

    #[test]
    fn optimizer_is_deterministic_for_a_fixed_seed() {
        let rho = mems_state::<f64>(0.9).unwrap().density();
        let first = optimize_chsh(&rho, 4, 3).unwrap();
        let second = optimize_chsh(&rho, 4, 3).unwrap();
        assert_eq!(first.value, second.value);
        assert_eq!(first.operator, second.operator);
    }
}

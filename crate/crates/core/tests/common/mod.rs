//! Shared random-state generators and the polynomial root oracle used by
//! the integration suites. Everything here deliberately avoids the Jacobi
//! eigensolver so the oracles stay independent of the code under test.
#![allow(dead_code)]

use bellmix::matrix::{kron, CMat2, CMat4, CMatrix};
use bellmix::states::{DensityMatrix, E0Params};
use num_complex::Complex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn complex_normal(rng: &mut ChaCha8Rng) -> Complex<f64> {
    Complex::new(normal(rng), normal(rng))
}

/// Random matrix with independent complex Gaussian entries.
pub fn ginibre<const N: usize>(rng: &mut ChaCha8Rng) -> CMatrix<f64, N> {
    CMatrix::from_fn(|_, _| complex_normal(rng))
}

/// Random density matrix `G G^dag / tr(G G^dag)`: full rank almost surely,
/// spread over the whole state space.
pub fn ginibre_state(rng: &mut ChaCha8Rng) -> DensityMatrix<f64> {
    let g: CMat4<f64> = ginibre(rng);
    let gram = g * g.adjoint();
    let rho = gram.scale(1.0 / gram.trace().re);
    DensityMatrix::new(rho.hermitian_part()).expect("Gram quotient is a state")
}

/// Random Hermitian matrix with O(1) entries.
pub fn random_hermitian<const N: usize>(rng: &mut ChaCha8Rng) -> CMatrix<f64, N> {
    ginibre::<N>(rng).hermitian_part()
}

/// Random PSD matrix `G G^dag`.
pub fn random_psd<const N: usize>(rng: &mut ChaCha8Rng) -> CMatrix<f64, N> {
    let g: CMatrix<f64, N> = ginibre(rng);
    (g * g.adjoint()).hermitian_part()
}

/// Uniform draw from the block parametrization: populations first, then a
/// coherence below the positivity ceiling `2 sqrt(a b)`.
pub fn random_e0(rng: &mut ChaCha8Rng) -> E0Params<f64> {
    let a: f64 = rng.gen_range(0.0..1.0);
    let b: f64 = rng.gen_range(0.0..(1.0 - a));
    let c = rng.gen_range(0.0..1.0) * 2.0 * (a * b).sqrt();
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    E0Params::new(a, b, c, theta).expect("sampled inside the positivity wedge")
}

/// Haar-like random SU(2) element from a normalized quaternion.
pub fn random_su2(rng: &mut ChaCha8Rng) -> CMat2<f64> {
    let q = [normal(rng), normal(rng), normal(rng), normal(rng)];
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let (w, x, y, z) = (q[0] / n, q[1] / n, q[2] / n, q[3] / n);
    CMat2::from_rows([
        [Complex::new(w, x), Complex::new(y, z)],
        [Complex::new(-y, z), Complex::new(w, -x)],
    ])
}

/// Conjugate by a random product unitary `U_A (x) U_B`.
pub fn random_local_conjugate(rng: &mut ChaCha8Rng, rho: &DensityMatrix<f64>) -> DensityMatrix<f64> {
    let u = kron(&random_su2(rng), &random_su2(rng));
    let rotated = u * *rho.matrix() * u.adjoint();
    DensityMatrix::new(rotated.hermitian_part()).expect("unitary conjugation preserves validity")
}

/// Coefficients of the characteristic polynomial of a Hermitian matrix,
/// ascending by degree with leading coefficient 1, computed from power-sum
/// traces via Newton's identities. No eigendecomposition involved.
pub fn char_poly<const N: usize>(h: &CMatrix<f64, N>) -> Vec<f64> {
    let mut power = CMatrix::<f64, N>::identity();
    let mut sums = [0.0f64; N];
    for s in sums.iter_mut() {
        power = power * *h;
        *s = power.trace().re;
    }
    // e_k = (1/k) sum_{i=1..k} (-1)^{i-1} e_{k-i} s_i, with e_0 = 1.
    let mut elementary = vec![1.0f64];
    for k in 1..=N {
        let mut acc = 0.0;
        for i in 1..=k {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            acc += sign * elementary[k - i] * sums[i - 1];
        }
        elementary.push(acc / k as f64);
    }
    let mut coeffs = vec![0.0f64; N + 1];
    for (k, e) in elementary.iter().enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        coeffs[N - k] = sign * e;
    }
    coeffs
}

fn eval_poly(coeffs: &[f64], z: Complex<f64>) -> Complex<f64> {
    let mut acc = Complex::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + Complex::new(c, 0.0);
    }
    acc
}

/// All roots of a monic real polynomial by Durand-Kerner iteration.
/// Returns real parts sorted ascending; panics if an imaginary part
/// survives, which cannot happen for characteristic polynomials of
/// Hermitian input within the oracle tolerance.
pub fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let degree = coeffs.len() - 1;
    assert!((coeffs[degree] - 1.0).abs() < 1e-12, "monic input expected");
    let seed = Complex::new(0.4, 0.9);
    let mut roots: Vec<Complex<f64>> = (0..degree).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..2000 {
        let mut shift = 0.0f64;
        for i in 0..degree {
            let mut denom = Complex::new(1.0, 0.0);
            for j in 0..degree {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            let delta = eval_poly(coeffs, roots[i]) / denom;
            roots[i] -= delta;
            shift = shift.max(delta.norm());
        }
        if shift < 1e-14 {
            break;
        }
    }
    let mut out: Vec<f64> = roots
        .iter()
        .map(|z| {
            assert!(z.im.abs() < 1e-7, "non-real root {z} from Hermitian input");
            z.re
        })
        .collect();
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out
}

/// `n` angles spread over a union of arcs, allocated to each arc in
/// proportion to its length, endpoints included.
pub fn sample_arcs(arcs: &[bellmix::regions::AngleInterval<f64>], n: usize) -> Vec<f64> {
    assert!(n >= 2 && !arcs.is_empty());
    let total: f64 = arcs.iter().map(|a| a.len()).sum();
    let mut phis = Vec::with_capacity(n);
    if total == 0.0 {
        // Degenerate arcs: replicate the single admissible angles.
        for arc in arcs {
            phis.push(arc.lo);
        }
        return phis;
    }
    let mut remaining = n;
    for (idx, arc) in arcs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        let share = if idx + 1 == arcs.len() {
            remaining
        } else {
            ((n as f64 * arc.len() / total).round() as usize).clamp(1, remaining)
        };
        for k in 0..share {
            let frac = if share == 1 { 0.5 } else { k as f64 / (share - 1) as f64 };
            phis.push(arc.lo + frac * arc.len());
        }
        remaining -= share;
    }
    phis
}

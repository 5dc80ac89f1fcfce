//! Entanglement and mixedness measures.
//!
//! Concurrence is computed on the Hermitian route: with the spin-flipped
//! state `rho~ = (sigma_2 (x) sigma_2) conj(rho) (sigma_2 (x) sigma_2)`,
//! the square roots of the eigenvalues of `sqrt(rho) rho~ sqrt(rho)` in
//! decreasing order give `C = max(0, l1 - l2 - l3 - l4)`. Entanglement of
//! formation follows from concurrence through the binary entropy, and
//! mixedness is the linear entropy normalized to 1 on the maximally mixed
//! state: `S_L = (4/3) (1 - tr(rho^2))`.

use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigensystem, kron, matrix_sqrt_psd, sigma2, CMat4};
use crate::scalar::Scalar;
use crate::states::{DensityMatrix, E0Params};

/// `(sigma_2 (x) sigma_2) conj(m) (sigma_2 (x) sigma_2)`.
pub fn spin_flip<T: Scalar>(m: &CMat4<T>) -> CMat4<T> {
    let f = kron(&sigma2::<T>(), &sigma2::<T>());
    f * m.conj() * f
}

/// Wootters concurrence of an arbitrary two-qubit state, in `[0, 1]`.
pub fn concurrence<T: Scalar>(rho: &DensityMatrix<T>) -> Result<T> {
    let m = rho.matrix();
    let root = matrix_sqrt_psd(&m.hermitian_part())?;
    let inner = root * spin_flip(m) * root;
    let es = hermitian_eigensystem(&inner.hermitian_part())?;

    // Eigenvalues that vanish in exact arithmetic come back as rounding
    // noise of either sign; the square root would amplify |noise| ~ 1e-16
    // to ~ 1e-8, so anything below the floor counts as zero.
    let mut sum = T::zero();
    let mut largest = T::zero();
    for &v in &es.values {
        let l = if v < T::SPECTRUM_FLOOR { T::zero() } else { v.sqrt() };
        sum += l;
        largest = largest.max(l);
    }
    Ok((largest + largest - sum).max(T::zero()).min(T::one()))
}

/// Concurrence of a state of the restricted family. The spin-flip spectrum
/// collapses so that `C` equals the coherence magnitude `c` exactly.
pub fn concurrence_e0<T: Scalar>(params: &E0Params<T>) -> T {
    params.c()
}

/// Binary entropy `h(x) = -x log2(x) - (1 - x) log2(1 - x)`, with
/// `h(0) = h(1) = 0`.
pub fn binary_entropy<T: Scalar>(x: T) -> Result<T> {
    let tol = T::VALIDATION_TOL;
    if !x.is_finite() || x < -tol || x > T::one() + tol {
        return Err(Error::OutOfRange { name: "x", value: x.as_f64(), domain: "[0, 1]" });
    }
    let x = x.max(T::zero()).min(T::one());
    let term = |p: T| if p > T::zero() { -p * p.log2() } else { T::zero() };
    Ok(term(x) + term(T::one() - x))
}

/// Entanglement of formation as a function of concurrence:
/// `h((1 + sqrt(1 - C^2)) / 2)`.
pub fn eof_from_concurrence<T: Scalar>(c: T) -> Result<T> {
    let tol = T::VALIDATION_TOL;
    if !c.is_finite() || c < -tol || c > T::one() + tol {
        return Err(Error::OutOfRange { name: "concurrence", value: c.as_f64(), domain: "[0, 1]" });
    }
    let c = c.max(T::zero()).min(T::one());
    let x = (T::one() + (T::one() - c * c).sqrt()) * T::of(0.5);
    binary_entropy(x)
}

/// Entanglement of formation of an arbitrary two-qubit state.
pub fn entanglement_of_formation<T: Scalar>(rho: &DensityMatrix<T>) -> Result<T> {
    eof_from_concurrence(concurrence(rho)?)
}

/// Normalized linear entropy `(4/3) (1 - tr(rho^2))`: 0 on pure states,
/// 1 on the maximally mixed state.
pub fn linear_entropy<T: Scalar>(rho: &DensityMatrix<T>) -> T {
    let four_thirds = T::of(4.0 / 3.0);
    (four_thirds * (T::one() - rho.purity())).max(T::zero())
}

/// Closed form of the normalized linear entropy on the restricted family:
/// `(4/3) (1 - a^2 - b^2 - rho44^2 - c^2 / 2)`.
pub fn linear_entropy_e0<T: Scalar>(params: &E0Params<T>) -> T {
    let (a, b, c) = (params.a(), params.b(), params.c());
    let r44 = params.rho44();
    let four_thirds = T::of(4.0 / 3.0);
    let half = T::of(0.5);
    (four_thirds * (T::one() - a * a - b * b - r44 * r44 - c * c * half)).max(T::zero())
}

/// The measures of one state, bundled.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureReport<T> {
    pub concurrence: T,
    pub entanglement_of_formation: T,
    pub purity: T,
    pub linear_entropy: T,
}

/// Compute all measures of an arbitrary state.
pub fn measure<T: Scalar>(rho: &DensityMatrix<T>) -> Result<MeasureReport<T>> {
    let concurrence = concurrence(rho)?;
    Ok(MeasureReport {
        concurrence,
        entanglement_of_formation: eof_from_concurrence(concurrence)?,
        purity: rho.purity(),
        linear_entropy: linear_entropy(rho),
    })
}

/// Compute all measures of a restricted-family state from the closed
/// forms, bypassing the spectral route entirely.
pub fn measure_e0<T: Scalar>(params: &E0Params<T>) -> Result<MeasureReport<T>> {
    let c = concurrence_e0(params);
    let linear = linear_entropy_e0(params);
    Ok(MeasureReport {
        concurrence: c,
        entanglement_of_formation: eof_from_concurrence(c)?,
        purity: T::one() - T::of(0.75) * linear,
        linear_entropy: linear,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell_phi_plus, maximally_mixed, mems_state};
    use num_complex::Complex;

    const TOL: f64 = 1e-12;

    #[test]
    fn bell_state_is_maximally_entangled_and_pure() {
        let rho = bell_phi_plus::<f64>();
        assert!((concurrence(&rho).unwrap() - 1.0).abs() < 1e-9);
        assert!((entanglement_of_formation(&rho).unwrap() - 1.0).abs() < 1e-9);
        assert!(linear_entropy(&rho) < TOL);
        assert!((rho.purity() - 1.0).abs() < TOL);
    }

    #[test]
    fn maximally_mixed_state_has_zero_entanglement_and_unit_entropy() {
        let rho = maximally_mixed::<f64>();
        assert_eq!(concurrence(&rho).unwrap(), 0.0);
        assert_eq!(entanglement_of_formation(&rho).unwrap(), 0.0);
        assert!((linear_entropy(&rho) - 1.0).abs() < TOL);
        assert!((rho.purity() - 0.25).abs() < TOL);
    }

    #[test]
    fn werner_state_concurrence_is_piecewise_linear_in_the_weight() {
        let bell = bell_phi_plus::<f64>();
        let mixed = maximally_mixed::<f64>();
        for (p, expected) in [(1.0, 1.0), (0.8, 0.7), (1.0 / 3.0, 0.0), (0.2, 0.0), (0.0, 0.0)] {
            let rho = bell.mix(&mixed, p).unwrap();
            let c = concurrence(&rho).unwrap();
            assert!((c - expected).abs() < 1e-9, "p = {p}: C = {c}, expected {expected}");
        }
    }

    #[test]
    fn pure_superposition_concurrence_is_twice_the_amplitude_product() {
        for alpha_sq in [0.1, 0.25, 0.5, 0.9] {
            let alpha = f64::sqrt(alpha_sq);
            let beta = f64::sqrt(1.0 - alpha_sq);
            let rho = DensityMatrix::from_pure([
                Complex::new(alpha, 0.0),
                Complex::new(0.0, 0.0),
                Complex::new(0.0, 0.0),
                Complex::new(0.0, beta),
            ])
            .unwrap();
            let c = concurrence(&rho).unwrap();
            assert!((c - 2.0 * alpha * beta).abs() < 1e-9);
        }
    }

    #[test]
    fn restricted_family_concurrence_equals_the_coherence_magnitude() {
        for (a, b, c, th) in [
            (0.5, 0.5, 1.0, 0.0),
            (0.5, 0.5, 0.5, 1.3),
            (1.0 / 3.0, 1.0 / 3.0, 0.5, 0.0),
            (0.3, 0.3, 0.0, 0.0),
            (0.25, 0.16, 0.4, 5.1),
        ] {
            let p = E0Params::<f64>::new(a, b, c, th).unwrap();
            let generic = concurrence(&p.density()).unwrap();
            assert!(
                (generic - concurrence_e0(&p)).abs() < 1e-9,
                "({a}, {b}, {c}, {th}): {generic} vs {c}"
            );
        }
    }

    #[test]
    fn restricted_family_linear_entropy_matches_the_generic_route() {
        for (a, b, c, th) in [
            (0.5, 0.5, 1.0, 0.0),
            (1.0 / 3.0, 1.0 / 3.0, 0.5, 2.2),
            (0.2, 0.05, 0.2, 4.5),
            (0.7, 0.1, 0.5, 0.9),
        ] {
            let p = E0Params::<f64>::new(a, b, c, th).unwrap();
            let closed = linear_entropy_e0(&p);
            let generic = linear_entropy(&p.density());
            assert!((closed - generic).abs() < TOL, "({a}, {b}, {c}, {th})");
        }
    }

    #[test]
    fn mems_linear_entropy_hits_the_known_values() {
        // At c = 1/2 the flat-population branch gives S_L = 13/18.
        let p = mems_state::<f64>(0.5).unwrap();
        assert!((linear_entropy_e0(&p) - 13.0 / 18.0).abs() < TOL);
        // At the crossover c = 2/3 both branches give 16/27.
        let q = mems_state::<f64>(2.0 / 3.0).unwrap();
        assert!((linear_entropy_e0(&q) - 16.0 / 27.0).abs() < TOL);
        // On the steep branch, S_L = (8/3) c (1 - c).
        let r = mems_state::<f64>(0.8).unwrap();
        assert!((linear_entropy_e0(&r) - (8.0 / 3.0) * 0.8 * 0.2).abs() < TOL);
    }

    #[test]
    fn binary_entropy_is_symmetric_and_peaks_at_one_half() {
        assert_eq!(binary_entropy::<f64>(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy::<f64>(1.0).unwrap(), 0.0);
        assert!((binary_entropy::<f64>(0.5).unwrap() - 1.0).abs() < TOL);
        for x in [0.1f64, 0.3, 0.42] {
            let h = binary_entropy(x).unwrap();
            assert!((h - binary_entropy(1.0 - x).unwrap()).abs() < TOL);
            assert!(h > 0.0 && h < 1.0);
        }
        assert!(binary_entropy::<f64>(1.5).is_err());
    }

    #[test]
    fn eof_of_concurrence_one_half_matches_the_frozen_value() {
        let eof = eof_from_concurrence(0.5f64).unwrap();
        assert!((eof - 0.3545789026652699).abs() < 1e-15);
    }

    #[test]
    fn eof_is_monotone_in_concurrence() {
        let mut prev = -1.0;
        for k in 0..=20 {
            let c = k as f64 / 20.0;
            let e = eof_from_concurrence(c).unwrap();
            assert!(e > prev || (k == 0 && e == 0.0));
            prev = e;
        }
        assert!((prev - 1.0).abs() < TOL);
    }

    #[test]
    fn spin_flip_is_an_involution_and_fixes_the_bell_state() {
        let p = E0Params::<f64>::new(0.3, 0.4, 0.5, 0.7).unwrap();
        let m = *p.density().matrix();
        assert!(spin_flip(&spin_flip(&m)).approx_eq(&m, TOL));

        let bell = *bell_phi_plus::<f64>().matrix();
        assert!(spin_flip(&bell).approx_eq(&bell, TOL));
    }

    #[test]
    fn measure_bundles_agree_between_generic_and_closed_form_routes() {
        let p = E0Params::<f64>::new(0.4, 0.35, 0.6, 2.1).unwrap();
        let generic = measure(&p.density()).unwrap();
        let closed = measure_e0(&p).unwrap();
        assert!((generic.concurrence - closed.concurrence).abs() < 1e-9);
        assert!(
            (generic.entanglement_of_formation - closed.entanglement_of_formation).abs() < 1e-9
        );
        assert!((generic.purity - closed.purity).abs() < TOL);
        assert!((generic.linear_entropy - closed.linear_entropy).abs() < TOL);
    }
}

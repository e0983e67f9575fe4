//! Normalized state vectors in the S_z eigenbasis.

use ndarray::Array1;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::rotation::Axis;
use crate::scalar::{norm_tolerance, Scalar};
use crate::spin::Spin;

/// Normalized complex amplitude vector over the S_z eigenbasis, ordered
/// m = +s, s−1, …, −s.
///
/// Global phase convention: the first nonzero amplitude, scanning from
/// m = +s downward, is real and non-negative. Construction canonicalizes
/// the phase, so two representations of the same physical state compare
/// equal entrywise.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Scalar> {
    amplitudes: Array1<Complex<T>>,
    /// The axis whose eigenstate this is, when known. Documentation only:
    /// storage is always in the S_z eigenbasis.
    basis_axis: Option<Axis<T>>,
}

impl<T: Scalar> StateVector<T> {
    /// Builds a state from amplitudes that are already normalized
    /// (Σ|amplitude|² = 1 within tolerance). The phase is canonicalized.
    pub fn new(amplitudes: Array1<Complex<T>>) -> Result<Self> {
        let norm_sq = check_finite_norm_sq(&amplitudes)?;
        if (norm_sq - T::one()).abs() > norm_tolerance::<T>() {
            return Err(Error::NotNormalized {
                norm_sq: norm_sq.as_f64(),
            });
        }
        let mut state = StateVector {
            amplitudes,
            basis_axis: None,
        };
        state.canonicalize_phase();
        Ok(state)
    }

    /// Builds a state from raw amplitudes, rescaling to unit norm.
    pub fn normalized(raw: Array1<Complex<T>>) -> Result<Self> {
        let norm_sq = check_finite_norm_sq(&raw)?;
        if norm_sq < T::epsilon() {
            return Err(Error::NotNormalized {
                norm_sq: norm_sq.as_f64(),
            });
        }
        let scale = norm_sq.sqrt().recip();
        let amplitudes = raw.mapv(|a| a * scale);
        let mut state = StateVector {
            amplitudes,
            basis_axis: None,
        };
        state.canonicalize_phase();
        Ok(state)
    }

    /// The S_z eigenstate |m⟩_z: a unit vector at the index of twice_m.
    pub fn basis_state(spin: Spin, twice_m: i32) -> Result<Self> {
        let index = spin.index_of(twice_m)?;
        let mut amplitudes =
            Array1::from_elem(spin.dim(), Complex::new(T::zero(), T::zero()));
        amplitudes[index] = Complex::new(T::one(), T::zero());
        Ok(StateVector {
            amplitudes,
            basis_axis: Some(Axis::z()),
        })
    }

    pub fn with_basis_axis(mut self, axis: Axis<T>) -> Self {
        self.basis_axis = Some(axis);
        self
    }

    pub fn basis_axis(&self) -> Option<Axis<T>> {
        self.basis_axis
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &Array1<Complex<T>> {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amplitudes[index]
    }

    /// Inner product ⟨self|other⟩ = Σ conj(self_i)·other_i.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        let mut acc = Complex::new(T::zero(), T::zero());
        for (a, b) in self.amplitudes.iter().zip(other.amplitudes.iter()) {
            acc = acc + a.conj() * *b;
        }
        Ok(acc)
    }

    /// Entrywise distance, ignoring the basis-axis label.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    /// Rotates the global phase so the anchor amplitude is real
    /// non-negative. The anchor is the first amplitude, scanning from
    /// m = +s downward, whose magnitude clears a machine-epsilon-scaled
    /// relative threshold; entries below it are float noise on true zeros
    /// and carry no usable phase.
    fn canonicalize_phase(&mut self) {
        let max_nsq = self
            .amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .fold(T::zero(), T::max);
        let dim = T::of(self.dim() as f64);
        let rel = T::of(100.0) * dim * dim * T::epsilon();
        let threshold = max_nsq * rel * rel;
        let anchor = self
            .amplitudes
            .iter()
            .find(|a| a.norm_sqr() > threshold)
            .copied();
        if let Some(a) = anchor {
            let phase = a / Complex::new(a.norm(), T::zero());
            let rotation = phase.conj();
            self.amplitudes.mapv_inplace(|amp| amp * rotation);
        }
    }
}

fn check_finite_norm_sq<T: Scalar>(amplitudes: &Array1<Complex<T>>) -> Result<T> {
    let mut norm_sq = T::zero();
    for a in amplitudes {
        if !a.re.is_finite() || !a.im.is_finite() {
            return Err(Error::NonFiniteAmplitude);
        }
        norm_sq = norm_sq + a.norm_sqr();
    }
    Ok(norm_sq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn basis_state_is_unit_vector() {
        let v = StateVector::<f64>::basis_state(Spin::new(4), 4).unwrap();
        assert_eq!(v.amplitude(0), Complex::new(1.0, 0.0));
        for i in 1..5 {
            assert_eq!(v.amplitude(i), Complex::new(0.0, 0.0));
        }
    }

    #[test]
    fn outside_spectrum_rejected() {
        assert!(StateVector::<f64>::basis_state(Spin::new(4), 3).is_err());
        assert!(StateVector::<f64>::basis_state(Spin::new(4), 6).is_err());
    }

    #[test]
    fn unnormalized_input_rejected() {
        let raw = array![Complex::new(1.0, 0.0), Complex::new(1.0, 0.0)];
        assert!(matches!(
            StateVector::new(raw),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn non_finite_rejected() {
        let raw = array![Complex::new(f64::NAN, 0.0), Complex::new(0.0, 0.0)];
        assert!(matches!(
            StateVector::new(raw),
            Err(Error::NonFiniteAmplitude)
        ));
    }

    #[test]
    fn phase_is_canonicalized() {
        // i/√2 (1, 1) and (1/√2)(1, 1) are the same physical state.
        let r = 0.5f64.sqrt();
        let a = StateVector::new(array![Complex::new(0.0, r), Complex::new(0.0, r)]).unwrap();
        let b = StateVector::new(array![Complex::new(r, 0.0), Complex::new(r, 0.0)]).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-15);
        assert!(a.amplitude(0).re > 0.0);
        assert!(a.amplitude(0).im.abs() < 1e-15);
    }

    #[test]
    fn leading_zero_amplitudes_are_skipped_by_the_anchor() {
        let v = StateVector::new(array![
            Complex::new(0.0, 0.0),
            Complex::new(0.0, -1.0)
        ])
        .unwrap();
        assert_eq!(v.amplitude(1), Complex::new(1.0, 0.0));
    }

    #[test]
    fn normalized_rescales() {
        let v = StateVector::normalized(array![
            Complex::new(3.0, 0.0),
            Complex::new(4.0, 0.0)
        ])
        .unwrap();
        assert!((v.amplitude(0).re - 0.6f64).abs() < 1e-15);
        assert!((v.amplitude(1).re - 0.8f64).abs() < 1e-15);
    }
}

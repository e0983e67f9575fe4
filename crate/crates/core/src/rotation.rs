//! Direction eigenstates via Wigner small-d rotation matrices.
//!
//! Rotation convention: the eigenstates of n̂·S⃗ for n̂ = (θ, φ) are produced
//! by rotating the S_z eigenstates with R_z(φ)·R_y(θ). Only the small-d
//! matrix (rotation by β about y) is needed, plus the diagonal phases
//! e^{−i m φ}. With this convention the column m of d^s(β) holds the
//! z-basis amplitudes of the eigenstate of cos β S_z + sin β S_x with
//! eigenvalue m, and the β = π/2 column for m = s is all-positive.

use std::fmt;

use ndarray::{Array1, Array2};
use num_complex::Complex;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spin::Spin;
use crate::state::StateVector;

/// A measurement direction as polar angle θ from +z and azimuth φ from +x,
/// normalized to θ ∈ [0, π], φ ∈ [0, 2π).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis<T: Scalar> {
    theta: T,
    phi: T,
}

/// Named coordinate axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisLabel {
    X,
    Y,
    Z,
}

impl fmt::Display for AxisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxisLabel::X => write!(f, "x"),
            AxisLabel::Y => write!(f, "y"),
            AxisLabel::Z => write!(f, "z"),
        }
    }
}

impl<T: Scalar> Axis<T> {
    pub fn x() -> Self {
        Axis {
            theta: T::FRAC_PI_2(),
            phi: T::zero(),
        }
    }

    pub fn y() -> Self {
        Axis {
            theta: T::FRAC_PI_2(),
            phi: T::FRAC_PI_2(),
        }
    }

    pub fn z() -> Self {
        Axis {
            theta: T::zero(),
            phi: T::zero(),
        }
    }

    /// General direction; angles in radians, normalized on construction.
    pub fn new(theta: T, phi: T) -> Self {
        let two_pi = T::TAU();
        let mut theta = theta.rem_euclid(&two_pi);
        let mut phi = phi;
        if theta > T::PI() {
            theta = two_pi - theta;
            phi = phi + T::PI();
        }
        let phi = phi.rem_euclid(&two_pi);
        Axis { theta, phi }
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    /// Which named axis this is, when the angles match the named
    /// constructors exactly.
    pub fn label(&self) -> Option<AxisLabel> {
        if *self == Self::x() {
            Some(AxisLabel::X)
        } else if *self == Self::y() {
            Some(AxisLabel::Y)
        } else if *self == Self::z() {
            Some(AxisLabel::Z)
        } else {
            None
        }
    }

    /// Unit direction vector (n_x, n_y, n_z).
    pub fn direction(&self) -> (T, T, T) {
        (
            self.theta.sin() * self.phi.cos(),
            self.theta.sin() * self.phi.sin(),
            self.theta.cos(),
        )
    }

    /// Angle between two directions, in [0, π].
    pub fn angle_to(&self, other: &Self) -> T {
        let cos_gamma = self.theta.cos() * other.theta.cos()
            + self.theta.sin() * other.theta.sin() * (self.phi - other.phi).cos();
        cos_gamma.min(T::one()).max(-T::one()).acos()
    }
}

impl<T: Scalar> fmt::Display for Axis<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label() {
            Some(label) => write!(f, "{label}"),
            None => write!(f, "({},{})", self.theta, self.phi),
        }
    }
}

impl<T: Scalar> Serialize for Axis<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Axis", 2)?;
        s.serialize_field("theta", &self.theta.as_f64())?;
        s.serialize_field("phi", &self.phi.as_f64())?;
        s.end()
    }
}

/// Rem_euclid for Float without the std inherent method.
trait RemEuclid: Sized {
    fn rem_euclid(self, rhs: &Self) -> Self;
}

impl<T: Scalar> RemEuclid for T {
    fn rem_euclid(self, rhs: &Self) -> Self {
        let r = self % *rhs;
        if r < T::zero() {
            r + *rhs
        } else {
            r
        }
    }
}

/// Wigner small-d matrix d^s_{m',m}(β) for rotation by β about the y-axis,
/// real orthogonal, indexed in descending-m order (row m', column m).
///
/// Computed by the factorial sum
/// d^s_{m',m}(β) = Σ_k (−1)^{m'−m+k} √((s+m)!(s−m)!(s+m')!(s−m')!)
///   / [(s+m−k)! k! (m'−m+k)! (s−m'−k)!]
///   · cos(β/2)^{2s+m−m'−2k} · sin(β/2)^{m'−m+2k},
/// the convention in which d^s(β) maps the S_z eigenbasis to eigenstates of
/// cos β S_z + sin β S_x.
pub fn wigner_small_d<T: Scalar>(spin: Spin, beta: T) -> Array2<T> {
    let dim = spin.dim();
    let ts = i64::from(spin.twice_s());
    let half = T::of(0.5);
    let cos_half = (beta * half).cos();
    let sin_half = (beta * half).sin();

    // (2s)! for twice_s ≤ 1500 or so stays finite in f64; all uses here are
    // far below that.
    let factorials: Vec<T> = {
        let mut f = Vec::with_capacity(ts as usize + 1);
        let mut acc = 1.0f64;
        f.push(T::one());
        for n in 1..=ts {
            acc *= n as f64;
            f.push(T::of(acc));
        }
        f
    };

    Array2::from_shape_fn((dim, dim), |(row, col)| {
        let tm = i64::from(spin.twice_m_at(col)); // twice m
        let tmp = i64::from(spin.twice_m_at(row)); // twice m'
        let a = ((ts + tm) / 2) as usize; // s + m
        let b = ((ts - tm) / 2) as usize; // s − m
        let c = ((ts + tmp) / 2) as usize; // s + m'
        let d = ((ts - tmp) / 2) as usize; // s − m'
        let mm = (tmp - tm) / 2; // m' − m

        let prefactor = (factorials[a] * factorials[b] * factorials[c] * factorials[d]).sqrt();

        let k_lo = 0.max(-mm) as usize;
        let k_hi = a.min(d);
        let mut sum = T::zero();
        for k in k_lo..=k_hi {
            let denom = factorials[a - k]
                * factorials[k]
                * factorials[(mm + k as i64) as usize]
                * factorials[d - k];
            let cos_pow = (ts + (tm - tmp) / 2) as i32 - 2 * k as i32;
            let sin_pow = mm as i32 + 2 * k as i32;
            let term = cos_half.powi(cos_pow) * sin_half.powi(sin_pow) / denom;
            if (mm + k as i64) % 2 == 0 {
                sum = sum + term;
            } else {
                sum = sum - term;
            }
        }
        prefactor * sum
    })
}

/// The normalized eigenstate of n̂·S⃗ = sinθcosφ S_x + sinθsinφ S_y + cosθ S_z
/// with eigenvalue m, phase fixed by the state-vector convention.
pub fn axis_eigenstate<T: Scalar>(
    spin: Spin,
    twice_m: i32,
    axis: Axis<T>,
) -> Result<StateVector<T>> {
    let col = spin.index_of(twice_m)?;
    let d = wigner_small_d(spin, axis.theta());
    let raw = Array1::from_shape_fn(spin.dim(), |row| {
        let m_row = spin.m_at::<T>(row);
        // R_z(φ) contributes e^{−i m' φ} on top of the d-matrix column.
        Complex::from_polar(T::one(), -m_row * axis.phi()) * d[(row, col)]
    });
    Ok(StateVector::normalized(raw)?.with_basis_axis(axis))
}

/// A state expanded in the eigenbasis of a spin component along `axis`:
/// amplitude pairs (twice_m, ⟨m|_axis·state) in descending-m order.
#[derive(Clone, Debug, PartialEq)]
pub struct Expansion<T: Scalar> {
    spin: Spin,
    axis: Axis<T>,
    amplitudes: Vec<(i32, Complex<T>)>,
}

impl<T: Scalar> Expansion<T> {
    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn axis(&self) -> Axis<T> {
        self.axis
    }

    pub fn amplitudes(&self) -> &[(i32, Complex<T>)] {
        &self.amplitudes
    }

    pub fn amplitude_of(&self, twice_m: i32) -> Option<Complex<T>> {
        self.amplitudes
            .iter()
            .find(|(tm, _)| *tm == twice_m)
            .map(|(_, a)| *a)
    }

    /// Born probabilities |amplitude|² in descending-m order.
    pub fn probabilities(&self) -> Vec<(i32, T)> {
        self.amplitudes
            .iter()
            .map(|(tm, a)| (*tm, a.norm_sqr()))
            .collect()
    }
}

impl<T: Scalar> Serialize for Expansion<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Amplitude {
            twice_m: i32,
            re: f64,
            im: f64,
        }
        let amplitudes: Vec<Amplitude> = self
            .amplitudes
            .iter()
            .map(|(tm, a)| Amplitude {
                twice_m: *tm,
                re: a.re.as_f64(),
                im: a.im.as_f64(),
            })
            .collect();
        let mut s = serializer.serialize_struct("Expansion", 3)?;
        s.serialize_field("spin", &self.spin)?;
        s.serialize_field("axis", &self.axis)?;
        s.serialize_field("amplitudes", &amplitudes)?;
        s.end()
    }
}

/// Expands a state in the eigenbasis of the spin component along `axis`.
pub fn expand<T: Scalar>(
    state: &StateVector<T>,
    spin: Spin,
    axis: Axis<T>,
) -> Result<Expansion<T>> {
    if state.dim() != spin.dim() {
        return Err(Error::DimensionMismatch {
            expected: spin.dim(),
            actual: state.dim(),
        });
    }
    let mut amplitudes = Vec::with_capacity(spin.dim());
    for twice_m in spin.spectrum() {
        let eigenstate = axis_eigenstate(spin, twice_m, axis)?;
        amplitudes.push((twice_m, eigenstate.inner(state)?));
    }
    Ok(Expansion {
        spin,
        axis,
        amplitudes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn d_at_zero_is_identity() {
        for twice_s in 0..=10 {
            let d = wigner_small_d::<f64>(Spin::new(twice_s), 0.0);
            for i in 0..=twice_s as usize {
                for j in 0..=twice_s as usize {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((d[(i, j)] - expected).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn d_spin_2_pi_half_stretched_column() {
        let d = wigner_small_d::<f64>(Spin::new(4), FRAC_PI_2);
        let expected = [0.25, 0.5, 6.0f64.sqrt() / 4.0, 0.5, 0.25];
        for (i, e) in expected.iter().enumerate() {
            assert!(
                (d[(i, 0)] - e).abs() < 1e-14,
                "entry {i}: {} vs {e}",
                d[(i, 0)]
            );
        }
    }

    #[test]
    fn axis_normalization_wraps_angles() {
        let a = Axis::<f64>::new(-FRAC_PI_2, 0.0);
        assert!((a.theta() - FRAC_PI_2).abs() < 1e-15);
        assert!((a.phi() - PI).abs() < 1e-15);
        let b = Axis::<f64>::new(PI + 0.3, 0.1);
        assert!(b.theta() <= PI && b.theta() >= 0.0);
        assert!(b.phi() >= 0.0 && b.phi() < 2.0 * PI);
    }

    #[test]
    fn named_axes_have_labels() {
        assert_eq!(Axis::<f64>::x().label(), Some(AxisLabel::X));
        assert_eq!(Axis::<f64>::y().label(), Some(AxisLabel::Y));
        assert_eq!(Axis::<f64>::z().label(), Some(AxisLabel::Z));
        assert_eq!(Axis::<f64>::new(0.3, 0.4).label(), None);
    }

    #[test]
    fn angle_between_named_axes_is_pi_half() {
        let x = Axis::<f64>::x();
        let y = Axis::<f64>::y();
        let z = Axis::<f64>::z();
        assert!((x.angle_to(&z) - FRAC_PI_2).abs() < 1e-15);
        assert!((x.angle_to(&y) - FRAC_PI_2).abs() < 1e-15);
        assert!(x.angle_to(&x).abs() < 1e-7);
    }

    #[test]
    fn z_eigenstate_is_unit_vector() {
        for twice_s in [1, 2, 4, 7] {
            let spin = Spin::new(twice_s);
            let v = axis_eigenstate::<f64>(spin, twice_s as i32, Axis::z()).unwrap();
            assert!((v.amplitude(0).re - 1.0).abs() < 1e-14);
            for i in 1..spin.dim() {
                assert!(v.amplitude(i).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn spin_half_x_eigenstate() {
        let v = axis_eigenstate::<f64>(Spin::new(1), 1, Axis::x()).unwrap();
        let r = 0.5f64.sqrt();
        assert!((v.amplitude(0).re - r).abs() < 1e-14);
        assert!((v.amplitude(1).re - r).abs() < 1e-14);
        assert!(v.amplitude(0).im.abs() < 1e-14);
        assert!(v.amplitude(1).im.abs() < 1e-14);
    }

    #[test]
    fn eigenstate_rejects_m_outside_spectrum() {
        assert!(matches!(
            axis_eigenstate::<f64>(Spin::new(4), 6, Axis::x()),
            Err(Error::OutsideSpectrum { .. })
        ));
    }

    #[test]
    fn self_expansion_is_a_unit_amplitude() {
        let spin = Spin::new(4);
        let v = axis_eigenstate::<f64>(spin, 4, Axis::x()).unwrap();
        let e = expand(&v, spin, Axis::x()).unwrap();
        assert!((e.amplitude_of(4).unwrap().re - 1.0).abs() < 1e-12);
        for twice_m in [2, 0, -2, -4] {
            assert!(e.amplitude_of(twice_m).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn expand_rejects_dimension_mismatch() {
        let v = StateVector::<f64>::basis_state(Spin::new(2), 2).unwrap();
        assert!(matches!(
            expand(&v, Spin::new(4), Axis::z()),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}

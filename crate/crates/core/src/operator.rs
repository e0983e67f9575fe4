//! Spin component operators as dense complex matrices in the S_z eigenbasis.

use std::fmt;

use ndarray::{Array1, Array2};
use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spin::Spin;
use crate::state::StateVector;

/// Physical units of the matrix entries, with ħ = 1 internally.
///
/// Products beyond ħ² (e.g. the commutator of two squared components, ħ⁴)
/// are tracked by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Units {
    Hbar,
    HbarSquared,
}

impl fmt::Display for Units {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Units::Hbar => write!(f, "ħ"),
            Units::HbarSquared => write!(f, "ħ²"),
        }
    }
}

/// Dense complex square matrix representing an observable in the S_z
/// eigenbasis, rows and columns ordered m = +s, s−1, …, −s.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix<T: Scalar> {
    entries: Array2<Complex<T>>,
    units: Units,
}

impl<T: Scalar> OperatorMatrix<T> {
    pub fn from_fn(dim: usize, units: Units, f: impl FnMut((usize, usize)) -> Complex<T>) -> Self {
        OperatorMatrix {
            entries: Array2::from_shape_fn((dim, dim), f),
            units,
        }
    }

    pub fn identity(dim: usize, units: Units) -> Self {
        Self::from_fn(dim, units, |(i, j)| {
            if i == j {
                Complex::new(T::one(), T::zero())
            } else {
                Complex::new(T::zero(), T::zero())
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn units(&self) -> Units {
        self.units
    }

    pub fn entries(&self) -> &Array2<Complex<T>> {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[(row, col)]
    }

    /// Matrix product. Units: ħ · ħ = ħ²; any further power is tracked by
    /// the caller and the tag keeps the left operand's value.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: rhs.dim(),
            });
        }
        let units = match (self.units, rhs.units) {
            (Units::Hbar, Units::Hbar) => Units::HbarSquared,
            _ => self.units,
        };
        Ok(OperatorMatrix {
            entries: self.entries.dot(&rhs.entries),
            units,
        })
    }

    pub fn square(&self) -> Self {
        self.matmul(self).expect("same dimensions")
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: rhs.dim(),
            });
        }
        Ok(OperatorMatrix {
            entries: &self.entries + &rhs.entries,
            units: self.units,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: rhs.dim(),
            });
        }
        Ok(OperatorMatrix {
            entries: &self.entries - &rhs.entries,
            units: self.units,
        })
    }

    pub fn scaled(&self, factor: Complex<T>) -> Self {
        OperatorMatrix {
            entries: self.entries.mapv(|e| e * factor),
            units: self.units,
        }
    }

    /// Largest absolute value over all entries.
    pub fn max_abs(&self) -> T {
        self.entries
            .iter()
            .map(|e| e.norm())
            .fold(T::zero(), T::max)
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let diff = self.entries[(i, j)] - self.entries[(j, i)].conj();
                if diff.norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Entrywise distance to another matrix of the same dimension.
    pub fn max_abs_diff(&self, rhs: &Self) -> T {
        debug_assert_eq!(self.dim(), rhs.dim());
        self.entries
            .iter()
            .zip(rhs.entries.iter())
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    /// Matrix-vector product on a raw amplitude vector, no renormalization.
    pub fn apply_raw(&self, amplitudes: &Array1<Complex<T>>) -> Result<Array1<Complex<T>>> {
        if amplitudes.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: amplitudes.len(),
            });
        }
        Ok(self.entries.dot(amplitudes))
    }
}

/// The three spin component operators (S_x, S_y, S_z) for a spin-s particle,
/// in units of ħ.
///
/// S_z is diagonal with entries s, s−1, …, −s; S_x = (S₊ + S₋)/2 and
/// S_y = (S₊ − S₋)/(2i) are built from the ladder operators with the
/// Condon-Shortley phase convention (real non-negative ladder elements),
/// ⟨m±1|S±|m⟩ = √(s(s+1) − m(m±1)).
pub fn spin_operators<T: Scalar>(
    spin: Spin,
) -> (OperatorMatrix<T>, OperatorMatrix<T>, OperatorMatrix<T>) {
    let dim = spin.dim();
    let zero = Complex::new(T::zero(), T::zero());

    let mut sx = Array2::from_elem((dim, dim), zero);
    let mut sy = Array2::from_elem((dim, dim), zero);
    let mut sz = Array2::from_elem((dim, dim), zero);

    let ts = i64::from(spin.twice_s());
    for i in 0..dim {
        sz[(i, i)] = Complex::new(spin.m_at::<T>(i), T::zero());
        if i > 0 {
            // Raising element connecting |m⟩ (index i) to |m+1⟩ (index i−1):
            // s(s+1) − m(m+1) = [twice_s(twice_s+2) − twice_m(twice_m+2)] / 4.
            let tm = i64::from(spin.twice_m_at(i));
            let quad = ts * (ts + 2) - tm * (tm + 2);
            let ladder = T::of(quad as f64).sqrt() / T::of(2.0);
            let half = ladder / T::of(2.0);
            sx[(i - 1, i)] = Complex::new(half, T::zero());
            sx[(i, i - 1)] = Complex::new(half, T::zero());
            sy[(i - 1, i)] = Complex::new(T::zero(), -half);
            sy[(i, i - 1)] = Complex::new(T::zero(), half);
        }
    }

    let wrap = |entries| OperatorMatrix {
        entries,
        units: Units::Hbar,
    };
    (wrap(sx), wrap(sy), wrap(sz))
}

/// The total spin operator S² = S_x² + S_y² + S_z², in units of ħ².
///
/// Equals s(s+1) times the identity; the construction goes through the
/// component matrices so the identity is computed, not assumed.
pub fn casimir<T: Scalar>(spin: Spin) -> OperatorMatrix<T> {
    let (sx, sy, sz) = spin_operators::<T>(spin);
    sx.square()
        .add(&sy.square())
        .and_then(|m| m.add(&sz.square()))
        .expect("same dimensions")
}

/// The commutator AB − BA. The units tag keeps A's value; physical powers
/// of ħ beyond ħ² are tracked by the caller.
pub fn commutator<T: Scalar>(
    a: &OperatorMatrix<T>,
    b: &OperatorMatrix<T>,
) -> Result<OperatorMatrix<T>> {
    a.matmul(b)?.sub(&b.matmul(a)?)
}

/// Applies an operator to a state, returning the raw amplitude vector
/// without renormalization.
pub fn matrix_apply<T: Scalar>(
    a: &OperatorMatrix<T>,
    v: &StateVector<T>,
) -> Result<Array1<Complex<T>>> {
    a.apply_raw(v.amplitudes())
}

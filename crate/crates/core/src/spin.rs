//! Spin quantum numbers and their magnetic spectra.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Spin quantum number s, stored exactly as twice its value so that
/// half-integer spins need no floating point. The Hilbert-space dimension
/// is 2s + 1 and the magnetic quantum numbers are m = s, s−1, …, −s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Spin {
    twice_s: u32,
}

impl Spin {
    pub fn new(twice_s: u32) -> Self {
        Spin { twice_s }
    }

    pub fn twice_s(&self) -> u32 {
        self.twice_s
    }

    /// Hilbert-space dimension 2s + 1.
    pub fn dim(&self) -> usize {
        self.twice_s as usize + 1
    }

    /// The quantum number s as a scalar.
    pub fn s<T: Scalar>(&self) -> T {
        T::of(f64::from(self.twice_s) / 2.0)
    }

    /// Doubled magnetic quantum numbers in descending order:
    /// twice_s, twice_s − 2, …, −twice_s.
    pub fn spectrum(&self) -> impl Iterator<Item = i32> {
        let ts = self.twice_s as i32;
        (-ts..=ts).rev().step_by(2)
    }

    pub fn contains(&self, twice_m: i32) -> bool {
        let ts = self.twice_s as i32;
        twice_m.abs() <= ts && (twice_m - ts) % 2 == 0
    }

    /// Row/column index of twice_m in the descending-m ordering.
    pub fn index_of(&self, twice_m: i32) -> Result<usize> {
        if !self.contains(twice_m) {
            return Err(Error::OutsideSpectrum {
                twice_m,
                twice_s: self.twice_s,
            });
        }
        Ok(((self.twice_s as i32 - twice_m) / 2) as usize)
    }

    /// Doubled magnetic quantum number at a given index.
    pub fn twice_m_at(&self, index: usize) -> i32 {
        debug_assert!(index < self.dim());
        self.twice_s as i32 - 2 * index as i32
    }

    /// The magnetic quantum number at `index` as a scalar.
    pub fn m_at<T: Scalar>(&self, index: usize) -> T {
        T::of(f64::from(self.twice_m_at(index)) / 2.0)
    }
}

impl TryFrom<i64> for Spin {
    type Error = Error;

    fn try_from(twice_s: i64) -> Result<Self> {
        u32::try_from(twice_s)
            .map(Spin::new)
            .map_err(|_| Error::NegativeSpin(twice_s))
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", half_integer_string(i64::from(self.twice_s)))
    }
}

/// Renders a doubled quantum number as "2", "-1" or "3/2", "-1/2".
pub fn half_integer_string(twice: i64) -> String {
    if twice % 2 == 0 {
        (twice / 2).to_string()
    } else {
        format!("{twice}/2")
    }
}

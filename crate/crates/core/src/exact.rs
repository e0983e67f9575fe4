//! Exact rational probabilities for measurements between axes at relative
//! angle π/2.
//!
//! At β = π/2 every half-angle factor is 1/√2, so the squared small-d
//! entries are rational: |d^s_{m',m}(π/2)|² = F·S²/2^{2s} with
//! F = (s+m)!(s−m)!(s+m')!(s−m')! and S the alternating factorial sum of
//! the d formula. The computation runs over big integers and reduces to a
//! 64-bit fraction; for the stretched column it collapses to the binomial
//! form C(2s, s+m')/2^{2s}.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spin::Spin;

/// Largest twice_s accepted by the exact path; factorial growth beyond this
/// is pointless at desk scale.
pub const MAX_EXACT_TWICE_S: u32 = 30;

/// A probability as a reduced fraction num/den with den ≥ 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExactProb {
    num: u64,
    den: u64,
}

impl ExactProb {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::ExactOverflow);
        }
        let g = gcd(num, den);
        Ok(ExactProb {
            num: num / g,
            den: den / g,
        })
    }

    pub fn zero() -> Self {
        ExactProb { num: 0, den: 1 }
    }

    pub fn one() -> Self {
        ExactProb { num: 1, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn to_scalar<T: Scalar>(&self) -> T {
        T::of(self.num as f64 / self.den as f64)
    }

    /// Exact product, erroring if the reduced result overflows u64.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let g1 = gcd(self.num, rhs.den);
        let g2 = gcd(rhs.num, self.den);
        let num = u128::from(self.num / g1) * u128::from(rhs.num / g2);
        let den = u128::from(self.den / g2) * u128::from(rhs.den / g1);
        from_u128(num, den)
    }

    /// Exact sum, erroring if the reduced result overflows u64.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        let num =
            u128::from(self.num) * u128::from(rhs.den) + u128::from(rhs.num) * u128::from(self.den);
        let den = u128::from(self.den) * u128::from(rhs.den);
        from_u128(num, den)
    }
}

impl fmt::Display for ExactProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

// gcd(0, b) = b, so zero numerators reduce to 0/1. Denominators are
// always positive here, so gcd(0, 0) never arises.
fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn from_u128(num: u128, den: u128) -> Result<ExactProb> {
    if den == 0 {
        return Err(Error::ExactOverflow);
    }
    let g = gcd128(num, den);
    let num = num / g;
    let den = den / g;
    if den == 0 || num > den {
        return Err(Error::ExactOverflow);
    }
    match (u64::try_from(num), u64::try_from(den)) {
        (Ok(n), Ok(d)) => Ok(ExactProb { num: n, den: d }),
        _ => Err(Error::ExactOverflow),
    }
}

fn big_factorial(n: usize) -> BigInt {
    let mut acc = BigInt::from(1u32);
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// The exact rational probability |d^s_{m_to, m_from}(π/2)|² of measuring
/// m_to along an axis at angle π/2 from the axis on which the state is the
/// m_from eigenstate.
///
/// Must agree with the squared floating-point small-d entry within 1e−12;
/// the property suite asserts this for every entry up to s = 5.
pub fn exact_pi_half_probability(spin: Spin, twice_m_from: i32, twice_m_to: i32) -> Result<ExactProb> {
    if spin.twice_s() > MAX_EXACT_TWICE_S {
        return Err(Error::SpinTooLarge {
            twice_s: spin.twice_s(),
            max_twice_s: MAX_EXACT_TWICE_S,
        });
    }
    spin.index_of(twice_m_from)?;
    spin.index_of(twice_m_to)?;

    let ts = i64::from(spin.twice_s());
    let a = ((ts + i64::from(twice_m_from)) / 2) as usize; // s + m
    let b = ((ts - i64::from(twice_m_from)) / 2) as usize; // s − m
    let c = ((ts + i64::from(twice_m_to)) / 2) as usize; // s + m'
    let d = ((ts - i64::from(twice_m_to)) / 2) as usize; // s − m'
    let mm = (i64::from(twice_m_to) - i64::from(twice_m_from)) / 2; // m' − m

    let k_lo = 0.max(-mm) as usize;
    let k_hi = a.min(d);
    let mut sum = BigRational::zero();
    for k in k_lo..=k_hi {
        let denom = big_factorial(a - k)
            * big_factorial(k)
            * big_factorial((mm + k as i64) as usize)
            * big_factorial(d - k);
        let term = BigRational::new(BigInt::from(1u32), denom);
        if (mm + k as i64) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }

    let f = big_factorial(a) * big_factorial(b) * big_factorial(c) * big_factorial(d);
    let power = BigInt::from(1u32) << spin.twice_s(); // 2^{2s}
    let prob = &sum * &sum * BigRational::new(f, power);

    debug_assert!(!prob.is_negative());
    let num = prob.numer().magnitude().to_u64().ok_or(Error::ExactOverflow)?;
    let den = prob.denom().magnitude().to_u64().ok_or(Error::ExactOverflow)?;
    ExactProb::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_2_stretched_probabilities() {
        let spin = Spin::new(4);
        let p = |to| exact_pi_half_probability(spin, 4, to).unwrap();
        assert_eq!(p(4), ExactProb::new(1, 16).unwrap());
        assert_eq!(p(2), ExactProb::new(1, 4).unwrap());
        assert_eq!(p(0), ExactProb::new(3, 8).unwrap());
        assert_eq!(p(-2), ExactProb::new(1, 4).unwrap());
        assert_eq!(p(-4), ExactProb::new(1, 16).unwrap());
    }

    #[test]
    fn spin_half_is_a_coin() {
        let p = exact_pi_half_probability(Spin::new(1), 1, 1).unwrap();
        assert_eq!(p, ExactProb::new(1, 2).unwrap());
    }

    #[test]
    fn rows_sum_to_one() {
        for twice_s in [0u32, 1, 3, 4, 8] {
            let spin = Spin::new(twice_s);
            for from in spin.spectrum() {
                let mut total = ExactProb::zero();
                for to in spin.spectrum() {
                    total = total
                        .add(&exact_pi_half_probability(spin, from, to).unwrap())
                        .unwrap();
                }
                assert_eq!(total, ExactProb::one(), "twice_s={twice_s}, from={from}");
            }
        }
    }

    #[test]
    fn rejects_m_outside_spectrum() {
        assert!(exact_pi_half_probability(Spin::new(4), 3, 0).is_err());
        assert!(exact_pi_half_probability(Spin::new(4), 4, 6).is_err());
    }

    #[test]
    fn rejects_spin_beyond_bound() {
        let spin = Spin::new(MAX_EXACT_TWICE_S + 2);
        assert!(matches!(
            exact_pi_half_probability(spin, 0, 0),
            Err(Error::SpinTooLarge { .. })
        ));
    }

    #[test]
    fn fraction_arithmetic_reduces() {
        let half = ExactProb::new(2, 4).unwrap();
        assert_eq!(half, ExactProb::new(1, 2).unwrap());
        let q = half.mul(&half).unwrap();
        assert_eq!(q, ExactProb::new(1, 4).unwrap());
        assert_eq!(q.add(&q).unwrap(), half);
        assert_eq!(ExactProb::new(1, 16).unwrap().to_string(), "1/16");
    }
}

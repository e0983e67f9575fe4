//! Pearson chi-square goodness-of-fit test at significance 0.001.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Upper critical values of the chi-square distribution at significance
/// 0.001 for 1..=10 degrees of freedom.
const CRITICAL_P001: [f64; 10] = [
    10.8276, 13.8155, 16.2662, 18.4668, 20.5150, 22.4577, 24.3219, 26.1245, 27.8772, 29.5883,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GofResult<T: Scalar> {
    pub statistic: T,
    pub degrees: usize,
    pub pass: bool,
}

/// Pearson chi-square test of observed counts against expected
/// probabilities. Bins with expected count below 5 are pooled with their
/// successors in the given order (a trailing small remainder merges into
/// the last pooled bin); pass means the statistic is below the 0.001
/// critical value for the pooled degrees of freedom.
pub fn chi_square_gof<T: Scalar>(
    observed: &[u64],
    expected: &[T],
    shots: u64,
) -> Result<GofResult<T>> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    if observed.len() != expected.len() {
        return Err(Error::BinCountMismatch {
            observed: observed.len(),
            expected: expected.len(),
        });
    }
    let total: f64 = expected.iter().map(|p| p.as_f64()).sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::ExpectedNotNormalized(total));
    }

    let shots_f = shots as f64;
    let mut pooled: Vec<(f64, f64)> = Vec::new(); // (observed, expected count)
    let mut acc_obs = 0.0;
    let mut acc_exp = 0.0;
    for (o, p) in observed.iter().zip(expected.iter()) {
        acc_obs += *o as f64;
        acc_exp += p.as_f64() * shots_f;
        if acc_exp >= 5.0 {
            pooled.push((acc_obs, acc_exp));
            acc_obs = 0.0;
            acc_exp = 0.0;
        }
    }
    if acc_exp > 0.0 || acc_obs > 0.0 {
        if let Some(last) = pooled.last_mut() {
            last.0 += acc_obs;
            last.1 += acc_exp;
        } else {
            pooled.push((acc_obs, acc_exp));
        }
    }

    let statistic: f64 = pooled
        .iter()
        .map(|(o, e)| {
            let diff = o - e;
            diff * diff / e
        })
        .sum();
    let degrees = pooled.len() - 1;

    let pass = if degrees == 0 {
        statistic < 1e-9
    } else if degrees <= CRITICAL_P001.len() {
        statistic <= CRITICAL_P001[degrees - 1]
    } else {
        return Err(Error::DegreesOfFreedomOutOfRange(degrees));
    };

    Ok(GofResult {
        statistic: T::of(statistic),
        degrees,
        pass,
    })
}

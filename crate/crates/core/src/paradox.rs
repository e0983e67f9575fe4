//! Consistency of pre-existing value assignments with the operator algebra.
//!
//! A spin-s particle measured along two orthogonal axes can return the
//! maximum modulus sħ on both. If those outcomes revealed pre-existing
//! values that persist, the squares would already sum to 2s²ħ², yet a
//! measurement of S² = S_x² + S_y² + S_z² must give s(s+1)ħ². Whenever
//! 2s² > s(s+1), i.e. s > 1, no assignment of spectrum values to the three
//! components can satisfy the sum rule with both |v_x| and |v_z| maximal —
//! even though the operator identity S² = s(s+1)·Identity holds exactly.
//!
//! All assignment arithmetic is exact: quantum numbers are stored doubled,
//! squares are compared in quarter units, so no floating-point equality is
//! involved.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{exact_pi_half_probability, ExactProb};
use crate::operator::{commutator, spin_operators};
use crate::scalar::{composed_tolerance, Scalar};
use crate::spin::Spin;

/// Enumeration bound: the assignment cube has (2s+1)³ points, kept at desk
/// scale by capping at s = 10.
pub const MAX_ENUMERATION_TWICE_S: u32 = 20;

/// A candidate triple of pre-existing values (v_x, v_y, v_z) for the three
/// spin components, in units of ħ, each drawn from the spin spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub twice_vx: i32,
    pub twice_vy: i32,
    pub twice_vz: i32,
}

/// Constraint an assignment must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssignmentMode {
    /// v_x² + v_y² + v_z² = s(s+1) exactly, all three values from the
    /// spectrum: the noncontextual sum rule.
    ExactSumRule,
    /// v_x² + v_z² ≤ s(s+1), ignoring v_y beyond v_y² ≥ 0: the weaker
    /// requirement used by the inequality argument.
    PositivityBound,
}

/// Outcome of the paradox condition 2s² > s(s+1) for one spin value.
///
/// `lhs` and `rhs` are exact in f64 (quarter-integer values), `violated`
/// is decided in integer arithmetic, and `joint_probability` is the exact
/// chance of observing the maximal outcome on both of two orthogonal axes
/// starting from the first axis' stretched eigenstate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParadoxReport {
    pub spin: Spin,
    /// 2s², units ħ².
    pub lhs: f64,
    /// s(s+1), units ħ².
    pub rhs: f64,
    pub violated: bool,
    /// s(s+1) − 2s²: what v_y² would have to be; negative exactly when the
    /// condition is violated.
    pub min_sy_squared_needed: f64,
    /// |⟨s|_second ⟨s|_first⟩|² = 1/4^s for orthogonal axes.
    pub joint_probability: ExactProb,
}

impl Serialize for ParadoxReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ParadoxReport", 6)?;
        s.serialize_field("twice_s", &self.spin.twice_s())?;
        s.serialize_field("lhs", &self.lhs)?;
        s.serialize_field("rhs", &self.rhs)?;
        s.serialize_field("violated", &self.violated)?;
        s.serialize_field("min_sy_squared_needed", &self.min_sy_squared_needed)?;
        s.serialize_field("joint_probability", &self.joint_probability)?;
        s.end()
    }
}

/// Evaluates the paradox condition 2s² > s(s+1) for one spin.
pub fn paradox_condition(spin: Spin) -> Result<ParadoxReport> {
    let ts = i64::from(spin.twice_s());
    // In quarter units: 4·2s² = 2·ts², 4·s(s+1) = ts(ts+2).
    let lhs_quarters = 2 * ts * ts;
    let rhs_quarters = ts * (ts + 2);
    let violated = lhs_quarters > rhs_quarters;
    let joint_probability =
        exact_pi_half_probability(spin, spin.twice_s() as i32, spin.twice_s() as i32)?;
    Ok(ParadoxReport {
        spin,
        lhs: lhs_quarters as f64 / 4.0,
        rhs: rhs_quarters as f64 / 4.0,
        violated,
        min_sy_squared_needed: (rhs_quarters - lhs_quarters) as f64 / 4.0,
        joint_probability,
    })
}

/// All assignments in the (2s+1)³ cube satisfying the mode's constraint.
/// Arithmetic is exact over quarter units.
pub fn enumerate_assignments(spin: Spin, mode: AssignmentMode) -> Result<Vec<Assignment>> {
    if spin.twice_s() > MAX_ENUMERATION_TWICE_S {
        return Err(Error::SpinTooLarge {
            twice_s: spin.twice_s(),
            max_twice_s: MAX_ENUMERATION_TWICE_S,
        });
    }
    let casimir_quarters = i64::from(spin.twice_s()) * (i64::from(spin.twice_s()) + 2);
    let mut assignments = Vec::new();
    for twice_vx in spin.spectrum() {
        for twice_vy in spin.spectrum() {
            for twice_vz in spin.spectrum() {
                let sq = |v: i32| i64::from(v) * i64::from(v);
                let keep = match mode {
                    AssignmentMode::ExactSumRule => {
                        sq(twice_vx) + sq(twice_vy) + sq(twice_vz) == casimir_quarters
                    }
                    AssignmentMode::PositivityBound => {
                        sq(twice_vx) + sq(twice_vz) <= casimir_quarters
                    }
                };
                if keep {
                    assignments.push(Assignment {
                        twice_vx,
                        twice_vy,
                        twice_vz,
                    });
                }
            }
        }
    }
    Ok(assignments)
}

/// Whether some exact-sum-rule assignment has |v_x| = |v_z| = s, i.e.
/// whether the two maximal sequential outcomes could both reveal
/// pre-existing values. Equals NOT paradox_condition(spin).violated.
pub fn max_max_assignment_feasible(spin: Spin) -> Result<bool> {
    let ts = spin.twice_s() as i32;
    Ok(enumerate_assignments(spin, AssignmentMode::ExactSumRule)?
        .iter()
        .any(|a| a.twice_vx.abs() == ts && a.twice_vz.abs() == ts))
}

/// Max absolute entry of [S_x², S_z²] (units ħ⁴) and whether it is nonzero.
pub fn von_neumann_witness<T: Scalar>(spin: Spin) -> (T, bool) {
    let (sx, _, sz) = spin_operators::<T>(spin);
    let comm = commutator(&sx.square(), &sz.square()).expect("same dimensions");
    let max_abs = comm.max_abs();
    (max_abs, max_abs > composed_tolerance::<T>())
}

/// Paradox reports for twice_s = 1, 2, …, twice_s_max in order.
pub fn paradox_scan(twice_s_max: u32) -> Result<Vec<ParadoxReport>> {
    if twice_s_max == 0 {
        return Err(Error::EmptyScan);
    }
    (1..=twice_s_max)
        .map(|ts| paradox_condition(Spin::new(ts)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_2_report() {
        let r = paradox_condition(Spin::new(4)).unwrap();
        assert_eq!(r.lhs, 8.0);
        assert_eq!(r.rhs, 6.0);
        assert!(r.violated);
        assert_eq!(r.min_sy_squared_needed, -2.0);
        assert_eq!(r.joint_probability, ExactProb::new(1, 16).unwrap());
    }

    #[test]
    fn spin_1_is_the_boundary() {
        let r = paradox_condition(Spin::new(2)).unwrap();
        assert_eq!(r.lhs, 2.0);
        assert_eq!(r.rhs, 2.0);
        assert!(!r.violated);
        assert_eq!(r.min_sy_squared_needed, 0.0);
    }

    #[test]
    fn spin_3_halves_is_the_lowest_violating_case() {
        let r = paradox_condition(Spin::new(3)).unwrap();
        assert_eq!(r.lhs, 4.5);
        assert_eq!(r.rhs, 3.75);
        assert!(r.violated);
    }

    #[test]
    fn scan_flags_flip_above_spin_1() {
        let reports = paradox_scan(4).unwrap();
        let flags: Vec<bool> = reports.iter().map(|r| r.violated).collect();
        assert_eq!(flags, vec![false, false, true, true]);
        assert!(matches!(paradox_scan(0), Err(Error::EmptyScan)));
        assert_eq!(paradox_scan(1).unwrap().len(), 1);
    }

    #[test]
    fn scan_joint_probability_is_stretched_binomial() {
        let reports = paradox_scan(10).unwrap();
        let s5 = &reports[9];
        assert_eq!(s5.joint_probability, ExactProb::new(1, 1024).unwrap());
        for r in &reports {
            assert!(!r.joint_probability.is_zero());
        }
    }

    #[test]
    fn spin_1_witness_triples() {
        let assignments = enumerate_assignments(Spin::new(2), AssignmentMode::ExactSumRule)
            .unwrap();
        let max_max: Vec<&Assignment> = assignments
            .iter()
            .filter(|a| a.twice_vx.abs() == 2 && a.twice_vz.abs() == 2)
            .collect();
        assert_eq!(max_max.len(), 4);
        for a in max_max {
            assert_eq!(a.twice_vy, 0);
        }
    }

    #[test]
    fn spin_half_all_eight_triples_qualify() {
        let assignments = enumerate_assignments(Spin::new(1), AssignmentMode::ExactSumRule)
            .unwrap();
        assert_eq!(assignments.len(), 8);
        for a in &assignments {
            assert_eq!(a.twice_vx.abs(), 1);
            assert_eq!(a.twice_vy.abs(), 1);
            assert_eq!(a.twice_vz.abs(), 1);
        }
    }

    #[test]
    fn spin_2_max_max_is_infeasible() {
        let assignments = enumerate_assignments(Spin::new(4), AssignmentMode::ExactSumRule)
            .unwrap();
        assert!(!assignments
            .iter()
            .any(|a| a.twice_vx.abs() == 4 && a.twice_vz.abs() == 4));
        assert!(!max_max_assignment_feasible(Spin::new(4)).unwrap());
        assert!(max_max_assignment_feasible(Spin::new(2)).unwrap());
        assert!(max_max_assignment_feasible(Spin::new(1)).unwrap());
    }

    #[test]
    fn feasibility_matches_paradox_condition() {
        for twice_s in 1..=MAX_ENUMERATION_TWICE_S {
            let spin = Spin::new(twice_s);
            let report = paradox_condition(spin).unwrap();
            let feasible = max_max_assignment_feasible(spin).unwrap();
            let s_above_one = twice_s > 2;
            assert_eq!(report.violated, s_above_one, "twice_s = {twice_s}");
            assert_eq!(feasible, !report.violated, "twice_s = {twice_s}");
        }
    }

    #[test]
    fn positivity_bound_is_weaker() {
        let spin = Spin::new(4);
        let strict = enumerate_assignments(spin, AssignmentMode::ExactSumRule).unwrap();
        let weak = enumerate_assignments(spin, AssignmentMode::PositivityBound).unwrap();
        assert!(weak.len() > strict.len());
        // The positivity bound also rules out the max-max pair for s = 2:
        // v_x² + v_z² = 8 > 6.
        assert!(!weak
            .iter()
            .any(|a| a.twice_vx.abs() == 4 && a.twice_vz.abs() == 4));
    }

    #[test]
    fn enumeration_bound_enforced() {
        assert!(matches!(
            enumerate_assignments(Spin::new(22), AssignmentMode::ExactSumRule),
            Err(Error::SpinTooLarge { .. })
        ));
    }

    #[test]
    fn commutator_witness() {
        let (max_half, nonzero_half) = von_neumann_witness::<f64>(Spin::new(1));
        assert!(max_half < 1e-12 && !nonzero_half);
        let (max_zero, nonzero_zero) = von_neumann_witness::<f64>(Spin::new(0));
        assert!(max_zero < 1e-12 && !nonzero_zero);
        let (max_two, nonzero_two) = von_neumann_witness::<f64>(Spin::new(4));
        // Largest entry is 2√6 ≈ 4.899.
        assert!((max_two - 2.0 * 6.0f64.sqrt()).abs() < 1e-12);
        assert!(nonzero_two);
    }
}

//! Born-rule distributions, projective collapse and seeded sampling of
//! sequential measurement chains.
//!
//! Sampling uses ChaCha8 (`rand_chacha`), seeded through `seed_from_u64`,
//! so counts are bit-reproducible across platforms. Outcomes are drawn by
//! inverse CDF over the descending-m ordering, with the uniform draw and
//! the cumulative walk both in f64 regardless of the scalar type.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rotation::{axis_eigenstate, expand, Axis};
use crate::scalar::{certainty_tolerance, impossible_probability, Scalar};
use crate::spin::{half_integer_string, Spin};
use crate::state::StateVector;

/// The pinned sequence generator: ChaCha8, seeded via `seed_from_u64`.
pub type SequenceRng = ChaCha8Rng;

/// Generator used by [`run_sequence`] for a given seed.
pub fn sequence_rng(seed: u64) -> SequenceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed for batch `index` when a run is sharded across workers:
/// base_seed + index, wrapping.
pub fn batch_seed(base_seed: u64, index: u64) -> u64 {
    base_seed.wrapping_add(index)
}

/// One sampled outcome: the measured axis, the outcome m (value mħ) and its
/// Born probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementRecord<T: Scalar> {
    pub axis: Axis<T>,
    pub twice_m: i32,
    pub probability: T,
}

/// Post-selection on one step of a sequence: keep only shots whose outcome
/// at `step` equals `twice_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub step: usize,
    pub twice_m: i32,
}

/// Born probabilities p_m = |⟨m|_axis·state|² in descending-m order.
pub fn born_distribution<T: Scalar>(
    state: &StateVector<T>,
    spin: Spin,
    axis: Axis<T>,
) -> Result<Vec<(i32, T)>> {
    Ok(expand(state, spin, axis)?.probabilities())
}

/// Projects onto the outcome twice_m along `axis`, returning the canonical
/// axis eigenstate (spin components are non-degenerate) and the Born
/// probability of the outcome.
///
/// Outcomes with probability below the impossible-outcome threshold
/// (1e−15 for f64) are errors rather than garbage states.
pub fn project<T: Scalar>(
    state: &StateVector<T>,
    spin: Spin,
    axis: Axis<T>,
    twice_m: i32,
) -> Result<(StateVector<T>, T)> {
    let eigenstate = axis_eigenstate(spin, twice_m, axis)?;
    let probability = eigenstate.inner(state)?.norm_sqr();
    if probability < impossible_probability::<T>() {
        return Err(Error::ImpossibleOutcome {
            twice_m,
            probability: probability.as_f64(),
        });
    }
    Ok((eigenstate, probability))
}

/// The outcome that is certain (probability ≥ 1 − 1e−10), if any.
///
/// Machine-checkable form of the criterion "predict with certainty, without
/// disturbance": a state returns m here exactly when it is an eigenstate of
/// the spin component along `axis`.
pub fn predictable_with_certainty<T: Scalar>(
    state: &StateVector<T>,
    spin: Spin,
    axis: Axis<T>,
) -> Result<Option<i32>> {
    let threshold = T::one() - certainty_tolerance::<T>();
    Ok(born_distribution(state, spin, axis)?
        .into_iter()
        .find(|(_, p)| *p >= threshold)
        .map(|(twice_m, _)| twice_m))
}

/// Inverse-CDF draw over probabilities in descending-m order. Walks the
/// cumulative sum and never returns a bin below the impossible-outcome
/// threshold.
fn sample_index(probabilities: &[f64], u: f64) -> usize {
    let floor = 1e-15;
    let mut acc = 0.0;
    let mut last_possible = 0;
    for (k, &p) in probabilities.iter().enumerate() {
        if p > floor {
            last_possible = k;
            acc += p;
            if u < acc {
                return k;
            }
        } else {
            acc += p;
        }
    }
    last_possible
}

/// Samples one measurement along `axis`, collapsing the state.
///
/// Deterministic given (state, axis, generator state).
pub fn sample_outcome<T: Scalar, R: Rng>(
    state: &StateVector<T>,
    spin: Spin,
    axis: Axis<T>,
    rng: &mut R,
) -> Result<(MeasurementRecord<T>, StateVector<T>)> {
    let distribution = born_distribution(state, spin, axis)?;
    let probs_f64: Vec<f64> = distribution.iter().map(|(_, p)| p.as_f64()).collect();
    let u: f64 = rng.random();
    let index = sample_index(&probs_f64, u);
    let (twice_m, probability) = distribution[index];
    let (collapsed, _) = project(state, spin, axis, twice_m)?;
    Ok((
        MeasurementRecord {
            axis,
            twice_m,
            probability,
        },
        collapsed,
    ))
}

/// Aggregated counts of outcome chains over repeated sequential runs.
///
/// Without conditioning Σcounts = shots; with conditioning Σcounts =
/// accepted and rejected shots are discarded, not re-rolled.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceStats<T: Scalar> {
    spin: Spin,
    axes: Vec<Axis<T>>,
    shots: u64,
    seed: u64,
    condition: Option<Condition>,
    accepted: u64,
    counts: BTreeMap<Vec<i32>, u64>,
}

impl<T: Scalar> SequenceStats<T> {
    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn axes(&self) -> &[Axis<T>] {
        &self.axes
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn condition(&self) -> Option<Condition> {
        self.condition
    }

    /// Number of shots that survived conditioning (= shots when
    /// unconditioned).
    pub fn accepted(&self) -> u64 {
        self.accepted
    }

    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.shots as f64
    }

    /// Counts keyed by full outcome chains (doubled quantum numbers).
    pub fn counts(&self) -> &BTreeMap<Vec<i32>, u64> {
        &self.counts
    }

    /// Chains and counts in descending lexicographic m order, the order
    /// used by serialized output.
    pub fn ordered_counts(&self) -> impl Iterator<Item = (&Vec<i32>, u64)> {
        self.counts.iter().rev().map(|(chain, count)| (chain, *count))
    }

    pub fn count_of(&self, chain: &[i32]) -> u64 {
        self.counts.get(chain).copied().unwrap_or(0)
    }

    /// Marginal outcome counts at one step of the chain.
    pub fn marginal(&self, step: usize) -> Result<BTreeMap<i32, u64>> {
        if step >= self.axes.len() {
            return Err(Error::ConditionStepOutOfRange {
                step,
                len: self.axes.len(),
            });
        }
        let mut marginal = BTreeMap::new();
        for (chain, count) in &self.counts {
            *marginal.entry(chain[step]).or_insert(0) += count;
        }
        Ok(marginal)
    }

    /// Merges two batches of the same experiment (same spin, axes and
    /// condition). Counts, shots and accepted add; the seed of `self` is
    /// kept, so callers merging derived-seed batches should merge in batch
    /// order starting from the base-seed batch.
    pub fn merge(mut self, other: Self) -> Result<Self> {
        if self.spin != other.spin {
            return Err(Error::IncompatibleStats("different spins".into()));
        }
        if self.axes != other.axes {
            return Err(Error::IncompatibleStats("different axis sequences".into()));
        }
        if self.condition != other.condition {
            return Err(Error::IncompatibleStats("different conditions".into()));
        }
        self.shots += other.shots;
        self.accepted += other.accepted;
        for (chain, count) in other.counts {
            *self.counts.entry(chain).or_insert(0) += count;
        }
        Ok(self)
    }

    /// CSV rows "chain,count" with chains as space-separated m values,
    /// descending lexicographic order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("chain,count\n");
        for (chain, count) in self.ordered_counts() {
            let chain_str: Vec<String> = chain
                .iter()
                .map(|tm| half_integer_string(i64::from(*tm)))
                .collect();
            out.push_str(&format!("{},{}\n", chain_str.join(" "), count));
        }
        out
    }
}

impl<T: Scalar> Serialize for SequenceStats<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct ChainCount<'a> {
            chain: &'a [i32],
            count: u64,
        }
        let counts: Vec<ChainCount> = self
            .ordered_counts()
            .map(|(chain, count)| ChainCount { chain, count })
            .collect();
        let mut s = serializer.serialize_struct("SequenceStats", 7)?;
        s.serialize_field("spin", &self.spin)?;
        s.serialize_field("axes", &self.axes)?;
        s.serialize_field("shots", &self.shots)?;
        s.serialize_field("seed", &self.seed)?;
        s.serialize_field("condition", &self.condition)?;
        s.serialize_field("accepted", &self.accepted)?;
        s.serialize_field("counts", &counts)?;
        s.end()
    }
}

/// Runs the measurement chain `shots` times from `initial`: sample at
/// axes[0], collapse, sample at axes[1], … Conditioned shots that mismatch
/// are discarded at the conditioned step (they still count toward `shots`).
/// Fully reproducible from the seed.
pub fn run_sequence<T: Scalar>(
    spin: Spin,
    initial: &StateVector<T>,
    axes: &[Axis<T>],
    shots: u64,
    seed: u64,
    condition: Option<Condition>,
) -> Result<SequenceStats<T>> {
    if axes.is_empty() {
        return Err(Error::EmptySequence);
    }
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    if initial.dim() != spin.dim() {
        return Err(Error::DimensionMismatch {
            expected: spin.dim(),
            actual: initial.dim(),
        });
    }
    if let Some(c) = condition {
        if c.step >= axes.len() {
            return Err(Error::ConditionStepOutOfRange {
                step: c.step,
                len: axes.len(),
            });
        }
        spin.index_of(c.twice_m)?;
    }

    // The state after any step is a canonical axis eigenstate, so the chain
    // is Markov over outcome indices. Precomputing the first-step
    // distribution and the per-step transition rows uses exactly the
    // probabilities sample_outcome would see shot by shot.
    let first: Vec<f64> = born_distribution(initial, spin, axes[0])?
        .iter()
        .map(|(_, p)| p.as_f64())
        .collect();
    let mut transitions: Vec<Vec<Vec<f64>>> = Vec::with_capacity(axes.len() - 1);
    for step in 1..axes.len() {
        let mut rows = Vec::with_capacity(spin.dim());
        for twice_m in spin.spectrum() {
            let eigenstate = axis_eigenstate(spin, twice_m, axes[step - 1])?;
            let row: Vec<f64> = born_distribution(&eigenstate, spin, axes[step])?
                .iter()
                .map(|(_, p)| p.as_f64())
                .collect();
            rows.push(row);
        }
        transitions.push(rows);
    }

    let mut rng = sequence_rng(seed);
    let mut counts: BTreeMap<Vec<i32>, u64> = BTreeMap::new();
    let mut accepted = 0u64;

    for _ in 0..shots {
        let mut chain = Vec::with_capacity(axes.len());
        let mut index = sample_index(&first, rng.random());
        chain.push(spin.twice_m_at(index));
        let mut discarded = false;
        if let Some(c) = condition {
            if c.step == 0 && chain[0] != c.twice_m {
                discarded = true;
            }
        }
        if !discarded {
            for (step, rows) in transitions.iter().enumerate() {
                index = sample_index(&rows[index], rng.random());
                chain.push(spin.twice_m_at(index));
                if let Some(c) = condition {
                    if c.step == step + 1 && chain[step + 1] != c.twice_m {
                        discarded = true;
                        break;
                    }
                }
            }
        }
        if !discarded {
            accepted += 1;
            *counts.entry(chain).or_insert(0) += 1;
        }
    }

    Ok(SequenceStats {
        spin,
        axes: axes.to_vec(),
        shots,
        seed,
        condition,
        accepted,
        counts,
    })
}

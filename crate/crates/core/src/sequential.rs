//! Joint outcome statistics of sequential projective measurements.
//!
//! Measurements at the performed time slots are modelled with Heisenberg
//! picture projectors and Lüders collapse, so the probability of an outcome
//! string is `Tr[Π_k … Π_1 ρ Π_1 … Π_k]`. Sequential correlators are
//! available two ways: the explicit `2^k`-term outcome sum and the nested
//! anticommutator trace. The two must agree.

use std::fmt;

use crate::error::{LgError, Result};
use crate::qubit::{projector_unchecked, Operator, Outcome, Schedule, ALGEBRA_TOL};

/// Largest number of measurements whose outcome strings are enumerated.
pub const MAX_ENUMERATION: usize = 24;

/// Slack allowed on a raw probability before it is reported as an
/// internal-consistency failure instead of being clamped.
pub const PROBABILITY_SLACK: f64 = 1e-9;

/// Sorted, distinct, 1-based time indices at which a measurement is performed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MeasurementSet(Vec<usize>);

impl MeasurementSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(LgError::domain("measurement set is empty"));
        }
        if indices[0] == 0 {
            return Err(LgError::domain("time indices are 1-based"));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LgError::domain(format!(
                "time indices {indices:?} are not strictly increasing"
            )));
        }
        Ok(MeasurementSet(indices))
    }

    /// All slots `1..=n`.
    pub fn full(n: usize) -> Result<Self> {
        MeasurementSet::new((1..=n).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> usize {
        *self.0.last().expect("measurement set is never empty")
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    pub fn position(&self, index: usize) -> Option<usize> {
        self.0.binary_search(&index).ok()
    }

    /// The set with `index` removed, or `None` if nothing would remain.
    pub fn without(&self, index: usize) -> Option<MeasurementSet> {
        let rest: Vec<usize> = self.0.iter().copied().filter(|&i| i != index).collect();
        (!rest.is_empty()).then_some(MeasurementSet(rest))
    }

    pub fn check_within(&self, n: usize) -> Result<()> {
        if self.last() > n {
            return Err(LgError::contract(format!(
                "measurement set {self} exceeds the {n} available time slots"
            )));
        }
        Ok(())
    }

    fn observables(&self, all: &[Operator]) -> Vec<Operator> {
        self.0.iter().map(|&i| all[i - 1]).collect()
    }
}

impl fmt::Display for MeasurementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("]")
    }
}

/// One outcome per performed measurement, in time order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutcomeString(Vec<Outcome>);

impl OutcomeString {
    pub fn new(outcomes: Vec<Outcome>) -> Self {
        OutcomeString(outcomes)
    }

    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        signs
            .iter()
            .map(|&s| Outcome::try_from(s))
            .collect::<Result<Vec<_>>>()
            .map(OutcomeString)
    }

    /// Decode a distribution index: position `j` of `len` is `Minus` when
    /// bit `len - 1 - j` is set, so index 0 is all `Plus` and the order is
    /// lexicographic with `+` first.
    pub fn from_index(index: usize, len: usize) -> Self {
        OutcomeString(
            (0..len)
                .map(|j| {
                    if (index >> (len - 1 - j)) & 1 == 1 {
                        Outcome::Minus
                    } else {
                        Outcome::Plus
                    }
                })
                .collect(),
        )
    }

    pub fn index(&self) -> usize {
        self.0
            .iter()
            .fold(0, |acc, o| (acc << 1) | usize::from(*o == Outcome::Minus))
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Product of the ±1 outcome values.
    pub fn product(&self) -> f64 {
        self.0.iter().map(|o| o.value()).product()
    }
}

impl fmt::Display for OutcomeString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.0 {
            write!(f, "{o}")?;
        }
        Ok(())
    }
}

fn check_density(rho: &Operator) -> Result<()> {
    if !rho.is_density(ALGEBRA_TOL) {
        return Err(LgError::contract(format!(
            "{rho} is not a density operator"
        )));
    }
    Ok(())
}

fn check_inputs(rho: &Operator, sched: &Schedule, set: &MeasurementSet) -> Result<()> {
    check_density(rho)?;
    set.check_within(sched.n())
}

fn check_enumerable(k: usize) -> Result<()> {
    if k > MAX_ENUMERATION {
        return Err(LgError::resource(format!(
            "{k} measurements exceed the enumeration limit of {MAX_ENUMERATION}"
        )));
    }
    Ok(())
}

/// Accepts probabilities within [`PROBABILITY_SLACK`] of `[0, 1]` and clamps them.
pub fn clamp_probability(p: f64) -> Result<f64> {
    if !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&p) {
        return Err(LgError::Consistency(format!(
            "probability {p} outside [0, 1] beyond tolerance"
        )));
    }
    Ok(p.clamp(0.0, 1.0))
}

/// Unclamped `Tr[Π_k … Π_1 ρ Π_1 … Π_k]` for the given observables.
pub fn chain_probability(rho: &Operator, observables: &[Operator], outs: &[Outcome]) -> f64 {
    debug_assert_eq!(observables.len(), outs.len());
    let state = observables.iter().zip(outs).fold(*rho, |state, (m, &o)| {
        projector_unchecked(m, o).sandwich(&state)
    });
    state.trace().re
}

/// Unclamped probabilities of every outcome string, indexed as in
/// [`OutcomeString::from_index`]. Shares collapsed prefixes across strings.
pub fn chain_distribution(rho: &Operator, observables: &[Operator]) -> Vec<f64> {
    fn descend(state: Operator, rest: &[Operator], index: usize, out: &mut [f64]) {
        match rest.split_first() {
            None => out[index] = state.trace().re,
            Some((m, tail)) => {
                for (bit, outcome) in Outcome::BOTH.into_iter().enumerate() {
                    let next = projector_unchecked(m, outcome).sandwich(&state);
                    descend(next, tail, (index << 1) | bit, out);
                }
            }
        }
    }
    let mut out = vec![0.0; 1 << observables.len()];
    descend(*rho, observables, 0, &mut out);
    out
}

/// `Σ_outs (Π m)·P(outs)` by explicit enumeration.
pub fn enumerated_correlator(rho: &Operator, observables: &[Operator]) -> f64 {
    let k = observables.len();
    chain_distribution(rho, observables)
        .iter()
        .enumerate()
        .map(|(idx, p)| OutcomeString::from_index(idx, k).product() * p)
        .sum()
}

/// `2^{1-k} Tr[ρ {M_1, {M_2, …, {M_{k-1}, M_k}…}}]`; the `2^{1-k}` is applied
/// one factor per nesting level so long chains stay well scaled.
pub fn nested_correlator(rho: &Operator, observables: &[Operator]) -> f64 {
    let Some((last, earlier)) = observables.split_last() else {
        return 1.0;
    };
    let nested = earlier
        .iter()
        .rev()
        .fold(*last, |acc, m| m.anticommutator(&acc).scale_real(0.5));
    rho.trace_product(&nested)
}

/// Probability of `outs` when exactly the slots in `set` are measured.
pub fn joint_probability(
    rho: &Operator,
    sched: &Schedule,
    set: &MeasurementSet,
    outs: &OutcomeString,
) -> Result<f64> {
    check_inputs(rho, sched, set)?;
    if outs.len() != set.len() {
        return Err(LgError::contract(format!(
            "{} outcomes given for {} measurements",
            outs.len(),
            set.len()
        )));
    }
    let obs = set.observables(&sched.observables());
    clamp_probability(chain_probability(rho, &obs, outs.outcomes()))
}

/// Full joint distribution over the performed slots.
pub fn joint_distribution(
    rho: &Operator,
    sched: &Schedule,
    set: &MeasurementSet,
) -> Result<JointDistribution> {
    check_inputs(rho, sched, set)?;
    check_enumerable(set.len())?;
    let obs = set.observables(&sched.observables());
    JointDistribution::from_raw(set.clone(), chain_distribution(rho, &obs))
}

/// Sequential correlator by summing over all `2^k` outcome strings.
pub fn correlator_oracle(rho: &Operator, sched: &Schedule, set: &MeasurementSet) -> Result<f64> {
    Ok(joint_distribution(rho, sched, set)?.correlator_all())
}

/// Sequential correlator by the nested anticommutator trace.
pub fn correlator_nested(rho: &Operator, sched: &Schedule, set: &MeasurementSet) -> Result<f64> {
    check_inputs(rho, sched, set)?;
    Ok(nested_correlator(
        rho,
        &set.observables(&sched.observables()),
    ))
}

/// Probabilities over the outcome strings of one measurement run.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    set: MeasurementSet,
    probs: Vec<f64>,
}

impl JointDistribution {
    /// Validates and clamps raw probabilities.
    pub fn from_raw(set: MeasurementSet, raw: Vec<f64>) -> Result<Self> {
        if raw.len() != 1 << set.len() {
            return Err(LgError::contract(format!(
                "{} probabilities for {} measurements",
                raw.len(),
                set.len()
            )));
        }
        let probs = raw
            .into_iter()
            .map(clamp_probability)
            .collect::<Result<Vec<_>>>()?;
        Ok(JointDistribution { set, probs })
    }

    pub fn set(&self) -> &MeasurementSet {
        &self.set
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn probability(&self, outs: &OutcomeString) -> Result<f64> {
        if outs.len() != self.set.len() {
            return Err(LgError::contract("outcome string length mismatch"));
        }
        Ok(self.probs[outs.index()])
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (OutcomeString, f64)> + '_ {
        let k = self.set.len();
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| (OutcomeString::from_index(i, k), p))
    }

    /// Sum out the measurement at time `index`.
    pub fn marginalize(&self, index: usize) -> Result<JointDistribution> {
        let pos = self
            .set
            .position(index)
            .ok_or_else(|| LgError::contract(format!("slot {index} is not in {}", self.set)))?;
        let set = self
            .set
            .without(index)
            .ok_or_else(|| LgError::contract("cannot marginalize the only measurement"))?;
        let k = self.set.len();
        let shift = k - 1 - pos;
        let low_mask = (1usize << shift) - 1;
        let mut probs = vec![0.0; 1 << (k - 1)];
        for (i, p) in self.probs.iter().enumerate() {
            let reduced = ((i >> (shift + 1)) << shift) | (i & low_mask);
            probs[reduced] += p;
        }
        Ok(JointDistribution { set, probs })
    }

    /// Expectation of the product of outcomes at the given time indices,
    /// each of which must be in this distribution's set.
    pub fn correlator(&self, indices: &[usize]) -> Result<f64> {
        let k = self.set.len();
        let mut mask = 0usize;
        for &i in indices {
            let pos = self
                .set
                .position(i)
                .ok_or_else(|| LgError::contract(format!("slot {i} is not in {}", self.set)))?;
            mask |= 1 << (k - 1 - pos);
        }
        Ok(self
            .probs
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if (i & mask).count_ones() % 2 == 0 {
                    *p
                } else {
                    -*p
                }
            })
            .sum())
    }

    fn correlator_all(&self) -> f64 {
        self.iter().map(|(o, p)| o.product() * p).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::PureState;
    use std::f64::consts::FRAC_PI_4;

    fn ground() -> Operator {
        PureState::new(0.0, 0.0).unwrap().density()
    }

    #[test]
    fn measurement_set_validation() {
        assert!(MeasurementSet::new(vec![]).is_err());
        assert!(MeasurementSet::new(vec![0, 1]).is_err());
        assert!(MeasurementSet::new(vec![2, 2]).is_err());
        assert!(MeasurementSet::new(vec![3, 1]).is_err());
        let s = MeasurementSet::new(vec![1, 3]).unwrap();
        assert_eq!(s.to_string(), "[1,3]");
        assert!(s.check_within(2).is_err());
        assert_eq!(s.without(1).unwrap().indices(), &[3]);
        assert!(MeasurementSet::new(vec![2]).unwrap().without(2).is_none());
    }

    #[test]
    fn outcome_index_round_trip() {
        for k in 1..6 {
            for idx in 0..(1 << k) {
                assert_eq!(OutcomeString::from_index(idx, k).index(), idx);
            }
        }
        assert_eq!(OutcomeString::from_index(0, 3).to_string(), "+++");
        assert_eq!(OutcomeString::from_index(1, 3).to_string(), "++-");
    }

    #[test]
    fn repeated_measurement_without_evolution() {
        let sched = Schedule::uniform(2, 0.0).unwrap();
        let set = MeasurementSet::full(2).unwrap();
        let outs = OutcomeString::from_signs(&[1, 1]).unwrap();
        let p = joint_probability(&ground(), &sched, &set, &outs).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quarter_turn_second_slot() {
        let sched = Schedule::uniform(2, FRAC_PI_4).unwrap();
        let set = MeasurementSet::new(vec![2]).unwrap();
        let outs = OutcomeString::from_signs(&[1]).unwrap();
        let p = joint_probability(&ground(), &sched, &set, &outs).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
    }

    #[test]
    fn length_mismatch_is_contract_error() {
        let sched = Schedule::uniform(3, 0.2).unwrap();
        let set = MeasurementSet::full(3).unwrap();
        let outs = OutcomeString::from_signs(&[1, 1]).unwrap();
        assert!(matches!(
            joint_probability(&ground(), &sched, &set, &outs),
            Err(LgError::Contract(_))
        ));
        let set = MeasurementSet::new(vec![1, 4]).unwrap();
        assert!(matches!(
            correlator_oracle(&ground(), &sched, &set),
            Err(LgError::Contract(_))
        ));
    }

    #[test]
    fn invalid_density_is_rejected() {
        let sched = Schedule::uniform(2, 0.2).unwrap();
        let set = MeasurementSet::full(2).unwrap();
        let not_density = Operator::from_real([[0.7, 0.0], [0.0, 0.7]]);
        assert!(matches!(
            correlator_nested(&not_density, &sched, &set),
            Err(LgError::Contract(_))
        ));
    }

    #[test]
    fn clamp_rejects_gross_violations() {
        assert_eq!(clamp_probability(-1e-13).unwrap(), 0.0);
        assert_eq!(clamp_probability(1.0 + 1e-13).unwrap(), 1.0);
        assert!(matches!(
            clamp_probability(-1e-6),
            Err(LgError::Consistency(_))
        ));
        assert!(matches!(
            clamp_probability(1.1),
            Err(LgError::Consistency(_))
        ));
    }

    #[test]
    fn correlator_examples() {
        let rho = ground();
        let sched = Schedule::uniform(2, FRAC_PI_4).unwrap();
        let one = MeasurementSet::new(vec![1]).unwrap();
        assert!((correlator_oracle(&rho, &sched, &one).unwrap() - 1.0).abs() < 1e-12);
        let both = MeasurementSet::full(2).unwrap();
        assert!(correlator_oracle(&rho, &sched, &both).unwrap().abs() < 1e-12);
        assert!(correlator_nested(&rho, &sched, &both).unwrap().abs() < 1e-12);

        let sched = Schedule::uniform(3, 0.3).unwrap();
        let all = MeasurementSet::full(3).unwrap();
        let a = correlator_oracle(&rho, &sched, &all).unwrap();
        let b = correlator_nested(&rho, &sched, &all).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn nested_single_observable_is_expectation() {
        let rho = PureState::new(0.4, 1.0).unwrap().density();
        let m = Operator::pauli_y();
        let expected = rho.trace_product(&m);
        assert!((nested_correlator(&rho, &[m]) - expected).abs() < 1e-15);
    }

    #[test]
    fn nested_pair_is_half_anticommutator() {
        let rho = PureState::new(1.1, 2.5).unwrap().density();
        let sched = Schedule::new(vec![0.3, 0.9]).unwrap();
        let obs = sched.observables();
        let expected = 0.5 * rho.trace_product(&obs[0].anticommutator(&obs[2]));
        let set = MeasurementSet::new(vec![1, 3]).unwrap();
        assert!((correlator_nested(&rho, &sched, &set).unwrap() - expected).abs() < 1e-14);
        let expected3 =
            0.25 * rho.trace_product(&obs[0].anticommutator(&obs[1].anticommutator(&obs[2])));
        let all = MeasurementSet::full(3).unwrap();
        assert!((correlator_nested(&rho, &sched, &all).unwrap() - expected3).abs() < 1e-14);
    }

    #[test]
    fn distribution_matches_single_string_route() {
        let rho = PureState::new(0.8, 4.0).unwrap().density();
        let sched = Schedule::new(vec![0.3, 1.2, 0.5]).unwrap();
        let set = MeasurementSet::new(vec![1, 2, 4]).unwrap();
        let dist = joint_distribution(&rho, &sched, &set).unwrap();
        assert!((dist.total() - 1.0).abs() < 1e-12);
        for (outs, p) in dist.iter() {
            let q = joint_probability(&rho, &sched, &set, &outs).unwrap();
            assert!((p - q).abs() < 1e-14);
        }
    }

    #[test]
    fn marginalizing_the_last_slot_drops_it() {
        let rho = PureState::new(0.8, 4.0).unwrap().density();
        let sched = Schedule::new(vec![0.3, 1.2]).unwrap();
        let full = joint_distribution(&rho, &sched, &MeasurementSet::full(3).unwrap()).unwrap();
        let dropped = full.marginalize(3).unwrap();
        let direct =
            joint_distribution(&rho, &sched, &MeasurementSet::new(vec![1, 2]).unwrap()).unwrap();
        for (a, b) in dropped.probabilities().iter().zip(direct.probabilities()) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(full.marginalize(7).is_err());
    }

    #[test]
    fn marginal_correlator_matches_product_sum() {
        let rho = PureState::new(0.2, 0.3).unwrap().density();
        let sched = Schedule::new(vec![0.7, 0.4]).unwrap();
        let full = joint_distribution(&rho, &sched, &MeasurementSet::full(3).unwrap()).unwrap();
        let by_hand: f64 = full
            .iter()
            .map(|(o, p)| o.outcomes()[0].value() * o.outcomes()[2].value() * p)
            .sum();
        assert!((full.correlator(&[1, 3]).unwrap() - by_hand).abs() < 1e-14);
        assert!(full.correlator(&[4]).is_err());
    }

    #[test]
    fn enumeration_guard() {
        let sched = Schedule::uniform(26, 0.1).unwrap();
        let set = MeasurementSet::full(25).unwrap();
        assert!(matches!(
            joint_distribution(&ground(), &sched, &set),
            Err(LgError::Resource(_))
        ));
        // the nested route has no such limit
        assert!(correlator_nested(&ground(), &sched, &set).is_ok());
    }
}

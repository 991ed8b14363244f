//! No-signaling-in-time (NSIT) disturbance quantities.
//!
//! A disturbance map compares the statistics of a run in which some slots are
//! skipped with the marginals of a run in which they are measured:
//! `D_S(rest) = P_rest(rest) − Σ_{m_S} P_all(…)`. Each map sums to zero, and
//! removing the *last* measurement never disturbs earlier ones (`D_3 ≡ 0`).

use crate::error::{LgError, Result};
use crate::functional::{eval_all_measured, eval_separate, FunctionalSpec};
use crate::qubit::{Operator, Schedule};
use crate::sequential::{joint_distribution, JointDistribution, MeasurementSet, OutcomeString};

/// Disturbance values keyed by the outcomes of the slots that remain.
#[derive(Clone, Debug, PartialEq)]
pub struct DisturbanceMap {
    slots: MeasurementSet,
    values: Vec<f64>,
}

impl DisturbanceMap {
    pub fn slots(&self) -> &MeasurementSet {
        &self.slots
    }

    pub fn get(&self, outs: &OutcomeString) -> Result<f64> {
        if outs.len() != self.slots.len() {
            return Err(LgError::contract("outcome string length mismatch"));
        }
        Ok(self.values[outs.index()])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (OutcomeString, f64)> + '_ {
        let k = self.slots.len();
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (OutcomeString::from_index(i, k), v))
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `Σ_outs (Π m) · D(outs)`.
    pub fn signed_sum(&self) -> f64 {
        self.iter().map(|(o, v)| o.product() * v).sum()
    }

    /// Sum of the entries whose outcomes satisfy `keep`.
    pub fn sum_where(&self, keep: impl Fn(&OutcomeString) -> bool) -> f64 {
        self.iter().filter(|(o, _)| keep(o)).map(|(_, v)| v).sum()
    }
}

/// Disturbance on the remaining slots of `performed` caused by also measuring
/// the `removed` slots.
pub fn disturbance(
    rho: &Operator,
    sched: &Schedule,
    performed: &MeasurementSet,
    removed: &[usize],
) -> Result<DisturbanceMap> {
    let full = joint_distribution(rho, sched, performed)?;
    disturbance_from(rho, sched, &full, removed)
}

fn disturbance_from(
    rho: &Operator,
    sched: &Schedule,
    full: &JointDistribution,
    removed: &[usize],
) -> Result<DisturbanceMap> {
    let mut marginal = full.clone();
    for &slot in removed {
        marginal = marginal.marginalize(slot)?;
    }
    let undisturbed = joint_distribution(rho, sched, marginal.set())?;
    let values = undisturbed
        .probabilities()
        .iter()
        .zip(marginal.probabilities())
        .map(|(a, b)| a - b)
        .collect();
    Ok(DisturbanceMap {
        slots: marginal.set().clone(),
        values,
    })
}

fn require_n(sched: &Schedule, allowed: &[usize], what: &str) -> Result<()> {
    if !allowed.contains(&sched.n()) {
        return Err(LgError::contract(format!(
            "{what} needs a schedule with {allowed:?} slots, got {}",
            sched.n()
        )));
    }
    Ok(())
}

fn full_three(rho: &Operator, sched: &Schedule) -> Result<JointDistribution> {
    joint_distribution(rho, sched, &MeasurementSet::full(3)?)
}

/// `D_1(m_2, m_3)`; on a two-slot schedule this is the two-time `D_1(m_2)`.
pub fn disturbance_d1(rho: &Operator, sched: &Schedule) -> Result<DisturbanceMap> {
    require_n(sched, &[2, 3], "D1")?;
    disturbance(rho, sched, &MeasurementSet::full(sched.n())?, &[1])
}

/// `D_2(m_1, m_3)`.
pub fn disturbance_d2(rho: &Operator, sched: &Schedule) -> Result<DisturbanceMap> {
    require_n(sched, &[3], "D2")?;
    disturbance_from(rho, sched, &full_three(rho, sched)?, &[2])
}

/// `D_3(m_1, m_2)`, identically zero.
pub fn disturbance_d3(rho: &Operator, sched: &Schedule) -> Result<DisturbanceMap> {
    require_n(sched, &[3], "D3")?;
    disturbance_from(rho, sched, &full_three(rho, sched)?, &[3])
}

/// `D_12(m_3) = P(M_3^{m_3}) − Σ_{m_1, m_2} P_123`.
pub fn disturbance_d12(rho: &Operator, sched: &Schedule) -> Result<DisturbanceMap> {
    require_n(sched, &[3], "D12")?;
    disturbance_from(rho, sched, &full_three(rho, sched)?, &[1, 2])
}

/// `D_{1…n−1}(m_n)`: disturbance of the final measurement by all earlier ones.
pub fn disturbance_general(
    rho: &Operator,
    sched: &Schedule,
    last: usize,
) -> Result<DisturbanceMap> {
    let n = sched.n();
    if n < 3 || last != n {
        return Err(LgError::contract(format!(
            "general disturbance needs n ≥ 3 and the final slot {n}, got slot {last}"
        )));
    }
    let removed: Vec<usize> = (1..n).collect();
    disturbance(rho, sched, &MeasurementSet::full(n)?, &removed)
}

fn probability_of(dist: &JointDistribution, signs: &[i8]) -> Result<f64> {
    dist.probability(&OutcomeString::from_signs(signs)?)
}

/// `α = P(+,−,+) + P(−,+,−)` of the three-measurement run.
pub fn alpha(rho: &Operator, sched: &Schedule) -> Result<f64> {
    require_n(sched, &[3], "alpha")?;
    let full = full_three(rho, sched)?;
    Ok(probability_of(&full, &[1, -1, 1])? + probability_of(&full, &[-1, 1, -1])?)
}

/// `β = P(+,−,+) + P(−,+,+)` of the three-measurement run.
pub fn beta(rho: &Operator, sched: &Schedule) -> Result<f64> {
    require_n(sched, &[3], "beta")?;
    let full = full_three(rho, sched)?;
    Ok(probability_of(&full, &[1, -1, 1])? + probability_of(&full, &[-1, 1, 1])?)
}

/// `γ = (1 − (K³_n)_{1…n}) / 4`, which reduces to `β` at `n = 3`.
pub fn gamma(rho: &Operator, sched: &Schedule) -> Result<f64> {
    let spec = FunctionalSpec::variant_k3(sched.n())?;
    Ok((1.0 - eval_all_measured(&spec, rho, sched)?) / 4.0)
}

/// `γ` as the explicit sum over the `2^{n−2}` strings with `m_n = +1` and
/// `m_1 ⋯ m_{n−1} = −1`.
pub fn gamma_by_strings(rho: &Operator, sched: &Schedule) -> Result<f64> {
    let n = sched.n();
    if n < 3 {
        return Err(LgError::contract("gamma needs n ≥ 3"));
    }
    let full = joint_distribution(rho, sched, &MeasurementSet::full(n)?)?;
    Ok(full
        .iter()
        .filter(|(o, _)| {
            let m = o.outcomes();
            m[n - 1].value() > 0.0 && m[..n - 1].iter().map(|x| x.value()).product::<f64>() < 0.0
        })
        .map(|(_, p)| p)
        .sum())
}

/// A violation criterion rewritten in terms of disturbance: the inequality
/// is violated exactly when `lhs > threshold`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ViolationCondition {
    pub lhs: f64,
    pub threshold: f64,
    /// The functional evaluated from separate runs exceeds its bound 1.
    pub violated: bool,
    pub functional_value: f64,
}

impl ViolationCondition {
    pub fn condition_holds(&self) -> bool {
        self.lhs > self.threshold
    }

    /// The disturbance criterion and the direct evaluation agree.
    pub fn consistent(&self) -> bool {
        self.condition_holds() == self.violated
    }
}

/// Residual of
/// `K_3 − (K_3)_123 = Σ_{m2=m3} D_1 − Σ_{m1=m3} D_2 − Σ_{m2≠m3} D_1 + Σ_{m1≠m3} D_2`.
pub fn decomposition_check_standard(rho: &Operator, sched: &Schedule) -> Result<f64> {
    require_n(sched, &[3], "decomposition check")?;
    let spec = FunctionalSpec::standard_k(3)?;
    let lhs = eval_separate(&spec, rho, sched)? - eval_all_measured(&spec, rho, sched)?;
    let d1 = disturbance_d1(rho, sched)?;
    let d2 = disturbance_d2(rho, sched)?;
    let same = |o: &OutcomeString| o.outcomes()[0] == o.outcomes()[1];
    let differ = |o: &OutcomeString| o.outcomes()[0] != o.outcomes()[1];
    let rhs = d1.sum_where(same) - d2.sum_where(same) - d1.sum_where(differ) + d2.sum_where(differ);
    Ok((lhs - rhs).abs())
}

/// `K_3 > 1 ⟺ Σ_{m2=m3} D_1 − Σ_{m1=m3} D_2 > 2α`.
pub fn violation_condition_standard(
    rho: &Operator,
    sched: &Schedule,
) -> Result<ViolationCondition> {
    require_n(sched, &[3], "standard violation condition")?;
    let d1 = disturbance_d1(rho, sched)?;
    let d2 = disturbance_d2(rho, sched)?;
    let same = |o: &OutcomeString| o.outcomes()[0] == o.outcomes()[1];
    let value = eval_separate(&FunctionalSpec::standard_k(3)?, rho, sched)?;
    Ok(ViolationCondition {
        lhs: d1.sum_where(same) - d2.sum_where(same),
        threshold: 2.0 * alpha(rho, sched)?,
        violated: value > 1.0,
        functional_value: value,
    })
}

/// `K³_3 > 1 ⟺ −Σ_{m3} m3 · D_12(m3) > 4β`.
///
/// Only `⟨M_3⟩` differs between the separate and the all-measured runs, so
/// `K³_3 − (K³_3)_123 = −Σ m3 D_12(m3) = 2 D_12(−)`. The unweighted sum of
/// `D_12` is identically zero and cannot serve as the left-hand side.
pub fn violation_condition_variant(rho: &Operator, sched: &Schedule) -> Result<ViolationCondition> {
    require_n(sched, &[3], "variant violation condition")?;
    variant_condition(rho, sched, beta(rho, sched)?)
}

/// `K³_n > 1 ⟺ −Σ_{m_n} m_n · D_{1…n−1}(m_n) > 4γ`.
pub fn violation_condition_variant_general(
    rho: &Operator,
    sched: &Schedule,
) -> Result<ViolationCondition> {
    variant_condition(rho, sched, gamma(rho, sched)?)
}

fn variant_condition(rho: &Operator, sched: &Schedule, weight: f64) -> Result<ViolationCondition> {
    let d = disturbance_general(rho, sched, sched.n())?;
    let value = eval_separate(&FunctionalSpec::variant_k3(sched.n())?, rho, sched)?;
    Ok(ViolationCondition {
        lhs: -d.signed_sum(),
        threshold: 4.0 * weight,
        violated: value > 1.0,
        functional_value: value,
    })
}

/// All three-slot disturbance quantities for one configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct DisturbanceReport {
    pub d1: DisturbanceMap,
    pub d2: DisturbanceMap,
    pub d3: DisturbanceMap,
    pub d12: DisturbanceMap,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl DisturbanceReport {
    pub fn compute(rho: &Operator, sched: &Schedule) -> Result<Self> {
        require_n(sched, &[3], "disturbance report")?;
        Ok(DisturbanceReport {
            d1: disturbance_d1(rho, sched)?,
            d2: disturbance_d2(rho, sched)?,
            d3: disturbance_d3(rho, sched)?,
            d12: disturbance_d12(rho, sched)?,
            alpha: alpha(rho, sched)?,
            beta: beta(rho, sched)?,
            gamma: gamma(rho, sched)?,
        })
    }

    /// Flat `key → value` pairs in a fixed order, e.g. `D1(+,-)`.
    pub fn to_record(&self) -> Vec<(String, f64)> {
        let mut out = Vec::new();
        for (name, map) in [
            ("D1", &self.d1),
            ("D2", &self.d2),
            ("D3", &self.d3),
            ("D12", &self.d12),
        ] {
            for (outs, v) in map.iter() {
                let key: Vec<String> = outs.outcomes().iter().map(|o| o.to_string()).collect();
                out.push((format!("{name}({})", key.join(",")), v));
            }
        }
        out.push(("alpha".into(), self.alpha));
        out.push(("beta".into(), self.beta));
        out.push(("gamma".into(), self.gamma));
        out
    }
}

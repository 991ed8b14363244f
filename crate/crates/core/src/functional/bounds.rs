use rayon::prelude::*;

use crate::error::{LgError, Result};

use super::spec::FunctionalSpec;

/// Largest slot count for which all `2^n` deterministic assignments are enumerated.
pub const MAX_BOUND_SLOTS: usize = 24;

const CHUNK_BITS: usize = 12;

/// Extremes of a functional over macrorealist (deterministic ±1) assignments,
/// next to its algebraic maximum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundPair {
    pub macrorealist_min: f64,
    pub macrorealist_max: f64,
    pub algebraic_max: f64,
}

/// Exact bounds by enumerating every `(m_1, …, m_n) ∈ {±1}^n`.
pub fn macrorealist_bound(spec: &FunctionalSpec) -> Result<BoundPair> {
    let n = spec.n();
    if n > MAX_BOUND_SLOTS {
        return Err(LgError::resource(format!(
            "bound enumeration over {n} slots exceeds the limit of {MAX_BOUND_SLOTS}"
        )));
    }
    // bit (i - 1) of an assignment set ⇔ m_i = −1
    let masks: Vec<(u32, i32)> = spec
        .terms()
        .iter()
        .map(|t| {
            let mask = t
                .slots
                .indices()
                .iter()
                .fold(0u32, |m, &i| m | (1 << (i - 1)));
            (mask, t.sign.value() as i32)
        })
        .collect();
    let value = |assignment: u32| -> i32 {
        masks
            .iter()
            .map(|&(mask, sign)| {
                if (assignment & mask).count_ones() % 2 == 0 {
                    sign
                } else {
                    -sign
                }
            })
            .sum()
    };

    let total: u64 = 1 << n;
    let chunk: u64 = 1 << CHUNK_BITS.min(n);
    let (lo, hi) = (0..total / chunk)
        .into_par_iter()
        .map(|c| {
            (c * chunk..(c + 1) * chunk)
                .map(|a| value(a as u32))
                .fold((i32::MAX, i32::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
        })
        .reduce(|| (i32::MAX, i32::MIN), |a, b| (a.0.min(b.0), a.1.max(b.1)));

    Ok(BoundPair {
        macrorealist_min: lo as f64,
        macrorealist_max: hi as f64,
        algebraic_max: spec.algebraic_max(),
    })
}

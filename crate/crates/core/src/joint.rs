//! Exact observational inference by enumeration of all `2^(p+1)` worlds.
//!
//! Worlds are visited in lexicographic order of `(x1, ..., xp, y)`; every
//! sum in this crate that ranges over worlds uses the same order so results
//! are bit-for-bit reproducible.

use thiserror::Error;

use crate::model::{Evidence, Mask, ModelError, Network, Var};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InferenceError {
    #[error("impossible evidence: it has probability zero under the model")]
    ImpossibleEvidence,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Enumerates cause masks in lexicographic order of `(x1, ..., xp)`.
pub(crate) fn lex_masks(p: usize) -> impl Iterator<Item = Mask> {
    (0u32..(1u32 << p)).map(move |code| {
        // code's most significant bit is x1
        let mut x = 0;
        for i in 0..p {
            x |= ((code >> (p - 1 - i)) & 1) << i;
        }
        x
    })
}

#[inline]
fn bernoulli(p1: f64, bit: bool) -> f64 {
    if bit {
        p1
    } else {
        1.0 - p1
    }
}

/// `P(X = x)` as the product of CPT factors.
pub(crate) fn causes_prob(net: &Network, x: Mask) -> f64 {
    (0..net.p()).fold(1.0, |acc, i| acc * bernoulli(net.prob_one0(i, x), (x >> i) & 1 == 1))
}

/// `P(X = x, Y = y) = P(Y = y | x) * prod_i P(X_i = x_i | parents)`.
pub fn joint_prob_mask(net: &Network, x: Mask, y: bool) -> f64 {
    bernoulli(net.outcome_prob(x), y) * causes_prob(net, x)
}

/// Joint probability of a total cause assignment and an outcome bit.
pub fn joint_prob(net: &Network, x: &crate::model::Assignment, y: bool) -> Result<f64, ModelError> {
    Ok(joint_prob_mask(net, x.cause_mask(net.p())?, y))
}

/// One world of a conditional table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry {
    pub x: Mask,
    pub y: bool,
    pub weight: f64,
}

/// `P(X = x, Y = y | E = e)` over the worlds consistent with `e`, with
/// zero-probability worlds dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalTable {
    p: usize,
    evidence_prob: f64,
    entries: Vec<Entry>,
}

impl ConditionalTable {
    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// `P(E = e)` before normalization.
    pub fn evidence_prob(&self) -> f64 {
        self.evidence_prob
    }

    /// Sum of `weight * f(x, y)` in table order.
    pub fn expect(&self, mut f: impl FnMut(Mask, bool) -> f64) -> f64 {
        self.entries.iter().map(|e| e.weight * f(e.x, e.y)).sum()
    }
}

pub fn condition_on_evidence(net: &Network, e: &Evidence) -> Result<ConditionalTable, InferenceError> {
    let p = net.p();
    let em = e.compile(p)?;
    let mut entries = Vec::new();
    let mut total = 0.0;
    for x in lex_masks(p) {
        if (x & em.care) != em.value {
            continue;
        }
        for y in [false, true] {
            if !em.matches(x, y) {
                continue;
            }
            let w = joint_prob_mask(net, x, y);
            if w > 0.0 {
                total += w;
                entries.push(Entry { x, y, weight: w });
            }
        }
    }
    if total <= 0.0 {
        return Err(InferenceError::ImpossibleEvidence);
    }
    for entry in &mut entries {
        entry.weight /= total;
    }
    Ok(ConditionalTable { p, evidence_prob: total, entries })
}

/// Which event over `X_K` a posterior query asks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventMode {
    /// Every `X_k`, `k ∈ K`, equals one.
    AllOne,
    /// At least one `X_k`, `k ∈ K`, equals one.
    AnyOne,
}

pub fn posterior_event_prob(
    net: &Network,
    k: &[usize],
    mode: EventMode,
    e: &Evidence,
) -> Result<f64, InferenceError> {
    let set = crate::model::CandidateSet::new(k.to_vec())?;
    set.check_range(net.p())?;
    let km = set.mask();
    let table = condition_on_evidence(net, e)?;
    Ok(table.expect(|x, _| {
        let hit = match mode {
            EventMode::AllOne => x & km == km,
            EventMode::AnyOne => x & km != 0,
        };
        if hit {
            1.0
        } else {
            0.0
        }
    }))
}

/// Marginal `P(V = 1 | E = e)` for any single variable.
pub fn posterior_marginal(net: &Network, var: Var, e: &Evidence) -> Result<f64, InferenceError> {
    let table = condition_on_evidence(net, e)?;
    Ok(match var {
        Var::Outcome => table.expect(|_, y| if y { 1.0 } else { 0.0 }),
        Var::Cause(i) => {
            if i == 0 || i > net.p() {
                return Err(ModelError::IndexOutOfRange { index: i, p: net.p() }.into());
            }
            table.expect(|x, _| ((x >> (i - 1)) & 1) as f64)
        }
    })
}

//! PRC from the observational distribution alone.
//!
//! For a fully observed world `(x, y = 1)` the probability is a finite sum
//! over pairs `x* <= x' <= x` of CPT ratios. Worlds with `y = 0` are handled
//! by complementing every variable ([`flip_network`]) and evaluating the
//! `y = 1` formula there. General evidence is a mixture over the conditional
//! table.

use thiserror::Error;

use crate::joint::{condition_on_evidence, InferenceError};
use crate::model::{
    full_mask, row_of, validate_monotone_cpt, Candidate, CandidateMasks, CandidateSet, Evidence,
    Mask, ModelError, Network,
};

const RANGE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClosedFormError {
    #[error("impossible observation: {0}")]
    ImpossibleObservation(String),
    #[error("impossible evidence: it has probability zero under the model")]
    ImpossibleEvidence,
    #[error("{0}: CPT is not monotone")]
    NonMonotone(String),
    #[error("closed form left [0, 1]: {0}")]
    OutOfRange(f64),
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl From<InferenceError> for ClosedFormError {
    fn from(e: InferenceError) -> Self {
        match e {
            InferenceError::ImpossibleEvidence => ClosedFormError::ImpossibleEvidence,
            InferenceError::Model(m) => ClosedFormError::Model(m),
        }
    }
}

/// One term of the sum: the observation `x`, the pair `x* <= x' <= x`, and
/// `x''`, which keeps `x'` on `K` and zeroes everything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SummandContext {
    pub x: Mask,
    pub x_prime: Mask,
    pub x_star: Mask,
    pub x_dprime: Mask,
}

/// Terms for observation `x`, in lexicographic order of `(x', x*)` with
/// `X1` most significant. Positions with `x_i = 0` are pinned to zero.
pub fn summand_contexts(m: &CandidateMasks, p: usize, x: Mask) -> Vec<SummandContext> {
    // (position, options) where options lists (x'_i, x*_i) in order
    let mut free: Vec<(Mask, &[(bool, bool)])> = Vec::new();
    for i in 0..p {
        let bit = 1 << i;
        if x & bit == 0 {
            continue;
        }
        if m.k & bit != 0 {
            free.push((bit, &[(false, false), (true, false)]));
        } else if (m.gap | m.suffix) & bit != 0 {
            free.push((bit, &[(false, false), (true, false), (true, true)]));
        }
    }
    let base = x & m.prefix;
    let mut out = Vec::new();
    let mut digits = vec![0usize; free.len()];
    loop {
        let mut xp = base;
        let mut xs = base;
        for (&(bit, opts), &d) in free.iter().zip(&digits) {
            let (a, b) = opts[d];
            if a {
                xp |= bit;
            }
            if b {
                xs |= bit;
            }
        }
        out.push(SummandContext { x, x_prime: xp, x_star: xs, x_dprime: xp & m.k });
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < free[pos].1.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// `2^{|K ∩ supp x|} * 3^{|(gap ∪ suffix) ∩ supp x|}`.
pub fn summand_count(m: &CandidateMasks, x: Mask) -> usize {
    let k = (x & m.k).count_ones();
    let rest = (x & (m.gap | m.suffix)).count_ones();
    (1usize << k) * 3usize.pow(rest)
}

fn check_monotone(net: &Network) -> Result<(), ClosedFormError> {
    match validate_monotone_cpt(net).violations.first() {
        Some(v) => Err(ClosedFormError::NonMonotone(v.variable.clone())),
        None => Ok(()),
    }
}

fn checked_prob(v: f64) -> Result<f64, ClosedFormError> {
    if v < -RANGE_SLACK || v > 1.0 + RANGE_SLACK || v.is_nan() {
        return Err(ClosedFormError::OutOfRange(v));
    }
    Ok(v.clamp(0.0, 1.0))
}

fn full_obs_unchecked(net: &Network, m: &CandidateMasks, x: Mask) -> Result<f64, ClosedFormError> {
    let p = net.p();
    let py = |at: Mask| net.outcome_prob(at);
    let px = |i: usize, at: Mask| net.cpt0(i)[row_of(net.parents0(i), at)];
    let y_den = py(x);
    if y_den <= 0.0 {
        return Err(ClosedFormError::ImpossibleObservation(format!("P({}=1 | x) = 0", net.outcome_name())));
    }
    // within a summable term only x_i = 1 positions carry ratios; their
    // denominator P(X_i = x_i | x̄_i) is P(X_i = 1 | x̄_i)
    let mut den = vec![1.0; p];
    for (i, d) in den.iter_mut().enumerate() {
        if x >> i & 1 == 1 && !(m.prefix >> i & 1 == 1) {
            *d = px(i, x);
            if *d <= 0.0 {
                return Err(ClosedFormError::ImpossibleObservation(format!("P({}=1 | parents) = 0", net.name(i + 1))));
            }
        }
    }
    let mut total = 0.0;
    for ctx in summand_contexts(m, p, x) {
        let diff = py(ctx.x_prime) - py(ctx.x_star);
        if diff == 0.0 {
            continue;
        }
        let mut term = diff / y_den;
        for i in 0..p {
            let bit = 1 << i;
            if x & bit == 0 || m.prefix & bit != 0 {
                continue;
            }
            let xp = ctx.x_prime & bit != 0;
            let xs = ctx.x_star & bit != 0;
            let factor = if m.k & bit != 0 {
                let r = px(i, ctx.x_dprime) / den[i];
                if xp {
                    r
                } else {
                    1.0 - r
                }
            } else {
                match (xp, xs) {
                    (false, false) => 1.0 - px(i, ctx.x_prime) / den[i],
                    (true, false) => (px(i, ctx.x_prime) - px(i, ctx.x_star)) / den[i],
                    (true, true) => px(i, ctx.x_star) / den[i],
                    (false, true) => unreachable!("x* <= x'"),
                }
            };
            term *= factor;
            if term == 0.0 {
                break;
            }
        }
        total += term;
    }
    Ok(total)
}

/// `PRC(K | X = x, Y = 1)`.
pub fn prc_full_obs(net: &Network, k: &CandidateSet, x: Mask) -> Result<f64, ClosedFormError> {
    check_monotone(net)?;
    let m = k.masks(net.p())?;
    if crate::joint::joint_prob_mask(net, x, true) <= 0.0 {
        return Err(ClosedFormError::ImpossibleObservation("P(X = x, Y = 1) = 0".into()));
    }
    checked_prob(full_obs_unchecked(net, &m, x)?)
}

/// `PRC(K | X = x, Y = y)`; `y = 0` goes through the complemented model.
pub fn prc_full_obs_xy(net: &Network, k: &CandidateSet, x: Mask, y: bool) -> Result<f64, ClosedFormError> {
    if y {
        prc_full_obs(net, k, x)
    } else {
        let (flipped, fx) = flip_network(net, x);
        prc_full_obs(&flipped, k, fx)
    }
}

fn flip_rows(rows: &[f64]) -> Vec<f64> {
    rows.iter().rev().map(|v| 1.0 - v).collect()
}

/// Complements every variable: `P~(X_i = 1 | a) = 1 - P(X_i = 1 | 1 - a)`.
/// Order and parent sets are unchanged. Returns the complemented `x` too.
pub fn flip_network(net: &Network, x: Mask) -> (Network, Mask) {
    let p = net.p();
    let flipped = Network::from_parts(
        net.names().to_vec(),
        net.outcome_name().to_string(),
        (0..p).map(|i| net.parents0(i).to_vec()).collect(),
        (0..p).map(|i| flip_rows(net.cpt0(i))).collect(),
        net.outcome_parents0().to_vec(),
        flip_rows(net.outcome_cpt()),
    )
    .expect("complement of a valid network is valid");
    (flipped, x ^ full_mask(p))
}

/// `sum_{(x,y)} PRC(K | x, y) P(x, y | e)`, or `1 - PRC(X1..Xp | e)` for the
/// no-root-cause marker.
pub fn prc(net: &Network, candidate: &Candidate, e: &Evidence) -> Result<f64, ClosedFormError> {
    check_monotone(net)?;
    let k = match candidate {
        Candidate::Set(k) => k.clone(),
        Candidate::NoRootCause => {
            let full = prc(net, &Candidate::Set(CandidateSet::prefix_set(net.p())), e)?;
            return Ok(1.0 - full);
        }
    };
    let m = k.masks(net.p())?;
    let table = condition_on_evidence(net, e)?;
    let flipped = flip_network(net, 0).0;
    let all = full_mask(net.p());
    let mut total = 0.0;
    for entry in table.entries() {
        let v = if entry.y {
            full_obs_unchecked(net, &m, entry.x)?
        } else {
            full_obs_unchecked(&flipped, &m, entry.x ^ all)?
        };
        total += entry.weight * checked_prob(v)?;
    }
    checked_prob(total)
}

/// `x_k P(X_k = 1 | X̄_k = 0) / P(X_k = 1 | x̄_k)`, the ratio between
/// `PRC(k | x, 1)` and the posterior total effect of `X_k`.
pub fn prc_posttce_scaling(net: &Network, k: usize, x: Mask) -> Result<f64, ClosedFormError> {
    let p = net.p();
    if k == 0 || k > p {
        return Err(ModelError::IndexOutOfRange { index: k, p }.into());
    }
    let i = k - 1;
    if x >> i & 1 == 0 {
        return Ok(0.0);
    }
    let den = net.prob_one0(i, x);
    if den <= 0.0 {
        return Err(ClosedFormError::ImpossibleObservation(format!("P({}=1 | parents) = 0", net.name(k))));
    }
    Ok(net.cpt0(i)[0] / den)
}

//! Per-candidate reports and rankings.

use std::cmp::Ordering;

use thiserror::Error;

use crate::closedform::{self, ClosedFormError};
use crate::counterfactual::{
    canonical_sem_from_network, has_individual_cause, oracle_posttce_in, outcome_has_individual_cause,
    CellSpace, IndicatorMethod, LatentCell, MonotoneSem, SemError, MAX_CELLS,
};
use crate::joint::{posterior_event_prob, EventMode, InferenceError};
use crate::model::{validate_monotone_cpt, Candidate, CandidateSet, Evidence, ModelError, Network};
use crate::netformat::{fingerprint, format_candidate, format_evidence};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AttributionError {
    #[error("impossible evidence: it has probability zero under the model")]
    ImpossibleEvidence,
    #[error("{0}: CPT violates monotonicity")]
    NonMonotone(String),
    #[error("no candidates given")]
    NoCandidates,
    #[error("model is not a chain X1 -> ... -> Xp -> Y")]
    NotAChain,
    #[error("{0}")]
    ClosedForm(ClosedFormError),
    #[error("{0}")]
    Oracle(SemError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl From<ClosedFormError> for AttributionError {
    fn from(e: ClosedFormError) -> Self {
        match e {
            ClosedFormError::ImpossibleEvidence => AttributionError::ImpossibleEvidence,
            ClosedFormError::NonMonotone(v) => AttributionError::NonMonotone(v),
            ClosedFormError::Model(m) => AttributionError::Model(m),
            other => AttributionError::ClosedForm(other),
        }
    }
}

impl From<SemError> for AttributionError {
    fn from(e: SemError) -> Self {
        match e {
            SemError::ImpossibleEvidence => AttributionError::ImpossibleEvidence,
            SemError::NonMonotoneCpt { variable } => AttributionError::NonMonotone(variable),
            SemError::Model(m) => AttributionError::Model(m),
            other => AttributionError::Oracle(other),
        }
    }
}

impl From<InferenceError> for AttributionError {
    fn from(e: InferenceError) -> Self {
        match e {
            InferenceError::ImpossibleEvidence => AttributionError::ImpossibleEvidence,
            InferenceError::Model(m) => AttributionError::Model(m),
        }
    }
}

/// Which engine computes the PRC column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    ClosedForm,
    Oracle,
    Both,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::ClosedForm => "closed",
            Engine::Oracle => "oracle",
            Engine::Both => "both",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub candidate: Candidate,
    /// Candidate rendered with the network's names.
    pub label: String,
    pub prc: f64,
    pub posttce: Option<f64>,
    pub posterior: Option<f64>,
    pub engine: Engine,
    /// `|closed form - oracle|` when both engines ran.
    pub discrepancy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttributionReport {
    pub rows: Vec<ReportRow>,
    pub evidence: String,
    pub fingerprint: String,
    /// The oracle was requested but the model has too many latent cells.
    pub oracle_fallback: bool,
    pub warnings: Vec<String>,
}

impl AttributionReport {
    pub fn row(&self, candidate: &Candidate) -> Option<&ReportRow> {
        self.rows.iter().find(|r| &r.candidate == candidate)
    }

    pub fn max_discrepancy(&self) -> Option<f64> {
        self.rows.iter().filter_map(|r| r.discrepancy).reduce(f64::max)
    }
}

/// Singletons, then prefixes `{X1..Xk}` for `k >= 2`, then the no-root-cause
/// marker.
pub fn default_candidates(p: usize) -> Vec<Candidate> {
    let mut out: Vec<Candidate> = (1..=p).map(|i| Candidate::Set(CandidateSet::singleton(i))).collect();
    out.extend((2..=p).map(|k| Candidate::Set(CandidateSet::prefix_set(k))));
    out.push(Candidate::NoRootCause);
    out
}

fn candidate_order(a: &Candidate, b: &Candidate) -> Ordering {
    match (a, b) {
        (Candidate::Set(x), Candidate::Set(y)) => x.members().cmp(y.members()),
        (Candidate::Set(_), Candidate::NoRootCause) => Ordering::Less,
        (Candidate::NoRootCause, Candidate::Set(_)) => Ordering::Greater,
        (Candidate::NoRootCause, Candidate::NoRootCause) => Ordering::Equal,
    }
}

struct Oracle {
    sem: MonotoneSem,
    space: CellSpace,
}

fn build_oracle(net: &Network) -> Result<Option<Oracle>, AttributionError> {
    let sem = canonical_sem_from_network(net)?;
    if sem.cell_count() > MAX_CELLS {
        return Ok(None);
    }
    let space = CellSpace::new(&sem)?;
    Ok(Some(Oracle { sem, space }))
}

/// PRC, posterior total effect and posterior of each candidate, plus the
/// no-root-cause row, sorted by descending PRC.
///
/// The effect column always comes from the canonical structural model. Set
/// posteriors are the probability that at least one member equals one.
pub fn rank_candidates(
    net: &Network,
    candidates: &[Candidate],
    e: &Evidence,
    engine: Engine,
) -> Result<AttributionReport, AttributionError> {
    if candidates.is_empty() {
        return Err(AttributionError::NoCandidates);
    }
    if let Some(v) = validate_monotone_cpt(net).violations.first() {
        return Err(AttributionError::NonMonotone(v.variable.clone()));
    }
    for c in candidates {
        if let Candidate::Set(k) = c {
            k.check_range(net.p())?;
        }
    }
    // surfaces impossible evidence before any engine runs
    crate::joint::condition_on_evidence(net, e)?;

    let mut warnings = Vec::new();
    let oracle = build_oracle(net)?;
    let mut oracle_fallback = false;
    if oracle.is_none() {
        warnings.push(format!("model exceeds {MAX_CELLS} latent cells; effects unavailable"));
        if engine != Engine::ClosedForm {
            oracle_fallback = true;
            warnings.push("oracle unavailable; PRC computed in closed form".to_string());
        }
    }
    let effective = if oracle_fallback { Engine::ClosedForm } else { engine };

    let mut wanted: Vec<Candidate> = Vec::new();
    for c in candidates.iter().cloned().chain(std::iter::once(Candidate::NoRootCause)) {
        if !wanted.contains(&c) {
            wanted.push(c);
        }
    }

    let mut rows = Vec::with_capacity(wanted.len());
    for c in wanted {
        let oracle_prc = match (&oracle, effective) {
            (Some(o), Engine::Oracle | Engine::Both) => Some(o.space.prc(&o.sem, &c, e, IndicatorMethod::Scan)?),
            _ => None,
        };
        let closed_prc = match effective {
            Engine::ClosedForm | Engine::Both => Some(closedform::prc(net, &c, e)?),
            Engine::Oracle => None,
        };
        let prc = closed_prc.or(oracle_prc).expect("one engine ran");
        let discrepancy = match (closed_prc, oracle_prc) {
            (Some(a), Some(b)) if effective == Engine::Both => Some((a - b).abs()),
            _ => None,
        };
        let (posttce, posterior) = match &c {
            Candidate::NoRootCause => (None, None),
            Candidate::Set(k) => {
                let tce = match &oracle {
                    Some(o) => Some(oracle_posttce_in(&o.space, &o.sem, k, e)?),
                    None => None,
                };
                (tce, Some(posterior_event_prob(net, k.members(), EventMode::AnyOne, e)?))
            }
        };
        rows.push(ReportRow {
            label: format_candidate(net, &c),
            candidate: c,
            prc,
            posttce,
            posterior,
            engine: effective,
            discrepancy,
        });
    }
    rows.sort_by(|a, b| b.prc.total_cmp(&a.prc).then_with(|| candidate_order(&a.candidate, &b.candidate)));
    Ok(AttributionReport {
        rows,
        evidence: format_evidence(net, e),
        fingerprint: fingerprint(net),
        oracle_fallback,
        warnings,
    })
}

/// Root cause of `Y` for one individual in a chain model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainLabel {
    NoRootCause,
    Cause(usize),
}

/// Walks down from `Y`: the root cause is the first `X_k` with no
/// individual cause of its own below an unbroken run of individual causes.
pub fn classify_chain_cell(sem: &MonotoneSem, cell: &LatentCell) -> Result<ChainLabel, AttributionError> {
    let p = sem.p();
    let chain = (1..=p).all(|i| {
        let ps = sem.mechanism(i).parents();
        if i == 1 {
            ps.is_empty()
        } else {
            ps == [i - 1]
        }
    }) && sem.outcome_mechanism().parents() == [p];
    if !chain {
        return Err(AttributionError::NotAChain);
    }
    if !outcome_has_individual_cause(sem, cell) {
        return Ok(ChainLabel::NoRootCause);
    }
    let k = (1..=p)
        .rev()
        .find(|&j| !has_individual_cause(sem, cell, j))
        .expect("X1 is a root and has no individual cause");
    Ok(ChainLabel::Cause(k))
}

/// Settings for the closed-form versus oracle comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleCheckConfig {
    /// Cause counts cycled through by seed index.
    pub p_values: Vec<usize>,
    pub seeds: u64,
    pub base_seed: u64,
    pub tolerance: f64,
    /// Random general candidate sets per model, on top of singletons and
    /// prefixes.
    pub random_candidates: usize,
    /// Fixed parent sets for every model; `p_values` is then ignored.
    pub structure: Option<crate::counterfactual::ParentStructure>,
}

impl Default for OracleCheckConfig {
    fn default() -> Self {
        OracleCheckConfig { p_values: vec![4], seeds: 200, base_seed: 0, tolerance: 1e-10, random_candidates: 20, structure: None }
    }
}

/// One compared value.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleCase {
    pub seed_index: u64,
    pub p: usize,
    pub candidate: Candidate,
    pub evidence: String,
    pub closed_form: f64,
    pub oracle: f64,
}

impl OracleCase {
    pub fn delta(&self) -> f64 {
        let d = (self.closed_form - self.oracle).abs();
        if d.is_nan() {
            f64::INFINITY
        } else {
            d
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleCheckSummary {
    pub models: u64,
    pub comparisons: usize,
    pub max_delta: f64,
    pub worst: Option<OracleCase>,
    /// Cases above tolerance, in generation order.
    pub failures: Vec<OracleCase>,
}

impl OracleCheckSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Model number `index` of a seeded sequence: its own ChaCha stream.
pub fn oracle_check_model(base_seed: u64, index: u64, p: usize) -> (MonotoneSem, rand_chacha::ChaCha8Rng) {
    let mut rng = model_stream(base_seed, index);
    let structure = crate::counterfactual::ParentStructure::random(p, 3, &mut rng);
    let sem = crate::counterfactual::random_monotone_sem_with(p, &structure, 3, &mut rng);
    (sem, rng)
}

/// As [`oracle_check_model`] with the parent sets given.
pub fn oracle_check_model_on(
    base_seed: u64,
    index: u64,
    structure: &crate::counterfactual::ParentStructure,
) -> (MonotoneSem, rand_chacha::ChaCha8Rng) {
    let mut rng = model_stream(base_seed, index);
    let sem = crate::counterfactual::random_monotone_sem_with(structure.parents.len(), structure, 3, &mut rng);
    (sem, rng)
}

fn model_stream(base_seed: u64, index: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(base_seed);
    rng.set_stream(index);
    rng
}

fn random_candidates<R: rand::Rng>(p: usize, count: usize, rng: &mut R) -> Vec<CandidateSet> {
    (0..count)
        .map(|_| {
            let mask: u32 = rng.random_range(1..(1u32 << p));
            CandidateSet::new((1..=p).filter(|i| mask >> (i - 1) & 1 == 1).collect()).expect("nonzero mask")
        })
        .collect()
}

/// Empty, `Y=1`, `Y=0`, a random partial observation with positive
/// probability, and a full world drawn from the joint.
pub fn oracle_check_evidence<R: rand::Rng>(net: &Network, rng: &mut R) -> Vec<Evidence> {
    use crate::joint::{joint_prob_mask, lex_masks};
    use crate::model::{Assignment, Var};
    let p = net.p();
    let mut out = vec![
        Evidence::empty(),
        Evidence::new(Assignment::new().with(Var::Outcome, true)),
        Evidence::new(Assignment::new().with(Var::Outcome, false)),
    ];
    let possible = |e: &Evidence| crate::joint::condition_on_evidence(net, e).is_ok();
    for _ in 0..64 {
        let mut a = Assignment::new();
        for i in 1..=p {
            if rng.random_bool(0.5) {
                a.set(Var::Cause(i), rng.random_bool(0.5));
            }
        }
        if rng.random_bool(0.5) {
            a.set(Var::Outcome, rng.random_bool(0.5));
        }
        let e = Evidence::new(a);
        if !e.is_empty() && possible(&e) {
            out.push(e);
            break;
        }
    }
    let u: f64 = rng.random_range(0.0..1.0);
    let mut acc = 0.0;
    let mut last = None;
    'draw: for x in lex_masks(p) {
        for y in [false, true] {
            let w = joint_prob_mask(net, x, y);
            if w > 0.0 {
                last = Some((x, y));
                acc += w;
                if acc > u {
                    break 'draw;
                }
            }
        }
    }
    if let Some((x, y)) = last {
        out.push(Evidence::full(x, y, p));
    }
    out
}

/// Generates seeded random monotone models and compares the closed form on
/// their implied CPTs with enumeration over the models themselves.
pub fn run_oracle_check(config: &OracleCheckConfig) -> Result<OracleCheckSummary, AttributionError> {
    use crate::counterfactual::sem_to_cpt;
    let mut summary = OracleCheckSummary { models: 0, comparisons: 0, max_delta: 0.0, worst: None, failures: Vec::new() };
    for index in 0..config.seeds {
        let (p, (sem, mut rng)) = match &config.structure {
            Some(s) => (s.parents.len(), oracle_check_model_on(config.base_seed, index, s)),
            None => {
                let p = config.p_values[(index % config.p_values.len() as u64) as usize];
                (p, oracle_check_model(config.base_seed, index, p))
            }
        };
        let net = sem_to_cpt(&sem);
        let space = CellSpace::new(&sem)?;
        let mut sets: Vec<CandidateSet> = (1..=p).map(CandidateSet::singleton).collect();
        sets.extend((2..=p).map(CandidateSet::prefix_set));
        for k in random_candidates(p, config.random_candidates, &mut rng) {
            if !sets.contains(&k) {
                sets.push(k);
            }
        }
        let evidence = oracle_check_evidence(&net, &mut rng);
        let mut candidates: Vec<(Candidate, Vec<bool>)> = Vec::with_capacity(sets.len() + 1);
        for k in sets {
            let ind = space.root_cause_indicators(&sem, &k, IndicatorMethod::Scan)?;
            candidates.push((Candidate::Set(k), ind));
        }
        let full = CandidateSet::prefix_set(p);
        let full_ind = space.root_cause_indicators(&sem, &full, IndicatorMethod::Scan)?;
        candidates.push((Candidate::NoRootCause, full_ind));
        for e in &evidence {
            for (c, ind) in &candidates {
                let oracle = space.prc_from_indicators(ind, p, e).map(|v| match c {
                    Candidate::NoRootCause => 1.0 - v,
                    Candidate::Set(_) => v,
                });
                let closed = closedform::prc(&net, c, e);
                let (closed_form, oracle) = match (closed, oracle) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(ClosedFormError::ImpossibleEvidence), Err(SemError::ImpossibleEvidence)) => continue,
                    (a, b) => (a.unwrap_or(f64::NAN), b.unwrap_or(f64::NAN)),
                };
                let case = OracleCase { seed_index: index, p, candidate: c.clone(), evidence: format_evidence(&net, e), closed_form, oracle };
                let d = case.delta();
                summary.comparisons += 1;
                if summary.worst.is_none() || d > summary.max_delta {
                    summary.max_delta = d;
                    summary.worst = Some(case.clone());
                }
                if !(d <= config.tolerance) {
                    summary.failures.push(case);
                }
            }
        }
        summary.models += 1;
    }
    Ok(summary)
}

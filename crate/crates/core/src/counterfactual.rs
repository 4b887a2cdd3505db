//! Structural-equation oracle.
//!
//! A [`MonotoneSem`] assigns every variable a finite mixture of response
//! functions of its parents. One joint choice of response functions, a
//! [`LatentCell`], fixes every potential outcome of one individual, so all
//! counterfactual quantities are weighted sums over cells.
//!
//! The nested counterfactual used by the root indicator is evaluated in two
//! stages: `X_K` is read off the world where the prefix and gap variables
//! are set jointly, then `Y` is read off the world where only `X_K` is set
//! to that readout. In the second stage prefix and gap variables keep their
//! natural values.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{
    full_mask, row_of, validate_monotone_cpt, Assignment, Candidate, CandidateSet, Evidence,
    EvidenceMask, Mask, ModelError, Network, Var, MAX_CAUSES,
};

/// Largest number of latent cells the oracle will enumerate.
pub const MAX_CELLS: u128 = 100_000_000;

const WEIGHT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SemError {
    #[error("{variable}: response weights sum to {sum}, expected 1")]
    WeightSum { variable: String, sum: f64 },
    #[error("{variable}: negative response weight {weight}")]
    NegativeWeight { variable: String, weight: f64 },
    #[error("{variable}: response table has {found} rows, expected {expected}")]
    TableSize { variable: String, expected: usize, found: usize },
    #[error("{variable}: response function is not monotone")]
    NonMonotoneResponse { variable: String },
    #[error("{variable}: CPT is not monotone")]
    NonMonotoneCpt { variable: String },
    #[error("{count} latent cells exceed the enumeration cap of {MAX_CELLS}")]
    CellCap { count: u128 },
    #[error("impossible evidence: it has probability zero under the model")]
    ImpossibleEvidence,
    #[error("conditioning event has probability zero")]
    EmptyConditioning,
    #[error("no baseline given for X{0} and the evidence does not fix it")]
    MissingBaseline(usize),
    #[error("evidence must contain X{0}=1 and Y=1")]
    EvidencePattern(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// One response function and its mixture weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Response {
    pub weight: f64,
    /// Output for each parent row (first parent most significant).
    pub table: Vec<bool>,
}

impl Response {
    pub fn constant(weight: f64, value: bool, n_parents: usize) -> Self {
        Response { weight, table: vec![value; 1 << n_parents] }
    }

    pub fn is_constant(&self) -> bool {
        self.table.iter().all(|&b| b == self.table[0])
    }

    pub fn is_monotone(&self) -> bool {
        let width = self.table.len().trailing_zeros() as usize;
        (0..self.table.len()).all(|r| (0..width).all(|b| !self.table[r] || self.table[r | (1 << b)]))
    }
}

/// Structural equation of one variable: parents and a response mixture.
#[derive(Debug, Clone, PartialEq)]
pub struct Mechanism {
    parents: Vec<usize>,
    responses: Vec<Response>,
}

impl Mechanism {
    /// `parents` are 1-based cause indices in row-bit order.
    pub fn new(parents: Vec<usize>, responses: Vec<Response>) -> Self {
        Mechanism { parents: parents.into_iter().map(|j| j - 1).collect(), responses }
    }

    pub fn parents(&self) -> Vec<usize> {
        self.parents.iter().map(|j| j + 1).collect()
    }

    pub fn responses(&self) -> &[Response] {
        &self.responses
    }

    #[inline]
    fn output(&self, choice: usize, x: Mask) -> bool {
        self.responses[choice].table[row_of(&self.parents, x)]
    }

    fn implied_cpt(&self) -> Vec<f64> {
        let rows = 1usize << self.parents.len();
        (0..rows)
            .map(|r| {
                let live = self.responses.iter().filter(|resp| resp.weight > 0.0);
                if live.clone().all(|resp| resp.table[r]) {
                    1.0
                } else {
                    live.filter(|resp| resp.table[r]).fold(0.0, |acc, resp| acc + resp.weight)
                }
            })
            .collect()
    }
}

/// Explicit structural model over `X1..Xp` and `Y` with independent latent
/// response selections.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneSem {
    names: Vec<String>,
    outcome_name: String,
    mechanisms: Vec<Mechanism>,
    outcome: Mechanism,
}

impl MonotoneSem {
    /// Builds a model and checks that every response is monotone.
    pub fn new(
        names: Vec<String>,
        outcome_name: impl Into<String>,
        mechanisms: Vec<Mechanism>,
        outcome: Mechanism,
    ) -> Result<Self, SemError> {
        let sem = Self::new_general(names, outcome_name, mechanisms, outcome)?;
        for (name, mech) in sem.labelled() {
            if mech.responses.iter().any(|r| !r.is_monotone()) {
                return Err(SemError::NonMonotoneResponse { variable: name.to_string() });
            }
        }
        Ok(sem)
    }

    /// Builds a model without the monotonicity check. The indicator scans
    /// are definitional and stay correct here; the closed-form engine makes
    /// no claim about such models.
    pub fn new_general(
        names: Vec<String>,
        outcome_name: impl Into<String>,
        mechanisms: Vec<Mechanism>,
        outcome: Mechanism,
    ) -> Result<Self, SemError> {
        let outcome_name = outcome_name.into();
        let p = names.len();
        if p == 0 {
            return Err(ModelError::NoCauses.into());
        }
        if p > MAX_CAUSES {
            return Err(ModelError::TooManyCauses(p).into());
        }
        if mechanisms.len() != p {
            return Err(ModelError::RowCount { variable: "model".into(), expected: p, found: mechanisms.len() }.into());
        }
        if outcome.parents.is_empty() {
            return Err(ModelError::OutcomeWithoutParents.into());
        }
        let sem = MonotoneSem { names, outcome_name, mechanisms, outcome };
        for (idx, (name, mech)) in sem.labelled().enumerate() {
            let limit = if idx < p { idx } else { p };
            if let Some(&bad) = mech.parents.iter().find(|&&j| j >= limit) {
                return Err(ModelError::ParentOrder { child: name.to_string(), parent: bad + 1 }.into());
            }
            let rows = 1usize << mech.parents.len();
            let mut sum = 0.0;
            for r in &mech.responses {
                if r.table.len() != rows {
                    return Err(SemError::TableSize { variable: name.to_string(), expected: rows, found: r.table.len() });
                }
                if !(r.weight >= 0.0) {
                    return Err(SemError::NegativeWeight { variable: name.to_string(), weight: r.weight });
                }
                sum += r.weight;
            }
            if (sum - 1.0).abs() > WEIGHT_TOLERANCE {
                return Err(SemError::WeightSum { variable: name.to_string(), sum });
            }
        }
        Ok(sem)
    }

    pub fn p(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn outcome_name(&self) -> &str {
        &self.outcome_name
    }

    /// Mechanism of cause `i` (1-based).
    pub fn mechanism(&self, i: usize) -> &Mechanism {
        &self.mechanisms[i - 1]
    }

    pub fn outcome_mechanism(&self) -> &Mechanism {
        &self.outcome
    }

    fn labelled(&self) -> impl Iterator<Item = (&str, &Mechanism)> {
        self.names
            .iter()
            .map(String::as_str)
            .zip(self.mechanisms.iter())
            .chain(std::iter::once((self.outcome_name.as_str(), &self.outcome)))
    }

    pub fn is_monotone(&self) -> bool {
        self.labelled().all(|(_, m)| m.responses.iter().all(Response::is_monotone))
    }

    /// Number of latent cells, zero-weight responses included.
    pub fn cell_count(&self) -> u128 {
        self.labelled().map(|(_, m)| m.responses.len() as u128).product()
    }

    /// All cells with positive weight, in mixed-radix order (X1 slowest).
    pub fn cells(&self) -> Result<Vec<LatentCell>, SemError> {
        let count = self.cell_count();
        if count > MAX_CELLS {
            return Err(SemError::CellCap { count });
        }
        let mechs: Vec<&Mechanism> = self.labelled().map(|(_, m)| m).collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; mechs.len()];
        if mechs.iter().any(|m| m.responses.is_empty()) {
            return Ok(out);
        }
        loop {
            let weight: f64 = choice.iter().zip(&mechs).map(|(&c, m)| m.responses[c].weight).product();
            if weight > 0.0 {
                out.push(LatentCell { choice: choice.clone(), weight });
            }
            let mut pos = mechs.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < mechs[pos].responses.len() {
                    break;
                }
                choice[pos] = 0;
            }
        }
    }
}

/// One individual: a response index per variable (causes then `Y`).
#[derive(Debug, Clone, PartialEq)]
pub struct LatentCell {
    pub choice: Vec<usize>,
    pub weight: f64,
}

/// Values of all variables in one (possibly intervened) world.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct World {
    pub x: Mask,
    pub y: bool,
}

impl World {
    pub fn to_assignment(&self, p: usize) -> Assignment {
        Assignment::from_mask(self.x, p).with(Var::Outcome, self.y)
    }
}

/// An intervention `do(X_S = v)` on a set of causes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Intervention {
    pub mask: Mask,
    pub value: Mask,
}

impl Intervention {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn set(mask: Mask, value: Mask) -> Self {
        Intervention { mask, value: value & mask }
    }

    /// From a partial assignment over causes; the outcome is ignored.
    pub fn from_assignment(a: &Assignment) -> Self {
        let mut iv = Intervention::none();
        for (var, b) in a.iter() {
            if let Var::Cause(i) = var {
                iv.mask |= 1 << (i - 1);
                if b {
                    iv.value |= 1 << (i - 1);
                }
            }
        }
        iv
    }
}

/// Propagates the cell's responses in topological order; intervened causes
/// take their assigned values and `Y` is evaluated last.
pub fn eval_under_intervention(sem: &MonotoneSem, cell: &LatentCell, iv: Intervention) -> World {
    let mut x: Mask = iv.value & iv.mask;
    for (i, mech) in sem.mechanisms.iter().enumerate() {
        let bit = 1 << i;
        if iv.mask & bit == 0 && mech.output(cell.choice[i], x) {
            x |= bit;
        }
    }
    let y = sem.outcome.output(cell.choice[sem.p()], x);
    World { x, y }
}

/// How the cause and root indicators are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IndicatorMethod {
    /// Compare every pair of settings, as in the definitions.
    #[default]
    Scan,
    /// Compare only the all-zero and all-one settings; exact for monotone
    /// models.
    MonotoneShortcut,
}

/// Spreads the low bits of `code` over the set bits of `mask`.
#[inline]
fn deposit(code: u32, mask: Mask) -> Mask {
    let mut out = 0;
    let mut m = mask;
    let mut c = code;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if c & 1 == 1 {
            out |= low;
        }
        c >>= 1;
        m &= m - 1;
    }
    out
}

fn cause_indicator_masks(sem: &MonotoneSem, cell: &LatentCell, k: Mask, method: IndicatorMethod) -> bool {
    let y_at = |v: Mask| eval_under_intervention(sem, cell, Intervention::set(k, v)).y;
    match method {
        IndicatorMethod::MonotoneShortcut => y_at(0) != y_at(k),
        IndicatorMethod::Scan => {
            let first = y_at(0);
            (1..(1u32 << k.count_ones())).any(|code| y_at(deposit(code, k)) != first)
        }
    }
}

fn root_indicator_masks(sem: &MonotoneSem, cell: &LatentCell, k: Mask, upstream: Mask, method: IndicatorMethod) -> bool {
    if upstream == 0 {
        return true;
    }
    let nested = |u: Mask| {
        let readout = eval_under_intervention(sem, cell, Intervention::set(upstream, u)).x & k;
        eval_under_intervention(sem, cell, Intervention::set(k, readout)).y
    };
    match method {
        IndicatorMethod::MonotoneShortcut => nested(0) == nested(upstream),
        IndicatorMethod::Scan => {
            let first = nested(0);
            (1..(1u32 << upstream.count_ones())).all(|code| nested(deposit(code, upstream)) == first)
        }
    }
}

/// Cause indicator: some two settings of `X_K` give different `Y`.
pub fn indicator_c(sem: &MonotoneSem, cell: &LatentCell, k: &CandidateSet, method: IndicatorMethod) -> Result<bool, SemError> {
    k.check_range(sem.p())?;
    Ok(cause_indicator_masks(sem, cell, k.mask(), method))
}

/// Root indicator: the nested counterfactual `Y_{(X_K)_u}` does not depend
/// on the joint setting `u` of the prefix and gap variables. True when
/// there are no such variables.
pub fn indicator_r(sem: &MonotoneSem, cell: &LatentCell, k: &CandidateSet, method: IndicatorMethod) -> Result<bool, SemError> {
    let m = k.masks(sem.p())?;
    Ok(root_indicator_masks(sem, cell, m.k, m.prefix | m.gap, method))
}

/// Whether `X_i` (1-based) has an individual cause in this cell, i.e. its
/// response varies with its parents. Roots never do.
pub fn has_individual_cause(sem: &MonotoneSem, cell: &LatentCell, i: usize) -> bool {
    !sem.mechanisms[i - 1].responses[cell.choice[i - 1]].is_constant()
}

/// Whether `Y` has an individual cause among the causes in this cell.
pub fn outcome_has_individual_cause(sem: &MonotoneSem, cell: &LatentCell) -> bool {
    !sem.outcome.responses[cell.choice[sem.p()]].is_constant()
}

/// Indicator that `Y` is its own root cause: no intervention on `X` moves
/// `Y`.
pub fn indicator_no_root_cause(sem: &MonotoneSem, cell: &LatentCell) -> bool {
    let all = full_mask(sem.p());
    !cause_indicator_masks(sem, cell, all, IndicatorMethod::Scan)
}

/// Enumerated cells with their natural worlds; reused across queries.
#[derive(Debug, Clone)]
pub struct CellSpace {
    cells: Vec<LatentCell>,
    worlds: Vec<World>,
}

impl CellSpace {
    pub fn new(sem: &MonotoneSem) -> Result<Self, SemError> {
        let cells = sem.cells()?;
        let worlds = cells
            .iter()
            .map(|c| eval_under_intervention(sem, c, Intervention::none()))
            .collect();
        Ok(CellSpace { cells, worlds })
    }

    pub fn cells(&self) -> &[LatentCell] {
        &self.cells
    }

    pub fn worlds(&self) -> &[World] {
        &self.worlds
    }

    /// `E[f(cell) | E = e]` over cells whose natural world matches `e`.
    pub fn conditional_mean(&self, e: &EvidenceMask, mut f: impl FnMut(usize) -> f64) -> Result<f64, SemError> {
        let mut total = 0.0;
        let mut acc = 0.0;
        for (idx, (cell, w)) in self.cells.iter().zip(&self.worlds).enumerate() {
            if e.matches(w.x, w.y) {
                total += cell.weight;
                let v = f(idx);
                if v != 0.0 {
                    acc += cell.weight * v;
                }
            }
        }
        if total <= 0.0 {
            return Err(SemError::ImpossibleEvidence);
        }
        Ok(acc / total)
    }

    /// Per-cell `C = 1 and R = 1` for a candidate set.
    pub fn root_cause_indicators(&self, sem: &MonotoneSem, k: &CandidateSet, method: IndicatorMethod) -> Result<Vec<bool>, SemError> {
        let m = k.masks(sem.p())?;
        Ok(self
            .cells
            .iter()
            .map(|cell| {
                cause_indicator_masks(sem, cell, m.k, method)
                    && root_indicator_masks(sem, cell, m.k, m.prefix | m.gap, method)
            })
            .collect())
    }

    /// PRC from precomputed indicators.
    pub fn prc_from_indicators(&self, indicators: &[bool], p: usize, e: &Evidence) -> Result<f64, SemError> {
        let em = e.compile(p)?;
        self.conditional_mean(&em, |i| if indicators[i] { 1.0 } else { 0.0 })
    }

    pub fn prc(&self, sem: &MonotoneSem, candidate: &Candidate, e: &Evidence, method: IndicatorMethod) -> Result<f64, SemError> {
        match candidate {
            Candidate::Set(k) => {
                let ind = self.root_cause_indicators(sem, k, method)?;
                self.prc_from_indicators(&ind, sem.p(), e)
            }
            Candidate::NoRootCause => {
                let full = CandidateSet::prefix_set(sem.p());
                Ok(1.0 - self.prc(sem, &Candidate::Set(full), e, method)?)
            }
        }
    }
}

/// PRC by enumeration of latent cells, using the definitional scans.
pub fn oracle_prc(sem: &MonotoneSem, candidate: &Candidate, e: &Evidence) -> Result<f64, SemError> {
    CellSpace::new(sem)?.prc(sem, candidate, e, IndicatorMethod::Scan)
}

/// `E(Y_{X_K=1} - Y_{X_K=0} | E = e)`.
pub fn oracle_posttce(sem: &MonotoneSem, k: &CandidateSet, e: &Evidence) -> Result<f64, SemError> {
    k.check_range(sem.p())?;
    let space = CellSpace::new(sem)?;
    oracle_posttce_in(&space, sem, k, e)
}

pub fn oracle_posttce_in(space: &CellSpace, sem: &MonotoneSem, k: &CandidateSet, e: &Evidence) -> Result<f64, SemError> {
    let km = k.mask();
    let em = e.compile(sem.p())?;
    space.conditional_mean(&em, |i| {
        let cell = &space.cells[i];
        let y1 = eval_under_intervention(sem, cell, Intervention::set(km, km)).y;
        let y0 = eval_under_intervention(sem, cell, Intervention::set(km, 0)).y;
        (y1 as i32 - y0 as i32) as f64
    })
}

/// `E(Y_{suffix = x*} - Y_{X_k = 0, suffix = x*} | E = e)` where the suffix
/// is `X_{k+1..p}`. Without a baseline the suffix values must be fixed by
/// the evidence.
pub fn oracle_postdce(sem: &MonotoneSem, k: usize, baseline: Option<&Assignment>, e: &Evidence) -> Result<f64, SemError> {
    let p = sem.p();
    if k == 0 || k > p {
        return Err(ModelError::IndexOutOfRange { index: k, p }.into());
    }
    let mut suffix_mask = 0;
    let mut suffix_value = 0;
    for j in k + 1..=p {
        let v = baseline
            .and_then(|b| b.get(Var::Cause(j)))
            .or_else(|| e.observed().get(Var::Cause(j)))
            .ok_or(SemError::MissingBaseline(j))?;
        suffix_mask |= 1 << (j - 1);
        if v {
            suffix_value |= 1 << (j - 1);
        }
    }
    let kb = 1 << (k - 1);
    let space = CellSpace::new(sem)?;
    let em = e.compile(p)?;
    space.conditional_mean(&em, |i| {
        let cell = &space.cells[i];
        let direct = eval_under_intervention(sem, cell, Intervention::set(suffix_mask, suffix_value)).y;
        let off = eval_under_intervention(sem, cell, Intervention::set(suffix_mask | kb, suffix_value)).y;
        (direct as i32 - off as i32) as f64
    })
}

/// Probability of necessity `P(Y_{X_k=0} = 0 | e)` for evidence containing
/// `X_k = 1, Y = 1`.
pub fn oracle_pn(sem: &MonotoneSem, k: usize, e: &Evidence) -> Result<f64, SemError> {
    let obs = e.observed();
    if obs.get(Var::Cause(k)) != Some(true) || obs.get(Var::Outcome) != Some(true) {
        return Err(SemError::EvidencePattern(k));
    }
    let kb = 1 << (k - 1);
    let space = CellSpace::new(sem)?;
    let em = e.compile(sem.p())?;
    space.conditional_mean(&em, |i| {
        let y0 = eval_under_intervention(sem, &space.cells[i], Intervention::set(kb, 0)).y;
        if y0 {
            0.0
        } else {
            1.0
        }
    })
}

/// Probability of causation `P(Y_{X_k=0} = 0 | Y_{X_k=1} = 1)`, over cells
/// without observational conditioning.
pub fn oracle_pc(sem: &MonotoneSem, k: usize) -> Result<f64, SemError> {
    let p = sem.p();
    if k == 0 || k > p {
        return Err(ModelError::IndexOutOfRange { index: k, p }.into());
    }
    let kb = 1 << (k - 1);
    let mut total = 0.0;
    let mut acc = 0.0;
    for cell in sem.cells()? {
        if eval_under_intervention(sem, &cell, Intervention::set(kb, kb)).y {
            total += cell.weight;
            if !eval_under_intervention(sem, &cell, Intervention::set(kb, 0)).y {
                acc += cell.weight;
            }
        }
    }
    if total <= 0.0 {
        return Err(SemError::EmptyConditioning);
    }
    Ok(acc / total)
}

fn canonical_mechanism(parents: &[usize], rows: &[f64]) -> Mechanism {
    let mut cuts: Vec<f64> = rows.to_vec();
    cuts.push(0.0);
    cuts.push(1.0);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let responses = cuts
        .windows(2)
        .map(|w| Response {
            weight: w[1] - w[0],
            // U in (w0, w1] fires exactly on rows with P >= w1
            table: rows.iter().map(|&pr| pr >= w[1]).collect(),
        })
        .collect();
    Mechanism { parents: parents.to_vec(), responses }
}

/// Single-threshold coupling `X_i = 1{U_i <= P(X_i = 1 | parents)}`: the
/// distinct CPT values of each variable cut `[0, 1]` into intervals, one
/// response per interval.
pub fn canonical_sem_from_network(net: &Network) -> Result<MonotoneSem, SemError> {
    if let Some(v) = validate_monotone_cpt(net).violations.first() {
        return Err(SemError::NonMonotoneCpt { variable: v.variable.clone() });
    }
    let mechanisms = (0..net.p())
        .map(|i| canonical_mechanism(net.parents0(i), net.cpt0(i)))
        .collect();
    let outcome = canonical_mechanism(net.outcome_parents0(), net.outcome_cpt());
    Ok(MonotoneSem {
        names: net.names().to_vec(),
        outcome_name: net.outcome_name().to_string(),
        mechanisms,
        outcome,
    })
}

/// Observational CPTs implied by the model.
pub fn sem_to_cpt(sem: &MonotoneSem) -> Network {
    let rows = |m: &Mechanism| m.implied_cpt().into_iter().map(|v| v.clamp(0.0, 1.0)).collect::<Vec<_>>();
    Network::from_parts(
        sem.names.clone(),
        sem.outcome_name.clone(),
        sem.mechanisms.iter().map(|m| m.parents.clone()).collect(),
        sem.mechanisms.iter().map(rows).collect(),
        sem.outcome.parents.clone(),
        rows(&sem.outcome),
    )
    .expect("a well-formed model implies a well-formed network")
}

/// Parent sets for the causes and the outcome, 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParentStructure {
    pub parents: Vec<Vec<usize>>,
    pub outcome_parents: Vec<usize>,
}

impl ParentStructure {
    /// `X1 -> X2 -> ... -> Xp -> Y`.
    pub fn chain(p: usize) -> Self {
        ParentStructure {
            parents: (1..=p).map(|i| if i == 1 { vec![] } else { vec![i - 1] }).collect(),
            outcome_parents: vec![p],
        }
    }

    /// Random DAG in topological order: each earlier cause becomes a parent
    /// with probability 1/2, capped at `max_parents`; `Y` gets a nonempty
    /// random parent set.
    pub fn random<R: Rng>(p: usize, max_parents: usize, rng: &mut R) -> Self {
        let pick = |limit: usize, rng: &mut R| {
            let mut ps: Vec<usize> = (1..=limit).filter(|_| rng.random_bool(0.5)).collect();
            while ps.len() > max_parents {
                let drop = rng.random_range(0..ps.len());
                ps.remove(drop);
            }
            ps
        };
        let parents = (1..=p).map(|i| pick(i - 1, rng)).collect();
        let mut outcome_parents = pick(p, rng);
        if outcome_parents.is_empty() {
            outcome_parents.push(rng.random_range(1..=p));
        }
        ParentStructure { parents, outcome_parents }
    }

    pub fn is_chain(&self) -> bool {
        let p = self.parents.len();
        self.parents.iter().enumerate().all(|(i, ps)| if i == 0 { ps.is_empty() } else { ps == &[i] })
            && self.outcome_parents == [p]
    }
}

/// Upward closure of a random set of rows: a random monotone function.
fn random_monotone_table<R: Rng>(n_parents: usize, rng: &mut R) -> Vec<bool> {
    let rows = 1usize << n_parents;
    let density = rng.random_range(0.0..1.0);
    let seeds: Vec<usize> = (0..rows).filter(|_| rng.random_bool(density * density)).collect();
    (0..rows).map(|r| seeds.iter().any(|&s| s & r == s)).collect()
}

fn random_mechanism<R: Rng>(parents: &[usize], max_responses: usize, rng: &mut R) -> Mechanism {
    let m = parents.len();
    let count = rng.random_range(1..=max_responses);
    let mut responses: Vec<Response> = (0..count)
        .map(|_| Response {
            weight: rng.random_range(0.05..1.0),
            table: if m == 0 { vec![rng.random_bool(0.5)] } else { random_monotone_table(m, rng) },
        })
        .collect();
    if m == 0 && responses.len() == 1 && rng.random_bool(0.8) {
        let table = vec![!responses[0].table[0]];
        responses.push(Response { weight: rng.random_range(0.05..1.0), table });
    }
    let total: f64 = responses.iter().map(|r| r.weight).sum();
    for r in &mut responses {
        r.weight /= total;
    }
    Mechanism { parents: parents.iter().map(|j| j - 1).collect(), responses }
}

/// Random monotone model with the given parent structure; deterministic in
/// `seed`. Each variable mixes up to three random monotone responses.
pub fn random_monotone_sem(p: usize, structure: &ParentStructure, seed: u64) -> MonotoneSem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_monotone_sem_with(p, structure, 3, &mut rng)
}

pub fn random_monotone_sem_with<R: Rng>(p: usize, structure: &ParentStructure, max_responses: usize, rng: &mut R) -> MonotoneSem {
    assert_eq!(structure.parents.len(), p, "parent structure must cover every cause");
    let mechanisms = structure.parents.iter().map(|ps| random_mechanism(ps, max_responses, rng)).collect();
    let outcome = random_mechanism(&structure.outcome_parents, max_responses, rng);
    MonotoneSem::new(
        (1..=p).map(|i| format!("X{i}")).collect(),
        "Y",
        mechanisms,
        outcome,
    )
    .expect("generator emits monotone, normalized responses")
}

//! Networks, assignments, evidence and candidate sets shared by every engine.
//!
//! Cause variables are addressed 1-based (`X1..Xp`) on every public surface.
//! Internally a total assignment of the causes is a [`Mask`] where bit `i`
//! holds the value of `X(i+1)`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Bit-packed total assignment of the cause variables (bit `i` is `X(i+1)`).
pub type Mask = u32;

/// Largest number of cause variables any engine will enumerate.
pub const MAX_CAUSES: usize = 24;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("network must have at least one cause variable")]
    NoCauses,
    #[error("network has {0} cause variables; at most {MAX_CAUSES} are supported")]
    TooManyCauses(usize),
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
    #[error("{child}: parent X{parent} does not precede it in topological order")]
    ParentOrder { child: String, parent: usize },
    #[error("{child}: parent X{parent} listed twice")]
    DuplicateParent { child: String, parent: usize },
    #[error("{variable}: expected {expected} CPT rows, found {found}")]
    RowCount { variable: String, expected: usize, found: usize },
    #[error("{variable}: probability {value} outside [0, 1]")]
    ProbabilityRange { variable: String, value: f64 },
    #[error("outcome must have at least one cause parent")]
    OutcomeWithoutParents,
    #[error("index {index} outside 1..={p}")]
    IndexOutOfRange { index: usize, p: usize },
    #[error("candidate set is empty")]
    EmptyCandidate,
    #[error("index {0} appears twice in a candidate set")]
    DuplicateIndex(usize),
    #[error("assignments range over different variables")]
    MismatchedAssignments,
    #[error("assignment is not total over the causes")]
    PartialAssignment,
}

/// A variable of the model: one of the causes (1-based) or the outcome `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Cause(usize),
    Outcome,
}

/// Binary causal Bayesian network over causes `X1..Xp` in topological order
/// plus one distinguished outcome.
///
/// CPT rows are dense: the row for a parent assignment is the integer whose
/// bits are the parent values, first parent most significant. Parents are
/// kept in ascending index order.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    names: Vec<String>,
    outcome_name: String,
    parents: Vec<Vec<usize>>,
    cpt: Vec<Vec<f64>>,
    outcome_parents: Vec<usize>,
    outcome_cpt: Vec<f64>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Row index of the parent assignment read off `x`.
#[inline]
pub(crate) fn row_of(parents: &[usize], x: Mask) -> usize {
    parents
        .iter()
        .fold(0usize, |row, &j| (row << 1) | ((x >> j) & 1) as usize)
}

/// Reorders `parents` ascending and permutes `rows` to match.
fn canonical_rows(parents: &[usize], rows: &[f64]) -> (Vec<usize>, Vec<f64>) {
    let m = parents.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&pos| parents[pos]);
    let sorted: Vec<usize> = order.iter().map(|&pos| parents[pos]).collect();
    let mut out = vec![0.0; rows.len()];
    for (new_row, slot) in out.iter_mut().enumerate() {
        // bit (m-1-t) of new_row is the value of sorted[t] = parents[order[t]]
        let mut old_row = 0usize;
        for (t, &pos) in order.iter().enumerate() {
            let bit = (new_row >> (m - 1 - t)) & 1;
            old_row |= bit << (m - 1 - pos);
        }
        *slot = rows[old_row];
    }
    (sorted, out)
}

impl Network {
    /// Builds a network. `parents` and `outcome_parents` use 1-based cause
    /// indices; CPT rows follow the order in which parents are given.
    pub fn new(
        names: Vec<String>,
        outcome_name: impl Into<String>,
        parents: Vec<Vec<usize>>,
        cpt: Vec<Vec<f64>>,
        outcome_parents: Vec<usize>,
        outcome_cpt: Vec<f64>,
    ) -> Result<Self, ModelError> {
        let outcome_name = outcome_name.into();
        let p = names.len();
        if p == 0 {
            return Err(ModelError::NoCauses);
        }
        if p > MAX_CAUSES {
            return Err(ModelError::TooManyCauses(p));
        }
        for (i, name) in names.iter().chain(std::iter::once(&outcome_name)).enumerate() {
            if !is_identifier(name) {
                return Err(ModelError::InvalidName(name.clone()));
            }
            if names[..i.min(p)].contains(name) {
                return Err(ModelError::DuplicateName(name.clone()));
            }
        }
        if parents.len() != p || cpt.len() != p {
            return Err(ModelError::RowCount {
                variable: "network".into(),
                expected: p,
                found: parents.len().min(cpt.len()),
            });
        }

        let check = |label: &str, limit: usize, ps: &[usize], rows: &[f64]| {
            let mut zero_based = Vec::with_capacity(ps.len());
            for &q in ps {
                if q == 0 || q > limit {
                    return Err(ModelError::ParentOrder { child: label.to_string(), parent: q });
                }
                if zero_based.contains(&(q - 1)) {
                    return Err(ModelError::DuplicateParent { child: label.to_string(), parent: q });
                }
                zero_based.push(q - 1);
            }
            let expected = 1usize << ps.len();
            if rows.len() != expected {
                return Err(ModelError::RowCount {
                    variable: label.to_string(),
                    expected,
                    found: rows.len(),
                });
            }
            if let Some(&bad) = rows.iter().find(|v| !(0.0..=1.0).contains(*v)) {
                return Err(ModelError::ProbabilityRange { variable: label.to_string(), value: bad });
            }
            Ok(canonical_rows(&zero_based, rows))
        };

        let mut norm_parents = Vec::with_capacity(p);
        let mut norm_cpt = Vec::with_capacity(p);
        for i in 0..p {
            let (ps, rows) = check(&names[i], i, &parents[i], &cpt[i])?;
            norm_parents.push(ps);
            norm_cpt.push(rows);
        }
        if outcome_parents.is_empty() {
            return Err(ModelError::OutcomeWithoutParents);
        }
        let (yp, yrows) = check(&outcome_name, p, &outcome_parents, &outcome_cpt)?;

        Ok(Network {
            names,
            outcome_name,
            parents: norm_parents,
            cpt: norm_cpt,
            outcome_parents: yp,
            outcome_cpt: yrows,
        })
    }

    /// Number of cause variables `p`.
    pub fn p(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn outcome_name(&self) -> &str {
        &self.outcome_name
    }

    /// Name of cause `i` (1-based).
    pub fn name(&self, i: usize) -> &str {
        &self.names[i - 1]
    }

    /// Looks a variable up by name.
    pub fn var_by_name(&self, name: &str) -> Option<Var> {
        if name == self.outcome_name {
            return Some(Var::Outcome);
        }
        self.names.iter().position(|n| n == name).map(|i| Var::Cause(i + 1))
    }

    pub fn var_name(&self, v: Var) -> &str {
        match v {
            Var::Cause(i) => self.name(i),
            Var::Outcome => &self.outcome_name,
        }
    }

    /// Parents of cause `i`, 1-based.
    pub fn parents(&self, i: usize) -> Vec<usize> {
        self.parents[i - 1].iter().map(|j| j + 1).collect()
    }

    /// Outcome parents, 1-based.
    pub fn outcome_parents(&self) -> Vec<usize> {
        self.outcome_parents.iter().map(|j| j + 1).collect()
    }

    /// CPT of cause `i` (1-based): `P(X_i = 1 | parent row)`.
    pub fn cpt(&self, i: usize) -> &[f64] {
        &self.cpt[i - 1]
    }

    pub fn outcome_cpt(&self) -> &[f64] {
        &self.outcome_cpt
    }

    pub(crate) fn parents0(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    pub(crate) fn outcome_parents0(&self) -> &[usize] {
        &self.outcome_parents
    }

    pub(crate) fn cpt0(&self, i: usize) -> &[f64] {
        &self.cpt[i]
    }

    /// `P(X_{i+1} = 1 | parents read off x)`, 0-based `i`.
    #[inline]
    pub(crate) fn prob_one0(&self, i: usize, x: Mask) -> f64 {
        self.cpt[i][row_of(&self.parents[i], x)]
    }

    /// `P(Y = 1 | X = x)`.
    #[inline]
    pub(crate) fn outcome_prob(&self, x: Mask) -> f64 {
        self.outcome_cpt[row_of(&self.outcome_parents, x)]
    }

    /// Rebuilds the network from 0-based parents and canonical rows.
    pub(crate) fn from_parts(
        names: Vec<String>,
        outcome_name: String,
        parents0: Vec<Vec<usize>>,
        cpt: Vec<Vec<f64>>,
        outcome_parents0: Vec<usize>,
        outcome_cpt: Vec<f64>,
    ) -> Result<Self, ModelError> {
        let one = |v: &[usize]| v.iter().map(|j| j + 1).collect::<Vec<_>>();
        Network::new(
            names,
            outcome_name,
            parents0.iter().map(|v| one(v)).collect(),
            cpt,
            one(&outcome_parents0),
            outcome_cpt,
        )
    }
}

#[inline]
pub fn full_mask(p: usize) -> Mask {
    if p >= 32 {
        Mask::MAX
    } else {
        (1u32 << p) - 1
    }
}

/// Total or partial 0/1 valuation of model variables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: BTreeMap<Var, bool>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Total assignment over causes `X1..Xp` from a bit slice (`bits[0]` is `X1`).
    pub fn from_bits(bits: &[bool]) -> Self {
        let values = bits
            .iter()
            .enumerate()
            .map(|(i, &b)| (Var::Cause(i + 1), b))
            .collect();
        Assignment { values }
    }

    pub fn from_mask(x: Mask, p: usize) -> Self {
        let bits: Vec<bool> = (0..p).map(|i| (x >> i) & 1 == 1).collect();
        Self::from_bits(&bits)
    }

    pub fn with(mut self, var: Var, value: bool) -> Self {
        self.values.insert(var, value);
        self
    }

    pub fn set(&mut self, var: Var, value: bool) -> Option<bool> {
        self.values.insert(var, value)
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.values.get(&var).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.values.iter().map(|(&v, &b)| (v, b))
    }

    /// True when every cause `X1..Xp` is assigned.
    pub fn is_total(&self, p: usize) -> bool {
        (1..=p).all(|i| self.values.contains_key(&Var::Cause(i)))
    }

    /// Cause values packed into a mask; fails unless total over `X1..Xp`.
    pub fn cause_mask(&self, p: usize) -> Result<Mask, ModelError> {
        let mut x = 0;
        for i in 1..=p {
            match self.values.get(&Var::Cause(i)) {
                Some(true) => x |= 1 << (i - 1),
                Some(false) => {}
                None => return Err(ModelError::PartialAssignment),
            }
        }
        Ok(x)
    }

    /// Componentwise `self ⪯ other`.
    pub fn leq(&self, other: &Assignment) -> Result<bool, ModelError> {
        leq_partial_order(self, other)
    }
}

/// `a ⪯ b` iff `a_i <= b_i` for every index. Both sides must range over the
/// same variables.
pub fn leq_partial_order(a: &Assignment, b: &Assignment) -> Result<bool, ModelError> {
    if a.values.len() != b.values.len() || !a.values.keys().eq(b.values.keys()) {
        return Err(ModelError::MismatchedAssignments);
    }
    Ok(a.values.values().zip(b.values.values()).all(|(&u, &v)| u <= v))
}

/// The observed evidence `E = e`: a partial assignment, possibly empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Evidence {
    observed: Assignment,
}

/// Evidence compiled against a cause count for fast matching.
#[derive(Debug, Clone, Copy)]
pub struct EvidenceMask {
    pub care: Mask,
    pub value: Mask,
    pub outcome: Option<bool>,
}

impl EvidenceMask {
    #[inline]
    pub fn matches(&self, x: Mask, y: bool) -> bool {
        (x & self.care) == self.value && self.outcome.is_none_or(|o| o == y)
    }
}

impl Evidence {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(observed: Assignment) -> Self {
        Evidence { observed }
    }

    pub fn observed(&self) -> &Assignment {
        &self.observed
    }

    pub fn is_empty(&self) -> bool {
        self.observed.is_empty()
    }

    /// Point evidence `(X, Y) = (x, y)`.
    pub fn full(x: Mask, y: bool, p: usize) -> Self {
        Evidence::new(Assignment::from_mask(x, p).with(Var::Outcome, y))
    }

    pub fn compile(&self, p: usize) -> Result<EvidenceMask, ModelError> {
        let mut m = EvidenceMask { care: 0, value: 0, outcome: None };
        for (var, b) in self.observed.iter() {
            match var {
                Var::Cause(i) => {
                    if i == 0 || i > p {
                        return Err(ModelError::IndexOutOfRange { index: i, p });
                    }
                    m.care |= 1 << (i - 1);
                    if b {
                        m.value |= 1 << (i - 1);
                    }
                }
                Var::Outcome => m.outcome = Some(b),
            }
        }
        Ok(m)
    }
}

/// The three index sets cut out of `{1..p}` by a candidate set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Partition {
    pub prefix: Vec<usize>,
    pub gap: Vec<usize>,
    pub suffix: Vec<usize>,
}

/// Prefix `{j < k1}`, gap `{k1 < j < kr, j ∉ K}` and suffix `{kr < j <= p}`.
pub fn partition_candidate(k: &[usize], p: usize) -> Result<Partition, ModelError> {
    let set = CandidateSet::new(k.to_vec())?;
    set.partition(p)
}

/// A nonempty, sorted, duplicate-free set of 1-based cause indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateSet {
    members: Vec<usize>,
}

impl CandidateSet {
    pub fn new(mut members: Vec<usize>) -> Result<Self, ModelError> {
        if members.is_empty() {
            return Err(ModelError::EmptyCandidate);
        }
        if let Some(&zero) = members.iter().find(|&&i| i == 0) {
            return Err(ModelError::IndexOutOfRange { index: zero, p: 0 });
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(ModelError::DuplicateIndex(w[0]));
        }
        Ok(CandidateSet { members })
    }

    pub fn singleton(k: usize) -> Self {
        CandidateSet::new(vec![k]).expect("singleton index must be positive")
    }

    /// `{1, ..., k}`.
    pub fn prefix_set(k: usize) -> Self {
        CandidateSet::new((1..=k).collect()).expect("prefix set must be nonempty")
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn first(&self) -> usize {
        self.members[0]
    }

    pub fn last(&self) -> usize {
        *self.members.last().unwrap()
    }

    pub fn check_range(&self, p: usize) -> Result<(), ModelError> {
        match self.members.iter().find(|&&i| i > p) {
            Some(&i) => Err(ModelError::IndexOutOfRange { index: i, p }),
            None => Ok(()),
        }
    }

    pub fn partition(&self, p: usize) -> Result<Partition, ModelError> {
        self.check_range(p)?;
        let (k1, kr) = (self.first(), self.last());
        Ok(Partition {
            prefix: (1..k1).collect(),
            gap: (k1 + 1..kr).filter(|j| !self.contains(*j)).collect(),
            suffix: (kr + 1..=p).collect(),
        })
    }

    pub fn mask(&self) -> Mask {
        self.members.iter().fold(0, |m, &i| m | (1 << (i - 1)))
    }

    /// Masks of (K, prefix, gap, suffix).
    pub fn masks(&self, p: usize) -> Result<CandidateMasks, ModelError> {
        let part = self.partition(p)?;
        let pack = |v: &[usize]| v.iter().fold(0u32, |m, &i| m | (1 << (i - 1)));
        Ok(CandidateMasks {
            k: self.mask(),
            prefix: pack(&part.prefix),
            gap: pack(&part.gap),
            suffix: pack(&part.suffix),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidateMasks {
    pub k: Mask,
    pub prefix: Mask,
    pub gap: Mask,
    pub suffix: Mask,
}

impl fmt::Display for CandidateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.members.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "X{i}")?;
        }
        write!(f, "}}")
    }
}

/// A PRC query target: a cause set, or the "no root cause" event (`Y` is
/// its own root cause).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Candidate {
    Set(CandidateSet),
    NoRootCause,
}

impl Candidate {
    pub fn set(members: Vec<usize>) -> Result<Self, ModelError> {
        CandidateSet::new(members).map(Candidate::Set)
    }
}

impl From<CandidateSet> for Candidate {
    fn from(s: CandidateSet) -> Self {
        Candidate::Set(s)
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Candidate::Set(s) => s.fmt(f),
            Candidate::NoRootCause => write!(f, "none"),
        }
    }
}

/// A pair of CPT rows of one variable that breaks monotonicity.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityViolation {
    pub variable: String,
    /// Parent bits of the smaller row, first parent leftmost.
    pub lower_row: String,
    pub upper_row: String,
    pub lower_prob: f64,
    pub upper_prob: f64,
}

impl fmt::Display for MonotonicityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: P(1 | {}) = {} exceeds P(1 | {}) = {}",
            self.variable, self.lower_row, self.lower_prob, self.upper_row, self.upper_prob
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MonotonicityReport {
    pub violations: Vec<MonotonicityViolation>,
}

impl MonotonicityReport {
    pub fn is_monotone(&self) -> bool {
        self.violations.is_empty()
    }
}

pub(crate) fn row_bits(row: usize, width: usize) -> String {
    if width == 0 {
        return "-".into();
    }
    (0..width)
        .map(|t| if (row >> (width - 1 - t)) & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn covering_violations(name: &str, width: usize, rows: &[f64], out: &mut Vec<MonotonicityViolation>) {
    for (r, &lo) in rows.iter().enumerate() {
        for b in 0..width {
            let up = r | (1 << b);
            if up != r && lo > rows[up] {
                out.push(MonotonicityViolation {
                    variable: name.to_string(),
                    lower_row: row_bits(r, width),
                    upper_row: row_bits(up, width),
                    lower_prob: lo,
                    upper_prob: rows[up],
                });
            }
        }
    }
}

/// Checks that every CPT (outcome included) is non-decreasing along the
/// covering pairs of its parent lattice.
pub fn validate_monotone_cpt(net: &Network) -> MonotonicityReport {
    let mut violations = Vec::new();
    for i in 0..net.p() {
        covering_violations(&net.names[i], net.parents[i].len(), &net.cpt[i], &mut violations);
    }
    covering_violations(
        &net.outcome_name,
        net.outcome_parents.len(),
        &net.outcome_cpt,
        &mut violations,
    );
    MonotonicityReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("X{i}")).collect()
    }

    #[test]
    fn partition_examples() {
        let part = partition_candidate(&[2], 5).unwrap();
        assert_eq!(part.prefix, vec![1]);
        assert!(part.gap.is_empty());
        assert_eq!(part.suffix, vec![3, 4, 5]);

        let part = partition_candidate(&[2, 5], 6).unwrap();
        assert_eq!(part.prefix, vec![1]);
        assert_eq!(part.gap, vec![3, 4]);
        assert_eq!(part.suffix, vec![6]);

        for k in 1..=6 {
            let part = CandidateSet::prefix_set(k).partition(6).unwrap();
            assert!(part.prefix.is_empty() && part.gap.is_empty());
        }
    }

    #[test]
    fn partition_errors() {
        assert_eq!(partition_candidate(&[], 3), Err(ModelError::EmptyCandidate));
        assert_eq!(
            partition_candidate(&[4], 3),
            Err(ModelError::IndexOutOfRange { index: 4, p: 3 })
        );
        assert_eq!(partition_candidate(&[2, 2], 3), Err(ModelError::DuplicateIndex(2)));
    }

    #[test]
    fn partial_order_examples() {
        let a = Assignment::from_bits(&[false, false, false]);
        let b = Assignment::from_bits(&[true, false, true]);
        assert!(leq_partial_order(&a, &b).unwrap());
        let c = Assignment::from_bits(&[true, false]);
        let d = Assignment::from_bits(&[false, true]);
        assert!(!leq_partial_order(&c, &d).unwrap());
        assert!(!leq_partial_order(&d, &c).unwrap());
        assert!(leq_partial_order(&b, &b).unwrap());
        assert_eq!(leq_partial_order(&a, &c), Err(ModelError::MismatchedAssignments));
    }

    #[test]
    fn parents_are_reordered_with_rows() {
        // X3 declared with parents (X2, X1): row bits are x2 x1
        let net = Network::new(
            names(3),
            "Y",
            vec![vec![], vec![], vec![2, 1]],
            vec![vec![0.5], vec![0.5], vec![0.0, 0.1, 0.2, 0.3]],
            vec![3],
            vec![0.1, 0.9],
        )
        .unwrap();
        assert_eq!(net.parents(3), vec![1, 2]);
        // new rows are x1 x2: (0,0)=0.0 (0,1)=0.2 (1,0)=0.1 (1,1)=0.3
        assert_eq!(net.cpt(3), &[0.0, 0.2, 0.1, 0.3]);
    }

    #[test]
    fn network_rejects_bad_input() {
        let err = Network::new(names(2), "Y", vec![vec![2], vec![]], vec![vec![0.1, 0.2], vec![0.5]], vec![1], vec![0.1, 0.2]);
        assert!(matches!(err, Err(ModelError::ParentOrder { .. })));
        let err = Network::new(names(1), "Y", vec![vec![]], vec![vec![1.5]], vec![1], vec![0.1, 0.2]);
        assert!(matches!(err, Err(ModelError::ProbabilityRange { .. })));
        let err = Network::new(names(1), "Y", vec![vec![]], vec![vec![0.5, 0.5]], vec![1], vec![0.1, 0.2]);
        assert!(matches!(err, Err(ModelError::RowCount { .. })));
        let err = Network::new(names(1), "X1", vec![vec![]], vec![vec![0.5]], vec![1], vec![0.1, 0.2]);
        assert!(matches!(err, Err(ModelError::DuplicateName(_))));
    }

    #[test]
    fn monotonicity_examples() {
        let root = Network::new(names(1), "Y", vec![vec![]], vec![vec![0.3]], vec![1], vec![0.2, 0.4]).unwrap();
        assert!(validate_monotone_cpt(&root).is_monotone());

        let bad = Network::new(
            names(2),
            "Y",
            vec![vec![], vec![1]],
            vec![vec![0.5], vec![0.7, 0.3]],
            vec![2],
            vec![0.1, 0.9],
        )
        .unwrap();
        let report = validate_monotone_cpt(&bad);
        assert_eq!(report.violations.len(), 1);
        let v = &report.violations[0];
        assert_eq!(v.variable, "X2");
        assert_eq!((v.lower_row.as_str(), v.upper_row.as_str()), ("0", "1"));
    }
}

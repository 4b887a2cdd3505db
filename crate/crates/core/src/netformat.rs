//! Text format for networks, evidence and candidate sets.
//!
//! ```text
//! # comments run to end of line
//! [variables]
//! Smoking
//! Cancer
//! [outcome]
//! Cancer
//! [parents]
//! Cancer: Smoking
//! [cpt]
//! Smoking | - = 0.3
//! Cancer | 0 = 0.1
//! Cancer | 1 = 0.6
//! ```
//!
//! Variables are declared one per line in topological order. Parent bits
//! follow the order in which the child's parents are listed. The canonical
//! serialization lists the outcome last, parents in ascending order, and
//! probabilities with the shortest decimal that reads back to the same
//! `f64`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::model::{is_identifier, row_bits, Assignment, Candidate, CandidateSet, Evidence, Network, Var};

/// Stable identifiers for each class of parse failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ErrorCode {
    EmptyDocument,
    UnknownSection,
    DuplicateSection,
    MissingSection,
    ContentOutsideSection,
    InvalidName,
    DuplicateVariable,
    UnknownVariable,
    ForwardParent,
    SelfParent,
    DuplicateParent,
    DuplicateParentLine,
    OutcomeAsParent,
    NoOutcome,
    MultipleOutcomes,
    OutcomeWithoutParents,
    NoCauses,
    TooManyCauses,
    MalformedLine,
    MalformedBits,
    BitsLength,
    MissingRow,
    DuplicateRow,
    MalformedNumber,
    ProbabilityRange,
    MalformedToken,
    ConflictingEvidence,
    OutcomeInCandidate,
    EmptyCandidate,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        use ErrorCode::*;
        match self {
            EmptyDocument => "empty-document",
            UnknownSection => "unknown-section",
            DuplicateSection => "duplicate-section",
            MissingSection => "missing-section",
            ContentOutsideSection => "content-outside-section",
            InvalidName => "invalid-name",
            DuplicateVariable => "duplicate-variable",
            UnknownVariable => "unknown-variable",
            ForwardParent => "forward-parent-reference",
            SelfParent => "self-parent",
            DuplicateParent => "duplicate-parent",
            DuplicateParentLine => "duplicate-parent-line",
            OutcomeAsParent => "outcome-as-parent",
            NoOutcome => "no-outcome",
            MultipleOutcomes => "multiple-outcomes",
            OutcomeWithoutParents => "outcome-without-parents",
            NoCauses => "no-causes",
            TooManyCauses => "too-many-causes",
            MalformedLine => "malformed-line",
            MalformedBits => "malformed-bits",
            BitsLength => "bits-length",
            MissingRow => "missing-cpt-row",
            DuplicateRow => "duplicate-cpt-row",
            MalformedNumber => "malformed-number",
            ProbabilityRange => "probability-out-of-range",
            MalformedToken => "malformed-token",
            ConflictingEvidence => "conflicting-evidence",
            OutcomeInCandidate => "outcome-in-candidate",
            EmptyCandidate => "empty-candidate",
        }
    }
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A diagnostic with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub code: ErrorCode,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(code: ErrorCode, line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { code, line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: error[{}]: {}", self.line, self.column, self.code, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A token and its location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

/// Source text, the network it describes, and where each declaration
/// appeared.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkDocument {
    pub raw: String,
    pub network: Network,
    pub locations: BTreeMap<String, Span>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Section {
    Variables,
    Outcome,
    Parents,
    Cpt,
}

struct Line<'a> {
    no: usize,
    // byte offset of `text` within the raw line
    offset: usize,
    text: &'a str,
}

impl Line<'_> {
    fn col(&self, within: usize) -> usize {
        self.offset + within + 1
    }

    fn err(&self, code: ErrorCode, within: usize, msg: impl Into<String>) -> ParseError {
        ParseError::new(code, self.no, self.col(within), msg)
    }
}

fn strip(raw: &str) -> (usize, &str) {
    let body = raw.split('#').next().unwrap_or("");
    let start = body.len() - body.trim_start().len();
    (start, body.trim())
}

/// Byte offset of `part` inside `whole`; `part` must be a subslice.
fn offset_in(whole: &str, part: &str) -> usize {
    part.as_ptr() as usize - whole.as_ptr() as usize
}

/// Plain decimal: digits with an optional fraction, or a fraction alone.
fn parse_probability(tok: &str) -> Option<f64> {
    let (int, frac) = match tok.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (tok, None),
    };
    let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    let ok = digits(int)
        && match frac {
            Some(f) => !f.is_empty() && digits(f),
            None => !int.is_empty(),
        }
        && !(int.is_empty() && frac.is_none());
    if !ok {
        return None;
    }
    tok.parse::<f64>().ok()
}

pub fn parse_network(text: &str) -> Result<Network, ParseError> {
    parse_document(text).map(|d| d.network)
}

pub fn parse_document(text: &str) -> Result<NetworkDocument, ParseError> {
    let mut sections: HashMap<Section, (usize, Vec<Line>)> = HashMap::new();
    let mut current: Option<Section> = None;
    let mut saw_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let (start, body) = strip(raw);
        if body.is_empty() {
            continue;
        }
        saw_content = true;
        let line = Line { no: idx + 1, offset: start, text: body };
        if body.starts_with('[') {
            let sec = match body {
                "[variables]" => Section::Variables,
                "[outcome]" => Section::Outcome,
                "[parents]" => Section::Parents,
                "[cpt]" => Section::Cpt,
                _ => return Err(line.err(ErrorCode::UnknownSection, 0, format!("unknown section `{body}`"))),
            };
            if let Some((first, _)) = sections.get(&sec) {
                return Err(line.err(ErrorCode::DuplicateSection, 0, format!("section `{body}` already opened on line {first}")));
            }
            sections.insert(sec, (line.no, Vec::new()));
            current = Some(sec);
            continue;
        }
        match current {
            Some(sec) => sections.get_mut(&sec).expect("opened above").1.push(line),
            None => return Err(line.err(ErrorCode::ContentOutsideSection, 0, "content before the first section header")),
        }
    }
    if !saw_content {
        return Err(ParseError::new(ErrorCode::EmptyDocument, 1, 1, "document is empty"));
    }
    let end_line = text.lines().count().max(1);
    let missing = |name: &str| ParseError::new(ErrorCode::MissingSection, end_line, 1, format!("missing section `[{name}]`"));
    let (var_header, var_lines) = sections.remove(&Section::Variables).ok_or_else(|| missing("variables"))?;
    let (out_header, out_lines) = sections.remove(&Section::Outcome).ok_or_else(|| missing("outcome"))?;
    let (_, parent_lines) = sections.remove(&Section::Parents).unwrap_or((0, Vec::new()));
    let (_, cpt_lines) = sections.remove(&Section::Cpt).ok_or_else(|| missing("cpt"))?;

    // variables
    let mut locations: BTreeMap<String, Span> = BTreeMap::new();
    let mut declared: Vec<String> = Vec::new();
    let mut position: HashMap<String, usize> = HashMap::new();
    for line in &var_lines {
        let name = line.text;
        if !is_identifier(name) {
            return Err(line.err(ErrorCode::InvalidName, 0, format!("invalid variable name `{name}`")));
        }
        if let Some(prev) = locations.get(name) {
            return Err(line.err(ErrorCode::DuplicateVariable, 0, format!("`{name}` already declared on line {}", prev.line)));
        }
        position.insert(name.to_string(), declared.len());
        locations.insert(name.to_string(), Span { text: name.to_string(), line: line.no, column: line.col(0) });
        declared.push(name.to_string());
    }

    // outcome
    let outcome = match out_lines.as_slice() {
        [] => return Err(ParseError::new(ErrorCode::NoOutcome, out_header, 1, "`[outcome]` names no variable")),
        [line] => {
            if line.text.split_whitespace().count() > 1 {
                return Err(line.err(ErrorCode::MultipleOutcomes, 0, "exactly one outcome variable is allowed"));
            }
            if !position.contains_key(line.text) {
                return Err(line.err(ErrorCode::UnknownVariable, 0, format!("unknown variable `{}`", line.text)));
            }
            line.text.to_string()
        }
        [_, second, ..] => return Err(second.err(ErrorCode::MultipleOutcomes, 0, "exactly one outcome variable is allowed")),
    };
    let causes: Vec<String> = declared.iter().filter(|n| **n != outcome).cloned().collect();
    if causes.is_empty() {
        return Err(ParseError::new(ErrorCode::NoCauses, var_header, 1, "network needs at least one cause variable"));
    }
    if causes.len() > crate::model::MAX_CAUSES {
        return Err(ParseError::new(
            ErrorCode::TooManyCauses,
            var_header,
            1,
            format!("{} cause variables; at most {} are supported", causes.len(), crate::model::MAX_CAUSES),
        ));
    }
    let cause_index: HashMap<&str, usize> = causes.iter().enumerate().map(|(i, n)| (n.as_str(), i + 1)).collect();

    // parents, by declared name
    let mut parent_of: HashMap<String, (usize, Vec<String>)> = HashMap::new();
    for line in &parent_lines {
        let Some((child, rest)) = line.text.split_once(':') else {
            return Err(line.err(ErrorCode::MalformedLine, 0, "expected `child: parent ...`"));
        };
        let child = child.trim();
        let Some(&child_pos) = position.get(child) else {
            return Err(line.err(ErrorCode::UnknownVariable, 0, format!("unknown variable `{child}`")));
        };
        if parent_of.contains_key(child) {
            return Err(line.err(ErrorCode::DuplicateParentLine, 0, format!("parents of `{child}` already given")));
        }
        let mut list: Vec<String> = Vec::new();
        for tok in rest.split_whitespace() {
            let col = offset_in(line.text, tok);
            let Some(&pos) = position.get(tok) else {
                return Err(line.err(ErrorCode::UnknownVariable, col, format!("unknown variable `{tok}`")));
            };
            if tok == child {
                return Err(line.err(ErrorCode::SelfParent, col, format!("`{child}` lists itself as a parent")));
            }
            if tok == outcome {
                return Err(line.err(ErrorCode::OutcomeAsParent, col, format!("outcome `{tok}` cannot be a parent")));
            }
            if pos > child_pos && child != outcome {
                return Err(line.err(
                    ErrorCode::ForwardParent,
                    col,
                    format!("forward parent reference: `{tok}` is declared after `{child}`"),
                ));
            }
            if list.iter().any(|q| q == tok) {
                return Err(line.err(ErrorCode::DuplicateParent, col, format!("`{tok}` listed twice")));
            }
            list.push(tok.to_string());
        }
        parent_of.insert(child.to_string(), (line.no, list));
    }
    if parent_of.get(&outcome).is_none_or(|(_, ps)| ps.is_empty()) {
        let line = parent_of.get(&outcome).map_or(out_header, |(l, _)| *l);
        return Err(ParseError::new(ErrorCode::OutcomeWithoutParents, line, 1, format!("outcome `{outcome}` has no parents")));
    }

    // cpt rows
    let mut rows: HashMap<String, BTreeMap<usize, f64>> = HashMap::new();
    for line in &cpt_lines {
        let Some((lhs, value)) = line.text.split_once('=') else {
            return Err(line.err(ErrorCode::MalformedLine, 0, "expected `child | bits = probability`"));
        };
        let Some((child, bits)) = lhs.split_once('|') else {
            return Err(line.err(ErrorCode::MalformedLine, 0, "expected `child | bits = probability`"));
        };
        let child = child.trim();
        let bits = bits.trim();
        let value = value.trim();
        if !position.contains_key(child) {
            return Err(line.err(ErrorCode::UnknownVariable, 0, format!("unknown variable `{child}`")));
        }
        let width = parent_of.get(child).map_or(0, |(_, ps)| ps.len());
        let bits_col = if bits.is_empty() { lhs.len() } else { offset_in(line.text, bits) };
        let row = if bits == "-" {
            if width != 0 {
                return Err(line.err(ErrorCode::BitsLength, bits_col, format!("`{child}` has {width} parents; `-` is for roots")));
            }
            0
        } else {
            if bits.is_empty() || !bits.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(line.err(ErrorCode::MalformedBits, bits_col, format!("parent bits `{bits}` must be over {{0,1}} or `-`")));
            }
            if bits.len() != width {
                return Err(line.err(
                    ErrorCode::BitsLength,
                    bits_col,
                    format!("`{child}` has {width} parents but row has {} bits", bits.len()),
                ));
            }
            usize::from_str_radix(bits, 2).expect("checked binary digits")
        };
        let value_col = if value.is_empty() { line.text.len() } else { offset_in(line.text, value) };
        let Some(prob) = parse_probability(value) else {
            return Err(line.err(ErrorCode::MalformedNumber, value_col, format!("`{value}` is not a decimal number")));
        };
        if !(0.0..=1.0).contains(&prob) {
            return Err(line.err(ErrorCode::ProbabilityRange, value_col, format!("probability {value} outside [0, 1]")));
        }
        let table = rows.entry(child.to_string()).or_default();
        if table.insert(row, prob).is_some() {
            return Err(line.err(ErrorCode::DuplicateRow, 0, format!("row `{bits}` of `{child}` given twice")));
        }
    }

    let index_list = |child: &str| -> Vec<usize> {
        parent_of.get(child).map_or(Vec::new(), |(_, ps)| ps.iter().map(|q| cause_index[q.as_str()]).collect())
    };
    let dense = |child: &str| -> Result<Vec<f64>, ParseError> {
        let width = parent_of.get(child).map_or(0, |(_, ps)| ps.len());
        let table = rows.get(child);
        (0..1usize << width)
            .map(|r| {
                table.and_then(|t| t.get(&r).copied()).ok_or_else(|| {
                    let at = &locations[child];
                    let shown = if width == 0 { "-".to_string() } else { row_bits(r, width) };
                    ParseError::new(ErrorCode::MissingRow, at.line, at.column, format!("`{child}` is missing CPT row `{shown}`"))
                })
            })
            .collect()
    };
    let mut parents = Vec::new();
    let mut cpt = Vec::new();
    for name in &causes {
        parents.push(index_list(name));
        cpt.push(dense(name)?);
    }
    let network = Network::new(causes.clone(), outcome.clone(), parents, cpt, index_list(&outcome), dense(&outcome)?)
        .map_err(|e| ParseError::new(ErrorCode::MalformedLine, var_header, 1, e.to_string()))?;
    Ok(NetworkDocument { raw: text.to_string(), network, locations })
}

/// Canonical text; `parse_network(serialize_network(n)) == n`.
pub fn serialize_network(net: &Network) -> String {
    let mut out = String::from("[variables]\n");
    for name in net.names() {
        out.push_str(name);
        out.push('\n');
    }
    out.push_str(net.outcome_name());
    out.push_str("\n[outcome]\n");
    out.push_str(net.outcome_name());
    out.push_str("\n[parents]\n");
    let line = |out: &mut String, child: &str, ps: &[usize]| {
        if !ps.is_empty() {
            let names: Vec<&str> = ps.iter().map(|&j| net.name(j)).collect();
            out.push_str(&format!("{child}: {}\n", names.join(" ")));
        }
    };
    for i in 1..=net.p() {
        line(&mut out, net.name(i), &net.parents(i));
    }
    line(&mut out, net.outcome_name(), &net.outcome_parents());
    out.push_str("[cpt]\n");
    let rows = |out: &mut String, child: &str, width: usize, values: &[f64]| {
        for (r, v) in values.iter().enumerate() {
            let bits = if width == 0 { "-".to_string() } else { row_bits(r, width) };
            // f64 Display is the shortest round-trip form and never uses an exponent
            out.push_str(&format!("{child} | {bits} = {v}\n"));
        }
    };
    for i in 1..=net.p() {
        rows(&mut out, net.name(i), net.parents(i).len(), net.cpt(i));
    }
    rows(&mut out, net.outcome_name(), net.outcome_parents().len(), net.outcome_cpt());
    out
}

/// SHA-256 of the canonical serialization, hex encoded.
pub fn fingerprint(net: &Network) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(serialize_network(net).as_bytes()))
}

fn token_error(code: ErrorCode, text: &str, tok: &str, msg: String) -> ParseError {
    ParseError::new(code, 1, offset_in(text, tok) + 1, msg)
}

/// Space-separated `name=0|1` tokens; the empty string is empty evidence.
pub fn parse_evidence(net: &Network, text: &str) -> Result<Evidence, ParseError> {
    let mut obs = Assignment::new();
    for tok in text.split_whitespace() {
        let Some((name, value)) = tok.split_once('=') else {
            return Err(token_error(ErrorCode::MalformedToken, text, tok, format!("expected `name=0|1`, found `{tok}`")));
        };
        let bit = match value {
            "0" => false,
            "1" => true,
            _ => return Err(token_error(ErrorCode::MalformedToken, text, tok, format!("value of `{name}` must be 0 or 1"))),
        };
        let Some(var) = net.var_by_name(name) else {
            return Err(token_error(ErrorCode::UnknownVariable, text, tok, format!("unknown variable `{name}`")));
        };
        if let Some(prev) = obs.set(var, bit) {
            if prev != bit {
                return Err(token_error(ErrorCode::ConflictingEvidence, text, tok, format!("`{name}` observed as both 0 and 1")));
            }
        }
    }
    Ok(Evidence::new(obs))
}

/// Space-separated `name=0|1` rendering, causes in order then the outcome.
pub fn format_evidence(net: &Network, e: &Evidence) -> String {
    e.observed()
        .iter()
        .map(|(v, b)| format!("{}={}", net.var_name(v), b as u8))
        .collect::<Vec<_>>()
        .join(" ")
}

/// `{name,name,...}`, a bare cause name, or `none`.
pub fn parse_candidate(net: &Network, text: &str) -> Result<Candidate, ParseError> {
    let t = text.trim();
    if t == "none" {
        return Ok(Candidate::NoRootCause);
    }
    let inner = match (t.strip_prefix('{'), t.strip_suffix('}')) {
        (Some(_), Some(_)) if t.len() >= 2 => &t[1..t.len() - 1],
        (None, None) if !t.is_empty() && !t.contains([',', '{', '}']) => t,
        _ => {
            let at = if t.is_empty() { 0 } else { offset_in(text, t) };
            return Err(ParseError::new(ErrorCode::MalformedToken, 1, at + 1, format!("expected `{{name,...}}` or `none`, found `{t}`")));
        }
    };
    if inner.trim().is_empty() {
        return Err(ParseError::new(ErrorCode::EmptyCandidate, 1, offset_in(text, inner) + 1, "candidate set is empty"));
    }
    let mut members = Vec::new();
    for part in inner.split(',') {
        let name = part.trim();
        let col = offset_in(text, part) + 1;
        match net.var_by_name(name) {
            Some(Var::Cause(i)) => {
                if members.contains(&i) {
                    return Err(ParseError::new(ErrorCode::MalformedToken, 1, col, format!("`{name}` listed twice")));
                }
                members.push(i);
            }
            Some(Var::Outcome) => {
                return Err(ParseError::new(ErrorCode::OutcomeInCandidate, 1, col, "the outcome cannot be a candidate cause"));
            }
            None => {
                let code = if name.is_empty() { ErrorCode::MalformedToken } else { ErrorCode::UnknownVariable };
                return Err(ParseError::new(code, 1, col, format!("unknown variable `{name}`")));
            }
        }
    }
    Ok(Candidate::Set(CandidateSet::new(members).expect("nonempty and distinct")))
}

/// `{X1,X2}` using the network's names, or `none`.
pub fn format_candidate(net: &Network, c: &Candidate) -> String {
    match c {
        Candidate::NoRootCause => "none".to_string(),
        Candidate::Set(k) => {
            let names: Vec<&str> = k.members().iter().map(|&i| net.name(i)).collect();
            format!("{{{}}}", names.join(","))
        }
    }
}

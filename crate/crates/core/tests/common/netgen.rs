//! Random network documents and text mutations for parser tests.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use rootcause::model::Network;
use rootcause::netformat::ErrorCode;

pub const BASE: &str = "\
[variables]
A
B
C
[outcome]
C
[parents]
B: A
C: A B
[cpt]
A | - = 0.5
B | 0 = 0.2
B | 1 = 0.7
C | 00 = 0.1
C | 01 = 0.4
C | 10 = 0.5
C | 11 = 0.9
";

pub fn random_network(rng: &mut ChaCha8Rng) -> Network {
    let p = rng.random_range(1..=7usize);
    let mut names: Vec<String> = Vec::new();
    while names.len() < p + 1 {
        let len = rng.random_range(1..=6);
        let mut s: String = (0..len)
            .map(|i| {
                let pool: &[u8] = if i == 0 { b"abcXYZ_" } else { b"abcXYZ_019" };
                pool[rng.random_range(0..pool.len())] as char
            })
            .collect();
        if s == "none" {
            s.push('_');
        }
        if !names.contains(&s) {
            names.push(s);
        }
    }
    let outcome = names.pop().unwrap();
    let prob = |rng: &mut ChaCha8Rng| match rng.random_range(0..4) {
        0 => rng.random_range(0.0..=1.0),
        1 => (rng.random_range(0..=100) as f64) / 100.0,
        2 => [0.0, 1.0][rng.random_range(0..2)],
        _ => 1.0 / rng.random_range(1..=9) as f64,
    };
    let mut parents = Vec::new();
    let mut cpt = Vec::new();
    for i in 1..=p {
        let mut ps: Vec<usize> = (1..i).filter(|_| rng.random_bool(0.4)).collect();
        ps.truncate(3);
        if rng.random_bool(0.5) {
            ps.reverse();
        }
        cpt.push((0..1usize << ps.len()).map(|_| prob(rng)).collect());
        parents.push(ps);
    }
    let mut ops: Vec<usize> = (1..=p).filter(|_| rng.random_bool(0.5)).take(3).collect();
    if ops.is_empty() {
        ops.push(rng.random_range(1..=p));
    }
    let ocpt = (0..1usize << ops.len()).map(|_| prob(rng)).collect();
    Network::new(names, outcome, parents, cpt, ops, ocpt).unwrap()
}

pub const FRAGMENTS: &[&str] = &[
    "[variables]", "[outcome]", "[parents]", "[cpt]", "[", "]", "A", "B", "C", "Y", ":", "|", "=", "-", "0", "1", "01", "0.5",
    ".", "1.0000000000001", "-0.1", "#", "\n", " ", "\t", "\r\n", "é", "\u{0}", "{", "}", ",", "none", "99999999999999999999",
];

pub fn mutate(rng: &mut ChaCha8Rng, text: &str) -> String {
    let mut s: Vec<char> = text.chars().collect();
    for _ in 0..rng.random_range(1..=4) {
        let at = rng.random_range(0..=s.len());
        match rng.random_range(0..4) {
            0 if at < s.len() => {
                s.remove(at);
            }
            1 => {
                let frag = FRAGMENTS[rng.random_range(0..FRAGMENTS.len())];
                for (i, c) in frag.chars().enumerate() {
                    s.insert(at + i, c);
                }
            }
            2 if at < s.len() => s[at] = char::from(rng.random_range(0x20u8..0x7f)),
            _ => {
                let end = (at + rng.random_range(0..12)).min(s.len());
                s.drain(at..end);
            }
        }
    }
    s.into_iter().collect()
}

/// One document per document-level error class.
pub fn error_documents() -> Vec<(ErrorCode, String)> {
    let too_many: String = (0..=rootcause::model::MAX_CAUSES).map(|i| format!("V{i}\n")).collect();
    vec![
        (ErrorCode::EmptyDocument, "# nothing\n\n".into()),
        (ErrorCode::UnknownSection, BASE.replace("[parents]", "[edges]")),
        (ErrorCode::DuplicateSection, format!("{BASE}[outcome]\nC\n")),
        (ErrorCode::MissingSection, BASE.split("[cpt]").next().unwrap().to_string()),
        (ErrorCode::ContentOutsideSection, format!("A\n{BASE}")),
        (ErrorCode::InvalidName, BASE.replacen("B\n", "9B\n", 1)),
        (ErrorCode::DuplicateVariable, BASE.replacen("B\n", "B\nA\n", 1)),
        (ErrorCode::UnknownVariable, BASE.replace("B: A", "B: Z")),
        (ErrorCode::ForwardParent, BASE.replace("B: A", "A: B\nB: A").replace("A | - = 0.5", "A | 0 = 0.5\nA | 1 = 0.5")),
        (ErrorCode::SelfParent, BASE.replace("B: A", "B: B")),
        (ErrorCode::DuplicateParent, BASE.replace("C: A B", "C: A A")),
        (ErrorCode::DuplicateParentLine, BASE.replace("C: A B", "C: A\nC: B")),
        (ErrorCode::OutcomeAsParent, BASE.replace("B: A", "B: C")),
        (ErrorCode::NoOutcome, BASE.replace("[outcome]\nC\n", "[outcome]\n")),
        (ErrorCode::MultipleOutcomes, BASE.replace("[outcome]\nC\n", "[outcome]\nC\nB\n")),
        (ErrorCode::OutcomeWithoutParents, BASE.replace("C: A B\n", "")),
        (ErrorCode::NoCauses, "[variables]\nY\n[outcome]\nY\n[cpt]\nY | - = 0.5\n".into()),
        (ErrorCode::TooManyCauses, format!("[variables]\n{too_many}Y\n[outcome]\nY\n[cpt]\n")),
        (ErrorCode::MalformedLine, BASE.replace("B: A", "B A")),
        (ErrorCode::MalformedBits, BASE.replace("B | 1 =", "B | x =")),
        (ErrorCode::BitsLength, BASE.replace("B | 1 =", "B | 10 =")),
        (ErrorCode::MissingRow, BASE.replace("C | 10 = 0.5\n", "")),
        (ErrorCode::DuplicateRow, BASE.replace("C | 10 = 0.5", "C | 01 = 0.5")),
        (ErrorCode::MalformedNumber, BASE.replace("0.7", "7e-1")),
        (ErrorCode::ProbabilityRange, BASE.replace("0.7", "1.7")),
    ]
}

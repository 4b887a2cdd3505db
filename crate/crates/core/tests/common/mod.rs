#![allow(dead_code)]

pub mod netgen;
pub mod props;

use std::path::PathBuf;

use rootcause::counterfactual::{Mechanism, MonotoneSem, Response};
use rootcause::model::Network;
use rootcause::netformat::parse_network;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn load(name: &str) -> Network {
    parse_network(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

pub fn ids(p: usize) -> Vec<String> {
    (1..=p).map(|i| format!("X{i}")).collect()
}

pub fn table(bits: &[u8]) -> Vec<bool> {
    bits.iter().map(|&b| b == 1).collect()
}

pub fn coin(weight_one: f64) -> Mechanism {
    Mechanism::new(
        vec![],
        vec![Response::constant(1.0 - weight_one, false, 0), Response::constant(weight_one, true, 0)],
    )
}

pub fn function(parents: Vec<usize>, bits: &[u8]) -> Mechanism {
    Mechanism::new(parents, vec![Response { weight: 1.0, table: table(bits) }])
}

/// `Y = X1 or X2`, `X2 = 1 - X1`.
pub fn or_model() -> MonotoneSem {
    MonotoneSem::new_general(ids(2), "Y", vec![coin(0.5), function(vec![1], &[1, 0])], function(vec![1, 2], &[0, 1, 1, 1]))
        .unwrap()
}

/// `X2 = X1`, `X3` exogenous, `Y = X2 X3 + (1 - X2)(1 - X3)`.
pub fn xnor_model() -> MonotoneSem {
    MonotoneSem::new_general(
        ids(3),
        "Y",
        vec![coin(0.5), function(vec![1], &[0, 1]), coin(0.5)],
        function(vec![2, 3], &[1, 0, 0, 1]),
    )
    .unwrap()
}

/// Every monotone response of a chain over `p` causes, equally weighted:
/// roots pick a constant, other nodes a constant or the identity.
pub fn full_chain(p: usize) -> MonotoneSem {
    let unary = || {
        Mechanism::new(
            vec![],
            vec![Response::constant(0.5, false, 0), Response::constant(0.5, true, 0)],
        )
    };
    let link = |parent: usize| {
        let w = 1.0 / 3.0;
        Mechanism::new(
            vec![parent],
            vec![
                Response::constant(w, false, 1),
                Response::constant(w, true, 1),
                Response { weight: w, table: vec![false, true] },
            ],
        )
    };
    let mut mechs = vec![unary()];
    mechs.extend((2..=p).map(|i| link(i - 1)));
    MonotoneSem::new(ids(p), "Y", mechs, link(p)).unwrap()
}

//! The 37-observable hypergraph of 26 contexts, its two gadget
//! sub-hypergraphs, and the coordinatized vertices.
//!
//! Given `v(a) = 1`, the full hypergraph admits no value for `b`: it is the
//! union of a true-implies-false gadget (`O \ {29, 31}`) and a
//! true-implies-true gadget (`O \ {10, 12}`) sharing the endpoints `a`, `b`.

use alloc::vec::Vec;

use super::{ContextHypergraph, Coordinatization};
use crate::constants;

/// Contexts in the order they are listed in the dataset.
pub const CONTEXTS: [[&str; 3]; 26] = [
    ["b", "2", "3"],
    ["3", "21", "23"],
    ["23", "29", "5"],
    ["5", "a", "4"],
    ["4", "10", "7"],
    ["7", "6", "b"],
    ["a", "1", "2"],
    ["5", "11", "9"],
    ["9", "8", "b"],
    ["4", "28", "22"],
    ["22", "19", "3"],
    ["22", "24", "25"],
    ["25", "35", "9"],
    ["7", "34", "27"],
    ["27", "26", "23"],
    ["10", "12", "13"],
    ["13", "31", "29"],
    ["28", "30", "15"],
    ["15", "14", "11"],
    ["15", "17", "1"],
    ["1", "16", "13"],
    ["19", "18", "16"],
    ["16", "32", "8"],
    ["6", "33", "17"],
    ["17", "20", "21"],
    ["25", "1", "27"],
];

/// Vertices `a, b, 1, ..., 35`.
pub fn vertex_labels() -> Vec<alloc::string::String> {
    let mut labels = alloc::vec![alloc::string::String::from("a"), alloc::string::String::from("b")];
    labels.extend((1..=35).map(|k| alloc::format!("{k}")));
    labels
}

/// The full hypergraph on 37 vertices.
pub fn full() -> ContextHypergraph {
    let contexts: Vec<Vec<&str>> = CONTEXTS.iter().map(|c| c.to_vec()).collect();
    ContextHypergraph::new(3, &vertex_labels(), &contexts).expect("built-in data is valid")
}

/// True-implies-false gadget: the full hypergraph without `29` and `31`.
pub fn tifs() -> ContextHypergraph {
    full().without(&["29", "31"]).expect("vertices exist")
}

/// True-implies-true gadget: the full hypergraph without `10` and `12`.
pub fn tits() -> ContextHypergraph {
    full().without(&["10", "12"]).expect("vertices exist")
}

/// Vectors for `a, b, 2, 3, 4, 5` in `C^3`.
pub fn coordinatization(h: &ContextHypergraph) -> Coordinatization {
    let mut c = Coordinatization::new();
    for (label, v) in [
        ("a", constants::ket_a()),
        ("b", constants::ket_b()),
        ("2", constants::ket_2()),
        ("3", constants::ket_3()),
        ("4", constants::ket_4()),
        ("5", constants::ket_5()),
    ] {
        if h.contains(label) {
            c.insert(h, label, v).expect("rank-3 hypergraph");
        }
    }
    c
}

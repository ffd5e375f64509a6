//! Shipped catalog of indecomposable stratified algebras of dimension ≤ 7
//! (plus the parametrized filiform and free step-3 families), with
//! expected verdicts, quotient certificates and Goh controls, and the
//! classification routine combining the certificate search with the
//! second-order checks.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use carnot_core::algebra::StratifiedAlgebra;
use carnot_core::goh::{search_goh_legendre_witness, search_goh_witness};
use carnot_core::quotient::{search_martinet_certificate, HyperplaneCertificate};

use crate::format::{parse_algebra_file, AlgebraRecord, ExpectedVerdict};

macro_rules! records {
    ($($name:literal),+ $(,)?) => {
        &[$(($name, include_str!(concat!("../data/", $name, ".alg")))),+]
    };
}

/// Raw file contents, embedded so the binary is self-contained.
pub const RAW_RECORDS: &[(&str, &str)] = records![
    "R",
    "Heis",
    "N_4_2",
    "N_5_3_1",
    "N_5_3_2",
    "N_5_2_3",
    "N_5_2_1",
    "N_6_2_1",
    "N_6_2_2",
    "N_6_2_5",
    "N_6_2_5a",
    "N_6_2_6",
    "N_6_2_7",
    "N_6_3_1",
    "N_6_3_1a",
    "N_6_3_3",
    "N_6_3_4",
    "N_6_3_5",
    "N_6_3_6",
    "N_6_4_4a",
    "147D",
    "247A",
    "247F1",
    "247P",
    "137A1",
    "257B",
    "357A",
    "2457A",
    "2457B",
    "2457L",
    "2457L1",
    "2457M",
    "123457A",
];

/// Aliases accepted by [`catalog_get`].
const ALIASES: &[(&str, &str)] = &[
    ("Eng", "N_4_2"),
    ("Engel", "N_4_2"),
    ("N_3_2", "Heis"),
    ("Heisenberg", "Heis"),
];

fn registry() -> &'static BTreeMap<String, AlgebraRecord> {
    static REG: OnceLock<BTreeMap<String, AlgebraRecord>> = OnceLock::new();
    REG.get_or_init(|| {
        let mut map = BTreeMap::new();
        for (name, text) in RAW_RECORDS {
            let rec = parse_algebra_file(text)
                .unwrap_or_else(|e| panic!("shipped record {name} is invalid: {e}"));
            assert_eq!(rec.algebra.name(), *name, "record name mismatch in {name}.alg");
            map.insert((*name).to_string(), rec);
        }
        map
    })
}

/// Names and expected verdicts of every shipped record.
pub fn catalog_list() -> Vec<(String, ExpectedVerdict)> {
    registry()
        .iter()
        .map(|(name, rec)| (name.clone(), rec.expected))
        .collect()
}

#[derive(Debug, thiserror::Error)]
#[error("unknown catalog entry `{0}`")]
pub struct UnknownEntry(pub String);

/// Look a record up by name or alias.
pub fn catalog_get(name: &str) -> Result<&'static AlgebraRecord, UnknownEntry> {
    let canonical = ALIASES
        .iter()
        .find(|(a, _)| *a == name)
        .map(|(_, target)| *target)
        .unwrap_or(name);
    registry()
        .get(canonical)
        .ok_or_else(|| UnknownEntry(name.to_string()))
}

/// Classification outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    Red,
    Green,
    BlackInconclusive,
}

impl Color {
    pub fn as_str(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::BlackInconclusive => "black_inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Evidence {
    /// Verified Martinet-quotient certificate.
    Certificate(HyperplaneCertificate),
    /// No Goh-Legendre witness up to the bound (step-3 green evidence).
    GohAbsenceUpToBound(i64),
    None,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub color: Color,
    pub evidence: Evidence,
    pub notes: Vec<String>,
}

/// Classify a validated algebra:
///
/// * red if a Martinet-quotient certificate is found (exact decision when
///   `dim g_3 = 1`, bounded enumeration otherwise);
/// * green if the step is ≤ 2 (all geodesics are normal) or the step is 3
///   and the bounded Goh-Legendre witness search comes up empty;
/// * black/inconclusive otherwise. The notes record every bounded-search
///   caveat, so a non-red verdict in the `dim g_3 ≥ 2` case is never
///   presented as a proof of non-existence.
pub fn classify(rec: &AlgebraRecord, bound: i64) -> Verdict {
    let a = &rec.algebra;
    let mut notes = Vec::new();
    if rec.sard_conditional {
        notes.push("minimizing Sard property for this entry is conditional".to_string());
    }

    if a.step() >= 3 {
        match search_martinet_certificate(a, bound).expect("step checked") {
            Some(cert) => {
                if a.stratum_dim(2) == 1 {
                    notes.push("certificate decision exact: dim g_3 = 1".to_string());
                } else {
                    notes.push(format!("certificate found by enumeration up to bound {bound}"));
                }
                return Verdict { color: Color::Red, evidence: Evidence::Certificate(cert), notes };
            }
            None => {
                if a.stratum_dim(2) == 1 {
                    notes.push("no Martinet quotient: exact (dim g_3 = 1)".to_string());
                } else {
                    notes.push(format!(
                        "no certificate up to bound {bound}: inconclusive for dim g_3 >= 2"
                    ));
                }
            }
        }
    }

    if a.step() <= 2 {
        notes.push("step <= 2: all geodesics normal, no nontrivial Goh-Legendre curves".to_string());
        return Verdict { color: Color::Green, evidence: Evidence::None, notes };
    }

    if a.step() == 3 {
        match search_goh_legendre_witness(a, bound).expect("step 3") {
            None => {
                notes.push(format!("no Goh-Legendre witness up to bound {bound}"));
                if let Ok(Some((_, u))) = search_goh_witness(a, bound) {
                    let coords: Vec<String> =
                        u.u.iter().map(crate::format::rational_to_string).collect();
                    notes.push(format!(
                        "Goh-only witness exists (control [{}]): Legendre fails for it",
                        coords.join(", ")
                    ));
                }
                return Verdict {
                    color: Color::Green,
                    evidence: Evidence::GohAbsenceUpToBound(bound),
                    notes,
                };
            }
            Some((_, u)) => {
                let coords: Vec<String> =
                    u.u.iter().map(crate::format::rational_to_string).collect();
                notes.push(format!(
                    "Goh-Legendre witness found (control [{}])",
                    coords.join(", ")
                ));
                return Verdict { color: Color::BlackInconclusive, evidence: Evidence::None, notes };
            }
        }
    }

    notes.push("step >= 4 without certificate: second-order test not applied".to_string());
    Verdict { color: Color::BlackInconclusive, evidence: Evidence::None, notes }
}

/// Expected color of a catalog record for test comparison.
pub fn expected_color(expected: ExpectedVerdict) -> Option<Color> {
    match expected {
        ExpectedVerdict::Red => Some(Color::Red),
        ExpectedVerdict::Green => Some(Color::Green),
        ExpectedVerdict::Black => Some(Color::BlackInconclusive),
        ExpectedVerdict::Unmarked => None,
    }
}

/// The filiform family (strata `2,1,…,1`), re-exported for the CLI.
pub fn filiform(step: usize) -> StratifiedAlgebra {
    StratifiedAlgebra::filiform(step)
}

/// Free step-3 algebra of the given rank, re-exported for the CLI.
pub fn free_step3(rank: usize) -> StratifiedAlgebra {
    StratifiedAlgebra::free_step3(rank)
}

//! The line-oriented algebra file format.
//!
//! ```text
//! name: N_4_2
//! strata: 2 1 1
//! bracket: 1 2 -> 3:1
//! bracket: 1 3 -> 4:1
//! expected: red
//! certificate: 1
//! ```
//!
//! Basis indices are 1-based and ordered stratum by stratum; brackets are
//! given for `i < j` only (antisymmetry implied, diagonal zero); omitted
//! brackets are zero. `#` starts a comment. Optional lines: `expected:
//! red|green|black`, `certificate: c1 … c_{dim g3}`, `dagger: true`,
//! `sard_conditional: true`, `goh_control: u1 … u_{dim g1}`.
//!
//! Serialization is canonical: parse ∘ serialize is the identity and
//! serialize ∘ parse is byte-stable.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use carnot_core::algebra::{StratifiedAlgebra, Violation};
use carnot_core::quotient::HyperplaneCertificate;
use carnot_core::rational::Rational;

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: duplicate bracket entry for pair ({i}, {j})")]
    DuplicateBracket { line: usize, i: usize, j: usize },
    #[error("line {line}: bracket requires i < j, got ({i}, {j})")]
    NotUpperTriangular { line: usize, i: usize, j: usize },
    #[error("missing required field `{0}`")]
    MissingField(&'static str),
    #[error("validation failed ({flags}); first violation: {witness:?}")]
    Validation { flags: String, witness: Option<Violation> },
    #[error("a red record must carry a certificate")]
    RedWithoutCertificate,
    #[error("{0}")]
    Certificate(String),
}

/// Expected classification color carried by catalog files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectedVerdict {
    Red,
    Green,
    Black,
    Unmarked,
}

impl ExpectedVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ExpectedVerdict::Red => "red",
            ExpectedVerdict::Green => "green",
            ExpectedVerdict::Black => "black",
            ExpectedVerdict::Unmarked => "unmarked",
        }
    }
}

/// A parsed and validated catalog record.
#[derive(Debug, Clone)]
pub struct AlgebraRecord {
    pub algebra: StratifiedAlgebra,
    pub expected: ExpectedVerdict,
    pub sard_conditional: bool,
    pub dagger: bool,
    /// Covector on `g_3` certifying a Martinet quotient (red records).
    pub certificate: Option<HyperplaneCertificate>,
    /// A control direction witnessing Goh curves (daggered records).
    pub goh_control: Option<Vec<Rational>>,
}

fn parse_rational(tok: &str, line: usize) -> Result<Rational, ParseError> {
    let parse_int = |s: &str| -> Result<BigInt, ParseError> {
        s.parse::<BigInt>().map_err(|_| ParseError::Syntax {
            line,
            msg: format!("bad integer `{s}`"),
        })
    };
    if let Some((p, q)) = tok.split_once('/') {
        let den = parse_int(q)?;
        if den.is_zero() {
            return Err(ParseError::Syntax { line, msg: format!("zero denominator in `{tok}`") });
        }
        Ok(Rational::new(parse_int(p)?, den))
    } else {
        Ok(Rational::from_integer(parse_int(tok)?))
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse one record. The algebra is validated (antisymmetry, Jacobi,
/// grading, generation) before the record is accepted.
pub fn parse_algebra_file(text: &str) -> Result<AlgebraRecord, ParseError> {
    let mut name: Option<String> = None;
    let mut strata: Option<Vec<usize>> = None;
    let mut brackets: BTreeMap<(usize, usize), (usize, Vec<(usize, Rational)>)> = BTreeMap::new();
    let mut expected = ExpectedVerdict::Unmarked;
    let mut dagger = false;
    let mut sard = false;
    let mut certificate_raw: Option<Vec<Rational>> = None;
    let mut goh_control: Option<Vec<Rational>> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once(':') else {
            return Err(ParseError::Syntax { line, msg: format!("expected `key: value`, got `{content}`") });
        };
        let value = value.trim();
        match key.trim() {
            "name" => {
                if value.is_empty() || !value.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(ParseError::Syntax { line, msg: format!("bad name `{value}`") });
                }
                name = Some(value.to_string());
            }
            "strata" => {
                let dims: Result<Vec<usize>, _> = value
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect();
                let dims = dims.map_err(|_| ParseError::Syntax { line, msg: format!("bad strata `{value}`") })?;
                if dims.is_empty() || dims.contains(&0) {
                    return Err(ParseError::Syntax { line, msg: "strata must be positive".into() });
                }
                strata = Some(dims);
            }
            "bracket" => {
                let Some((pair, terms)) = value.split_once("->") else {
                    return Err(ParseError::Syntax { line, msg: "bracket needs `i j -> k:v ...`".into() });
                };
                let idx: Vec<&str> = pair.split_whitespace().collect();
                if idx.len() != 2 {
                    return Err(ParseError::Syntax { line, msg: "bracket needs two indices".into() });
                }
                let i: usize = idx[0].parse().map_err(|_| ParseError::Syntax { line, msg: format!("bad index `{}`", idx[0]) })?;
                let j: usize = idx[1].parse().map_err(|_| ParseError::Syntax { line, msg: format!("bad index `{}`", idx[1]) })?;
                if i == 0 || j == 0 {
                    return Err(ParseError::Syntax { line, msg: "indices are 1-based".into() });
                }
                if i >= j {
                    return Err(ParseError::NotUpperTriangular { line, i, j });
                }
                if brackets.contains_key(&(i, j)) {
                    return Err(ParseError::DuplicateBracket { line, i, j });
                }
                let mut parsed_terms = Vec::new();
                for tok in terms.split_whitespace() {
                    let Some((k, v)) = tok.split_once(':') else {
                        return Err(ParseError::Syntax { line, msg: format!("bad term `{tok}`, expected k:v") });
                    };
                    let k: usize = k.parse().map_err(|_| ParseError::Syntax { line, msg: format!("bad index `{k}`") })?;
                    if k == 0 {
                        return Err(ParseError::Syntax { line, msg: "indices are 1-based".into() });
                    }
                    let coeff = parse_rational(v, line)?;
                    if !coeff.is_zero() {
                        parsed_terms.push((k - 1, coeff));
                    }
                }
                parsed_terms.sort_by_key(|(k, _)| *k);
                brackets.insert((i, j), (line, parsed_terms));
            }
            "expected" => {
                expected = match value {
                    "red" => ExpectedVerdict::Red,
                    "green" => ExpectedVerdict::Green,
                    "black" => ExpectedVerdict::Black,
                    other => {
                        return Err(ParseError::Syntax { line, msg: format!("bad verdict `{other}`") })
                    }
                };
            }
            "dagger" => dagger = value == "true",
            "sard_conditional" => sard = value == "true",
            "certificate" => {
                let coords: Result<Vec<Rational>, _> =
                    value.split_whitespace().map(|t| parse_rational(t, line)).collect();
                certificate_raw = Some(coords?);
            }
            "goh_control" => {
                let coords: Result<Vec<Rational>, _> =
                    value.split_whitespace().map(|t| parse_rational(t, line)).collect();
                goh_control = Some(coords?);
            }
            other => {
                return Err(ParseError::Syntax { line, msg: format!("unknown key `{other}`") });
            }
        }
    }

    let name = name.ok_or(ParseError::MissingField("name"))?;
    let strata = strata.ok_or(ParseError::MissingField("strata"))?;
    let n: usize = strata.iter().sum();

    let mut bracket_list = Vec::new();
    for (&(i, j), (line, terms)) in &brackets {
        if i > n || j > n || terms.iter().any(|(k, _)| *k >= n) {
            return Err(ParseError::Syntax { line: *line, msg: format!("index out of range for dimension {n}") });
        }
        bracket_list.push((i - 1, j - 1, terms.clone()));
    }
    let algebra = StratifiedAlgebra::from_brackets(&name, &strata, &bracket_list)
        .map_err(|e| ParseError::Syntax { line: 0, msg: e.to_string() })?;

    let report = algebra.validate();
    if !report.is_ok() {
        let mut flags = Vec::new();
        if !report.antisymmetry_ok { flags.push("antisymmetry"); }
        if !report.jacobi_ok { flags.push("jacobi"); }
        if !report.grading_ok { flags.push("grading"); }
        if !report.generation_ok { flags.push("generation"); }
        return Err(ParseError::Validation {
            flags: flags.join(", "),
            witness: report.first_violation,
        });
    }

    let certificate = match certificate_raw {
        Some(coords) => Some(
            HyperplaneCertificate::new(&algebra, &coords)
                .map_err(|e| ParseError::Certificate(e.to_string()))?,
        ),
        None => None,
    };
    if expected == ExpectedVerdict::Red && certificate.is_none() {
        return Err(ParseError::RedWithoutCertificate);
    }
    if let Some(u) = &goh_control {
        if u.len() != algebra.rank() {
            return Err(ParseError::Certificate(format!(
                "goh_control length {} does not match rank {}",
                u.len(),
                algebra.rank()
            )));
        }
    }

    Ok(AlgebraRecord { algebra, expected, sard_conditional: sard, dagger, certificate, goh_control })
}

/// Canonical serialization: fixed key order, brackets sorted by `(i, j)`
/// with term indices ascending, rationals printed as `p` or `p/q`.
pub fn serialize_record(rec: &AlgebraRecord) -> String {
    let a = &rec.algebra;
    let mut out = String::new();
    let _ = writeln!(out, "name: {}", a.name());
    let dims: Vec<String> = a.strata_dims().iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "strata: {}", dims.join(" "));
    let n = a.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            let row = a.bracket_basis(i, j);
            let terms: Vec<String> = row
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| format!("{}:{}", k + 1, fmt_rational(v)))
                .collect();
            if !terms.is_empty() {
                let _ = writeln!(out, "bracket: {} {} -> {}", i + 1, j + 1, terms.join(" "));
            }
        }
    }
    if rec.expected != ExpectedVerdict::Unmarked {
        let _ = writeln!(out, "expected: {}", rec.expected.as_str());
    }
    if let Some(cert) = &rec.certificate {
        let coords: Vec<String> = cert.lambda().iter().map(fmt_rational).collect();
        let _ = writeln!(out, "certificate: {}", coords.join(" "));
    }
    if rec.dagger {
        let _ = writeln!(out, "dagger: true");
    }
    if rec.sard_conditional {
        let _ = writeln!(out, "sard_conditional: true");
    }
    if let Some(u) = &rec.goh_control {
        let coords: Vec<String> = u.iter().map(fmt_rational).collect();
        let _ = writeln!(out, "goh_control: {}", coords.join(" "));
    }
    out
}

/// Signed-primitive check used when normalizing certificate input is not
/// wanted; re-exported for tests.
pub fn rational_to_string(r: &Rational) -> String {
    fmt_rational(r)
}

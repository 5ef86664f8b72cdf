//! Report documents. Every report serializes with `schema: 1` and sorted,
//! deterministic arrays; the same structs deserialize the machine output.

use serde::{Deserialize, Serialize};

use crate::job::{FieldEcho, Settings};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Input {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldEcho>,
    pub lambda: Vec<String>,
    pub options: Settings,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub exponent: Vec<u32>,
    pub monomial: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDoc {
    /// Labels of the integrals whose exponents generate `R_λ`.
    pub generators: Vec<String>,
    pub exponents: Vec<Vec<u32>>,
    pub rank: usize,
    /// Nonzero rows of the echelon form of the matrix with the basis as columns.
    pub echelon: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankDoc {
    pub rank_kernel: usize,
    pub rank_module: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralsReport {
    pub schema: u32,
    pub command: String,
    pub input: Input,
    pub relation_matrix: Vec<Vec<i64>>,
    pub denominator_lcm: String,
    pub hilbert_basis: Vec<Vec<u32>>,
    pub generators: Vec<Generator>,
    pub module: ModuleDoc,
    pub rank_condition: RankDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub schema: u32,
    pub command: String,
    pub input: Input,
    pub omega: Vec<Vec<i64>>,
    pub parameters: Vec<String>,
    pub zeroed: Vec<String>,
    pub weight_vector: Vec<String>,
    pub count: usize,
    pub invariants: Vec<Generator>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResonanceDoc {
    pub k: usize,
    pub coset_reps: Vec<Vec<u32>>,
    /// Augmented basis vectors with slack at least 2, slack first.
    pub discarded: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivariantDoc {
    pub label: String,
    pub k: usize,
    pub gamma: Vec<u32>,
    pub monomial: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygyDoc {
    /// `I_m` on the left.
    pub left_integral: usize,
    pub left_equivariant: usize,
    /// Power of each `I_i` on the right.
    pub right_integrals: Vec<u32>,
    pub right_equivariant: usize,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Located {
    pub k: usize,
    pub alpha: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overlap {
    pub k: usize,
    pub alpha: Vec<u32>,
    pub summands: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StanleyDoc {
    pub degree_bound: u64,
    /// `label: I_a, I_b, ...` per summand.
    pub summands: Vec<String>,
    pub ok: bool,
    pub checked: usize,
    pub missing: Vec<Located>,
    pub duplicated: Vec<Overlap>,
    pub uncovered: Vec<Located>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivariantsReport {
    pub schema: u32,
    pub command: String,
    pub input: Input,
    pub integrals: Vec<Generator>,
    pub resonance: Vec<ResonanceDoc>,
    pub equivariants: Vec<EquivariantDoc>,
    pub syzygy_bound: u64,
    pub syzygies: Vec<SyzygyDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stanley: Option<StanleyDoc>,
    pub rank_condition: RankDoc,
    pub rank_statement: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub schema: u32,
    pub command: String,
    pub input: Input,
    #[serde(rename = "box")]
    pub bound: u32,
    pub hilbert_basis: Vec<Vec<u32>>,
    pub oracle_minimal: Vec<Vec<u32>>,
    pub solutions_checked: usize,
    /// Basis vectors inside the box that the oracle does not list as minimal.
    pub basis_not_minimal: Vec<Vec<u32>>,
    /// Oracle minimal elements missing from the basis.
    pub minimal_not_in_basis: Vec<Vec<u32>>,
    /// Boxed solutions that are not sums of basis vectors.
    pub not_generated: Vec<Vec<u32>>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub schema: u32,
    pub command: String,
    pub appendix: String,
    pub options: Settings,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Any report, for rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Report {
    Integrals(IntegralsReport),
    Invariants(InvariantsReport),
    Equivariants(EquivariantsReport),
    Oracle(OracleReport),
    Replay(ReplayReport),
}

impl Report {
    pub fn to_machine(&self) -> String {
        let value = match self {
            Report::Integrals(r) => serde_json::to_string_pretty(r),
            Report::Invariants(r) => serde_json::to_string_pretty(r),
            Report::Equivariants(r) => serde_json::to_string_pretty(r),
            Report::Oracle(r) => serde_json::to_string_pretty(r),
            Report::Replay(r) => serde_json::to_string_pretty(r),
        };
        let mut s = value.expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        match self {
            Report::Integrals(r) => crate::text::integrals(r),
            Report::Invariants(r) => crate::text::invariants(r),
            Report::Equivariants(r) => crate::text::equivariants(r),
            Report::Oracle(r) => crate::text::oracle(r),
            Report::Replay(r) => crate::text::replay(r),
        }
    }

    /// Whether a verification embedded in the report failed.
    pub fn failed_check(&self) -> Option<String> {
        match self {
            Report::Oracle(r) if !r.agree => Some("Hilbert basis and oracle disagree".into()),
            Report::Replay(r) if !r.pass => Some(format!("appendix {} replay mismatch", r.appendix)),
            _ => None,
        }
    }
}

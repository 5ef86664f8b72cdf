//! Hilbert bases of `{α ∈ N_0^n : 𝔄α = 0}` from toric ideals, coset
//! representatives of the resonance sets, and a brute-force oracle.

mod oracle;

pub use oracle::{in_monoid, oracle_enumerate, OracleResult, DEFAULT_ORACLE_CEILING};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{relation_matrix, EigenvalueSpec, Rational};
use crate::groebner::{buchberger_with, extract_binomials, BuchbergerOptions, GroebnerBasis};
use crate::intlin::IntMatrix;
use crate::polyring::{CoeffField, Monomial, MonomialOrder, Polynomial, VariableSet};
use crate::ExponentVector;

/// How the Laurent elimination ideal is encoded, or where a basis came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Inverse variables `u_j` with `t_j u_j - 1` and `x_i - z_i t^{a+} u^{a-}`.
    #[default]
    LaurentInverseVars,
    /// Negative exponents moved to the `x` side, no inverse variables.
    SignSplit,
    /// Produced by bounded enumeration.
    Oracle,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::LaurentInverseVars => "laurent",
            Strategy::SignSplit => "sign-split",
            Strategy::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "laurent" | "laurent_inverse_vars" => Ok(Strategy::LaurentInverseVars),
            "sign-split" | "sign_split" => Ok(Strategy::SignSplit),
            "oracle" => Ok(Strategy::Oracle),
            _ => Err(Error::invalid(format!("unknown strategy `{s}`"))),
        }
    }
}

/// Settings shared by every Gröbner-based computation in this module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HilbertOptions {
    pub strategy: Strategy,
    pub field: CoeffField,
    pub gb: BuchbergerOptions,
}

impl HilbertOptions {
    pub fn with_strategy(strategy: Strategy) -> Self {
        HilbertOptions {
            strategy,
            ..Default::default()
        }
    }
}

/// Minimal generating set of the monoid, sorted lexicographically ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertBasis {
    pub n: usize,
    pub vectors: Vec<ExponentVector>,
    pub strategy: Strategy,
}

impl HilbertBasis {
    pub fn new(n: usize, mut vectors: Vec<ExponentVector>, strategy: Strategy) -> Self {
        vectors.sort();
        vectors.dedup();
        HilbertBasis {
            n,
            vectors,
            strategy,
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Coset representatives `S` of `N^(k)` modulo the monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResonanceSet {
    /// Component index, 1-based.
    pub k: usize,
    pub coset_reps: Vec<ExponentVector>,
    pub base: HilbertBasis,
    /// Augmented-basis vectors with slack at least 2; not part of the result.
    pub discarded: Vec<ExponentVector>,
}

/// Ideal whose elimination Gröbner basis exposes the Hilbert basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricIdeal {
    pub ring: VariableSet,
    pub generators: Vec<Polynomial>,
    pub order: MonomialOrder,
}

impl ToricIdeal {
    pub fn render(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| g.render(&self.ring, self.order))
            .collect()
    }

    pub fn groebner(&self, options: BuchbergerOptions) -> Result<GroebnerBasis> {
        buchberger_with(&self.ring, &self.generators, self.order, options)
    }
}

fn small_exponent(a: &BigInt) -> Result<u32> {
    u32::try_from(a).map_err(|_| Error::invalid(format!("matrix entry {a} too large")))
}

/// Variables are `t_j[, u_j]`, then `x_i`, then `z_i`, with `i` counted from
/// `first_index`. Zero rows of `a` impose nothing and get no eliminator.
pub fn toric_ideal(
    a: &IntMatrix,
    strategy: Strategy,
    field: CoeffField,
    first_index: usize,
) -> Result<ToricIdeal> {
    let kept: Vec<Vec<BigInt>> = (0..a.rows())
        .map(|r| a.row(r).to_vec())
        .filter(|row| row.iter().any(|v| !v.is_zero()))
        .collect();
    let a = &IntMatrix::from_big_rows(kept.len(), a.cols(), kept);
    let (d, n) = (a.rows(), a.cols());
    let laurent = match strategy {
        Strategy::LaurentInverseVars => true,
        Strategy::SignSplit => false,
        Strategy::Oracle => {
            return Err(Error::invalid("the oracle strategy has no toric ideal"))
        }
    };
    let mut elim = Vec::new();
    for j in 1..=d {
        elim.push(format!("t_{j}"));
        if laurent {
            elim.push(format!("u_{j}"));
        }
    }
    let xs = (0..n).map(|i| format!("x_{}", i + first_index)).collect();
    let zs = (0..n).map(|i| format!("z_{}", i + first_index)).collect();
    let ring = VariableSet::new(vec![
        ("elim".into(), elim),
        ("x".into(), xs),
        ("z".into(), zs),
    ])?;
    let nvars = ring.len();
    let width = if laurent { 2 } else { 1 };
    let (x0, z0) = (width * d, width * d + n);

    let mut generators = Vec::new();
    if laurent {
        for j in 0..d {
            let mut tu = vec![0; nvars];
            tu[2 * j] = 1;
            tu[2 * j + 1] = 1;
            generators.push(Polynomial::binomial(
                Monomial(tu),
                Monomial::one(nvars),
                field,
            ));
        }
    }
    for i in 0..n {
        let mut left = vec![0u32; nvars];
        let mut right = vec![0u32; nvars];
        left[x0 + i] = 1;
        right[z0 + i] = 1;
        for j in 0..d {
            let e = &a[(j, i)];
            if e.is_zero() {
                continue;
            }
            let mag = small_exponent(&num_traits::Signed::abs(e))?;
            // x_i = z_i·t^a: positive parts go with z, negative parts with
            // z as powers of u_j = 1/t_j, or with x when there are no inverses.
            if *e > BigInt::zero() {
                right[width * j] += mag;
            } else if laurent {
                right[2 * j + 1] += mag;
            } else {
                left[j] += mag;
            }
        }
        let g = Polynomial::from_terms(
            nvars,
            field,
            [
                (Monomial(left), Rational::one()),
                (Monomial(right), -Rational::one()),
            ],
        );
        generators.push(g.monic(MonomialOrder::Lex));
    }
    Ok(ToricIdeal {
        ring,
        generators,
        order: MonomialOrder::Lex,
    })
}

/// Builds the toric ideal, computes its reduced Gröbner basis and keeps the
/// binomials `x^ν - z^ν`.
pub fn hilbert_basis(a: &IntMatrix, options: &HilbertOptions) -> Result<HilbertBasis> {
    hilbert_basis_indexed(a, options, 1).map(|(h, _)| h)
}

fn hilbert_basis_indexed(
    a: &IntMatrix,
    options: &HilbertOptions,
    first_index: usize,
) -> Result<(HilbertBasis, GroebnerBasis)> {
    let ideal = toric_ideal(a, options.strategy, options.field, first_index)?;
    let gb = ideal.groebner(options.gb)?;
    let vectors = extract_binomials(&gb, "x", "z")?;
    Ok((HilbertBasis::new(a.cols(), vectors, options.strategy), gb))
}

/// `x_1^2*x_3` style rendering with 1-based indices.
pub fn monomial_string(prefix: &str, nu: &[u32]) -> String {
    let parts: Vec<String> = nu
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| match e {
            1 => format!("{prefix}_{}", i + 1),
            _ => format!("{prefix}_{}^{e}", i + 1),
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Generators `x^ν` of the algebra of monomial first integrals.
pub fn integral_generators(
    spec: &EigenvalueSpec,
    options: &HilbertOptions,
) -> Result<Vec<(ExponentVector, String)>> {
    let h = hilbert_basis(&relation_matrix(spec), options)?;
    Ok(h.vectors
        .into_iter()
        .map(|nu| {
            let s = monomial_string("x", &nu);
            (nu, s)
        })
        .collect())
}

/// `[−𝔞_k | 𝔄]` for 1-based `k`.
pub fn augmented_matrix(a: &IntMatrix, k: usize) -> Result<IntMatrix> {
    if k == 0 || k > a.cols() {
        return Err(Error::invalid(format!(
            "component {k} out of range 1..={}",
            a.cols()
        )));
    }
    let column: Vec<BigInt> = a.column(k - 1).into_iter().map(|v| -v).collect();
    Ok(a.with_leading_column(&column))
}

/// The toric ideal of the augmented matrix, with the slack variable named
/// `x_0`/`z_0`.
pub fn resonance_ideal(spec: &EigenvalueSpec, k: usize, options: &HilbertOptions) -> Result<ToricIdeal> {
    let a = augmented_matrix(&relation_matrix(spec), k)?;
    toric_ideal(&a, options.strategy, options.field, 0)
}

/// Hilbert basis of the monoid and coset representatives of `N^(k)`.
pub fn resonance_generators(
    spec: &EigenvalueSpec,
    k: usize,
    options: &HilbertOptions,
) -> Result<(HilbertBasis, ResonanceSet)> {
    let a = augmented_matrix(&relation_matrix(spec), k)?;
    let (augmented, _) = hilbert_basis_indexed(&a, options, 0)?;
    let mut base = Vec::new();
    let mut reps = Vec::new();
    let mut discarded = Vec::new();
    for v in augmented.vectors {
        match v[0] {
            0 => base.push(v[1..].to_vec()),
            1 => reps.push(v[1..].to_vec()),
            _ => {
                log::debug!("component {k}: dropping slack-{} vector {:?}", v[0], v);
                discarded.push(v);
            }
        }
    }
    let n = spec.len();
    let base = HilbertBasis::new(n, base, options.strategy);
    reps.sort();
    Ok((
        base.clone(),
        ResonanceSet {
            k,
            coset_reps: reps,
            base,
            discarded,
        },
    ))
}

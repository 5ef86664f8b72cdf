//! The four job subcommands.

use std::collections::{BTreeMap, BTreeSet};

use firstint::exact_arith::{coordinate_matrix, integerize};
use firstint::hilbert::{hilbert_basis, in_monoid, monomial_string, oracle_enumerate, DEFAULT_ORACLE_CEILING};
use firstint::intlin::{module_generators, rank_condition, IntMatrix};
use firstint::invariants::{invariant_generators, weight_vector};
use firstint::normalform::{
    equivariant_generators, formal_integral_rank_report, stanley_verify_with, syzygy_scan, StanleyDecomposition,
};
use firstint::ExponentVector;
use num_traits::ToPrimitive;

use crate::error::{CliError, CliResult};
use crate::job::{Job, SummandDoc};
use crate::report::*;

pub const NO_INTEGRALS: &str = "no nontrivial monomial first integrals";

fn input(job: &Job) -> Input {
    Input {
        field: job.field_doc(),
        lambda: job.lambda_strings(),
        options: job.settings.clone(),
    }
}

pub(crate) fn small_rows(m: &IntMatrix) -> CliResult<Vec<Vec<i64>>> {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(|v| v.to_i64().ok_or_else(|| CliError::job(format!("matrix entry {v} exceeds 64 bits"))))
                .collect()
        })
        .collect()
}

fn integral_list(vectors: &[ExponentVector]) -> Vec<Generator> {
    vectors
        .iter()
        .enumerate()
        .map(|(i, v)| Generator {
            label: format!("I_{}", i + 1),
            exponent: v.clone(),
            monomial: monomial_string("x", v),
        })
        .collect()
}

pub fn integrals(job: &Job) -> CliResult<IntegralsReport> {
    let (a, l) = integerize(&coordinate_matrix(&job.eigen));
    let opts = job.settings.hilbert_options();
    let h = hilbert_basis(&a, &opts)?;
    let module = module_generators(a.cols(), &h.vectors);
    let labels = module.pivot_cols.iter().map(|&j| format!("I_{}", j + 1)).collect();
    let echelon = module
        .echelon
        .basis_rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.to_i64().ok_or_else(|| CliError::job("echelon entry exceeds 64 bits")))
                .collect()
        })
        .collect::<CliResult<_>>()?;
    let rc = rank_condition(&a, &h.vectors);
    Ok(IntegralsReport {
        schema: SCHEMA,
        command: "integrals".into(),
        input: input(job),
        relation_matrix: small_rows(&a)?,
        denominator_lcm: l.to_string(),
        generators: integral_list(&h.vectors),
        module: ModuleDoc {
            generators: labels,
            exponents: module.generators.clone(),
            rank: module.rank(),
            echelon,
        },
        rank_condition: RankDoc {
            rank_kernel: rc.rank_kernel,
            rank_module: rc.rank_module,
            holds: rc.holds(),
        },
        message: h.is_empty().then(|| NO_INTEGRALS.to_string()),
        hilbert_basis: h.vectors,
    })
}

pub fn invariants(job: &Job) -> CliResult<InvariantsReport> {
    let spec = job.require_system()?;
    let opts = job.settings.hilbert_options();
    let gens = invariant_generators(spec, &opts)?;
    let weights = weight_vector(spec);
    Ok(InvariantsReport {
        schema: SCHEMA,
        command: "invariants".into(),
        input: input(job),
        omega: spec.omega.clone(),
        parameters: (0..spec.parameter_count()).map(|p| spec.label(p)).collect(),
        zeroed: spec.zeroed.iter().map(|&p| spec.label(p)).collect(),
        weight_vector: weights.entries.iter().map(|w| w.to_string()).collect(),
        count: gens.len(),
        invariants: gens
            .into_iter()
            .enumerate()
            .map(|(i, (exponent, monomial))| Generator {
                label: format!("J_{}", i + 1),
                exponent,
                monomial,
            })
            .collect(),
    })
}

/// Equivariant report; `decomposition` overrides the job's own fixture.
pub fn equivariants(job: &Job, decomposition: Option<&[SummandDoc]>) -> CliResult<EquivariantsReport> {
    let opts = job.settings.hilbert_options();
    let a = integerize(&coordinate_matrix(&job.eigen)).0;
    let h = hilbert_basis(&a, &opts)?.vectors;
    let data = equivariant_generators(&job.eigen, &opts)?;
    let equivs = &data.equivariants;
    let syzygies = syzygy_scan(&h, equivs, job.settings.syzygy_bound)
        .into_iter()
        .map(|s| SyzygyDoc {
            text: s.render(equivs),
            left_integral: s.left.0,
            left_equivariant: s.left.1,
            right_integrals: s.right.0,
            right_equivariant: s.right.1,
        })
        .collect();

    let fixture = decomposition.or(job.doc.decomposition.as_deref());
    let stanley = fixture
        .map(|summands| {
            let by_key: BTreeMap<(usize, &[u32]), usize> = equivs
                .iter()
                .enumerate()
                .map(|(i, e)| ((e.k, e.gamma.as_slice()), i + 1))
                .collect();
            let mut dec = StanleyDecomposition { summands: Vec::new() };
            let mut names = Vec::new();
            for s in summands {
                let j = *by_key.get(&(s.k, s.gamma.as_slice())).ok_or_else(|| {
                    CliError::job(format!(
                        "decomposition names x^{:?} e_{}, which is not an equivariant generator",
                        s.gamma, s.k
                    ))
                })?;
                let allowed: Vec<String> = s.integrals.iter().map(|m| format!("I_{m}")).collect();
                names.push(format!("{}: {}", equivs[j - 1].label, allowed.join(", ")));
                dec.summands.push((j, s.integrals.clone()));
            }
            let bound = job.settings.degree_bound;
            let r = stanley_verify_with(&dec, &job.eigen, &h, &data, bound)?;
            let label = |j: usize| equivs[j - 1].label.clone();
            Ok::<_, CliError>(StanleyDoc {
                degree_bound: bound,
                summands: names,
                ok: r.ok,
                checked: r.checked,
                missing: r.missing.into_iter().map(|(k, alpha)| Located { k, alpha }).collect(),
                duplicated: r
                    .duplicated
                    .into_iter()
                    .map(|(k, alpha, hits)| Overlap {
                        k,
                        alpha,
                        summands: hits.into_iter().map(label).collect(),
                    })
                    .collect(),
                uncovered: r.uncovered.into_iter().map(|(k, alpha)| Located { k, alpha }).collect(),
            })
        })
        .transpose()?;

    let rank = formal_integral_rank_report(&job.eigen, &opts)?;
    Ok(EquivariantsReport {
        schema: SCHEMA,
        command: "equivariants".into(),
        input: input(job),
        integrals: integral_list(&h),
        resonance: data
            .resonance
            .iter()
            .map(|s| ResonanceDoc {
                k: s.k,
                coset_reps: s.coset_reps.clone(),
                discarded: s.discarded.clone(),
            })
            .collect(),
        equivariants: equivs
            .iter()
            .map(|e| EquivariantDoc {
                label: e.label.clone(),
                k: e.k,
                gamma: e.gamma.clone(),
                monomial: e.render(),
            })
            .collect(),
        syzygy_bound: job.settings.syzygy_bound,
        syzygies,
        stanley,
        rank_condition: RankDoc {
            rank_kernel: rank.condition.rank_kernel,
            rank_module: rank.condition.rank_module,
            holds: rank.holds(),
        },
        rank_statement: rank.statement,
    })
}

/// Compares the Gröbner Hilbert basis with exhaustive enumeration in a box.
pub fn oracle_check(job: &Job, bound: Option<u32>) -> CliResult<OracleReport> {
    let bound = bound.unwrap_or(job.settings.oracle_box);
    let a = integerize(&coordinate_matrix(&job.eigen)).0;
    let oracle = oracle_enumerate(&a, bound, DEFAULT_ORACLE_CEILING)?;
    let h = hilbert_basis(&a, &job.settings.hilbert_options())?.vectors;
    let minimal: BTreeSet<&ExponentVector> = oracle.minimal.iter().collect();
    let basis: BTreeSet<&ExponentVector> = h.iter().collect();
    let basis_not_minimal: Vec<ExponentVector> = h
        .iter()
        .filter(|v| v.iter().all(|&e| e <= bound) && !minimal.contains(v))
        .cloned()
        .collect();
    let minimal_not_in_basis: Vec<ExponentVector> =
        oracle.minimal.iter().filter(|v| !basis.contains(v)).cloned().collect();
    let not_generated: Vec<ExponentVector> =
        oracle.solutions.iter().filter(|s| !in_monoid(s, &h)).cloned().collect();
    let agree = basis_not_minimal.is_empty() && minimal_not_in_basis.is_empty() && not_generated.is_empty();
    Ok(OracleReport {
        schema: SCHEMA,
        command: "oracle-check".into(),
        input: input(job),
        bound,
        hilbert_basis: h,
        solutions_checked: oracle.solutions.len(),
        oracle_minimal: oracle.minimal,
        basis_not_minimal,
        minimal_not_in_basis,
        not_generated,
        agree,
    })
}

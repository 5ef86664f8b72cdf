//! Replays the bundled reference sessions and diffs against their outputs.

use std::collections::{BTreeMap, BTreeSet};

use firstint::exact_arith::{relation_matrix, EigenvalueSpec};
use firstint::groebner::extract_binomials;
use firstint::hilbert::{hilbert_basis, monomial_string, resonance_generators, resonance_ideal, toric_ideal, Strategy};
use firstint::intlin::module_generators;
use firstint::invariants::{invariant_generators, weight_vector};
use firstint::polyring::{CoeffField, MonomialOrder, Polynomial, VariableSet};
use firstint::ExponentVector;
use num_traits::ToPrimitive;

use crate::error::{CliError, CliResult};
use crate::job::{Job, Overrides};
use crate::report::{Check, ReplayReport, SCHEMA};

pub mod fixtures {
    pub const APPENDIX_A_GB: &str = include_str!("../fixtures/appendix_a_gb.txt");
    pub const APPENDIX_B_ECHELON: &str = include_str!("../fixtures/appendix_b_echelon.txt");
    pub const APPENDIX_C_LEADING: &str = include_str!("../fixtures/appendix_c_leading.txt");
    pub const APPENDIX_E_GB: &str = include_str!("../fixtures/appendix_e_gb.txt");
    pub const SECTION4_INVARIANTS: &str = include_str!("../fixtures/section4_invariants.txt");
    pub const EXAMPLE1: &str = include_str!("../fixtures/jobs/example1.json");
    pub const EXAMPLE2_RESTRICTED: &str = include_str!("../fixtures/jobs/example2_restricted.json");
    pub const EXAMPLE2_FULL: &str = include_str!("../fixtures/jobs/example2_full.json");
    pub const STANLEY: &str = include_str!("../fixtures/jobs/example3_stanley.json");
    pub const STANLEY_CORRECTED: &str = include_str!("../fixtures/jobs/example3_stanley_corrected.json");
    pub const STANLEY_ENLARGED_V6: &str = include_str!("../fixtures/jobs/example3_stanley_enlarged_v6.json");
    pub const STANLEY_DELETED_V9: &str = include_str!("../fixtures/jobs/example3_stanley_deleted_v9.json");

    /// Non-comment, non-blank lines.
    pub fn lines(text: &str) -> impl Iterator<Item = &str> {
        text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
    }
}

/// The Hilbert basis of the first example, in canonical order.
pub const EXAMPLE1_HILBERT: [[u32; 5]; 6] = [
    [0, 0, 0, 3, 2],
    [0, 1, 1, 1, 1],
    [0, 3, 3, 0, 1],
    [1, 0, 0, 2, 1],
    [1, 1, 1, 0, 0],
    [2, 0, 0, 1, 0],
];

/// Parses `name^e*name` into an exponent vector over `names`.
pub fn parse_monomial(text: &str, names: &BTreeMap<String, usize>) -> CliResult<ExponentVector> {
    let mut v = vec![0u32; names.len()];
    for factor in text.split('*').map(str::trim) {
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => (
                n,
                e.parse::<u32>()
                    .map_err(|_| CliError::job(format!("bad exponent in `{factor}`")))?,
            ),
            None => (factor, 1),
        };
        let i = names
            .get(name)
            .ok_or_else(|| CliError::job(format!("unknown factor `{name}` in `{text}`")))?;
        v[*i] += exp;
    }
    Ok(v)
}

fn set_check<T: Ord + std::fmt::Debug>(name: &str, got: &BTreeSet<T>, want: &BTreeSet<T>) -> Check {
    let missing: Vec<&T> = want.difference(got).collect();
    let extra: Vec<&T> = got.difference(want).collect();
    let pass = missing.is_empty() && extra.is_empty();
    let detail = if pass {
        format!("{} elements, identical", got.len())
    } else {
        format!(
            "{} computed, {} expected; missing {:?}; unexpected {:?}",
            got.len(),
            want.len(),
            missing,
            extra
        )
    };
    Check {
        name: name.into(),
        pass,
        detail,
    }
}

fn eq_check<T: std::fmt::Debug + PartialEq>(name: &str, got: T, want: T) -> Check {
    let pass = got == want;
    Check {
        name: name.into(),
        pass,
        detail: if pass {
            format!("{got:?}")
        } else {
            format!("computed {got:?}, expected {want:?}")
        },
    }
}

/// Canonical text of each reference polynomial in `ring`.
fn reference_polys(text: &str, ring: &VariableSet, field: CoeffField) -> CliResult<BTreeSet<String>> {
    fixtures::lines(text)
        .map(|line| {
            let p = Polynomial::parse(line, ring, field)?;
            Ok(p.monic(MonomialOrder::Lex).render(ring, MonomialOrder::Lex))
        })
        .collect()
}

fn example1(flags: &Overrides) -> CliResult<Job> {
    Job::parse(fixtures::EXAMPLE1, flags)
}

fn example1_hilbert() -> BTreeSet<ExponentVector> {
    EXAMPLE1_HILBERT.iter().map(|v| v.to_vec()).collect()
}

fn appendix_a(job: &Job) -> CliResult<Vec<Check>> {
    let mut opts = job.settings.hilbert_options();
    opts.strategy = Strategy::SignSplit;
    let ideal = toric_ideal(&relation_matrix(&job.eigen), Strategy::SignSplit, opts.field, 1)?;
    let gb = ideal.groebner(opts.gb)?;
    let got: BTreeSet<String> = gb.render().into_iter().collect();
    let want = reference_polys(fixtures::APPENDIX_A_GB, &ideal.ring, opts.field)?;
    let h: BTreeSet<ExponentVector> = extract_binomials(&gb, "x", "z")?.into_iter().collect();
    Ok(vec![
        set_check("reduced Groebner basis (sign-split)", &got, &want),
        set_check("Hilbert basis from x^nu - z^nu", &h, &example1_hilbert()),
    ])
}

fn appendix_b(job: &Job) -> CliResult<Vec<Check>> {
    let a = relation_matrix(&job.eigen);
    let h = hilbert_basis(&a, &job.settings.hilbert_options())?.vectors;
    let module = module_generators(a.cols(), &h);
    let echelon: Vec<Vec<i64>> = module
        .echelon
        .basis_rows()
        .iter()
        .map(|r| r.iter().map(|v| v.to_i64().unwrap_or(i64::MAX)).collect())
        .collect();
    let want: Vec<Vec<i64>> = fixtures::lines(fixtures::APPENDIX_B_ECHELON)
        .map(|l| l.split_whitespace().map(|t| t.parse().expect("integer fixture")).collect())
        .collect();
    let gens: BTreeSet<ExponentVector> = module.generators.iter().cloned().collect();
    let want_gens: BTreeSet<ExponentVector> = [[0, 0, 0, 3, 2], [0, 1, 1, 1, 1], [1, 0, 0, 2, 1]]
        .iter()
        .map(|v| v.to_vec())
        .collect();
    Ok(vec![
        eq_check("echelon basis", echelon, want),
        eq_check("rank", module.rank(), 3),
        set_check("Z-module generators", &gens, &want_gens),
    ])
}

fn x_names(n: usize) -> BTreeMap<String, usize> {
    (0..n).map(|i| (format!("x_{}", i + 1), i)).collect()
}

fn appendix_c(flags: &Overrides) -> CliResult<Vec<Check>> {
    let job = Job::parse(fixtures::EXAMPLE2_RESTRICTED, flags)?;
    let spec = job.require_system()?;
    let gens = invariant_generators(spec, &job.settings.hilbert_options())?;
    let m = spec.parameter_count();
    let got: BTreeSet<ExponentVector> = gens.iter().map(|(v, _)| v.clone()).collect();
    let want = fixtures::lines(fixtures::APPENDIX_C_LEADING)
        .map(|l| parse_monomial(l, &x_names(m)))
        .collect::<CliResult<BTreeSet<_>>>()?;
    let labels: BTreeMap<String, usize> = (0..m).map(|p| (spec.label(p), p)).collect();
    let listed = fixtures::lines(fixtures::SECTION4_INVARIANTS)
        .map(|l| parse_monomial(l, &labels))
        .collect::<CliResult<BTreeSet<_>>>()?;
    let absent: Vec<String> = listed.difference(&got).map(|v| spec.render(v)).collect();
    let unlisted: Vec<String> = got.difference(&listed).map(|v| spec.render(v)).collect();
    Ok(vec![
        eq_check("generator count", gens.len(), 64),
        set_check("leading monomials x^nu", &got, &want),
        Check {
            name: "listed invariants are generators".into(),
            pass: absent.is_empty(),
            detail: format!(
                "{} listed, {} absent {:?}; generators not listed: {:?}",
                listed.len(),
                absent.len(),
                absent,
                unlisted
            ),
        },
    ])
}

fn appendix_d(flags: &Overrides) -> CliResult<Vec<Check>> {
    let job = Job::parse(fixtures::EXAMPLE2_RESTRICTED, flags)?;
    let spec = job.require_system()?;
    let weights = weight_vector(spec);
    let eigen = EigenvalueSpec::new(job.eigen.field().clone(), weights.entries)?;
    let opts = job.settings.hilbert_options();
    let ideal = toric_ideal(&relation_matrix(&eigen), Strategy::SignSplit, opts.field, 1)?;
    let gb = ideal.groebner(opts.gb)?;
    let binomials = extract_binomials(&gb, "x", "z")?;
    let leading: BTreeSet<String> = binomials.iter().map(|v| monomial_string("x", v)).collect();
    let m = spec.parameter_count();
    let want: BTreeSet<String> = fixtures::lines(fixtures::APPENDIX_C_LEADING)
        .map(|l| parse_monomial(l, &x_names(m)).map(|v| monomial_string("x", &v)))
        .collect::<CliResult<_>>()?;
    Ok(vec![
        eq_check("Groebner basis size (sign-split, all 15 weights)", gb.len(), 211),
        eq_check("binomials x^nu - z^nu", binomials.len(), 64),
        set_check("their leading monomials", &leading, &want),
    ])
}

fn appendix_e(job: &Job) -> CliResult<Vec<Check>> {
    let mut opts = job.settings.hilbert_options();
    opts.strategy = Strategy::SignSplit;
    let ideal = resonance_ideal(&job.eigen, 1, &opts)?;
    let gb = ideal.groebner(opts.gb)?;
    let got: BTreeSet<String> = gb.render().into_iter().collect();
    let want = reference_polys(fixtures::APPENDIX_E_GB, &ideal.ring, opts.field)?;
    let (_, s1) = resonance_generators(&job.eigen, 1, &opts)?;
    let s1: BTreeSet<ExponentVector> = s1.coset_reps.into_iter().collect();
    let want_s1: BTreeSet<ExponentVector> = [[1, 0, 0, 0, 0], [0, 0, 0, 1, 1], [0, 2, 2, 0, 1]]
        .iter()
        .map(|v| v.to_vec())
        .collect();
    Ok(vec![
        set_check("reduced Groebner basis, k = 1 (sign-split)", &got, &want),
        set_check("S_1", &s1, &want_s1),
    ])
}

pub fn replay(appendix: &str, flags: &Overrides) -> CliResult<ReplayReport> {
    let letter = appendix.to_ascii_uppercase();
    let job = example1(flags)?;
    let checks = match letter.as_str() {
        "A" => appendix_a(&job)?,
        "B" => appendix_b(&job)?,
        "C" => appendix_c(flags)?,
        "D" => appendix_d(flags)?,
        "E" => appendix_e(&job)?,
        other => return Err(CliError::job(format!("no appendix `{other}` (expected A-E)"))),
    };
    Ok(ReplayReport {
        schema: SCHEMA,
        command: "replay-appendix".into(),
        appendix: letter,
        options: job.settings,
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

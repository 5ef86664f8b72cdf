//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criterion 4 is extended (tens of seconds in release, several minutes in
//! debug) and only runs with `FIRSTINT_EXTENDED=1`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use firstint::exact_arith::{rational_int, relation_matrix, EigenvalueSpec, NumberField, NumberFieldElement};
use firstint::hilbert::{
    hilbert_basis, in_monoid, oracle_enumerate, resonance_generators, resonance_ideal, HilbertOptions, Strategy,
    DEFAULT_ORACLE_CEILING,
};
use firstint::intlin::{module_generators, rank_condition, z_echelon, IntMatrix};
use firstint::invariants::{invariant_generators, verify_invariance};
use firstint::normalform::{equivariant_generators, syzygy_scan, Syzygy};
use firstint::ExponentVector;
use firstint_cli::replay::{fixtures, parse_monomial};
use firstint_cli::{commands, Job, Overrides};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn vecs(rows: &[[u32; 5]]) -> BTreeSet<ExponentVector> {
    rows.iter().map(|r| r.to_vec()).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn example1_job() -> Job {
    Job::parse(fixtures::EXAMPLE1, &Overrides::default()).unwrap()
}

fn c1() -> Outcome {
    let report = commands::integrals(&example1_job()).map_err(|e| e.to_string())?;
    let got: BTreeSet<ExponentVector> = report.hilbert_basis.iter().cloned().collect();
    let want = vecs(&[
        [0, 0, 0, 3, 2],
        [0, 1, 1, 1, 1],
        [0, 3, 3, 0, 1],
        [1, 0, 0, 2, 1],
        [1, 1, 1, 0, 0],
        [2, 0, 0, 1, 0],
    ]);
    ensure(got == want, || format!("H = {got:?}"))?;
    let rendered: Vec<String> = report
        .generators
        .iter()
        .map(|g| format!("{}={}", g.label, g.monomial))
        .collect();
    let eq15 = [
        "I_1=x_4^3*x_5^2",
        "I_2=x_2*x_3*x_4*x_5",
        "I_3=x_2^3*x_3^3*x_5",
        "I_4=x_1*x_4^2*x_5",
        "I_5=x_1*x_2*x_3",
        "I_6=x_1^2*x_4",
    ];
    ensure(rendered == eq15, || format!("generators {rendered:?}"))?;
    Ok("H has the 6 vectors; I_1..I_6 match".into())
}

fn c2() -> Outcome {
    let h: Vec<ExponentVector> = vecs(&[
        [0, 0, 0, 3, 2],
        [0, 1, 1, 1, 1],
        [0, 3, 3, 0, 1],
        [1, 0, 0, 2, 1],
        [1, 1, 1, 0, 0],
        [2, 0, 0, 1, 0],
    ])
    .into_iter()
    .collect();
    let columns: Vec<Vec<BigInt>> = h.iter().map(|v| v.iter().map(|&x| x.into()).collect()).collect();
    let n = IntMatrix::from_columns(5, &columns);
    let e = z_echelon(&n);
    let got: Vec<Vec<i64>> = e
        .basis_rows()
        .iter()
        .map(|r| r.iter().map(|v| i64::try_from(v).unwrap()).collect())
        .collect();
    let want: Vec<Vec<i64>> = fixtures::lines(fixtures::APPENDIX_B_ECHELON)
        .map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect();
    ensure(got == want, || format!("echelon {got:?}"))?;
    ensure(e.rank() == 3, || format!("rank {}", e.rank()))?;
    let gens: BTreeSet<ExponentVector> = module_generators(5, &h).generators.into_iter().collect();
    ensure(gens == vecs(&[[0, 0, 0, 3, 2], [0, 1, 1, 1, 1], [1, 0, 0, 2, 1]]), || {
        format!("generators {gens:?}")
    })?;
    Ok("echelon matrix equal, rank 3, generators I_1, I_2, I_4".into())
}

fn restricted() -> Job {
    Job::parse(fixtures::EXAMPLE2_RESTRICTED, &Overrides::default()).unwrap()
}

fn c3() -> Outcome {
    let job = restricted();
    let report = commands::invariants(&job).map_err(|e| e.to_string())?;
    let spec = job.system.as_ref().unwrap();
    let m = spec.parameter_count();
    ensure(report.count == 64, || format!("count {}", report.count))?;
    let got: BTreeSet<ExponentVector> = report.invariants.iter().map(|g| g.exponent.clone()).collect();
    let xs: BTreeMap<String, usize> = (0..m).map(|i| (format!("x_{}", i + 1), i)).collect();
    let appendix_c: BTreeSet<ExponentVector> = fixtures::lines(fixtures::APPENDIX_C_LEADING)
        .map(|l| parse_monomial(l, &xs).unwrap())
        .collect();
    ensure(got == appendix_c, || "differs from the leading-monomial list".into())?;
    let labels: BTreeMap<String, usize> = (0..m).map(|p| (spec.label(p), p)).collect();
    let rendered: BTreeSet<ExponentVector> = report
        .invariants
        .iter()
        .map(|g| parse_monomial(&g.monomial, &labels).unwrap())
        .collect();
    ensure(rendered == got, || "rendered monomials do not parse back".into())?;
    let listed: BTreeSet<ExponentVector> = fixtures::lines(fixtures::SECTION4_INVARIANTS)
        .map(|l| parse_monomial(l, &labels).unwrap())
        .collect();
    let unlisted: Vec<String> = got.difference(&listed).map(|v| spec.render(v)).collect();
    ensure(listed.is_subset(&got), || "a listed invariant is not a generator".into())?;
    Ok(format!(
        "64 generators = leading-monomial list; all {} printed invariants present; unprinted: {}",
        listed.len(),
        unlisted.join(", ")
    ))
}

fn c4() -> Outcome {
    let job = Job::parse(fixtures::EXAMPLE2_FULL, &Overrides::default()).unwrap();
    let report = commands::invariants(&job).map_err(|e| e.to_string())?;
    ensure(report.count == 425, || format!("count {}", report.count))?;
    Ok("425 generators".into())
}

fn c5() -> Outcome {
    let job = example1_job();
    let opts = HilbertOptions::default();
    let want: [Vec<[u32; 5]>; 5] = [
        vec![[1, 0, 0, 0, 0], [0, 0, 0, 1, 1], [0, 2, 2, 0, 1]],
        vec![[0, 1, 0, 0, 0]],
        vec![[0, 0, 1, 0, 0]],
        vec![[0, 0, 0, 1, 0], [0, 2, 2, 0, 0]],
        vec![[0, 0, 0, 0, 1], [3, 0, 0, 0, 0]],
    ];
    for (k, w) in (1..=5).zip(want) {
        let (_, s) = resonance_generators(&job.eigen, k, &opts).map_err(|e| e.to_string())?;
        let got: BTreeSet<ExponentVector> = s.coset_reps.into_iter().collect();
        ensure(got == vecs(&w), || format!("S_{k} = {got:?}"))?;
    }
    Ok("S_1..S_5 exact".into())
}

/// Example 3's relations as printed, indexed by the printed labels.
const PRINTED: [(usize, usize, &[(usize, u32)], usize); 14] = [
    (4, 6, &[(1, 1)], 1),
    (5, 6, &[(2, 1)], 1),
    (6, 6, &[(4, 1)], 1),
    (1, 7, &[(2, 2)], 4),
    (2, 7, &[(3, 1)], 4),
    (4, 7, &[(2, 1), (5, 1)], 4),
    (6, 7, &[(5, 2)], 5),
    (1, 8, &[(4, 1), (6, 1)], 5),
    (2, 8, &[(5, 1), (6, 1)], 5),
    (3, 8, &[(6, 2)], 5),
    (1, 9, &[(2, 2)], 1),
    (2, 9, &[(3, 1)], 6),
    (4, 9, &[(2, 2)], 1),
    (5, 9, &[(3, 1)], 1),
];

fn c6() -> Outcome {
    let job = example1_job();
    let opts = HilbertOptions::default();
    let h = hilbert_basis(&relation_matrix(&job.eigen), &opts).map_err(|e| e.to_string())?.vectors;
    let data = equivariant_generators(&job.eigen, &opts).map_err(|e| e.to_string())?;
    let equivs = &data.equivariants;
    // Printed v_j as (k, γ), so the check does not depend on our numbering.
    let printed: BTreeMap<usize, (usize, Vec<u32>)> = [
        (1, (1, vec![1, 0, 0, 0, 0])),
        (2, (2, vec![0, 1, 0, 0, 0])),
        (3, (3, vec![0, 0, 1, 0, 0])),
        (4, (4, vec![0, 0, 0, 1, 0])),
        (5, (5, vec![0, 0, 0, 0, 1])),
        (6, (1, vec![0, 0, 0, 1, 1])),
        (7, (4, vec![0, 2, 2, 0, 0])),
        (8, (5, vec![3, 0, 0, 0, 0])),
        (9, (1, vec![0, 2, 2, 0, 1])),
    ]
    .into_iter()
    .collect();
    let ours = |p: usize| {
        let key = &printed[&p];
        equivs.iter().position(|e| (e.k, &e.gamma) == (key.0, &key.1)).unwrap() + 1
    };
    let found = syzygy_scan(&h, equivs, 12);
    let mut missing = Vec::new();
    for &(m, j, right, jp) in PRINTED.iter() {
        let mut mu = vec![0; h.len()];
        for &(i, p) in right {
            mu[i - 1] = p;
        }
        let s = Syzygy {
            left: (m, ours(j)),
            right: (mu, ours(jp)),
        };
        if !found.contains(&s) {
            let balanced = if s.holds(&h, equivs) { "balanced" } else { "does not balance" };
            missing.push(format!("I_{m} v_{j} = ..v_{jp} ({balanced})"));
        }
    }

    let verdict = |text: &str| {
        let report = commands::equivariants(&Job::parse(text, &Overrides::default()).unwrap(), None)
            .map_err(|e| e.to_string())?;
        Ok::<_, String>(report.stanley.unwrap())
    };
    let printed_dec = verdict(fixtures::STANLEY)?;
    let enlarged = verdict(fixtures::STANLEY_ENLARGED_V6)?;
    let deleted = verdict(fixtures::STANLEY_DELETED_V9)?;
    let corrected = verdict(fixtures::STANLEY_CORRECTED)?;
    let summary = format!(
        "scan found {}/14 printed relations{}; printed decomposition ok={} (duplicated {:?}); \
         enlarged v_6 duplicated={}; deleted v_9 missing={}; corrected decomposition ok={}",
        14 - missing.len(),
        if missing.is_empty() {
            String::new()
        } else {
            format!(" (not found: {})", missing.join(", "))
        },
        printed_dec.ok,
        printed_dec
            .duplicated
            .iter()
            .map(|d| (d.k, d.alpha.clone()))
            .collect::<Vec<_>>(),
        enlarged.duplicated.len(),
        deleted.missing.len(),
        corrected.ok,
    );
    let pass = missing.is_empty() && printed_dec.ok && !enlarged.duplicated.is_empty() && !deleted.missing.is_empty();
    if pass {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn c7() -> Outcome {
    let job = example1_job();
    let wanted = ["x_0*x_4*x_5-z_0*z_4*z_5", "x_0*x_1-z_0*z_1", "x_0*x_2^2*x_3^2*x_5-z_0*z_2^2*z_3^2*z_5"];
    let mut notes = Vec::new();
    for strategy in [Strategy::SignSplit, Strategy::LaurentInverseVars] {
        let opts = HilbertOptions::with_strategy(strategy);
        let ideal = resonance_ideal(&job.eigen, 1, &opts).map_err(|e| e.to_string())?;
        let gb = ideal.groebner(opts.gb).map_err(|e| e.to_string())?;
        let rendered: BTreeSet<String> = gb.render().into_iter().collect();
        for w in wanted {
            ensure(rendered.contains(w), || format!("{strategy}: {w} not in the basis"))?;
        }
        notes.push(format!("{strategy}: {} elements", gb.len()));
    }
    Ok(format!("all three binomials present ({}); s -> t_1, t -> t_2, y -> z", notes.join(", ")))
}

fn random_spec(rng: &mut ChaCha8Rng) -> EigenvalueSpec {
    let n = rng.gen_range(2..=4);
    if rng.gen_bool(0.5) {
        let values: Vec<i64> = (0..n)
            .map(|_| loop {
                let v = rng.gen_range(-4..=4);
                if v != 0 {
                    break v;
                }
            })
            .collect();
        return EigenvalueSpec::integers(&values).unwrap();
    }
    let d = [2, 3, 5, -1, -3][rng.gen_range(0..5)];
    let field = Arc::new(NumberField::new("r", vec![rational_int(-d), rational_int(0), rational_int(1)]).unwrap());
    let lambda = (0..n)
        .map(|_| loop {
            let (a, b) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
            if (a, b) != (0, 0) {
                break NumberFieldElement::from_coords(&field, vec![rational_int(a), rational_int(b)]).unwrap();
            }
        })
        .collect();
    EigenvalueSpec::new(field, lambda).unwrap()
}

fn c8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let bound = 8;
    let mut failures = Vec::new();
    let mut nontrivial = 0;
    for case in 0..50 {
        let spec = random_spec(&mut rng);
        let a = relation_matrix(&spec);
        let lam: Vec<String> = spec.lambda().iter().map(|l| l.to_string()).collect();
        let laurent = hilbert_basis(&a, &HilbertOptions::with_strategy(Strategy::LaurentInverseVars))
            .map_err(|e| e.to_string())?
            .vectors;
        let split = hilbert_basis(&a, &HilbertOptions::with_strategy(Strategy::SignSplit))
            .map_err(|e| e.to_string())?
            .vectors;
        if !laurent.is_empty() {
            nontrivial += 1;
        }
        if laurent != split {
            failures.push(format!("#{case} λ=({}): laurent {laurent:?} vs sign-split {split:?}", lam.join(", ")));
        }
        let oracle = oracle_enumerate(&a, bound, DEFAULT_ORACLE_CEILING).map_err(|e| e.to_string())?;
        let boxed: Vec<ExponentVector> = laurent.iter().filter(|v| v.iter().all(|&e| e <= bound)).cloned().collect();
        if boxed != oracle.minimal {
            failures.push(format!("#{case} λ=({}): oracle minimal {:?} vs {boxed:?}", lam.join(", "), oracle.minimal));
        }
        if let Some(s) = oracle.solutions.iter().find(|s| !in_monoid(s, &laurent)) {
            failures.push(format!("#{case} λ=({}): {s:?} not generated", lam.join(", ")));
        }
    }
    let summary = format!("50 cases ({nontrivial} with nonempty H), box {bound}");
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {} failures: {}", failures.len(), failures.join("; ")))
    }
}

fn c9() -> Outcome {
    let job = example1_job();
    let opts = HilbertOptions::default();
    let a = relation_matrix(&job.eigen);
    let h = hilbert_basis(&a, &opts).map_err(|e| e.to_string())?.vectors;
    let rc = rank_condition(&a, &h);
    ensure((rc.rank_kernel, rc.rank_module, rc.holds()) == (3, 3, true), || format!("{rc:?}"))?;
    let spec = EigenvalueSpec::integers(&[1, 2]).unwrap();
    let a = relation_matrix(&spec);
    let h = hilbert_basis(&a, &opts).map_err(|e| e.to_string())?.vectors;
    let rc2 = rank_condition(&a, &h);
    ensure((rc2.rank_kernel, rc2.rank_module, rc2.holds()) == (1, 0, false), || format!("{rc2:?}"))?;
    Ok("example 1: (3, 3) holds; λ=(1,2): (1, 0) fails".into())
}

fn c10() -> Outcome {
    let job = restricted();
    let spec = job.system.as_ref().unwrap();
    let gens = invariant_generators(spec, &HilbertOptions::default()).map_err(|e| e.to_string())?;
    for (nu, s) in &gens {
        ensure(verify_invariance(spec, nu).map_err(|e| e.to_string())?, || format!("{s} fails"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let mut picked: Vec<usize> = Vec::new();
    while picked.len() < 10 {
        let i = rng.gen_range(0..gens.len());
        if !picked.contains(&i) {
            picked.push(i);
        }
    }
    let mut products = 0;
    for (x, &i) in picked.iter().enumerate() {
        for &j in &picked[x..] {
            let nu: Vec<u32> = gens[i].0.iter().zip(&gens[j].0).map(|(a, b)| a + b).collect();
            ensure(verify_invariance(spec, &nu).map_err(|e| e.to_string())?, || {
                format!("{} * {} fails", gens[i].1, gens[j].1)
            })?;
            products += 1;
        }
    }
    Ok(format!("{} generators and {products} products invariant", gens.len()))
}

fn main() {
    // libtest flags such as --nocapture are accepted and ignored.
    let extended = std::env::var("FIRSTINT_EXTENDED").is_ok_and(|v| v == "1");
    let criteria: [(u32, fn() -> Outcome, Duration, bool); 10] = [
        (1, c1, Duration::from_secs(10), false),
        (2, c2, Duration::from_secs(1), false),
        (3, c3, Duration::from_secs(300), false),
        (4, c4, Duration::from_secs(1800), true),
        (5, c5, Duration::from_secs(60), false),
        (6, c6, Duration::from_secs(120), false),
        (7, c7, Duration::from_secs(60), false),
        (8, c8, Duration::from_secs(300), false),
        (9, c9, Duration::from_secs(1), false),
        (10, c10, Duration::from_secs(30), false),
    ];
    let mut failed = 0;
    for (id, run, budget, is_extended) in criteria {
        if is_extended && !extended {
            println!("criterion {id}: SKIP (extended; set FIRSTINT_EXTENDED=1)");
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => Err(format!("{msg}; took {elapsed:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("criterion {id}: PASS ({elapsed:.2?}) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {id}: FAIL ({elapsed:.2?}) {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

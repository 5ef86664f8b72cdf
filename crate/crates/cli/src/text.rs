//! Human-readable rendering of reports.

use std::fmt::Write;

use crate::report::*;

fn vector(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn vectors(vs: &[Vec<u32>]) -> String {
    if vs.is_empty() {
        return "{}".into();
    }
    let parts: Vec<String> = vs.iter().map(|v| vector(v)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn matrix(out: &mut String, rows: &[Vec<i64>]) {
    let width = rows.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        let _ = writeln!(out, "  [{}]", cells.join(" "));
    }
}

fn header(out: &mut String, input: &Input) {
    if let Some(f) = &input.field {
        let _ = writeln!(out, "field: Q({}), min poly coefficients [{}]", f.generator, f.min_poly.join(", "));
    }
    let _ = writeln!(out, "lambda: ({})", input.lambda.join(", "));
    let o = &input.options;
    let coeff = if o.coeff_field == "gfp" {
        format!("GF({})", o.prime)
    } else {
        "Q".into()
    };
    let _ = writeln!(out, "strategy: {}, coefficients: {coeff}", o.strategy);
}

fn generators(out: &mut String, gens: &[Generator]) {
    let width = gens.iter().map(|g| g.monomial.len()).max().unwrap_or(0);
    for g in gens {
        let _ = writeln!(out, "  {} = {:<width$}  {}", g.label, g.monomial, vector(&g.exponent));
    }
}

pub fn integrals(r: &IntegralsReport) -> String {
    let mut out = String::new();
    header(&mut out, &r.input);
    let _ = writeln!(out, "relation matrix (denominator lcm {}):", r.denominator_lcm);
    matrix(&mut out, &r.relation_matrix);
    if let Some(msg) = &r.message {
        let _ = writeln!(out, "{msg}");
    } else {
        let _ = writeln!(out, "Hilbert basis ({} vectors):", r.hilbert_basis.len());
        generators(&mut out, &r.generators);
        let _ = writeln!(out, "echelon form:");
        matrix(&mut out, &r.module.echelon);
        let _ = writeln!(
            out,
            "Z-module generators (rank {}): {}",
            r.module.rank,
            r.module.generators.join(", ")
        );
    }
    let c = &r.rank_condition;
    let _ = writeln!(
        out,
        "rank condition: rank ker = {}, rank R = {}, {}",
        c.rank_kernel,
        c.rank_module,
        if c.holds { "holds" } else { "fails" }
    );
    out
}

pub fn invariants(r: &InvariantsReport) -> String {
    let mut out = String::new();
    header(&mut out, &r.input);
    let weights: Vec<String> = r
        .parameters
        .iter()
        .zip(&r.weight_vector)
        .map(|(p, w)| format!("{p}: {w}"))
        .collect();
    let _ = writeln!(out, "weights: {}", weights.join(", "));
    if !r.zeroed.is_empty() {
        let _ = writeln!(out, "zeroed: {}", r.zeroed.join(", "));
    }
    let _ = writeln!(out, "{} invariant generators:", r.count);
    for g in &r.invariants {
        let _ = writeln!(out, "  {}", g.monomial);
    }
    out
}

pub fn equivariants(r: &EquivariantsReport) -> String {
    let mut out = String::new();
    header(&mut out, &r.input);
    let _ = writeln!(out, "first integrals:");
    generators(&mut out, &r.integrals);
    if r.integrals.is_empty() {
        let _ = writeln!(out, "  none");
    }
    for s in &r.resonance {
        let _ = writeln!(out, "S_{} = {}", s.k, vectors(&s.coset_reps));
    }
    let _ = writeln!(out, "equivariants:");
    for e in &r.equivariants {
        let _ = writeln!(out, "  {} = {}", e.label, e.monomial);
    }
    let _ = writeln!(out, "syzygies up to degree {}:", r.syzygy_bound);
    for s in &r.syzygies {
        let _ = writeln!(out, "  {}", s.text);
    }
    if r.syzygies.is_empty() {
        let _ = writeln!(out, "  none");
    }
    if let Some(st) = &r.stanley {
        let _ = writeln!(
            out,
            "decomposition check to degree {}: {} ({} resonant monomials)",
            st.degree_bound,
            if st.ok { "ok" } else { "FAILED" },
            st.checked
        );
        for s in &st.summands {
            let _ = writeln!(out, "  {s}");
        }
        for m in &st.missing {
            let _ = writeln!(out, "  missing: x^{} e_{}", vector(&m.alpha), m.k);
        }
        for d in &st.duplicated {
            let _ = writeln!(
                out,
                "  duplicated: x^{} e_{} in {}",
                vector(&d.alpha),
                d.k,
                d.summands.join(", ")
            );
        }
        for m in &st.uncovered {
            let _ = writeln!(out, "  not reached by S_{}: {}", m.k, vector(&m.alpha));
        }
    }
    let _ = writeln!(out, "{}", r.rank_statement);
    out
}

pub fn oracle(r: &OracleReport) -> String {
    let mut out = String::new();
    header(&mut out, &r.input);
    let _ = writeln!(out, "Hilbert basis: {}", vectors(&r.hilbert_basis));
    let _ = writeln!(out, "oracle minimal (box {}): {}", r.bound, vectors(&r.oracle_minimal));
    let _ = writeln!(out, "boxed solutions checked: {}", r.solutions_checked);
    if !r.basis_not_minimal.is_empty() {
        let _ = writeln!(out, "basis vectors not minimal in box: {}", vectors(&r.basis_not_minimal));
    }
    if !r.minimal_not_in_basis.is_empty() {
        let _ = writeln!(out, "minimal elements missing from basis: {}", vectors(&r.minimal_not_in_basis));
    }
    if !r.not_generated.is_empty() {
        let _ = writeln!(out, "solutions not generated: {}", vectors(&r.not_generated));
    }
    let _ = writeln!(out, "{}", if r.agree { "agree" } else { "DISAGREE" });
    out
}

pub fn replay(r: &ReplayReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let _ = writeln!(
            out,
            "{} appendix {} {}: {}",
            if c.pass { "PASS" } else { "FAIL" },
            r.appendix,
            c.name,
            c.detail
        );
    }
    out
}

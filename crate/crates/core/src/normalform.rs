//! Equivariants `x^γ e_k`, syzygies between products of first integrals and
//! equivariants, bounded verification of Stanley decompositions, and the
//! rank condition for formal first integrals.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact_arith::{relation_matrix, EigenvalueSpec};
use crate::hilbert::{in_monoid, resonance_generators, HilbertOptions, ResonanceSet};
use crate::intlin::{rank_condition, RankCondition};
use crate::ExponentVector;

/// Vector monomial `x^γ e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivariant {
    /// Component, 1-based.
    pub k: usize,
    pub gamma: ExponentVector,
    pub label: String,
}

impl Equivariant {
    pub fn degree(&self) -> u64 {
        degree(&self.gamma)
    }

    pub fn is_trivial(&self) -> bool {
        self.gamma.iter().enumerate().all(|(i, &e)| e == u32::from(i + 1 == self.k))
    }

    /// `x_4*x_5 e_1` style.
    pub fn render(&self) -> String {
        format!("{} e_{}", crate::hilbert::monomial_string("x", &self.gamma), self.k)
    }
}

fn degree(v: &[u32]) -> u64 {
    v.iter().map(|&e| e as u64).sum()
}

/// Resonance sets for every component plus the labelled equivariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantData {
    pub resonance: Vec<ResonanceSet>,
    pub equivariants: Vec<Equivariant>,
}

/// Runs the resonance computation for each `k`. Labels: the trivial `x_k e_k`
/// are `v_1..v_n`, then the rest in order of `k` and then `γ`.
pub fn equivariant_generators(
    spec: &EigenvalueSpec,
    options: &HilbertOptions,
) -> Result<EquivariantData> {
    let n = spec.len();
    let mut resonance = Vec::with_capacity(n);
    for k in 1..=n {
        resonance.push(resonance_generators(spec, k, options)?.1);
    }
    let mut trivial = Vec::new();
    let mut others = Vec::new();
    for set in &resonance {
        for gamma in &set.coset_reps {
            let e = Equivariant {
                k: set.k,
                gamma: gamma.clone(),
                label: String::new(),
            };
            if e.is_trivial() {
                trivial.push(e);
            } else {
                others.push(e);
            }
        }
    }
    let mut equivariants: Vec<Equivariant> = trivial.into_iter().chain(others).collect();
    for (idx, e) in equivariants.iter_mut().enumerate() {
        e.label = format!("v_{}", idx + 1);
    }
    Ok(EquivariantData {
        resonance,
        equivariants,
    })
}

/// `I_m v_j = I^μ v_{j'}`; indices are 1-based, `mu[i]` is the power of
/// `I_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Syzygy {
    pub left: (usize, usize),
    pub right: (Vec<u32>, usize),
}

impl Syzygy {
    /// Whether both sides have the same exponent and component.
    pub fn holds(&self, integrals: &[ExponentVector], equivs: &[Equivariant]) -> bool {
        let (m, j) = self.left;
        let (mu, jp) = (&self.right.0, self.right.1);
        if m == 0 || m > integrals.len() || j == 0 || jp == 0 {
            return false;
        }
        let (Some(ej), Some(ejp)) = (equivs.get(j - 1), equivs.get(jp - 1)) else {
            return false;
        };
        if ej.k != ejp.k || mu.len() != integrals.len() {
            return false;
        }
        let lhs: Vec<u64> = integrals[m - 1]
            .iter()
            .zip(&ej.gamma)
            .map(|(a, b)| (*a + *b) as u64)
            .collect();
        let mut rhs: Vec<u64> = ejp.gamma.iter().map(|&e| e as u64).collect();
        for (i, &p) in mu.iter().enumerate() {
            for (r, &e) in rhs.iter_mut().zip(&integrals[i]) {
                *r += p as u64 * e as u64;
            }
        }
        lhs == rhs
    }

    /// `I_4 v_6 - I_1 v_1` style, using `v_j` labels.
    pub fn render(&self, equivs: &[Equivariant]) -> String {
        let powers: Vec<String> = self
            .right
            .0
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0)
            .map(|(i, &p)| match p {
                1 => format!("I_{}", i + 1),
                _ => format!("I_{}^{p}", i + 1),
            })
            .collect();
        format!(
            "I_{} {} - {} {}",
            self.left.0,
            equivs[self.left.1 - 1].label,
            powers.join("*"),
            equivs[self.right.1 - 1].label
        )
    }
}

/// All `μ` with `Σ μ_i h_i = target`, as exponent vectors over `generators`.
fn decompositions(target: &[u32], generators: &[ExponentVector]) -> Vec<Vec<u32>> {
    fn go(
        start: usize,
        rest: &mut Vec<u32>,
        gens: &[ExponentVector],
        mu: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if rest.iter().all(|&e| e == 0) {
            out.push(mu.clone());
            return;
        }
        for i in start..gens.len() {
            let g = &gens[i];
            if g.iter().all(|&e| e == 0) || !g.iter().zip(rest.iter()).all(|(a, b)| a <= b) {
                continue;
            }
            for (r, &e) in rest.iter_mut().zip(g) {
                *r -= e;
            }
            mu[i] += 1;
            go(i, rest, gens, mu, out);
            mu[i] -= 1;
            for (r, &e) in rest.iter_mut().zip(g) {
                *r += e;
            }
        }
    }
    let mut out = Vec::new();
    let mut rest = target.to_vec();
    let mut mu = vec![0; generators.len()];
    go(0, &mut rest, generators, &mut mu, &mut out);
    out
}

/// Relations `I_m v_j = I^μ v_{j'}` with `j ≠ j'` in the same component and
/// `deg(I_m) + deg(γ_j) ≤ degree_bound`. A relation whose right side is a
/// single integral is reported once, with the larger `j` on the left.
pub fn syzygy_scan(
    integrals: &[ExponentVector],
    equivs: &[Equivariant],
    degree_bound: u64,
) -> Vec<Syzygy> {
    let mut found = BTreeSet::new();
    for (j0, ej) in equivs.iter().enumerate() {
        for (m0, im) in integrals.iter().enumerate() {
            if degree(im) + ej.degree() > degree_bound {
                continue;
            }
            let product: Vec<u32> = im.iter().zip(&ej.gamma).map(|(a, b)| a + b).collect();
            for (jp0, ejp) in equivs.iter().enumerate() {
                if jp0 == j0 || ejp.k != ej.k {
                    continue;
                }
                if !ejp.gamma.iter().zip(&product).all(|(a, b)| a <= b) {
                    continue;
                }
                let target: Vec<u32> = product.iter().zip(&ejp.gamma).map(|(a, b)| a - b).collect();
                for mu in decompositions(&target, integrals) {
                    let single = mu.iter().sum::<u32>() == 1;
                    if single && jp0 > j0 {
                        continue;
                    }
                    found.insert(Syzygy {
                        left: (m0 + 1, j0 + 1),
                        right: (mu, jp0 + 1),
                    });
                }
            }
        }
    }
    found.into_iter().collect()
}

/// `⊕_j C[I_{allowed(j)}]·v_j`; all indices 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StanleyDecomposition {
    pub summands: Vec<(usize, Vec<usize>)>,
}

/// Outcome of a bounded direct-sum check.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StanleyReport {
    pub ok: bool,
    /// `(k, α)` with no representation.
    pub missing: Vec<(usize, ExponentVector)>,
    /// `(k, α, summands)` with more than one.
    pub duplicated: Vec<(usize, ExponentVector, Vec<usize>)>,
    /// `(k, α)` found by direct enumeration but not of the form `s + m`.
    pub uncovered: Vec<(usize, ExponentVector)>,
    /// Number of equivariant monomials examined.
    pub checked: usize,
}

/// All sums of `generators` of total degree at most `bound`, including 0.
fn monoid_elements(generators: &[ExponentVector], n: usize, bound: u64) -> BTreeSet<ExponentVector> {
    let mut seen = BTreeSet::new();
    let mut frontier = vec![vec![0u32; n]];
    seen.insert(vec![0u32; n]);
    while let Some(v) = frontier.pop() {
        for g in generators {
            if degree(&v) + degree(g) > bound || degree(g) == 0 {
                continue;
            }
            let w: Vec<u32> = v.iter().zip(g).map(|(a, b)| a + b).collect();
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen
}

/// All `α` with `|α| ≤ bound` and `⟨λ, α⟩ = λ_k`, by exhaustion.
fn direct_resonances(spec: &EigenvalueSpec, k: usize, bound: u64) -> BTreeSet<ExponentVector> {
    let a = relation_matrix(spec);
    let n = spec.len();
    let target: Vec<BigInt> = a.column(k - 1);
    let mut out = BTreeSet::new();
    let mut alpha = vec![0u32; n];
    fn go(
        i: usize,
        left: u64,
        alpha: &mut Vec<u32>,
        a: &crate::intlin::IntMatrix,
        target: &[BigInt],
        out: &mut BTreeSet<ExponentVector>,
    ) {
        if i == alpha.len() {
            if a.mul_exponents(alpha) == target {
                out.insert(alpha.clone());
            }
            return;
        }
        for e in 0..=left {
            alpha[i] = e as u32;
            go(i + 1, left - e, alpha, a, target, out);
        }
        alpha[i] = 0;
    }
    go(0, bound, &mut alpha, &a, &target, &mut out);
    out
}

/// Checks that every `x^α e_k` with `|α| ≤ degree_bound` lies in exactly one
/// summand: `α − γ_j` must be a sum of the allowed integrals of `v_j`.
pub fn stanley_verify_with(
    dec: &StanleyDecomposition,
    spec: &EigenvalueSpec,
    integrals: &[ExponentVector],
    data: &EquivariantData,
    degree_bound: u64,
) -> Result<StanleyReport> {
    let equivs = &data.equivariants;
    let mut seen = BTreeSet::new();
    for (j, allowed) in &dec.summands {
        if *j == 0 || *j > equivs.len() {
            return Err(Error::invalid(format!("no equivariant v_{j}")));
        }
        if !seen.insert(*j) {
            return Err(Error::invalid(format!("v_{j} appears twice")));
        }
        if let Some(bad) = allowed.iter().find(|&&m| m == 0 || m > integrals.len()) {
            return Err(Error::invalid(format!("no first integral I_{bad}")));
        }
        if equivs[j - 1].degree() > degree_bound {
            return Err(Error::invalid(format!(
                "degree bound {degree_bound} is below the degree of {}",
                equivs[j - 1].label
            )));
        }
    }
    let n = spec.len();
    let mut report = StanleyReport::default();
    for set in &data.resonance {
        let k = set.k;
        let monoid = monoid_elements(integrals, n, degree_bound);
        let mut expanded = BTreeSet::new();
        for s in &set.coset_reps {
            for m in &monoid {
                let v: Vec<u32> = s.iter().zip(m).map(|(a, b)| a + b).collect();
                if degree(&v) <= degree_bound {
                    expanded.insert(v);
                }
            }
        }
        let direct = direct_resonances(spec, k, degree_bound);
        for alpha in direct.difference(&expanded) {
            report.uncovered.push((k, alpha.clone()));
        }
        for alpha in direct.union(&expanded) {
            report.checked += 1;
            let mut hits = Vec::new();
            for (j, allowed) in &dec.summands {
                let e = &equivs[j - 1];
                if e.k != k || !e.gamma.iter().zip(alpha).all(|(g, a)| g <= a) {
                    continue;
                }
                let rest: Vec<u32> = alpha.iter().zip(&e.gamma).map(|(a, g)| a - g).collect();
                let gens: Vec<ExponentVector> =
                    allowed.iter().map(|&m| integrals[m - 1].clone()).collect();
                if in_monoid(&rest, &gens) {
                    hits.push(*j);
                }
            }
            match hits.len() {
                0 => report.missing.push((k, alpha.clone())),
                1 => {}
                _ => report.duplicated.push((k, alpha.clone(), hits)),
            }
        }
    }
    report.ok = report.missing.is_empty() && report.duplicated.is_empty() && report.uncovered.is_empty();
    Ok(report)
}

/// As [`stanley_verify_with`], computing integrals and equivariants first.
pub fn stanley_verify(
    dec: &StanleyDecomposition,
    spec: &EigenvalueSpec,
    degree_bound: u64,
    options: &HilbertOptions,
) -> Result<StanleyReport> {
    let integrals = crate::hilbert::hilbert_basis(&relation_matrix(spec), options)?.vectors;
    let data = equivariant_generators(spec, options)?;
    stanley_verify_with(dec, spec, &integrals, &data, degree_bound)
}

/// Rank data for formal first integrals of a normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    pub condition: RankCondition,
    pub statement: String,
}

impl RankReport {
    pub fn holds(&self) -> bool {
        self.condition.holds()
    }

    /// `p` when the ranks agree.
    pub fn p(&self) -> Option<usize> {
        self.holds().then_some(self.condition.rank_kernel)
    }
}

pub fn formal_integral_rank_report(
    spec: &EigenvalueSpec,
    options: &HilbertOptions,
) -> Result<RankReport> {
    let a = relation_matrix(spec);
    let h = crate::hilbert::hilbert_basis(&a, options)?;
    let condition = rank_condition(&a, &h.vectors);
    let statement = if condition.holds() {
        format!(
            "rank ker = rank R = {p}: a normal form with this linear part has {p} independent \
             formal first integrals iff it admits every Laurent monomial first integral of the \
             linear part",
            p = condition.rank_kernel
        )
    } else {
        format!(
            "rank ker = {} but rank R = {}: the rank condition fails and no conclusion is drawn",
            condition.rank_kernel, condition.rank_module
        )
    };
    Ok(RankReport {
        condition,
        statement,
    })
}

/// Groups syzygies by component, for reporting.
pub fn syzygies_by_component(
    syzygies: &[Syzygy],
    equivs: &[Equivariant],
) -> BTreeMap<usize, Vec<Syzygy>> {
    let mut out: BTreeMap<usize, Vec<Syzygy>> = BTreeMap::new();
    for s in syzygies {
        out.entry(equivs[s.left.1 - 1].k).or_default().push(s.clone());
    }
    out
}

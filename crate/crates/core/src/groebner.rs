//! Buchberger's algorithm with the Gebauer–Möller pair criteria.
//!
//! When every input is a unit-coefficient binomial `x^a - x^b` the whole
//! computation runs on exponent vectors: a reduction step replaces a
//! monomial `m` divisible by `a` with `m/a·b`, so the two terms of a
//! binomial reduce independently.

use std::collections::BTreeSet;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact_arith::Rational;
use crate::polyring::{
    normal_form, s_polynomial, CoeffField, Monomial, MonomialOrder, Polynomial, VariableSet,
};
use crate::ExponentVector;

/// Default number of S-pair reductions before giving up.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuchbergerOptions {
    pub budget: u64,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions {
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Reduced Gröbner basis, monic, sorted ascending by leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: VariableSet,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    /// Number of S-pairs that were reduced while computing the basis.
    pub pair_reductions: u64,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &VariableSet {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, &self.elements, self.order)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Element rendered in the ring's variable names.
    pub fn render(&self) -> Vec<String> {
        self.elements
            .iter()
            .map(|g| g.render(&self.ring, self.order))
            .collect()
    }

    /// True when every S-polynomial reduces to zero. Checks all pairs up to
    /// `full_limit` elements, otherwise every `stride`-th pair.
    pub fn s_pairs_reduce_to_zero(&self, full_limit: usize) -> bool {
        let n = self.elements.len();
        let stride = if n <= full_limit { 1 } else { (n * n / 40_000).max(1) };
        let mut k = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                k += 1;
                if !k.is_multiple_of(stride) {
                    continue;
                }
                let s = s_polynomial(&self.elements[i], &self.elements[j], self.order);
                match self.reduce(&s) {
                    Ok(r) if r.is_zero() => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Monic, and no term of any element is divisible by another element's
    /// leading monomial.
    pub fn is_reduced(&self) -> bool {
        let leads: Vec<&Monomial> = self
            .elements
            .iter()
            .map(|g| g.leading_monomial(self.order).expect("nonzero"))
            .collect();
        self.elements.iter().enumerate().all(|(i, g)| {
            let monic = g.leading_term(self.order).is_some_and(|(_, c)| c.is_one());
            monic
                && g.terms().all(|(m, _)| {
                    leads
                        .iter()
                        .enumerate()
                        .all(|(j, l)| j == i || !l.divides(m))
                })
        })
    }
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
pub fn buchberger(
    ring: &VariableSet,
    generators: &[Polynomial],
    order: MonomialOrder,
) -> Result<GroebnerBasis> {
    buchberger_with(ring, generators, order, BuchbergerOptions::default())
}

pub fn buchberger_with(
    ring: &VariableSet,
    generators: &[Polynomial],
    order: MonomialOrder,
    options: BuchbergerOptions,
) -> Result<GroebnerBasis> {
    let nvars = ring.len();
    let field = generators.first().map_or(CoeffField::Rationals, |g| g.field());
    for g in generators {
        if g.nvars() != nvars || g.field() != field {
            return Err(Error::RingMismatch);
        }
    }
    let nonzero: Vec<&Polynomial> = generators.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::invalid("ideal has no nonzero generators"));
    }

    let (elements, pair_reductions) = if nonzero.iter().all(|g| g.is_unit_binomial()) {
        let input: Vec<Binomial> = nonzero
            .iter()
            .map(|g| Binomial::from_polynomial(g, order))
            .collect();
        let (basis, count) = run(input, options.budget)?;
        let polys = basis
            .into_iter()
            .map(|b| b.to_polynomial(field))
            .collect();
        (polys, count)
    } else {
        let input: Vec<General> = nonzero
            .iter()
            .map(|g| General::new(g.monic(order), order))
            .collect();
        let (basis, count) = run(input, options.budget)?;
        (basis.into_iter().map(|g| g.poly).collect(), count)
    };

    Ok(GroebnerBasis {
        ring: ring.clone(),
        order,
        elements,
        pair_reductions,
    })
}

/// All `ν` with `x^ν - z^ν` in `gb`, where `x` and `z` are the named blocks.
/// Sorted lexicographically ascending.
pub fn extract_binomials(
    gb: &GroebnerBasis,
    left_block: &str,
    right_block: &str,
) -> Result<Vec<ExponentVector>> {
    let left = gb
        .ring
        .block(left_block)
        .ok_or_else(|| Error::invalid(format!("unknown block `{left_block}`")))?;
    let right = gb
        .ring
        .block(right_block)
        .ok_or_else(|| Error::invalid(format!("unknown block `{right_block}`")))?;
    if left.len() != right.len() {
        return Err(Error::invalid("blocks differ in size"));
    }
    let supported_in = |m: &Monomial, r: &std::ops::Range<usize>| {
        m.0.iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || r.contains(&i))
    };
    let mut found = BTreeSet::new();
    for g in &gb.elements {
        if g.len() != 2 || !g.is_unit_binomial() {
            continue;
        }
        let terms: Vec<(&Monomial, &Rational)> = g.terms().collect();
        let (a, b) = (terms[0].0, terms[1].0);
        let (x, z) = if supported_in(a, &left) { (a, b) } else { (b, a) };
        if !supported_in(x, &left) || !supported_in(z, &right) {
            continue;
        }
        let nu = &x.0[left.clone()];
        if nu == &z.0[right.clone()] && nu.iter().any(|&e| e > 0) {
            found.insert(nu.to_vec());
        }
    }
    Ok(found.into_iter().collect())
}

/// Operations the pair loop needs from a basis element.
trait Element: Clone {
    fn lead(&self) -> &Monomial;
    /// S-polynomial fully reduced by `basis`; `None` when it vanishes.
    fn s_reduce(&self, other: &Self, basis: &[&Self]) -> Option<Self>;
    /// Tail reduced by `basis`, leading term kept.
    fn tail_reduce(&self, basis: &[&Self]) -> Self;
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Binomial {
    lead: Monomial,
    trail: Monomial,
}

impl Binomial {
    fn from_polynomial(p: &Polynomial, order: MonomialOrder) -> Self {
        let terms = p.sorted_terms(order);
        Binomial {
            lead: terms[0].0.clone(),
            trail: terms[1].0.clone(),
        }
    }

    fn oriented(a: Monomial, b: Monomial) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(Binomial { lead: a, trail: b }),
            std::cmp::Ordering::Less => Some(Binomial { lead: b, trail: a }),
        }
    }

    fn to_polynomial(&self, field: CoeffField) -> Polynomial {
        Polynomial::binomial(self.lead.clone(), self.trail.clone(), field)
    }
}

fn reduce_monomial(mut m: Monomial, basis: &[&Binomial]) -> Monomial {
    'outer: loop {
        for g in basis {
            if g.lead.divides(&m) {
                let q = m.div(&g.lead);
                m = q.mul(&g.trail);
                continue 'outer;
            }
        }
        return m;
    }
}

impl Element for Binomial {
    fn lead(&self) -> &Monomial {
        &self.lead
    }

    fn s_reduce(&self, other: &Self, basis: &[&Self]) -> Option<Self> {
        let lcm = self.lead.lcm(&other.lead);
        let a = lcm.div(&self.lead).mul(&self.trail);
        let b = lcm.div(&other.lead).mul(&other.trail);
        Binomial::oriented(reduce_monomial(a, basis), reduce_monomial(b, basis))
    }

    fn tail_reduce(&self, basis: &[&Self]) -> Self {
        Binomial {
            lead: self.lead.clone(),
            trail: reduce_monomial(self.trail.clone(), basis),
        }
    }
}

#[derive(Debug, Clone)]
struct General {
    poly: Polynomial,
    lead: Monomial,
    order: MonomialOrder,
}

impl General {
    fn new(poly: Polynomial, order: MonomialOrder) -> Self {
        let lead = poly.leading_monomial(order).expect("nonzero").clone();
        General { poly, lead, order }
    }

    fn polys(basis: &[&Self]) -> Vec<Polynomial> {
        basis.iter().map(|g| g.poly.clone()).collect()
    }
}

impl Element for General {
    fn lead(&self) -> &Monomial {
        &self.lead
    }

    fn s_reduce(&self, other: &Self, basis: &[&Self]) -> Option<Self> {
        let s = s_polynomial(&self.poly, &other.poly, self.order);
        let r = normal_form(&s, &Self::polys(basis), self.order).expect("same ring");
        (!r.is_zero()).then(|| General::new(r.monic(self.order), self.order))
    }

    fn tail_reduce(&self, basis: &[&Self]) -> Self {
        let (m, c) = self.poly.leading_term(self.order).expect("nonzero");
        let head = Polynomial::from_terms(self.poly.nvars(), self.poly.field(), [(m.clone(), c.clone())]);
        let tail = self.poly.sub(&head);
        let reduced = normal_form(&tail, &Self::polys(basis), self.order).expect("same ring");
        General::new(head.add(&reduced), self.order)
    }
}

/// Pair loop with Gebauer–Möller updates, normal selection strategy and
/// final interreduction.
fn run<E: Element>(input: Vec<E>, budget: u64) -> Result<(Vec<E>, u64)> {
    let mut polys: Vec<E> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    // (lcm, i, j): BTreeSet order on the lcm is the lex order.
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let mut reductions = 0u64;

    let insert = |h: E,
                      polys: &mut Vec<E>,
                      active: &mut Vec<bool>,
                      pairs: &mut BTreeSet<(Monomial, usize, usize)>| {
        let hi = polys.len();
        let hl = h.lead().clone();
        let current: Vec<usize> = (0..hi).filter(|&i| active[i]).collect();

        // Candidates (g, h) with their lcms.
        let cands: Vec<(usize, Monomial)> = current
            .iter()
            .map(|&g| (g, polys[g].lead().lcm(&hl)))
            .collect();
        let mut keep = vec![true; cands.len()];
        for (a, (ga, la)) in cands.iter().enumerate() {
            let coprime = polys[*ga].lead().coprime(&hl);
            if coprime {
                continue;
            }
            // Drop when another candidate's lcm properly divides this one, or
            // an earlier one has the same lcm.
            for (b, (_, lb)) in cands.iter().enumerate() {
                if a == b || !keep[b] {
                    continue;
                }
                if lb.divides(la) && (lb != la || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // Remove remaining candidates whose lcm equals that of a coprime pair
        // (product criterion), then the coprime pairs themselves.
        let coprime_lcms: Vec<&Monomial> = cands
            .iter()
            .zip(&keep)
            .filter(|((g, _), k)| **k && polys[*g].lead().coprime(&hl))
            .map(|((_, l), _)| l)
            .collect();
        let mut new_pairs = Vec::new();
        for ((g, l), k) in cands.iter().zip(&keep) {
            if !*k || polys[*g].lead().coprime(&hl) {
                continue;
            }
            if coprime_lcms.contains(&l) {
                continue;
            }
            new_pairs.push((l.clone(), *g, hi));
        }

        // Old pairs made redundant by h.
        pairs.retain(|(l, i, j)| {
            if !hl.divides(l) {
                return true;
            }
            let li = polys[*i].lead().lcm(&hl);
            let lj = polys[*j].lead().lcm(&hl);
            li == *l || lj == *l
        });
        pairs.extend(new_pairs);

        for &g in &current {
            if hl.divides(polys[g].lead()) {
                active[g] = false;
            }
        }
        polys.push(h);
        active.push(true);
    };

    for h in input {
        insert(h, &mut polys, &mut active, &mut pairs);
    }

    while let Some(first) = pairs.iter().next().cloned() {
        pairs.remove(&first);
        reductions += 1;
        if reductions > budget {
            return Err(Error::BudgetExhausted { reductions: budget });
        }
        let (_, i, j) = first;
        let basis: Vec<&E> = (0..polys.len())
            .filter(|&k| active[k])
            .map(|k| &polys[k])
            .collect();
        if let Some(h) = polys[i].s_reduce(&polys[j], &basis) {
            insert(h, &mut polys, &mut active, &mut pairs);
        }
    }

    // Minimal basis: active elements with no other leading monomial dividing
    // theirs.
    let mut minimal: Vec<E> = Vec::new();
    let mut candidates: Vec<E> = (0..polys.len())
        .filter(|&k| active[k])
        .map(|k| polys[k].clone())
        .collect();
    candidates.sort_by(|a, b| a.lead().cmp(b.lead()));
    for c in candidates {
        if !minimal.iter().any(|m| m.lead().divides(c.lead())) {
            minimal.push(c);
        }
    }
    let reduced: Vec<E> = (0..minimal.len())
        .map(|k| {
            let others: Vec<&E> = minimal
                .iter()
                .enumerate()
                .filter(|(o, _)| *o != k)
                .map(|(_, e)| e)
                .collect();
            minimal[k].tail_reduce(&others)
        })
        .collect();
    Ok((reduced, reductions))
}

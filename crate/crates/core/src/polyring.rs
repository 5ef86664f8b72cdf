//! Sparse multivariate polynomials over Q or GF(p) with lexicographic order
//! over named variable blocks.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{format_rational, Rational};

/// Default modulus used when computing over a prime field.
pub const DEFAULT_PRIME: u64 = 31991;

/// Named blocks of variables; the block order is the elimination order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableSet {
    names: Vec<String>,
    blocks: Vec<(String, Range<usize>)>,
}

impl VariableSet {
    pub fn new(blocks: Vec<(String, Vec<String>)>) -> Result<Self> {
        let mut names = Vec::new();
        let mut ranges = Vec::new();
        for (block, vars) in blocks {
            if ranges.iter().any(|(b, _): &(String, Range<usize>)| *b == block) {
                return Err(Error::invalid(format!("duplicate block `{block}`")));
            }
            let start = names.len();
            for v in vars {
                if names.contains(&v) {
                    return Err(Error::invalid(format!("duplicate variable `{v}`")));
                }
                names.push(v);
            }
            ranges.push((block, start..names.len()));
        }
        Ok(VariableSet {
            names,
            blocks: ranges,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn block(&self, name: &str) -> Option<Range<usize>> {
        self.blocks
            .iter()
            .find(|(b, _)| b == name)
            .map(|(_, r)| r.clone())
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&str, Range<usize>)> {
        self.blocks.iter().map(|(b, r)| (b.as_str(), r.clone()))
    }
}

/// Exponent vector of a monic monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[index] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `x_1^2*x_3` style; `1` for the empty product.
    pub fn render(&self, vars: &VariableSet) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| match e {
                1 => vars.name(i).to_string(),
                _ => format!("{}^{}", vars.name(i), e),
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Monomial order. Lex follows the variable order of the [`VariableSet`],
/// i.e. earlier blocks dominate later ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
        }
    }
}

/// Coefficient field of a polynomial ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoeffField {
    #[default]
    Rationals,
    Prime(u64),
}

impl CoeffField {
    /// Brings a rational into canonical form for this field (residues in
    /// `[0, p)` for prime fields).
    pub fn normalize(&self, value: Rational) -> Rational {
        match *self {
            CoeffField::Rationals => value,
            CoeffField::Prime(p) => {
                let p = BigInt::from(p);
                let num = value.numer().mod_floor(&p);
                let den = value.denom().mod_floor(&p);
                let inv = mod_inverse(&den, &p).expect("denominator invertible mod p");
                Rational::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn inverse(&self, value: &Rational) -> Rational {
        assert!(!value.is_zero(), "inverse of zero");
        match *self {
            CoeffField::Rationals => value.recip(),
            CoeffField::Prime(p) => {
                let p = BigInt::from(p);
                let v = self.normalize(value.clone()).to_integer();
                Rational::from_integer(mod_inverse(&v, &p).expect("nonzero residue"))
            }
        }
    }

    /// Representative used for printing: symmetric residues for GF(p).
    fn display_value(&self, value: &Rational) -> Rational {
        match *self {
            CoeffField::Rationals => value.clone(),
            CoeffField::Prime(p) => {
                let p = BigInt::from(p);
                let v = value.to_integer();
                if &v * 2 > p {
                    Rational::from_integer(v - p)
                } else {
                    value.clone()
                }
            }
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let egcd = a.extended_gcd(p);
    egcd.gcd.is_one().then(|| egcd.x.mod_floor(p))
}

/// Sparse polynomial; terms are keyed by exponent vector and never store a
/// zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    field: CoeffField,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize, field: CoeffField) -> Self {
        Polynomial {
            nvars,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        nvars: usize,
        field: CoeffField,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(nvars, field);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial length mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn monomial(m: Monomial, field: CoeffField) -> Self {
        let nvars = m.0.len();
        Self::from_terms(nvars, field, [(m, Rational::one())])
    }

    /// `x^a - x^b`.
    pub fn binomial(a: Monomial, b: Monomial, field: CoeffField) -> Self {
        let nvars = a.0.len();
        Self::from_terms(nvars, field, [(a, Rational::one()), (b, -Rational::one())])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> CoeffField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn same_ring(&self, other: &Polynomial) -> bool {
        self.nvars == other.nvars && self.field == other.field
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        let c = self.field.normalize(c);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = self.field.normalize(slot.get() + c);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        match order {
            MonomialOrder::Lex => self.terms.iter().next_back(),
        }
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| order.cmp(b.0, a.0));
        terms
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            self.field,
            self.terms.iter().map(|(m, v)| (m.clone(), v * c)),
        )
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            self.field,
            self.terms.iter().map(|(t, v)| (t.mul(m), v * c)),
        )
    }

    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inverse(c)),
        }
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// True when the polynomial is `c·(x^a - x^b)` for some constant `c`.
    pub fn is_unit_binomial(&self) -> bool {
        if self.terms.len() != 2 {
            return false;
        }
        let mut cs = self.terms.values();
        let (a, b) = (cs.next().unwrap(), cs.next().unwrap());
        self.field.normalize(a + b).is_zero()
    }

    /// Parses `x_1*x_2^3-z_1 + 2*t` style text. Coefficients may be
    /// integers or `p/q`; juxtaposition is not supported.
    pub fn parse(text: &str, vars: &VariableSet, field: CoeffField) -> Result<Polynomial> {
        let nvars = vars.len();
        let mut poly = Polynomial::zero(nvars, field);
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse {
                offset: 0,
                message: "empty polynomial".into(),
            });
        }
        let bytes = cleaned.as_bytes();
        let mut start = 0;
        let mut i = 0;
        let mut terms = Vec::new();
        while i <= bytes.len() {
            let at_end = i == bytes.len();
            if at_end || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start) {
                terms.push((start, &cleaned[start..i]));
                start = i;
            }
            i += 1;
        }
        for (offset, term) in terms {
            let (sign, body) = match term.as_bytes()[0] {
                b'-' => (-1, &term[1..]),
                b'+' => (1, &term[1..]),
                _ => (1, term),
            };
            let mut coeff = Rational::from_integer(BigInt::from(sign));
            let mut mono = vec![0u32; nvars];
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse {
                        offset,
                        message: format!("empty factor in `{term}`"),
                    });
                }
                if factor.as_bytes()[0].is_ascii_digit() {
                    coeff *= crate::exact_arith::parse_rational(factor)?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<u32>().map_err(|_| Error::Parse {
                            offset,
                            message: format!("bad exponent in `{factor}`"),
                        })?,
                    ),
                    None => (factor, 1),
                };
                let idx = vars.index_of(name).ok_or_else(|| Error::Parse {
                    offset,
                    message: format!("unknown variable `{name}`"),
                })?;
                mono[idx] += exp;
            }
            poly.add_term(Monomial(mono), coeff);
        }
        Ok(poly)
    }

    /// Canonical rendering: terms descending under `order`, `*` products,
    /// `^` powers, unit coefficients suppressed (`x_1-z_1*t_1`).
    pub fn render(&self, vars: &VariableSet, order: MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let c = self.field.display_value(c);
            let negative = c.is_negative();
            let magnitude = c.abs();
            if negative {
                out.push('-');
            } else if idx > 0 {
                out.push('+');
            }
            let mono = m.render(vars);
            if magnitude.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format_rational(&magnitude));
                if !m.is_one() {
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }

    fn combine(&self, other: &Polynomial, sign: i64) -> Polynomial {
        assert!(self.same_ring(other), "ring mismatch");
        let mut out = self.clone();
        let s = Rational::from_integer(BigInt::from(sign));
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c * &s);
        }
        out
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, -1)
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Rational::one())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert!(self.same_ring(other), "ring mismatch");
        let mut out = Polynomial::zero(self.nvars, self.field);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    /// Small-integer view of the coefficients, for tests and binomial checks.
    pub fn integer_coefficients(&self) -> Option<Vec<i64>> {
        self.terms
            .values()
            .map(|c| {
                let c = self.field.display_value(c);
                c.is_integer().then(|| c.to_integer().to_i64()).flatten()
            })
            .collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        let vars = VariableSet::new(vec![("vars".into(), names)]).expect("distinct names");
        f.write_str(&self.render(&vars, MonomialOrder::Lex))
    }
}

/// Remainder of full multivariate division of `f` by `divisors`.
///
/// Divisors are tried in the given order; the first whose leading monomial
/// divides the current leading term is used.
pub fn normal_form(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: MonomialOrder,
) -> Result<Polynomial> {
    if divisors.iter().any(|g| !g.same_ring(f)) {
        return Err(Error::RingMismatch);
    }
    let leads: Vec<Option<(Monomial, Rational)>> = divisors
        .iter()
        .map(|g| g.leading_term(order).map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    let mut remainder = Polynomial::zero(f.nvars, f.field);
    let mut p = f.clone();
    while let Some((m, c)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        let hit = divisors.iter().zip(&leads).find_map(|(g, lead)| {
            lead.as_ref()
                .filter(|(lm, _)| lm.divides(&m))
                .map(|(lm, lc)| (g, lm, lc))
        });
        match hit {
            Some((g, lm, lc)) => {
                let factor = f.field.normalize(&c * f.field.inverse(lc));
                p = p.sub(&g.mul_term(&m.div(lm), &factor));
            }
            None => {
                p.terms.remove(&m);
                remainder.add_term(m, c);
            }
        }
    }
    Ok(remainder)
}

/// `lcm/lt(f)·f − lcm/lt(g)·g` with both leading terms made monic.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let (fm, fc) = f.leading_term(order).expect("nonzero f");
    let (gm, gc) = g.leading_term(order).expect("nonzero g");
    let lcm = fm.lcm(gm);
    let left = f.mul_term(&lcm.div(fm), &f.field.inverse(fc));
    let right = g.mul_term(&lcm.div(gm), &g.field.inverse(gc));
    left.sub(&right)
}

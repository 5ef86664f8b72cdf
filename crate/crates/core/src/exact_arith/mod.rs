//! Exact rational and number-field arithmetic.
//!
//! A number field `K = Q(θ)` is given by the monic minimal polynomial of its
//! generator `θ`; elements are coordinate vectors over the power basis
//! `1, θ, …, θ^{d-1}`. Eigenvalue vectors over `K` are turned into the integer
//! matrix whose kernel describes every monomial relation `Σ α_i λ_i = 0`.

mod expr;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intlin::IntMatrix;

pub use expr::parse_element;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Dense rational matrix stored as rows.
pub type RationalMatrix = Vec<Vec<Rational>>;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse {
        offset: 0,
        message: format!("`{text}` is not a rational number"),
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse {
            offset: 0,
            message: format!("zero denominator in `{text}`"),
        });
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// The field `Q(θ)` with `θ` a root of `min_poly`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    generator_name: String,
    /// Ascending coefficients; the last one is 1.
    min_poly: Vec<Rational>,
}

impl NumberField {
    /// The rationals, presented as `Q(θ)` with `θ - 0 = 0`.
    pub fn rationals() -> Self {
        NumberField {
            generator_name: "theta".to_string(),
            min_poly: vec![Rational::zero(), Rational::one()],
        }
    }

    /// Builds `Q(θ)` from ascending minimal-polynomial coefficients.
    ///
    /// The polynomial must be monic of degree at least one. Irreducibility is
    /// taken on trust, except that polynomials of degree 2 or 3 with a rational
    /// root are rejected.
    pub fn new(generator_name: impl Into<String>, min_poly: Vec<Rational>) -> Result<Self> {
        let generator_name = generator_name.into();
        if !is_identifier(&generator_name) {
            return Err(Error::invalid(format!(
                "generator name `{generator_name}` is not an identifier"
            )));
        }
        if min_poly.len() < 2 {
            return Err(Error::invalid("minimal polynomial must have degree >= 1"));
        }
        if !min_poly.last().unwrap().is_one() {
            return Err(Error::invalid("minimal polynomial must be monic"));
        }
        let degree = min_poly.len() - 1;
        if (2..=3).contains(&degree) {
            if let Some(root) = rational_root(&min_poly) {
                return Err(Error::invalid(format!(
                    "minimal polynomial is reducible: it vanishes at {}",
                    format_rational(&root)
                )));
            }
        }
        Ok(NumberField {
            generator_name,
            min_poly,
        })
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn generator_name(&self) -> &str {
        &self.generator_name
    }

    pub fn min_poly(&self) -> &[Rational] {
        &self.min_poly
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Rational root of a monic polynomial, if it has one.
fn rational_root(poly: &[Rational]) -> Option<Rational> {
    // Scale to integer coefficients, then apply the rational root theorem.
    let lcm = poly
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = poly
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let eval = |x: &Rational| {
        ints.iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    };
    // Strip factors of x first so the constant term is nonzero.
    let Some(low) = ints.iter().position(|c| !c.is_zero()) else {
        return Some(Rational::zero());
    };
    if low > 0 {
        return Some(Rational::zero());
    }
    let constant = ints[0].abs();
    let lead = ints.last().unwrap().abs();
    for p in divisors(&constant) {
        for q in divisors(&lead) {
            for sign in [1i64, -1] {
                let candidate = Rational::new(p.clone() * sign, q.clone());
                if eval(&candidate).is_zero() {
                    return Some(candidate);
                }
            }
        }
    }
    None
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= *n {
        if (n % &i).is_zero() {
            out.push(i.clone());
            let other = n / &i;
            if other != i {
                out.push(other);
            }
        }
        i += 1;
    }
    out
}

/// Element of a [`NumberField`] in power-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberFieldElement {
    field: Arc<NumberField>,
    coords: Vec<Rational>,
}

impl NumberFieldElement {
    pub fn from_coords(field: &Arc<NumberField>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(Error::invalid(format!(
                "expected {} coordinates, got {}",
                field.degree(),
                coords.len()
            )));
        }
        Ok(NumberFieldElement {
            field: Arc::clone(field),
            coords,
        })
    }

    pub fn from_rational(field: &Arc<NumberField>, value: Rational) -> Self {
        let mut coords = vec![Rational::zero(); field.degree()];
        coords[0] = value;
        NumberFieldElement {
            field: Arc::clone(field),
            coords,
        }
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, Rational::zero())
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    /// The generator θ itself.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        if field.degree() == 1 {
            // θ is the root of x + c_0, i.e. -c_0.
            return Self::from_rational(field, -field.min_poly[0].clone());
        }
        let mut coords = vec![Rational::zero(); field.degree()];
        coords[1] = Rational::one();
        NumberFieldElement {
            field: Arc::clone(field),
            coords,
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coords[0])
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(NumberFieldElement {
            field: Arc::clone(&self.field),
            coords,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        NumberFieldElement {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        NumberFieldElement {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        nf_mul(self, other)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one(&self.field);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = nf_mul(&result, &base).expect("same field");
            }
            base = nf_mul(&base, &base).expect("same field");
            e >>= 1;
        }
        result
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.field.generator_name();
        let mut wrote = false;
        for (power, c) in self.coords.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if wrote {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let coeff = format_rational(&magnitude);
            match power {
                0 => f.write_str(&coeff)?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{coeff}*")?;
                    }
                    f.write_str(name)?;
                    if power > 1 {
                        write!(f, "^{power}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Product in `K`, reduced modulo the minimal polynomial.
pub fn nf_mul(a: &NumberFieldElement, b: &NumberFieldElement) -> Result<NumberFieldElement> {
    a.check_field(b)?;
    let d = a.field.degree();
    let mut product = vec![Rational::zero(); 2 * d - 1];
    for (i, x) in a.coords.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coords.iter().enumerate() {
            product[i + j] += x * y;
        }
    }
    let min_poly = &a.field.min_poly;
    for top in (d..product.len()).rev() {
        let c = std::mem::take(&mut product[top]);
        if c.is_zero() {
            continue;
        }
        // θ^top = -Σ_{j<d} m_j θ^{top-d+j}
        for (j, m) in min_poly[..d].iter().enumerate() {
            product[top - d + j] -= &c * m;
        }
    }
    product.truncate(d);
    Ok(NumberFieldElement {
        field: Arc::clone(&a.field),
        coords: product,
    })
}

/// Eigenvalue vector `λ` over a number field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenvalueSpec {
    field: Arc<NumberField>,
    lambda: Vec<NumberFieldElement>,
}

impl EigenvalueSpec {
    pub fn new(field: Arc<NumberField>, lambda: Vec<NumberFieldElement>) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::invalid("eigenvalue vector must be nonempty"));
        }
        for value in &lambda {
            if !(Arc::ptr_eq(value.field(), &field) || **value.field() == *field) {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(EigenvalueSpec { field, lambda })
    }

    /// Convenience constructor for rational eigenvalues.
    pub fn rational(values: &[Rational]) -> Result<Self> {
        let field = Arc::new(NumberField::rationals());
        let lambda = values
            .iter()
            .map(|v| NumberFieldElement::from_rational(&field, v.clone()))
            .collect();
        Self::new(field, lambda)
    }

    pub fn integers(values: &[i64]) -> Result<Self> {
        let values: Vec<Rational> = values.iter().map(|&v| rational_int(v)).collect();
        Self::rational(&values)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn lambda(&self) -> &[NumberFieldElement] {
        &self.lambda
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    /// `Σ α_i λ_i` evaluated exactly in `K`.
    pub fn pairing(&self, alpha: &[BigInt]) -> NumberFieldElement {
        assert_eq!(alpha.len(), self.lambda.len(), "length mismatch");
        let mut acc = NumberFieldElement::zero(&self.field);
        for (a, l) in alpha.iter().zip(&self.lambda) {
            if a.is_zero() {
                continue;
            }
            let term = l.scale(&Rational::from_integer(a.clone()));
            acc = acc.add(&term).expect("same field");
        }
        acc
    }
}

/// The `d × n` matrix whose column `i` holds the coordinates of `λ_i`.
pub fn coordinate_matrix(spec: &EigenvalueSpec) -> RationalMatrix {
    let d = spec.field.degree();
    (0..d)
        .map(|row| spec.lambda.iter().map(|l| l.coords[row].clone()).collect())
        .collect()
}

/// Clears denominators: returns `(l·C, l)` with `l` the lcm of all entry
/// denominators.
pub fn integerize(matrix: &RationalMatrix) -> (IntMatrix, BigInt) {
    let scale = matrix
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let factor = Rational::from_integer(scale.clone());
    let rows: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| row.iter().map(|c| (c * &factor).to_integer()).collect())
        .collect();
    let cols = matrix.first().map_or(0, Vec::len);
    (IntMatrix::from_big_rows(rows.len(), cols, rows), scale)
}

/// `𝔄` for an eigenvalue vector: coordinates, then denominators cleared.
pub fn relation_matrix(spec: &EigenvalueSpec) -> IntMatrix {
    integerize(&coordinate_matrix(spec)).0
}

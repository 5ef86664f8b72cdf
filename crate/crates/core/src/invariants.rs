//! Monomial invariants of the one-parameter group acting on the coefficients
//! of a polynomial system `ẋ = Σ (x ⊙ a_Q) x^Q`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact_arith::{relation_matrix, EigenvalueSpec, NumberField, NumberFieldElement};
use crate::hilbert::{hilbert_basis, HilbertOptions};
use crate::intlin::IntMatrix;
use crate::ExponentVector;

const LETTERS: [&str; 5] = ["a", "b", "c", "d", "f"];

/// How coefficient `a_i^{(Q)}` is named.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum LabelScheme {
    /// `a{i}_{q}`, e.g. `a2_m1021` for component 2 and `Q = (-1, 0, 2, 1)`.
    #[default]
    Canonical,
    /// Letters a, b, c, d, f by component (`n <= 5`), e.g. `f_01100`.
    Letters,
    /// Explicit `ℓ × n` grid, row `s` for `Q_s`.
    Custom(Vec<Vec<String>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSpec {
    pub eigen: EigenvalueSpec,
    pub omega: Vec<Vec<i64>>,
    pub labels: LabelScheme,
    /// 0-based parameter positions fixed to zero.
    pub zeroed: BTreeSet<usize>,
}

fn q_string(q: &[i64]) -> String {
    let sep = if q.iter().any(|&v| v > 9) { "." } else { "" };
    q.iter()
        .map(|&v| if v < 0 { format!("m{}", -v) } else { v.to_string() })
        .collect::<Vec<_>>()
        .join(sep)
}

impl SystemSpec {
    pub fn new(eigen: EigenvalueSpec, omega: Vec<Vec<i64>>) -> Result<Self> {
        let n = eigen.len();
        for (s, q) in omega.iter().enumerate() {
            if q.len() != n {
                return Err(Error::invalid(format!(
                    "Q_{} has length {}, expected {n}",
                    s + 1,
                    q.len()
                )));
            }
            let negatives = q.iter().filter(|&&v| v < 0).count();
            if q.iter().any(|&v| v < -1) || negatives > 1 {
                return Err(Error::invalid(format!(
                    "Q_{} = {q:?}: at most one entry may be -1 and none lower",
                    s + 1
                )));
            }
            if q.iter().all(|&v| v == 0) {
                return Err(Error::invalid(format!("Q_{} is zero (the linear part)", s + 1)));
            }
            if omega[..s].contains(q) {
                return Err(Error::invalid(format!("Q_{} repeats an earlier Q", s + 1)));
            }
        }
        Ok(SystemSpec {
            eigen,
            omega,
            labels: LabelScheme::Canonical,
            zeroed: BTreeSet::new(),
        })
    }

    pub fn with_labels(mut self, labels: LabelScheme) -> Result<Self> {
        let (n, l) = (self.n(), self.omega.len());
        match &labels {
            LabelScheme::Letters if n > LETTERS.len() => {
                return Err(Error::invalid("letter labels need n <= 5"));
            }
            LabelScheme::Custom(grid)
                if grid.len() != l || grid.iter().any(|row| row.len() != n) =>
            {
                return Err(Error::invalid(format!("label grid must be {l} x {n}")));
            }
            _ => {}
        }
        self.labels = labels;
        Ok(self)
    }

    /// Fixes `a_i^{(Q_s)}` to zero (both 1-based).
    pub fn zero_coefficient(&mut self, i: usize, s: usize) -> Result<()> {
        let idx = self.param_index(i, s)?;
        self.zeroed.insert(idx);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.eigen.len()
    }

    /// Number of parameters `n·ℓ`.
    pub fn parameter_count(&self) -> usize {
        self.n() * self.omega.len()
    }

    /// 0-based position of `a_i^{(Q_s)}` (both 1-based).
    pub fn param_index(&self, i: usize, s: usize) -> Result<usize> {
        if i == 0 || i > self.n() || s == 0 || s > self.omega.len() {
            return Err(Error::invalid(format!("no coefficient ({i}, Q_{s})")));
        }
        Ok(self.n() * (s - 1) + (i - 1))
    }

    /// Label of the parameter at 0-based position `p`.
    pub fn label(&self, p: usize) -> String {
        let (s, i) = (p / self.n(), p % self.n());
        match &self.labels {
            LabelScheme::Canonical => format!("a{}_{}", i + 1, q_string(&self.omega[s])),
            LabelScheme::Letters => format!("{}_{}", LETTERS[i], q_string(&self.omega[s])),
            LabelScheme::Custom(grid) => grid[s][i].clone(),
        }
    }

    /// `label^e` factors joined by `*`, in parameter order.
    pub fn render(&self, nu: &[u32]) -> String {
        let parts: Vec<String> = nu
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(p, &e)| match e {
                1 => self.label(p),
                _ => format!("{}^{e}", self.label(p)),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// `λ^⊤𝒬`, with zeroed parameters carrying weight 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub entries: Vec<NumberFieldElement>,
}

/// `[𝒬_1 ⋯ 𝒬_ℓ]`, each block `n` copies of `Q_s` as columns.
pub fn build_q_matrix(spec: &SystemSpec) -> IntMatrix {
    let n = spec.n();
    let columns: Vec<Vec<BigInt>> = spec
        .omega
        .iter()
        .flat_map(|q| std::iter::repeat_n(q.iter().map(|&v| BigInt::from(v)).collect(), n))
        .collect();
    IntMatrix::from_columns(n, &columns)
}

pub fn weight_vector(spec: &SystemSpec) -> WeightVector {
    let field: &Arc<NumberField> = spec.eigen.field();
    let n = spec.n();
    let entries = (0..spec.parameter_count())
        .map(|p| {
            if spec.zeroed.contains(&p) {
                return NumberFieldElement::zero(field);
            }
            let q: Vec<BigInt> = spec.omega[p / n].iter().map(|&v| BigInt::from(v)).collect();
            spec.eigen.pairing(&q)
        })
        .collect();
    WeightVector { entries }
}

/// Hilbert basis of the invariant monoid with rendered monomials.
///
/// Zeroed parameters are removed before the Gröbner run; each comes back as
/// its own unit vector, which is what a weight-0 coordinate contributes.
pub fn invariant_generators(
    spec: &SystemSpec,
    options: &HilbertOptions,
) -> Result<Vec<(ExponentVector, String)>> {
    let m = spec.parameter_count();
    let weights = weight_vector(spec);
    let kept: Vec<usize> = (0..m).filter(|p| !spec.zeroed.contains(p)).collect();
    let mut vectors: Vec<ExponentVector> = Vec::new();
    if !kept.is_empty() {
        let lambda: Vec<NumberFieldElement> =
            kept.iter().map(|&p| weights.entries[p].clone()).collect();
        let reduced = EigenvalueSpec::new(spec.eigen.field().clone(), lambda)?;
        let basis = hilbert_basis(&relation_matrix(&reduced), options)?;
        for v in basis.vectors {
            let mut full = vec![0u32; m];
            for (&p, &e) in kept.iter().zip(&v) {
                full[p] = e;
            }
            vectors.push(full);
        }
    }
    for &p in &spec.zeroed {
        let mut unit = vec![0u32; m];
        unit[p] = 1;
        vectors.push(unit);
    }
    vectors.sort();
    Ok(vectors
        .into_iter()
        .map(|nu| {
            let s = spec.render(&nu);
            (nu, s)
        })
        .collect())
}

/// True iff the group factor of `a^ν` vanishes, i.e. `⟨λ, 𝒬ν⟩ = 0` with
/// zeroed parameters contributing nothing.
pub fn verify_invariance(spec: &SystemSpec, nu: &[u32]) -> Result<bool> {
    if nu.len() != spec.parameter_count() {
        return Err(Error::invalid(format!(
            "exponent vector has length {}, expected {}",
            nu.len(),
            spec.parameter_count()
        )));
    }
    let n = spec.n();
    let mut lq = vec![BigInt::from(0); n];
    for (p, &e) in nu.iter().enumerate() {
        if e == 0 || spec.zeroed.contains(&p) {
            continue;
        }
        for (acc, &q) in lq.iter_mut().zip(&spec.omega[p / n]) {
            *acc += BigInt::from(q) * e;
        }
    }
    Ok(spec.eigen.pairing(&lq).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational_int;

    fn example2() -> SystemSpec {
        let field = Arc::new(
            NumberField::new("zeta", vec![rational_int(1), rational_int(1), rational_int(1)]).unwrap(),
        );
        let z = NumberFieldElement::generator(&field);
        let lambda = vec![
            NumberFieldElement::from_rational(&field, rational_int(1)),
            z.clone(),
            z.pow(2),
            NumberFieldElement::from_rational(&field, rational_int(-2)),
            NumberFieldElement::from_rational(&field, rational_int(3)),
        ];
        let eigen = EigenvalueSpec::new(field, lambda).unwrap();
        SystemSpec::new(
            eigen,
            vec![vec![1, 0, 0, 0, 1], vec![0, 1, 1, 0, 0], vec![1, 0, 0, 1, 1]],
        )
        .unwrap()
        .with_labels(LabelScheme::Letters)
        .unwrap()
    }

    #[test]
    fn q_matrix_blocks() {
        let q = build_q_matrix(&example2());
        assert_eq!((q.rows(), q.cols()), (5, 15));
        assert_eq!(q.to_i64_rows()[0], vec![1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1]);
        assert_eq!(q.to_i64_rows()[3], vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1]);

        let spec = SystemSpec::new(EigenvalueSpec::integers(&[1, -1]).unwrap(), vec![vec![1, 0]]).unwrap();
        assert_eq!(build_q_matrix(&spec).to_i64_rows(), vec![vec![1, 1], vec![0, 0]]);
        let empty = SystemSpec::new(EigenvalueSpec::integers(&[1, -1]).unwrap(), vec![]).unwrap();
        assert_eq!(build_q_matrix(&empty).cols(), 0);
    }

    #[test]
    fn weights() {
        let spec = example2();
        let w: Vec<String> = weight_vector(&spec).entries.iter().map(|e| e.to_string()).collect();
        assert_eq!(w, ["4", "4", "4", "4", "4", "-1", "-1", "-1", "-1", "-1", "2", "2", "2", "2", "2"]);
    }

    #[test]
    fn labels() {
        let spec = example2();
        assert_eq!(spec.label(14), "f_10011");
        assert_eq!(spec.label(6), "b_01100");
        let canon = SystemSpec::new(
            EigenvalueSpec::integers(&[1, 1, 1, 1]).unwrap(),
            vec![vec![-1, 0, 2, 1]],
        )
        .unwrap();
        assert_eq!(canon.label(1), "a2_m1021");
        assert_eq!(canon.render(&[0, 2, 0, 1]), "a2_m1021^2*a4_m1021");
    }

    #[test]
    fn invalid_systems() {
        let eigen = EigenvalueSpec::integers(&[1, 2]).unwrap();
        assert!(SystemSpec::new(eigen.clone(), vec![vec![-1, -1]]).is_err());
        assert!(SystemSpec::new(eigen.clone(), vec![vec![-2, 3]]).is_err());
        assert!(SystemSpec::new(eigen.clone(), vec![vec![0, 0]]).is_err());
        assert!(SystemSpec::new(eigen.clone(), vec![vec![1, 0], vec![1, 0]]).is_err());
        assert!(SystemSpec::new(eigen, vec![vec![1, 0, 0]]).is_err());
    }

    #[test]
    fn zero_weight_makes_each_coefficient_invariant() {
        let spec = SystemSpec::new(EigenvalueSpec::integers(&[1, -1]).unwrap(), vec![vec![1, 1]]).unwrap();
        let gens = invariant_generators(&spec, &HilbertOptions::default()).unwrap();
        let names: Vec<&str> = gens.iter().map(|(_, s)| s.as_str()).collect();
        assert_eq!(names, ["a2_11", "a1_11"]);
    }

    #[test]
    fn invariance_checks() {
        let spec = example2();
        let mut unit = vec![0u32; 15];
        assert!(verify_invariance(&spec, &unit).unwrap());
        unit[0] = 1;
        assert!(!verify_invariance(&spec, &unit).unwrap());
        assert!(verify_invariance(&spec, &[0; 3]).is_err());
    }
}

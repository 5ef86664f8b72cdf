//! Job documents: the JSON input accepted by every subcommand.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use firstint::exact_arith::{
    format_rational, parse_element, parse_rational, EigenvalueSpec, NumberField, NumberFieldElement, Rational,
};
use firstint::groebner::{BuchbergerOptions, DEFAULT_BUDGET};
use firstint::hilbert::{HilbertOptions, Strategy};
use firstint::invariants::{LabelScheme, SystemSpec};
use firstint::polyring::{CoeffField, DEFAULT_PRIME};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDoc>,
    pub lambda: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemDoc>,
    #[serde(default)]
    pub options: OptionsDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<SummandDoc>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub generator: String,
    /// Ascending coefficients, integers or `"p/q"` strings.
    pub min_poly: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub omega: Vec<Vec<i64>>,
    /// `"canonical"`, `"letters"`, or a grid with one row per `Q`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Value>,
    /// Labels, or `[i, s]` pairs naming `a_i^{(Q_s)}` (1-based).
    #[serde(default)]
    pub zeroed: Vec<Value>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff_field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gb_budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_box: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u64>,
    /// Degree bound for the syzygy listing; defaults to `degree_bound`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub syzygy_bound: Option<u64>,
}

/// One summand `C[I_integrals]·x^gamma e_k` of a decomposition fixture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandDoc {
    pub k: usize,
    pub gamma: Vec<u32>,
    pub integrals: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffKind {
    Q,
    Gfp,
}

impl FromStr for CoeffKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "q" | "Q" => Ok(CoeffKind::Q),
            "gfp" | "GFp" => Ok(CoeffKind::Gfp),
            other => Err(format!("unknown coefficient field `{other}` (expected q or gfp)")),
        }
    }
}

/// Command-line flags that take precedence over the job's `options`.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub strategy: Option<Strategy>,
    pub coeff_field: Option<CoeffKind>,
    pub prime: Option<u64>,
    pub gb_budget: Option<u64>,
}

/// Options after merging defaults, job and flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Settings {
    pub strategy: String,
    pub coeff_field: String,
    pub prime: u64,
    pub gb_budget: u64,
    pub oracle_box: u32,
    pub degree_bound: u64,
    pub syzygy_bound: u64,
}

impl Settings {
    pub fn resolve(doc: &OptionsDoc, flags: &Overrides) -> CliResult<Self> {
        let strategy = match (&flags.strategy, &doc.strategy) {
            (Some(s), _) => *s,
            (None, Some(s)) => s.parse::<Strategy>().map_err(|e| CliError::job(e.to_string()))?,
            (None, None) => Strategy::default(),
        };
        if strategy == Strategy::Oracle {
            return Err(CliError::job("the oracle is not a Groebner strategy; use oracle-check"));
        }
        let coeff = match (flags.coeff_field, &doc.coeff_field) {
            (Some(c), _) => c,
            (None, Some(c)) => c.parse().map_err(CliError::job)?,
            (None, None) => CoeffKind::Q,
        };
        let prime = flags.prime.or(doc.prime).unwrap_or(DEFAULT_PRIME);
        if !is_prime(prime) {
            return Err(CliError::job(format!("{prime} is not a prime below 2^32")));
        }
        let degree_bound = doc.degree_bound.unwrap_or(8);
        Ok(Settings {
            strategy: strategy.name().to_string(),
            coeff_field: match coeff {
                CoeffKind::Q => "q".into(),
                CoeffKind::Gfp => "gfp".into(),
            },
            prime,
            gb_budget: flags.gb_budget.or(doc.gb_budget).unwrap_or(DEFAULT_BUDGET),
            oracle_box: doc.oracle_box.unwrap_or(8),
            degree_bound,
            syzygy_bound: doc.syzygy_bound.unwrap_or(degree_bound),
        })
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy.parse().expect("validated on construction")
    }

    pub fn hilbert_options(&self) -> HilbertOptions {
        HilbertOptions {
            strategy: self.strategy(),
            field: if self.coeff_field == "gfp" {
                CoeffField::Prime(self.prime)
            } else {
                CoeffField::Rationals
            },
            gb: BuchbergerOptions {
                budget: self.gb_budget,
            },
        }
    }
}

fn is_prime(p: u64) -> bool {
    if !(2..1 << 32).contains(&p) {
        return false;
    }
    (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// A parsed, validated job.
#[derive(Debug, Clone)]
pub struct Job {
    pub doc: JobDoc,
    pub eigen: EigenvalueSpec,
    pub system: Option<SystemSpec>,
    pub settings: Settings,
}

impl Job {
    pub fn parse(text: &str, flags: &Overrides) -> CliResult<Self> {
        let doc: JobDoc = serde_json::from_str(text)?;
        Self::from_doc(doc, flags)
    }

    pub fn from_doc(doc: JobDoc, flags: &Overrides) -> CliResult<Self> {
        let field = match &doc.field {
            None => Arc::new(NumberField::rationals()),
            Some(f) => {
                let coeffs = f
                    .min_poly
                    .iter()
                    .enumerate()
                    .map(|(i, v)| rational_value(v, &format!("field.min_poly[{i}]")))
                    .collect::<CliResult<Vec<_>>>()?;
                Arc::new(NumberField::new(f.generator.clone(), coeffs)?)
            }
        };
        let lambda = doc
            .lambda
            .iter()
            .enumerate()
            .map(|(i, v)| element_value(&field, v, &format!("lambda[{i}]")))
            .collect::<CliResult<Vec<_>>>()?;
        let eigen = EigenvalueSpec::new(field, lambda)?;
        let system = doc.system.as_ref().map(|s| system_spec(&eigen, s)).transpose()?;
        let settings = Settings::resolve(&doc.options, flags)?;
        Ok(Job {
            doc,
            eigen,
            system,
            settings,
        })
    }

    pub fn field_doc(&self) -> Option<FieldEcho> {
        let f = self.eigen.field();
        (!f.is_rationals()).then(|| FieldEcho {
            generator: f.generator_name().to_string(),
            min_poly: f.min_poly().iter().map(format_rational).collect(),
        })
    }

    pub fn lambda_strings(&self) -> Vec<String> {
        self.eigen.lambda().iter().map(|e| e.to_string()).collect()
    }

    pub fn require_system(&self) -> CliResult<&SystemSpec> {
        self.system
            .as_ref()
            .ok_or_else(|| CliError::job("this command needs a `system` entry"))
    }
}

/// Field as echoed in reports, coefficients in canonical rational form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldEcho {
    pub generator: String,
    pub min_poly: Vec<String>,
}

fn number_error(what: &str, v: &serde_json::Number) -> CliError {
    CliError::job(format!(
        "{what}: `{v}` is not an exact integer; write non-integers as \"p/q\" strings"
    ))
}

fn rational_value(v: &Value, what: &str) -> CliResult<Rational> {
    match v {
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => Ok(Rational::from_integer(i.into())),
            (None, Some(u)) => Ok(Rational::from_integer(u.into())),
            _ => Err(number_error(what, n)),
        },
        Value::String(s) => parse_rational(s).map_err(|e| CliError::job(format!("{what}: {e}"))),
        other => Err(CliError::job(format!("{what}: expected a rational, found {other}"))),
    }
}

fn element_value(field: &Arc<NumberField>, v: &Value, what: &str) -> CliResult<NumberFieldElement> {
    match v {
        Value::String(s) => parse_element(field, s).map_err(|e| CliError::job(format!("{what}: {e}"))),
        Value::Array(items) => {
            let coords = items
                .iter()
                .enumerate()
                .map(|(i, c)| rational_value(c, &format!("{what}[{i}]")))
                .collect::<CliResult<Vec<_>>>()?;
            NumberFieldElement::from_coords(field, coords).map_err(|e| CliError::job(format!("{what}: {e}")))
        }
        _ => Ok(NumberFieldElement::from_rational(field, rational_value(v, what)?)),
    }
}

fn system_spec(eigen: &EigenvalueSpec, doc: &SystemDoc) -> CliResult<SystemSpec> {
    let labels = match &doc.labels {
        None => LabelScheme::Canonical,
        Some(Value::String(s)) if s == "canonical" => LabelScheme::Canonical,
        Some(Value::String(s)) if s == "letters" => LabelScheme::Letters,
        Some(grid @ Value::Array(_)) => LabelScheme::Custom(
            serde_json::from_value(grid.clone())
                .map_err(|e| CliError::job(format!("system.labels: {e}")))?,
        ),
        Some(other) => {
            return Err(CliError::job(format!(
                "system.labels: expected \"canonical\", \"letters\" or a grid, found {other}"
            )))
        }
    };
    let mut spec = SystemSpec::new(eigen.clone(), doc.omega.clone())?.with_labels(labels)?;
    let by_label: BTreeMap<String, usize> =
        (0..spec.parameter_count()).map(|p| (spec.label(p), p)).collect();
    for (idx, z) in doc.zeroed.iter().enumerate() {
        let what = format!("system.zeroed[{idx}]");
        match z {
            Value::String(label) => {
                let p = *by_label
                    .get(label)
                    .ok_or_else(|| CliError::job(format!("{what}: no parameter named `{label}`")))?;
                spec.zeroed.insert(p);
            }
            Value::Array(pair) if pair.len() == 2 => {
                let get = |v: &Value| v.as_u64().map(|x| x as usize);
                match (get(&pair[0]), get(&pair[1])) {
                    (Some(i), Some(s)) => spec.zero_coefficient(i, s)?,
                    _ => return Err(CliError::job(format!("{what}: expected [i, s] with 1-based indices"))),
                }
            }
            other => return Err(CliError::job(format!("{what}: expected a label or [i, s], found {other}"))),
        }
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_forms() {
        let text = r#"{"field": {"generator": "r", "min_poly": [-2, 0, 1]},
                       "lambda": [1, "1/2", "r - 1", ["3/4", -1]]}"#;
        let job = Job::parse(text, &Overrides::default()).unwrap();
        assert_eq!(job.lambda_strings(), ["1", "1/2", "r - 1", "-r + 3/4"]);
    }

    #[test]
    fn floats_are_rejected() {
        let err = Job::parse(r#"{"lambda": [1, 0.5]}"#, &Overrides::default()).unwrap_err();
        assert!(err.to_string().contains("p/q"), "{err}");
        assert_eq!(err.exit_code(), crate::error::exit::INPUT);
    }

    #[test]
    fn flags_override_options() {
        let text = r#"{"lambda": [1, -1], "options": {"strategy": "sign-split", "gb_budget": 5}}"#;
        let job = Job::parse(text, &Overrides::default()).unwrap();
        assert_eq!(job.settings.strategy(), Strategy::SignSplit);
        assert_eq!(job.settings.gb_budget, 5);
        let flags = Overrides {
            strategy: Some(Strategy::LaurentInverseVars),
            gb_budget: Some(9),
            ..Overrides::default()
        };
        let job = Job::parse(text, &flags).unwrap();
        assert_eq!(job.settings.strategy(), Strategy::LaurentInverseVars);
        assert_eq!(job.settings.gb_budget, 9);
        assert_eq!(job.settings.syzygy_bound, 8);
    }

    #[test]
    fn bad_documents() {
        let flags = Overrides::default();
        assert!(Job::parse(r#"{"lambda": [1], "extra": 1}"#, &flags).is_err());
        assert!(Job::parse(r#"{"lambda": ["zeta"]}"#, &flags).is_err());
        assert!(Job::parse(r#"{"lambda": [1], "options": {"prime": 12}}"#, &flags).is_err());
        assert!(Job::parse(r#"{"lambda": [1], "options": {"strategy": "oracle"}}"#, &flags).is_err());
        assert!(Job::parse(r#"{"lambda": [1, 2], "system": {"omega": [[1, 0]], "zeroed": ["nope"]}}"#, &flags).is_err());
    }

    #[test]
    fn zeroed_by_label_and_pair() {
        let text = r#"{"lambda": [1, 2], "system": {"omega": [[1, 0], [0, 1]], "labels": "letters",
                       "zeroed": ["b_10", [1, 2]]}}"#;
        let job = Job::parse(text, &Overrides::default()).unwrap();
        let sys = job.system.unwrap();
        assert_eq!(sys.zeroed.iter().copied().collect::<Vec<_>>(), [1, 2]);
    }
}

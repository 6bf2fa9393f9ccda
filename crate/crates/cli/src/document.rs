//! Parameter documents: JSON files holding an I-function, Fox H-function or
//! Kilbas–Saigo parameter record plus optional evaluation settings.
//!
//! Complex numbers are `[re, im]` pairs and every float is written in its
//! shortest round-tripping form, so a saved document reloads to identical
//! parameters.

use foxbarnes::kilbas_saigo::KSParams;
use foxbarnes::params::{GammaPair, HParams, IParams};
use foxbarnes::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::CliError;

/// One `(a, α)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub a: [f64; 2],
    pub alpha: f64,
}

impl From<&GammaPair> for PairDoc {
    fn from(g: &GammaPair) -> Self {
        Self { a: [g.a.re, g.a.im], alpha: g.alpha }
    }
}

impl From<&PairDoc> for GammaPair {
    fn from(d: &PairDoc) -> Self {
        GammaPair::new(Complex64::new(d.a[0], d.a[1]), d.alpha)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IDoc {
    m: usize,
    n: usize,
    #[serde(default)]
    p: Option<usize>,
    #[serde(default)]
    q: Option<usize>,
    upper: Vec<PairDoc>,
    lower: Vec<PairDoc>,
    tau: f64,
    #[serde(default)]
    epsilon: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HDoc {
    m: usize,
    n: usize,
    #[serde(default)]
    p: Option<usize>,
    #[serde(default)]
    q: Option<usize>,
    upper: Vec<PairDoc>,
    lower: Vec<PairDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelaxationDoc {
    alpha: f64,
    gamma: f64,
    #[serde(default = "unit")]
    lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KSDoc {
    a: f64,
    m: f64,
    l: f64,
    nu: f64,
    #[serde(default = "unit")]
    lambda: f64,
}

fn unit() -> f64 {
    1.0
}

/// A Kilbas–Saigo record with its rate `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KSRecord {
    pub params: KSParams,
    pub lambda: f64,
    /// `(α, γ)` when the record was given in relaxation form.
    pub relaxation: Option<(f64, f64)>,
}

impl KSRecord {
    pub fn relaxation(alpha: f64, gamma: f64, lambda: f64) -> Result<Self, CliError> {
        let params = KSParams::fractional_relaxation(alpha, gamma).map_err(load_error)?;
        Self::checked(params, lambda, Some((alpha, gamma)))
    }

    pub fn raw(a: f64, m: f64, l: f64, nu: f64, lambda: f64) -> Result<Self, CliError> {
        let params = KSParams::new(a, m, l, nu).map_err(load_error)?;
        Self::checked(params, lambda, None)
    }

    fn checked(params: KSParams, lambda: f64, relaxation: Option<(f64, f64)>) -> Result<Self, CliError> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(CliError::Parse(format!("lambda must be positive, got {lambda}")));
        }
        Ok(Self { params, lambda, relaxation })
    }
}

/// The parameter record of a document.
#[derive(Debug, Clone, PartialEq)]
pub enum Record {
    I(IParams),
    H(HParams),
    KS(KSRecord),
}

/// A loaded parameter document.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamFile {
    pub record: Record,
    pub tol: Option<f64>,
    pub grid: Option<String>,
}

fn load_error(e: foxbarnes::Error) -> CliError {
    CliError::Parse(e.to_string())
}

fn pairs(docs: &[PairDoc]) -> Vec<GammaPair> {
    docs.iter().map(GammaPair::from).collect()
}

fn check_len(key: &str, given: Option<usize>, actual: usize) -> Result<(), CliError> {
    match given {
        Some(k) if k != actual => Err(CliError::Parse(format!("{key} = {k} but the list has {actual} pairs"))),
        _ => Ok(()),
    }
}

fn from_value<T: for<'de> Deserialize<'de>>(v: Value, what: &str) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::Parse(format!("{what} record: {e}")))
}

impl ParamFile {
    /// Parses and validates a document. Unknown keys, mismatched `p`/`q`,
    /// non-positive slopes and out-of-range indices are rejected.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("parameter file: {e}")))?;
        let Value::Object(mut map) = value else {
            return Err(CliError::Parse("parameter file must hold a JSON object".into()));
        };
        let tol = match map.remove("tol") {
            None => None,
            Some(v) => Some(v.as_f64().ok_or_else(|| CliError::Parse("tol must be a number".into()))?),
        };
        let grid = match map.remove("grid") {
            None => None,
            Some(Value::String(s)) => Some(s),
            Some(_) => return Err(CliError::Parse("grid must be a string lo:hi:step".into())),
        };
        let has = |k: &str| map.contains_key(k);
        let obj = Value::Object(map.clone());
        let record = if has("alpha") || has("gamma") {
            let d: RelaxationDoc = from_value(obj, "Kilbas–Saigo")?;
            Record::KS(KSRecord::relaxation(d.alpha, d.gamma, d.lambda)?)
        } else if has("nu") {
            let d: KSDoc = from_value(obj, "Kilbas–Saigo")?;
            Record::KS(KSRecord::raw(d.a, d.m, d.l, d.nu, d.lambda)?)
        } else if has("tau") {
            let d: IDoc = from_value(obj, "I-function")?;
            check_len("p", d.p, d.upper.len())?;
            check_len("q", d.q, d.lower.len())?;
            let eps = Complex64::new(d.epsilon[0], d.epsilon[1]);
            Record::I(IParams::new(d.m, d.n, pairs(&d.upper), pairs(&d.lower), d.tau, eps).map_err(load_error)?)
        } else if has("upper") || has("lower") {
            let d: HDoc = from_value(obj, "H-function")?;
            check_len("p", d.p, d.upper.len())?;
            check_len("q", d.q, d.lower.len())?;
            Record::H(HParams::new(d.m, d.n, pairs(&d.upper), pairs(&d.lower)).map_err(load_error)?)
        } else {
            return Err(CliError::Parse(
                "unrecognised parameter record: expected I-function keys (m, n, upper, lower, tau), \
                 H-function keys (m, n, upper, lower) or Kilbas–Saigo keys (alpha, gamma or a, m, l, nu)"
                    .into(),
            ));
        };
        if let Some(t) = tol {
            if !(t > 0.0 && t <= 1e-2) {
                return Err(CliError::Parse(format!("tol must lie in (0, 1e-2], got {t}")));
            }
        }
        Ok(Self { record, tol, grid })
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The document as pretty-printed JSON.
    pub fn to_json(&self) -> String {
        let mut map = match &self.record {
            Record::I(p) => to_map(&IDoc {
                m: p.m(),
                n: p.n(),
                p: Some(p.p()),
                q: Some(p.q()),
                upper: p.upper().iter().map(PairDoc::from).collect(),
                lower: p.lower().iter().map(PairDoc::from).collect(),
                tau: p.tau(),
                epsilon: [p.epsilon().re, p.epsilon().im],
            }),
            Record::H(h) => to_map(&HDoc {
                m: h.m(),
                n: h.n(),
                p: Some(h.p()),
                q: Some(h.q()),
                upper: h.upper().iter().map(PairDoc::from).collect(),
                lower: h.lower().iter().map(PairDoc::from).collect(),
            }),
            Record::KS(k) => match k.relaxation {
                Some((alpha, gamma)) => to_map(&RelaxationDoc { alpha, gamma, lambda: k.lambda }),
                None => {
                    let p = &k.params;
                    to_map(&KSDoc { a: p.a(), m: p.m(), l: p.l(), nu: p.nu(), lambda: k.lambda })
                }
            },
        };
        if let Some(t) = self.tol {
            map.insert("tol".into(), t.into());
        }
        if let Some(g) = &self.grid {
            map.insert("grid".into(), g.clone().into());
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(map)).expect("documents serialise");
        text.push('\n');
        text
    }
}

fn to_map<T: Serialize>(doc: &T) -> Map<String, Value> {
    match serde_json::to_value(doc).expect("documents serialise") {
        Value::Object(m) => m,
        _ => unreachable!("records serialise to objects"),
    }
}

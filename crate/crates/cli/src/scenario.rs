//! Scenario files: a connection pair on an m-dimensional chart.
//!
//! ```json
//! {"m": 3, "n": 2, "degree_cap": 1, "claims_flat": false,
//!  "A0": [[[term, …], …], …], "A1": …}
//! ```
//!
//! Each matrix is a list of rows; each entry a list of terms
//! `{"coords": [exponents], "form": [index], "coeff": "p/q", "q": 0}` with
//! 1-based form indices. Coefficients must be rational and `q`, when
//! present, must be 0.

use serde_json::{json, Map, Value};
use transgression_core::csforms::gen_flat_pair;
use transgression_core::exactscalar::Rational;
use transgression_core::formcalc::{
    flat_pair_from_seed, random_pair, ConnectionPair, ConnectionShape, Form, MatrixForm, Monomial, MAX_DIM,
};

use crate::error::{CliError, CliResult};
use crate::json::{rational_from_json, rational_to_json, scalar_from_json};

/// A validated scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub pair: ConnectionPair,
    pub degree_cap: u32,
    /// How the scenario was generated, if it was.
    pub generator: Option<Value>,
}

/// Parameters of `scenario gen`.
#[derive(Clone, Debug)]
pub struct GenSpec {
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    pub degree_cap: u32,
    pub flat: bool,
    pub shears: usize,
    pub skew: bool,
}

impl Scenario {
    pub fn generate(spec: &GenSpec) -> CliResult<Self> {
        let pair = if spec.flat {
            if spec.shears == 0 {
                flat_pair_from_seed(spec.m, spec.n, 0, spec.degree_cap, spec.seed)?
            } else {
                gen_flat_pair(spec.m, spec.n, spec.seed, spec.shears)?
            }
        } else {
            random_pair(&ConnectionShape::new(spec.m, spec.n, spec.degree_cap).skew(spec.skew), spec.seed, false)?
        };
        let generator = json!({
            "flat": spec.flat,
            "seed": spec.seed,
            "shears": if spec.flat { json!(spec.shears) } else { Value::Null },
            "skew": spec.skew,
        });
        Ok(Scenario { pair, degree_cap: spec.degree_cap, generator: Some(generator) })
    }

    pub fn to_json(&self) -> Value {
        let m = self.pair.m();
        let mut o = Map::new();
        o.insert("m".into(), json!(m));
        o.insert("n".into(), json!(self.pair.n()));
        o.insert("degree_cap".into(), json!(self.degree_cap));
        o.insert("claims_flat".into(), json!(self.pair.claims_flat()));
        if let Some(g) = &self.generator {
            o.insert("generator".into(), g.clone());
        }
        o.insert("A0".into(), matrix_to_json(self.pair.a0(), m));
        o.insert("A1".into(), matrix_to_json(self.pair.a1(), m));
        Value::Object(o)
    }

    pub fn from_json(v: &Value) -> CliResult<Self> {
        let obj = v.as_object().ok_or_else(|| CliError::schema("", "scenario must be an object"))?;
        let uint = |key: &str| -> CliResult<u64> {
            obj.get(key).and_then(Value::as_u64).ok_or_else(|| CliError::schema(format!("/{}", key), "missing non-negative integer"))
        };
        let m = uint("m")? as usize;
        if m == 0 || m > MAX_DIM {
            return Err(CliError::schema("/m", format!("chart dimension must be in 1..={}", MAX_DIM)));
        }
        let n = uint("n")? as usize;
        if n == 0 {
            return Err(CliError::schema("/n", "rank must be positive"));
        }
        let degree_cap = match obj.get("degree_cap") {
            None => 1,
            Some(_) => uint("degree_cap")? as u32,
        };
        let claims_flat = match obj.get("claims_flat") {
            None => false,
            Some(Value::Bool(b)) => *b,
            Some(_) => return Err(CliError::schema("/claims_flat", "expected a boolean")),
        };
        let a0 = matrix_from_json(obj.get("A0"), "/A0", m, n)?;
        let a1 = matrix_from_json(obj.get("A1"), "/A1", m, n)?;
        let pair = ConnectionPair::new(m, a0, a1, claims_flat)?;
        Ok(Scenario { pair, degree_cap, generator: obj.get("generator").cloned() })
    }

    pub fn from_str(text: &str) -> CliResult<Self> {
        let v: Value = serde_json::from_str(text)?;
        Self::from_json(&v)
    }

    pub fn read(path: &std::path::Path) -> CliResult<Self> {
        Self::from_str(&std::fs::read_to_string(path)?)
    }

    /// Canonical pretty JSON, identical for identical scenarios.
    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable") + "\n"
    }
}

fn matrix_to_json(a: &MatrixForm, m: usize) -> Value {
    let n = a.n();
    Value::Array(
        (0..n)
            .map(|i| {
                Value::Array(
                    (0..n)
                        .map(|j| {
                            Value::Array(
                                a.get(i, j)
                                    .terms()
                                    .iter()
                                    .map(|(mono, c)| {
                                        json!({
                                            "coords": mono.poly_exps(m).collect::<Vec<_>>(),
                                            "form": mono.form_indices().map(|k| k + 1).collect::<Vec<_>>(),
                                            "coeff": rational_to_json(c),
                                        })
                                    })
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

fn matrix_from_json(v: Option<&Value>, ptr: &str, m: usize, n: usize) -> CliResult<MatrixForm> {
    let rows = v.and_then(Value::as_array).ok_or_else(|| CliError::schema(ptr, "missing matrix"))?;
    if rows.len() != n {
        return Err(CliError::schema(ptr, format!("expected {} rows, found {}", n, rows.len())));
    }
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let rp = format!("{}/{}", ptr, i);
        let cols = row.as_array().ok_or_else(|| CliError::schema(&rp, "row must be an array"))?;
        if cols.len() != n {
            return Err(CliError::schema(&rp, format!("expected {} entries, found {}", n, cols.len())));
        }
        for (j, entry) in cols.iter().enumerate() {
            entries.push(entry_from_json(entry, &format!("{}/{}", rp, j), m)?);
        }
    }
    Ok(MatrixForm::from_entries(n, entries)?)
}

fn entry_from_json(v: &Value, ptr: &str, m: usize) -> CliResult<Form<Rational>> {
    let terms = v.as_array().ok_or_else(|| CliError::schema(ptr, "entry must be a list of terms"))?;
    let mut raw = Vec::with_capacity(terms.len());
    for (k, t) in terms.iter().enumerate() {
        let p = format!("{}/{}", ptr, k);
        let obj = t.as_object().ok_or_else(|| CliError::schema(&p, "term must be an object"))?;
        let coords = obj
            .get("coords")
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::schema(format!("{}/coords", p), "missing coords"))?;
        if coords.len() > m {
            return Err(CliError::schema(format!("{}/coords", p), format!("more than m = {} exponents", m)));
        }
        let mut exps = Vec::with_capacity(coords.len());
        for (c, e) in coords.iter().enumerate() {
            let e = e
                .as_u64()
                .filter(|&e| e < 256)
                .ok_or_else(|| CliError::schema(format!("{}/coords/{}", p, c), "exponent must be an integer in 0..256"))?;
            exps.push(e as u8);
        }
        let form = obj
            .get("form")
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::schema(format!("{}/form", p), "missing form indices"))?;
        let mut idx = Vec::with_capacity(form.len());
        for (c, e) in form.iter().enumerate() {
            let e = e
                .as_u64()
                .filter(|&e| e >= 1 && e as usize <= m)
                .ok_or_else(|| CliError::schema(format!("{}/form/{}", p, c), format!("form index must be in 1..={}", m)))?;
            idx.push(e as usize - 1);
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::schema(format!("{}/form", p), "form indices must be strictly increasing"));
        }
        if idx.len() != 1 {
            return Err(CliError::schema(format!("{}/form", p), "connection entries must be 1-forms"));
        }
        if let Some(q) = obj.get("q") {
            if q.as_i64() != Some(0) {
                return Err(CliError::schema(format!("{}/q", p), "connection coefficients carry no q-power"));
            }
        }
        let cp = format!("{}/coeff", p);
        let coeff = match obj.get("coeff") {
            Some(Value::String(_)) => rational_from_json(&obj["coeff"], &cp)?,
            Some(c) => scalar_from_json(c, &cp)?
                .as_rational()
                .ok_or_else(|| CliError::schema(&cp, "connection coefficients must be rational"))?,
            None => return Err(CliError::schema(&cp, "missing coeff")),
        };
        raw.push((Monomial::new(&exps, &idx), coeff));
    }
    Ok(Form::from_terms(raw))
}

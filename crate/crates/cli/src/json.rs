//! JSON encodings of exact scalars, q-series and form series.
//!
//! A scalar is `[[pi_exp, [c0, …, c7]], …]` with each cᵢ a `"num/den"`
//! string over the power basis of Q(ζ₂₄); a q-series is
//! `{"trunc": int, "terms": [[k, scalar], …]}` with k in q^{1/24} units.

use serde_json::{json, Value};
use transgression_core::exactscalar::cyclo::DEGREE;
use transgression_core::exactscalar::{CycloRational, QSeries, Rational, Scalar};
use transgression_core::formcalc::{FormSeries, Monomial};

use crate::error::{CliError, CliResult};

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(r.to_frac_string())
}

pub fn rational_from_json(v: &Value, ptr: &str) -> CliResult<Rational> {
    match v {
        Value::String(s) => s.parse().map_err(|_| CliError::schema(ptr, format!("bad rational {:?}", s))),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_int(n.as_i64().unwrap())),
        _ => Err(CliError::schema(ptr, "expected a \"num/den\" string")),
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::Array(
        s.terms()
            .iter()
            .map(|(k, c)| json!([k, c.coords().iter().map(rational_to_json).collect::<Vec<_>>()]))
            .collect(),
    )
}

pub fn scalar_from_json(v: &Value, ptr: &str) -> CliResult<Scalar> {
    let arr = v.as_array().ok_or_else(|| CliError::schema(ptr, "scalar must be an array of [pi_exp, coords]"))?;
    let mut raw = Vec::with_capacity(arr.len());
    for (i, t) in arr.iter().enumerate() {
        let p = format!("{}/{}", ptr, i);
        let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| CliError::schema(&p, "expected [pi_exp, coords]"))?;
        let k = pair[0]
            .as_i64()
            .and_then(|k| i32::try_from(k).ok())
            .ok_or_else(|| CliError::schema(format!("{}/0", p), "pi exponent must be an integer"))?;
        let coords = pair[1]
            .as_array()
            .filter(|c| c.len() == DEGREE)
            .ok_or_else(|| CliError::schema(format!("{}/1", p), format!("expected {} coordinates", DEGREE)))?;
        let mut c: [Rational; DEGREE] = Default::default();
        for (j, x) in coords.iter().enumerate() {
            c[j] = rational_from_json(x, &format!("{}/1/{}", p, j))?;
        }
        raw.push((k, CycloRational::from_coords(c)));
    }
    Ok(Scalar::from_terms(raw))
}

pub fn qseries_to_json(f: &QSeries) -> Value {
    json!({
        "trunc": f.trunc(),
        "terms": f.terms().iter().map(|(k, s)| json!([k, scalar_to_json(s)])).collect::<Vec<_>>(),
    })
}

pub fn qseries_from_json(v: &Value, ptr: &str) -> CliResult<QSeries> {
    let trunc = v
        .get("trunc")
        .and_then(Value::as_i64)
        .ok_or_else(|| CliError::schema(format!("{}/trunc", ptr), "missing integer trunc"))?;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::schema(format!("{}/terms", ptr), "missing terms array"))?;
    let mut raw = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let p = format!("{}/terms/{}", ptr, i);
        let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| CliError::schema(&p, "expected [k, scalar]"))?;
        let k = pair[0].as_i64().ok_or_else(|| CliError::schema(format!("{}/0", p), "exponent must be an integer"))?;
        if k >= trunc {
            return Err(CliError::schema(format!("{}/0", p), "exponent at or beyond trunc"));
        }
        raw.push((k, scalar_from_json(&pair[1], &format!("{}/1", p))?));
    }
    Ok(QSeries::from_terms(trunc, raw))
}

/// `{"coords": [...], "form": [...]}` with 1-based form indices.
pub fn monomial_to_json(m: &Monomial, dim: usize) -> Value {
    json!({
        "coords": m.poly_exps(dim).collect::<Vec<_>>(),
        "form": m.form_indices().map(|i| i + 1).collect::<Vec<_>>(),
    })
}

/// Form series as a list of `{coords, form, degree, coeff: qseries}`.
pub fn form_series_to_json(f: &FormSeries, dim: usize) -> Value {
    Value::Array(
        f.terms()
            .iter()
            .map(|(m, c)| {
                let mut o = monomial_to_json(m, dim);
                o["degree"] = json!(m.form_degree());
                o["coeff"] = qseries_to_json(c);
                o
            })
            .collect(),
    )
}

//! JSON encodings. Integer coordinates and rational coefficients are decimal
//! strings; counts, degrees and h-vector entries are plain numbers.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::certificates::CICertificate;
use crate::error::{Error, Result};
use crate::exact::rational::{parse_rational, rational_to_string};
use crate::exact::HomForm;
use crate::hilbert::HVector;
use crate::projgeom::{FatScheme, Hyperplane, PointSet, ProjPoint};
use crate::rnc::{BinaryParam, ContactStar};

pub fn int_vec(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn point(p: &ProjPoint) -> Value {
    int_vec(p.coords())
}

pub fn points(x: &PointSet) -> Value {
    json!({ "n": x.ambient_dim(), "points": x.iter().map(point).collect::<Vec<_>>() })
}

pub fn hyperplane_list(hs: &[Hyperplane]) -> Value {
    Value::Array(hs.iter().map(|h| int_vec(h.coeffs())).collect())
}

pub fn hyperplanes(n: usize, hs: &[Hyperplane]) -> Value {
    json!({ "n": n, "hyperplanes": hyperplane_list(hs) })
}

pub fn param(t: &BinaryParam) -> Value {
    json!([t.a().to_string(), t.b().to_string()])
}

pub fn contact_star(s: &ContactStar) -> Value {
    json!({
        "n": s.ambient_dim(),
        "params": s.params.iter().map(param).collect::<Vec<_>>(),
        "hyperplanes": hyperplane_list(&s.hyperplanes),
        "points": s.points.iter().map(point).collect::<Vec<_>>(),
    })
}

pub fn hvector(h: &HVector) -> Value {
    json!({
        "h": h.entries(),
        "degree": h.sum(),
        "hilbert_function": h.hilbert_function(),
    })
}

/// `{"degree": d, "terms": {"2,0,1": "coeff", ...}}`.
pub fn form(f: &HomForm) -> Value {
    let terms: Map<String, Value> = f
        .terms()
        .map(|(e, c)| {
            (
                e.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
                Value::String(rational_to_string(c)),
            )
        })
        .collect();
    json!({ "degree": f.degree(), "terms": terms, "text": f.to_string() })
}

pub fn certificate(c: &CICertificate, verified: bool) -> Value {
    json!({
        "type": [c.ci_type.a, c.ci_type.b],
        "F": form(&c.f),
        "G": form(&c.g),
        "points": c.num_points,
        "verified": verified,
    })
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
        Value::Number(n) if n.is_i64() => Ok(BigInt::from(n.as_i64().unwrap())),
        other => Err(Error::Parse(format!("expected an integer, got {other}"))),
    }
}

fn parse_vectors(v: &Value, key: &str) -> Result<(usize, Vec<Vec<BigInt>>)> {
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing integer field \"n\"".into()))? as usize;
    let rows = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse(format!("missing array field {key:?}")))?;
    let rows = rows
        .iter()
        .map(|r| {
            let r = r
                .as_array()
                .ok_or_else(|| Error::Parse(format!("{key} entries must be arrays")))?;
            if r.len() != n + 1 {
                return Err(Error::Dimension {
                    expected: n + 1,
                    got: r.len(),
                });
            }
            r.iter().map(parse_int).collect()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((n, rows))
}

pub fn parse_points(v: &Value) -> Result<PointSet> {
    let (n, rows) = parse_vectors(v, "points")?;
    PointSet::new(n, rows.into_iter().map(ProjPoint::new).collect::<Result<Vec<_>>>()?)
}

pub fn parse_hyperplanes(v: &Value) -> Result<Vec<Hyperplane>> {
    let (_, rows) = parse_vectors(v, "hyperplanes")?;
    rows.into_iter().map(Hyperplane::new).collect()
}

/// Points with an optional `"multiplicities"` array (default all one).
pub fn parse_fat_scheme(v: &Value) -> Result<FatScheme> {
    let (n, rows) = parse_vectors(v, "points")?;
    let mults: Vec<u32> = match v.get("multiplicities") {
        None => vec![1; rows.len()],
        Some(m) => m
            .as_array()
            .ok_or_else(|| Error::Parse("\"multiplicities\" must be an array".into()))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|k| k as u32)
                    .ok_or_else(|| Error::Parse(format!("bad multiplicity {x}")))
            })
            .collect::<Result<_>>()?,
    };
    if mults.len() != rows.len() {
        return Err(Error::Parse(format!(
            "{} points but {} multiplicities",
            rows.len(),
            mults.len()
        )));
    }
    let items = rows
        .into_iter()
        .map(ProjPoint::new)
        .zip(mults)
        .map(|(p, m)| p.map(|p| (p, m)))
        .collect::<Result<Vec<_>>>()?;
    FatScheme::new(n, items)
}

/// Inverse of [`form`]: reads `"degree"` and the `"terms"` map. The number
/// of variables is taken from the exponent keys.
pub fn parse_form(v: &Value) -> Result<HomForm> {
    let degree = v
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing integer field \"degree\"".into()))? as u32;
    let terms = v
        .get("terms")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Parse("missing object field \"terms\"".into()))?;
    let parsed = terms
        .iter()
        .map(|(k, c)| {
            let e = k
                .split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent key {k:?}"))))
                .collect::<Result<Vec<u32>>>()?;
            let c = match c {
                Value::String(s) => parse_rational(s)?,
                Value::Number(n) if n.is_i64() => crate::exact::rat(n.as_i64().unwrap()),
                other => return Err(Error::Parse(format!("bad coefficient {other}"))),
            };
            Ok((e, c))
        })
        .collect::<Result<Vec<_>>>()?;
    let num_vars = parsed
        .first()
        .map(|(e, _)| e.len())
        .ok_or_else(|| Error::Parse("a form needs at least one term".into()))?;
    HomForm::try_from_terms(num_vars, degree, parsed)
}

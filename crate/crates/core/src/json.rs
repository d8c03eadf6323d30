//! JSON encodings of fields, matrices, groups, cocycles and algebra
//! elements.
//!
//! Output is canonical (field elements of a prime field as integers, of an
//! extension as full-length coefficient lists); input additionally accepts
//! a few shorthands, e.g. a catalog name for a group or `"trivial"` for a
//! cocycle.

use serde_json::{json, Value};

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::gf::{Fe, FiniteField};
use crate::group::{FiniteGroup, TwoCocycle};
use crate::matrix::Matrix;

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

pub(crate) fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| schema(format!("missing field `{key}`")))
}

pub(crate) fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| schema(format!("`{what}` must be a non-negative integer")))
}

pub(crate) fn as_usize(v: &Value, what: &str) -> Result<usize> {
    as_u64(v, what).map(|x| x as usize)
}

pub(crate) fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(format!("`{what}` must be an array")))
}

pub(crate) fn as_bool(v: &Value, what: &str) -> Result<bool> {
    v.as_bool().ok_or_else(|| schema(format!("`{what}` must be a boolean")))
}

fn small_u32(v: &Value, what: &str) -> Result<u32> {
    let x = as_u64(v, what)?;
    u32::try_from(x).map_err(|_| schema(format!("`{what}` is too large")))
}

/// `{"p", "k", "order", "modulus"}`; the modulus is omitted for prime fields.
pub fn field_to_json(f: &FiniteField) -> Value {
    let mut v = json!({ "p": f.characteristic(), "k": f.degree(), "order": f.order() });
    if f.degree() > 1 {
        v["modulus"] = json!(f.modulus());
    }
    v
}

/// Accepts `{"p", "k"?, "order"?, "modulus"?}` or a bare prime power `q`.
pub fn field_from_json(v: &Value) -> Result<FiniteField> {
    if let Some(q) = v.as_u64() {
        let q = u32::try_from(q).map_err(|_| Error::FieldTooLarge(q))?;
        let (p, k) = prime_power(q).ok_or(Error::NonPrime(q as u64))?;
        return FiniteField::new(p, k);
    }
    if !v.is_object() {
        return Err(schema("field must be an object or a prime power"));
    }
    let p = small_u32(get(v, "p")?, "p")?;
    let k = match v.get("k") {
        Some(k) => small_u32(k, "k")?,
        None => 1,
    };
    if k == 0 || k > 32 {
        return Err(schema("`k` must be between 1 and 32"));
    }
    let f = match v.get("modulus") {
        None | Some(Value::Null) => FiniteField::new(p, k)?,
        Some(m) => {
            let coeffs = as_array(m, "modulus")?
                .iter()
                .map(|c| small_u32(c, "modulus"))
                .collect::<Result<Vec<_>>>()?;
            FiniteField::make(p, k, Some(&coeffs))?
        }
    };
    if let Some(q) = v.get("order") {
        if as_u64(q, "order")? != f.order() as u64 {
            return Err(schema("`order` is not p^k"));
        }
    }
    Ok(f)
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut r = q;
    let mut k = 0;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Integer for a prime field, coefficient list (low to high) otherwise.
pub fn fe_to_json(f: &FiniteField, a: Fe) -> Value {
    if f.degree() == 1 {
        json!(a.index())
    } else {
        let mut c = f.coeffs(a);
        c.resize(f.degree() as usize, 0);
        json!(c)
    }
}

/// Strict inverse of [`fe_to_json`]; a bare integer `0 <= n < p` also
/// denotes a prime-subfield element of an extension.
pub fn fe_from_json(f: &FiniteField, v: &Value) -> Result<Fe> {
    let p = f.characteristic();
    if let Some(n) = v.as_u64() {
        if n >= p as u64 {
            return Err(Error::InvalidElement);
        }
        return Ok(Fe::from_index(n as u32));
    }
    if let Some(list) = v.as_array() {
        if list.len() != f.degree() as usize {
            return Err(Error::InvalidElement);
        }
        let digits = list.iter().map(|c| small_u32(c, "coefficient")).collect::<Result<Vec<_>>>()?;
        if digits.iter().any(|&d| d >= p) {
            return Err(Error::InvalidElement);
        }
        return f.from_coeffs(&digits);
    }
    Err(schema("field element must be an integer or a coefficient list"))
}

fn fe_vec_to_json(f: &FiniteField, v: &[Fe]) -> Value {
    Value::Array(v.iter().map(|&x| fe_to_json(f, x)).collect())
}

fn fe_vec_from_json(f: &FiniteField, v: &Value, what: &str) -> Result<Vec<Fe>> {
    as_array(v, what)?.iter().map(|x| fe_from_json(f, x)).collect()
}

/// `{"rows", "cols", "entries"}`.
pub fn matrix_to_json(m: &Matrix) -> Value {
    let f = m.field();
    let entries: Vec<Value> = m.to_rows().iter().map(|r| fe_vec_to_json(f, r)).collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

/// Accepts the object form or a bare array of rows.
pub fn matrix_from_json(f: &FiniteField, v: &Value) -> Result<Matrix> {
    let (entries, shape) = if v.is_array() {
        (v, None)
    } else {
        let e = get(v, "entries")?;
        (e, Some((as_usize(get(v, "rows")?, "rows")?, as_usize(get(v, "cols")?, "cols")?)))
    };
    let rows = as_array(entries, "entries")?
        .iter()
        .map(|r| fe_vec_from_json(f, r, "matrix row"))
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(schema("matrix must have at least one row"));
    }
    let m = Matrix::from_rows(f, &rows)?;
    if let Some((r, c)) = shape {
        if (r, c) != (m.rows(), m.cols()) {
            return Err(Error::DimensionMismatch("declared shape differs from entries".into()));
        }
    }
    Ok(m)
}

/// `{"order", "table"}`.
pub fn group_to_json(g: &FiniteGroup) -> Value {
    json!({ "order": g.order(), "table": g.table() })
}

/// Accepts `{"order"?, "table"}`, `{"permutations"}`, `{"catalog"}` or a
/// bare catalog name.
pub fn group_from_json(v: &Value) -> Result<FiniteGroup> {
    if let Some(name) = v.as_str() {
        return FiniteGroup::catalog(name);
    }
    if let Some(name) = v.get("catalog") {
        return FiniteGroup::catalog(name.as_str().ok_or_else(|| schema("`catalog` must be a string"))?);
    }
    if let Some(perms) = v.get("permutations") {
        let gens = as_array(perms, "permutations")?
            .iter()
            .map(|g| as_array(g, "permutation")?.iter().map(|x| as_usize(x, "permutation")).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        if gens.is_empty() {
            return Err(schema("at least one permutation is required"));
        }
        return FiniteGroup::from_permutations(&gens);
    }
    let table = as_array(get(v, "table")?, "table")?
        .iter()
        .map(|r| as_array(r, "table row")?.iter().map(|x| as_usize(x, "table entry")).collect())
        .collect::<Result<Vec<Vec<usize>>>>()?;
    if let Some(order) = v.get("order") {
        if as_usize(order, "order")? != table.len() {
            return Err(Error::InvalidTable("declared order differs from the table".into()));
        }
    }
    FiniteGroup::from_table(&table)
}

/// `{"values"}`.
pub fn cocycle_to_json(t: &TwoCocycle) -> Value {
    let f = t.field();
    let values: Vec<Value> = t.values().iter().map(|r| fe_vec_to_json(f, r)).collect();
    json!({ "values": values })
}

/// Accepts `{"values"}`, `{"trivial": true}`, `"trivial"`, null, or
/// `{"coboundary": [f(g) ...]}`.
pub fn cocycle_from_json(g: &FiniteGroup, f: &FiniteField, v: &Value) -> Result<TwoCocycle> {
    match v {
        Value::Null => return Ok(TwoCocycle::trivial(g, f)),
        Value::String(s) if s == "trivial" => return Ok(TwoCocycle::trivial(g, f)),
        _ => {}
    }
    if let Some(t) = v.get("trivial") {
        if as_bool(t, "trivial")? {
            return Ok(TwoCocycle::trivial(g, f));
        }
        return Err(schema("`trivial` must be true when present"));
    }
    if let Some(c) = v.get("coboundary") {
        return TwoCocycle::coboundary(g, f, &fe_vec_from_json(f, c, "coboundary")?);
    }
    let values = as_array(get(v, "values")?, "values")?
        .iter()
        .map(|r| fe_vec_from_json(f, r, "cocycle row"))
        .collect::<Result<Vec<_>>>()?;
    TwoCocycle::from_values(g, f, &values)
}

/// `{"coeffs"}`.
pub fn element_to_json(alg: &Algebra, x: &Element) -> Value {
    json!({ "coeffs": fe_vec_to_json(alg.field(), x.coeffs()) })
}

/// Accepts `{"coeffs"}`, a bare coefficient array, `{"basis": g}` or
/// `{"commutator": [u, v]}` for units `u`, `v`.
pub fn element_from_json(alg: &Algebra, v: &Value) -> Result<Element> {
    if v.is_array() {
        return alg.element(fe_vec_from_json(alg.field(), v, "coeffs")?);
    }
    if let Some(b) = v.get("basis") {
        let i = as_usize(b, "basis")?;
        if i >= alg.dim() {
            return Err(Error::InvalidElement);
        }
        return Ok(alg.basis(i));
    }
    if let Some(c) = v.get("commutator") {
        let pair = as_array(c, "commutator")?;
        if pair.len() != 2 {
            return Err(schema("`commutator` takes exactly two elements"));
        }
        let u = element_from_json(alg, &pair[0])?;
        let w = element_from_json(alg, &pair[1])?;
        return alg.commutator(&u, &w);
    }
    alg.element(fe_vec_from_json(alg.field(), get(v, "coeffs")?, "coeffs")?)
}

pub(crate) fn elements_to_json(alg: &Algebra, xs: &[Element]) -> Value {
    Value::Array(xs.iter().map(|x| element_to_json(alg, x)).collect())
}

pub(crate) fn elements_from_json(alg: &Algebra, v: &Value, what: &str) -> Result<Vec<Element>> {
    as_array(v, what)?.iter().map(|x| element_from_json(alg, x)).collect()
}

//! Self-contained JSON certificates and their independent verification.
//!
//! Every certificate carries the full input (field with modulus, group
//! table, cocycle values) so that [`verify`] needs nothing else. Identities
//! are rechecked from the recorded data; results that are not identities
//! (verdicts of the nil-free test, unit group counts) are recomputed.

use serde_json::{json, Map, Value};

use crate::algebra::{quotient, radical, Algebra, Element, Quotient, RadicalData};
use crate::error::{Error, Result};
use crate::gafact::{DerivedCertificate, LiftedFactorization, Structure};
use crate::gf::{Fe, FiniteField};
use crate::group::{FiniteGroup, TwoCocycle};
use crate::json::*;
use crate::matrix::{check_unipotent_index, Matrix};
use crate::nilfree::{nilfree_check, NilfreeReport, WitnessKind};
use crate::slfact::{CommutatorWitness, UnipotentFactorization};
use crate::unitrad::{unipotent_radical_check, Caps, UnitRadicalReport};
use crate::wedderburn::{Component, WedderburnDecomposition};

fn invalid(msg: impl Into<String>) -> Error {
    Error::CertificateInvalid(msg.into())
}

/// Field, group and cocycle of a twisted group algebra, with the algebra.
#[derive(Clone, Debug)]
pub struct AlgebraInput {
    pub field: FiniteField,
    pub group: FiniteGroup,
    pub cocycle: TwoCocycle,
    pub algebra: Algebra,
}

impl AlgebraInput {
    pub fn new(field: FiniteField, group: FiniteGroup, cocycle: TwoCocycle) -> Result<Self> {
        let algebra = Algebra::twisted_group_algebra(&field, &group, &cocycle)?;
        Ok(AlgebraInput { field, group, cocycle, algebra })
    }

    /// Reads the `field`, `group` and `cocycle` keys of an object.
    pub fn from_json(v: &Value) -> Result<Self> {
        let field = field_from_json(get(v, "field")?)?;
        let group = group_from_json(get(v, "group")?)?;
        let cocycle = cocycle_from_json(&group, &field, v.get("cocycle").unwrap_or(&Value::Null))?;
        Self::new(field, group, cocycle)
    }

    fn write(&self, m: &mut Map<String, Value>) {
        m.insert("field".into(), field_to_json(&self.field));
        m.insert("group".into(), group_to_json(&self.group));
        m.insert("cocycle".into(), cocycle_to_json(&self.cocycle));
    }
}

fn object(kind: &str, input: Option<&AlgebraInput>, rest: Value) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(kind));
    if let Some(i) = input {
        i.write(&mut m);
    }
    if let Value::Object(r) = rest {
        m.extend(r);
    }
    Value::Object(m)
}

// ---------------------------------------------------------------- matrices

/// `method` is one of `transvection`, `two`, `three`.
pub fn sl_factorization_certificate(method: &str, fac: &UnipotentFactorization) -> Value {
    let factors: Vec<Value> = fac
        .factors()
        .iter()
        .map(|c| json!({ "matrix": matrix_to_json(c.matrix()), "index": c.index() }))
        .collect();
    object(
        "sl-factorization",
        None,
        json!({
            "field": field_to_json(fac.target().field()),
            "method": method,
            "target": matrix_to_json(fac.target()),
            "factors": factors,
        }),
    )
}

fn verify_sl_factorization(v: &Value) -> Result<()> {
    let f = field_from_json(get(v, "field")?)?;
    let target = matrix_from_json(&f, get(v, "target")?)?;
    if !target.is_square() {
        return Err(Error::NotSquare);
    }
    let n = target.rows();
    let method = get(v, "method")?.as_str().ok_or_else(|| Error::Schema("`method` must be a string".into()))?;
    let bound = match method {
        "transvection" => n * n + n,
        "two" => 2,
        "three" => 3,
        other => return Err(Error::Schema(format!("unknown method `{other}`"))),
    };
    let mut product = Matrix::identity(&f, n);
    let factors = as_array(get(v, "factors")?, "factors")?;
    if factors.len() > bound {
        return Err(invalid(format!("{} factors exceed the bound {bound}", factors.len())));
    }
    for (i, fv) in factors.iter().enumerate() {
        let m = matrix_from_json(&f, get(fv, "matrix")?)?;
        let index = as_usize(get(fv, "index")?, "index")?;
        if m.rows() != n || m.cols() != n {
            return Err(invalid(format!("factor {i} has the wrong shape")));
        }
        if !check_unipotent_index(&m, index) {
            return Err(invalid(format!("factor {i}: (I - u)^{index} = 0 with minimal index fails")));
        }
        if method == "transvection" {
            let off: Vec<(usize, usize)> = (0..n)
                .flat_map(|r| (0..n).map(move |c| (r, c)))
                .filter(|&(r, c)| m.get(r, c) != if r == c { Fe::ONE } else { Fe::ZERO })
                .collect();
            if off.len() != 1 || off[0].0 == off[0].1 {
                return Err(invalid(format!("factor {i} is not an elementary transvection")));
            }
        }
        product = product.mul(&m);
    }
    if product != target {
        return Err(invalid("ordered product of factors differs from the target"));
    }
    Ok(())
}

pub fn matrix_commutator_certificate(w: &CommutatorWitness<Matrix>) -> Result<Value> {
    Ok(object(
        "commutator",
        None,
        json!({
            "field": field_to_json(w.target.field()),
            "target": matrix_to_json(&w.target),
            "B": matrix_to_json(&w.b),
            "C": matrix_to_json(&w.c),
            "B_inverse": matrix_to_json(&w.b.inverse()?),
            "C_inverse": matrix_to_json(&w.c.inverse()?),
        }),
    ))
}

fn verify_matrix_commutator(v: &Value) -> Result<()> {
    let f = field_from_json(get(v, "field")?)?;
    let read = |k: &str| matrix_from_json(&f, get(v, k)?);
    let (t, b, c, bi, ci) = (read("target")?, read("B")?, read("C")?, read("B_inverse")?, read("C_inverse")?);
    let n = t.rows();
    if [&t, &b, &c, &bi, &ci].iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(invalid("matrices of different shapes"));
    }
    if !b.mul(&bi).is_identity() || !bi.mul(&b).is_identity() {
        return Err(invalid("B_inverse is not the inverse of B"));
    }
    if !c.mul(&ci).is_identity() || !ci.mul(&c).is_identity() {
        return Err(invalid("C_inverse is not the inverse of C"));
    }
    if b.mul(&c).mul(&bi).mul(&ci) != t {
        return Err(invalid("B C B^-1 C^-1 differs from the target"));
    }
    Ok(())
}

// ---------------------------------------------------------------- algebras

pub fn algebra_commutator_certificate(input: &AlgebraInput, w: &CommutatorWitness<Element>) -> Result<Value> {
    let a = &input.algebra;
    Ok(object(
        "algebra-commutator",
        Some(input),
        json!({
            "target": element_to_json(a, &w.target),
            "B": element_to_json(a, &w.b),
            "C": element_to_json(a, &w.c),
            "B_inverse": element_to_json(a, &a.inverse(&w.b)?),
            "C_inverse": element_to_json(a, &a.inverse(&w.c)?),
        }),
    ))
}

fn verify_algebra_commutator(v: &Value) -> Result<()> {
    let input = AlgebraInput::from_json(v)?;
    let a = &input.algebra;
    let read = |k: &str| element_from_json(a, get(v, k)?);
    let (t, b, c, bi, ci) = (read("target")?, read("B")?, read("C")?, read("B_inverse")?, read("C_inverse")?);
    let one = a.one();
    if a.mul(&b, &bi) != one || a.mul(&bi, &b) != one {
        return Err(invalid("B_inverse is not the inverse of B"));
    }
    if a.mul(&c, &ci) != one || a.mul(&ci, &c) != one {
        return Err(invalid("C_inverse is not the inverse of C"));
    }
    if a.mul(&a.mul(&b, &c), &a.mul(&bi, &ci)) != t {
        return Err(invalid("B C B^-1 C^-1 differs from the target"));
    }
    Ok(())
}

pub fn radical_certificate(input: &AlgebraInput, rad: &RadicalData) -> Value {
    object(
        "radical",
        Some(input),
        json!({
            "basis": elements_to_json(&input.algebra, rad.basis()),
            "dim": rad.dim(),
            "nilpotency_index": rad.nilpotency_index(),
        }),
    )
}

fn verify_radical(v: &Value) -> Result<()> {
    let input = AlgebraInput::from_json(v)?;
    let a = &input.algebra;
    let basis = elements_from_json(a, get(v, "basis")?, "basis")?;
    let rad = RadicalData::from_basis(a, basis)?;
    if as_usize(get(v, "dim")?, "dim")? != rad.dim() {
        return Err(invalid("recorded dimension differs from the basis"));
    }
    if as_usize(get(v, "nilpotency_index")?, "nilpotency_index")? != rad.nilpotency_index() {
        return Err(invalid("recorded nilpotency index is wrong"));
    }
    let q = quotient(a, &rad);
    if radical(q.algebra())?.dim() != 0 {
        return Err(invalid("quotient by the recorded ideal is not semisimple"));
    }
    Ok(())
}

fn decomposition_json(s: &Structure) -> Value {
    let a = s.algebra();
    let qa = s.quotient().algebra();
    let w = s.wedderburn();
    let comps: Vec<Value> = w
        .components()
        .iter()
        .map(|c| {
            json!({
                "size": c.size(),
                "field": field_to_json(c.field()),
                "degree_over_base": c.degree_over_base(),
                "idempotent": element_to_json(qa, c.idempotent()),
                "images": c.images().iter().map(matrix_to_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "radical_basis": elements_to_json(a, s.radical().basis()),
        "complement": s.quotient().complement(),
        "components": comps,
        "inverse": matrix_to_json(w.inverse_matrix()),
    })
}

/// Rebuild and check a recorded decomposition: the radical basis spans a
/// nilpotent ideal and the quotient by it is isomorphic, through the
/// recorded maps, to a product of matrix algebras over fields.
fn decomposition_from_json(a: &Algebra, v: &Value) -> Result<(RadicalData, Quotient, WedderburnDecomposition)> {
    let basis = elements_from_json(a, get(v, "radical_basis")?, "radical_basis")?;
    let rad = RadicalData::from_basis(a, basis)?;
    let q = quotient(a, &rad);
    let complement = as_array(get(v, "complement")?, "complement")?
        .iter()
        .map(|x| as_usize(x, "complement"))
        .collect::<Result<Vec<_>>>()?;
    if complement != q.complement() {
        return Err(invalid("complement indices do not match the radical basis"));
    }
    let qa = q.algebra();
    let prime = FiniteField::prime(a.field().characteristic())?;
    let mut comps = Vec::new();
    for (i, cv) in as_array(get(v, "components")?, "components")?.iter().enumerate() {
        let size = as_usize(get(cv, "size")?, "size")?;
        let kf = field_from_json(get(cv, "field")?)?;
        let degree = as_usize(get(cv, "degree_over_base")?, "degree_over_base")?;
        let idem = element_from_json(qa, get(cv, "idempotent")?)?;
        let images = as_array(get(cv, "images")?, "images")?
            .iter()
            .map(|m| matrix_from_json(&kf, m))
            .collect::<Result<Vec<_>>>()?;
        if size == 0 || images.iter().any(|m| m.rows() != size || m.cols() != size) {
            return Err(invalid(format!("component {i}: image shapes")));
        }
        comps.push(Component::new(size, kf, degree, idem, images));
    }
    let inverse = matrix_from_json(&prime, get(v, "inverse")?)?;
    let w = WedderburnDecomposition::from_parts(comps, inverse);
    w.check(qa).map_err(Error::CertificateInvalid)?;
    Ok((rad, q, w))
}

pub fn wedderburn_certificate(input: &AlgebraInput, s: &Structure) -> Value {
    object("wedderburn", Some(input), json!({ "decomposition": decomposition_json(s) }))
}

fn verify_wedderburn(v: &Value) -> Result<()> {
    let input = AlgebraInput::from_json(v)?;
    decomposition_from_json(&input.algebra, get(v, "decomposition")?)?;
    Ok(())
}

fn dets_json(s: &Structure, dets: &[Fe]) -> Value {
    Value::Array(
        s.wedderburn()
            .components()
            .iter()
            .zip(dets)
            .map(|(c, &d)| fe_to_json(c.field(), d))
            .collect(),
    )
}

fn check_dets(a: &Algebra, q: &Quotient, w: &WedderburnDecomposition, alpha: &Element, v: &Value) -> Result<bool> {
    if !a.is_unit(alpha) {
        return Err(invalid("alpha is not a unit"));
    }
    let recorded = as_array(v, "component_dets")?;
    let blocks = w.image(q.algebra(), &q.project(a, alpha));
    if recorded.len() != blocks.len() {
        return Err(invalid("one determinant per component is required"));
    }
    let mut all_one = true;
    for (i, (b, rv)) in blocks.iter().zip(recorded).enumerate() {
        let d = b.det()?;
        if fe_from_json(b.field(), rv)? != d {
            return Err(invalid(format!("determinant of component {i} is wrong")));
        }
        all_one &= d == Fe::ONE;
    }
    Ok(all_one)
}

pub fn derived_certificate(input: &AlgebraInput, s: &Structure, alpha: &Element, cert: &DerivedCertificate) -> Result<Value> {
    Ok(object(
        "derived",
        Some(input),
        json!({
            "alpha": element_to_json(&input.algebra, alpha),
            "alpha_inverse": element_to_json(&input.algebra, &input.algebra.inverse(alpha)?),
            "component_dets": dets_json(s, &cert.component_dets),
            "verdict": cert.verdict,
            "decomposition": decomposition_json(s),
        }),
    ))
}

fn verify_derived(v: &Value) -> Result<()> {
    let input = AlgebraInput::from_json(v)?;
    let a = &input.algebra;
    let (_, q, w) = decomposition_from_json(a, get(v, "decomposition")?)?;
    let alpha = element_from_json(a, get(v, "alpha")?)?;
    let alpha_inv = element_from_json(a, get(v, "alpha_inverse")?)?;
    if a.mul(&alpha, &alpha_inv) != a.one() || a.mul(&alpha_inv, &alpha) != a.one() {
        return Err(invalid("alpha_inverse is not the inverse of alpha"));
    }
    let all_one = check_dets(a, &q, &w, &alpha, get(v, "component_dets")?)?;
    if as_bool(get(v, "verdict")?, "verdict")? != all_one {
        return Err(invalid("verdict does not match the determinants"));
    }
    Ok(())
}

pub fn factor_certificate(input: &AlgebraInput, s: &Structure, fac: &LiftedFactorization) -> Value {
    let a = &input.algebra;
    let factors: Vec<Value> = fac
        .factors(a)
        .iter()
        .map(|(role, u)| json!({ "role": role, "coeffs": element_to_json(a, u.element())["coeffs"], "index": u.index() }))
        .collect();
    object(
        "factor",
        Some(input),
        json!({
            "alpha": element_to_json(a, &fac.target),
            "factors": factors,
            "beta": element_to_json(a, &fac.beta),
            "delta": element_to_json(a, &fac.delta),
            "component_dets": dets_json(s, &fac.component_dets),
            "decomposition": decomposition_json(s),
        }),
    )
}

fn verify_factor(v: &Value) -> Result<()> {
    let input = AlgebraInput::from_json(v)?;
    let a = &input.algebra;
    let (rad, q, w) = decomposition_from_json(a, get(v, "decomposition")?)?;
    let alpha = element_from_json(a, get(v, "alpha")?)?;
    if !check_dets(a, &q, &w, &alpha, get(v, "component_dets")?)? {
        return Err(invalid("alpha is not in the derived subgroup"));
    }
    let roles = ["gamma1", "gamma2", "third"];
    let mut next_role = 0;
    let mut product = a.one();
    let mut third = a.one();
    for (i, fv) in as_array(get(v, "factors")?, "factors")?.iter().enumerate() {
        let role = get(fv, "role")?.as_str().ok_or_else(|| Error::Schema("`role` must be a string".into()))?;
        let pos = roles[next_role..]
            .iter()
            .position(|r| *r == role)
            .ok_or_else(|| invalid(format!("factor {i}: role `{role}` out of order")))?;
        next_role += pos + 1;
        let x = element_from_json(a, fv)?;
        let index = as_usize(get(fv, "index")?, "index")?;
        if !a.check_unipotent_index(&x, index) {
            return Err(invalid(format!("factor {i}: (1 - u)^{index} = 0 with minimal index fails")));
        }
        if role == "third" {
            third = x.clone();
        }
        product = a.mul(&product, &x);
    }
    if product != alpha {
        return Err(invalid("ordered product of factors differs from alpha"));
    }
    let beta = element_from_json(a, get(v, "beta")?)?;
    let delta = element_from_json(a, get(v, "delta")?)?;
    if !rad.contains(a, &delta) {
        return Err(invalid("delta is not in the radical"));
    }
    if a.mul(&third, &beta) != a.add(&a.one(), &delta) {
        return Err(invalid("third * beta differs from 1 + delta"));
    }
    Ok(())
}

pub fn nilfree_certificate(input: &AlgebraInput, seed: u64, r: &NilfreeReport) -> Value {
    let witness = match &r.witness {
        None => Value::Null,
        Some(w) => {
            let source = match &w.kind {
                WitnessKind::PElement { element, order, scalar } => json!({
                    "p_element": element,
                    "order": order,
                    "scalar": fe_to_json(&input.field, *scalar),
                }),
                WitnessKind::MatrixUnit { component } => json!({ "matrix_unit": component }),
            };
            json!({
                "coeffs": element_to_json(&input.algebra, &w.element)["coeffs"],
                "nilpotency_index": w.nilpotency_index,
                "source": source,
            })
        }
    };
    object(
        "nilfree",
        Some(input),
        json!({
            "seed": seed,
            "verdict": r.verdict,
            "abelian": r.abelian,
            "coprime": r.coprime,
            "symmetric": r.symmetric,
            "witness": witness,
        }),
    )
}

fn verify_nilfree(v: &Value) -> Result<()> {
    let input = AlgebraInput::from_json(v)?;
    let a = &input.algebra;
    if let Some(w) = v.get("witness").filter(|w| !w.is_null()) {
        let x = element_from_json(a, w)?;
        let index = as_usize(get(w, "nilpotency_index")?, "nilpotency_index")?;
        if x.is_zero() || a.nilpotency_index(&x) != Some(index) {
            return Err(invalid("witness is not a nonzero nilpotent of the recorded index"));
        }
    }
    let seed = as_u64(get(v, "seed")?, "seed")?;
    let fresh = nilfree_certificate(&input, seed, &nilfree_check(&input.field, &input.group, &input.cocycle, seed)?);
    if &fresh != v {
        return Err(invalid("recorded verdict or witness differs from recomputation"));
    }
    Ok(())
}

pub fn unipotent_radical_certificate(input: &AlgebraInput, rad: &RadicalData, r: &UnitRadicalReport) -> Value {
    object(
        "unipotent-radical",
        Some(input),
        json!({
            "radical_basis": elements_to_json(&input.algebra, rad.basis()),
            "unit_group_order": r.unit_group_order,
            "one_plus_J_order": r.one_plus_j_order,
            "unipotent_count": r.unipotent_count,
            "one_plus_J_unipotent": r.one_plus_j_unipotent,
            "one_plus_J_normal": r.one_plus_j_normal,
            "violations": elements_to_json(&input.algebra, &r.violations),
            "verdict": r.verdict,
        }),
    )
}

fn verify_unipotent_radical(v: &Value) -> Result<()> {
    let input = AlgebraInput::from_json(v)?;
    let rad = radical(&input.algebra)?;
    let caps = Caps { elements: u64::MAX, units: u64::MAX };
    let r = unipotent_radical_check(&input.algebra, &rad, caps)?;
    if r.one_plus_j_order as u64 != crate::unitrad::checked_size(input.field.order(), rad.dim()) {
        return Err(invalid("|1 + J| differs from q^dim J"));
    }
    if &unipotent_radical_certificate(&input, &rad, &r) != v {
        return Err(invalid("recorded counts or verdict differ from recomputation"));
    }
    Ok(())
}

/// Check a certificate produced by this crate; a full CLI report (with a
/// `certificate` key) is accepted as well.
pub fn verify(v: &Value) -> Result<()> {
    let cert = v.get("certificate").unwrap_or(v);
    let kind = get(cert, "kind")?.as_str().ok_or_else(|| Error::Schema("`kind` must be a string".into()))?;
    match kind {
        "sl-factorization" => verify_sl_factorization(cert),
        "commutator" => verify_matrix_commutator(cert),
        "algebra-commutator" => verify_algebra_commutator(cert),
        "radical" => verify_radical(cert),
        "wedderburn" => verify_wedderburn(cert),
        "derived" => verify_derived(cert),
        "factor" => verify_factor(cert),
        "nilfree" => verify_nilfree(cert),
        "unipotent-radical" => verify_unipotent_radical(cert),
        other => Err(Error::Schema(format!("unknown certificate kind `{other}`"))),
    }
}

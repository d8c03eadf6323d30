//! Exhaustive verification, on small algebras, that `1 + J` is the unique
//! maximal normal subgroup of the unit group consisting of unipotents.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::algebra::{Algebra, Element, RadicalData};
use crate::error::{Error, Result};
use crate::gf::Fe;

/// Limits for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest `q^dim` scanned element by element.
    pub elements: u64,
    /// Largest unit group (and largest `1 + J`) enumerated.
    pub units: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { elements: 1_000_000, units: 100_000 }
    }
}

/// `q^exp`, saturating.
pub fn checked_size(q: u32, exp: usize) -> u64 {
    (0..exp).fold(1u64, |acc, _| acc.saturating_mul(q as u64))
}

/// Every element of the algebra, in base-`q` counting order of the
/// coefficient vector (first coordinate most significant).
pub fn all_elements(alg: &Algebra, caps: Caps) -> Result<impl Iterator<Item = Element> + '_> {
    let q = alg.field().order();
    let total = checked_size(q, alg.dim());
    if total > caps.elements {
        return Err(Error::EnumerationCap(total));
    }
    let d = alg.dim();
    Ok((0..total).map(move |mut idx| {
        let mut c = vec![Fe::ZERO; d];
        for slot in c.iter_mut().rev() {
            *slot = Fe::from_index((idx % q as u64) as u32);
            idx /= q as u64;
        }
        Element::new(c)
    }))
}

/// `one_plus_radical`: the elements `1 + j`, `j` in the radical.
pub fn one_plus_radical(alg: &Algebra, rad: &RadicalData, caps: Caps) -> Result<Vec<Element>> {
    let f = alg.field();
    let q = f.order();
    let dim = rad.dim();
    let total = checked_size(q, dim);
    if total > caps.units {
        return Err(Error::EnumerationCap(total));
    }
    let mut out = Vec::with_capacity(total as usize);
    for mut idx in 0..total {
        let mut x = alg.one();
        for b in rad.basis() {
            let c = Fe::from_index((idx % q as u64) as u32);
            idx /= q as u64;
            x = alg.add(&x, &alg.scale(b, c));
        }
        out.push(x);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitRadicalReport {
    pub unit_group_order: usize,
    pub one_plus_j_order: usize,
    pub unipotent_count: usize,
    /// Every element of `1 + J` is unipotent.
    pub one_plus_j_unipotent: bool,
    /// `1 + J` is a subgroup, normal in the unit group.
    pub one_plus_j_normal: bool,
    /// Unipotent units outside `1 + J` whose normal closure consists of
    /// unipotents only; empty when the claim holds.
    pub violations: Vec<Element>,
    pub verdict: bool,
}

/// `unipotent_radical_check`.
pub fn unipotent_radical_check(alg: &Algebra, rad: &RadicalData, caps: Caps) -> Result<UnitRadicalReport> {
    if alg.field().order() < 4 {
        return Err(Error::FieldTooSmall(4));
    }
    let units: Vec<Element> = all_elements(alg, caps)?.filter(|x| alg.is_unit(x)).collect();
    if units.len() as u64 > caps.units {
        return Err(Error::EnumerationCap(units.len() as u64));
    }
    let inverses: Vec<Element> = units.iter().map(|u| alg.inverse(u)).collect::<Result<_>>()?;
    let is_unipotent = |x: &Element| alg.nilpotency_index(&alg.sub(&alg.one(), x)).is_some();
    let in_one_plus_j = |x: &Element| rad.contains(alg, &alg.sub(x, &alg.one()));

    let opj = one_plus_radical(alg, rad, caps)?;
    let one_plus_j_unipotent = opj.iter().all(|x| is_unipotent(x));
    let closed = if opj.len() <= 2000 {
        opj.iter().all(|x| opj.iter().all(|y| in_one_plus_j(&alg.mul(x, y))))
    } else {
        let gens: Vec<Element> = rad.basis().iter().map(|b| alg.add(&alg.one(), b)).collect();
        opj.iter().all(|x| gens.iter().all(|g| in_one_plus_j(&alg.mul(x, g))))
    };
    let normal = units
        .iter()
        .zip(&inverses)
        .all(|(g, gi)| opj.iter().all(|x| in_one_plus_j(&alg.mul(&alg.mul(g, x), gi))));
    let one_plus_j_normal = closed && normal && opj.iter().all(|x| alg.is_unit(x));

    let unipotents: Vec<&Element> = units.iter().filter(|x| is_unipotent(x)).collect();
    let mut violations = Vec::new();
    for u in unipotents.iter().filter(|u| !in_one_plus_j(u)) {
        let class: Vec<Element> = {
            let mut seen = HashSet::new();
            units
                .iter()
                .zip(&inverses)
                .map(|(g, gi)| alg.mul(&alg.mul(g, u), gi))
                .filter(|c| seen.insert(c.clone()))
                .collect()
        };
        if normal_closure_is_unipotent(alg, &class, &is_unipotent) {
            violations.push((*u).clone());
        }
    }
    let verdict = one_plus_j_unipotent && one_plus_j_normal && violations.is_empty();
    Ok(UnitRadicalReport {
        unit_group_order: units.len(),
        one_plus_j_order: opj.len(),
        unipotent_count: unipotents.len(),
        one_plus_j_unipotent,
        one_plus_j_normal,
        violations,
        verdict,
    })
}

/// Breadth-first closure of `{1}` under right multiplication by a
/// conjugacy class, stopping at the first non-unipotent element.
fn normal_closure_is_unipotent(alg: &Algebra, class: &[Element], is_unipotent: &dyn Fn(&Element) -> bool) -> bool {
    let mut seen: HashMap<Element, ()> = HashMap::from([(alg.one(), ())]);
    let mut queue = VecDeque::from([alg.one()]);
    while let Some(x) = queue.pop_front() {
        for c in class {
            let y = alg.mul(&x, c);
            if seen.contains_key(&y) {
                continue;
            }
            if !is_unipotent(&y) {
                return false;
            }
            seen.insert(y.clone(), ());
            queue.push_back(y);
        }
    }
    true
}

//! Deciding whether a twisted group algebra has nonzero nilpotent elements,
//! with an explicit witness when it does.

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::gafact::Structure;
use crate::gf::{Fe, FiniteField};
use crate::group::{FiniteGroup, TwoCocycle};
use crate::matrix::Matrix;

/// How a nilpotent witness was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// `h - r 1` for an element `h` of `p`-power order, where `r` is the
    /// product of `t(h^i, h)` for `0 < i < ord(h)`.
    PElement { element: usize, order: usize, scalar: Fe },
    /// Pull-back of a matrix unit `E_12` from a component of size at least 2.
    MatrixUnit { component: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilWitness {
    pub element: Element,
    pub nilpotency_index: usize,
    pub kind: WitnessKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilfreeReport {
    /// No nonzero nilpotents: `G` abelian, of order prime to `p`, and the
    /// cocycle symmetric.
    pub verdict: bool,
    pub abelian: bool,
    pub coprime: bool,
    pub symmetric: bool,
    pub witness: Option<NilWitness>,
}

/// `nilfree_check`.
pub fn nilfree_check(field: &FiniteField, group: &FiniteGroup, cocycle: &TwoCocycle, seed: u64) -> Result<NilfreeReport> {
    if field.order() <= 2 {
        return Err(Error::HypothesisViolated("the field must have more than two elements".into()));
    }
    if !cocycle.in_prime_subfield() {
        return Err(Error::HypothesisViolated("cocycle values must lie in the prime subfield".into()));
    }
    let alg = Algebra::twisted_group_algebra(field, group, cocycle)?;
    let p = field.characteristic() as usize;
    let abelian = group.is_abelian();
    let coprime = group.order() % p != 0;
    let symmetric = cocycle.is_symmetric();
    let verdict = abelian && coprime && symmetric;
    let witness = if verdict { None } else { Some(find_witness(&alg, group, cocycle, p, seed)?) };
    Ok(NilfreeReport { verdict, abelian, coprime, symmetric, witness })
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn find_witness(alg: &Algebra, group: &FiniteGroup, cocycle: &TwoCocycle, p: usize, seed: u64) -> Result<NilWitness> {
    let f = alg.field();
    let p_element = (0..group.order()).find(|&h| {
        let o = group.element_order(h);
        o > 1 && is_power_of(o, p)
    });
    let (element, kind) = if let Some(h) = p_element {
        let order = group.element_order(h);
        let scalar = (1..order).fold(Fe::ONE, |acc, i| f.mul(acc, cocycle.value(group.pow(h, i), h)));
        let w = alg.sub(&alg.basis(h), &alg.scale(&alg.one(), scalar));
        (w, WitnessKind::PElement { element: h, order, scalar })
    } else {
        let s = Structure::new(alg.clone(), seed)?;
        let comps = s.wedderburn().components();
        let i = comps
            .iter()
            .position(|c| c.size() >= 2)
            .ok_or_else(|| Error::SearchFailed("no matrix component of size at least 2".into()))?;
        let blocks: Vec<Matrix> = comps
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let z = Matrix::zeros(c.field(), c.size(), c.size());
                if j == i {
                    z.with_entry(0, 1, Fe::ONE)
                } else {
                    z
                }
            })
            .collect();
        (s.pull_back(&blocks)?, WitnessKind::MatrixUnit { component: i })
    };
    if element.is_zero() {
        return Err(Error::SearchFailed("witness is zero".into()));
    }
    let nilpotency_index = alg
        .nilpotency_index(&element)
        .ok_or_else(|| Error::SearchFailed("witness is not nilpotent".into()))?;
    Ok(NilWitness { element, nilpotency_index, kind })
}

//! Derived-subgroup membership and factorization into at most three
//! unipotents in the unit group of a finite algebra, computed through the
//! radical, the semisimple quotient and its matrix components.

use crate::algebra::{quotient, radical, Algebra, Element, Quotient, RadicalData, UnipotentElement};
use crate::error::{Error, Result};
use crate::gf::Fe;
use crate::matrix::Matrix;
use crate::slfact::{commutator_witness_index2, scalar_breaker, two_unipotent_factorization, CommutatorWitness};
use crate::wedderburn::{decompose, WedderburnDecomposition};

/// An algebra together with its radical, semisimple quotient and the
/// matrix decomposition of the quotient.
#[derive(Clone, Debug)]
pub struct Structure {
    algebra: Algebra,
    quotient: Quotient,
    wedderburn: WedderburnDecomposition,
    seed: u64,
}

impl Structure {
    pub fn new(algebra: Algebra, seed: u64) -> Result<Self> {
        let rad = radical(&algebra)?;
        let quotient = quotient(&algebra, &rad);
        let wedderburn = decompose(quotient.algebra(), seed)?;
        Ok(Structure { algebra, quotient, wedderburn, seed })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn radical(&self) -> &RadicalData {
        self.quotient.radical()
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn wedderburn(&self) -> &WedderburnDecomposition {
        &self.wedderburn
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Component images of the class of `x` modulo the radical.
    pub fn components_of(&self, x: &Element) -> Vec<Matrix> {
        let q = self.quotient.project(&self.algebra, x);
        self.wedderburn.image(self.quotient.algebra(), &q)
    }

    /// Linear lift of the element of the quotient with the given component
    /// images.
    pub fn pull_back(&self, blocks: &[Matrix]) -> Result<Element> {
        let q = self.wedderburn.preimage(self.quotient.algebra(), blocks)?;
        Ok(self.quotient.lift(&self.algebra, &q))
    }

    fn require_large_field(&self) -> Result<()> {
        if self.algebra.field().order() <= 2 {
            return Err(Error::HypothesisViolated("the field must have more than two elements".into()));
        }
        Ok(())
    }
}

/// Determinants of the component images of a unit; it lies in the derived
/// subgroup exactly when all of them are 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedCertificate {
    pub component_dets: Vec<Fe>,
    pub verdict: bool,
}

/// `derived_membership`.
pub fn derived_membership(s: &Structure, alpha: &Element) -> Result<DerivedCertificate> {
    s.require_large_field()?;
    s.algebra.inverse(alpha)?;
    let dets = s
        .components_of(alpha)
        .iter()
        .map(|b| b.det())
        .collect::<Result<Vec<_>>>()?;
    let verdict = dets.iter().all(|&d| d == Fe::ONE);
    Ok(DerivedCertificate { component_dets: dets, verdict })
}

/// `alpha = gamma1 * gamma2 * third` with `third = (1 + delta) beta^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedFactorization {
    pub target: Element,
    pub gamma1: UnipotentElement,
    pub gamma2: UnipotentElement,
    pub third: UnipotentElement,
    pub beta: Element,
    pub delta: Element,
    pub component_dets: Vec<Fe>,
}

impl LiftedFactorization {
    /// Non-identity factors in product order, with their roles.
    pub fn factors(&self, alg: &Algebra) -> Vec<(&'static str, &UnipotentElement)> {
        [("gamma1", &self.gamma1), ("gamma2", &self.gamma2), ("third", &self.third)]
            .into_iter()
            .filter(|(_, f)| f.element() != &alg.one())
            .collect()
    }

    /// Recheck every identity of the factorization; `Err` names the first
    /// one that fails.
    pub fn check(&self, alg: &Algebra, rad: &RadicalData) -> std::result::Result<(), String> {
        for (name, f) in [("gamma1", &self.gamma1), ("gamma2", &self.gamma2), ("third", &self.third)] {
            if !alg.check_unipotent_index(f.element(), f.index()) {
                return Err(format!("{name} is not unipotent of the recorded index"));
            }
        }
        let prod = alg.mul(&alg.mul(self.gamma1.element(), self.gamma2.element()), self.third.element());
        if prod != self.target {
            return Err("gamma1 * gamma2 * third differs from the target".into());
        }
        if !rad.contains(alg, &self.delta) {
            return Err("delta is not in the radical".into());
        }
        let lhs = alg.mul(self.third.element(), &self.beta);
        if lhs != alg.add(&alg.one(), &self.delta) {
            return Err("third * beta differs from 1 + delta".into());
        }
        Ok(())
    }
}

/// `factor_three_unipotents`.
pub fn factor_three_unipotents(s: &Structure, alpha: &Element) -> Result<LiftedFactorization> {
    let cert = derived_membership(s, alpha)?;
    if !cert.verdict {
        return Err(Error::NotInDerived);
    }
    let alg = &s.algebra;
    let mut g1 = Vec::new();
    let mut g2 = Vec::new();
    let mut br = Vec::new();
    for (block, comp) in s.components_of(alpha).iter().zip(s.wedderburn.components()) {
        let n = comp.size();
        let id = Matrix::identity(comp.field(), n);
        let b = if !block.is_identity() && block.is_scalar().is_some() {
            scalar_breaker(comp.field(), n)
        } else {
            id.clone()
        };
        let fac = two_unipotent_factorization(&block.mul(&b))?;
        let mut parts = fac.factors().iter().map(|c| c.matrix().clone());
        g1.push(parts.next().unwrap_or_else(|| id.clone()));
        g2.push(parts.next().unwrap_or_else(|| id.clone()));
        br.push(b);
    }
    let certify = |x: Element| -> Result<UnipotentElement> {
        alg.unipotent_certificate(&x)
            .ok_or_else(|| Error::SearchFailed("lifted factor is not unipotent".into()))
    };
    let gamma1 = certify(s.pull_back(&g1)?)?;
    let gamma2 = certify(s.pull_back(&g2)?)?;
    let beta = s.pull_back(&br)?;
    let beta_inv = certify(alg.inverse(&beta)?)?;
    let rest = alg.mul(
        &alg.mul(&alg.inverse(gamma2.element())?, &alg.inverse(gamma1.element())?),
        &alg.mul(alpha, &beta),
    );
    let delta = alg.sub(&rest, &alg.one());
    let third = unipotent_absorb(alg, s.radical(), &beta_inv, &delta)?;
    let out = LiftedFactorization {
        target: alpha.clone(),
        gamma1,
        gamma2,
        third,
        beta,
        delta,
        component_dets: cert.component_dets,
    };
    out.check(alg, s.radical()).map_err(Error::CertificateInvalid)?;
    Ok(out)
}

/// `unipotent_absorb`: `(1 + y) x` for `x` unipotent of index `m1` and `y`
/// in a radical of nilpotency index `m2`; the result has index at most
/// `m1 * m2`.
pub fn unipotent_absorb(
    alg: &Algebra,
    rad: &RadicalData,
    x: &UnipotentElement,
    y: &Element,
) -> Result<UnipotentElement> {
    if !rad.contains(alg, y) {
        return Err(Error::NotInRadical);
    }
    if !alg.check_unipotent_index(x.element(), x.index()) {
        return Err(Error::NotUnipotent);
    }
    let z = alg.mul(&alg.add(&alg.one(), y), x.element());
    let cert = alg.unipotent_certificate(&z).ok_or(Error::NotUnipotent)?;
    if cert.index() > x.index() * rad.nilpotency_index() {
        return Err(Error::CertificateInvalid("index exceeds the product bound".into()));
    }
    Ok(cert)
}

impl CommutatorWitness<Element> {
    pub fn verify(&self, alg: &Algebra) -> bool {
        [&self.b, &self.c, &self.target].iter().all(|x| x.coeffs().len() == alg.dim())
            && alg.commutator(&self.b, &self.c).map(|c| c == self.target).unwrap_or(false)
    }
}

/// `index2_commutator_semisimple`: componentwise commutator witnesses
/// pulled back through the decomposition.
pub fn index2_commutator_semisimple(s: &Structure, u: &Element) -> Result<CommutatorWitness<Element>> {
    if s.radical().dim() != 0 {
        return Err(Error::NotSemisimple);
    }
    if s.algebra.field().order() < 3 {
        return Err(Error::FieldTooSmall(3));
    }
    let cert = s.algebra.unipotent_certificate(u).ok_or(Error::NotUnipotent)?;
    if cert.index() > 2 {
        return Err(Error::IndexTooHigh(cert.index()));
    }
    let mut bs = Vec::new();
    let mut cs = Vec::new();
    for block in s.components_of(u) {
        let w = commutator_witness_index2(&block)?;
        bs.push(w.b);
        cs.push(w.c);
    }
    let w = CommutatorWitness { b: s.pull_back(&bs)?, c: s.pull_back(&cs)?, target: u.clone() };
    if !w.verify(&s.algebra) {
        return Err(Error::CertificateInvalid("commutator does not reproduce the target".into()));
    }
    Ok(w)
}

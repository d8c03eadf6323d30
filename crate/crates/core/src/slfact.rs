//! Factorizations in `SL_n(GF(q))`: transvection products, products of two
//! or three unipotents, and commutator witnesses for index-2 unipotents.

use crate::error::{Error, Result};
use crate::gf::Fe;
use crate::matrix::{Matrix, UnipotentCertificate};

/// Largest matrix size accepted by the operations in this module.
pub const MAX_MATRIX_DIM: usize = 16;

/// Budget of candidate vectors for the two-unipotent search.
const SEARCH_BUDGET: usize = 1_000_000;

/// An ordered list of certified unipotent factors whose product is `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentFactorization {
    target: Matrix,
    factors: Vec<UnipotentCertificate>,
}

impl UnipotentFactorization {
    /// Certify each factor and check the product.
    pub fn new(target: Matrix, factors: Vec<Matrix>) -> Result<Self> {
        let mut certs = Vec::with_capacity(factors.len());
        for f in factors {
            certs.push(f.is_unipotent()?.ok_or(Error::NotUnipotent)?);
        }
        let out = UnipotentFactorization { target, factors: certs };
        if !out.verify() {
            return Err(Error::CertificateInvalid("product of factors differs from target".into()));
        }
        Ok(out)
    }

    pub fn target(&self) -> &Matrix {
        &self.target
    }

    pub fn factors(&self) -> &[UnipotentCertificate] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self) -> Matrix {
        let n = self.target.rows();
        self.factors
            .iter()
            .fold(Matrix::identity(self.target.field(), n), |acc, f| acc.mul(f.matrix()))
    }

    /// Every certificate holds and the ordered product equals the target.
    pub fn verify(&self) -> bool {
        self.factors.iter().all(|f| {
            f.matrix().field() == self.target.field()
                && f.matrix().rows() == self.target.rows()
                && f.matrix().cols() == self.target.cols()
                && f.verify()
        }) && self.product() == self.target
    }
}

/// `B`, `C` with `B C B^-1 C^-1 = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorWitness<T> {
    pub b: T,
    pub c: T,
    pub target: T,
}

impl CommutatorWitness<Matrix> {
    pub fn verify(&self) -> bool {
        let shapes_ok = [&self.b, &self.c].iter().all(|m| {
            m.field() == self.target.field() && m.rows() == self.target.rows() && m.cols() == self.target.cols()
        });
        if !shapes_ok || !self.target.is_square() {
            return false;
        }
        match (self.b.inverse(), self.c.inverse()) {
            (Ok(bi), Ok(ci)) => self.b.mul(&self.c).mul(&bi).mul(&ci) == self.target,
            _ => false,
        }
    }
}

fn check_square(a: &Matrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare);
    }
    if a.rows() > MAX_MATRIX_DIM {
        return Err(Error::DimensionCap(a.rows()));
    }
    Ok(())
}

fn require_q3(a: &Matrix) -> Result<()> {
    if a.field().order() < 3 {
        return Err(Error::FieldTooSmall(3));
    }
    Ok(())
}

fn require_sl(a: &Matrix) -> Result<()> {
    if a.det()? != Fe::ONE {
        return Err(Error::NotSL);
    }
    Ok(())
}

/// `is_sl`. Over GF(2) membership in `SL_n` does not imply membership in
/// the derived subgroup of `GL_n` (for `n = 2`).
pub fn is_sl(a: &Matrix) -> Result<bool> {
    check_square(a)?;
    let d = a.det()?;
    if d.is_zero() {
        return Err(Error::Singular);
    }
    Ok(d == Fe::ONE)
}

/// The elementary transvection `I + c e_ij`.
pub fn transvection(field: &crate::gf::FiniteField, n: usize, i: usize, j: usize, c: Fe) -> Matrix {
    Matrix::identity(field, n).with_entry(i, j, c)
}

/// `transvection_factorization`: Gauss-Jordan elimination by row
/// transvections only; at most `n^2 + n` factors.
pub fn transvection_factorization(a: &Matrix) -> Result<UnipotentFactorization> {
    check_square(a)?;
    require_sl(a)?;
    let f = a.field().clone();
    let n = a.rows();
    let mut m = a.clone();
    // row operations `R_dst += c R_src`, in order of application
    let mut ops: Vec<(usize, usize, Fe)> = Vec::new();
    let mut apply = |m: &mut Matrix, dst: usize, src: usize, c: Fe| {
        m.add_row_multiple(dst, src, c);
        ops.push((dst, src, c));
    };
    for j in 0..n {
        let pivot = m.get(j, j);
        if pivot != Fe::ONE {
            if let Some(i) = (j + 1..n).find(|&i| !m.get(i, j).is_zero()) {
                let c = f.div(f.sub(Fe::ONE, pivot), m.get(i, j))?;
                apply(&mut m, j, i, c);
            } else if j + 1 < n {
                apply(&mut m, j + 1, j, Fe::ONE);
                let c = f.div(f.sub(Fe::ONE, pivot), m.get(j + 1, j))?;
                apply(&mut m, j, j + 1, c);
            }
        }
        debug_assert_eq!(m.get(j, j), Fe::ONE);
        for i in 0..n {
            let v = m.get(i, j);
            if i != j && !v.is_zero() {
                apply(&mut m, i, j, f.neg(v));
            }
        }
    }
    debug_assert!(m.is_identity());
    debug_assert!(ops.len() <= n * n + n);
    // E_k ... E_1 A = I, so A = E_1^-1 ... E_k^-1
    let factors = ops.iter().map(|&(dst, src, c)| transvection(&f, n, dst, src, f.neg(c))).collect();
    UnipotentFactorization::new(a.clone(), factors)
}

/// Unit-diagonal `L U` split, if every leading principal minor is 1.
fn unit_lu(m: &Matrix) -> Option<(Matrix, Matrix)> {
    let f = m.field();
    let n = m.rows();
    let mut l = Matrix::identity(f, n);
    let mut u = Matrix::zeros(f, n, n);
    for i in 0..n {
        for k in i..n {
            let s = (0..i).fold(Fe::ZERO, |acc, j| f.add(acc, f.mul(l.get(i, j), u.get(j, k))));
            u.set(i, k, f.sub(m.get(i, k), s));
        }
        if u.get(i, i) != Fe::ONE {
            return None;
        }
        for k in i + 1..n {
            let s = (0..i).fold(Fe::ZERO, |acc, j| f.add(acc, f.mul(l.get(k, j), u.get(j, i))));
            l.set(k, i, f.sub(m.get(k, i), s));
        }
    }
    Some((l, u))
}

fn next_vector(v: &mut [Fe], q: u32) -> bool {
    for x in v.iter_mut().rev() {
        if x.index() + 1 < q {
            *x = Fe::from_index(x.index() + 1);
            return true;
        }
        *x = Fe::ZERO;
    }
    false
}

/// An invertible `X` such that `X^-1 m X` has every leading principal minor
/// equal to 1, found by lexicographic search with backtracking.
fn adapt(m: &Matrix, budget: &mut usize) -> Result<Option<Matrix>> {
    let f = m.field().clone();
    let n = m.rows();
    if unit_lu(m).is_some() {
        return Ok(Some(Matrix::identity(&f, n)));
    }
    if m.is_scalar().is_some() {
        return Ok(None);
    }
    let mut v = vec![Fe::ZERO; n];
    while next_vector(&mut v, f.order()) {
        if *budget == 0 {
            return Err(Error::SearchFailed("two-unipotent search budget exhausted".into()));
        }
        *budget -= 1;
        let mv = m.mul_vec(&v);
        if Matrix::from_columns(&f, n, &[v.clone(), mv.clone()]).rank() < 2 {
            continue;
        }
        let e2: Vec<Fe> = mv.iter().zip(&v).map(|(&a, &b)| f.sub(a, b)).collect();
        let mut cols = vec![v.clone(), e2];
        for i in 0..n {
            if cols.len() == n {
                break;
            }
            let mut trial = cols.clone();
            trial.push(Matrix::identity(&f, n).column(i));
            if Matrix::from_columns(&f, n, &trial).rank() == trial.len() {
                cols = trial;
            }
        }
        let x = Matrix::from_columns(&f, n, &cols);
        let conj = x.inverse()?.mul(m).mul(&x);
        debug_assert_eq!(conj.get(0, 0), Fe::ONE);
        // Schur complement of the (1,1) entry
        let mut schur = Matrix::zeros(&f, n - 1, n - 1);
        for i in 1..n {
            for j in 1..n {
                schur.set(i - 1, j - 1, f.sub(conj.get(i, j), f.mul(conj.get(i, 0), conj.get(0, j))));
            }
        }
        if let Some(y) = adapt(&schur, budget)? {
            let lifted = Matrix::block_diag(&f, &[Matrix::identity(&f, 1), y]);
            return Ok(Some(x.mul(&lifted)));
        }
    }
    Ok(None)
}

/// `two_unipotent_factorization` for `A` in `SL_n` nonscalar or the
/// identity, `q >= 3`.
pub fn two_unipotent_factorization(a: &Matrix) -> Result<UnipotentFactorization> {
    check_square(a)?;
    require_q3(a)?;
    require_sl(a)?;
    if a.is_identity() {
        return UnipotentFactorization::new(a.clone(), vec![]);
    }
    if a.is_scalar().is_some() {
        return Err(Error::CentralNonIdentity);
    }
    if a.is_unipotent()?.is_some() {
        return UnipotentFactorization::new(a.clone(), vec![a.clone()]);
    }
    let mut budget = SEARCH_BUDGET;
    let x = adapt(a, &mut budget)?
        .ok_or_else(|| Error::SearchFailed("no basis with unit leading minors".into()))?;
    let xi = x.inverse()?;
    let (l, u) = unit_lu(&xi.mul(a).mul(&x)).expect("adapted basis has unit minors");
    let factors: Vec<Matrix> = [l, u]
        .iter()
        .map(|t| x.mul(t).mul(&xi))
        .filter(|t| !t.is_identity())
        .collect();
    UnipotentFactorization::new(a.clone(), factors)
}

/// `[[1,1],[0,1]] ⊕ I_{n-2}`.
pub fn scalar_breaker(field: &crate::gf::FiniteField, n: usize) -> Matrix {
    Matrix::identity(field, n).with_entry(0, 1, Fe::ONE)
}

/// `three_unipotent_factorization`: central non-identity matrices are
/// multiplied by [`scalar_breaker`] first, whose inverse becomes the last
/// factor.
pub fn three_unipotent_factorization(a: &Matrix) -> Result<UnipotentFactorization> {
    check_square(a)?;
    require_q3(a)?;
    require_sl(a)?;
    if a.is_identity() || a.is_scalar().is_none() {
        return two_unipotent_factorization(a);
    }
    let f = a.field();
    let b = scalar_breaker(f, a.rows());
    let binv = b.inverse()?;
    let head = two_unipotent_factorization(&a.mul(&b))?;
    let mut factors: Vec<Matrix> = head.factors().iter().map(|c| c.matrix().clone()).collect();
    factors.push(binv);
    UnipotentFactorization::new(a.clone(), factors)
}

/// `commutator_witness_index2`: `A` unipotent of index at most 2 is
/// conjugated to `I + E` with `E = [[0, I_r], [0, 0]] ⊕ 0`; there
/// `B = diag(a I_r, I)` and `C = I + (a-1)^-1 E` for a scalar `a ∉ {0, 1}`.
pub fn commutator_witness_index2(a: &Matrix) -> Result<CommutatorWitness<Matrix>> {
    check_square(a)?;
    require_q3(a)?;
    let cert = a.is_unipotent()?.ok_or(Error::NotUnipotent)?;
    if cert.index() > 2 {
        return Err(Error::IndexTooHigh(cert.index()));
    }
    let f = a.field().clone();
    let n = a.rows();
    if cert.index() == 1 {
        let id = Matrix::identity(&f, n);
        return Ok(CommutatorWitness { b: id.clone(), c: id, target: a.clone() });
    }
    let nil = a.sub(&Matrix::identity(&f, n));
    let rref = nil.rref();
    let r = rref.rank;
    let w: Vec<Vec<Fe>> = rref.pivots.iter().map(|&p| Matrix::identity(&f, n).column(p)).collect();
    let u: Vec<Vec<Fe>> = w.iter().map(|x| nil.mul_vec(x)).collect();
    let mut ker_basis = u.clone();
    for k in nil.kernel() {
        let mut trial = ker_basis.clone();
        trial.push(k);
        if Matrix::from_columns(&f, n, &trial).rank() == trial.len() {
            ker_basis = trial;
        }
    }
    let mut cols = u;
    cols.extend(w);
    cols.extend(ker_basis.into_iter().skip(r));
    let x = Matrix::from_columns(&f, n, &cols);
    let xi = x.inverse()?;

    let scalar = f.nonunit_scalar()?;
    let mut diag = vec![scalar; r];
    diag.resize(n, Fe::ONE);
    let b0 = Matrix::diag(&f, &diag);
    let shift = f.inv(f.sub(scalar, Fe::ONE))?;
    let mut c0 = Matrix::identity(&f, n);
    for i in 0..r {
        c0.set(i, r + i, shift);
    }
    let witness = CommutatorWitness { b: x.mul(&b0).mul(&xi), c: x.mul(&c0).mul(&xi), target: a.clone() };
    if !witness.verify() {
        return Err(Error::CertificateInvalid("commutator does not reproduce the target".into()));
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FiniteField;

    fn gf(p: u32, k: u32) -> FiniteField {
        FiniteField::new(p, k).unwrap()
    }

    #[test]
    fn is_sl_examples() {
        let f3 = gf(3, 1);
        assert!(is_sl(&Matrix::identity(&f3, 3)).unwrap());
        assert!(is_sl(&Matrix::from_ints(&gf(2, 1), &[&[1, 1], &[0, 1]])).unwrap());
        assert!(!is_sl(&Matrix::from_ints(&f3, &[&[2, 0], &[0, 1]])).unwrap());
        assert_eq!(is_sl(&Matrix::zeros(&f3, 2, 2)), Err(Error::Singular));
    }

    #[test]
    fn transvection_examples() {
        let f5 = gf(5, 1);
        assert!(transvection_factorization(&Matrix::identity(&f5, 3)).unwrap().is_empty());
        let t = Matrix::from_ints(&f5, &[&[1, 3], &[0, 1]]);
        let fac = transvection_factorization(&t).unwrap();
        assert_eq!(fac.len(), 1);
        assert_eq!(fac.factors()[0].matrix(), &t);
        let f3 = gf(3, 1);
        let a = Matrix::from_ints(&f3, &[&[0, 1], &[2, 0]]);
        let fac = transvection_factorization(&a).unwrap();
        assert!(fac.verify() && fac.len() <= 6);
        assert!(fac.factors().iter().all(|c| c.index() == 2));
        assert_eq!(
            transvection_factorization(&Matrix::from_ints(&f3, &[&[2, 0], &[0, 1]])),
            Err(Error::NotSL)
        );
    }

    #[test]
    fn two_unipotent_examples() {
        let f5 = gf(5, 1);
        assert!(two_unipotent_factorization(&Matrix::identity(&f5, 2)).unwrap().is_empty());
        let j = Matrix::from_ints(&f5, &[&[1, 1], &[0, 1]]);
        assert_eq!(two_unipotent_factorization(&j).unwrap().len(), 1);
        let d = Matrix::from_ints(&f5, &[&[2, 0], &[0, 3]]);
        let fac = two_unipotent_factorization(&d).unwrap();
        assert_eq!(fac.len(), 2);
        assert!(fac.verify());
        assert_eq!(
            two_unipotent_factorization(&Matrix::scalar(&f5, 2, Fe::from_index(4))),
            Err(Error::CentralNonIdentity)
        );
        assert_eq!(
            two_unipotent_factorization(&Matrix::identity(&gf(2, 1), 2)),
            Err(Error::FieldTooSmall(3))
        );
    }

    #[test]
    fn three_unipotent_examples() {
        let f3 = gf(3, 1);
        let two = Matrix::scalar(&f3, 2, Fe::from_index(2));
        let fac = three_unipotent_factorization(&two).unwrap();
        assert_eq!(fac.len(), 3);
        assert!(three_unipotent_factorization(&Matrix::identity(&f3, 2)).unwrap().is_empty());
        let a = Matrix::from_ints(&f3, &[&[0, 1], &[2, 0]]);
        assert!(three_unipotent_factorization(&a).unwrap().len() <= 2);
    }

    #[test]
    fn commutator_examples() {
        let f3 = gf(3, 1);
        let i = Matrix::identity(&f3, 2);
        let w = commutator_witness_index2(&i).unwrap();
        assert!(w.b.is_identity() && w.c.is_identity());
        let j = Matrix::from_ints(&f3, &[&[1, 1], &[0, 1]]);
        let w = commutator_witness_index2(&j).unwrap();
        assert_eq!(w.b, Matrix::from_ints(&f3, &[&[2, 0], &[0, 1]]));
        assert_eq!(w.c, j);
        let j3 = Matrix::from_ints(&f3, &[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        assert_eq!(commutator_witness_index2(&j3), Err(Error::IndexTooHigh(3)));
    }

    #[test]
    fn larger_dimensions() {
        let f4 = gf(2, 2);
        let mut a = Matrix::identity(&f4, 5);
        for i in 0..5 {
            for j in 0..5 {
                a.set(i, j, Fe::from_index(((i * 3 + j * 7 + i * j) % 4) as u32));
            }
        }
        if let Ok(d) = a.det() {
            if !d.is_zero() {
                let fix = Matrix::diag(&f4, &[f4.inv(d).unwrap(), Fe::ONE, Fe::ONE, Fe::ONE, Fe::ONE]);
                let s = fix.mul(&a);
                assert!(transvection_factorization(&s).unwrap().verify());
                assert!(three_unipotent_factorization(&s).unwrap().len() <= 3);
            }
        }
    }
}

//! Finite-dimensional associative algebras given by structure constants,
//! twisted group algebras in particular, together with the Jacobson
//! radical and the semisimple quotient.

use crate::error::{Error, Result};
use crate::gf::{Fe, FiniteField};
use crate::group::{FiniteGroup, TwoCocycle};
use crate::matrix::Matrix;

/// Largest algebra dimension accepted.
pub const MAX_ALGEBRA_DIM: usize = 64;

/// Coordinates of an algebra element in the algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element(Vec<Fe>);

impl Element {
    pub fn new(coeffs: Vec<Fe>) -> Self {
        Element(coeffs)
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    pub fn with_coeff(&self, i: usize, c: Fe) -> Element {
        let mut v = self.0.clone();
        v[i] = c;
        Element(v)
    }
}

#[derive(Clone, Debug)]
enum Products {
    /// `b_i b_j = coef[i*d+j] * b_{target[i*d+j]}`
    Monomial { target: Vec<usize>, coef: Vec<Fe> },
    /// `b_i b_j = sum_k table[(i*d+j)*d+k] b_k`
    Dense(Vec<Fe>),
}

/// An associative unital algebra over a finite field.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: FiniteField,
    dim: usize,
    products: Products,
    one: Element,
}

/// An algebra element `u` together with the verified index `k`:
/// `(1 - u)^k = 0`, `(1 - u)^(k-1) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentElement {
    element: Element,
    index: usize,
}

impl UnipotentElement {
    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn index(&self) -> usize {
        self.index
    }
}

impl Algebra {
    /// `algebra_make`: the twisted group algebra `F^t G` with
    /// `g·h = t(g,h) gh` on the basis indexed by group elements.
    pub fn twisted_group_algebra(field: &FiniteField, group: &FiniteGroup, cocycle: &TwoCocycle) -> Result<Self> {
        if cocycle.field() != field {
            return Err(Error::FieldMismatch);
        }
        let d = group.order();
        if d > MAX_ALGEBRA_DIM {
            return Err(Error::DimensionCap(d));
        }
        let mut target = Vec::with_capacity(d * d);
        let mut coef = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                target.push(group.mul(i, j));
                coef.push(cocycle.value(i, j));
            }
        }
        let mut one = vec![Fe::ZERO; d];
        one[group.identity()] = Fe::ONE;
        Ok(Algebra { field: field.clone(), dim: d, products: Products::Monomial { target, coef }, one: Element(one) })
    }

    /// The untwisted group algebra `FG`.
    pub fn group_algebra(field: &FiniteField, group: &FiniteGroup) -> Result<Self> {
        Self::twisted_group_algebra(field, group, &TwoCocycle::trivial(group, field))
    }

    /// Algebra from a dense structure-constant table
    /// `table[(i*dim+j)*dim+k]` and an identity element.
    pub fn from_structure_constants(field: &FiniteField, dim: usize, table: Vec<Fe>, one: Element) -> Result<Self> {
        if table.len() != dim * dim * dim || one.0.len() != dim {
            return Err(Error::DimensionMismatch("structure constant table".into()));
        }
        Ok(Algebra { field: field.clone(), dim, products: Products::Dense(table), one })
    }

    #[inline]
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> Element {
        self.one.clone()
    }

    pub fn zero(&self) -> Element {
        Element(vec![Fe::ZERO; self.dim])
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut v = vec![Fe::ZERO; self.dim];
        v[i] = Fe::ONE;
        Element(v)
    }

    /// Index of the unit when it is a basis vector.
    pub fn unit_index(&self) -> Option<usize> {
        let s = self.one.support();
        (s.len() == 1 && self.one.0[s[0]] == Fe::ONE).then(|| s[0])
    }

    pub fn element(&self, coeffs: Vec<Fe>) -> Result<Element> {
        if coeffs.len() != self.dim {
            return Err(Error::DimensionMismatch(format!("expected {} coefficients", self.dim)));
        }
        if coeffs.iter().any(|&c| !self.field.contains(c)) {
            return Err(Error::InvalidElement);
        }
        Ok(Element(coeffs))
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        Element(a.0.iter().zip(&b.0).map(|(&x, &y)| self.field.add(x, y)).collect())
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        Element(a.0.iter().zip(&b.0).map(|(&x, &y)| self.field.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &Element) -> Element {
        Element(a.0.iter().map(|&x| self.field.neg(x)).collect())
    }

    pub fn scale(&self, a: &Element, c: Fe) -> Element {
        Element(a.0.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    /// `elem_mul`.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let f = &self.field;
        let d = self.dim;
        let mut out = vec![Fe::ZERO; d];
        match &self.products {
            Products::Monomial { target, coef } => {
                for (i, &x) in a.0.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, &y) in b.0.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let idx = i * d + j;
                        let t = target[idx];
                        out[t] = f.add(out[t], f.mul(f.mul(x, y), coef[idx]));
                    }
                }
            }
            Products::Dense(table) => {
                for (i, &x) in a.0.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, &y) in b.0.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let xy = f.mul(x, y);
                        let row = &table[(i * d + j) * d..(i * d + j + 1) * d];
                        for (o, &c) in out.iter_mut().zip(row) {
                            if !c.is_zero() {
                                *o = f.add(*o, f.mul(xy, c));
                            }
                        }
                    }
                }
            }
        }
        Element(out)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        self.mul(&self.basis(i), &self.basis(j))
    }

    pub fn pow(&self, a: &Element, mut e: u64) -> Element {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Result<Element> {
        let ai = self.inverse(a)?;
        let bi = self.inverse(b)?;
        Ok(self.mul(&self.mul(a, b), &self.mul(&ai, &bi)))
    }

    /// `regular_representation`: the matrix of `x -> a x`.
    pub fn regular_representation(&self, a: &Element) -> Matrix {
        let cols: Vec<Vec<Fe>> = (0..self.dim).map(|j| self.mul(a, &self.basis(j)).0).collect();
        Matrix::from_columns(&self.field, self.dim, &cols)
    }

    /// The matrix of `x -> x a`.
    pub fn right_representation(&self, a: &Element) -> Matrix {
        let cols: Vec<Vec<Fe>> = (0..self.dim).map(|j| self.mul(&self.basis(j), a).0).collect();
        Matrix::from_columns(&self.field, self.dim, &cols)
    }

    /// `elem_inv`: solves `L_a x = 1` and checks both sides.
    pub fn inverse(&self, a: &Element) -> Result<Element> {
        let l = self.regular_representation(a);
        let x = l.solve(&self.one.0).ok_or(Error::NotAUnit)?;
        let x = Element(x);
        if self.mul(&x, a) != self.one || self.mul(a, &x) != self.one {
            return Err(Error::NotAUnit);
        }
        Ok(x)
    }

    pub fn is_unit(&self, a: &Element) -> bool {
        self.regular_representation(a).det().map(|d| !d.is_zero()).unwrap_or(false)
    }

    /// `is_nilpotent`: the least `m` with `a^m = 0`, if any. Decided first by
    /// repeated squaring up to `a^(2^s)`, `2^s >= dim`.
    pub fn nilpotency_index(&self, a: &Element) -> Option<usize> {
        let mut sq = a.clone();
        let mut reach = 1usize;
        while reach < self.dim.max(1) && !sq.is_zero() {
            sq = self.mul(&sq, &sq);
            reach *= 2;
        }
        if !sq.is_zero() {
            return None;
        }
        let mut power = a.clone();
        let mut m = 1;
        while !power.is_zero() {
            power = self.mul(&power, a);
            m += 1;
        }
        Some(m)
    }

    /// `is_unipotent_alg`.
    pub fn unipotent_certificate(&self, u: &Element) -> Option<UnipotentElement> {
        let n = self.sub(&self.one, u);
        self.nilpotency_index(&n).map(|index| UnipotentElement { element: u.clone(), index })
    }

    /// Recheck a claimed unipotency index.
    pub fn check_unipotent_index(&self, u: &Element, index: usize) -> bool {
        if index == 0 {
            return false;
        }
        let n = self.sub(&self.one, u);
        let before = self.pow(&n, index as u64 - 1);
        !before.is_zero() && self.mul(&before, &n).is_zero()
    }

    /// Monic minimal polynomial (low-to-high) of `x` inside the corner
    /// algebra with identity `unit`; `x` must satisfy `x = unit x`.
    pub fn minimal_polynomial(&self, x: &Element, unit: &Element) -> Vec<Fe> {
        let f = &self.field;
        let mut powers: Vec<Vec<Fe>> = vec![unit.0.clone()];
        loop {
            let next = self.mul(x, &Element(powers.last().unwrap().clone()));
            let m = Matrix::from_columns(f, self.dim, &powers);
            if let Some(c) = m.solve(&next.0) {
                let mut poly: Vec<Fe> = c.iter().map(|&v| f.neg(v)).collect();
                poly.push(Fe::ONE);
                return poly;
            }
            powers.push(next.0);
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// The same ring viewed as an algebra over the prime field: basis
    /// `x^a b_s` at index `s*k + a`.
    pub fn restrict_to_prime(&self) -> Algebra {
        let k = self.field.degree() as usize;
        let p = self.field.characteristic();
        let prime = FiniteField::prime(p).expect("characteristic is prime");
        if k == 1 {
            let mut a = self.clone();
            a.field = prime;
            return a;
        }
        let n = self.dim * k;
        let gen_pows: Vec<Fe> = (0..2 * k)
            .map(|a| self.field.pow(self.field.from_coeffs(&[0, 1]).unwrap(), a as u64))
            .collect();
        let mut table = vec![Fe::ZERO; n * n * n];
        for s in 0..self.dim {
            for t in 0..self.dim {
                let prod = self.basis_product(s, t);
                for a in 0..k {
                    for c in 0..k {
                        let scalar = gen_pows[a + c];
                        let row = (s * k + a) * n + (t * k + c);
                        for (u, &coef) in prod.0.iter().enumerate() {
                            if coef.is_zero() {
                                continue;
                            }
                            let v = self.field.coeffs(self.field.mul(scalar, coef));
                            for (b, &digit) in v.iter().enumerate() {
                                table[row * n + u * k + b] = Fe::from_index(digit);
                            }
                        }
                    }
                }
            }
        }
        let one = Element(self.to_prime_coords(&self.one));
        Algebra { field: prime, dim: n, products: Products::Dense(table), one }
    }

    /// Prime-field coordinates of an element (see [`Algebra::restrict_to_prime`]).
    pub fn to_prime_coords(&self, a: &Element) -> Vec<Fe> {
        let k = self.field.degree() as usize;
        if k == 1 {
            return a.0.clone();
        }
        a.0.iter()
            .flat_map(|&c| self.field.coeffs(c).into_iter().map(Fe::from_index))
            .collect()
    }

    pub fn from_prime_coords(&self, v: &[Fe]) -> Element {
        let k = self.field.degree() as usize;
        if k == 1 {
            return Element(v.to_vec());
        }
        Element(
            v.chunks(k)
                .map(|c| {
                    let digits: Vec<u32> = c.iter().map(|x| x.index()).collect();
                    self.field.from_coeffs(&digits).expect("digits below p")
                })
                .collect(),
        )
    }

    /// Column order that puts the unit's coordinate last, so that an
    /// echelon basis of a proper ideal never pivots on it.
    fn unit_last_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.dim).collect();
        if let Some(u) = self.unit_index() {
            order.retain(|&i| i != u);
            order.push(u);
        }
        order
    }
}

/// Reduced echelon basis of a subspace of an algebra.
#[derive(Clone, Debug)]
pub struct EchelonSpace {
    rows: Vec<Element>,
    pivots: Vec<usize>,
}

impl EchelonSpace {
    pub(crate) fn build(alg: &Algebra, vectors: &[Element]) -> Self {
        let order = alg.unit_last_order();
        let f = alg.field();
        let d = alg.dim();
        if vectors.is_empty() {
            return EchelonSpace { rows: vec![], pivots: vec![] };
        }
        let data: Vec<Fe> = vectors.iter().flat_map(|v| order.iter().map(|&i| v.0[i])).collect();
        let m = Matrix::new(f, vectors.len(), d, data).expect("entries in field");
        let (r, piv) = m.row_echelon();
        let rows = (0..piv.len())
            .map(|i| {
                let mut v = vec![Fe::ZERO; d];
                for (c, &orig) in order.iter().enumerate() {
                    v[orig] = r.get(i, c);
                }
                Element(v)
            })
            .collect();
        EchelonSpace { rows, pivots: piv.iter().map(|&c| order[c]).collect() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Element] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `x` after clearing every pivot coordinate.
    pub fn reduce(&self, alg: &Algebra, x: &Element) -> Element {
        let f = alg.field();
        let mut v = x.0.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                for (o, &r) in v.iter_mut().zip(&row.0) {
                    *o = f.sub(*o, f.mul(c, r));
                }
            }
        }
        Element(v)
    }

    pub fn contains(&self, alg: &Algebra, x: &Element) -> bool {
        self.reduce(alg, x).is_zero()
    }
}

/// The Jacobson radical of an algebra.
#[derive(Clone, Debug)]
pub struct RadicalData {
    space: EchelonSpace,
    nilpotency_index: usize,
}

impl RadicalData {
    pub fn basis(&self) -> &[Element] {
        self.space.basis()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Least `m` with `J^m = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency_index
    }

    pub fn contains(&self, alg: &Algebra, x: &Element) -> bool {
        self.space.contains(alg, x)
    }

    pub fn space(&self) -> &EchelonSpace {
        &self.space
    }
}

/// `p`-adic trace functional: `Tr(A~^(p^i)) / p^i mod p` for an integer
/// lift `A~` of `a`.
fn padic_trace_functional(a: &Matrix, p: u64, i: u32) -> Fe {
    let n = a.rows();
    let modulus = p.pow(i + 1);
    let lift: Vec<u64> = a.entries().iter().map(|x| x.index() as u64).collect();
    let mul = |x: &[u64], y: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; n * n];
        for r in 0..n {
            for l in 0..n {
                let v = x[r * n + l];
                if v == 0 {
                    continue;
                }
                for c in 0..n {
                    out[r * n + c] = (out[r * n + c] + v * y[l * n + c]) % modulus;
                }
            }
        }
        out
    };
    let mut result: Vec<u64> = (0..n * n).map(|k| u64::from(k % (n + 1) == 0)).collect();
    let mut base = lift;
    let mut e = p.pow(i);
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    let tr = (0..n).fold(0u64, |acc, k| (acc + result[k * n + k]) % modulus);
    debug_assert_eq!(tr % p.pow(i), 0, "trace not divisible on the previous ideal");
    Fe::from_index(((tr / p.pow(i)) % p) as u32)
}

/// Span of products `x*y` for `x` in `left`, `y` in `right`.
fn product_space(alg: &Algebra, left: &[Element], right: &[Element]) -> EchelonSpace {
    let prods: Vec<Element> = left.iter().flat_map(|x| right.iter().map(move |y| alg.mul(x, y))).collect();
    EchelonSpace::build(alg, &prods)
}

/// `radical`: the Jacobson radical.
///
/// Works over the prime field on the regular representation: starting
/// from `I_{-1} = A`, each step keeps the elements `a` of the previous
/// ideal with `g_i(a b) = 0` for every basis element `b`, where `g_i` is the
/// p-power trace functional of [`padic_trace_functional`]; after
/// `floor(log_p N)` steps what remains is the radical. The result is then
/// checked to be a two-sided nilpotent ideal.
pub fn radical(alg: &Algebra) -> Result<RadicalData> {
    let ap = alg.restrict_to_prime();
    let n = ap.dim();
    let p = alg.field().characteristic() as u64;
    let prime = ap.field().clone();

    let mut steps = 0u32;
    while p.pow(steps + 1) <= n as u64 {
        steps += 1;
    }

    let mut ideal: Vec<Element> = (0..n).map(|i| ap.basis(i)).collect();
    for i in 0..=steps {
        if ideal.is_empty() {
            break;
        }
        // g[s][t] = g_i(a_s b_t)
        let mut g = Matrix::zeros(&prime, ideal.len(), n);
        for (s, a) in ideal.iter().enumerate() {
            for t in 0..n {
                let x = ap.mul(a, &ap.basis(t));
                let val = if i == 0 {
                    let l = ap.regular_representation(&x);
                    (0..n).fold(Fe::ZERO, |acc, k| prime.add(acc, l.get(k, k)))
                } else {
                    padic_trace_functional(&ap.regular_representation(&x), p, i)
                };
                g.set(s, t, val);
            }
        }
        let combos = g.transpose().kernel();
        ideal = combos
            .iter()
            .map(|c| {
                let mut v = vec![Fe::ZERO; n];
                for (coef, a) in c.iter().zip(&ideal) {
                    if !coef.is_zero() {
                        for (o, &x) in v.iter_mut().zip(&a.0) {
                            *o = prime.add(*o, prime.mul(*coef, x));
                        }
                    }
                }
                Element(v)
            })
            .collect();
    }

    let over_base: Vec<Element> = ideal.iter().map(|v| alg.from_prime_coords(&v.0)).collect();
    let space = EchelonSpace::build(alg, &over_base);
    if space.dim() * alg.field().degree() as usize != ideal.len() {
        return Err(Error::SearchFailed("radical is not a subspace over the base field".into()));
    }

    let nilpotency_index = nilpotent_ideal_index(alg, &space)?;
    Ok(RadicalData { space, nilpotency_index })
}

/// Least `m` with `I^m = 0` for a two-sided ideal `I`; fails if `space` is
/// not a two-sided ideal or not nilpotent.
fn nilpotent_ideal_index(alg: &Algebra, space: &EchelonSpace) -> Result<usize> {
    for j in space.basis() {
        for i in 0..alg.dim() {
            let b = alg.basis(i);
            if !space.contains(alg, &alg.mul(j, &b)) || !space.contains(alg, &alg.mul(&b, j)) {
                return Err(Error::CertificateInvalid("radical basis does not span a two-sided ideal".into()));
            }
        }
    }
    let mut power = space.clone();
    let mut m = 1;
    while power.dim() > 0 {
        if m > alg.dim() + 1 {
            return Err(Error::CertificateInvalid("radical basis does not span a nilpotent ideal".into()));
        }
        power = product_space(alg, power.basis(), space.basis());
        m += 1;
    }
    Ok(m)
}

impl RadicalData {
    /// Accept a recorded basis: it must be in the canonical reduced echelon
    /// form and span a nilpotent two-sided ideal. Maximality is not checked
    /// here; it follows once the quotient is shown to be semisimple.
    pub fn from_basis(alg: &Algebra, basis: Vec<Element>) -> Result<Self> {
        if basis.iter().any(|b| b.coeffs().len() != alg.dim()) {
            return Err(Error::DimensionMismatch("radical basis vector length".into()));
        }
        let space = EchelonSpace::build(alg, &basis);
        if space.basis() != basis.as_slice() {
            return Err(Error::CertificateInvalid("radical basis is not in canonical echelon form".into()));
        }
        let nilpotency_index = nilpotent_ideal_index(alg, &space)?;
        Ok(RadicalData { space, nilpotency_index })
    }
}

/// The semisimple quotient `A/J` on the complement of the radical's pivot
/// coordinates, with the projection and the linear section.
#[derive(Clone, Debug)]
pub struct Quotient {
    algebra: Algebra,
    complement: Vec<usize>,
    radical: RadicalData,
}

impl Quotient {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// Indices of the basis vectors of `A` that form the quotient basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn radical(&self) -> &RadicalData {
        &self.radical
    }

    pub fn project(&self, parent: &Algebra, x: &Element) -> Element {
        let r = self.radical.space.reduce(parent, x);
        Element(self.complement.iter().map(|&i| r.0[i]).collect())
    }

    pub fn lift(&self, parent: &Algebra, y: &Element) -> Element {
        let mut v = vec![Fe::ZERO; parent.dim()];
        for (&i, &c) in self.complement.iter().zip(&y.0) {
            v[i] = c;
        }
        Element(v)
    }
}

/// `quotient`.
pub fn quotient(alg: &Algebra, radical: &RadicalData) -> Quotient {
    let d = alg.dim();
    let complement: Vec<usize> = (0..d).filter(|i| !radical.space.pivots().contains(i)).collect();
    let m = complement.len();
    let mut table = vec![Fe::ZERO; m * m * m];
    let proj = |x: &Element| -> Vec<Fe> {
        let r = radical.space.reduce(alg, x);
        complement.iter().map(|&i| r.0[i]).collect()
    };
    for (s, &i) in complement.iter().enumerate() {
        for (t, &j) in complement.iter().enumerate() {
            let v = proj(&alg.basis_product(i, j));
            table[(s * m + t) * m..(s * m + t + 1) * m].copy_from_slice(&v);
        }
    }
    let one = Element(proj(&alg.one()));
    let algebra = Algebra::from_structure_constants(alg.field(), m, table, one).expect("consistent sizes");
    Quotient { algebra, complement, radical: radical.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(p: u32, k: u32, g: &str) -> Algebra {
        let f = FiniteField::new(p, k).unwrap();
        let g = FiniteGroup::catalog(g).unwrap();
        Algebra::group_algebra(&f, &g).unwrap()
    }

    #[test]
    fn algebra_make_examples() {
        let a = setup(3, 1, "C2");
        assert_eq!(a.dim(), 2);
        assert_eq!(a.basis_product(1, 1), a.one());
        let b = setup(2, 2, "C2");
        assert_eq!(b.field().characteristic(), 2);

        let f3 = FiniteField::prime(3).unwrap();
        let v4 = FiniteGroup::catalog("C2xC2").unwrap();
        let bil: Vec<Vec<Fe>> = (0..4)
            .map(|x| (0..4).map(|y| if (x & 1) == 1 && (y & 2) == 2 { Fe::from_index(2) } else { Fe::ONE }).collect())
            .collect();
        let tau = TwoCocycle::from_values(&v4, &f3, &bil).unwrap();
        let tw = Algebra::twisted_group_algebra(&f3, &v4, &tau).unwrap();
        for g in 0..4 {
            for h in 0..4 {
                assert_eq!(tw.basis_product(g, h), tw.scale(&tw.basis(v4.mul(g, h)), tau.value(g, h)));
            }
        }
        let f5 = FiniteField::prime(5).unwrap();
        assert_eq!(
            Algebra::twisted_group_algebra(&f5, &v4, &tau).unwrap_err(),
            Error::FieldMismatch
        );
    }

    #[test]
    fn inverse_and_units() {
        let a = setup(2, 2, "C2");
        let x = a.add(&a.one(), &a.basis(1));
        assert_eq!(a.inverse(&x), Err(Error::NotAUnit));
        assert_eq!(a.nilpotency_index(&x), Some(2));
        assert!(a.nilpotency_index(&a.zero()).is_some());
        assert_eq!(a.unipotent_certificate(&a.one()).unwrap().index(), 1);

        let s3 = setup(3, 1, "S3");
        let f = s3.field().clone();
        let mut seed = 7u32;
        let mut found = 0;
        while found < 5 {
            seed = seed.wrapping_mul(1103515245).wrapping_add(12345);
            let c: Vec<Fe> = (0..6).map(|i| f.from_int(((seed >> (3 * i)) % 3) as i64)).collect();
            let x = Element::new(c);
            if let Ok(inv) = s3.inverse(&x) {
                assert_eq!(s3.mul(&x, &inv), s3.one());
                found += 1;
            }
        }
    }

    #[test]
    fn regular_representation_is_homomorphism() {
        let a = setup(5, 1, "C2");
        assert!(a.regular_representation(&a.one()).is_identity());
        let g = a.regular_representation(&a.basis(1));
        assert!(!g.is_identity() && g.mul(&g).is_identity());
        let s3 = setup(3, 2, "S3");
        for i in 0..6 {
            for j in 0..6 {
                let x = s3.add(&s3.basis(i), &s3.scale(&s3.basis(j), Fe::from_index(5)));
                let y = s3.add(&s3.basis(j), &s3.basis((i + 1) % 6));
                assert_eq!(
                    s3.regular_representation(&s3.mul(&x, &y)),
                    s3.regular_representation(&x).mul(&s3.regular_representation(&y))
                );
            }
        }
    }

    #[test]
    fn restriction_round_trip() {
        let a = setup(3, 2, "S3");
        let ap = a.restrict_to_prime();
        assert_eq!(ap.dim(), 12);
        let f = a.field().clone();
        let x = Element::new((0..6).map(|i| Fe::from_index((i * 5 + 2) % f.order())).collect());
        let y = Element::new((0..6).map(|i| Fe::from_index((i * 7 + 1) % f.order())).collect());
        let prod = ap.mul(&Element::new(a.to_prime_coords(&x)), &Element::new(a.to_prime_coords(&y)));
        assert_eq!(a.from_prime_coords(prod.coeffs()), a.mul(&x, &y));
        assert_eq!(ap.one().coeffs(), a.to_prime_coords(&a.one()).as_slice());
    }

    #[test]
    fn radical_examples() {
        assert_eq!(radical(&setup(5, 1, "S3")).unwrap().dim(), 0);

        let c3 = setup(3, 1, "C3");
        let j = radical(&c3).unwrap();
        assert_eq!(j.dim(), 2);
        let g1 = c3.sub(&c3.basis(1), &c3.one());
        let g2 = c3.sub(&c3.basis(2), &c3.one());
        assert!(j.contains(&c3, &g1) && j.contains(&c3, &g2));
        assert_eq!(j.nilpotency_index(), 3);

        let c2 = setup(2, 2, "C2");
        let j = radical(&c2).unwrap();
        assert_eq!(j.dim(), 1);
        assert_eq!(j.nilpotency_index(), 2);
    }

    #[test]
    fn radical_non_split_cases() {
        // char 3, S3: only trivial and sign simples, so dim J = 6 - 2
        assert_eq!(radical(&setup(3, 1, "S3")).unwrap().dim(), 4);
        // char 2, S3: M2 block plus a 2-dim block with 1-dim radical
        assert_eq!(radical(&setup(2, 1, "S3")).unwrap().dim(), 1);
        assert_eq!(radical(&setup(2, 2, "S3")).unwrap().dim(), 1);
        // char 2, C6 = C2 x C3
        assert_eq!(radical(&setup(2, 1, "C6")).unwrap().dim(), 3);
        // 2-groups in char 2
        for g in ["C4", "C2xC2", "D4", "Q8", "C8"] {
            let a = setup(2, 1, g);
            assert_eq!(radical(&a).unwrap().dim(), a.dim() - 1, "{g}");
        }
    }

    #[test]
    fn quotient_examples() {
        let c5 = setup(5, 1, "C4");
        let j = radical(&c5).unwrap();
        let q = quotient(&c5, &j);
        assert_eq!(q.algebra().dim(), 4);
        let x = c5.add(&c5.basis(1), &c5.basis(3));
        assert_eq!(q.project(&c5, &x), x);

        let c3 = setup(3, 1, "C3");
        let j = radical(&c3).unwrap();
        let q = quotient(&c3, &j);
        assert_eq!(q.algebra().dim(), 1);
        assert_eq!(q.lift(&c3, &q.algebra().one()), c3.one());
        assert_eq!(radical(q.algebra()).unwrap().dim(), 0);

        let s3 = setup(3, 1, "S3");
        let j = radical(&s3).unwrap();
        let q = quotient(&s3, &j);
        assert_eq!(radical(q.algebra()).unwrap().dim(), 0);
        // projection is multiplicative
        for i in 0..6 {
            for k in 0..6 {
                let lhs = q.project(&s3, &s3.basis_product(i, k));
                let rhs = q.algebra().mul(&q.project(&s3, &s3.basis(i)), &q.project(&s3, &s3.basis(k)));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

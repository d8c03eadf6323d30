//! Explicit Wedderburn decomposition of a semisimple algebra over a finite
//! field into matrix algebras `M_n(K)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{radical, Algebra, Element, EchelonSpace};
use crate::error::{Error, Result};
use crate::gf::{Fe, FiniteField};
use crate::matrix::Matrix;

const SEARCH_ATTEMPTS: usize = 400;

/// One simple component `M_n(K)`.
#[derive(Clone, Debug)]
pub struct Component {
    size: usize,
    field: FiniteField,
    degree_over_base: usize,
    idempotent: Element,
    images: Vec<Matrix>,
}

impl Component {
    pub fn new(size: usize, field: FiniteField, degree_over_base: usize, idempotent: Element, images: Vec<Matrix>) -> Self {
        Component { size, field, degree_over_base, idempotent, images }
    }

    /// Matrix size `n`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// The field `K`, an extension of the prime field.
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// `[K : F]` for the algebra's base field `F`.
    pub fn degree_over_base(&self) -> usize {
        self.degree_over_base
    }

    /// Central primitive idempotent.
    pub fn idempotent(&self) -> &Element {
        &self.idempotent
    }

    /// Images of the prime-field basis of the algebra.
    pub fn images(&self) -> &[Matrix] {
        &self.images
    }
}

/// `A ≅ M_{n_1}(K_1) × … × M_{n_r}(K_r)` as explicit prime-field-linear
/// maps in both directions.
#[derive(Clone, Debug)]
pub struct WedderburnDecomposition {
    components: Vec<Component>,
    inverse: Matrix,
}

fn flatten_block(m: &Matrix) -> Vec<Fe> {
    let k = m.field().degree() as usize;
    let mut out = Vec::with_capacity(m.rows() * m.cols() * k);
    for &x in m.entries() {
        out.extend(m.field().coeffs(x).into_iter().map(Fe::from_index));
        out.resize(out.len() + k - m.field().coeffs(x).len(), Fe::ZERO);
    }
    out
}

fn linear_combination(field: &FiniteField, mats: &[Matrix], coeffs: &[Fe], n: usize) -> Matrix {
    let mut acc = Matrix::zeros(field, n, n);
    for (c, m) in coeffs.iter().zip(mats) {
        if !c.is_zero() {
            acc = acc.add(&m.scale(*c));
        }
    }
    acc
}

impl WedderburnDecomposition {
    pub fn from_parts(components: Vec<Component>, inverse: Matrix) -> Self {
        WedderburnDecomposition { components, inverse }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Prime-field matrix taking flattened component images back to
    /// prime-field coordinates of the algebra.
    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inverse
    }

    /// Image of `x` in every component.
    pub fn image(&self, alg: &Algebra, x: &Element) -> Vec<Matrix> {
        let c = alg.to_prime_coords(x);
        self.components
            .iter()
            .map(|comp| linear_combination(&comp.field, &comp.images, &c, comp.size))
            .collect()
    }

    /// The element with the given component images.
    pub fn preimage(&self, alg: &Algebra, blocks: &[Matrix]) -> Result<Element> {
        if blocks.len() != self.components.len() {
            return Err(Error::DimensionMismatch("one block per component".into()));
        }
        let mut flat = Vec::with_capacity(self.inverse.cols());
        for (b, comp) in blocks.iter().zip(&self.components) {
            if b.field() != &comp.field || b.rows() != comp.size || b.cols() != comp.size {
                return Err(Error::DimensionMismatch("block shape or field".into()));
            }
            flat.extend(flatten_block(b));
        }
        Ok(alg.from_prime_coords(&self.inverse.mul_vec(&flat)))
    }

    fn forward_matrix(&self, n: usize) -> Matrix {
        let prime = self.inverse.field().clone();
        let cols: Vec<Vec<Fe>> = (0..n)
            .map(|r| self.components.iter().flat_map(|c| flatten_block(&c.images[r])).collect())
            .collect();
        Matrix::from_columns(&prime, n, &cols)
    }

    /// Recheck every structural claim: dimension count, bijectivity,
    /// multiplicativity on all basis pairs, unit and idempotents.
    pub fn check(&self, alg: &Algebra) -> std::result::Result<(), String> {
        let sp = alg.restrict_to_prime();
        let n = sp.dim();
        let p = alg.field().characteristic();
        let k = alg.field().degree() as usize;
        let mut total = 0;
        let mut total_base = 0;
        for (i, c) in self.components.iter().enumerate() {
            let m = c.field.degree() as usize;
            if c.field.characteristic() != p || m % k != 0 || c.degree_over_base * k != m {
                return Err(format!("component {i}: field degree"));
            }
            if c.images.len() != n
                || c.images.iter().any(|x| x.rows() != c.size || x.cols() != c.size || x.field() != &c.field)
            {
                return Err(format!("component {i}: image shapes"));
            }
            total += c.size * c.size * m;
            total_base += c.size * c.size * c.degree_over_base;
        }
        if total != n || total_base != alg.dim() {
            return Err("dimension count".into());
        }
        if self.inverse.rows() != n || self.inverse.cols() != n || self.inverse.field().degree() != 1 {
            return Err("inverse shape".into());
        }
        let fwd = self.forward_matrix(n);
        if !fwd.mul(&self.inverse).is_identity() || !self.inverse.mul(&fwd).is_identity() {
            return Err("inverse does not invert the forward map".into());
        }
        let one = sp.one();
        for (i, c) in self.components.iter().enumerate() {
            let img = linear_combination(&c.field, &c.images, one.coeffs(), c.size);
            if !img.is_identity() {
                return Err(format!("component {i}: unit not mapped to identity"));
            }
        }
        for r in 0..n {
            for t in 0..n {
                let prod = sp.basis_product(r, t);
                for (i, c) in self.components.iter().enumerate() {
                    let lhs = linear_combination(&c.field, &c.images, prod.coeffs(), c.size);
                    if lhs != c.images[r].mul(&c.images[t]) {
                        return Err(format!("component {i}: not multiplicative on basis pair ({r}, {t})"));
                    }
                }
            }
        }
        let mut sum = alg.zero();
        for (i, c) in self.components.iter().enumerate() {
            if c.idempotent.coeffs().len() != alg.dim() {
                return Err(format!("idempotent {i}: length"));
            }
            let img = self.image(alg, &c.idempotent);
            for (j, b) in img.iter().enumerate() {
                if (i == j && !b.is_identity()) || (i != j && !b.is_zero()) {
                    return Err(format!("idempotent {i}: image in component {j}"));
                }
            }
            for (j, d) in self.components.iter().enumerate() {
                let prod = alg.mul(&c.idempotent, &d.idempotent);
                let expect = if i == j { c.idempotent.clone() } else { alg.zero() };
                if prod != expect {
                    return Err(format!("idempotents {i}, {j} not orthogonal"));
                }
            }
            sum = alg.add(&sum, &c.idempotent);
        }
        if sum != alg.one() {
            return Err("idempotents do not sum to one".into());
        }
        Ok(())
    }
}

/// All roots of `poly` (low-to-high, coefficients in the prime subfield or
/// in `field`) in `field`, in ascending element order.
fn roots(field: &FiniteField, poly: &[Fe]) -> Vec<Fe> {
    field
        .elements()
        .filter(|&x| poly.iter().rev().fold(Fe::ZERO, |acc, &c| field.add(field.mul(acc, x), c)).is_zero())
        .collect()
}

fn echelon_rows(alg: &Algebra, vectors: &[Element]) -> Vec<Element> {
    EchelonSpace::build(alg, vectors).basis().to_vec()
}

/// Left inverse of a full-column-rank matrix.
fn left_inverse(w: &Matrix) -> Matrix {
    let r = w.rref();
    debug_assert_eq!(r.rank, w.cols());
    let rows: Vec<Vec<Fe>> = (0..w.cols()).map(|i| r.transform.row(i).to_vec()).collect();
    Matrix::from_rows(w.field(), &rows).expect("rows from transform")
}

/// `wedderburn`: decomposition of a semisimple algebra; rejects algebras
/// with a nonzero radical.
pub fn wedderburn(alg: &Algebra, seed: u64) -> Result<WedderburnDecomposition> {
    if radical(alg)?.dim() != 0 {
        return Err(Error::NotSemisimple);
    }
    decompose(alg, seed)
}

/// Decomposition without the radical precheck. The result is verified by
/// [`WedderburnDecomposition::check`] before it is returned.
pub(crate) fn decompose(alg: &Algebra, seed: u64) -> Result<WedderburnDecomposition> {
    let sp = alg.restrict_to_prime();
    let n = sp.dim();
    let fp = sp.field().clone();
    let p = fp.characteristic();
    let k = alg.field().degree() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis: Vec<Element> = (0..n).map(|r| sp.basis(r)).collect();

    // centre: x with x b = b x for the base-field basis
    let mut eqs = Matrix::zeros(&fp, alg.dim() * n, n);
    for s in 0..alg.dim() {
        let b = &basis[s * k];
        for (r, e) in basis.iter().enumerate() {
            let c = sp.sub(&sp.mul(e, b), &sp.mul(b, e));
            for (w, &v) in c.coeffs().iter().enumerate() {
                eqs.set(s * n + w, r, v);
            }
        }
    }
    let centre: Vec<Element> = eqs.kernel().into_iter().map(Element::new).collect();

    // split the unit along the subalgebra fixed by Frobenius
    let frob_cols: Vec<Vec<Fe>> = centre
        .iter()
        .map(|z| sp.sub(&sp.pow(z, p as u64), z).into_coeffs())
        .collect();
    let fixed: Vec<Element> = if centre.is_empty() {
        vec![]
    } else {
        Matrix::from_columns(&fp, n, &frob_cols)
            .kernel()
            .into_iter()
            .map(|c| {
                centre.iter().zip(&c).fold(sp.zero(), |acc, (z, &x)| sp.add(&acc, &sp.scale(z, x)))
            })
            .collect()
    };
    let mut idems = vec![sp.one()];
    for b in &fixed {
        let mut next = Vec::new();
        for e in idems {
            let x = sp.mul(b, &e);
            let rts = roots(&fp, &sp.minimal_polynomial(&x, &e));
            if rts.len() <= 1 {
                next.push(e);
                continue;
            }
            for &l in &rts {
                let mut y = e.clone();
                for &mu in rts.iter().filter(|&&mu| mu != l) {
                    let factor = sp.scale(&sp.sub(&x, &sp.scale(&e, mu)), fp.inv(fp.sub(l, mu))?);
                    y = sp.mul(&y, &factor);
                }
                next.push(y);
            }
        }
        idems = next;
    }

    let mut components = Vec::with_capacity(idems.len());
    for e in &idems {
        components.push(split_block(&sp, &basis, &centre, e, k, &mut rng, alg)?);
    }

    let mut w = WedderburnDecomposition { components, inverse: Matrix::identity(&fp, n) };
    w.inverse = w.forward_matrix(n).inverse().map_err(|_| Error::NotSemisimple)?;
    w.check(alg).map_err(|_| Error::NotSemisimple)?;
    Ok(w)
}

fn split_block(
    sp: &Algebra,
    basis: &[Element],
    centre: &[Element],
    e: &Element,
    k: usize,
    rng: &mut ChaCha8Rng,
    alg: &Algebra,
) -> Result<Component> {
    let fp = sp.field().clone();
    let p = fp.characteristic();
    let n = sp.dim();

    let zi = echelon_rows(sp, &centre.iter().map(|z| sp.mul(e, z)).collect::<Vec<_>>());
    let m = zi.len();
    let spanning: Vec<Element> = basis.iter().map(|b| sp.mul(e, b)).collect();
    let block_dim = EchelonSpace::build(sp, &spanning).dim();
    let nsq = block_dim / m;
    let size = (nsq as f64).sqrt().round() as usize;
    if m == 0 || size * size != nsq || nsq * m != block_dim || m % k != 0 {
        return Err(Error::NotSemisimple);
    }
    let kf = FiniteField::new(p, m as u32)?;

    // a generator of the block centre over the prime field
    let mut gen = None;
    for attempt in 0..SEARCH_ATTEMPTS + zi.len() {
        let z = if attempt < zi.len() {
            zi[attempt].clone()
        } else {
            zi.iter().fold(sp.zero(), |acc, v| {
                sp.add(&acc, &sp.scale(v, Fe::from_index(rng.gen_range(0..p))))
            })
        };
        let mp = sp.minimal_polynomial(&z, e);
        if mp.len() == m + 1 {
            gen = Some((z, mp));
            break;
        }
    }
    let (z, mp) = gen.ok_or_else(|| Error::SearchFailed("no generator of the block centre".into()))?;
    let rho = *roots(&kf, &mp).first().ok_or_else(|| Error::SearchFailed("minimal polynomial has no root".into()))?;
    let mut zpow = vec![e.clone()];
    for _ in 1..m {
        zpow.push(sp.mul(&z, zpow.last().unwrap()));
    }
    let rho_pow: Vec<Fe> = (0..m).map(|j| kf.pow(rho, j as u64)).collect();

    // a basis of the block over its centre, starting with e
    let mut chosen = vec![e.clone()];
    let mut spanned: Vec<Element> = zpow.clone();
    for cand in &spanning {
        if spanned.len() == block_dim {
            break;
        }
        if EchelonSpace::build(sp, &spanned).contains(sp, cand) {
            continue;
        }
        spanned.extend(zpow.iter().map(|zj| sp.mul(zj, cand)));
        chosen.push(cand.clone());
    }
    let cols: Vec<Vec<Fe>> = chosen
        .iter()
        .flat_map(|s| zpow.iter().map(move |zj| sp.mul(zj, s).into_coeffs()))
        .collect();
    let w = Matrix::from_columns(&fp, n, &cols);
    if w.rank() != block_dim || chosen.len() != nsq {
        return Err(Error::NotSemisimple);
    }
    let winv = left_inverse(&w);
    let kcoords = |x: &Element| -> Vec<Fe> {
        let c = winv.mul_vec(x.coeffs());
        c.chunks(m)
            .map(|chunk| {
                chunk.iter().zip(&rho_pow).fold(Fe::ZERO, |acc, (&a, &r)| kf.add(acc, kf.mul(a, r)))
            })
            .collect()
    };

    let images: Vec<Matrix> = if size == 1 {
        spanning.iter().map(|x| Matrix::scalar(&kf, 1, kcoords(x)[0])).collect()
    } else {
        let mut table = vec![Fe::ZERO; nsq * nsq * nsq];
        for (u, su) in chosen.iter().enumerate() {
            for (v, sv) in chosen.iter().enumerate() {
                let c = kcoords(&sp.mul(su, sv));
                table[(u * nsq + v) * nsq..(u * nsq + v + 1) * nsq].copy_from_slice(&c);
            }
        }
        let ak = Algebra::from_structure_constants(&kf, nsq, table, Element::new(kcoords(e)))?;
        let reps = simple_module(&ak, size, rng)?;
        spanning
            .iter()
            .map(|x| linear_combination(&kf, &reps, &kcoords(x), size))
            .collect()
    };

    Ok(Component {
        size,
        field: kf,
        degree_over_base: m / k,
        idempotent: alg.from_prime_coords(e.coeffs()),
        images,
    })
}

/// Matrices of the basis of a central simple `K`-algebra `≅ M_n(K)` acting
/// on a simple left module found from a rank-one element.
fn simple_module(ak: &Algebra, size: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Matrix>> {
    let kf = ak.field().clone();
    let nsq = ak.dim();
    let one = ak.one();
    for _ in 0..SEARCH_ATTEMPTS {
        let a = Element::new((0..nsq).map(|_| Fe::from_index(rng.gen_range(0..kf.order()))).collect());
        let mp = ak.minimal_polynomial(&a, &one);
        for lambda in roots(&kf, &mp) {
            let shifted = ak.sub(&a, &ak.scale(&one, lambda));
            let ker = ak.regular_representation(&shifted).kernel();
            if ker.len() != size {
                continue;
            }
            let y = Element::new(ker[0].clone());
            let mut vs: Vec<Vec<Fe>> = Vec::new();
            for u in 0..nsq {
                let v = ak.mul(&ak.basis(u), &y).into_coeffs();
                let mut trial = vs.clone();
                trial.push(v);
                if Matrix::from_columns(&kf, nsq, &trial).rank() == trial.len() {
                    vs = trial;
                }
                if vs.len() == size {
                    break;
                }
            }
            if vs.len() != size {
                continue;
            }
            let vmat = Matrix::from_columns(&kf, nsq, &vs);
            let vinv = left_inverse(&vmat);
            let reps = (0..nsq)
                .map(|u| {
                    let cols: Vec<Vec<Fe>> =
                        vs.iter().map(|v| vinv.mul_vec(ak.mul(&ak.basis(u), &Element::new(v.clone())).coeffs())).collect();
                    Matrix::from_columns(&kf, size, &cols)
                })
                .collect();
            return Ok(reps);
        }
    }
    Err(Error::SearchFailed("no rank-one element found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quotient;
    use crate::group::{FiniteGroup, TwoCocycle};

    fn group_algebra(p: u32, k: u32, g: &str) -> Algebra {
        let f = FiniteField::new(p, k).unwrap();
        Algebra::group_algebra(&f, &FiniteGroup::catalog(g).unwrap()).unwrap()
    }

    fn shape(w: &WedderburnDecomposition) -> Vec<(usize, u32)> {
        let mut s: Vec<_> = w.components().iter().map(|c| (c.size(), c.field().order())).collect();
        s.sort();
        s
    }

    #[test]
    fn wedderburn_examples() {
        let a = group_algebra(5, 1, "C4");
        let w = wedderburn(&a, 0).unwrap();
        assert_eq!(shape(&w), vec![(1, 5); 4]);

        let a = group_algebra(2, 1, "C3");
        let w = wedderburn(&a, 0).unwrap();
        assert_eq!(shape(&w), vec![(1, 2), (1, 4)]);

        let a = group_algebra(3, 1, "S3");
        let q = quotient(&a, &radical(&a).unwrap());
        let w = wedderburn(q.algebra(), 0).unwrap();
        assert_eq!(shape(&w), vec![(1, 3), (1, 3)]);

        assert_eq!(wedderburn(&a, 0).unwrap_err(), Error::NotSemisimple);
    }

    #[test]
    fn matrix_blocks() {
        let w = wedderburn(&group_algebra(5, 1, "S3"), 0).unwrap();
        assert_eq!(shape(&w), vec![(1, 5), (1, 5), (2, 5)]);
        let w = wedderburn(&group_algebra(3, 1, "Q8"), 0).unwrap();
        assert_eq!(shape(&w), vec![(1, 3), (1, 3), (1, 3), (1, 3), (2, 3)]);
        let w = wedderburn(&group_algebra(3, 2, "D4"), 0).unwrap();
        assert_eq!(shape(&w), vec![(1, 9), (1, 9), (1, 9), (1, 9), (2, 9)]);
        // the 2-dim simple of C3 over GF(2) stays a field over GF(4) scalars
        let w = wedderburn(&group_algebra(2, 2, "C3"), 0).unwrap();
        assert_eq!(shape(&w), vec![(1, 4), (1, 4), (1, 4)]);
        for c in w.components() {
            assert_eq!(c.degree_over_base(), 1);
        }
    }

    #[test]
    fn sign_component_ordering() {
        let a = group_algebra(5, 1, "C2");
        let w = wedderburn(&a, 0).unwrap();
        let g = w.image(&a, &a.basis(1));
        assert_eq!(g[0].get(0, 0), Fe::ONE);
        assert_eq!(g[1].get(0, 0), Fe::from_index(4));
    }

    #[test]
    fn preimage_round_trip() {
        let a = group_algebra(5, 1, "S3");
        let w = wedderburn(&a, 3).unwrap();
        for i in 0..6 {
            let x = a.add(&a.basis(i), &a.scale(&a.basis((i + 2) % 6), Fe::from_index(3)));
            assert_eq!(w.preimage(&a, &w.image(&a, &x)).unwrap(), x);
        }
    }

    #[test]
    fn twisted_quaternion_block() {
        // C2 x C2 with the bicharacter (-1)^(x1 y2) over GF(3) is M_2(GF(3))
        let f = FiniteField::prime(3).unwrap();
        let g = FiniteGroup::catalog("C2xC2").unwrap();
        let vals: Vec<Vec<Fe>> = (0..4)
            .map(|x| (0..4).map(|y| if x & 1 == 1 && y & 2 == 2 { Fe::from_index(2) } else { Fe::ONE }).collect())
            .collect();
        let tau = TwoCocycle::from_values(&g, &f, &vals).unwrap();
        let a = Algebra::twisted_group_algebra(&f, &g, &tau).unwrap();
        let w = wedderburn(&a, 0).unwrap();
        assert_eq!(shape(&w), vec![(2, 3)]);
    }

    #[test]
    fn check_rejects_tampering() {
        let a = group_algebra(5, 1, "S3");
        let w = wedderburn(&a, 0).unwrap();
        assert!(w.check(&a).is_ok());
        let mut bad = w.clone();
        let img = bad.components[2].images[1].clone();
        bad.components[2].images[1] = img.with_entry(0, 0, FiniteField::prime(5).unwrap().add(img.get(0, 0), Fe::ONE));
        assert!(bad.check(&a).is_err());
    }
}

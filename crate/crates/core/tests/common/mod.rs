//! Reference arithmetic written independently of the library: finite
//! fields from their modulus, dense matrices, and twisted group algebra
//! products straight from the multiplication table and cocycle values.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unifact::{Algebra, Element, Fe, FiniteField, FiniteGroup, Matrix, TwoCocycle};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// GF(p^k), elements packed as `sum c_i p^i`.
#[derive(Clone, Debug)]
pub struct OField {
    pub p: u32,
    pub k: usize,
    pub q: u32,
    pub modulus: Vec<u32>,
    table: Option<Vec<u32>>,
    add_table: Option<Vec<u32>>,
}

impl OField {
    pub fn of(f: &FiniteField) -> Self {
        let (p, k) = (f.characteristic(), f.degree() as usize);
        let modulus = if k == 1 { vec![0, 1] } else { f.modulus().to_vec() };
        Self::new(p, k, modulus)
    }

    pub fn new(p: u32, k: usize, modulus: Vec<u32>) -> Self {
        let q = p.pow(k as u32);
        let mut f = OField { p, k, q, modulus, table: None, add_table: None };
        if q <= 1024 {
            f.table = Some((0..q * q).map(|i| f.slow_mul(i / q, i % q)).collect());
            f.add_table = Some((0..q * q).map(|i| f.slow_add(i / q, i % q)).collect());
        }
        f
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        (0..self.k)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.add_table {
            Some(t) => t[(a * self.q + b) as usize],
            None => self.slow_add(a, b),
        }
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        self.pack(&x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.pack(&self.digits(a).iter().map(|u| (self.p - u) % self.p).collect::<Vec<_>>())
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.k];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u as u64 * v as u64) % p;
            }
        }
        for d in (self.k..2 * self.k).rev() {
            let c = prod[d];
            if c != 0 {
                for (i, &m) in self.modulus.iter().enumerate() {
                    let idx = d - self.k + i;
                    prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
                }
            }
        }
        self.pack(&prod[..self.k].iter().map(|&c| c as u32).collect::<Vec<_>>())
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[(a * self.q + b) as usize],
            None => self.slow_mul(a, b),
        }
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert_ne!(a, 0);
        self.pow(a, self.q as u64 - 2)
    }

    /// Trial division by every monic polynomial of degree `1..=k/2`.
    pub fn modulus_is_irreducible(&self) -> bool {
        let p = self.p;
        let m = &self.modulus;
        if m.len() != self.k + 1 || m[self.k] != 1 {
            return false;
        }
        for d in 1..=self.k / 2 {
            for low in 0..p.pow(d as u32) {
                let mut div: Vec<u32> = (0..d).map(|i| low / p.pow(i as u32) % p).collect();
                div.push(1);
                let mut r: Vec<u32> = m.clone();
                for top in (d..r.len()).rev() {
                    let c = r[top];
                    if c != 0 {
                        for (i, &dv) in div.iter().enumerate() {
                            let idx = top - d + i;
                            r[idx] = (r[idx] + (p - c) * dv) % p;
                        }
                    }
                }
                if r[..d].iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }

    pub fn prime_subfield(&self) -> Vec<u32> {
        (0..self.p).collect()
    }
}

pub type OMat = Vec<Vec<u32>>;

pub fn omat(m: &Matrix) -> OMat {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).index()).collect()).collect()
}

pub fn to_matrix(f: &FiniteField, m: &OMat) -> Matrix {
    let rows: Vec<Vec<Fe>> = m.iter().map(|r| r.iter().map(|&x| Fe::from_index(x)).collect()).collect();
    Matrix::from_rows(f, &rows).unwrap()
}

pub fn mat_mul(f: &OField, a: &OMat, b: &OMat) -> OMat {
    let (n, m, l) = (a.len(), b.len(), b[0].len());
    let mut out = vec![vec![0; l]; n];
    for i in 0..n {
        for k in 0..m {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..l {
                out[i][j] = f.add(out[i][j], f.mul(a[i][k], b[k][j]));
            }
        }
    }
    out
}

pub fn mat_identity(n: usize) -> OMat {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}

pub fn mat_sub(f: &OField, a: &OMat, b: &OMat) -> OMat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(&u, &v)| f.sub(u, v)).collect()).collect()
}

pub fn mat_is_zero(a: &OMat) -> bool {
    a.iter().all(|r| r.iter().all(|&x| x == 0))
}

/// Smallest `k` with `(I - a)^k = 0`, if any.
pub fn mat_unipotent_index(f: &OField, a: &OMat) -> Option<usize> {
    let n = a.len();
    let d = mat_sub(f, &mat_identity(n), a);
    let mut pw = mat_identity(n);
    for k in 1..=n {
        pw = mat_mul(f, &pw, &d);
        if mat_is_zero(&pw) {
            return Some(k);
        }
    }
    None
}

pub fn mat_det(f: &OField, a: &OMat) -> u32 {
    let n = a.len();
    let mut m = a.clone();
    let mut det = 1;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| m[r][c] != 0) else { return 0 };
        if r != c {
            m.swap(r, c);
            det = f.neg(det);
        }
        det = f.mul(det, m[c][c]);
        let inv = f.inv(m[c][c]);
        for r in c + 1..n {
            let factor = f.mul(m[r][c], inv);
            for j in c..n {
                m[r][j] = f.sub(m[r][j], f.mul(factor, m[c][j]));
            }
        }
    }
    det
}

/// Rank by Gaussian elimination.
pub fn rank(f: &OField, rows: &[Vec<u32>]) -> usize {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = f.inv(m[r][c]);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let factor = f.mul(m[i][c], inv);
                for j in 0..cols {
                    m[i][j] = f.sub(m[i][j], f.mul(factor, m[r][j]));
                }
            }
        }
        r += 1;
    }
    r
}

/// A twisted group algebra with products computed from the raw tables.
#[derive(Clone, Debug)]
pub struct OAlg {
    pub f: OField,
    pub n: usize,
    pub table: Vec<Vec<usize>>,
    pub tau: Vec<Vec<u32>>,
}

impl OAlg {
    pub fn new(field: &FiniteField, group: &FiniteGroup, cocycle: &TwoCocycle) -> Self {
        let tau = cocycle.values().iter().map(|r| r.iter().map(|x| x.index()).collect()).collect();
        OAlg { f: OField::of(field), n: group.order(), table: group.table(), tau }
    }

    pub fn one(&self) -> Vec<u32> {
        let e = (0..self.n).find(|&g| (0..self.n).all(|h| self.table[g][h] == h)).unwrap();
        (0..self.n).map(|i| u32::from(i == e)).collect()
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.n];
        for (g, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (h, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let gh = self.table[g][h];
                let c = self.f.mul(self.f.mul(a, b), self.tau[g][h]);
                out[gh] = self.f.add(out[gh], c);
            }
        }
        out
    }

    pub fn sub(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter().zip(y).map(|(&a, &b)| self.f.sub(a, b)).collect()
    }

    pub fn is_nilpotent(&self, x: &[u32]) -> bool {
        let mut pw = x.to_vec();
        let mut e = 1;
        while e < self.n {
            pw = self.mul(&pw, &pw);
            e *= 2;
        }
        pw.iter().all(|&c| c == 0)
    }

    /// Smallest `k` with `(1 - x)^k = 0`, if any.
    pub fn unipotent_index(&self, x: &[u32]) -> Option<usize> {
        let d = self.sub(&self.one(), x);
        let mut pw = d.clone();
        for k in 1..=self.n {
            if pw.iter().all(|&c| c == 0) {
                return Some(k);
            }
            pw = self.mul(&pw, &d);
        }
        None
    }

    pub fn product(&self, xs: &[Vec<u32>]) -> Vec<u32> {
        xs.iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    pub fn random(&self, r: &mut impl Rng) -> Vec<u32> {
        (0..self.n).map(|_| r.gen_range(0..self.f.q)).collect()
    }

    /// All `q^n` elements, or `None` when there are more than `cap`.
    pub fn all(&self, cap: u64) -> Option<Vec<Vec<u32>>> {
        let total = (self.f.q as u64).checked_pow(self.n as u32)?;
        (total <= cap).then(|| {
            (0..total)
                .map(|mut i| {
                    (0..self.n)
                        .map(|_| {
                            let d = (i % self.f.q as u64) as u32;
                            i /= self.f.q as u64;
                            d
                        })
                        .collect()
                })
                .collect()
        })
    }
}

pub fn coeffs(x: &Element) -> Vec<u32> {
    x.coeffs().iter().map(|c| c.index()).collect()
}

pub fn element(a: &Algebra, c: &[u32]) -> Element {
    a.element(c.iter().map(|&x| Fe::from_index(x)).collect()).unwrap()
}

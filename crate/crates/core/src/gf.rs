//! Finite fields GF(p^k).
//!
//! A [`FiniteField`] is a shared descriptor holding the modulus and the
//! log/exp/Zech tables; a [`Fe`] is a bare packed coordinate vector and
//! all arithmetic goes through the field (`f.mul(a, b)`). Elements are
//! packed as the base-p integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of
//! their power-basis coordinates, so element 0 is zero, 1 is one, and for
//! k > 1 the element `p` is the generator `x` of the power basis.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// A field element in packed power-basis coordinates.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// Packed index of the element in `0..q`.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    /// Element with the given packed index. The caller is responsible for
    /// keeping the index below the field order.
    #[inline]
    pub fn from_index(i: u32) -> Fe {
        Fe(i)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct FieldData {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in 0..2(q-1)
    exp: Vec<u32>,
    /// log[a] for a != 0
    log: Vec<u32>,
    /// zech[n] = log(1 + g^n), or NONE when 1 + g^n = 0
    zech: Vec<u32>,
    neg: Vec<u32>,
}

const NONE: u32 = u32::MAX;

/// GF(p^k) with an explicit irreducible modulus.
#[derive(Clone)]
pub struct FiniteField(Arc<FieldData>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{}; {:?})", self.0.p, self.0.k, self.0.modulus)
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomial arithmetic over GF(p), coefficients low-to-high.
/// Only used while building a field.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p) as u64;
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let c = (*r.last().unwrap() as u64 * lead_inv) % p as u64;
            for (i, &mi) in m.iter().enumerate() {
                let sub = (c * mi as u64) % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
        rem(&out, m, p)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    /// Ben-Or irreducibility test for a monic polynomial of degree >= 1.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let k = f.len() - 1;
        if k == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut xp = x.clone();
        for _ in 1..=k / 2 {
            // xp <- xp^p mod f
            let mut acc = vec![1u32];
            for _ in 0..p {
                acc = mulmod(&acc, &xp, f, p);
            }
            xp = acc;
            let g = gcd(f, &sub(&xp, &x, p), p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

impl FiniteField {
    /// GF(p^k) with the canonical modulus: the lexicographically smallest
    /// monic irreducible polynomial, comparing coefficient lists low-to-high.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        Self::make(p, k, None)
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        Self::make(p, 1, None)
    }

    /// `ff_make`: field descriptor from `p`, `k` and an optional modulus.
    pub fn make(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        if k == 0 {
            return Err(Error::ReducibleModulus);
        }
        let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || m[k as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::ReducibleModulus);
                }
                if !poly::is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus);
                }
                m.to_vec()
            }
            None => Self::canonical_modulus(p, k),
        };
        Ok(Self::build(p, k, q as u32, modulus))
    }

    fn canonical_modulus(p: u32, k: u32) -> Vec<u32> {
        let q = p.pow(k);
        for m in 0..q {
            // c_0 is the most significant digit of m
            let mut coeffs = vec![0u32; k as usize + 1];
            let mut r = m;
            for j in (0..k as usize).rev() {
                coeffs[j] = r % p;
                r /= p;
            }
            coeffs[k as usize] = 1;
            if poly::is_irreducible(&coeffs, p) {
                return coeffs;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    fn build(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Self {
        let to_poly = |a: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(k as usize);
            let mut r = a;
            for _ in 0..k {
                v.push(r % p);
                r /= p;
            }
            poly::trim(&mut v);
            v
        };
        let from_poly = |v: &[u32]| -> u32 { v.iter().rev().fold(0u32, |acc, &c| acc * p + c) };
        let slow_mul = |a: u32, b: u32| -> u32 {
            if k == 1 {
                return ((a as u64 * b as u64) % p as u64) as u32;
            }
            from_poly(&poly::mulmod(&to_poly(a), &to_poly(b), &modulus, p))
        };
        let slow_pow = |a: u32, mut e: u64| -> u32 {
            let mut r = 1u32;
            let mut b = a;
            while e > 0 {
                if e & 1 == 1 {
                    r = slow_mul(r, b);
                }
                b = slow_mul(b, b);
                e >>= 1;
            }
            r
        };
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let gen = (1..q)
            .find(|&g| factors.iter().all(|&r| slow_pow(g, order / r) != 1))
            .expect("multiplicative group is cyclic");

        let n = q as usize - 1;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![NONE; q as usize];
        let mut cur = 1u32;
        for i in 0..n.max(1) {
            exp[i] = cur;
            log[cur as usize] = i as u32;
            cur = slow_mul(cur, gen);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }

        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let mut r = 0u32;
                let mut mult = 1u32;
                let mut x = a;
                for _ in 0..k {
                    let d = x % p;
                    r += ((p - d) % p) * mult;
                    x /= p;
                    mult *= p;
                }
                r
            })
            .collect();
        let add_slow = |a: u32, b: u32| -> u32 {
            let mut r = 0u32;
            let mut mult = 1u32;
            let (mut x, mut y) = (a, b);
            for _ in 0..k {
                r += ((x % p + y % p) % p) * mult;
                x /= p;
                y /= p;
                mult *= p;
            }
            r
        };
        let zech: Vec<u32> = (0..n)
            .map(|i| {
                let s = add_slow(1, exp[i]);
                if s == 0 {
                    NONE
                } else {
                    log[s as usize]
                }
            })
            .collect();

        FiniteField(Arc::new(FieldData { p, k, q, modulus, exp, log, zech, neg }))
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Extension degree over the prime field.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.k
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    #[inline]
    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// All elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(Fe)
    }

    /// Nonzero elements in packed order.
    pub fn units(&self) -> impl Iterator<Item = Fe> {
        (1..self.0.q).map(Fe)
    }

    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.0.q
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn in_prime_subfield(&self, a: Fe) -> bool {
        a.0 < self.0.p
    }

    /// Power-basis coordinates, low-to-high, length k.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.0.k as usize);
        let mut r = a.0;
        for _ in 0..self.0.k {
            v.push(r % self.0.p);
            r /= self.0.p;
        }
        v
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Fe> {
        if c.len() > self.0.k as usize || c.iter().any(|&x| x >= self.0.p) {
            return Err(Error::InvalidElement);
        }
        Ok(Fe(c.iter().rev().fold(0u32, |acc, &x| acc * self.0.p + x)))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let d = &*self.0;
        if d.k == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= d.p { s - d.p } else { s });
        }
        if d.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        // a + b = a (1 + b/a)
        let n = d.q - 1;
        let la = d.log[a.0 as usize];
        let lb = d.log[b.0 as usize];
        let diff = (lb + n - la) % n;
        let z = d.zech[diff as usize];
        if z == NONE {
            Fe(0)
        } else {
            Fe(d.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        let d = &*self.0;
        if d.k == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % d.p as u64) as u32);
        }
        Fe(d.exp[(d.log[a.0 as usize] + d.log[b.0 as usize]) as usize])
    }

    /// `ff_inv`.
    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let d = &*self.0;
        let n = d.q - 1;
        Ok(Fe(d.exp[((n - d.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe(1);
        }
        if a.0 == 0 {
            return Fe(0);
        }
        let d = &*self.0;
        let n = (d.q - 1) as u64;
        let l = (d.log[a.0 as usize] as u64 * (e % n)) % n;
        Fe(d.exp[l as usize])
    }

    /// `ff_arith` dispatcher.
    pub fn arith(&self, a: Fe, b: Fe, kind: ArithKind) -> Result<Fe> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::FieldMismatch);
        }
        Ok(match kind {
            ArithKind::Add => self.add(a, b),
            ArithKind::Sub => self.sub(a, b),
            ArithKind::Mul => self.mul(a, b),
            ArithKind::Div => self.div(a, b)?,
        })
    }

    /// `ff_nonunit_scalar`: the smallest element outside {0, 1}.
    pub fn nonunit_scalar(&self) -> Result<Fe> {
        if self.0.q < 3 {
            return Err(Error::FieldTooSmall(3));
        }
        Ok(Fe(2))
    }

    /// Render an element for humans: an integer in prime fields, a
    /// polynomial in `x` otherwise.
    pub fn format(&self, a: Fe) -> String {
        if self.0.k == 1 {
            return a.0.to_string();
        }
        let c = self.coeffs(a);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| match (i, v) {
                (0, v) => v.to_string(),
                (1, 1) => "x".into(),
                (1, v) => format!("{v}x"),
                (i, 1) => format!("x^{i}"),
                (i, v) => format!("{v}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

//! Finite groups given by Cayley tables, and normalized 2-cocycles.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf::{Fe, FiniteField};

/// Largest group order accepted anywhere in the crate.
pub const MAX_GROUP_ORDER: usize = 64;

/// A finite group as a verified Cayley table: `table[i][j]` is the index of
/// `g_i * g_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// `group_from_table`: verifies the group axioms exhaustively.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        Self::from_table_capped(table, MAX_GROUP_ORDER)
    }

    fn from_table_capped(table: &[Vec<usize>], cap: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > cap {
            return Err(Error::OrderCapExceeded(cap));
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTable("table is not square".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        fn is_perm(n: usize, it: impl Iterator<Item = usize>) -> bool {
            let mut seen = vec![false; n];
            it.map(|x| !std::mem::replace(&mut seen[x], true)).all(|fresh| fresh)
        }
        for i in 0..n {
            if !is_perm(n, table[i].iter().copied()) || !is_perm(n, (0..n).map(|r| table[r][i])) {
                return Err(Error::NoInverse);
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(Error::NoIdentity)?;
        let mut inverse = vec![0; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or(Error::NoInverse)?;
        }
        for x in 0..n {
            for y in 0..n {
                let xy = table[x][y];
                for z in 0..n {
                    if table[xy][z] != table[x][table[y][z]] {
                        return Err(Error::NotAssociative);
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, table: table.concat(), identity, inverse })
    }

    /// `group_from_permutations` with the default order cap.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self> {
        Self::from_permutations_capped(gens, MAX_GROUP_ORDER)
    }

    /// Closure of the permutation group generated by `gens` (image arrays on
    /// `0..m`, composed as `(g h)(x) = g(h(x))`). Elements are numbered in
    /// breadth-first order from the identity.
    pub fn from_permutations_capped(gens: &[Vec<usize>], cap: usize) -> Result<Self> {
        let m = gens.first().map_or(0, |g| g.len());
        for g in gens {
            let mut seen = vec![false; m];
            if g.len() != m || g.iter().any(|&x| x >= m || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidTable("generator is not a permutation of a common set".into()));
            }
        }
        let compose = |g: &[usize], h: &[usize]| -> Vec<usize> { h.iter().map(|&x| g[x]).collect() };
        let id: Vec<usize> = (0..m).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut head = 0;
        while head < elems.len() {
            let cur = elems[head].clone();
            head += 1;
            for g in gens {
                let next = compose(g, &cur);
                if !index.contains_key(&next) {
                    if elems.len() >= cap {
                        return Err(Error::OrderCapExceeded(cap));
                    }
                    index.insert(next.clone(), elems.len());
                    elems.push(next);
                }
            }
        }
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        Self::from_table_capped(&table, cap)
    }

    /// Built-in catalog: C2..C8, C2xC2, S3, D4, Q8.
    pub fn catalog(name: &str) -> Result<Self> {
        let cyclic = |n: usize| {
            let t: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
            Self::from_table(&t)
        };
        match name.trim() {
            "C1" => cyclic(1),
            "C2" => cyclic(2),
            "C3" => cyclic(3),
            "C4" => cyclic(4),
            "C5" => cyclic(5),
            "C6" => cyclic(6),
            "C7" => cyclic(7),
            "C8" => cyclic(8),
            "C2xC2" | "C2×C2" | "V4" | "K4" => {
                let t: Vec<Vec<usize>> = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
                Self::from_table(&t)
            }
            "S3" => Self::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]),
            "D4" => Self::from_permutations(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]),
            "Q8" => {
                // elements (sign, unit) with unit in {1, i, j, k}; index = 4*sign + unit
                const UNIT: [[(usize, usize); 4]; 4] = [
                    [(0, 0), (0, 1), (0, 2), (0, 3)],
                    [(0, 1), (1, 0), (0, 3), (1, 2)],
                    [(0, 2), (1, 3), (1, 0), (0, 1)],
                    [(0, 3), (0, 2), (1, 1), (1, 0)],
                ];
                let t: Vec<Vec<usize>> = (0..8)
                    .map(|a| {
                        (0..8)
                            .map(|b| {
                                let (s, u) = UNIT[a % 4][b % 4];
                                4 * ((s + a / 4 + b / 4) % 2) + u
                            })
                            .collect()
                    })
                    .collect();
                Self::from_table(&t)
            }
            other => Err(Error::UnknownGroup(other.to_string())),
        }
    }

    pub const CATALOG: [&'static str; 11] =
        ["C2", "C3", "C4", "C2xC2", "S3", "D4", "Q8", "C5", "C6", "C7", "C8"];

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// A normalized 2-cocycle `G x G -> F^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCocycle {
    field: FiniteField,
    order: usize,
    values: Vec<Fe>,
    prime_subfield: bool,
}

impl TwoCocycle {
    pub fn trivial(group: &FiniteGroup, field: &FiniteField) -> Self {
        let n = group.order();
        TwoCocycle { field: field.clone(), order: n, values: vec![Fe::ONE; n * n], prime_subfield: true }
    }

    /// `cocycle_make` from an explicit table: nonzero, normalized, and the
    /// cocycle identity `t(x,y) t(xy,z) = t(y,z) t(x,yz)` on all triples.
    pub fn from_values(group: &FiniteGroup, field: &FiniteField, values: &[Vec<Fe>]) -> Result<Self> {
        let n = group.order();
        if values.len() != n || values.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("cocycle table must be {n}x{n}")));
        }
        if values.iter().flatten().any(|&v| !field.contains(v)) {
            return Err(Error::InvalidElement);
        }
        if values.iter().flatten().any(|v| v.is_zero()) {
            return Err(Error::ZeroValue);
        }
        let e = group.identity();
        if (0..n).any(|g| values[e][g] != Fe::ONE || values[g][e] != Fe::ONE) {
            return Err(Error::NotNormalized);
        }
        for x in 0..n {
            for y in 0..n {
                let xy = group.mul(x, y);
                for z in 0..n {
                    let lhs = field.mul(values[x][y], values[xy][z]);
                    let rhs = field.mul(values[y][z], values[x][group.mul(y, z)]);
                    if lhs != rhs {
                        return Err(Error::CocycleIdentityFails(x, y, z));
                    }
                }
            }
        }
        let prime_subfield = values.iter().flatten().all(|&v| field.in_prime_subfield(v));
        Ok(TwoCocycle { field: field.clone(), order: n, values: values.concat(), prime_subfield })
    }

    /// The coboundary `t(x,y) = f(x) f(y) / f(xy)` of a map with `f(1) = 1`.
    pub fn coboundary(group: &FiniteGroup, field: &FiniteField, f: &[Fe]) -> Result<Self> {
        let n = group.order();
        if f.len() != n {
            return Err(Error::DimensionMismatch("coboundary needs one value per element".into()));
        }
        let mut values = vec![vec![Fe::ONE; n]; n];
        for x in 0..n {
            for y in 0..n {
                let num = field.mul(f[x], f[y]);
                values[x][y] = field.div(num, f[group.mul(x, y)])?;
            }
        }
        Self::from_values(group, field, &values)
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize) -> Fe {
        self.values[x * self.order + y]
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn values(&self) -> Vec<Vec<Fe>> {
        self.values.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == Fe::ONE)
    }

    /// Whether every value lies in the prime subfield.
    pub fn in_prime_subfield(&self) -> bool {
        self.prime_subfield
    }

    /// `cocycle_symmetric`.
    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.value(x, y) == self.value(y, x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_table() -> Vec<Vec<usize>> {
        FiniteGroup::catalog("S3").unwrap().table()
    }

    #[test]
    fn table_examples() {
        let c2 = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(c2.order(), 2);
        assert_eq!(FiniteGroup::from_table(&s3_table()).unwrap().order(), 6);
        assert_eq!(FiniteGroup::from_table(&[vec![0, 1], vec![0, 1]]), Err(Error::NoInverse));
        // Latin square with identity but not associative (order-5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert_eq!(FiniteGroup::from_table(&loop5), Err(Error::NotAssociative));
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(FiniteGroup::from_permutations(&[vec![1, 0]]).unwrap().order(), 2);
        let s3 = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let s5 = [vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]];
        assert_eq!(FiniteGroup::from_permutations(&s5), Err(Error::OrderCapExceeded(64)));
        assert_eq!(FiniteGroup::from_permutations_capped(&s5, 120).unwrap().order(), 120);
    }

    #[test]
    fn closure_is_idempotent() {
        // Regenerating from the left-regular permutations of a group gives
        // back the same table.
        for name in FiniteGroup::CATALOG {
            let g = FiniteGroup::catalog(name).unwrap();
            let perms: Vec<Vec<usize>> = (0..g.order()).map(|a| (0..g.order()).map(|b| g.mul(a, b)).collect()).collect();
            let h = FiniteGroup::from_permutations(&perms).unwrap();
            assert_eq!(h.order(), g.order());
            // BFS numbering from all regular permutations keeps the original labels
            assert_eq!(h.table(), g.table(), "{name}");
        }
    }

    #[test]
    fn catalog_properties() {
        let orders = [2, 3, 4, 4, 6, 8, 8, 5, 6, 7, 8];
        for (name, n) in FiniteGroup::CATALOG.iter().zip(orders) {
            let g = FiniteGroup::catalog(name).unwrap();
            assert_eq!(g.order(), n, "{name}");
            for row in g.table() {
                let mut r = row.clone();
                r.sort();
                assert_eq!(r, (0..n).collect::<Vec<_>>());
            }
        }
        let q8 = FiniteGroup::catalog("Q8").unwrap();
        assert!(!q8.is_abelian());
        assert_eq!((0..8).filter(|&a| q8.element_order(a) == 2).count(), 1);
        let d4 = FiniteGroup::catalog("D4").unwrap();
        assert_eq!((0..8).filter(|&a| d4.element_order(a) == 2).count(), 5);
        assert!(FiniteGroup::catalog("A5").is_err());
    }

    #[test]
    fn cocycle_examples() {
        let f3 = FiniteField::prime(3).unwrap();
        let v4 = FiniteGroup::catalog("C2xC2").unwrap();
        let t = TwoCocycle::trivial(&v4, &f3);
        assert!(t.is_trivial() && t.is_symmetric() && t.in_prime_subfield());

        // bicharacter (-1)^{x_1 y_2} with values {1, 2}
        let bil: Vec<Vec<Fe>> = (0..4)
            .map(|x| (0..4).map(|y| if (x & 1) == 1 && (y & 2) == 2 { Fe::from_index(2) } else { Fe::ONE }).collect())
            .collect();
        let tau = TwoCocycle::from_values(&v4, &f3, &bil).unwrap();
        // exhaustive scan: tau(1, 2) = 2 but tau(2, 1) = 1
        assert!(!tau.is_symmetric());

        let mut bad = vec![vec![Fe::ONE; 4]; 4];
        bad[0][1] = Fe::from_index(2);
        assert_eq!(TwoCocycle::from_values(&v4, &f3, &bad), Err(Error::NotNormalized));
        let mut zero = vec![vec![Fe::ONE; 4]; 4];
        zero[1][1] = Fe::ZERO;
        assert_eq!(TwoCocycle::from_values(&v4, &f3, &zero), Err(Error::ZeroValue));
        let mut broken = vec![vec![Fe::ONE; 4]; 4];
        broken[1][1] = Fe::from_index(2);
        assert!(matches!(
            TwoCocycle::from_values(&v4, &f3, &broken),
            Err(Error::CocycleIdentityFails(..))
        ));
    }

    #[test]
    fn coboundary_is_cocycle() {
        let f4 = FiniteField::new(2, 2).unwrap();
        let s3 = FiniteGroup::catalog("S3").unwrap();
        let f: Vec<Fe> = (0..6).map(|i| if i == 0 { Fe::ONE } else { Fe::from_index(1 + (i as u32 % 3)) }).collect();
        let tau = TwoCocycle::coboundary(&s3, &f4, &f).unwrap();
        assert!(!tau.is_trivial());
        assert!(!tau.in_prime_subfield());
    }
}

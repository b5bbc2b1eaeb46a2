//! Finite groups given by their operation tables.
//!
//! Elements are the indices `0..n` and `0` is always the identity. The
//! abelian constructor fixes a canonical element order: an element index is
//! the mixed-radix encoding of its coordinate tuple, first factor most
//! significant, so `make_abelian(&[a, b])` has the same table as the direct
//! product of `Z_a` and `Z_b`.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result, TableDiagnostic};
use crate::limits::Limits;
use crate::subset::Subset;

/// Automorphism count beyond which [`CayleyGroup::automorphisms`] gives up.
pub const AUTOMORPHISM_LIMIT: usize = 1 << 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CayleyGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl std::fmt::Debug for CayleyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CayleyGroup")
            .field("order", &self.order)
            .field("table", &self.rows())
            .finish()
    }
}

/// Validates an operation table against the group axioms.
///
/// Checks run in a fixed order (shape, identity, associativity, rows,
/// columns) and the first failure is reported with witness elements, scanning
/// tuples lexicographically.
pub fn check_table(table: &[Vec<usize>]) -> std::result::Result<(), TableDiagnostic> {
    let n = table.len();
    if n == 0 {
        return Err(TableDiagnostic::Malformed { reason: "empty table".into() });
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(TableDiagnostic::Malformed {
                reason: format!("row {i} has {} entries, expected {n}", row.len()),
            });
        }
        if let Some(j) = row.iter().position(|&v| v >= n) {
            return Err(TableDiagnostic::Malformed {
                reason: format!("entry ({i}, {j}) = {} is outside 0..{n}", row[j]),
            });
        }
    }
    for x in 0..n {
        if table[0][x] != x || table[x][0] != x {
            return Err(TableDiagnostic::Identity { element: x });
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    return Err(TableDiagnostic::Associativity { a, b, c });
                }
            }
        }
    }
    let mut seen = vec![false; n];
    for (row, entries) in table.iter().enumerate() {
        seen.iter_mut().for_each(|s| *s = false);
        for &v in entries {
            if std::mem::replace(&mut seen[v], true) {
                return Err(TableDiagnostic::RowNotPermutation { row });
            }
        }
    }
    for column in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for row in table {
            if std::mem::replace(&mut seen[row[column]], true) {
                return Err(TableDiagnostic::ColumnNotPermutation { column });
            }
        }
    }
    Ok(())
}

/// Direct sum of cyclic groups as an addition table.
pub fn make_abelian(cyclic_orders: &[usize]) -> Result<CayleyGroup> {
    make_abelian_with(cyclic_orders, &Limits::current())
}

pub fn make_abelian_with(cyclic_orders: &[usize], limits: &Limits) -> Result<CayleyGroup> {
    if cyclic_orders.is_empty() {
        return Err(Error::NoCarrier);
    }
    if cyclic_orders.contains(&0) {
        return Err(Error::NoCarrier);
    }
    let mut n: usize = 1;
    for &m in cyclic_orders {
        n = n.checked_mul(m).filter(|&v| v <= limits.max_order).ok_or(Error::OrderTooLarge {
            order: cyclic_orders.iter().fold(1usize, |acc, &m| acc.saturating_mul(m)),
            max: limits.max_order,
        })?;
    }
    let decode = |mut i: usize| -> Vec<usize> {
        let mut digits = vec![0; cyclic_orders.len()];
        for (k, &m) in cyclic_orders.iter().enumerate().rev() {
            digits[k] = i % m;
            i /= m;
        }
        digits
    };
    let encode = |digits: &[usize]| digits.iter().zip(cyclic_orders).fold(0, |acc, (&d, &m)| acc * m + d);
    let coords: Vec<Vec<usize>> = (0..n).map(decode).collect();
    let mut table = vec![0u32; n * n];
    let mut sum = vec![0; cyclic_orders.len()];
    for a in 0..n {
        for b in 0..n {
            for (k, &m) in cyclic_orders.iter().enumerate() {
                sum[k] = (coords[a][k] + coords[b][k]) % m;
            }
            table[a * n + b] = encode(&sum) as u32;
        }
    }
    Ok(CayleyGroup::assemble(n, table))
}

/// `Z_n` under addition.
pub fn cyclic(n: usize) -> Result<CayleyGroup> {
    make_abelian(&[n])
}

impl CayleyGroup {
    /// Builds a group from a validated table.
    pub fn from_table(table: &[Vec<usize>]) -> std::result::Result<Self, TableDiagnostic> {
        check_table(table)?;
        Ok(Self::from_rows_unchecked(table))
    }

    /// Builds the structure without checking the group axioms.
    ///
    /// The table must be square with entries in range. Elements without a
    /// two-sided inverse get inverse 0.
    pub(crate) fn from_rows_unchecked(table: &[Vec<usize>]) -> Self {
        let n = table.len();
        let flat = table.iter().flat_map(|r| r.iter().map(|&v| v as u32)).collect();
        Self::assemble(n, flat)
    }

    pub(crate) fn assemble(order: usize, table: Vec<u32>) -> Self {
        let mut inverse = vec![0u32; order];
        for x in 0..order {
            if let Some(y) = (0..order).find(|&y| table[x * order + y] == 0 && table[y * order + x] == 0) {
                inverse[x] = y as u32;
            }
        }
        CayleyGroup { order, table, inverse }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `a` combined with itself `k` times; negative `k` uses the inverse.
    pub fn power(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.op(acc, base);
        }
        acc
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.op(a, b)).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.non_commuting_pair().is_none()
    }

    /// First pair `(a, b)` with `ab != ba`.
    pub fn non_commuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.order;
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.op(a, b) != self.op(b, a))
    }

    /// Least `k ≥ 1` with `a^k = 0`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
            if k > self.order {
                // only reachable on tables that are not groups
                return 0;
            }
        }
        k
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// Subgroup generated by `seeds`, by closing under right multiplication.
    pub fn generated_by(&self, seeds: &[usize]) -> Subset {
        let mut members = Subset::zero(self.order);
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in seeds {
                let y = self.op(x, g);
                if members.insert(y) {
                    list.push(y);
                }
            }
            i += 1;
        }
        members
    }

    /// Least subgroup containing `seed`.
    pub fn generated_subgroup(&self, seed: &Subset) -> Subset {
        let seeds: Vec<usize> = seed.iter().collect();
        self.generated_by(&seeds)
    }

    pub fn is_subgroup(&self, s: &Subset) -> bool {
        s.contains(0) && s.iter().all(|x| s.iter().all(|y| s.contains(self.op(x, y))))
    }

    pub fn is_normal(&self, s: &Subset) -> bool {
        self.is_subgroup(s)
            && (0..self.order).all(|g| {
                let gi = self.inv(g);
                s.iter().all(|h| s.contains(self.op(self.op(g, h), gi)))
            })
    }

    pub fn center(&self) -> Subset {
        Subset::from_elements(
            self.order,
            (0..self.order).filter(|&a| (0..self.order).all(|x| self.op(a, x) == self.op(x, a))),
        )
    }

    fn check_enumeration_cap(&self) -> Result<()> {
        let cap = Limits::current().enumeration_cap;
        if self.order > cap {
            return Err(Error::OrderTooLarge { order: self.order, max: cap });
        }
        Ok(())
    }

    /// All subgroups, sorted by (size, bit pattern).
    ///
    /// Breadth-first: every subgroup other than `{0}` is reached from a
    /// smaller one by adjoining a single element.
    pub fn subgroups(&self) -> Result<Vec<Subset>> {
        self.check_enumeration_cap()?;
        let trivial = Subset::zero(self.order);
        let mut seen: HashSet<Subset> = HashSet::from([trivial.clone()]);
        let mut queue: VecDeque<(Subset, Vec<usize>)> = VecDeque::from([(trivial, vec![])]);
        while let Some((h, gens)) = queue.pop_front() {
            for x in 0..self.order {
                if h.contains(x) {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(x);
                let k = self.generated_by(&g2);
                if seen.insert(k.clone()) {
                    queue.push_back((k, g2));
                }
            }
        }
        let mut out: Vec<Subset> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// A generating sequence: each element is the least one outside the span
    /// of its predecessors.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = vec![];
        let mut span = Subset::zero(self.order);
        for x in 0..self.order {
            if !span.contains(x) {
                gens.push(x);
                span = self.generated_by(&gens);
            }
        }
        gens
    }

    /// All automorphisms as permutations `perm[x] = image of x`, sorted
    /// lexicographically (the identity comes first).
    pub fn automorphisms(&self) -> Result<Vec<Vec<usize>>> {
        self.check_enumeration_cap()?;
        let gens = self.greedy_generators();
        let orders: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        let mut out = vec![];
        let mut images = vec![];
        self.extend_automorphism(&gens, &orders, &mut images, &mut out)?;
        out.sort();
        Ok(out)
    }

    fn extend_automorphism(
        &self,
        gens: &[usize],
        orders: &[usize],
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        let depth = images.len();
        let Some(map) = homomorphism_on_span(self, self, &gens[..depth], images) else {
            return Ok(());
        };
        if depth == gens.len() {
            if out.len() >= AUTOMORPHISM_LIMIT {
                return Err(Error::EnumerationTooLarge { what: "automorphisms", limit: AUTOMORPHISM_LIMIT });
            }
            out.push(map.into_iter().map(|v| v.expect("generators span the group")).collect());
            return Ok(());
        }
        let image_span = self.generated_by(images);
        let g = gens[depth];
        for y in 0..self.order {
            if orders[y] != orders[g] || image_span.contains(y) {
                continue;
            }
            images.push(y);
            self.extend_automorphism(gens, orders, images, out)?;
            images.pop();
        }
        Ok(())
    }
}

/// Extends `gens[i] ↦ images[i]` to a map on the subgroup the generators
/// span, walking the Cayley graph from 0. Returns `None` if the assignment is
/// inconsistent or not injective.
pub(crate) fn homomorphism_on_span(
    src: &CayleyGroup,
    dst: &CayleyGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<Option<usize>>> {
    let mut map: Vec<Option<usize>> = vec![None; src.order()];
    let mut used = vec![false; dst.order()];
    map[0] = Some(0);
    used[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        let fx = map[x].unwrap();
        for (&g, &img) in gens.iter().zip(images) {
            let y = src.op(x, g);
            let fy = dst.op(fx, img);
            match map[y] {
                Some(v) if v != fy => return None,
                Some(_) => {}
                None => {
                    if std::mem::replace(&mut used[fy], true) {
                        return None;
                    }
                    map[y] = Some(fy);
                    stack.push(y);
                }
            }
        }
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_rows() -> Vec<Vec<usize>> {
        // permutations of {0,1,2} in lexicographic order, composed as (p∘q)(i) = p(q(i))
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        perms
            .iter()
            .map(|p| perms.iter().map(|q| idx([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect()
    }

    fn divisors(n: usize) -> usize {
        (1..=n).filter(|d| n.is_multiple_of(*d)).count()
    }

    #[test]
    fn cyclic_four_is_addition_mod_four() {
        let g = make_abelian(&[4]).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(g.op(a, b), (a + b) % 4);
            }
        }
    }

    #[test]
    fn klein_group_is_xor() {
        let g = make_abelian(&[2, 2]).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(g.op(a, b), a ^ b);
            }
        }
    }

    #[test]
    fn order_one_group() {
        let g = make_abelian(&[1]).unwrap();
        assert_eq!(g.rows(), vec![vec![0]]);
        assert!(g.is_abelian());
        assert_eq!(g.element_order(0), 1);
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(make_abelian(&[]).unwrap_err().code(), "no-carrier");
        let limits = Limits::default();
        assert_eq!(make_abelian_with(&[64, 65], &limits).unwrap_err().code(), "order-too-large");
        assert!(make_abelian_with(&[64, 64], &limits).is_ok());
    }

    #[test]
    fn constructed_groups_pass_check_table() {
        for orders in [vec![1], vec![4], vec![2, 2], vec![3, 2], vec![4, 2, 2], vec![9, 3]] {
            let g = make_abelian(&orders).unwrap();
            assert_eq!(check_table(&g.rows()), Ok(()), "{orders:?}");
        }
        assert_eq!(check_table(&s3_rows()), Ok(()));
    }

    /// Lexicographic triple scan; kept separate from `check_table`.
    fn first_nonassociative(t: &[Vec<usize>]) -> Option<(usize, usize, usize)> {
        let n = t.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if t[t[a][b]][c] != t[a][t[b][c]] {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    #[test]
    fn swapped_cells_report_associativity() {
        let mut t = make_abelian(&[4]).unwrap().rows();
        // (1,1) = 2 and (1,2) = 3 trade places
        t[1].swap(1, 2);
        assert_eq!((t[1][1], t[1][2]), (3, 2));
        let (a, b, c) = first_nonassociative(&t).unwrap();
        assert_eq!((a, b, c), (1, 1, 2));
        assert_eq!(check_table(&t), Err(TableDiagnostic::Associativity { a, b, c }));
    }

    #[test]
    fn repeated_row_entry() {
        let t = vec![vec![0, 1], vec![1, 1]];
        assert_eq!(check_table(&t), Err(TableDiagnostic::RowNotPermutation { row: 1 }));
    }

    #[test]
    fn malformed_tables() {
        assert_eq!(check_table(&[vec![0, 1], vec![1]]).unwrap_err().code(), "malformed-table");
        assert_eq!(check_table(&[vec![0, 2], vec![1, 0]]).unwrap_err().code(), "malformed-table");
        assert_eq!(check_table(&[]).unwrap_err().code(), "malformed-table");
    }

    #[test]
    fn abelian_detection() {
        assert!(make_abelian(&[4]).unwrap().is_abelian());
        let s3 = CayleyGroup::from_table(&s3_rows()).unwrap();
        assert!(!s3.is_abelian());
    }

    #[test]
    fn subgroup_counts() {
        let z4 = make_abelian(&[4]).unwrap();
        let subs = z4.subgroups().unwrap();
        assert_eq!(
            subs,
            vec![
                Subset::zero(4),
                Subset::from_elements(4, [0, 2]),
                Subset::full(4)
            ]
        );
        assert_eq!(make_abelian(&[2, 2]).unwrap().subgroups().unwrap().len(), 5);
        assert_eq!(make_abelian(&[5]).unwrap().subgroups().unwrap().len(), 2);
        for n in 1..=30 {
            let g = make_abelian(&[n]).unwrap();
            assert_eq!(g.subgroups().unwrap().len(), divisors(n), "Z{n}");
        }
        // S3: trivial, three of order 2, A3, whole
        let s3 = CayleyGroup::from_table(&s3_rows()).unwrap();
        assert_eq!(s3.subgroups().unwrap().len(), 6);
    }

    #[test]
    fn subgroups_are_closed() {
        for orders in [vec![2, 2, 2], vec![4, 2], vec![3, 3], vec![2, 2, 2, 2]] {
            let g = make_abelian(&orders).unwrap();
            for s in g.subgroups().unwrap() {
                assert!(g.is_subgroup(&s));
                assert_eq!(g.generated_subgroup(&s), s);
            }
        }
        // elementary abelian 2^4 has 1 + 15 + 35 + 15 + 1 subgroups
        assert_eq!(make_abelian(&[2, 2, 2, 2]).unwrap().subgroups().unwrap().len(), 67);
    }

    #[test]
    fn automorphism_counts() {
        let z4 = make_abelian(&[4]).unwrap();
        assert_eq!(z4.automorphisms().unwrap(), vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]]);
        assert_eq!(make_abelian(&[2, 2]).unwrap().automorphisms().unwrap().len(), 6);
        assert_eq!(make_abelian(&[2]).unwrap().automorphisms().unwrap().len(), 1);
        assert_eq!(make_abelian(&[2, 2, 2]).unwrap().automorphisms().unwrap().len(), 168);
        assert_eq!(make_abelian(&[4, 2]).unwrap().automorphisms().unwrap().len(), 8);
        let phi = |n: usize| (1..=n).filter(|&k| gcd(k, n) == 1).count();
        for n in 1..=20 {
            assert_eq!(make_abelian(&[n]).unwrap().automorphisms().unwrap().len(), phi(n));
        }
        let s3 = CayleyGroup::from_table(&s3_rows()).unwrap();
        assert_eq!(s3.automorphisms().unwrap().len(), 6);
    }

    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 { a } else { gcd(b, a % b) }
    }

    #[test]
    fn automorphisms_form_a_group() {
        for orders in [vec![4], vec![2, 2], vec![4, 2], vec![2, 2, 2], vec![3, 3], vec![4, 4], vec![8, 2]] {
            let g = make_abelian(&orders).unwrap();
            let auts = g.automorphisms().unwrap();
            let set: HashSet<Vec<usize>> = auts.iter().cloned().collect();
            let n = g.order();
            assert_eq!(auts[0], (0..n).collect::<Vec<_>>());
            for p in &auts {
                // preserves the table
                for a in 0..n {
                    for b in 0..n {
                        assert_eq!(p[g.op(a, b)], g.op(p[a], p[b]));
                    }
                }
                let mut inv = vec![0; n];
                for x in 0..n {
                    inv[p[x]] = x;
                }
                assert!(set.contains(&inv));
                for q in &auts {
                    let pq: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                    assert!(set.contains(&pq));
                }
            }
        }
    }

    #[test]
    fn generated_subgroups() {
        let z4 = make_abelian(&[4]).unwrap();
        assert_eq!(z4.generated_subgroup(&Subset::from_elements(4, [2])), Subset::from_elements(4, [0, 2]));
        assert_eq!(z4.generated_subgroup(&Subset::from_elements(4, [1])), Subset::full(4));
        assert_eq!(z4.generated_subgroup(&Subset::empty(4)), Subset::zero(4));
    }

    #[test]
    fn generated_subgroup_is_idempotent_and_monotone() {
        let g = make_abelian(&[4, 2, 2]).unwrap();
        for mask in 0u32..(1 << 8) {
            let seed = Subset::from_elements(16, (0..8).filter(|i| mask >> i & 1 == 1).map(|i| 2 * i));
            let h = g.generated_subgroup(&seed);
            assert_eq!(g.generated_subgroup(&h), h);
            assert!(seed.is_subset(&h));
            let mut bigger = seed.clone();
            bigger.insert(1);
            assert!(h.is_subset(&g.generated_subgroup(&bigger)));
        }
    }

    #[test]
    fn element_orders() {
        let z4 = make_abelian(&[4]).unwrap();
        assert_eq!(z4.element_order(1), 4);
        assert_eq!(z4.element_order(2), 2);
        assert_eq!(z4.element_order(0), 1);
        assert_eq!(z4.power(1, -1), 3);
        assert_eq!(z4.power(1, 6), 2);
    }

    #[test]
    fn enumeration_cap_applies() {
        let g = make_abelian(&[128]).unwrap();
        assert_eq!(g.subgroups().unwrap_err().code(), "order-too-large");
    }
}

//! Census of left braces of abelian type.
//!
//! Brace multiplications on a fixed abelian group `(A,+)` are in bijection
//! with the regular subgroups `H` of its holomorph `A ⋊ Aut(A)`: the
//! multiplication is `a∘b = h_a(b)` where `h_a` is the unique element of `H`
//! sending 0 to `a`. Two braces on the same `(A,+)` are isomorphic exactly
//! when their regular subgroups are conjugate under `Aut(A)`.
//!
//! The search adjoins holomorph elements `x ↦ t + φ(x)` one at a time,
//! always for the least translation `t` not yet covered, and closes the
//! current subgroup after each step. A closure containing two elements with
//! the same translation is discarded at once.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brace::{is_isomorphic, validate_brace, Brace};
use crate::error::{Error, Result};
use crate::group::{check_table, make_abelian, CayleyGroup};
use crate::ideals;
use crate::limits::Limits;
use crate::series::{self, NilpotencyFlags};

/// Largest order accepted by [`brute_force_census`].
pub const ORACLE_CAP: usize = 6;

type Perm = Vec<u32>;

/// `x ↦ automorphisms[automorphism](x) + translation`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HolomorphElement {
    pub translation: usize,
    pub automorphism: usize,
}

/// A regular subgroup of the holomorph, one element per translation, indexed
/// by translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularSubgroup {
    pub elements: Vec<HolomorphElement>,
}

/// All abelian groups of order `n` as invariant-factor lists, each list
/// descending; the lists themselves are in descending lexicographic order
/// (cyclic group first).
pub fn abelian_types(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![1]];
    }
    let mut per_prime: Vec<Vec<Vec<usize>>> = vec![];
    let mut m = n;
    for p in series::prime_divisors(n) {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        per_prime.push(
            partitions(e)
                .into_iter()
                .map(|parts| parts.into_iter().map(|k| p.pow(k as u32)).collect())
                .collect(),
        );
    }
    let mut combos: Vec<Vec<usize>> = vec![vec![]];
    for options in per_prime {
        let mut next = vec![];
        for c in &combos {
            for o in &options {
                let len = c.len().max(o.len());
                let merged = (0..len)
                    .map(|i| c.get(i).copied().unwrap_or(1) * o.get(i).copied().unwrap_or(1))
                    .collect();
                next.push(merged);
            }
        }
        combos = next;
    }
    combos.sort();
    combos.reverse();
    combos
}

/// Partitions of `e` with parts in descending order.
fn partitions(e: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = vec![];
    go(e, e, &mut vec![], &mut out);
    out
}

/// Invariant factors of an abelian group, in the format of
/// [`abelian_types`].
pub fn additive_type(g: &CayleyGroup) -> Vec<usize> {
    let n = g.order();
    if n == 1 {
        return vec![1];
    }
    let mut factors: Vec<usize> = vec![];
    for p in series::prime_divisors(n) {
        // |{x : p^k x = 0}| = p^(Σ min(λ_i, k)); successive ratios count parts
        let mut parts_at_least = vec![];
        let mut prev_log = 0;
        let mut pk = 1;
        loop {
            pk *= p;
            let count = (0..n).filter(|&x| g.power(x, pk as i64) == 0).count();
            let log = log_p(count, p);
            if log == prev_log {
                break;
            }
            parts_at_least.push(log - prev_log);
            prev_log = log;
        }
        // conjugate partition
        let parts = parts_at_least[0];
        for i in 0..parts {
            let exp = parts_at_least.iter().filter(|&&r| r > i).count();
            if factors.len() <= i {
                factors.push(1);
            }
            factors[i] *= p.pow(exp as u32);
        }
    }
    factors
}

fn log_p(mut x: usize, p: usize) -> usize {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

struct Holomorph<'a> {
    group: &'a CayleyGroup,
    automorphisms: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl<'a> Holomorph<'a> {
    fn new(group: &'a CayleyGroup) -> Result<Self> {
        let automorphisms: Vec<Perm> = group
            .automorphisms()?
            .into_iter()
            .map(|p| p.into_iter().map(|v| v as u32).collect())
            .collect();
        let index = automorphisms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Ok(Holomorph { group, automorphisms, index })
    }

    fn element(&self, translation: usize, automorphism: usize) -> Perm {
        let phi = &self.automorphisms[automorphism];
        phi.iter().map(|&x| self.group.op(translation, x as usize) as u32).collect()
    }

    /// Orbit representatives of `Aut(A)` under conjugation by the stabiliser
    /// of element 1.
    fn conjugacy_representatives(&self) -> Vec<usize> {
        let n = self.group.order();
        if n < 2 {
            return (0..self.automorphisms.len()).collect();
        }
        let stab: Vec<&Perm> = self.automorphisms.iter().filter(|p| p[1] == 1).collect();
        let gens = generating_subset(&stab);
        let mut parent: Vec<usize> = (0..self.automorphisms.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, phi) in self.automorphisms.iter().enumerate() {
            for s in &gens {
                let mut s_inv = vec![0u32; n];
                for x in 0..n {
                    s_inv[s[x] as usize] = x as u32;
                }
                let conj: Perm = (0..n).map(|x| s[phi[s_inv[x] as usize] as usize]).collect();
                let j = self.index[&conj];
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
        (0..self.automorphisms.len()).filter(|&i| find(&mut parent, i) == i).collect()
    }

    /// Depth-first search for regular subgroups. `first_level` restricts the
    /// automorphism parts tried for the first adjoined element.
    fn search(&self, first_level: &[usize], emit: &mut dyn FnMut(&[Perm])) {
        let n = self.group.order();
        let mut slots: Vec<Option<Perm>> = vec![None; n];
        slots[0] = Some((0..n as u32).collect());
        if n == 1 {
            emit(&[slots[0].clone().unwrap()]);
            return;
        }
        for &a in first_level {
            let h = self.element(1, a);
            if let Some((slots, members)) = close(&slots, &[0], &[], &h) {
                self.descend(slots, members, vec![h], emit);
            }
        }
    }

    fn descend(&self, slots: Vec<Option<Perm>>, members: Vec<usize>, gens: Vec<Perm>, emit: &mut dyn FnMut(&[Perm])) {
        let Some(t) = slots.iter().position(Option::is_none) else {
            let all: Vec<Perm> = slots.into_iter().map(Option::unwrap).collect();
            emit(&all);
            return;
        };
        for a in 0..self.automorphisms.len() {
            let h = self.element(t, a);
            if let Some((s2, m2)) = close(&slots, &members, &gens, &h) {
                let mut g2 = gens.clone();
                g2.push(h);
                self.descend(s2, m2, g2, emit);
            }
        }
    }
}

/// Closes `members ∪ {h}` under right multiplication by `gens ∪ {h}`.
/// Returns `None` when two elements share a translation.
fn close(slots: &[Option<Perm>], members: &[usize], gens: &[Perm], h: &Perm) -> Option<(Vec<Option<Perm>>, Vec<usize>)> {
    let t = h[0] as usize;
    if slots[t].is_some() {
        return None;
    }
    let mut slots = slots.to_vec();
    let mut members = members.to_vec();
    slots[t] = Some(h.clone());
    members.push(t);
    let mut all_gens: Vec<&Perm> = gens.iter().collect();
    all_gens.push(h);
    let mut i = 0;
    while i < members.len() {
        let m = slots[members[i]].clone().unwrap();
        for g in &all_gens {
            // (m ∘ g)(x) = m(g(x))
            let p: Perm = g.iter().map(|&x| m[x as usize]).collect();
            let pt = p[0] as usize;
            match &slots[pt] {
                Some(q) if *q != p => return None,
                Some(_) => {}
                None => {
                    slots[pt] = Some(p);
                    members.push(pt);
                }
            }
        }
        i += 1;
    }
    Some((slots, members))
}

/// Greedy generating set of a permutation group given by all its elements.
fn generating_subset(elements: &[&Perm]) -> Vec<Perm> {
    let mut gens: Vec<Perm> = vec![];
    let mut span: HashSet<Perm> = HashSet::new();
    if let Some(first) = elements.first() {
        span.insert((0..first.len() as u32).collect());
    }
    for &e in elements {
        if span.contains(e) {
            continue;
        }
        gens.push(e.clone());
        let mut list: Vec<Perm> = span.iter().cloned().collect();
        let mut i = 0;
        while i < list.len() {
            for g in &gens {
                let p: Perm = g.iter().map(|&x| list[i][x as usize]).collect();
                if span.insert(p.clone()) {
                    list.push(p);
                }
            }
            i += 1;
        }
    }
    gens
}

fn check_census_cap(n: usize) -> Result<()> {
    let cap = Limits::current().census_cap;
    if n > cap {
        return Err(Error::OrderTooLarge { order: n, max: cap });
    }
    Ok(())
}

fn mul_table_of(elements: &[Perm]) -> Vec<Vec<usize>> {
    elements.iter().map(|h| h.iter().map(|&x| x as usize).collect()).collect()
}

/// Every regular subgroup of the holomorph of `g`, in search order.
pub fn regular_subgroups(g: &CayleyGroup) -> Result<Vec<RegularSubgroup>> {
    if !g.is_abelian() {
        let (a, b) = g.non_commuting_pair().unwrap();
        return Err(Error::NotAbelian { a, b });
    }
    let hol = Holomorph::new(g)?;
    let n = g.order();
    let mut out = vec![];
    let all: Vec<usize> = (0..hol.automorphisms.len()).collect();
    hol.search(&all, &mut |elements| {
        let elems = elements
            .iter()
            .map(|h| {
                let t = h[0] as usize;
                let phi: Perm = (0..n).map(|x| g.op(h[x] as usize, g.inv(t)) as u32).collect();
                HolomorphElement { translation: t, automorphism: hol.index[&phi] }
            })
            .collect();
        out.push(RegularSubgroup { elements: elems });
    });
    Ok(out)
}

/// One brace per regular subgroup: `a∘b = h_a(b)`.
pub fn braces_on(g: &CayleyGroup) -> Result<Vec<Brace>> {
    let hol = Holomorph::new(g)?;
    let add = g.rows();
    regular_subgroups(g)?
        .into_iter()
        .map(|h| {
            let tables: Vec<Perm> = h.elements.iter().map(|e| hol.element(e.translation, e.automorphism)).collect();
            validate_brace(&add, &mul_table_of(&tables))
        })
        .collect()
}

/// Invariants stored with every census class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusInvariants {
    pub zl: Option<usize>,
    pub nilpotency: NilpotencyFlags,
    pub t_brace: bool,
    pub dedekind: bool,
    pub ideal_count: usize,
    pub star_center_size: usize,
}

impl CensusInvariants {
    pub fn of(b: &Brace) -> Result<Self> {
        let nilpotency = series::nilpotency_report(b);
        Ok(CensusInvariants {
            zl: nilpotency.star_nilpotent.class,
            nilpotency,
            t_brace: ideals::is_t_brace(b)?.holds(),
            dedekind: ideals::is_dedekind(b)?.holds(),
            ideal_count: ideals::ideals(b, false)?.len(),
            star_center_size: series::star_center(b).len(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub representative: Brace,
    pub additive_type: Vec<usize>,
    pub multiplicative_order_profile: Vec<usize>,
    pub invariants: CensusInvariants,
}

impl CensusRecord {
    pub fn of(representative: Brace) -> Result<Self> {
        Ok(CensusRecord {
            additive_type: additive_type(representative.additive()),
            multiplicative_order_profile: representative.multiplicative().order_profile(),
            invariants: CensusInvariants::of(&representative)?,
            representative,
        })
    }

    /// Recomputes every stored invariant from the representative.
    pub fn is_consistent(&self) -> bool {
        CensusRecord::of(self.representative.clone()).is_ok_and(|r| &r == self)
    }
}

/// Lexicographically least multiplication table over relabellings by
/// additive automorphisms, with the relabelling that attains it.
fn canonical_table(mul: &[u32], n: usize, automorphisms: &[Perm]) -> (Vec<u32>, usize) {
    let mut best: Vec<u32> = mul.to_vec();
    let mut best_index = 0;
    let mut inv = vec![0u32; n];
    let mut candidate = vec![0u32; n * n];
    for (k, sigma) in automorphisms.iter().enumerate().skip(1) {
        for x in 0..n {
            inv[sigma[x] as usize] = x as u32;
        }
        let mut ordering = std::cmp::Ordering::Equal;
        'outer: for i in 1..n {
            let ii = inv[i] as usize;
            for j in 1..n {
                let v = sigma[mul[ii * n + inv[j] as usize] as usize];
                candidate[i * n + j] = v;
                if ordering == std::cmp::Ordering::Equal {
                    ordering = v.cmp(&best[i * n + j]);
                    if ordering == std::cmp::Ordering::Greater {
                        break 'outer;
                    }
                }
            }
        }
        if ordering == std::cmp::Ordering::Less {
            for x in 0..n {
                candidate[x] = x as u32;
                candidate[x * n] = x as u32;
            }
            best.copy_from_slice(&candidate);
            best_index = k;
        }
    }
    (best, best_index)
}

/// Canonical multiplication tables of the braces on `g`, one per
/// isomorphism class, sorted.
fn classes_on(g: &CayleyGroup) -> Result<Vec<Vec<u32>>> {
    let hol = Holomorph::new(g)?;
    let n = g.order();
    let reps = hol.conjugacy_representatives();
    let per_branch: Vec<HashSet<Vec<u32>>> = reps
        .par_iter()
        .map(|&a| {
            let mut keys = HashSet::new();
            hol.search(&[a], &mut |elements| {
                let flat: Vec<u32> = elements.iter().flat_map(|h| h.iter().copied()).collect();
                keys.insert(canonical_table(&flat, n, &hol.automorphisms).0);
            });
            keys
        })
        .collect();
    let mut all: Vec<Vec<u32>> = per_branch.into_iter().flatten().collect::<HashSet<_>>().into_iter().collect();
    all.sort();
    Ok(all)
}

/// All braces of order `n` up to isomorphism, with invariants. Ordered by
/// additive type (as in [`abelian_types`]) and then by canonical table.
pub fn census(n: usize) -> Result<Vec<CensusRecord>> {
    check_census_cap(n)?;
    let mut out = vec![];
    for ty in abelian_types(n) {
        let g = make_abelian(&ty)?;
        let add = g.rows();
        let keys = classes_on(&g)?;
        let braces: Vec<Brace> = keys
            .iter()
            .map(|k| validate_brace(&add, &k.chunks(n).map(|r| r.iter().map(|&v| v as usize).collect()).collect::<Vec<_>>()))
            .collect::<Result<_>>()?;
        let records: Vec<CensusRecord> = braces.into_par_iter().map(CensusRecord::of).collect::<Result<_>>()?;
        out.extend(records);
    }
    Ok(out)
}

/// Rows `r` with `r[0] = a` satisfying `r[b+c] = r[b] + r[c] - a`.
fn distributive_rows(add: &[Vec<usize>], a: usize) -> Vec<Vec<usize>> {
    let n = add.len();
    let neg_a = (0..n).find(|&y| add[a][y] == 0).unwrap();
    let mut out = vec![];
    let mut row = vec![usize::MAX; n];
    let mut used = vec![false; n];
    row[0] = a;
    used[a] = true;
    fn fill(pos: usize, add: &[Vec<usize>], neg_a: usize, row: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = add.len();
        if pos == n {
            let ok = (0..n).all(|b| (0..n).all(|c| row[add[b][c]] == add[add[row[b]][row[c]]][neg_a]));
            if ok {
                out.push(row.clone());
            }
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            row[pos] = v;
            used[v] = true;
            // partial check over already assigned positions
            let consistent = (0..=pos).all(|b| {
                (0..=pos).all(|c| {
                    let s = add[b][c];
                    s > pos || row[s] == add[add[row[b]][row[c]]][neg_a]
                })
            });
            if consistent {
                fill(pos + 1, add, neg_a, row, used, out);
            }
            used[v] = false;
        }
        row[pos] = usize::MAX;
    }
    fill(1, add, neg_a, &mut row, &mut used, &mut out);
    out
}

/// Independent oracle: every multiplication table on every abelian group of
/// order `n ≤ 6`, assembled row by row from bijections satisfying LB3, with
/// the group axioms checked on the full table. Deduplicated with
/// [`is_isomorphic`].
pub fn brute_force_census(n: usize) -> Result<Vec<Brace>> {
    if n > ORACLE_CAP || n == 0 {
        return Err(Error::OracleCap { order: n, max: ORACLE_CAP });
    }
    let mut classes: Vec<Brace> = vec![];
    for ty in abelian_types(n) {
        let add = make_abelian(&ty)?.rows();
        let candidates: Vec<Vec<Vec<usize>>> = (0..n).map(|a| distributive_rows(&add, a)).collect();
        let mut table: Vec<Vec<usize>> = vec![(0..n).collect()];
        let mut found: Vec<Brace> = vec![];
        fn rows(a: usize, cands: &[Vec<Vec<usize>>], table: &mut Vec<Vec<usize>>, add: &[Vec<usize>], found: &mut Vec<Brace>) {
            let n = cands.len();
            if a == n {
                if check_table(table).is_ok() {
                    if let Ok(b) = validate_brace(add, table) {
                        found.push(b);
                    }
                }
                return;
            }
            for r in &cands[a] {
                // columns must stay injective
                if table.iter().any(|prev| prev.iter().zip(r).any(|(x, y)| x == y)) {
                    continue;
                }
                table.push(r.clone());
                rows(a + 1, cands, table, add, found);
                table.pop();
            }
        }
        rows(1, &candidates, &mut table, &add, &mut found);
        for b in found {
            if !classes.iter().any(|c| is_isomorphic(c, &b).is_some()) {
                classes.push(b);
            }
        }
    }
    Ok(classes)
}

/// Whether the brace has the canonical form produced by [`census`].
pub fn is_canonical(b: &Brace) -> Result<bool> {
    let g = b.additive();
    let hol = Holomorph::new(g)?;
    let n = b.order();
    let flat: Vec<u32> = b.mul_rows().into_iter().flatten().map(|v| v as u32).collect();
    Ok(canonical_table(&flat, n, &hol.automorphisms).0 == flat)
}

/// Census classes in a `BTreeMap` keyed by additive type.
pub fn census_by_type(n: usize) -> Result<BTreeMap<Vec<usize>, Vec<CensusRecord>>> {
    let mut map: BTreeMap<Vec<usize>, Vec<CensusRecord>> = BTreeMap::new();
    for r in census(n)? {
        map.entry(r.additive_type.clone()).or_default().push(r);
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::radical_ring_brace;
    use crate::group::cyclic;

    #[test]
    fn abelian_type_lists() {
        assert_eq!(abelian_types(1), vec![vec![1]]);
        assert_eq!(abelian_types(8), vec![vec![8], vec![4, 2], vec![2, 2, 2]]);
        assert_eq!(abelian_types(12), vec![vec![12], vec![6, 2]]);
        assert_eq!(abelian_types(16).len(), 5);
        assert_eq!(abelian_types(36), vec![vec![36], vec![18, 2], vec![12, 3], vec![6, 6]]);
    }

    #[test]
    fn additive_types_round_trip() {
        for n in 1..=40 {
            for ty in abelian_types(n) {
                assert_eq!(additive_type(&make_abelian(&ty).unwrap()), ty);
            }
        }
        // primary decomposition input gives invariant factors back
        assert_eq!(additive_type(&make_abelian(&[4, 3]).unwrap()), vec![12]);
        assert_eq!(additive_type(&make_abelian(&[2, 4]).unwrap()), vec![4, 2]);
    }

    #[test]
    fn z4_regular_subgroups() {
        let g = cyclic(4).unwrap();
        let subs = regular_subgroups(&g).unwrap();
        assert_eq!(subs.len(), 2);
        let auts = g.automorphisms().unwrap();
        let describe = |h: &RegularSubgroup| -> Vec<(usize, usize)> {
            // (multiplier, translation) of x ↦ u·x + t
            h.elements.iter().map(|e| (auts[e.automorphism][1], e.translation)).collect()
        };
        let mut described: Vec<Vec<(usize, usize)>> = subs.iter().map(describe).collect();
        described.sort();
        assert!(described.contains(&vec![(1, 0), (1, 1), (1, 2), (1, 3)]));
        assert!(described.contains(&vec![(1, 0), (3, 1), (1, 2), (3, 3)]));
        assert_eq!(regular_subgroups(&cyclic(2).unwrap()).unwrap().len(), 1);
        assert_eq!(regular_subgroups(&cyclic(1).unwrap()).unwrap().len(), 1);
    }

    #[test]
    fn braces_on_z4() {
        let bs = braces_on(&cyclic(4).unwrap()).unwrap();
        assert_eq!(bs.len(), 2);
        assert!(bs.iter().any(|b| b.is_trivial()));
        assert!(bs.contains(&radical_ring_brace(4, 2).unwrap()));
        let klein = braces_on(&make_abelian(&[2, 2]).unwrap()).unwrap();
        assert!(klein.iter().any(|b| b.is_trivial()));
        assert!(klein.len() > 1);
    }

    #[test]
    fn small_censuses() {
        for n in [1, 2, 3, 5, 7] {
            let c = census(n).unwrap();
            assert_eq!(c.len(), 1, "order {n}");
            assert!(c[0].representative.is_trivial());
        }
        assert_eq!(census(4).unwrap().len(), 4);
        assert_eq!(census(6).unwrap().len(), 2);
    }

    #[test]
    fn census_records_are_consistent() {
        for r in census(8).unwrap() {
            assert!(r.is_consistent());
            assert!(r.representative.validate().is_ok());
        }
    }

    #[test]
    fn oracle_small() {
        assert_eq!(brute_force_census(2).unwrap().len(), 1);
        assert_eq!(brute_force_census(3).unwrap().len(), 1);
        assert_eq!(brute_force_census(4).unwrap().len(), 4);
        assert_eq!(brute_force_census(7).unwrap_err().code(), "oracle-cap");
    }

    #[test]
    fn census_cap() {
        assert_eq!(census(17).unwrap_err().code(), "order-too-large");
    }

    #[test]
    fn distributive_rows_match_affine_maps() {
        // on Z_5 each row is a + u·x for a unit u
        let add = cyclic(5).unwrap().rows();
        assert_eq!(distributive_rows(&add, 2).len(), 4);
    }
}

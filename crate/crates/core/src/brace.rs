//! Left braces of abelian type and the operations defined directly on them.
//!
//! A [`Brace`] is a pair of group tables on the carrier `0..n` sharing the
//! neutral element 0: an abelian addition and a multiplication satisfying
//! `a(b+c) = ab + ac - a`. Validation caches the additive negation, the
//! multiplicative inverses and the full table of maps `λ_a(x) = ax - a`.

use crate::error::{Axiom, AxiomFailure, Error, Result, TableDiagnostic};
use crate::group::{self, homomorphism_on_span, CayleyGroup};
use crate::ideals;
use crate::limits::Limits;
use crate::subset::Subset;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Brace {
    add: CayleyGroup,
    mul: CayleyGroup,
    lambda: Vec<u32>,
}

impl std::fmt::Debug for Brace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Brace")
            .field("order", &self.order())
            .field("add", &self.add.rows())
            .field("mul", &self.mul.rows())
            .finish()
    }
}

/// Checks LB1–LB3 and returns the cached brace, or the first failed axiom.
pub fn validate_brace(add: &[Vec<usize>], mul: &[Vec<usize>]) -> Result<Brace> {
    if add.len() != mul.len() {
        return Err(Error::CarrierMismatch { add: add.len(), mul: mul.len() });
    }
    let add_group = CayleyGroup::from_table(add)
        .map_err(|diagnostic| Error::Axiom(AxiomFailure::Table { axiom: Axiom::Lb1, diagnostic }))?;
    if let Some((a, b)) = add_group.non_commuting_pair() {
        return Err(Error::Axiom(AxiomFailure::NotCommutative { a, b }));
    }
    let mul_group = CayleyGroup::from_table(mul)
        .map_err(|diagnostic| Error::Axiom(AxiomFailure::Table { axiom: Axiom::Lb2, diagnostic }))?;
    let brace = Brace::assemble(add_group, mul_group);
    if let Some((a, b, c)) = brace.distributivity_failure() {
        return Err(Error::Axiom(AxiomFailure::Distributivity { a, b, c }));
    }
    debug_assert!(brace.lambda_rows_are_automorphisms());
    Ok(brace)
}

/// How an element of a generated subbrace was first produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Seed,
    Sum(usize, usize),
    Product(usize, usize),
    Inverse(usize),
    Negation(usize),
}

/// One step of a subbrace closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BraceElementExpr {
    pub element: usize,
    pub provenance: Provenance,
}

/// A quotient brace and the projection onto it.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub brace: Brace,
    /// `projection[x]` is the label of the coset `x + I`.
    pub projection: Vec<usize>,
    /// Least member of each coset, indexed by label.
    pub representatives: Vec<usize>,
}

impl Quotient {
    /// All elements of the parent mapping into `s`.
    pub fn preimage(&self, s: &Subset) -> Subset {
        Subset::from_elements(
            self.projection.len(),
            (0..self.projection.len()).filter(|&x| s.contains(self.projection[x])),
        )
    }
}

/// A subbrace re-indexed as a brace in its own right.
///
/// Element `i` of `brace` is `embedding[i]` in the parent; members keep their
/// relative order, so 0 stays 0.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub brace: Brace,
    pub embedding: Vec<usize>,
    index: Vec<Option<usize>>,
}

impl Restriction {
    /// Parent subset to a subset of the restricted brace. Members outside
    /// the subbrace are dropped.
    pub fn pull(&self, s: &Subset) -> Subset {
        Subset::from_elements(self.embedding.len(), s.iter().filter_map(|x| self.index[x]))
    }

    /// Restricted subset back to the parent carrier.
    pub fn push(&self, s: &Subset) -> Subset {
        Subset::from_elements(self.index.len(), s.iter().map(|i| self.embedding[i]))
    }

    pub fn local(&self, x: usize) -> Option<usize> {
        self.index.get(x).copied().flatten()
    }
}

impl Brace {
    pub(crate) fn assemble(add: CayleyGroup, mul: CayleyGroup) -> Brace {
        let n = add.order();
        let mut lambda = vec![0u32; n * n];
        for a in 0..n {
            let neg_a = add.inv(a);
            for x in 0..n {
                lambda[a * n + x] = add.op(mul.op(a, x), neg_a) as u32;
            }
        }
        Brace { add, mul, lambda }
    }

    /// Validates a pair of already-built groups.
    pub fn from_groups(add: CayleyGroup, mul: CayleyGroup) -> Result<Brace> {
        validate_brace(&add.rows(), &mul.rows())
    }

    /// Builds a brace value without checking LB1–LB3.
    ///
    /// Only the shape is checked: both tables square, of equal order, with
    /// entries in range. This exists so that corrupted inputs can be run
    /// through the verification suite; every other operation assumes a
    /// validated brace.
    pub fn from_tables_unchecked(add: &[Vec<usize>], mul: &[Vec<usize>]) -> Result<Brace> {
        if add.len() != mul.len() {
            return Err(Error::CarrierMismatch { add: add.len(), mul: mul.len() });
        }
        for t in [add, mul] {
            if let Err(d @ TableDiagnostic::Malformed { .. }) = shape_check(t) {
                return Err(Error::Table(d));
            }
        }
        Ok(Brace::assemble(CayleyGroup::from_rows_unchecked(add), CayleyGroup::from_rows_unchecked(mul)))
    }

    /// Re-runs the axiom checks on this value.
    pub fn validate(&self) -> std::result::Result<(), AxiomFailure> {
        match validate_brace(&self.add.rows(), &self.mul.rows()) {
            Ok(_) => Ok(()),
            Err(Error::Axiom(f)) => Err(f),
            Err(other) => unreachable!("tables of a brace value have equal shape: {other}"),
        }
    }

    fn distributivity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        for a in 0..n {
            let neg_a = self.neg(a);
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    let lhs = self.mul(a, self.add(b, c));
                    let rhs = self.add(self.add(ab, self.mul(a, c)), neg_a);
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    fn lambda_rows_are_automorphisms(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|x| (0..n).all(|y| self.lambda(a, self.add(x, y)) == self.add(self.lambda(a, x), self.lambda(a, y))))
        })
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn additive(&self) -> &CayleyGroup {
        &self.add
    }

    pub fn multiplicative(&self) -> &CayleyGroup {
        &self.mul
    }

    pub fn add_rows(&self) -> Vec<Vec<usize>> {
        self.add.rows()
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        self.mul.rows()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.op(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.add.inv(a)
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul.op(a, b)
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.mul.inv(a)
    }

    /// `λ_a(x) = ax - a`.
    #[inline]
    pub fn lambda(&self, a: usize, x: usize) -> usize {
        self.lambda[a * self.order() + x] as usize
    }

    /// `a ⋆ x = ax - a - x = λ_a(x) - x`.
    #[inline]
    pub fn star(&self, a: usize, x: usize) -> usize {
        self.sub(self.lambda(a, x), x)
    }

    /// `k·a` in `(A,+)`.
    pub fn multiple(&self, a: usize, k: i64) -> usize {
        self.add.power(a, k)
    }

    pub fn whole(&self) -> Subset {
        Subset::full(self.order())
    }

    pub fn zero(&self) -> Subset {
        Subset::zero(self.order())
    }

    pub fn is_trivial(&self) -> bool {
        self.lambda.iter().enumerate().all(|(i, &v)| v as usize == i % self.order())
    }

    /// Additive subgroup generated by `s`.
    pub fn additive_span(&self, s: &Subset) -> Subset {
        self.add.generated_subgroup(s)
    }

    /// Additive cyclic subgroup `<a>`.
    pub fn cyclic(&self, a: usize) -> Subset {
        self.add.generated_by(&[a])
    }

    /// `K ⋆ L`: the additive subgroup generated by all `x ⋆ y`, `x ∈ K`,
    /// `y ∈ L`.
    pub fn star_span(&self, k: &Subset, l: &Subset) -> Subset {
        let mut stars = Subset::empty(self.order());
        for x in k.iter() {
            for y in l.iter() {
                stars.insert(self.star(x, y));
            }
        }
        self.additive_span(&stars)
    }

    /// Least subbrace containing `m`.
    pub fn generated_subbrace(&self, m: &Subset) -> Subset {
        let mut members = Subset::empty(self.order());
        for e in self.subbrace_derivation(m) {
            members.insert(e.element);
        }
        members
    }

    /// The closure behind [`generated_subbrace`](Self::generated_subbrace),
    /// listing each member once with the step that produced it first.
    pub fn subbrace_derivation(&self, m: &Subset) -> Vec<BraceElementExpr> {
        let n = self.order();
        let mut members = Subset::empty(n);
        let mut steps = vec![];
        let push = |members: &mut Subset, steps: &mut Vec<BraceElementExpr>, element, provenance| {
            if members.insert(element) {
                steps.push(BraceElementExpr { element, provenance });
            }
        };
        push(&mut members, &mut steps, 0, Provenance::Seed);
        for x in m.iter() {
            push(&mut members, &mut steps, x, Provenance::Seed);
        }
        let mut i = 0;
        while i < steps.len() {
            let x = steps[i].element;
            push(&mut members, &mut steps, self.neg(x), Provenance::Negation(x));
            push(&mut members, &mut steps, self.inv(x), Provenance::Inverse(x));
            for j in 0..=i {
                let y = steps[j].element;
                push(&mut members, &mut steps, self.add(x, y), Provenance::Sum(x, y));
                push(&mut members, &mut steps, self.mul(x, y), Provenance::Product(x, y));
                push(&mut members, &mut steps, self.mul(y, x), Provenance::Product(y, x));
            }
            i += 1;
        }
        steps
    }

    /// `{a : ax = xa for all x}`, the center of `(A,·)`.
    pub fn mult_center(&self) -> Subset {
        self.mul.center()
    }

    /// Quotient by an ideal. Cosets are labelled by first appearance in
    /// ascending order, so `I` itself is 0.
    pub fn quotient(&self, ideal: &Subset) -> Result<Quotient> {
        if let ideals::Verdict::Fails(w) = ideals::is_ideal(self, ideal) {
            return Err(Error::NotAnIdeal(w));
        }
        Ok(self.quotient_unchecked(ideal))
    }

    pub(crate) fn quotient_unchecked(&self, ideal: &Subset) -> Quotient {
        let n = self.order();
        let mut projection = vec![usize::MAX; n];
        let mut representatives = vec![];
        for x in 0..n {
            if projection[x] != usize::MAX {
                continue;
            }
            let label = representatives.len();
            representatives.push(x);
            for z in ideal.iter() {
                projection[self.add(x, z)] = label;
            }
        }
        let m = representatives.len();
        let mut add = vec![0u32; m * m];
        let mut mul = vec![0u32; m * m];
        for (p, &rp) in representatives.iter().enumerate() {
            for (q, &rq) in representatives.iter().enumerate() {
                add[p * m + q] = projection[self.add(rp, rq)] as u32;
                mul[p * m + q] = projection[self.mul(rp, rq)] as u32;
            }
        }
        let brace = Brace::assemble(CayleyGroup::assemble(m, add), CayleyGroup::assemble(m, mul));
        debug_assert!(brace.validate().is_ok(), "quotient by an ideal is a brace");
        Quotient { brace, projection, representatives }
    }

    /// The subbrace `s` as a brace on `0..|s|`.
    pub fn restrict(&self, s: &Subset) -> Result<Restriction> {
        if let ideals::Verdict::Fails(w) = ideals::is_subbrace(self, s) {
            return Err(Error::NotASubbrace(w));
        }
        Ok(self.restrict_unchecked(s))
    }

    pub(crate) fn restrict_unchecked(&self, s: &Subset) -> Restriction {
        let embedding = s.elements();
        let mut index = vec![None; self.order()];
        for (i, &x) in embedding.iter().enumerate() {
            index[x] = Some(i);
        }
        let m = embedding.len();
        let mut add = vec![0u32; m * m];
        let mut mul = vec![0u32; m * m];
        for (i, &x) in embedding.iter().enumerate() {
            for (j, &y) in embedding.iter().enumerate() {
                add[i * m + j] = index[self.add(x, y)].expect("closed under addition") as u32;
                mul[i * m + j] = index[self.mul(x, y)].expect("closed under multiplication") as u32;
            }
        }
        let brace = Brace::assemble(CayleyGroup::assemble(m, add), CayleyGroup::assemble(m, mul));
        Restriction { brace, embedding, index }
    }

    /// The isomorphic copy with element `x` renamed `perm[x]`. `perm` must
    /// fix 0.
    pub fn relabel(&self, perm: &[usize]) -> Brace {
        let n = self.order();
        assert!(perm.len() == n && perm[0] == 0, "relabelling must be a permutation fixing 0");
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                add[perm[a] * n + perm[b]] = perm[self.add(a, b)] as u32;
                mul[perm[a] * n + perm[b]] = perm[self.mul(a, b)] as u32;
            }
        }
        Brace::assemble(CayleyGroup::assemble(n, add), CayleyGroup::assemble(n, mul))
    }

    /// `(additive order, multiplicative order)` of `x`, preserved by every
    /// isomorphism.
    pub fn element_signature(&self, x: usize) -> (usize, usize) {
        (self.add.element_order(x), self.mul.element_order(x))
    }
}

fn shape_check(t: &[Vec<usize>]) -> std::result::Result<(), TableDiagnostic> {
    let n = t.len();
    if n == 0 {
        return Err(TableDiagnostic::Malformed { reason: "empty table".into() });
    }
    for (i, row) in t.iter().enumerate() {
        if row.len() != n || row.iter().any(|&v| v >= n) {
            return Err(TableDiagnostic::Malformed { reason: format!("row {i} has the wrong length or an out-of-range entry") });
        }
    }
    Ok(())
}

/// The brace with `add = mul = g`.
pub fn trivial_brace(g: &CayleyGroup) -> Result<Brace> {
    if let Some((a, b)) = g.non_commuting_pair() {
        return Err(Error::NotAbelian { a, b });
    }
    Ok(Brace::assemble(g.clone(), g.clone()))
}

/// Componentwise product; `(x1, x2)` is element `x1 * n2 + x2`.
pub fn direct_product(b1: &Brace, b2: &Brace) -> Result<Brace> {
    let (n1, n2) = (b1.order(), b2.order());
    let max = Limits::current().max_order;
    let n = n1.checked_mul(n2).filter(|&n| n <= max).ok_or(Error::OrderTooLarge {
        order: n1.saturating_mul(n2),
        max,
    })?;
    let mut add = vec![0u32; n * n];
    let mut mul = vec![0u32; n * n];
    for x in 0..n {
        let (x1, x2) = (x / n2, x % n2);
        for y in 0..n {
            let (y1, y2) = (y / n2, y % n2);
            add[x * n + y] = (b1.add(x1, y1) * n2 + b2.add(x2, y2)) as u32;
            mul[x * n + y] = (b1.mul(x1, y1) * n2 + b2.mul(x2, y2)) as u32;
        }
    }
    Ok(Brace::assemble(CayleyGroup::assemble(n, add), CayleyGroup::assemble(n, mul)))
}

/// The adjoint brace `a∘b = a + b + c·a·b` on `Z_n`, validated.
pub fn radical_ring_brace(n: usize, coeff: usize) -> Result<Brace> {
    let add = group::cyclic(n)?.rows();
    let mul: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| (a + b + coeff % n * a % n * b) % n).collect())
        .collect();
    validate_brace(&add, &mul).map_err(|e| match e {
        Error::Axiom(failure) => Error::NotRadicalForParameters { n, coeff, failure },
        other => other,
    })
}

/// A bijection preserving both operations, if one exists.
///
/// Generators of `(A,+)` are sent, in ascending order of candidate images,
/// to elements with the same additive and multiplicative orders; each
/// consistent additive isomorphism is then tested on the multiplication. The
/// first success is returned.
pub fn is_isomorphic(b1: &Brace, b2: &Brace) -> Option<Vec<usize>> {
    let n = b1.order();
    if n != b2.order() {
        return None;
    }
    let sig1: Vec<(usize, usize)> = (0..n).map(|x| b1.element_signature(x)).collect();
    let sig2: Vec<(usize, usize)> = (0..n).map(|x| b2.element_signature(x)).collect();
    let (mut s1, mut s2) = (sig1.clone(), sig2.clone());
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }
    let gens = b1.additive().greedy_generators();
    let mut images = Vec::with_capacity(gens.len());
    search_isomorphism(b1, b2, &gens, &sig1, &sig2, &mut images)
}

fn search_isomorphism(
    b1: &Brace,
    b2: &Brace,
    gens: &[usize],
    sig1: &[(usize, usize)],
    sig2: &[(usize, usize)],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let depth = images.len();
    let map = homomorphism_on_span(b1.additive(), b2.additive(), &gens[..depth], images)?;
    if depth == gens.len() {
        let map: Vec<usize> = map.into_iter().map(|v| v.expect("generators span")).collect();
        let n = b1.order();
        let preserves = (0..n).all(|a| (0..n).all(|b| map[b1.mul(a, b)] == b2.mul(map[a], map[b])));
        return preserves.then_some(map);
    }
    let image_span = b2.additive().generated_by(images);
    let g = gens[depth];
    for y in 0..b2.order() {
        if sig2[y] != sig1[g] || image_span.contains(y) {
            continue;
        }
        images.push(y);
        if let Some(found) = search_isomorphism(b1, b2, gens, sig1, sig2, images) {
            return Some(found);
        }
        images.pop();
    }
    None
}

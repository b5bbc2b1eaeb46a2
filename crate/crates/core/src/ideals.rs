//! Subbraces, left ideals, ideals, and the T-brace and Dedekind properties.
//!
//! Every predicate returns a [`Verdict`]; failures carry an [`IdealWitness`]
//! that is re-checked against the brace before it is handed out.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brace::Brace;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::subset::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `elements = [x, y]` with `x + y` outside, or `[0]` when 0 is missing.
    NotAdditiveSubgroup,
    /// `elements = [x, y]` with `xy` outside.
    NotMultiplicativeSubgroup,
    /// `elements = [a, z]` with `λ_a(z)` outside.
    NotLambdaClosed,
    /// `elements = [a, z]` with `a ⋆ z` outside.
    StarLeftEscape,
    /// `elements = [z, a]` with `z ⋆ a` outside.
    StarRightEscape,
    /// `context` is an ideal of the ideal `within` but not of the brace;
    /// `elements` is the pair that escapes.
    SubidealNotIdeal,
    /// `context` is a subbrace that is not an ideal; `elements` escapes.
    SubbraceNotIdeal,
}

/// A counterexample to one of the predicates in this module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealWitness {
    pub kind: WitnessKind,
    pub elements: Vec<usize>,
    pub context: Option<Subset>,
    pub within: Option<Subset>,
}

impl IdealWitness {
    fn pair(kind: WitnessKind, x: usize, y: usize) -> Self {
        IdealWitness { kind, elements: vec![x, y], context: None, within: None }
    }

    /// Re-checks that this witness exhibits a genuine violation for `s`
    /// (for the nested kinds `s` is ignored in favour of `context`).
    pub fn confirms(&self, b: &Brace, s: &Subset) -> bool {
        let e = &self.elements;
        let in_range = e.iter().all(|&x| x < b.order());
        if !in_range {
            return false;
        }
        match self.kind {
            WitnessKind::NotAdditiveSubgroup => match e.as_slice() {
                [0] => !s.contains(0),
                &[x, y] => s.contains(x) && s.contains(y) && !s.contains(b.add(x, y)),
                _ => false,
            },
            WitnessKind::NotMultiplicativeSubgroup => {
                matches!(e.as_slice(), &[x, y] if s.contains(x) && s.contains(y) && !s.contains(b.mul(x, y)))
            }
            WitnessKind::NotLambdaClosed => {
                matches!(e.as_slice(), &[a, z] if s.contains(z) && !s.contains(b.lambda(a, z)))
            }
            WitnessKind::StarLeftEscape => {
                matches!(e.as_slice(), &[a, z] if s.contains(z) && !s.contains(b.star(a, z)))
            }
            WitnessKind::StarRightEscape => {
                matches!(e.as_slice(), &[z, a] if s.contains(z) && !s.contains(b.star(z, a)))
            }
            WitnessKind::SubidealNotIdeal => {
                let (Some(j), Some(i)) = (&self.context, &self.within) else { return false };
                if !j.is_subset(i) || !is_ideal(b, i).holds() {
                    return false;
                }
                let r = b.restrict_unchecked(i);
                is_ideal(&r.brace, &r.pull(j)).holds() && pair_escapes_ideal(b, j, e)
            }
            WitnessKind::SubbraceNotIdeal => {
                let Some(sub) = &self.context else { return false };
                is_subbrace(b, sub).holds() && pair_escapes_ideal(b, sub, e)
            }
        }
    }
}

fn pair_escapes_ideal(b: &Brace, j: &Subset, e: &[usize]) -> bool {
    match *e {
        [x, y] => (j.contains(y) && !j.contains(b.star(x, y))) || (j.contains(x) && !j.contains(b.star(x, y))),
        _ => false,
    }
}

impl fmt::Display for IdealWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = serde_json::to_value(self.kind).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        write!(f, "{kind} at {:?}", self.elements)?;
        if let Some(c) = &self.context {
            write!(f, " in {c:?}")?;
        }
        if let Some(w) = &self.within {
            write!(f, " within {w:?}")?;
        }
        Ok(())
    }
}

/// Outcome of a predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(IdealWitness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&IdealWitness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

fn checked(b: &Brace, s: &Subset, w: IdealWitness) -> Verdict {
    assert!(w.confirms(b, s), "witness does not re-validate: {w}");
    Verdict::Fails(w)
}

fn additive_failure(b: &Brace, s: &Subset) -> Option<IdealWitness> {
    if !s.contains(0) {
        return Some(IdealWitness { kind: WitnessKind::NotAdditiveSubgroup, elements: vec![0], context: None, within: None });
    }
    for x in s.iter() {
        for y in s.iter() {
            if !s.contains(b.add(x, y)) {
                return Some(IdealWitness::pair(WitnessKind::NotAdditiveSubgroup, x, y));
            }
        }
    }
    None
}

/// `(S,+) ≤ (A,+)` and `(S,·) ≤ (A,·)`.
///
/// On a finite carrier closure under the operation is enough for a subgroup.
pub fn is_subbrace(b: &Brace, s: &Subset) -> Verdict {
    if let Some(w) = additive_failure(b, s) {
        return checked(b, s, w);
    }
    for x in s.iter() {
        for y in s.iter() {
            if !s.contains(b.mul(x, y)) {
                return checked(b, s, IdealWitness::pair(WitnessKind::NotMultiplicativeSubgroup, x, y));
            }
        }
    }
    Verdict::Holds
}

/// Additive subgroup with `λ_a(L) ⊆ L` for every `a`.
///
/// The equivalent condition `a ⋆ z ∈ L` is evaluated as well and the two
/// must agree.
pub fn is_left_ideal(b: &Brace, l: &Subset) -> Verdict {
    if let Some(w) = additive_failure(b, l) {
        return checked(b, l, w);
    }
    let n = b.order();
    let lambda_escape = (0..n).find_map(|a| l.iter().find(|&z| !l.contains(b.lambda(a, z))).map(|z| (a, z)));
    let star_escape = (0..n).find_map(|a| l.iter().find(|&z| !l.contains(b.star(a, z))).map(|z| (a, z)));
    assert_eq!(
        lambda_escape.is_some(),
        star_escape.is_some(),
        "λ-closure and ⋆-closure disagree, the λ table is inconsistent"
    );
    match lambda_escape {
        Some((a, z)) => checked(b, l, IdealWitness::pair(WitnessKind::NotLambdaClosed, a, z)),
        None => Verdict::Holds,
    }
}

/// Subbrace with `a ⋆ z` and `z ⋆ a` in `I` for all `a ∈ A`, `z ∈ I`.
pub fn is_ideal(b: &Brace, i: &Subset) -> Verdict {
    if let Verdict::Fails(w) = is_subbrace(b, i) {
        return Verdict::Fails(w);
    }
    let n = b.order();
    for a in 0..n {
        for z in i.iter() {
            if !i.contains(b.star(a, z)) {
                return checked(b, i, IdealWitness::pair(WitnessKind::StarLeftEscape, a, z));
            }
        }
    }
    for z in i.iter() {
        for a in 0..n {
            if !i.contains(b.star(z, a)) {
                return checked(b, i, IdealWitness::pair(WitnessKind::StarRightEscape, z, a));
            }
        }
    }
    Verdict::Holds
}

fn check_cap(b: &Brace) -> Result<()> {
    let cap = Limits::current().enumeration_cap;
    if b.order() > cap {
        return Err(Error::OrderTooLarge { order: b.order(), max: cap });
    }
    Ok(())
}

/// All additive subgroups.
pub fn additive_subgroups(b: &Brace) -> Result<Vec<Subset>> {
    check_cap(b)?;
    b.additive().subgroups()
}

/// All subbraces, sorted.
pub fn subbraces(b: &Brace) -> Result<Vec<Subset>> {
    Ok(additive_subgroups(b)?.into_iter().filter(|s| is_subbrace(b, s).holds()).collect())
}

/// All ideals, or all left ideals when `left_only` is set, sorted.
pub fn ideals(b: &Brace, left_only: bool) -> Result<Vec<Subset>> {
    let subs = additive_subgroups(b)?;
    Ok(subs
        .into_iter()
        .filter(|s| if left_only { is_left_ideal(b, s).holds() } else { is_ideal(b, s).holds() })
        .collect())
}

/// Least ideal containing `m`.
pub fn ideal_closure(b: &Brace, m: &Subset) -> Subset {
    let n = b.order();
    let mut current = b.generated_subbrace(m);
    loop {
        let mut grown = current.clone();
        for z in current.iter() {
            for a in 0..n {
                grown.insert(b.star(a, z));
                grown.insert(b.star(z, a));
            }
        }
        let next = b.generated_subbrace(&b.additive_span(&grown));
        if next == current {
            debug_assert!(is_ideal(b, &current).holds());
            return current;
        }
        current = next;
    }
}

/// Whether being an ideal is transitive: every ideal `J` of every ideal `I`
/// is an ideal of the whole brace.
///
/// The first counterexample in canonical `(I, J, pair)` order is reported.
pub fn is_t_brace(b: &Brace) -> Result<Verdict> {
    let all = ideals(b, false)?;
    let found = all.par_iter().find_map_first(|i| {
        if i.is_zero() || i.is_full() {
            return None;
        }
        let r = b.restrict_unchecked(i);
        let mut inner: Vec<Subset> = ideals(&r.brace, false)
            .expect("ideal is no larger than the brace")
            .iter()
            .map(|j| r.push(j))
            .collect();
        inner.sort();
        inner.into_iter().find_map(|j| match is_ideal(b, &j) {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(IdealWitness {
                kind: WitnessKind::SubidealNotIdeal,
                elements: w.elements,
                context: Some(j),
                within: Some(i.clone()),
            }),
        })
    });
    Ok(match found {
        None => Verdict::Holds,
        Some(w) => checked(b, &b.whole(), w),
    })
}

/// Whether every subbrace is an ideal.
pub fn is_dedekind(b: &Brace) -> Result<Verdict> {
    for s in subbraces(b)? {
        if let Verdict::Fails(w) = is_ideal(b, &s) {
            let w = IdealWitness { kind: WitnessKind::SubbraceNotIdeal, elements: w.elements, context: Some(s), within: None };
            return Ok(checked(b, &b.whole(), w));
        }
    }
    Ok(Verdict::Holds)
}

//! The ⋆-center, the upper ⋆-central series, the left, right and strong
//! descending series, and the additive primary components.
//!
//! All chains are finite: on a carrier of order `n` a strictly monotone chain
//! of subgroups has at most `log2(n) + 1` distinct terms.

use serde::{Deserialize, Serialize};

use crate::brace::Brace;
use crate::error::{Error, Result};
use crate::subset::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    /// `ζ_0 = 0`, `ζ_{k+1}/ζ_k = ζ(⋆, A/ζ_k)`.
    UpperStarCentral,
    /// `A^1 = A`, `A^{k+1} = A ⋆ A^k`.
    Left,
    /// `A^(1) = A`, `A^(k+1) = A^(k) ⋆ A`.
    Right,
    /// `A^[1] = A`, `A^[m+1]` the additive span of all `A^[i] ⋆ A^[m+1-i]`.
    Strong,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    /// Distinct terms in order; the last one is the stable term.
    pub chain: Vec<Subset>,
    /// Series index of the stable term: `ζ` indices start at 0, descending
    /// series indices at 1.
    pub stabilized_at: usize,
    /// Upper series: the last term is the whole carrier. Descending series:
    /// the last term is `{0}`.
    pub reaches_top_or_bottom: bool,
    /// `zl(A)` for the upper series; the index of the first `{0}` term for the
    /// descending ones.
    pub class_if_nilpotent: Option<usize>,
}

impl SeriesReport {
    pub fn last(&self) -> &Subset {
        self.chain.last().expect("a series has at least one term")
    }
}

/// `{a : a ⋆ x = x ⋆ a = 0 for all x}`.
pub fn star_center(b: &Brace) -> Subset {
    let n = b.order();
    Subset::from_elements(n, (0..n).filter(|&a| (0..n).all(|x| b.star(a, x) == 0 && b.star(x, a) == 0)))
}

/// Terms `ζ_0 = {0}, ζ_1, …` until the series stops growing.
///
/// Each step takes the quotient by the current term, its ⋆-center, and the
/// preimage under the projection.
pub fn upper_star_central_series(b: &Brace) -> SeriesReport {
    let mut chain = vec![b.zero()];
    loop {
        let current = chain.last().unwrap();
        let q = b.quotient_unchecked(current);
        let next = q.preimage(&star_center(&q.brace));
        if &next == current {
            break;
        }
        chain.push(next);
    }
    let top = chain.last().unwrap().is_full();
    SeriesReport {
        kind: SeriesKind::UpperStarCentral,
        stabilized_at: chain.len() - 1,
        reaches_top_or_bottom: top,
        class_if_nilpotent: top.then_some(chain.len() - 1),
        chain,
    }
}

/// `ζ_k(⋆, A)` for any `k`; terms past the stable one repeat it.
pub fn hypercenter_term(series: &SeriesReport, k: usize) -> &Subset {
    &series.chain[k.min(series.chain.len() - 1)]
}

/// Left, right or strong descending series.
///
/// Terms are computed until `{0}` or until a term repeats its predecessor.
/// For the left and right series a repeat is final because each term depends
/// on the previous one only. The strong series is treated the same way.
pub fn descending_series(b: &Brace, kind: SeriesKind) -> SeriesReport {
    assert!(kind != SeriesKind::UpperStarCentral, "use upper_star_central_series");
    let whole = b.whole();
    let mut chain = vec![whole.clone()];
    while !chain.last().unwrap().is_zero() {
        let prev = chain.last().unwrap();
        let next = match kind {
            SeriesKind::Left => b.star_span(&whole, prev),
            SeriesKind::Right => b.star_span(prev, &whole),
            SeriesKind::Strong => strong_next(b, &chain),
            SeriesKind::UpperStarCentral => unreachable!(),
        };
        if &next == prev {
            break;
        }
        chain.push(next);
    }
    let bottom = chain.last().unwrap().is_zero();
    SeriesReport {
        kind,
        stabilized_at: chain.len(),
        reaches_top_or_bottom: bottom,
        class_if_nilpotent: bottom.then_some(chain.len()),
        chain,
    }
}

/// `A^[m+1]` from `A^[1..=m]`.
pub(crate) fn strong_next(b: &Brace, terms: &[Subset]) -> Subset {
    let m = terms.len();
    let mut stars = Subset::empty(b.order());
    for i in 0..m {
        stars = stars.union(&b.star_span(&terms[i], &terms[m - 1 - i]));
    }
    b.additive_span(&stars)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nilpotency {
    pub nilpotent: bool,
    pub class: Option<usize>,
}

impl From<&SeriesReport> for Nilpotency {
    fn from(s: &SeriesReport) -> Self {
        Nilpotency { nilpotent: s.reaches_top_or_bottom, class: s.class_if_nilpotent }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotencyFlags {
    pub left_nilpotent: Nilpotency,
    pub right_nilpotent: Nilpotency,
    pub strongly_nilpotent: Nilpotency,
    /// Class is `zl(A)`.
    pub star_nilpotent: Nilpotency,
    pub abelian: bool,
}

impl NilpotencyFlags {
    /// strong ⟺ ⋆ ⟺ (left ∧ right), which holds for every finite brace.
    pub fn equivalence_holds(&self) -> bool {
        let strong = self.strongly_nilpotent.nilpotent;
        strong == self.star_nilpotent.nilpotent
            && strong == (self.left_nilpotent.nilpotent && self.right_nilpotent.nilpotent)
    }
}

/// All four series, summarised. Strong nilpotency means the strong chain
/// reaches `{0}`.
pub fn nilpotency_report(b: &Brace) -> NilpotencyFlags {
    NilpotencyFlags {
        left_nilpotent: (&descending_series(b, SeriesKind::Left)).into(),
        right_nilpotent: (&descending_series(b, SeriesKind::Right)).into(),
        strongly_nilpotent: (&descending_series(b, SeriesKind::Strong)).into(),
        star_nilpotent: (&upper_star_central_series(b)).into(),
        abelian: b.is_trivial(),
    }
}

pub fn is_star_nilpotent(b: &Brace) -> bool {
    upper_star_central_series(b).reaches_top_or_bottom
}

fn is_power_of(mut k: usize, p: usize) -> bool {
    while k.is_multiple_of(p) && k > 1 {
        k /= p;
    }
    k == 1
}

/// Elements of `p`-power additive order.
pub fn additive_p_component(b: &Brace, p: usize) -> Subset {
    let n = b.order();
    Subset::from_elements(n, (0..n).filter(|&x| is_power_of(b.additive().element_order(x), p)))
}

/// Elements of `p`-power multiplicative order.
pub fn multiplicative_p_component(b: &Brace, p: usize) -> Subset {
    let n = b.order();
    Subset::from_elements(n, (0..n).filter(|&x| is_power_of(b.multiplicative().element_order(x), p)))
}

/// The additive `p`-component of a ⋆-nilpotent brace.
///
/// On such braces it coincides with the multiplicative `p`-component and is
/// an ideal. Without ⋆-nilpotency the component is still computed and
/// returned inside [`Error::HypothesisNotSatisfied`].
pub fn sylow_component(b: &Brace, p: usize) -> Result<Subset> {
    let component = additive_p_component(b, p);
    if !is_star_nilpotent(b) {
        return Err(Error::HypothesisNotSatisfied { component });
    }
    debug_assert_eq!(component, multiplicative_p_component(b, p));
    debug_assert!(crate::ideals::is_ideal(b, &component).holds());
    Ok(component)
}

/// Whether every nonzero element has infinite additive order. On a finite
/// carrier this holds only for the order-1 brace.
pub fn is_additively_torsion_free(b: &Brace) -> bool {
    (1..b.order()).all(|x| b.additive().element_order(x) == 0)
}

/// Primes dividing the order.
pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{direct_product, radical_ring_brace, trivial_brace, validate_brace};
    use crate::group::make_abelian;
    use crate::ideals::is_ideal;

    fn b4() -> Brace {
        radical_ring_brace(4, 2).unwrap()
    }

    fn z(n: usize) -> Brace {
        trivial_brace(&make_abelian(&[n]).unwrap()).unwrap()
    }

    fn dihedral6() -> Brace {
        let add: Vec<Vec<usize>> = (0..6).map(|a| (0..6).map(|b| (a + b) % 6).collect()).collect();
        let mul: Vec<Vec<usize>> =
            (0..6).map(|a| (0..6).map(|b| if a % 2 == 0 { (a + b) % 6 } else { (a + 6 - b) % 6 }).collect()).collect();
        validate_brace(&add, &mul).unwrap()
    }

    fn set(n: usize, xs: &[usize]) -> Subset {
        Subset::from_elements(n, xs.iter().copied())
    }

    #[test]
    fn star_centers() {
        assert!(star_center(&z(4)).is_full());
        assert_eq!(star_center(&b4()), set(4, &[0, 2]));
        let p = direct_product(&b4(), &z(3)).unwrap();
        let c = star_center(&p);
        assert_eq!(c.len(), 6);
        // {0,2} × Z3 under the first-factor-major encoding
        assert_eq!(c, set(12, &[0, 1, 2, 6, 7, 8]));
        assert!(is_ideal(&p, &c).holds());
    }

    #[test]
    fn upper_series_examples() {
        let t = upper_star_central_series(&z(4));
        assert_eq!(t.chain, vec![set(4, &[0]), Subset::full(4)]);
        assert_eq!(t.class_if_nilpotent, Some(1));
        let s = upper_star_central_series(&b4());
        assert_eq!(s.chain, vec![set(4, &[0]), set(4, &[0, 2]), Subset::full(4)]);
        assert_eq!(s.class_if_nilpotent, Some(2));
        assert_eq!(s.stabilized_at, 2);
        let d = upper_star_central_series(&dihedral6());
        assert_eq!(d.chain, vec![set(6, &[0])]);
        assert!(!d.reaches_top_or_bottom);
        assert_eq!(d.class_if_nilpotent, None);
    }

    #[test]
    fn descending_examples() {
        for kind in [SeriesKind::Left, SeriesKind::Right, SeriesKind::Strong] {
            let t = descending_series(&z(4), kind);
            assert_eq!(t.chain, vec![Subset::full(4), set(4, &[0])]);
            let s = descending_series(&b4(), kind);
            assert_eq!(s.chain, vec![Subset::full(4), set(4, &[0, 2]), set(4, &[0])], "{kind:?}");
            assert_eq!(s.class_if_nilpotent, Some(3));
        }
    }

    #[test]
    fn b4_flags() {
        let f = nilpotency_report(&b4());
        assert_eq!(f.left_nilpotent, Nilpotency { nilpotent: true, class: Some(3) });
        assert_eq!(f.right_nilpotent, Nilpotency { nilpotent: true, class: Some(3) });
        assert!(f.strongly_nilpotent.nilpotent);
        assert_eq!(f.star_nilpotent.class, Some(2));
        assert!(!f.abelian);
        assert!(f.equivalence_holds());
        let t = nilpotency_report(&z(5));
        assert!(t.abelian && t.star_nilpotent.class == Some(1) && t.equivalence_holds());
    }

    #[test]
    fn dihedral_is_left_but_not_right_nilpotent() {
        let f = nilpotency_report(&dihedral6());
        assert!(!f.star_nilpotent.nilpotent);
        assert!(!f.strongly_nilpotent.nilpotent);
        assert!(f.equivalence_holds());
    }

    #[test]
    fn sylow_examples() {
        assert_eq!(sylow_component(&z(6), 2).unwrap(), set(6, &[0, 3]));
        let p = direct_product(&b4(), &z(3)).unwrap();
        let c = sylow_component(&p, 2).unwrap();
        assert_eq!(c, set(12, &[0, 3, 6, 9]));
        assert!(is_ideal(&p, &c).holds());
        assert_eq!(sylow_component(&b4(), 3).unwrap(), set(4, &[0]));
        match sylow_component(&dihedral6(), 3) {
            Err(Error::HypothesisNotSatisfied { component }) => assert_eq!(component, set(6, &[0, 2, 4])),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn torsion_free_only_at_order_one() {
        assert!(is_additively_torsion_free(&z(1)));
        assert!(!is_additively_torsion_free(&z(2)));
        assert!(!is_additively_torsion_free(&b4()));
    }

    #[test]
    fn primes() {
        assert_eq!(prime_divisors(1), Vec::<usize>::new());
        assert_eq!(prime_divisors(12), vec![2, 3]);
        assert_eq!(prime_divisors(49), vec![7]);
    }
}

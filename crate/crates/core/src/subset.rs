//! Fixed-width membership vectors over a carrier `0..n`.

use std::cmp::Ordering;
use std::fmt;

/// A subset of the carrier `{0, .., n-1}`.
///
/// Membership of every element, including the neutral element 0, is
/// explicit. Subsets order first by size and then by their bit pattern read
/// as an unsigned integer (element `i` is bit `i`); every list of subsets the
/// crate returns is sorted this way.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    order: usize,
    words: Vec<u64>,
}

impl Subset {
    pub fn empty(order: usize) -> Self {
        Subset {
            order,
            words: vec![0; order.div_ceil(64)],
        }
    }

    pub fn full(order: usize) -> Self {
        let mut s = Self::empty(order);
        for x in 0..order {
            s.insert(x);
        }
        s
    }

    /// `{0}`.
    pub fn zero(order: usize) -> Self {
        Self::from_elements(order, [0])
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(order: usize, elements: I) -> Self {
        let mut s = Self::empty(order);
        for x in elements {
            s.insert(x);
        }
        s
    }

    /// Number of positions, i.e. the carrier order.
    pub fn carrier_order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.order && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    /// Adds `x`; returns `true` if it was not already present.
    ///
    /// Panics if `x` is outside the carrier.
    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < self.order, "element {x} outside carrier of order {}", self.order);
        let (w, b) = (x / 64, x % 64);
        let fresh = self.words[w] >> b & 1 == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, x: usize) {
        if x < self.order {
            self.words[x / 64] &= !(1 << (x % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.order
    }

    /// True for `{0}`.
    pub fn is_zero(&self) -> bool {
        self.len() == 1 && self.contains(0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&x| self.contains(x))
    }

    pub fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.order == other.order && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        self.zip_with(other, |a, b| a & b)
    }

    fn zip_with(&self, other: &Subset, f: impl Fn(u64, u64) -> u64) -> Subset {
        assert_eq!(self.order, other.order, "subsets of different carriers");
        Subset {
            order: self.order,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_membership_is_explicit() {
        let s = Subset::empty(4);
        assert!(!s.contains(0));
        assert!(Subset::zero(4).contains(0));
        assert!(Subset::zero(4).is_zero());
    }

    #[test]
    fn ordering_is_size_then_bits() {
        let a = Subset::from_elements(8, [0, 1, 4]);
        let b = Subset::from_elements(8, [0, 2, 3]);
        let c = Subset::from_elements(8, [0, 7]);
        let mut v = vec![a.clone(), b.clone(), c.clone()];
        v.sort();
        assert_eq!(v, vec![c, b, a]);
    }

    #[test]
    fn wide_carriers_span_words() {
        let s = Subset::from_elements(130, [0, 64, 129]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.elements(), vec![0, 64, 129]);
        assert!(s.is_subset(&Subset::full(130)));
    }

    proptest! {
        #[test]
        fn set_algebra_matches_vectors(xs in proptest::collection::vec(0usize..100, 0..40),
                                       ys in proptest::collection::vec(0usize..100, 0..40)) {
            let a = Subset::from_elements(100, xs.iter().copied());
            let b = Subset::from_elements(100, ys.iter().copied());
            let inter = a.intersection(&b);
            let uni = a.union(&b);
            for x in 0..100 {
                prop_assert_eq!(inter.contains(x), xs.contains(&x) && ys.contains(&x));
                prop_assert_eq!(uni.contains(x), xs.contains(&x) || ys.contains(&x));
            }
            prop_assert!(inter.is_subset(&a) && a.is_subset(&uni));
        }
    }
}

//! Naive oracles over raw tables. Nothing here calls the library's
//! predicates, so agreement with them is evidence rather than tautology.
#![allow(dead_code)]

use std::collections::BTreeSet;

use bracelab::Brace;

pub type Set = BTreeSet<usize>;

pub struct Tables {
    pub n: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

impl Tables {
    pub fn of(b: &Brace) -> Self {
        Tables { n: b.order(), add: b.add_rows(), mul: b.mul_rows() }
    }

    pub fn from_rows(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> Self {
        Tables { n: add.len(), add, mul }
    }

    pub fn all(&self) -> Set {
        (0..self.n).collect()
    }

    pub fn neg(&self, x: usize) -> usize {
        (0..self.n).find(|&y| self.add[x][y] == 0).unwrap()
    }

    /// Least two-sided inverse, or 0 when a corrupted table has none; the
    /// same convention as unchecked braces in the library.
    pub fn inv(&self, x: usize) -> usize {
        (0..self.n).find(|&y| self.mul[x][y] == 0 && self.mul[y][x] == 0).unwrap_or(0)
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add[x][self.neg(y)]
    }

    pub fn star(&self, a: usize, b: usize) -> usize {
        self.sub(self.sub(self.mul[a][b], a), b)
    }

    pub fn lambda(&self, a: usize, x: usize) -> usize {
        self.sub(self.mul[a][x], a)
    }

    /// `k·x` by repeated addition.
    pub fn times(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.neg(x) } else { x };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.add[acc][base])
    }

    pub fn additive_order(&self, x: usize) -> usize {
        (1..=self.n).find(|&k| self.times(x, k as i64) == 0).unwrap()
    }

    pub fn multiplicative_order(&self, x: usize) -> usize {
        let mut y = x;
        for k in 1..=self.n {
            if y == 0 {
                return k;
            }
            y = self.mul[y][x];
        }
        unreachable!("not a group")
    }

    /// Closure under `+` and negation.
    pub fn additive_span(&self, seed: &Set) -> Set {
        let mut s: Set = seed.clone();
        s.insert(0);
        loop {
            let mut grown = s.clone();
            for &x in &s {
                grown.insert(self.neg(x));
                for &y in &s {
                    grown.insert(self.add[x][y]);
                }
            }
            if grown == s {
                return s;
            }
            s = grown;
        }
    }

    /// Smallest set containing `seed` closed under `+`, `−`, `·` and `⁻¹`.
    pub fn subbrace_closure(&self, seed: &Set) -> Set {
        let mut s: Set = seed.clone();
        s.insert(0);
        loop {
            let mut grown = s.clone();
            for &x in &s {
                grown.insert(self.neg(x));
                grown.insert(self.inv(x));
                for &y in &s {
                    grown.insert(self.add[x][y]);
                    grown.insert(self.mul[x][y]);
                }
            }
            if grown == s {
                return s;
            }
            s = grown;
        }
    }

    pub fn is_subbrace(&self, s: &Set) -> bool {
        self.subbrace_closure(s) == *s
    }

    pub fn is_ideal(&self, s: &Set) -> bool {
        self.is_subbrace(s) && (0..self.n).all(|a| s.iter().all(|&z| s.contains(&self.star(a, z)) && s.contains(&self.star(z, a))))
    }

    pub fn is_left_ideal(&self, s: &Set) -> bool {
        self.is_subbrace(s) && (0..self.n).all(|a| s.iter().all(|&z| s.contains(&self.star(a, z))))
    }

    pub fn star_center(&self) -> Set {
        (0..self.n).filter(|&a| (0..self.n).all(|x| self.star(a, x) == 0 && self.star(x, a) == 0)).collect()
    }

    pub fn mult_center(&self) -> Set {
        (0..self.n).filter(|&a| (0..self.n).all(|x| self.mul[a][x] == self.mul[x][a])).collect()
    }

    /// `ζ_{k+1} = {a : a⋆x, x⋆a ∈ ζ_k for all x}`, until it stops growing.
    pub fn upper_series(&self) -> Vec<Set> {
        let mut chain = vec![Set::from([0])];
        loop {
            let z = chain.last().unwrap();
            let next: Set =
                (0..self.n).filter(|&a| (0..self.n).all(|x| z.contains(&self.star(a, x)) && z.contains(&self.star(x, a)))).collect();
            if next == *z {
                return chain;
            }
            chain.push(next);
        }
    }

    pub fn star_span(&self, k: &Set, l: &Set) -> Set {
        let products: Set = k.iter().flat_map(|&x| l.iter().map(move |&y| (x, y))).map(|(x, y)| self.star(x, y)).collect();
        self.additive_span(&products)
    }

    /// First `len` terms of the left series `A^{k+1} = A ⋆ A^k`.
    pub fn left_terms(&self, len: usize) -> Vec<Set> {
        let mut t = vec![self.all()];
        while t.len() < len {
            let next = self.star_span(&self.all(), t.last().unwrap());
            t.push(next);
        }
        t
    }

    pub fn right_terms(&self, len: usize) -> Vec<Set> {
        let mut t = vec![self.all()];
        while t.len() < len {
            let next = self.star_span(t.last().unwrap(), &self.all());
            t.push(next);
        }
        t
    }

    /// First `len` terms of `A^[m+1] = span ∪_i A^[i] ⋆ A^[m+1−i]`, with no
    /// early stopping.
    pub fn strong_terms(&self, len: usize) -> Vec<Set> {
        let mut t = vec![self.all()];
        while t.len() < len {
            let m = t.len();
            let mut acc = Set::new();
            for i in 0..m {
                acc.extend(self.star_span(&t[i], &t[m - 1 - i]));
            }
            t.push(self.additive_span(&acc));
        }
        t
    }
}

pub fn set_of(v: &[usize]) -> Set {
    v.iter().copied().collect()
}

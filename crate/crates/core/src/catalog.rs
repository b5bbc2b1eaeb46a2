//! Built-in braces used as the default verification corpus.

use crate::brace::{direct_product, radical_ring_brace, trivial_brace, validate_brace, Brace};
use crate::error::Result;
use crate::group::{cyclic, make_abelian};
use crate::verify::CorpusEntry;

/// `a∘b = a + (−1)^a b` on `Z_n` for even `n`; its multiplicative group is
/// dihedral for `n ≥ 6`.
pub fn dihedral_brace(n: usize) -> Result<Brace> {
    let add = cyclic(n)?.rows();
    let mul: Vec<Vec<usize>> =
        (0..n).map(|a| (0..n).map(|b| if a % 2 == 0 { (a + b) % n } else { (a + n - b) % n }).collect()).collect();
    validate_brace(&add, &mul)
}

/// The B4 brace `a∘b = a + b + 2ab` on `Z_4`.
pub fn b4() -> Brace {
    radical_ring_brace(4, 2).expect("2·Z_4 is a radical ring")
}

fn trivial(ty: &[usize]) -> Result<Brace> {
    trivial_brace(&make_abelian(ty)?)
}

/// Names and braces of the catalog, in a fixed order.
pub fn catalog() -> Result<Vec<CorpusEntry>> {
    let mut out = vec![];
    let mut push = |name: &str, brace: Brace| out.push(CorpusEntry { name: name.to_string(), brace });
    for (name, ty) in [
        ("trivial-z1", vec![1]),
        ("trivial-z2", vec![2]),
        ("trivial-z3", vec![3]),
        ("trivial-z4", vec![4]),
        ("trivial-z2xz2", vec![2, 2]),
        ("trivial-z6", vec![6]),
        ("trivial-z8", vec![8]),
        ("trivial-z2xz2xz2", vec![2, 2, 2]),
        ("trivial-z2^4", vec![2, 2, 2, 2]),
    ] {
        push(name, trivial(&ty)?);
    }
    push("b4", b4());
    for (n, c) in [(9, 3), (8, 2), (8, 4), (16, 2), (16, 4), (16, 8), (27, 3)] {
        push(&format!("radical-{n}-{c}"), radical_ring_brace(n, c)?);
    }
    for n in [6, 8, 16] {
        push(&format!("dihedral-{n}"), dihedral_brace(n)?);
    }
    push("b4xz2", direct_product(&b4(), &trivial(&[2])?)?);
    push("b4xz3", direct_product(&b4(), &trivial(&[3])?)?);
    push("b4xb4", direct_product(&b4(), &b4())?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series;

    #[test]
    fn catalog_members_validate() {
        let c = catalog().unwrap();
        assert_eq!(c.len(), 23);
        for e in &c {
            assert!(e.brace.validate().is_ok(), "{}", e.name);
        }
    }

    #[test]
    fn dihedral_six_is_not_star_nilpotent() {
        let d = dihedral_brace(6).unwrap();
        assert!(!series::is_star_nilpotent(&d));
        assert!(!d.multiplicative().is_abelian());
        assert!(series::is_star_nilpotent(&dihedral_brace(8).unwrap()));
        assert!(dihedral_brace(5).is_err());
    }
}

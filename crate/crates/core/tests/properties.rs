mod common;

use std::sync::OnceLock;

use bracelab::enumeration::{census, CensusInvariants};
use bracelab::io::{parse_brace_document, BraceDocument};
use bracelab::verify::{self, Status};
use bracelab::{direct_product, is_isomorphic, validate_brace, Brace};
use common::Tables;
use proptest::prelude::*;
use proptest::sample::{select, Index};

fn small_braces() -> &'static [Brace] {
    static CELL: OnceLock<Vec<Brace>> = OnceLock::new();
    CELL.get_or_init(|| (1..=8).flat_map(|n| census(n).unwrap()).map(|r| r.representative).collect())
}

fn brace() -> impl Strategy<Value = Brace> {
    select(small_braces().to_vec())
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    // Zero stays fixed; the other labels are shuffled.
    Just((1..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|rest| std::iter::once(0).chain(rest).collect())
}

fn relabeled() -> impl Strategy<Value = (Brace, Vec<usize>)> {
    brace().prop_flat_map(|b| {
        let n = b.order();
        (Just(b), perm(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn document_round_trip(b in brace(), name in "[a-z][a-z0-9-]{0,12}") {
        let doc = BraceDocument::from_brace(&b, Some(&name), None);
        let text = doc.render();
        let (back, parsed) = parse_brace_document(text.as_bytes()).unwrap();
        prop_assert_eq!(back.name.as_deref(), Some(name.as_str()));
        prop_assert_eq!(parsed.add_rows(), b.add_rows());
        prop_assert_eq!(parsed.mul_rows(), b.mul_rows());
        prop_assert_eq!(back.render(), text);
    }

    #[test]
    fn relabeling_preserves_class((b, p) in relabeled()) {
        let r = b.relabel(&p);
        prop_assert!(r.validate().is_ok());
        prop_assert!(is_isomorphic(&b, &r).is_some());
        prop_assert_eq!(CensusInvariants::of(&b).unwrap(), CensusInvariants::of(&r).unwrap());
    }

    #[test]
    fn relabeling_matches_naive_tables((b, p) in relabeled()) {
        let (t, r) = (Tables::of(&b), Tables::of(&b.relabel(&p)));
        for a in 0..t.n {
            for x in 0..t.n {
                prop_assert_eq!(r.star(p[a], p[x]), p[t.star(a, x)]);
            }
        }
    }

    #[test]
    fn identities_hold_on_products(b1 in brace(), b2 in brace()) {
        prop_assume!(b1.order() * b2.order() <= 16);
        let b = direct_product(&b1, &b2).unwrap();
        for c in verify::check_identities(&b) {
            prop_assert_ne!(c.status, Status::Fail, "{} failed: {:?}", c.claim_id, c.witness);
        }
    }

    #[test]
    fn mutation_detected_iff_axioms_fail(b in brace(), i in any::<Index>(), j in any::<Index>(), k in any::<Index>()) {
        let n = b.order();
        prop_assume!(n > 1);
        let (a, x) = (i.index(n), j.index(n));
        let mut mul = b.mul_rows();
        mul[a][x] = (mul[a][x] + 1 + k.index(n - 1)) % n;
        let strict = validate_brace(&b.add_rows(), &mul).is_ok();
        match Brace::from_tables_unchecked(&b.add_rows(), &mul) {
            Ok(unchecked) => {
                let axioms = verify::check_identities(&unchecked)
                    .into_iter()
                    .find(|c| c.claim_id == "brace-axioms")
                    .unwrap();
                prop_assert_eq!(strict, axioms.status == Status::Pass);
            }
            Err(_) => prop_assert!(!strict),
        }
    }
}

//! Finite left braces: validation, ideals, central and descending series,
//! enumeration of small braces and machine checks of structural identities.

pub mod brace;
pub mod catalog;
pub mod cli;
pub mod enumeration;
pub mod error;
pub mod group;
pub mod ideals;
pub mod io;
pub mod limits;
pub mod series;
pub mod subset;
pub mod verify;

pub use brace::{direct_product, is_isomorphic, radical_ring_brace, trivial_brace, validate_brace, Brace};
pub use error::{Error, Result};
pub use group::{make_abelian, CayleyGroup};
pub use subset::Subset;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/braces.md")]
    mod braces {}
    #[doc = include_str!("../../../book/src/ideals.md")]
    mod ideals {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/census.md")]
    mod census {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

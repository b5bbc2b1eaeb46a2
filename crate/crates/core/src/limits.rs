//! Size caps shared by the constructors and enumerators.

use std::env;

/// Name of the environment variable that overrides every default cap.
pub const MAX_ORDER_VAR: &str = "BRACELAB_MAX_ORDER";

/// Upper bounds on carrier sizes.
///
/// `max_order` bounds any table the library will build. `enumeration_cap`
/// bounds the operations that list subgroups, automorphisms or ideals, and
/// `census_cap` bounds the order accepted by the census engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    pub enumeration_cap: usize,
    pub census_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 4096,
            enumeration_cap: 64,
            census_cap: 16,
        }
    }
}

impl Limits {
    /// Defaults, with every cap replaced by `BRACELAB_MAX_ORDER` when it is
    /// set to a positive integer.
    pub fn current() -> Self {
        Self::from_override(env::var(MAX_ORDER_VAR).ok().as_deref())
    }

    pub fn from_override(value: Option<&str>) -> Self {
        match value.and_then(|v| v.trim().parse::<usize>().ok()) {
            Some(cap) if cap > 0 => Limits {
                max_order: cap,
                enumeration_cap: cap,
                census_cap: cap,
            },
            _ => Limits::default(),
        }
    }
}

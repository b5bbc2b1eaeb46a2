//! Executable checks of brace identities and structural lemmas.
//!
//! Every check is phrased as a family of *instances* (element tuples,
//! subsets, primes) on which a hypothesis is evaluated first. A claim whose
//! hypothesis admits no instance on a brace is `vacuous` there. A failing
//! instance is reported as a [`Witness`], and [`revalidate`] recomputes the
//! claim on exactly that instance from scratch.

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brace::Brace;
use crate::error::{Error, Result};
use crate::ideals;
use crate::series::{self, SeriesKind, SeriesReport};
use crate::subset::Subset;

pub const REPORT_FORMAT: &str = "suite-report-v1";

/// Reason attached to every statement the suite cannot exercise.
pub const OUT_OF_SCOPE_REASON: &str = "hypothesis requires infinite additive order";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
}

/// A failing instance. `elements` holds brace elements and integer
/// parameters in the order documented for the claim; `sets` holds subsets
/// as ascending element lists.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Witness {
    pub elements: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Witness {
    fn tuple(t: &[usize]) -> Self {
        Witness { elements: t.iter().map(|&x| x as i64).collect(), ..Default::default() }
    }

    fn set(s: &Subset, extra: &[i64]) -> Self {
        Witness { elements: extra.to_vec(), sets: vec![s.elements()], note: String::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimCheck {
    pub claim_id: &'static str,
    pub scope: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub braces_checked: usize,
    /// Instances on which the hypothesis held and the conclusion was tested.
    pub instances: u64,
    pub elapsed: Duration,
}

/// One registry entry: a runnable claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClaimSpec {
    pub id: &'static str,
    pub statement: &'static str,
}

/// A statement the suite deliberately does not run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutOfScope {
    pub id: &'static str,
    pub reason: &'static str,
}

/// Claims run by [`check_identities`].
pub const IDENTITY_CLAIMS: &[ClaimSpec] = &[
    ClaimSpec { id: "brace-axioms", statement: "(A,+) abelian group, (A,·) group, a(b+c) = ab + ac − a" },
    ClaimSpec {
        id: "prop-p1-i",
        statement: "ab⁻¹ = −λ_{ab⁻¹}(b) + a, a − b = λ_b(b⁻¹a), a + b = aλ_{a⁻¹}(b)",
    },
    ClaimSpec { id: "prop-p1-ii", statement: "a⋆(b+c) = a⋆b + a⋆c" },
    ClaimSpec { id: "prop-p1-iii", statement: "(ab)⋆c = a⋆(b⋆c) + b⋆c + a⋆c" },
    ClaimSpec { id: "prop-p1-iv", statement: "(a+b)⋆c = a⋆(λ_{a⁻¹}(b)⋆c) + λ_{a⁻¹}(b)⋆c + a⋆c" },
    ClaimSpec { id: "prop-p1-v-lambda", statement: "λ_a(x+y) = λ_a(x) + λ_a(y), λ_a∘λ_b = λ_{ab}" },
    ClaimSpec { id: "prop-p1-vi", statement: "λ_y(b⋆a) = yby⁻¹ ⋆ λ_y(a)" },
    ClaimSpec {
        id: "prop-p1-vii-conjugation",
        statement: "yby⁻¹ = λ_y(λ_b(y⁻¹) − y⁻¹ + b) = λ_y(b⋆y⁻¹ + b)",
    },
    ClaimSpec { id: "lemma-l1", statement: "a(Σb_i − Σc_j) = Σab_i − Σac_j + (k−n+1)a for n, k ≤ 3" },
    ClaimSpec { id: "lemma-l3-i", statement: "x⋆(ka) = k(x⋆a)" },
    ClaimSpec { id: "lemma-l3-ii", statement: "a ∈ ζ₂ ⇒ (ka)⋆x = k(a⋆x)" },
];

/// Claims run by [`check_structure_lemmas`].
pub const STRUCTURE_CLAIMS: &[ClaimSpec] = &[
    ClaimSpec { id: "lemma-extra1-i", statement: "a⋆a = 0 ⇒ br(a) = ⟨a⟩ and · coincides with + on it" },
    ClaimSpec { id: "lemma-extra1-ii", statement: "a ∈ ζ ⇒ ⟨a⟩ is an ideal" },
    ClaimSpec { id: "lemma-extra1-iii", statement: "a ∈ ζ₂ ⇒ br(a) = ⟨a⟩ + ⟨a⋆a⟩" },
    ClaimSpec { id: "lemma-l8", statement: "a⋆a = 0 ⇒ br(a, ζ) = ⟨a⟩ + ζ is abelian" },
    ClaimSpec { id: "prop4", statement: "nonzero ideal K ≤ ζ_∞ ⇒ K ∩ ζ ≠ 0" },
    ClaimSpec { id: "lemma-hyperideal", statement: "S subbrace ⇒ S + ζ_k is an ideal of S + ζ_{k+1}" },
    ClaimSpec {
        id: "cor49-vacuity",
        statement: "⋆-hypercentral with torsion-free (A,+) ⇒ every upper factor is torsion-free",
    },
    ClaimSpec { id: "marco-i", statement: "⋆-nilpotent ⇒ additive torsion = multiplicative torsion, an ideal" },
    ClaimSpec {
        id: "marco-ii",
        statement: "⋆-nilpotent ⇒ additive and multiplicative p-parts agree, form an ideal and the unique maximal p-subbrace",
    },
    ClaimSpec { id: "lemma-l10", statement: "T-brace, a ∈ ζ_n ⇒ br(a) is an ideal" },
    ClaimSpec { id: "lemma-extra2-i", statement: "T-brace, a ∈ ζ_n ⇒ br(a) = ⟨a₁⟩ + … + ⟨a_n⟩, a_{i+1} = a_i⋆a_i" },
    ClaimSpec { id: "t-ideal-heredity", statement: "T-brace ⇒ every ideal is a T-brace" },
    ClaimSpec { id: "t-nilpotent-dedekind", statement: "⋆-nilpotent T-brace ⇒ Dedekind" },
    ClaimSpec { id: "equiv-strong-star", statement: "strongly nilpotent ⟺ ⋆-nilpotent ⟺ left and right nilpotent" },
    ClaimSpec { id: "star-center-contract", statement: "ζ(⋆,A) is an ideal inside the centre of (A,·)" },
    ClaimSpec {
        id: "ideal-definition-consistency",
        statement: "λ-closure ⟺ A⋆L ⊆ L on additive subgroups; ideal ⟺ λ-closed normal subbrace",
    },
    ClaimSpec { id: "ideal-normality", statement: "every ideal is a normal subgroup of (A,·)" },
    ClaimSpec {
        id: "series-terms",
        statement: "ζ_k and A^(k) are ideals, A^k are left ideals, chains are monotone",
    },
    ClaimSpec { id: "quotient-validity", statement: "A/I is a brace and x ↦ x + I preserves + and ·" },
    ClaimSpec { id: "lemma-l21-ii-sanity", statement: "T-brace, a, b ∈ ζ_∞ ⇒ a⋆b has finite additive order" },
    ClaimSpec { id: "prop-p22-sanity", statement: "T-brace ⇒ ζ_n/ζ has periodic additive group" },
];

/// Statements whose hypotheses cannot be met on a finite carrier.
pub const OUT_OF_SCOPE: &[OutOfScope] = &[
    OutOfScope { id: "thm-a", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "cor-1", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "cor-2", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "cor-3", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "thm-b", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "lemma-l5", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "prop-p11", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "cor-c7", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "lemma-extra2-ii", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "lemma-l12", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "lemma-l21-i", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "lemma-l28", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "lemma-l29", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "lemma-c212", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "cor-c213", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "lemma-l210", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "lemma-l214", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "cor-c215", reason: OUT_OF_SCOPE_REASON },
    OutOfScope { id: "transfinite-series", reason: OUT_OF_SCOPE_REASON },
];

/// Every registered claim, identities first.
pub fn registry() -> impl Iterator<Item = &'static ClaimSpec> {
    IDENTITY_CLAIMS.iter().chain(STRUCTURE_CLAIMS)
}

pub fn statement_of(id: &str) -> Option<&'static str> {
    registry().find(|c| c.id == id).map(|c| c.statement)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Identity checks are exhaustive up to this order and sampled above.
    pub exhaustive_up_to: usize,
    pub samples: usize,
    pub seed: u64,
    /// Number of braces listed in the timing section.
    pub slowest: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { exhaustive_up_to: 16, samples: 100_000, seed: 0x5eed_b1ace, slowest: 5 }
    }
}

/// Precomputed structure shared by the checks on one brace.
struct Ctx<'a> {
    b: &'a Brace,
    upper: SeriesReport,
    zeta: Subset,
    ideals: Vec<Subset>,
    subbraces: Vec<Subset>,
    additive_subgroups: Vec<Subset>,
    t_brace: bool,
    star_nilpotent: bool,
}

impl<'a> Ctx<'a> {
    fn new(b: &'a Brace) -> Result<Self> {
        let upper = series::upper_star_central_series(b);
        let additive_subgroups = ideals::additive_subgroups(b)?;
        let subbraces: Vec<Subset> =
            additive_subgroups.iter().filter(|s| ideals::is_subbrace(b, s).holds()).cloned().collect();
        let ideal_list: Vec<Subset> = subbraces.iter().filter(|s| ideals::is_ideal(b, s).holds()).cloned().collect();
        Ok(Ctx {
            star_nilpotent: upper.reaches_top_or_bottom,
            zeta: series::star_center(b),
            t_brace: ideals::is_t_brace(b)?.holds(),
            upper,
            ideals: ideal_list,
            subbraces,
            additive_subgroups,
            b,
        })
    }

    /// `ζ_k`, constant once the series stabilises.
    fn zeta_k(&self, k: usize) -> &Subset {
        series::hypercenter_term(&self.upper, k)
    }

    fn hypercenter(&self) -> &Subset {
        self.upper.last()
    }

    /// Least `n` with `a ∈ ζ_n`.
    fn height(&self, a: usize) -> Option<usize> {
        self.upper.chain.iter().position(|z| z.contains(a))
    }
}

fn set_sum(b: &Brace, x: &Subset, y: &Subset) -> Subset {
    b.additive_span(&x.union(y))
}

fn subset_of(order: usize, elements: &[usize]) -> Option<Subset> {
    if elements.iter().any(|&x| x >= order) {
        return None;
    }
    Some(Subset::from_elements(order, elements.iter().copied()))
}

fn elem(b: &Brace, w: &Witness, i: usize) -> Option<usize> {
    let v = *w.elements.get(i)?;
    (v >= 0 && (v as usize) < b.order()).then_some(v as usize)
}

// ---------------------------------------------------------------------------
// identities

/// Arity of the element tuple of each tuple-quantified identity.
fn identity_arity(id: &str) -> usize {
    match id {
        "prop-p1-i" | "prop-p1-vii-conjugation" => 2,
        _ => 3,
    }
}

/// Whether the identity fails at the tuple. Tuples: `(a,b)` for i,
/// `(a,b,c)` for ii–iv, `(a,b,x)` for v, `(y,b,a)` for vi, `(y,b)` for vii.
fn identity_fails(id: &str, b: &Brace, t: &[usize]) -> bool {
    let (add, sub, mul, neg) = (|x, y| b.add(x, y), |x, y| b.sub(x, y), |x, y| b.mul(x, y), |x| b.neg(x));
    let (lam, star, inv) = (|a, x| b.lambda(a, x), |x, y| b.star(x, y), |x| b.inv(x));
    match id {
        "prop-p1-i" => {
            let (a, c) = (t[0], t[1]);
            let ab1 = mul(a, inv(c));
            ab1 != add(neg(lam(ab1, c)), a) || sub(a, c) != lam(c, mul(inv(c), a)) || add(a, c) != mul(a, lam(inv(a), c))
        }
        "prop-p1-ii" => {
            let (a, x, y) = (t[0], t[1], t[2]);
            star(a, add(x, y)) != add(star(a, x), star(a, y))
        }
        "prop-p1-iii" => {
            let (a, x, c) = (t[0], t[1], t[2]);
            star(mul(a, x), c) != add(add(star(a, star(x, c)), star(x, c)), star(a, c))
        }
        "prop-p1-iv" => {
            let (a, x, c) = (t[0], t[1], t[2]);
            let l = star(lam(inv(a), x), c);
            star(add(a, x), c) != add(add(star(a, l), l), star(a, c))
        }
        "prop-p1-v-lambda" => {
            let (a, y, x) = (t[0], t[1], t[2]);
            lam(a, add(y, x)) != add(lam(a, y), lam(a, x)) || lam(a, lam(y, x)) != lam(mul(a, y), x)
        }
        "prop-p1-vi" => {
            let (y, x, a) = (t[0], t[1], t[2]);
            let conj = mul(mul(y, x), inv(y));
            lam(y, star(x, a)) != star(conj, lam(y, a))
        }
        "prop-p1-vii-conjugation" => {
            let (y, x) = (t[0], t[1]);
            let conj = mul(mul(y, x), inv(y));
            let yi = inv(y);
            conj != lam(y, add(sub(lam(x, yi), yi), x)) || conj != lam(y, add(star(x, yi), x))
        }
        _ => unreachable!("not a tuple identity: {id}"),
    }
}

/// `[n, k, a, b_1..b_n, c_1..c_k]`.
fn l1_fails(b: &Brace, t: &[i64]) -> Option<bool> {
    let n = usize::try_from(*t.first()?).ok()?;
    let k = usize::try_from(*t.get(1)?).ok()?;
    if t.len() != 3 + n + k || t.iter().skip(2).any(|&x| x < 0 || x as usize >= b.order()) {
        return None;
    }
    let e: Vec<usize> = t[2..].iter().map(|&x| x as usize).collect();
    let a = e[0];
    let (bs, cs) = e[1..].split_at(n);
    let mut s = 0;
    let mut rhs = 0;
    for &x in bs {
        s = b.add(s, x);
        rhs = b.add(rhs, b.mul(a, x));
    }
    for &x in cs {
        s = b.sub(s, x);
        rhs = b.sub(rhs, b.mul(a, x));
    }
    rhs = b.add(rhs, b.multiple(a, k as i64 - n as i64 + 1));
    Some(b.mul(a, s) != rhs)
}

/// `[x, a, k]` for l3-i and `[a, x, k]` for l3-ii. The l3-ii hypothesis
/// `a ∈ ζ₂` is part of the instance.
fn l3_fails(id: &str, b: &Brace, zeta2: Option<&Subset>, t: &[i64]) -> Option<bool> {
    let (x, a, k) = (*t.first()?, *t.get(1)?, *t.get(2)?);
    let n = b.order() as i64;
    if !(0..n).contains(&x) || !(0..n).contains(&a) {
        return None;
    }
    let (x, a) = (x as usize, a as usize);
    Some(match id {
        "lemma-l3-i" => b.star(x, b.multiple(a, k)) != b.multiple(b.star(x, a), k),
        _ => {
            let (a, x) = (x, a);
            zeta2?.contains(a) && b.star(b.multiple(a, k), x) != b.multiple(b.star(a, x), k)
        }
    })
}

struct Outcome {
    witness: Option<Witness>,
    instances: u64,
    scope: String,
}

fn tuples(n: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(arity as u32);
    (0..total).map(move |mut i| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = i % n;
            i /= n;
        }
        t
    })
}

fn sampled_tuples(n: usize, arity: usize, count: usize, seed: u64) -> impl Iterator<Item = Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(move |_| (0..arity).map(|_| rng.gen_range(0..n)).collect())
}

fn tuple_identity(id: &'static str, b: &Brace, cfg: &SuiteConfig) -> Outcome {
    let n = b.order();
    let arity = identity_arity(id);
    let exhaustive = n <= cfg.exhaustive_up_to;
    let iter: Box<dyn Iterator<Item = Vec<usize>>> = if exhaustive {
        Box::new(tuples(n, arity))
    } else {
        Box::new(sampled_tuples(n, arity, cfg.samples, cfg.seed))
    };
    let mut instances = 0;
    let mut witness = None;
    for t in iter {
        instances += 1;
        if identity_fails(id, b, &t) {
            witness = Some(Witness::tuple(&t));
            break;
        }
    }
    let scope = if exhaustive {
        format!("all {arity}-tuples ({instances})")
    } else {
        format!("{} sampled {arity}-tuples, seed {:#x}", cfg.samples, cfg.seed)
    };
    Outcome { witness, instances, scope }
}

/// Exhaustive over all tuples: for fixed `a` both sides depend only on
/// `(Σb − Σc, Σab − Σac)`, so the reachable pairs are tracked with one
/// representative tuple each.
fn lemma_l1(b: &Brace) -> Outcome {
    let n = b.order();
    let mut instances = 0u64;
    for a in 0..n {
        // additions[i]: reachable pairs after i summands b
        let mut additions: Vec<HashMap<(usize, usize), Vec<usize>>> = vec![HashMap::from([((0, 0), vec![])])];
        for _ in 0..3 {
            let prev = additions.last().unwrap();
            let mut next = HashMap::new();
            let mut keys: Vec<_> = prev.keys().copied().collect();
            keys.sort();
            for (s, p) in keys {
                for x in 0..n {
                    next.entry((b.add(s, x), b.add(p, b.mul(a, x)))).or_insert_with(|| {
                        let mut t = prev[&(s, p)].clone();
                        t.push(x);
                        t
                    });
                }
            }
            additions.push(next);
        }
        for (nb, layer) in additions.iter().enumerate() {
            let mut state: HashMap<(usize, usize), (Vec<usize>, Vec<usize>)> =
                layer.iter().map(|(k, v)| (*k, (v.clone(), vec![]))).collect();
            for kc in 0..=3 {
                if kc > 0 {
                    let mut next = HashMap::new();
                    let mut keys: Vec<_> = state.keys().copied().collect();
                    keys.sort();
                    for (s, p) in keys {
                        for x in 0..n {
                            next.entry((b.sub(s, x), b.sub(p, b.mul(a, x)))).or_insert_with(|| {
                                let (bs, mut cs) = state[&(s, p)].clone();
                                cs.push(x);
                                (bs, cs)
                            });
                        }
                    }
                    state = next;
                }
                let mut keys: Vec<_> = state.keys().copied().collect();
                keys.sort();
                for key in keys {
                    instances += 1;
                    let (bs, cs) = &state[&key];
                    let mut t = vec![nb as i64, kc as i64, a as i64];
                    t.extend(bs.iter().chain(cs).map(|&x| x as i64));
                    if l1_fails(b, &t) == Some(true) {
                        return Outcome {
                            witness: Some(Witness { elements: t, ..Default::default() }),
                            instances,
                            scope: "n, k ∈ 0..=3, all tuples via reachable (Σ, Σa·) pairs".into(),
                        };
                    }
                }
            }
        }
    }
    Outcome { witness: None, instances, scope: "n, k ∈ 0..=3, all tuples via reachable (Σ, Σa·) pairs".into() }
}

fn lemma_l3(id: &'static str, b: &Brace, zeta2: Option<&Subset>, cfg: &SuiteConfig) -> Outcome {
    let n = b.order();
    let bound = n as i64;
    let exhaustive = n <= cfg.exhaustive_up_to;
    let iter: Box<dyn Iterator<Item = [i64; 3]>> = if exhaustive {
        Box::new((0..n as i64).flat_map(move |x| (0..n as i64).flat_map(move |a| (-bound..=bound).map(move |k| [x, a, k]))))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        Box::new((0..cfg.samples).map(move |_| [rng.gen_range(0..bound), rng.gen_range(0..bound), rng.gen_range(-bound..=bound)]))
    };
    let mut instances = 0;
    for t in iter {
        if id == "lemma-l3-ii" && !zeta2.is_some_and(|z| z.contains(t[0] as usize)) {
            continue;
        }
        instances += 1;
        if l3_fails(id, b, zeta2, &t) == Some(true) {
            return Outcome { witness: Some(Witness { elements: t.to_vec(), ..Default::default() }), instances, scope: String::new() };
        }
    }
    let scope = if exhaustive {
        format!("all (x, a, k) with |k| ≤ {n}")
    } else {
        format!("{} sampled (x, a, k), seed {:#x}", cfg.samples, cfg.seed)
    };
    Outcome { witness: None, instances, scope }
}

fn axiom_witness(b: &Brace) -> Option<Witness> {
    b.validate().err().map(|f| Witness {
        elements: f.witness().into_iter().map(|x| x as i64).collect(),
        sets: vec![],
        note: f.axiom().code().to_string(),
    })
}

fn finish(id: &'static str, started: Instant, o: Outcome) -> ClaimCheck {
    let status = if o.witness.is_some() {
        Status::Fail
    } else if o.instances == 0 {
        Status::Vacuous
    } else {
        Status::Pass
    };
    ClaimCheck {
        claim_id: id,
        scope: o.scope,
        status,
        witness: o.witness,
        braces_checked: 1,
        instances: o.instances,
        elapsed: started.elapsed(),
    }
}

/// The identity claims on one brace.
///
/// Braces failing the axioms (possible through
/// [`Brace::from_tables_unchecked`]) get every identity evaluated on their
/// raw tables; `lemma-l3-ii` is skipped for them since `ζ₂` is only defined
/// for braces.
pub fn check_identities(b: &Brace) -> Vec<ClaimCheck> {
    check_identities_with(b, &SuiteConfig::default())
}

pub fn check_identities_with(b: &Brace, cfg: &SuiteConfig) -> Vec<ClaimCheck> {
    let mut out = vec![];
    let t = Instant::now();
    let w = axiom_witness(b);
    let valid = w.is_none();
    out.push(finish("brace-axioms", t, Outcome { witness: w, instances: 1, scope: "full tables".into() }));
    for spec in &IDENTITY_CLAIMS[1..8] {
        let t = Instant::now();
        out.push(finish(spec.id, t, tuple_identity(spec.id, b, cfg)));
    }
    let t = Instant::now();
    out.push(finish("lemma-l1", t, lemma_l1(b)));
    let t = Instant::now();
    out.push(finish("lemma-l3-i", t, lemma_l3("lemma-l3-i", b, None, cfg)));
    if valid {
        let t = Instant::now();
        let upper = series::upper_star_central_series(b);
        let z2 = series::hypercenter_term(&upper, 2).clone();
        let mut o = lemma_l3("lemma-l3-ii", b, Some(&z2), cfg);
        o.scope = format!("a ∈ ζ₂ ({} elements), {}", z2.len(), o.scope);
        out.push(finish("lemma-l3-ii", t, o));
    }
    out
}

// ---------------------------------------------------------------------------
// structural claims

/// Instances of a structural claim on which the hypothesis holds.
fn instances(id: &str, c: &Ctx) -> Vec<Witness> {
    let b = c.b;
    let n = b.order();
    let elems = |f: &dyn Fn(usize) -> bool| -> Vec<Witness> { (0..n).filter(|&a| f(a)).map(|a| Witness::tuple(&[a])).collect() };
    match id {
        "lemma-extra1-i" | "lemma-l8" => elems(&|a| b.star(a, a) == 0),
        "lemma-extra1-ii" => elems(&|a| c.zeta.contains(a)),
        "lemma-extra1-iii" => elems(&|a| c.zeta_k(2).contains(a)),
        "prop4" => c
            .ideals
            .iter()
            .filter(|k| !k.is_zero() && k.is_subset(c.hypercenter()))
            .map(|k| Witness::set(k, &[]))
            .collect(),
        "lemma-hyperideal" => {
            let top = c.upper.chain.len();
            c.subbraces.iter().flat_map(|s| (0..top).map(move |k| Witness::set(s, &[k as i64]))).collect()
        }
        "cor49-vacuity" => {
            if c.star_nilpotent && series::is_additively_torsion_free(b) {
                vec![Witness::default()]
            } else {
                vec![]
            }
        }
        "marco-i" if c.star_nilpotent => vec![Witness::default()],
        "marco-ii" if c.star_nilpotent => {
            series::prime_divisors(n).into_iter().map(|p| Witness { elements: vec![p as i64], ..Default::default() }).collect()
        }
        "marco-i" | "marco-ii" => vec![],
        "lemma-l10" | "lemma-extra2-i" if c.t_brace => elems(&|a| c.hypercenter().contains(a)),
        "lemma-l21-ii-sanity" if c.t_brace => {
            let h = c.hypercenter();
            h.iter().flat_map(|a| h.iter().map(move |x| Witness::tuple(&[a, x]))).collect()
        }
        "prop-p22-sanity" if c.t_brace => elems(&|a| c.hypercenter().contains(a)),
        "t-ideal-heredity" if c.t_brace => c.ideals.iter().map(|i| Witness::set(i, &[])).collect(),
        "t-nilpotent-dedekind" if c.t_brace && c.star_nilpotent => vec![Witness::default()],
        "lemma-l10" | "lemma-extra2-i" | "lemma-l21-ii-sanity" | "prop-p22-sanity" | "t-ideal-heredity"
        | "t-nilpotent-dedekind" => vec![],
        "equiv-strong-star" | "star-center-contract" => vec![Witness::default()],
        "ideal-definition-consistency" => c.additive_subgroups.iter().map(|s| Witness::set(s, &[])).collect(),
        "ideal-normality" | "quotient-validity" => c.ideals.iter().map(|i| Witness::set(i, &[])).collect(),
        "series-terms" => (0..4).map(|k| Witness { elements: vec![k], ..Default::default() }).collect(),
        _ => unreachable!("unknown structural claim {id}"),
    }
}

fn series_kind(k: i64) -> Option<SeriesKind> {
    Some(match k {
        0 => SeriesKind::UpperStarCentral,
        1 => SeriesKind::Left,
        2 => SeriesKind::Right,
        3 => SeriesKind::Strong,
        _ => None?,
    })
}

fn is_p_power(mut k: usize, p: usize) -> bool {
    while k > 1 && k.is_multiple_of(p) {
        k /= p;
    }
    k == 1
}

/// Whether the conclusion of a structural claim fails on an instance.
/// Returns `None` if the instance is malformed or the hypothesis does not
/// hold on it.
fn structure_fails(id: &str, c: &Ctx, w: &Witness) -> Option<bool> {
    let b = c.b;
    let n = b.order();
    let set = |i: usize| w.sets.get(i).and_then(|s| subset_of(n, s));
    let single = |a: usize| Subset::from_elements(n, [a]);
    Some(match id {
        "lemma-extra1-i" => {
            let a = elem(b, w, 0)?;
            if b.star(a, a) != 0 {
                return None;
            }
            let cyc = b.cyclic(a);
            b.generated_subbrace(&single(a)) != cyc || cyc.iter().any(|x| cyc.iter().any(|y| b.mul(x, y) != b.add(x, y)))
        }
        "lemma-extra1-ii" => {
            let a = elem(b, w, 0)?;
            if !c.zeta.contains(a) {
                return None;
            }
            !ideals::is_ideal(b, &b.cyclic(a)).holds()
        }
        "lemma-extra1-iii" => {
            let a = elem(b, w, 0)?;
            if !c.zeta_k(2).contains(a) {
                return None;
            }
            b.generated_subbrace(&single(a)) != set_sum(b, &b.cyclic(a), &b.cyclic(b.star(a, a)))
        }
        "lemma-l8" => {
            let a = elem(b, w, 0)?;
            if b.star(a, a) != 0 {
                return None;
            }
            let sum = set_sum(b, &b.cyclic(a), &c.zeta);
            b.generated_subbrace(&c.zeta.union(&single(a))) != sum || sum.iter().any(|x| sum.iter().any(|y| b.star(x, y) != 0))
        }
        "prop4" => {
            let k = set(0)?;
            if k.is_zero() || !k.is_subset(c.hypercenter()) || !ideals::is_ideal(b, &k).holds() {
                return None;
            }
            k.intersection(&c.zeta).is_zero()
        }
        "lemma-hyperideal" => {
            let s = set(0)?;
            let k = usize::try_from(*w.elements.first()?).ok()?;
            if !ideals::is_subbrace(b, &s).holds() {
                return None;
            }
            let outer = set_sum(b, &s, c.zeta_k(k + 1));
            let inner = set_sum(b, &s, c.zeta_k(k));
            match b.restrict(&outer) {
                Err(_) => true,
                Ok(r) => !ideals::is_ideal(&r.brace, &r.pull(&inner)).holds(),
            }
        }
        "cor49-vacuity" => {
            if !(c.star_nilpotent && series::is_additively_torsion_free(b)) {
                return None;
            }
            // a nonzero element of finite order in some factor ζ_{k+1}/ζ_k
            c.upper.chain.windows(2).any(|pair| pair[1].iter().any(|x| !pair[0].contains(x)))
        }
        "marco-i" => {
            if !c.star_nilpotent {
                return None;
            }
            let add_torsion = Subset::from_elements(n, (0..n).filter(|&x| b.additive().element_order(x) > 0));
            let mul_torsion = Subset::from_elements(n, (0..n).filter(|&x| b.multiplicative().element_order(x) > 0));
            add_torsion != mul_torsion || !ideals::is_ideal(b, &add_torsion).holds()
        }
        "marco-ii" => {
            let p = usize::try_from(*w.elements.first()?).ok()?;
            if !c.star_nilpotent || p < 2 || !n.is_multiple_of(p) {
                return None;
            }
            let pa = series::additive_p_component(b, p);
            let pm = series::multiplicative_p_component(b, p);
            let periodic_p = |a: usize| is_p_power(b.generated_subbrace(&single(a)).len(), p);
            pa != pm
                || !ideals::is_ideal(b, &pa).holds()
                || !pa.iter().all(periodic_p)
                || (0..n).any(|a| periodic_p(a) && !pa.contains(a))
        }
        "lemma-l10" => {
            let a = elem(b, w, 0)?;
            if !c.t_brace || !c.hypercenter().contains(a) {
                return None;
            }
            !ideals::is_ideal(b, &b.generated_subbrace(&single(a))).holds()
        }
        "lemma-extra2-i" => {
            let a = elem(b, w, 0)?;
            if !c.t_brace {
                return None;
            }
            let height = c.height(a)?.max(1);
            let mut span = b.zero();
            let mut ai = a;
            for _ in 0..height {
                span = set_sum(b, &span, &b.cyclic(ai));
                ai = b.star(ai, ai);
            }
            let br = b.generated_subbrace(&single(a));
            br != span || !ideals::is_ideal(b, &br).holds()
        }
        "t-ideal-heredity" => {
            let i = set(0)?;
            if !c.t_brace || !ideals::is_ideal(b, &i).holds() {
                return None;
            }
            let r = b.restrict(&i).ok()?;
            !ideals::is_t_brace(&r.brace).ok()?.holds()
        }
        "t-nilpotent-dedekind" => {
            if !(c.t_brace && c.star_nilpotent) {
                return None;
            }
            !ideals::is_dedekind(b).ok()?.holds()
        }
        "equiv-strong-star" => !series::nilpotency_report(b).equivalence_holds(),
        "star-center-contract" => {
            let z = series::star_center(b);
            !ideals::is_ideal(b, &z).holds() || !z.is_subset(&b.mult_center())
        }
        "ideal-definition-consistency" => {
            let s = set(0)?;
            if !b.additive().is_subgroup(&s) {
                return None;
            }
            let lambda_closed = (0..n).all(|a| s.iter().all(|z| s.contains(b.lambda(a, z))));
            let star_closed = (0..n).all(|a| s.iter().all(|z| s.contains(b.star(a, z))));
            let normal_subbrace = ideals::is_subbrace(b, &s).holds() && b.multiplicative().is_normal(&s);
            lambda_closed != star_closed || ideals::is_ideal(b, &s).holds() != (lambda_closed && normal_subbrace)
        }
        "ideal-normality" => {
            let i = set(0)?;
            if !ideals::is_ideal(b, &i).holds() {
                return None;
            }
            !b.multiplicative().is_normal(&i)
        }
        "series-terms" => {
            let kind = series_kind(*w.elements.first()?)?;
            let report = match kind {
                SeriesKind::UpperStarCentral => series::upper_star_central_series(b),
                k => series::descending_series(b, k),
            };
            let monotone = report.chain.windows(2).all(|p| match kind {
                SeriesKind::UpperStarCentral => p[0].is_subset(&p[1]) && p[0] != p[1],
                _ => p[1].is_subset(&p[0]) && p[0] != p[1],
            });
            let terms_ok = report.chain.iter().all(|t| match kind {
                SeriesKind::Left => ideals::is_left_ideal(b, t).holds(),
                SeriesKind::Strong => ideals::is_subbrace(b, t).holds(),
                _ => ideals::is_ideal(b, t).holds(),
            });
            !monotone || !terms_ok
        }
        "quotient-validity" => {
            let i = set(0)?;
            if !ideals::is_ideal(b, &i).holds() {
                return None;
            }
            let q = b.quotient(&i).ok()?;
            let pr = &q.projection;
            q.brace.validate().is_err()
                || (0..n).any(|x| {
                    (0..n).any(|y| {
                        pr[b.add(x, y)] != q.brace.add(pr[x], pr[y]) || pr[b.mul(x, y)] != q.brace.mul(pr[x], pr[y])
                    })
                })
        }
        "lemma-l21-ii-sanity" => {
            let (a, x) = (elem(b, w, 0)?, elem(b, w, 1)?);
            if !c.t_brace || !c.hypercenter().contains(a) || !c.hypercenter().contains(x) {
                return None;
            }
            b.additive().element_order(b.star(a, x)) == 0
        }
        "prop-p22-sanity" => {
            let a = elem(b, w, 0)?;
            if !c.t_brace || !c.hypercenter().contains(a) {
                return None;
            }
            // some positive multiple of a lies in ζ
            !(1..=n as i64).any(|k| c.zeta.contains(b.multiple(a, k)))
        }
        _ => return None,
    })
}

/// Structural claims on one brace. Only errors from enumeration caps are
/// propagated; failures of claims are data.
pub fn check_structure_lemmas(b: &Brace) -> Result<Vec<ClaimCheck>> {
    let c = Ctx::new(b)?;
    Ok(STRUCTURE_CLAIMS
        .iter()
        .map(|spec| {
            let t = Instant::now();
            let all = instances(spec.id, &c);
            let mut checked = 0;
            let mut witness = None;
            for w in all {
                match structure_fails(spec.id, &c, &w) {
                    None => continue,
                    Some(false) => checked += 1,
                    Some(true) => {
                        checked += 1;
                        witness = Some(w);
                        break;
                    }
                }
            }
            let scope = structure_scope(spec.id, &c);
            finish(spec.id, t, Outcome { witness, instances: checked, scope })
        })
        .collect())
}

fn structure_scope(id: &str, c: &Ctx) -> String {
    match id {
        "lemma-extra1-i" | "lemma-l8" => "a with a⋆a = 0".into(),
        "lemma-extra1-ii" => format!("a ∈ ζ ({} elements)", c.zeta.len()),
        "lemma-extra1-iii" => format!("a ∈ ζ₂ ({} elements)", c.zeta_k(2).len()),
        "prop4" => "nonzero ideals inside ζ_∞".into(),
        "lemma-hyperideal" => format!("subbraces × k < {}", c.upper.chain.len()),
        "cor49-vacuity" => "⋆-nilpotent braces with torsion-free (A,+)".into(),
        "marco-i" | "marco-ii" => "⋆-nilpotent braces".into(),
        "lemma-l10" | "lemma-extra2-i" | "prop-p22-sanity" => "T-braces, a ∈ ζ_∞".into(),
        "lemma-l21-ii-sanity" => "T-braces, a, b ∈ ζ_∞".into(),
        "t-ideal-heredity" => "T-braces, every ideal".into(),
        "t-nilpotent-dedekind" => "⋆-nilpotent T-braces".into(),
        "ideal-definition-consistency" => "every additive subgroup".into(),
        "ideal-normality" | "quotient-validity" => "every ideal".into(),
        "series-terms" => "upper, left, right and strong chains".into(),
        _ => "whole brace".into(),
    }
}

/// Re-evaluates a claim on the instance described by `w`. True iff the
/// witness exhibits a genuine failure.
pub fn revalidate(claim_id: &str, b: &Brace, w: &Witness) -> bool {
    let as_usize = |w: &Witness| -> Option<Vec<usize>> {
        w.elements.iter().map(|&x| usize::try_from(x).ok().filter(|&x| x < b.order())).collect()
    };
    match claim_id {
        "brace-axioms" => axiom_witness(b).is_some_and(|found| found == *w),
        "prop-p1-i" | "prop-p1-ii" | "prop-p1-iii" | "prop-p1-iv" | "prop-p1-v-lambda" | "prop-p1-vi"
        | "prop-p1-vii-conjugation" => {
            as_usize(w).is_some_and(|t| t.len() == identity_arity(claim_id) && identity_fails(claim_id, b, &t))
        }
        "lemma-l1" => l1_fails(b, &w.elements) == Some(true),
        "lemma-l3-i" => l3_fails(claim_id, b, None, &w.elements) == Some(true),
        "lemma-l3-ii" => {
            b.validate().is_ok() && {
                let upper = series::upper_star_central_series(b);
                l3_fails(claim_id, b, Some(series::hypercenter_term(&upper, 2)), &w.elements) == Some(true)
            }
        }
        _ => {
            b.validate().is_ok()
                && Ctx::new(b).is_ok_and(|c| structure_fails(claim_id, &c, w) == Some(true))
        }
    }
}

// ---------------------------------------------------------------------------
// suite

/// A named corpus member.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub brace: Brace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimSummary {
    pub claim_id: String,
    pub statement: String,
    pub status: Status,
    pub passed: usize,
    pub failed: usize,
    pub vacuous: usize,
    pub braces_checked: usize,
    pub instances: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub claim_id: String,
    pub brace: String,
    pub scope: String,
    pub witness: Witness,
    pub revalidated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BraceTiming {
    pub brace: String,
    pub ms: f64,
}

/// Everything that varies between runs lives here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: f64,
    pub claims_ms: BTreeMap<String, f64>,
    pub slowest_braces: Vec<BraceTiming>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutOfScopeEntry {
    pub id: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub format: String,
    pub tool_version: String,
    pub corpus: Vec<String>,
    pub status: Status,
    pub passed_claims: usize,
    pub failed_claims: usize,
    pub vacuous_claims: usize,
    pub claims: Vec<ClaimSummary>,
    pub failures: Vec<FailureRecord>,
    pub out_of_scope: Vec<OutOfScopeEntry>,
    pub timing: Timing,
}

impl SuiteReport {
    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// All checks on one brace. Braces failing the axioms only get the
/// identity checks.
pub fn check_brace(b: &Brace, cfg: &SuiteConfig) -> Result<Vec<ClaimCheck>> {
    let mut checks = check_identities_with(b, cfg);
    if b.validate().is_ok() {
        checks.extend(check_structure_lemmas(b)?);
    }
    Ok(checks)
}

/// Runs every claim on every corpus member and aggregates per claim.
pub fn run_suite(corpus: &[CorpusEntry], cfg: &SuiteConfig) -> Result<SuiteReport> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let started = Instant::now();
    let per_brace: Vec<(Vec<ClaimCheck>, Duration)> = corpus
        .par_iter()
        .map(|e| {
            let t = Instant::now();
            check_brace(&e.brace, cfg).map(|c| (c, t.elapsed()))
        })
        .collect::<Result<_>>()?;

    let mut summaries: Vec<ClaimSummary> = registry()
        .map(|c| ClaimSummary {
            claim_id: c.id.to_string(),
            statement: c.statement.to_string(),
            status: Status::Vacuous,
            passed: 0,
            failed: 0,
            vacuous: 0,
            braces_checked: 0,
            instances: 0,
        })
        .collect();
    let position: HashMap<&str, usize> = registry().enumerate().map(|(i, c)| (c.id, i)).collect();
    let mut failures = vec![];
    let mut claims_ms: BTreeMap<String, f64> = BTreeMap::new();
    for (entry, (checks, _)) in corpus.iter().zip(&per_brace) {
        for check in checks {
            let s = &mut summaries[position[check.claim_id]];
            s.braces_checked += check.braces_checked;
            s.instances += check.instances;
            match check.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Vacuous => s.vacuous += 1,
            }
            *claims_ms.entry(check.claim_id.to_string()).or_default() += check.elapsed.as_secs_f64() * 1e3;
            if let Some(w) = &check.witness {
                failures.push(FailureRecord {
                    claim_id: check.claim_id.to_string(),
                    brace: entry.name.clone(),
                    scope: check.scope.clone(),
                    witness: w.clone(),
                    revalidated: revalidate(check.claim_id, &entry.brace, w),
                });
            }
        }
    }
    for s in &mut summaries {
        s.status = if s.failed > 0 {
            Status::Fail
        } else if s.passed > 0 {
            Status::Pass
        } else {
            Status::Vacuous
        };
    }
    let count = |st: Status| summaries.iter().filter(|s| s.status == st).count();
    let mut slowest: Vec<BraceTiming> = corpus
        .iter()
        .zip(&per_brace)
        .map(|(e, (_, d))| BraceTiming { brace: e.name.clone(), ms: d.as_secs_f64() * 1e3 })
        .collect();
    slowest.sort_by(|x, y| y.ms.total_cmp(&x.ms));
    slowest.truncate(cfg.slowest);
    Ok(SuiteReport {
        format: REPORT_FORMAT.into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        corpus: corpus.iter().map(|e| e.name.clone()).collect(),
        status: if count(Status::Fail) > 0 { Status::Fail } else { Status::Pass },
        passed_claims: count(Status::Pass),
        failed_claims: count(Status::Fail),
        vacuous_claims: count(Status::Vacuous),
        claims: summaries,
        failures,
        out_of_scope: OUT_OF_SCOPE.iter().map(|o| OutOfScopeEntry { id: o.id.into(), reason: o.reason.into() }).collect(),
        timing: Timing { total_ms: started.elapsed().as_secs_f64() * 1e3, claims_ms, slowest_braces: slowest },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{direct_product, radical_ring_brace, trivial_brace};
    use crate::group::make_abelian;
    use std::collections::HashSet;

    fn b4() -> Brace {
        radical_ring_brace(4, 2).unwrap()
    }

    fn corrupted_b4() -> Brace {
        let b = b4();
        let mut mul = b.mul_rows();
        // swap two entries of row 1 so that row stays a permutation
        mul[1].swap(2, 3);
        Brace::from_tables_unchecked(&b.add_rows(), &mul).unwrap()
    }

    fn status(checks: &[ClaimCheck], id: &str) -> Status {
        checks.iter().find(|c| c.claim_id == id).unwrap().status
    }

    #[test]
    fn registry_is_a_partition() {
        let ids: Vec<&str> = registry().map(|c| c.id).collect();
        let unique: HashSet<&str> = ids.iter().copied().collect();
        assert_eq!(unique.len(), ids.len());
        let out: HashSet<&str> = OUT_OF_SCOPE.iter().map(|o| o.id).collect();
        assert!(unique.is_disjoint(&out));
        assert!(OUT_OF_SCOPE.iter().all(|o| o.reason == OUT_OF_SCOPE_REASON));
        // every statement of the source, split by whether a finite carrier
        // can meet its hypotheses
        let expected_in = [
            "brace-axioms", "prop-p1-i", "prop-p1-ii", "prop-p1-iii", "prop-p1-iv", "prop-p1-v-lambda",
            "prop-p1-vi", "prop-p1-vii-conjugation", "lemma-l1", "lemma-l3-i", "lemma-l3-ii",
            "lemma-extra1-i", "lemma-extra1-ii", "lemma-extra1-iii", "lemma-l8", "prop4", "lemma-hyperideal",
            "cor49-vacuity", "marco-i", "marco-ii", "lemma-l10", "lemma-extra2-i", "t-ideal-heredity",
            "t-nilpotent-dedekind", "equiv-strong-star", "star-center-contract", "ideal-definition-consistency",
            "ideal-normality", "series-terms", "quotient-validity", "lemma-l21-ii-sanity", "prop-p22-sanity",
        ];
        let expected_out = [
            "thm-a", "cor-1", "cor-2", "cor-3", "thm-b", "lemma-l5", "prop-p11", "cor-c7", "lemma-extra2-ii",
            "lemma-l12", "lemma-l21-i", "lemma-l28", "lemma-l29", "lemma-c212", "cor-c213", "lemma-l210",
            "lemma-l214", "cor-c215", "transfinite-series",
        ];
        assert_eq!(unique, expected_in.into_iter().collect());
        assert_eq!(out, expected_out.into_iter().collect());
    }

    #[test]
    fn every_claim_runs_exactly_once() {
        let checks = check_brace(&b4(), &SuiteConfig::default()).unwrap();
        let ids: Vec<&str> = checks.iter().map(|c| c.claim_id).collect();
        assert_eq!(ids, registry().map(|c| c.id).collect::<Vec<_>>());
    }

    #[test]
    fn b4_passes_everything() {
        let checks = check_brace(&b4(), &SuiteConfig::default()).unwrap();
        for c in &checks {
            assert_ne!(c.status, Status::Fail, "{} failed: {:?}", c.claim_id, c.witness);
        }
        assert_eq!(status(&checks, "prop4"), Status::Pass);
        assert_eq!(status(&checks, "lemma-extra1-iii"), Status::Pass);
        assert_eq!(status(&checks, "cor49-vacuity"), Status::Vacuous);
        assert_eq!(status(&checks, "lemma-l10"), Status::Pass);
    }

    #[test]
    fn b4_spot_values() {
        let b = b4();
        // (1·1)⋆1 = 1⋆(1⋆1) + 1⋆1 + 1⋆1 read as 0 = 0 + 2 + 2
        assert_eq!(b.star(b.mul(1, 1), 1), 0);
        assert_eq!(b.star(1, b.star(1, 1)), 0);
        assert_eq!(b.star(1, 1), 2);
        assert!(!identity_fails("prop-p1-iii", &b, &[1, 1, 1]));
        // br(1) = ⟨1⟩ + ⟨1⋆1⟩ is the whole carrier
        assert!(b.generated_subbrace(&Subset::from_elements(4, [1])).is_full());
        // prop4 instances: the ideals {0,2} and A
        let c = Ctx::new(&b).unwrap();
        let inst: Vec<Vec<usize>> = instances("prop4", &c).into_iter().map(|w| w.sets[0].clone()).collect();
        assert_eq!(inst, vec![vec![0, 2], vec![0, 1, 2, 3]]);
    }

    #[test]
    fn literal_bracketing_of_the_difference_identity_fails() {
        // (λ_b(b⁻¹))·a differs from a − b on B4 at a = b = 1, while λ_b(b⁻¹a) agrees
        let b = b4();
        let (a, x) = (1, 1);
        assert_ne!(b.mul(b.lambda(x, b.inv(x)), a), b.sub(a, x));
        for a in 0..4 {
            for x in 0..4 {
                assert_eq!(b.lambda(x, b.mul(b.inv(x), a)), b.sub(a, x));
            }
        }
    }

    #[test]
    fn trivial_braces_pass_or_are_vacuous() {
        for ty in [vec![1], vec![8], vec![2, 2, 2], vec![3, 3]] {
            let b = trivial_brace(&make_abelian(&ty).unwrap()).unwrap();
            for c in check_brace(&b, &SuiteConfig::default()).unwrap() {
                assert_ne!(c.status, Status::Fail, "{ty:?} {}", c.claim_id);
            }
        }
        let one = trivial_brace(&make_abelian(&[1]).unwrap()).unwrap();
        let checks = check_brace(&one, &SuiteConfig::default()).unwrap();
        assert_eq!(status(&checks, "cor49-vacuity"), Status::Pass);
    }

    #[test]
    fn corrupted_brace_fails_with_witnesses() {
        let b = corrupted_b4();
        let checks = check_identities(&b);
        let fails: Vec<&ClaimCheck> = checks.iter().filter(|c| c.status == Status::Fail).collect();
        assert!(fails.iter().any(|c| c.claim_id == "brace-axioms"));
        assert!(fails.iter().any(|c| c.claim_id.starts_with("prop-p1-")));
        for c in fails {
            assert!(revalidate(c.claim_id, &b, c.witness.as_ref().unwrap()), "{}", c.claim_id);
            // the same witness is no counterexample on the genuine brace
            assert!(!revalidate(c.claim_id, &b4(), c.witness.as_ref().unwrap()), "{}", c.claim_id);
        }
        assert!(checks.iter().all(|c| c.claim_id != "lemma-l3-ii"));
    }

    #[test]
    fn lambda_additivity_is_distributivity() {
        let b = corrupted_b4();
        let checks = check_identities(&b);
        assert_eq!(status(&checks, "prop-p1-v-lambda"), Status::Fail);
    }

    #[test]
    fn l1_matches_direct_evaluation() {
        // independent brute force over all tuples with n + k ≤ 3 on B4 × Z2
        let b = direct_product(&b4(), &trivial_brace(&make_abelian(&[2]).unwrap()).unwrap()).unwrap();
        let n = b.order();
        for nb in 0..=3usize {
            for kc in 0..=(3 - nb) {
                for t in tuples(n, 1 + nb + kc) {
                    let mut w = vec![nb as i64, kc as i64];
                    w.extend(t.iter().map(|&x| x as i64));
                    assert_eq!(l1_fails(&b, &w), Some(false));
                }
            }
        }
        assert_eq!(lemma_l1(&b).witness, None);
    }

    #[test]
    fn l1_detects_corruption() {
        let o = lemma_l1(&corrupted_b4());
        let w = o.witness.expect("corruption breaks distributivity");
        assert_eq!(l1_fails(&corrupted_b4(), &w.elements), Some(true));
    }

    #[test]
    fn sampled_path_is_deterministic() {
        let b = radical_ring_brace(27, 3).unwrap();
        let cfg = SuiteConfig { samples: 2000, ..SuiteConfig::default() };
        let one = check_identities_with(&b, &cfg);
        let two = check_identities_with(&b, &cfg);
        for (x, y) in one.iter().zip(&two) {
            assert_eq!((x.claim_id, x.status, &x.scope, x.instances), (y.claim_id, y.status, &y.scope, y.instances));
            assert_ne!(x.status, Status::Fail);
        }
        assert!(one[2].scope.contains("sampled"));
    }

    #[test]
    fn suite_aggregates() {
        let corpus = vec![
            CorpusEntry { name: "b4".into(), brace: b4() },
            CorpusEntry { name: "r93".into(), brace: radical_ring_brace(9, 3).unwrap() },
        ];
        let r = run_suite(&corpus, &SuiteConfig::default()).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.failed_claims, 0);
        assert_eq!(r.passed_claims + r.vacuous_claims, registry().count());
        assert_eq!(r.claims.iter().find(|c| c.claim_id == "cor49-vacuity").unwrap().status, Status::Vacuous);
        assert_eq!(run_suite(&[], &SuiteConfig::default()).unwrap_err().code(), "empty-corpus");

        let mut bad = corpus.clone();
        bad.push(CorpusEntry { name: "corrupt".into(), brace: corrupted_b4() });
        let r = run_suite(&bad, &SuiteConfig::default()).unwrap();
        assert!(r.failed());
        assert!(r.failures.iter().all(|f| f.revalidated && f.brace == "corrupt"));
    }
}

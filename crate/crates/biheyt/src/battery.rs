//! The verification battery: named finite checks of the claims around the
//! dense/co-dense rule and the variety generated by the three-element chain.
//!
//! Each check is a plain function over a [`Config`]; a budget overrun is
//! reported as [`Status::Inconclusive`], never as a pass.

use std::time::Instant;

use biheyt_core::morphism::verify_power_embedding;
use biheyt_core::rules::{admissible_up_to, pos_existential_holds, rule_holds, valid_in_all};
use biheyt_core::{
    congruences, dual_poset, embeddings, embeds_in_power, enumerate_posets, free_algebra, is_isomorphic,
    is_subdirectly_irreducible, poset_isomorphic, product, quotient, subalgebras, upset_algebra, BiHeyting,
    BiHeytingAlgebra, Error, Limits, Poset, Rule, Verdict,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Largest poset size in the `Up(P)` families.
    pub poset_bound: usize,
    /// Largest chain in the chain SI check.
    pub chain_bound: usize,
    /// Number of free generators in the admissibility check.
    pub free_vars: usize,
    /// Record wall-clock times; off makes reports byte-for-byte stable.
    pub timings: bool,
    pub limits: LimitsConfig,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            poset_bound: 4,
            chain_bound: 5,
            free_vars: 2,
            timings: true,
            limits: LimitsConfig::default(),
        }
    }
}

/// Serializable mirror of [`Limits`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LimitsConfig {
    pub poset_max_n: usize,
    pub search_nodes: u64,
    pub subalgebras: u64,
    pub free_cells: u64,
    pub assignments: u64,
    pub materialize: u64,
}

impl Default for LimitsConfig {
    fn default() -> Self {
        LimitsConfig::from(&Limits::default())
    }
}

impl From<&Limits> for LimitsConfig {
    fn from(l: &Limits) -> Self {
        LimitsConfig {
            poset_max_n: l.poset_max_n,
            search_nodes: l.search_nodes,
            subalgebras: l.subalgebras,
            free_cells: l.free_cells,
            assignments: l.assignments,
            materialize: l.materialize,
        }
    }
}

impl From<&LimitsConfig> for Limits {
    fn from(l: &LimitsConfig) -> Self {
        Limits {
            poset_max_n: l.poset_max_n,
            search_nodes: l.search_nodes,
            subalgebras: l.subalgebras,
            free_cells: l.free_cells,
            assignments: l.assignments,
            materialize: l.materialize,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub desc: String,
    pub anchor: String,
    pub verdict: Status,
    pub witness: Value,
    pub ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<CheckReport>,
    pub overall: Overall,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Overall {
    Pass,
    Fail,
}

impl Report {
    pub fn get(&self, id: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn any(&self, s: Status) -> bool {
        self.checks.iter().any(|c| c.verdict == s)
    }
}

/// What a check found: whether the claim held, and the data showing it.
pub struct Finding {
    pub holds: bool,
    pub witness: Value,
}

type Run = fn(&Config, &Limits) -> Result<Finding, Error>;

pub struct Check {
    pub id: &'static str,
    pub desc: &'static str,
    /// The claim being instantiated, in one line.
    pub anchor: &'static str,
    pub run: Run,
}

pub static CHECKS: &[Check] = &[
    Check {
        id: "C1",
        desc: "free algebra on one generator over the 3-chain has 12 elements and is isomorphic to 3x2x2",
        anchor: "F(1) of Var(3) is 3x2x2",
        run: c1,
    },
    Check {
        id: "C2",
        desc: "the dual poset of that free algebra is a 2-chain plus two isolated points",
        anchor: "dual of F(1) is 2-chain + point + point",
        run: c2,
    },
    Check {
        id: "C3",
        desc: "the dense/co-dense rule fails on 3 at the middle element and holds on Up(P)x2 for all small P",
        anchor: "rule valid on every B x 2, refuted by 3",
        run: c3,
    },
    Check {
        id: "C4",
        desc: "the rule holds on the free algebras F(1)..F(n) over the 3-chain",
        anchor: "rule admissible in Var(3), bounded evidence",
        run: c4,
    },
    Check {
        id: "C5",
        desc: "3 has no embedding into Up(P)x2 for any small P",
        anchor: "3 is not a subalgebra of any B x 2",
        run: c5,
    },
    Check {
        id: "C6",
        desc: "subdirectly irreducibles among quotients of subalgebras of 3 are 2 and 3; 3x2 is not SI",
        anchor: "SI members of Var(3) are 2 and 3",
        run: c6,
    },
    Check {
        id: "C7",
        desc: "3xF(1) and 2xF(1) embed in a power of F(1) via separating homomorphisms",
        anchor: "3xF(1), 2xF(1) lie in the quasivariety of the free algebra",
        run: c7,
    },
    Check {
        id: "C8",
        desc: "subdirectly irreducibles among quotients of subalgebras of chain n are the chains 2..n",
        anchor: "SI members of the chain varieties are chains",
        run: c8,
    },
    Check {
        id: "C9",
        desc: "the rule's premises are satisfiable in 3 and unsatisfiable in 3x2",
        anchor: "3 and 3x2 differ in positive existential theory",
        run: c9,
    },
    Check {
        id: "C10",
        desc: "3 is a quotient of a subalgebra of Up(P) for every small P with Up(P) not Boolean",
        anchor: "Var(3) lies below every non-Boolean variety",
        run: c10,
    },
];

fn chain(n: usize) -> BiHeytingAlgebra {
    BiHeytingAlgebra::chain(n).expect("chains of size >= 2")
}

fn rule() -> Rule {
    Rule::dense_codense()
}

fn free_one(l: &Limits) -> Result<BiHeytingAlgebra, Error> {
    free_algebra(&[chain(3)], 1, l)?.algebra.to_table(l)
}

fn posets_up_to(bound: usize, l: &Limits) -> Result<Vec<Poset>, Error> {
    let mut out = Vec::new();
    for n in 1..=bound {
        out.extend(enumerate_posets(n, l)?);
    }
    Ok(out)
}

fn cover_list(p: &Poset) -> Value {
    json!({ "size": p.size(), "covers": p.covers() })
}

/// Subdirectly irreducible quotients of subalgebras of `a`, one per
/// isomorphism type, in discovery order.
pub fn si_in_hs(a: &BiHeytingAlgebra, l: &Limits) -> Result<Vec<BiHeytingAlgebra>, Error> {
    let mut reps: Vec<BiHeytingAlgebra> = Vec::new();
    for s in subalgebras(a, l)? {
        let (sub, _) = a.subalgebra(&s)?;
        for c in congruences(&sub, l)? {
            let q = quotient(&sub, &c)?;
            if q.is_degenerate() || is_subdirectly_irreducible(&q)?.is_none() {
                continue;
            }
            let mut known = false;
            for r in &reps {
                if r.size() == q.size() && is_isomorphic(r, &q, l)?.is_some() {
                    known = true;
                    break;
                }
            }
            if !known {
                reps.push(q);
            }
        }
    }
    Ok(reps)
}

fn c1(_: &Config, l: &Limits) -> Result<Finding, Error> {
    let f = free_one(l)?;
    let target = product(&product(&chain(3), &chain(2)), &chain(2));
    let iso = is_isomorphic(&f, &target, l)?;
    Ok(Finding {
        holds: f.size() == 12 && iso.is_some(),
        witness: json!({ "size": f.size(), "iso": iso.map(|m| m.into_map()) }),
    })
}

fn c2(_: &Config, l: &Limits) -> Result<Finding, Error> {
    let d = dual_poset(&free_one(l)?)?;
    let want = biheyt_core::disjoint_union(
        &biheyt_core::disjoint_union(&Poset::chain(2), &Poset::point())?,
        &Poset::point(),
    )?;
    let iso = poset_isomorphic(&d, &want);
    Ok(Finding { holds: iso.is_some(), witness: json!({ "dual": cover_list(&d), "iso": iso }) })
}

fn c3(cfg: &Config, l: &Limits) -> Result<Finding, Error> {
    let on_three = rule_holds(&chain(3), &rule(), l)?;
    let family: Vec<BiHeytingAlgebra> =
        posets_up_to(cfg.poset_bound, l)?.iter().map(|p| product(&upset_algebra(p), &chain(2))).collect();
    let failure = valid_in_all(&family, &rule(), l)?;
    Ok(Finding {
        holds: on_three == Verdict::Refuted(vec![1]) && failure.is_none(),
        witness: json!({
            "three": on_three.witness(),
            "family": family.len(),
            "family_failure": failure,
        }),
    })
}

fn c4(cfg: &Config, l: &Limits) -> Result<Finding, Error> {
    let adm = admissible_up_to(&[chain(3)], &rule(), cfg.free_vars, l)?;
    if let Some(e) = adm.truncated {
        return Err(e);
    }
    let sizes: Vec<usize> = adm.verdicts.iter().map(|v| v.1).collect();
    let refutation = adm.verdicts.iter().find_map(|(n, _, v)| v.witness().map(|w| (*n, w.to_vec())));
    Ok(Finding {
        holds: !adm.refuted(),
        witness: json!({ "flags": adm.flags(), "sizes": sizes, "refutation": refutation }),
    })
}

fn c5(cfg: &Config, l: &Limits) -> Result<Finding, Error> {
    let three = chain(3);
    let posets = posets_up_to(cfg.poset_bound, l)?;
    let mut found = None;
    for p in &posets {
        let target = product(&upset_algebra(p), &chain(2));
        if let Some(e) = embeddings(&three, &target, l)?.into_iter().next() {
            found = Some(json!({ "poset": cover_list(p), "embedding": e.into_map() }));
            break;
        }
    }
    Ok(Finding { holds: found.is_none(), witness: json!({ "posets": posets.len(), "embedding": found }) })
}

fn c6(_: &Config, l: &Limits) -> Result<Finding, Error> {
    let reps = si_in_hs(&chain(3), l)?;
    let mut sizes: Vec<usize> = reps.iter().map(|r| r.size()).collect();
    sizes.sort();
    let all_chains = reps.iter().all(|r| r.is_chain());
    let p = product(&chain(3), &chain(2));
    let monolith = is_subdirectly_irreducible(&p)?;
    Ok(Finding {
        holds: sizes == [2, 3] && all_chains && monolith.is_none(),
        witness: json!({
            "si_sizes": sizes,
            "product_monolith": monolith.map(|m| m.block_lists()),
        }),
    })
}

fn c7(_: &Config, l: &Limits) -> Result<Finding, Error> {
    let f = free_one(l)?;
    let mut holds = true;
    let mut witness = serde_json::Map::new();
    for k in [3, 2] {
        let b = product(&chain(k), &f);
        let m = embeds_in_power(&b, &f, l)?;
        let coords = m.power_embedding(b.size());
        let ok = m.holds() && verify_power_embedding(&b, &f, &coords);
        holds &= ok;
        let distinct: std::collections::BTreeSet<&[usize]> =
            m.certificate.iter().map(|(_, h)| h.map()).collect();
        witness.insert(
            format!("{k}xF1"),
            json!({
                "size": b.size(),
                "separating_homomorphisms": distinct.len(),
                "unseparated": m.unseparated,
                "verified": ok,
            }),
        );
    }
    Ok(Finding { holds, witness: Value::Object(witness) })
}

fn c8(cfg: &Config, l: &Limits) -> Result<Finding, Error> {
    let mut holds = true;
    let mut per_n = serde_json::Map::new();
    for n in 2..=cfg.chain_bound {
        let reps = si_in_hs(&chain(n), l)?;
        let mut sizes: Vec<usize> = reps.iter().map(|r| r.size()).collect();
        sizes.sort();
        holds &= reps.iter().all(|r| r.is_chain()) && sizes == (2..=n).collect::<Vec<_>>();
        per_n.insert(n.to_string(), json!(sizes));
    }
    Ok(Finding { holds, witness: json!({ "si_chain_sizes": per_n }) })
}

fn c9(_: &Config, l: &Limits) -> Result<Finding, Error> {
    let body = rule().premises;
    let on_three = pos_existential_holds(&chain(3), &body, 1, l)?;
    let on_product = pos_existential_holds(&product(&chain(3), &chain(2)), &body, 1, l)?;
    Ok(Finding {
        holds: on_three.is_some() && on_product.is_none(),
        witness: json!({ "three": on_three, "three_x_two": on_product }),
    })
}

fn c10(cfg: &Config, l: &Limits) -> Result<Finding, Error> {
    let three = chain(3);
    let mut holds = true;
    let mut rows = Vec::new();
    for p in posets_up_to(cfg.poset_bound, l)? {
        let a = upset_algebra(&p);
        if a.is_boolean() {
            continue;
        }
        let mut hit = None;
        'search: for s in subalgebras(&a, l)? {
            let (sub, elems) = a.subalgebra(&s)?;
            if sub.size() < 3 {
                continue;
            }
            for c in congruences(&sub, l)? {
                if c.num_blocks() == 3 && is_isomorphic(&quotient(&sub, &c)?, &three, l)?.is_some() {
                    let blocks: Vec<Vec<usize>> =
                        c.block_lists().iter().map(|b| b.iter().map(|&x| elems[x]).collect()).collect();
                    hit = Some(json!({ "subuniverse": elems, "blocks": blocks }));
                    break 'search;
                }
            }
        }
        holds &= hit.is_some();
        rows.push(json!({ "poset": cover_list(&p), "quotient": hit }));
    }
    Ok(Finding { holds, witness: json!({ "non_boolean": rows.len(), "instances": rows }) })
}

/// Runs the checks whose ids are in `only` (all when `None`), in
/// registration order.
pub fn run_battery(cfg: &Config, only: Option<&[String]>) -> Report {
    run_battery_with(cfg, only, |_| {})
}

/// As [`run_battery`], calling `progress` after each check.
pub fn run_battery_with(
    cfg: &Config,
    only: Option<&[String]>,
    mut progress: impl FnMut(&CheckReport),
) -> Report {
    let limits = Limits::from(&cfg.limits);
    let mut checks = Vec::new();
    for c in CHECKS {
        if only.is_some_and(|ids| !ids.iter().any(|i| i.eq_ignore_ascii_case(c.id))) {
            continue;
        }
        let start = Instant::now();
        let (verdict, witness) = match (c.run)(cfg, &limits) {
            Ok(f) if f.holds => (Status::Pass, f.witness),
            Ok(f) => (Status::Fail, f.witness),
            Err(e) if e.is_budget() => (Status::Inconclusive, json!({ "error": e.to_string() })),
            Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
        };
        let ms = if cfg.timings { start.elapsed().as_millis() as u64 } else { 0 };
        let report = CheckReport {
            id: c.id.to_string(),
            desc: c.desc.to_string(),
            anchor: c.anchor.to_string(),
            verdict,
            witness,
            ms,
        };
        progress(&report);
        checks.push(report);
    }
    let overall =
        if checks.iter().all(|c| c.verdict == Status::Pass) { Overall::Pass } else { Overall::Fail };
    Report { checks, overall }
}

//! Argument handling for the `biheyt` binary. Every command translates its
//! arguments, calls the library once, and serializes the result.

use std::io::Write;
use std::path::{Path, PathBuf};

use biheyt_core::morphism::{embeddings, homomorphisms, is_isomorphic, is_subdirectly_irreducible};
use biheyt_core::rules::{admissible_up_to, rule_holds, valid_in_all, variety_counterexample};
use biheyt_core::{
    dual_poset, enumerate_posets, free_algebra, join_irreducibles, product, upset_algebra, BiHeytingAlgebra,
    Limits, Poset, Rule,
};
use clap::{ArgGroup, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::battery::{self, Config, Overall, Status};
use crate::dot::{algebra_dot, poset_dot};
use crate::format::{
    algebra_source, read_poset, read_rule, read_to_string, rule_from_str, to_json, AlgebraJson, PosetJson,
};
use crate::{CliError, Exit};

/// Environment variable overriding the search and assignment budgets.
pub const BUDGET_VAR: &str = "BIHEYT_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "biheyt",
    version,
    about = "Finite bi-Heyting algebras: duality, free algebras, rule checks"
)]
pub struct Cli {
    /// Progress messages on stderr.
    #[arg(long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Dual poset (join-irreducibles, reverse order) of an algebra.
    #[command(group(ArgGroup::new("src").required(true).args(["algebra", "chain"])))]
    Dual {
        /// Algebra JSON file (or chainN).
        #[arg(long)]
        algebra: Option<String>,
        /// Use the N-element chain.
        #[arg(long)]
        chain: Option<usize>,
        /// Add a Hasse diagram in DOT under "dot".
        #[arg(long)]
        dot: bool,
    },
    /// Up-set algebra of a poset.
    #[command(group(ArgGroup::new("src").required(true).args(["poset", "chain", "antichain"])))]
    Updual {
        #[arg(long)]
        poset: Option<PathBuf>,
        #[arg(long)]
        chain: Option<usize>,
        #[arg(long)]
        antichain: Option<usize>,
        #[arg(long)]
        dot: bool,
    },
    /// Free algebra on K generators over the variety of the given algebras.
    Free {
        /// chainN or algebra JSON file; repeatable.
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        #[arg(long)]
        vars: usize,
        /// Write the algebra here and print a summary instead.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validity of a rule on one algebra or on the Up(P)x2 family.
    CheckRule {
        /// Rule file (text grammar or JSON AST), or the rule text itself.
        #[arg(long)]
        rule: String,
        /// chainN | FILE | enum-products-with-2 BOUND
        #[arg(long, num_args = 1..=2, required = true)]
        on: Vec<String>,
    },
    /// Validity of a rule on the free algebras F(1)..F(N).
    Admissible {
        #[arg(long)]
        rule: String,
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        #[arg(long)]
        max_vars: usize,
    },
    /// Search the variety for a counterexample among quotients of
    /// subalgebras of powers up to M.
    Derivable {
        #[arg(long)]
        rule: String,
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        #[arg(long)]
        power_bound: usize,
    },
    /// Run the verification battery.
    VerifyPaper {
        /// JSON config; defaults when absent.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated check ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Embeddings (or all homomorphisms) between two algebras.
    Embed {
        #[arg(long)]
        from: String,
        #[arg(long)]
        into: String,
        /// List all homomorphisms, not only injective ones.
        #[arg(long)]
        all: bool,
    },
    /// Isomorphism test.
    Iso {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Subdirect irreducibility and the monolith.
    Si {
        #[arg(long)]
        algebra: String,
    },
}

/// Default limits, with the search and assignment budgets taken from
/// `BIHEYT_BUDGET` when set.
pub fn limits_from_env() -> Result<Limits, CliError> {
    let mut l = Limits::default();
    if let Ok(v) = std::env::var(BUDGET_VAR) {
        let n: u64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::input(format!("{BUDGET_VAR} must be a number, got {v:?}")))?;
        l.search_nodes = n;
        l.assignments = n;
    }
    Ok(l)
}

/// Result of one invocation: the exit status and what goes to stdout.
#[derive(Debug)]
pub struct Output {
    pub exit: Exit,
    pub stdout: String,
}

fn done<T: Serialize>(exit: Exit, v: &T) -> Result<Output, CliError> {
    Ok(Output { exit, stdout: to_json(v) + "\n" })
}

fn pass_if(ok: bool) -> Exit {
    if ok {
        Exit::Ok
    } else {
        Exit::CheckFailed
    }
}

fn rule_arg(s: &str) -> Result<Rule, CliError> {
    let p = Path::new(s);
    if !p.exists() && s.contains("|-") {
        rule_from_str(s)
    } else {
        read_rule(p)
    }
}

fn algebras(specs: &[String]) -> Result<Vec<BiHeytingAlgebra>, CliError> {
    specs.iter().map(|s| algebra_source(s)).collect()
}

fn labels_of(a: &BiHeytingAlgebra, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| a.label(x).to_string()).collect()
}

/// The Up(P)x2 family over all posets with 1..=bound points.
pub fn products_with_two(bound: usize, limits: &Limits) -> Result<Vec<(Poset, BiHeytingAlgebra)>, CliError> {
    let two = BiHeytingAlgebra::chain(2)?;
    let mut out = Vec::new();
    for n in 1..=bound {
        for p in enumerate_posets(n, limits)? {
            let a = product(&upset_algebra(&p), &two);
            out.push((p, a));
        }
    }
    Ok(out)
}

/// Parses `args` (including the program name) and runs the command.
/// Progress goes to `err` when `--verbose` is given.
pub fn run<I, T>(args: I, err: &mut dyn Write) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let exit = if e.use_stderr() { Exit::Usage } else { Exit::Ok };
            if exit == Exit::Usage {
                let _ = write!(err, "{e}");
                return Output { exit, stdout: String::new() };
            }
            return Output { exit, stdout: e.to_string() };
        }
    };
    match execute(&cli, err) {
        Ok(out) => out,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            Output { exit: e.exit, stdout: String::new() }
        }
    }
}

macro_rules! progress {
    ($cli:expr, $err:expr, $($fmt:tt)*) => {
        if $cli.verbose {
            let _ = writeln!($err, $($fmt)*);
        }
    };
}

pub fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Output, CliError> {
    let limits = limits_from_env()?;
    match &cli.cmd {
        Cmd::Dual { algebra, chain, dot } => {
            let a = match (algebra, chain) {
                (Some(s), _) => algebra_source(s)?,
                (None, Some(n)) => BiHeytingAlgebra::chain(*n)?,
                (None, None) => unreachable!("clap enforces the group"),
            };
            let d = dual_poset(&a)?;
            let points = join_irreducibles(&a);
            let labels = labels_of(&a, &points);
            let mut v = json!({
                "size": d.size(),
                "leq": d.table(),
                "points": points,
                "labels": labels,
            });
            if *dot {
                v["dot"] = json!(poset_dot(&d, Some(&labels)));
            }
            done(Exit::Ok, &v)
        }
        Cmd::Updual { poset, chain, antichain, dot } => {
            let p = match (poset, chain, antichain) {
                (Some(f), _, _) => read_poset(f)?,
                (_, Some(n), _) => Poset::chain(*n),
                (_, _, Some(n)) => Poset::antichain(*n),
                _ => unreachable!("clap enforces the group"),
            };
            if p.size() > 20 {
                return Err(CliError::input("up-set algebras are built for posets of at most 20 points"));
            }
            let a = upset_algebra(&p);
            let mut v = serde_json::to_value(AlgebraJson::from_table(&a)).expect("serializable");
            if *dot {
                v["dot"] = json!(algebra_dot(&a, Some(a.labels())));
            }
            done(Exit::Ok, &v)
        }
        Cmd::Free { gens, vars, out } => {
            let gs = algebras(gens)?;
            progress!(cli, err, "free: {} generating algebra(s), {} variable(s)", gs.len(), vars);
            let f = free_algebra(&gs, *vars, &limits)?;
            progress!(cli, err, "free: {} elements", f.size());
            let labels = (0..f.size()).map(|x| f.algebra.label(x)).collect();
            let mut v = serde_json::to_value(AlgebraJson::from_algebra(&f.algebra, Some(labels)))
                .expect("serializable");
            v["generators"] = json!(f.generators);
            match out {
                Some(path) => {
                    std::fs::write(path, to_json(&v) + "\n")
                        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
                    done(Exit::Ok, &json!({ "size": f.size(), "generators": f.generators, "out": path }))
                }
                None => done(Exit::Ok, &v),
            }
        }
        Cmd::CheckRule { rule, on } => {
            let r = rule_arg(rule)?;
            match on.as_slice() {
                [kind, bound] if kind == "enum-products-with-2" => {
                    let bound: usize =
                        bound.parse().map_err(|_| CliError::input(format!("bad bound {bound:?}")))?;
                    let family = products_with_two(bound, &limits)?;
                    progress!(cli, err, "check-rule: {} algebras", family.len());
                    let algs: Vec<BiHeytingAlgebra> = family.iter().map(|(_, a)| a.clone()).collect();
                    let failure = valid_in_all(&algs, &r, &limits)?;
                    let fail_json = failure.as_ref().map(|(i, w)| {
                        json!({
                            "index": i,
                            "poset": PosetJson::from_poset(&family[*i].0),
                            "witness": w,
                            "witness_labels": labels_of(&algs[*i], w),
                        })
                    });
                    done(
                        pass_if(failure.is_none()),
                        &json!({ "rule": r.to_string(), "holds": failure.is_none(), "algebras": algs.len(), "failure": fail_json }),
                    )
                }
                [kind] if kind == "enum-products-with-2" => {
                    Err(CliError::input("enum-products-with-2 needs a poset size bound"))
                }
                [src] => {
                    let a = algebra_source(src)?;
                    let v = rule_holds(&a, &r, &limits)?;
                    let w = v.witness().map(<[usize]>::to_vec);
                    let wl = w.as_ref().map(|w| labels_of(&a, w));
                    done(
                        pass_if(v.holds()),
                        &json!({ "rule": r.to_string(), "holds": v.holds(), "witness": w, "witness_labels": wl }),
                    )
                }
                _ => Err(CliError::input("--on takes chainN, a file, or enum-products-with-2 BOUND")),
            }
        }
        Cmd::Admissible { rule, gens, max_vars } => {
            let r = rule_arg(rule)?;
            let gs = algebras(gens)?;
            let adm = admissible_up_to(&gs, &r, *max_vars, &limits)?;
            let verdicts: Vec<Value> = adm
                .verdicts
                .iter()
                .map(|(n, size, v)| json!({ "n": n, "size": size, "holds": v.holds(), "witness": v.witness() }))
                .collect();
            for v in &verdicts {
                progress!(cli, err, "admissible: {v}");
            }
            let truncated = adm.truncated.as_ref().map(|e| e.to_string());
            let exit = if adm.refuted() {
                Exit::CheckFailed
            } else if adm.truncated.is_some() {
                Exit::Budget
            } else {
                Exit::Ok
            };
            done(
                exit,
                &json!({
                    "rule": r.to_string(),
                    "verdicts": verdicts,
                    "flags": adm.flags(),
                    "refuted": adm.refuted(),
                    "truncated": truncated,
                    "evidence": if adm.refuted() { "refutation" } else { "bounded" },
                }),
            )
        }
        Cmd::Derivable { rule, gens, power_bound } => {
            let r = rule_arg(rule)?;
            let gs = algebras(gens)?;
            for (g, a) in gs.iter().enumerate() {
                progress!(cli, err, "derivable: searching powers of generator {g}");
                if let Some(c) = variety_counterexample(a, &r, *power_bound, &limits)? {
                    let v = json!({
                        "rule": r.to_string(),
                        "derivable_within_bound": false,
                        "counterexample": {
                            "generator": g,
                            "power": c.power,
                            "subuniverse": c.subuniverse,
                            "congruence": c.congruence.block_lists(),
                            "algebra": AlgebraJson::from_table(&c.algebra),
                            "assignment": c.assignment,
                            "assignment_labels": labels_of(&c.algebra, &c.assignment),
                        },
                    });
                    return done(Exit::CheckFailed, &v);
                }
            }
            done(
                Exit::Ok,
                &json!({ "rule": r.to_string(), "derivable_within_bound": true, "counterexample": null }),
            )
        }
        Cmd::VerifyPaper { config, only } => {
            let mut cfg: Config = match config {
                Some(path) => serde_json::from_str(&read_to_string(path)?).map_err(CliError::json)?,
                None => Config::default(),
            };
            if std::env::var(BUDGET_VAR).is_ok() {
                cfg.limits.search_nodes = limits.search_nodes;
                cfg.limits.assignments = limits.assignments;
            }
            if let Some(bad) =
                only.iter().find(|id| !battery::CHECKS.iter().any(|c| c.id.eq_ignore_ascii_case(id)))
            {
                return Err(CliError::input(format!("unknown check id {bad:?}")));
            }
            let only = (!only.is_empty()).then_some(only.as_slice());
            let verbose = cli.verbose;
            let report = battery::run_battery_with(&cfg, only, |c| {
                if verbose {
                    let _ = writeln!(err, "{} {} ({} ms)", c.id, c.verdict, c.ms);
                }
            });
            let exit = match report.overall {
                Overall::Pass => Exit::Ok,
                Overall::Fail if report.any(Status::Fail) => Exit::CheckFailed,
                Overall::Fail => Exit::Inconclusive,
            };
            done(exit, &report)
        }
        Cmd::Embed { from, into, all } => {
            let (a, b) = (algebra_source(from)?, algebra_source(into)?);
            let maps = if *all { homomorphisms(&a, &b, &limits)? } else { embeddings(&a, &b, &limits)? };
            let maps: Vec<Vec<usize>> = maps.into_iter().map(|m| m.into_map()).collect();
            done(pass_if(!maps.is_empty()), &json!({ "count": maps.len(), "maps": maps }))
        }
        Cmd::Iso { a, b } => {
            let (a, b) = (algebra_source(a)?, algebra_source(b)?);
            let m = is_isomorphic(&a, &b, &limits)?.map(|m| m.into_map());
            done(pass_if(m.is_some()), &json!({ "isomorphic": m.is_some(), "map": m }))
        }
        Cmd::Si { algebra } => {
            let a = algebra_source(algebra)?;
            let m = is_subdirectly_irreducible(&a)?;
            let blocks = m.as_ref().map(|c| c.block_lists());
            done(pass_if(m.is_some()), &json!({ "subdirectly_irreducible": m.is_some(), "monolith": blocks }))
        }
    }
}

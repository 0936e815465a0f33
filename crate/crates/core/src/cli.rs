//! The `curvepi` command line.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::abelian::abelian_invariants;
use crate::catalog::{build, GroupTag};
use crate::classify::classify;
use crate::cosets::{todd_coxeter, EnumLimits};
use crate::fpcore::{parse_presentation, parse_word, DerivationBudget, Presentation, Word};
use crate::geometry::{BlowUpScript, CombinatorialType};
use crate::schreier::{simplify, subgroup_presentation};
use crate::verify::{reports_json, run_suite, Execution, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "curvepi",
    version,
    about = "Finitely presented groups and plane curve complements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Budgets {
    /// Coset limit for enumeration.
    #[arg(long, env = "CURVEPI_MAX_COSETS", default_value_t = EnumLimits::default().max_cosets as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub max_cosets: u64,
    /// State limit for relator derivations and simplification moves.
    #[arg(long, default_value_t = DerivationBudget::default().max_states as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

impl Budgets {
    fn limits(&self) -> EnumLimits {
        EnumLimits {
            max_cosets: self.max_cosets as usize,
            ..EnumLimits::default()
        }
    }

    fn derivation(&self) -> DerivationBudget {
        DerivationBudget {
            max_states: self.budget as usize,
            ..DerivationBudget::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Abelian invariants of a presentation.
    Ab {
        /// Inline presentation starting with "<", a file path, or stdin when absent.
        presentation: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Todd-Coxeter enumeration; prints the index.
    Tc {
        presentation: Option<String>,
        /// Subgroup generators, comma separated.
        #[arg(long)]
        subgroup: Vec<String>,
        /// Extra relators added before enumerating, comma separated.
        #[arg(long)]
        quotient_by: Vec<String>,
        #[command(flatten)]
        budgets: Budgets,
        #[arg(long)]
        json: bool,
    },
    /// Reidemeister-Schreier presentation of a finite-index subgroup.
    Rs {
        presentation: Option<String>,
        #[arg(long, required = true)]
        subgroup: Vec<String>,
        /// Skip Tietze simplification.
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        budgets: Budgets,
        #[arg(long)]
        json: bool,
    },
    /// Presentation of a catalog group, e.g. `gr:2,3,5` or `z x braid:3`.
    Catalog {
        tag: String,
        #[arg(long)]
        json: bool,
    },
    /// Replays a blow-up script and evaluates the Nori inequality.
    Blowup {
        #[arg(long)]
        script: String,
        #[arg(long)]
        json: bool,
    },
    /// Classifies a combinatorial type of degree at most 5.
    Classify {
        #[arg(long = "type")]
        type_file: String,
        #[arg(long)]
        json: bool,
    },
    /// Runs the lemma suite.
    Verify {
        /// Lemma ids, comma separated, e.g. V1,V5.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long)]
        json: bool,
        /// Run lemmas one after another.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        budgets: Budgets,
    },
}

/// Error with its exit code.
struct Failure(i32, String);

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure(EXIT_USAGE, msg.to_string())
}

fn domain(msg: impl std::fmt::Display) -> Failure {
    Failure(EXIT_FAILURE, msg.to_string())
}

fn read_text(arg: Option<&str>, stdin: &mut dyn Read) -> Result<String, Failure> {
    match arg {
        Some(a) if a.trim_start().starts_with('<') => Ok(a.to_string()),
        Some(path) => fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}"))),
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| usage(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

/// DSL text or a JSON presentation object.
fn read_presentation(arg: Option<&str>, stdin: &mut dyn Read) -> Result<Presentation, Failure> {
    let text = read_text(arg, stdin)?;
    let t = text.trim();
    if t.starts_with('{') {
        serde_json::from_str(t).map_err(|e| usage(format!("bad presentation JSON: {e}")))
    } else {
        parse_presentation(t).map_err(usage)
    }
}

/// Splits on commas outside brackets, so `[a,b], c` is two words.
fn split_words(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    for a in args {
        let mut depth = 0i32;
        let mut cur = String::new();
        for ch in a.chars() {
            match ch {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                _ => {}
            }
            if ch == ',' && depth == 0 {
                out.push(std::mem::take(&mut cur));
            } else {
                cur.push(ch);
            }
        }
        out.push(cur);
    }
    out.into_iter()
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn words(p: &Presentation, args: &[String]) -> Result<Vec<Word>, Failure> {
    split_words(args)
        .iter()
        .map(|w| parse_word(w, p.generators()).map_err(usage))
        .collect()
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| domain(format!("write: {e}")))
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("output serializes")
}

fn dispatch(cli: Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Ab { presentation, json } => {
            let p = read_presentation(presentation.as_deref(), stdin)?;
            let inv = abelian_invariants(&p);
            if json {
                emit(
                    out,
                    pretty(&json!({ "invariants": inv, "text": inv.to_string() })),
                )?;
            } else {
                emit(out, inv)?;
            }
        }
        Command::Tc {
            presentation,
            subgroup,
            quotient_by,
            budgets,
            json,
        } => {
            let p = read_presentation(presentation.as_deref(), stdin)?;
            let extra = words(&p, &quotient_by)?;
            let p = p.with_relators(extra).map_err(usage)?;
            let h = words(&p, &subgroup)?;
            let t = todd_coxeter(&p, &h, &budgets.limits()).map_err(domain)?;
            if json {
                emit(
                    out,
                    pretty(&json!({ "index": t.n_cosets(), "table": t.to_json() })),
                )?;
            } else {
                emit(out, t.n_cosets())?;
            }
        }
        Command::Rs {
            presentation,
            subgroup,
            raw,
            budgets,
            json,
        } => {
            let p = read_presentation(presentation.as_deref(), stdin)?;
            let h = words(&p, &subgroup)?;
            let t = todd_coxeter(&p, &h, &budgets.limits()).map_err(domain)?;
            let mut k = subgroup_presentation(&p, &t);
            if !raw {
                k = simplify(&k, &budgets.derivation());
            }
            if json {
                emit(
                    out,
                    pretty(&json!({ "index": t.n_cosets(), "presentation": k })),
                )?;
            } else {
                emit(out, &k)?;
            }
        }
        Command::Catalog { tag, json } => {
            let tag: GroupTag = tag.parse().map_err(usage)?;
            let p = build(&tag).map_err(usage)?;
            if json {
                emit(
                    out,
                    pretty(&json!({ "tag": tag.to_string(), "presentation": p })),
                )?;
            } else {
                emit(out, &p)?;
            }
        }
        Command::Blowup { script, json } => {
            let text = fs::read_to_string(&script).map_err(|e| usage(format!("{script}: {e}")))?;
            let s = BlowUpScript::from_json(&text).map_err(usage)?;
            let o = s.run().map_err(domain)?;
            if json {
                emit(out, pretty(&o))?;
            } else {
                for c in &o.report.components {
                    let rel = if c.pass { ">" } else { "<=" };
                    emit(
                        out,
                        format!(
                            "{}: {}.{} = {} {} 2r = {}",
                            o.case, c.id, c.id, c.self_intersection, rel, c.twice_nodes
                        ),
                    )?;
                }
                emit(
                    out,
                    format!("nori: {}", if o.report.pass { "pass" } else { "fail" }),
                )?;
            }
            if !o.matches {
                return Err(domain(format!(
                    "{}: result differs from the script's expectation",
                    o.case
                )));
            }
        }
        Command::Classify { type_file, json } => {
            let text =
                fs::read_to_string(&type_file).map_err(|e| usage(format!("{type_file}: {e}")))?;
            let ct = CombinatorialType::from_json(&text).map_err(usage)?;
            let e = classify(&ct).map_err(domain)?;
            if json {
                emit(out, pretty(&e))?;
            } else {
                emit(out, &e)?;
            }
        }
        Command::Verify {
            only,
            json,
            sequential,
            budgets,
        } => {
            let cfg = SuiteConfig {
                only,
                budget: budgets.derivation(),
                max_cosets: budgets.max_cosets as usize,
                execution: if sequential {
                    Execution::Sequential
                } else {
                    Execution::Parallel
                },
            };
            let reports = run_suite(&cfg);
            if json {
                emit(out, reports_json(&reports))?;
            } else {
                for r in &reports {
                    emit(out, r)?;
                }
            }
            if reports.is_empty() || !reports.iter().all(|r| r.passed()) {
                return Ok(EXIT_FAILURE);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli, stdin, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

pub fn main() -> i32 {
    run(
        std::env::args_os(),
        &mut io::stdin().lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("curvepi").chain(args.iter().copied());
        let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn splits_outside_brackets() {
        assert_eq!(
            split_words(&["[a,b], c^2".into(), "d".into()]),
            ["[a,b]", "c^2", "d"]
        );
    }

    #[test]
    fn ab_inline() {
        assert_eq!(
            call(&["ab", "<a,b | b=a b^4 a, a^2=b^2 a^3 b^2>"], ""),
            (0, "Z/5\n".into())
        );
    }

    #[test]
    fn tc_from_stdin_with_quotient() {
        let (_, gr) = call(&["catalog", "gr:2,3,5"], "");
        assert_eq!(
            call(&["tc", "--quotient-by", "a^2"], &gr),
            (0, "60\n".into())
        );
    }

    #[test]
    fn overflow_exits_one() {
        let (code, _) = call(&["tc", "<a,b | >", "--max-cosets", "50"], "");
        assert_eq!(code, EXIT_FAILURE);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["tc", "<a | a^>"], "").0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"], "").0, EXIT_USAGE);
        assert_eq!(
            call(&["tc", "<a | a^2>", "--max-cosets", "0"], "").0,
            EXIT_USAGE
        );
        assert_eq!(call(&["catalog", "nope:1"], "").0, EXIT_USAGE);
    }

    #[test]
    fn rs_free_subgroup() {
        let (code, text) = call(&["rs", "<a,b | >", "--subgroup", "a^2, b, a b a^-1"], "");
        assert_eq!(code, 0);
        assert!(text.starts_with("<"), "{text}");
    }
}

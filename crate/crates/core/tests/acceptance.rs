//! Acceptance criteria, one line each. Runs without the test harness so
//! the report is always printed; exits nonzero if any criterion fails.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use curvepi::abelian::abelian_invariants;
use curvepi::catalog::{build, GroupTag};
use curvepi::cosets::{todd_coxeter, EnumLimits};
use curvepi::fpcore::{parse_presentation, Presentation};
use curvepi::verify::{run_lemma, Execution, SuiteConfig};

fn order(p: &Presentation) -> Result<usize, String> {
    todd_coxeter(p, &[], &EnumLimits::default())
        .map(|t| t.n_cosets())
        .map_err(|e| e.to_string())
}

fn tag(s: &str) -> Presentation {
    build(&s.parse::<GroupTag>().unwrap()).unwrap()
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

/// A lemma from the suite, run on its own with default budgets.
fn lemma(id: &str) -> Result<(), String> {
    let cfg = SuiteConfig {
        execution: Execution::Sequential,
        ..SuiteConfig::default()
    };
    let r = run_lemma(id, &cfg);
    if r.passed() {
        Ok(())
    } else {
        Err(format!("{id}: {:?}", r.status))
    }
}

fn c1() -> Result<(), String> {
    let p = parse_presentation("<a,b | b=a b^4 a, a^2=b^2 a^3 b^2>").unwrap();
    expect("order", order(&p)?, 320)
}

fn c2() -> Result<(), String> {
    let p = parse_presentation("<a,b,c | a^2=b^3=c^5=a b c=1>").unwrap();
    expect("order", order(&p)?, 60)?;
    expect(
        "abelianization",
        abelian_invariants(&p).to_string(),
        "0".into(),
    )
}

fn c3() -> Result<(), String> {
    // Each enumeration has its own one-second bound.
    for (p, want) in [
        (tag("sphere-braid3"), 12),
        (tag("coxeter:2,3,3"), 24),
        (parse_presentation("<x,y | x^3, y^3, (x y)^2>").unwrap(), 12),
    ] {
        let t = Instant::now();
        expect(&p.to_string(), order(&p)?, want)?;
        if t.elapsed() > Duration::from_secs(1) {
            return Err(format!("{p} took {:.2?}", t.elapsed()));
        }
    }
    Ok(())
}

fn c9() -> Result<(), String> {
    for name in common::PROPERTIES {
        common::run_property(name).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn verify_json() -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_curvepi"))
        .args(["verify", "--json"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("verify exited with {}", out.status));
    }
    Ok(out.stdout)
}

fn c10() -> Result<(), String> {
    let a = verify_json()?;
    let b = verify_json()?;
    if a != b {
        return Err("reports differ between runs".into());
    }
    Ok(())
}

fn main() -> ExitCode {
    type Check = fn() -> Result<(), String>;
    let criteria: [(&str, &str, u64, Check); 10] = [
        ("1", "order 320 by coset enumeration", 5, c1),
        ("2", "A5 quotient: order 60, perfect", 1, c2),
        ("3", "orders 12, 24, 12", 3, c3),
        ("4", "PSL(2,7) kernel abelianizes to Z^6", 60, || {
            lemma("V3")
        }),
        ("5", "C4(3A2) group is Art_333", 5, || lemma("V5")),
        ("6", "index-2 kernel is the K_{2,3} RAAG", 5, || lemma("V8")),
        ("7", "blow-up self-intersections and Nori", 1, || {
            lemma("V10")
        }),
        ("8", "classifier goldens", 5, || lemma("V11")),
        ("9", "property suites", 60, c9),
        ("10", "verify --json is deterministic", 120, c10),
    ];
    let mut failed = 0;
    for (id, title, bound, check) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let line = match result {
            Ok(()) if took <= Duration::from_secs(bound) => "PASS".to_string(),
            Ok(()) => format!("FAIL (took {took:.2?}, bound {bound} s)"),
            Err(e) => format!("FAIL ({e})"),
        };
        if !line.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {id:>2}  {title:<40} {line} [{took:.2?}]");
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

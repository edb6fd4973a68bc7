use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use tightsets::certificate::pair_coeffs;
use tightsets::certify::{lines_of, verify_cl_counts, verify_spreads, verify_tight, CountReport};
use tightsets::pg;

use crate::load;
use crate::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Tight,
    Cl,
    Spread,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "tight,cl,spread")]
    checks: Vec<Check>,
    /// Number of spreads, the regular one included.
    #[arg(long, default_value_t = 100)]
    spreads: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report path (default: next to the input, `.report.txt`).
    #[arg(long)]
    report: Option<PathBuf>,
}

const SHOWN: usize = 10;

fn count_section(out: &mut String, name: &str, r: &CountReport, describe: impl Fn(usize) -> String) {
    let verdict = if r.passed() { "PASS" } else { "FAIL" };
    let _ = writeln!(
        out,
        "{name}: {verdict} (expected {} for members, {} for non-members; {} violation(s))",
        r.expected_member, r.expected_nonmember, r.num_violations
    );
    if let Some(msg) = &r.failure {
        let _ = writeln!(out, "  {msg}");
    }
    for v in r.violations.iter().take(SHOWN) {
        let _ = writeln!(
            out,
            "  {} ({}): expected {}, found {}",
            describe(v.index),
            if v.member { "member" } else { "non-member" },
            v.expected,
            v.actual
        );
    }
}

pub fn run(args: &VerifyArgs) -> Result<Outcome> {
    let (cert, sp) = load::read_certificate(&args.input)?;
    let (f, quad) = (&sp.field, &sp.quadric);
    let x = cert.x;
    let mut out = String::new();
    let _ = writeln!(out, "certificate: {}", args.input.display());
    let _ = writeln!(out, "q = {}, group {}, x = {x}", cert.q, cert.group);

    let mut passed = true;
    match load::resolve_points(&cert, &sp)? {
        Err(msg) => {
            let _ = writeln!(out, "points: FAIL\n  {msg}");
            passed = false;
        }
        Ok(pts) => {
            let _ = writeln!(out, "points: {}", pts.len());
            let lines = lines_of(f, quad, &pts);
            for check in &args.checks {
                match check {
                    Check::Tight => {
                        let r = verify_tight(f, quad, &pts, x);
                        count_section(&mut out, "tight", &r, |i| {
                            format!("point {:?}", pair_coeffs(f, quad, i))
                        });
                        passed &= r.passed();
                    }
                    Check::Cl => {
                        let r = verify_cl_counts(f, &lines, x);
                        let all = if r.violations.is_empty() { Vec::new() } else { pg::all_lines(f) };
                        count_section(&mut out, "cl", &r, |i| {
                            let p = all[i].plucker().map(|a| f.to_coeffs(a));
                            format!("line with Plücker coordinates {p:?}")
                        });
                        passed &= r.passed();
                    }
                    Check::Spread => {
                        let r = verify_spreads(f, &lines, x, args.spreads, args.seed);
                        let mut hist = BTreeMap::new();
                        for &n in &r.intersections {
                            *hist.entry(n).or_insert(0u64) += 1;
                        }
                        let _ = writeln!(
                            out,
                            "spread: {} ({} spreads, seed {}, intersection sizes {:?})",
                            if r.passed() { "PASS" } else { "FAIL" },
                            r.intersections.len(),
                            r.seed,
                            hist
                        );
                        passed &= r.passed();
                    }
                }
            }
        }
    }
    let _ = writeln!(out, "verdict: {}", if passed { "PASS" } else { "FAIL" });

    let report = args
        .report
        .clone()
        .unwrap_or_else(|| load::sibling(&args.input, "report.txt"));
    std::fs::write(&report, &out).with_context(|| format!("cannot write {}", report.display()))?;
    print!("{out}");
    Ok(if passed { Outcome::Ok } else { Outcome::Failed })
}

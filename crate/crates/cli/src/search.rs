use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Args;
use tightsets::certificate::{Certificate, SpreadCheck};
use tightsets::certify::{lines_of, verify_spreads, verify_tight};
use tightsets::quotient::{lift_selection, quotient_matrix, search_tight};
use tightsets::GroupLabel;

use crate::load;
use crate::Outcome;

#[derive(Args)]
pub struct SearchArgs {
    #[arg(long)]
    q: u64,
    /// Orbit group: C (cyclic, order q^2+q+1) or G.
    #[arg(long, default_value = "C")]
    group: GroupLabel,
    /// Parameter of the line class (default (q^2-1)/2).
    #[arg(long)]
    x: Option<u64>,
    /// Allow the orbits containing the two distinguished planes.
    #[arg(long)]
    free: bool,
    /// Directory for certificate files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Stop after this many solutions.
    #[arg(long)]
    max_solutions: Option<usize>,
    /// Record only orbit representatives, not the full point list.
    #[arg(long)]
    no_points: bool,
    /// Spread intersections to check and record per solution.
    #[arg(long, default_value_t = 0)]
    spreads: usize,
    /// Seed for the random spreads.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record wall-clock timings in the certificates.
    #[arg(long)]
    timing: bool,
}

pub fn run(args: &SearchArgs) -> Result<Outcome> {
    let q = args.q;
    let sp = load::space(q)?;
    // For C the semiregularity assertion in `partition` reports the failure.
    if args.group == GroupLabel::G {
        if let Some(why) = load::group_obstruction(q, args.group) {
            bail!("{why}");
        }
    }
    let x = match args.x {
        Some(x) => x,
        None if q % 2 == 1 => (q * q - 1) / 2,
        None => bail!("q = {q} is even, --x is required"),
    };
    if x > q * q + 1 {
        bail!("x = {x} exceeds q^2 + 1 = {}", q * q + 1);
    }
    let (f, quad) = (&sp.field, &sp.quadric);

    let t0 = Instant::now();
    let part = load::partition(&sp, args.group)?;
    let b = quotient_matrix(f, quad, &part)?;
    let forced = if args.free {
        Vec::new()
    } else {
        let mut v = sp.plane_classes(&part).to_vec();
        v.dedup();
        v
    };
    eprintln!(
        "q = {q}: {} points, {} {}-orbits, x = {x}",
        quad.len(),
        part.num_classes(),
        args.group
    );
    let mut sols = search_tight(&b, x, &forced)?;
    let search_ms = t0.elapsed().as_millis() as u64;
    if let Some(n) = args.max_solutions {
        sols.truncate(n);
    }
    if sols.is_empty() {
        println!("no {x}-tight union of {}-orbits", args.group);
        return Ok(Outcome::NotFound);
    }
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;

    let mut all_passed = true;
    for (k, sel) in sols.iter().enumerate() {
        let t1 = Instant::now();
        let pts = lift_selection(sel, &part);
        let reps: Vec<usize> = sel.classes().iter().map(|&c| part.representative(c)).collect();
        let tight = verify_tight(f, quad, &pts, x);
        let mut cert = Certificate::new(
            f,
            quad,
            &args.group.to_string(),
            x,
            &reps,
            (!args.no_points).then_some(pts.as_slice()),
        );
        cert.checks.tight = Some(tight.passed());
        all_passed &= tight.passed();
        if args.spreads > 0 {
            let rep = verify_spreads(f, &lines_of(f, quad, &pts), x, args.spreads, args.seed);
            all_passed &= rep.passed();
            cert.checks.spreads = Some(SpreadCheck::from(&rep));
        }
        if args.timing {
            cert.timing_ms = Some(BTreeMap::from([
                ("search".to_string(), search_ms),
                ("certify".to_string(), t1.elapsed().as_millis() as u64),
            ]));
        }
        let path = args
            .out
            .join(format!("q{q}-{}-x{x}-{:03}.json", args.group, k + 1));
        std::fs::write(&path, cert.to_json()?)
            .with_context(|| format!("cannot write {}", path.display()))?;
        println!(
            "{}: {} orbits, {} points, tight {}",
            path.display(),
            reps.len(),
            pts.len(),
            if tight.passed() { "ok" } else { "FAILED" }
        );
    }
    println!("{} solution(s)", sols.len());
    Ok(if all_passed { Outcome::Ok } else { Outcome::Failed })
}

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::Args;
use rayon::prelude::*;
use tightsets::certificate::AffineDocument;
use tightsets::certify::verify_tight;
use tightsets::decomposition::{admissible_planes, Decomposition, PointClass, LINE_CLASSES, POINT_CLASSES};
use tightsets::pg::PgPlane;

use crate::load;
use crate::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneChoice {
    /// Lexicographically least admissible plane.
    Auto,
    All,
    Index(usize),
}

impl FromStr for PlaneChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(PlaneChoice::Auto),
            "all" => Ok(PlaneChoice::All),
            _ => s
                .parse()
                .map(PlaneChoice::Index)
                .map_err(|_| format!("expected auto, all or a plane index, got {s:?}")),
        }
    }
}

#[derive(Args)]
pub struct AffineArgs {
    #[arg(long)]
    input: PathBuf,
    /// `auto`, `all`, or an index into the sorted admissible planes.
    #[arg(long, default_value = "auto")]
    plane: PlaneChoice,
    /// Refuse q not divisible by 3.
    #[arg(long)]
    strict: bool,
    /// Skip the tight-set check of the input.
    #[arg(long)]
    skip_verify: bool,
    /// Output path (default: next to the input, `.affine.json`).
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: &AffineArgs) -> Result<Outcome> {
    let (cert, sp) = load::read_certificate(&args.input)?;
    let (f, quad) = (&sp.field, &sp.quadric);
    let q = cert.q;
    if args.strict && q % 3 != 0 {
        bail!("strict mode needs q = 0 mod 3, got q = {q}");
    }
    let pts = match load::resolve_points(&cert, &sp)? {
        Ok(p) => p,
        Err(msg) => {
            println!("invalid point set: {msg}");
            return Ok(Outcome::Failed);
        }
    };
    if !args.skip_verify && !verify_tight(f, quad, &pts, cert.x).passed() {
        println!("input is not a {}-tight set", cert.x);
        return Ok(Outcome::Failed);
    }
    let dec = Decomposition::new(f, quad, &pts);
    if !dec.avoids_planes() {
        println!("line class meets star(P) or line(pi); no decomposition");
        return Ok(Outcome::Failed);
    }

    let mut text = String::new();
    let classes = dec.point_classes();
    let _ = writeln!(text, "q = {q}, |L1| = {}", pts.len());
    let _ = writeln!(text, "L1-degrees off pi and P: {:?}", classes.degree_spectrum);
    let Some(cls) = &classes.classes else {
        let _ = writeln!(text, "degree spectrum is not two-valued");
        print!("{text}");
        return Ok(Outcome::Failed);
    };
    let _ = writeln!(
        text,
        "|P1| = {}, |P2| = {}",
        classes.count(PointClass::P1),
        classes.count(PointClass::P2)
    );
    let profiles = dec.plane_profiles();
    let _ = writeln!(
        text,
        "L1-lines per plane missing P: {:?}, {} irregular plane(s)",
        profiles.l1_spectrum,
        profiles.bad_planes.len()
    );
    let tactical = dec.tactical_check(cls);
    let _ = writeln!(text, "tactical decomposition: {}", if tactical.passed() { "PASS" } else { "FAIL" });
    let _ = writeln!(text, "  lines through a point (rows P-classes, columns line(pi) star(P) L1 L2):");
    for pc in POINT_CLASSES {
        let row: Vec<String> = LINE_CLASSES
            .iter()
            .map(|&lc| fmt_cell(tactical.cell(pc, lc)))
            .collect();
        let _ = writeln!(text, "    {pc:?}: {}", row.join(" "));
    }
    let _ = writeln!(text, "  points on a line (rows line classes, columns InPi IsP P1 P2):");
    for lc in LINE_CLASSES {
        let row: Vec<String> = POINT_CLASSES
            .iter()
            .map(|&pc| fmt_cell(tactical.dual_cell(pc, lc)))
            .collect();
        let _ = writeln!(text, "    {lc:?}: {}", row.join(" "));
    }

    let mut planes = admissible_planes(f);
    planes.sort_by_cached_key(|pl: &PgPlane| pl.0.map(|a| f.to_coeffs(a)));
    let chosen: Vec<PgPlane> = match args.plane {
        PlaneChoice::Auto => planes[..1].to_vec(),
        PlaneChoice::All => planes,
        PlaneChoice::Index(i) => match planes.get(i) {
            Some(pl) => vec![*pl],
            None => bail!("plane index {i} out of range, {} admissible planes", planes.len()),
        },
    };
    let docs: Vec<AffineDocument> = chosen
        .par_iter()
        .map(|pl| AffineDocument::new(f, &dec.extract_affine(cls, pl)))
        .collect();
    let mut kinds: BTreeMap<String, usize> = BTreeMap::new();
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for d in &docs {
        let k = match (d.m, d.n) {
            (Some(m), Some(n)) => format!("({m},{n})"),
            _ => format!("not two-valued {:?}", d.spectrum),
        };
        *kinds.entry(k).or_insert(0) += 1;
        *sizes.entry(d.size).or_insert(0) += 1;
    }
    let ok = docs.iter().all(|d| d.two_intersection && d.counting_identities);
    let _ = writeln!(text, "affine sets on {} plane(s): types {kinds:?}, sizes {sizes:?}", docs.len());
    let _ = writeln!(
        text,
        "counting identities: {}",
        if docs.iter().all(|d| d.counting_identities) { "hold" } else { "FAIL" }
    );

    let out = args
        .out
        .clone()
        .unwrap_or_else(|| load::sibling(&args.input, "affine.json"));
    let json = match args.plane {
        PlaneChoice::All => serde_json::to_string_pretty(&docs)?,
        _ => serde_json::to_string_pretty(&docs[0])?,
    };
    std::fs::write(&out, json + "\n").with_context(|| format!("cannot write {}", out.display()))?;
    let report = load::sibling(&out, "txt");
    std::fs::write(&report, &text).with_context(|| format!("cannot write {}", report.display()))?;
    print!("{text}");
    println!("wrote {}", out.display());
    Ok(if ok { Outcome::Ok } else { Outcome::Failed })
}

fn fmt_cell(v: Option<u64>) -> String {
    v.map_or_else(|| "?".to_string(), |v| v.to_string())
}

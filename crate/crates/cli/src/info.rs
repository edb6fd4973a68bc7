use std::collections::BTreeMap;

use anyhow::Result;
use clap::Args;
use serde_json::json;
use tightsets::collineation::GroupG;
use tightsets::GroupLabel;

use crate::load;
use crate::Outcome;

#[derive(Args)]
pub struct InfoArgs {
    #[arg(long)]
    q: u64,
    /// Print a JSON object instead of text.
    #[arg(long)]
    json: bool,
}

fn histogram(sizes: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &s in sizes {
        *h.entry(s).or_insert(0) += 1;
    }
    h
}

fn describe(h: &BTreeMap<usize, usize>) -> String {
    h.iter()
        .map(|(size, n)| format!("{n} of size {size}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn run(args: &InfoArgs) -> Result<Outcome> {
    let q = args.q;
    let sp = load::space(q)?;
    let f = &sp.field;
    let n_points = sp.quadric.len();
    let m = q * q + q + 1;
    let x = (q % 2 == 1).then(|| (q * q - 1) / 2);
    let mut notes = Vec::new();

    let c_part = sp.c_partition(false)?;
    let c_hist = histogram(&c_part.sizes());
    if let Some(why) = load::group_obstruction(q, GroupLabel::C) {
        notes.push(format!("{why}; C-search unavailable"));
    }
    let g_hist = match load::group_obstruction(q, GroupLabel::G) {
        Some(why) => {
            notes.push(format!("{why}; G-search unavailable"));
            None
        }
        None => {
            let part = sp.g_partition()?;
            let grp = GroupG::new(f, &sp.quadric)?;
            Some((histogram(&part.sizes()), grp.effective_order(f, &sp.quadric)))
        }
    };
    if x.is_none() {
        notes.push("q is even: (q^2-1)/2 is not an integer, pass --x to search".into());
    }

    if args.json {
        let doc = json!({
            "q": q,
            "p": f.p(),
            "e": f.e(),
            "modulus": f.modulus(),
            "quadric_points": n_points,
            "c_orbits": c_hist,
            "g_orbits": g_hist.as_ref().map(|(h, _)| h),
            "g_nominal_order": g_hist.as_ref().map(|_| GroupG::nominal_order(q)),
            "g_effective_order": g_hist.as_ref().map(|(_, o)| o),
            "x": x,
            "notes": notes,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
        return Ok(Outcome::Ok);
    }

    println!("q = {q} (p = {}, e = {}), modulus {:?}", f.p(), f.e(), f.modulus());
    println!("quadric points: {n_points}");
    println!("C-orbits: {} ({})", c_part.num_classes(), describe(&c_hist));
    match &g_hist {
        Some((h, order)) => println!(
            "G-orbits: {} ({}); |G| nominal {}, acting {}",
            h.values().sum::<usize>(),
            describe(h),
            GroupG::nominal_order(q),
            order
        ),
        None => println!("G-orbits: n/a"),
    }
    match x {
        Some(x) => println!("target x = {x} ({} points)", x * m),
        None => println!("target x: none by default"),
    }
    for n in &notes {
        println!("warning: {n}");
    }
    Ok(Outcome::Ok)
}

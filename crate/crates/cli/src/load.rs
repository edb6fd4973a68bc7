//! Shared setup: parameter checks, certificate loading, point resolution.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use tightsets::certificate::{pair_index, Certificate};
use tightsets::{GroupLabel, OrbitPartition, Space};

pub fn space(q: u64) -> Result<Space> {
    Space::new(q).with_context(|| format!("invalid q = {q}"))
}

/// Why `group` cannot act on the quadric for this `q`, if it cannot.
pub fn group_obstruction(q: u64, group: GroupLabel) -> Option<String> {
    match group {
        GroupLabel::C if q % 3 == 1 => Some(format!(
            "q = {q} is 1 mod 3, so C = <g> is not semiregular on the quadric"
        )),
        GroupLabel::G if q % 4 != 1 => Some(format!("group G needs q = 1 mod 4, got q = {q}")),
        GroupLabel::G if q % 3 == 1 => Some(format!("group G needs q != 1 mod 3, got q = {q}")),
        _ => None,
    }
}

/// Orbit partition for `group`; the semiregularity of `C` is asserted.
pub fn partition(sp: &Space, group: GroupLabel) -> Result<OrbitPartition> {
    let part = match group {
        GroupLabel::C => sp.c_partition(true),
        GroupLabel::G => sp.g_partition(),
    };
    part.with_context(|| format!("q = {}: cannot use group {group}", sp.q()))
}

pub fn read_certificate(path: &Path) -> Result<(Certificate, Space)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let cert = Certificate::from_json(&text)
        .with_context(|| format!("{} is not a valid certificate", path.display()))?;
    let field = cert.field().with_context(|| format!("{}", path.display()))?;
    let quadric = tightsets::Quadric::new(&field);
    Ok((cert, Space { field, quadric }))
}

/// Point indices of the certified set. The outer error is bad input; the
/// inner one names a point that is not a valid quadric point.
pub fn resolve_points(
    cert: &Certificate,
    sp: &Space,
) -> Result<std::result::Result<Vec<usize>, String>> {
    let (f, quad) = (&sp.field, &sp.quadric);
    let index = |k: usize, pair| {
        pair_index(f, quad, pair).map_err(|e| format!("point #{k} {pair:?}: {e}"))
    };
    let mut pts = Vec::new();
    if let Some(list) = &cert.points {
        for (k, pair) in list.iter().enumerate() {
            match index(k, pair) {
                Ok(i) => pts.push(i),
                Err(msg) => return Ok(Err(msg)),
            }
        }
    } else {
        let group: GroupLabel = cert
            .group
            .parse()
            .map_err(|e: String| anyhow::anyhow!(e))?;
        let part = partition(sp, group)?;
        for (k, pair) in cert.orbit_reps.iter().enumerate() {
            match index(k, pair) {
                Ok(i) => {
                    let c = part.class_of(i);
                    pts.extend(part.members(c).iter().map(|&m| m as usize));
                }
                Err(msg) => return Ok(Err(format!("orbit representative {msg}"))),
            }
        }
    }
    let mut seen = HashSet::with_capacity(pts.len());
    for &i in &pts {
        if !seen.insert(i) {
            let pair = tightsets::certificate::pair_coeffs(f, quad, i);
            return Ok(Err(format!("point {pair:?} (index {i}) occurs twice")));
        }
    }
    if cert.points.is_none() && pts.is_empty() {
        bail!("certificate lists neither points nor orbit representatives");
    }
    pts.sort_unstable();
    Ok(Ok(pts))
}

/// `dir/name.json` becomes `dir/name.<suffix>`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}"))
}

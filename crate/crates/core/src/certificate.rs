//! JSON exchange documents: tight-set certificates and affine-set results.
//!
//! Field elements are written as little-endian coefficient vectors over the
//! prime field (length `3e`), so documents can be read without the log tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::certify::SpreadReport;
use crate::decomposition::AffineSet;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldTable};
use crate::quadric::Quadric;

pub const SCHEMA_VERSION: u32 = 1;

pub type Coeffs = Vec<u64>;
/// `[x, y]` of a quadric point.
pub type PairCoeffs = [Coeffs; 2];

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tight: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cl: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spreads: Option<SpreadCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadCheck {
    pub count: usize,
    pub seed: u64,
    pub passed: bool,
}

impl From<&SpreadReport> for SpreadCheck {
    fn from(r: &SpreadReport) -> Self {
        SpreadCheck {
            count: r.intersections.len(),
            seed: r.seed,
            passed: r.passed(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub q: u64,
    pub p: u64,
    pub e: u32,
    pub modulus: Vec<u64>,
    /// `"C"` or `"G"`.
    pub group: String,
    pub x: u64,
    /// One representative per selected orbit.
    pub orbit_reps: Vec<PairCoeffs>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<PairCoeffs>>,
    #[serde(default)]
    pub checks: Checks,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u64>>,
}

pub fn pair_coeffs(f: &FieldTable, quad: &Quadric, idx: usize) -> PairCoeffs {
    let p = quad.point(f, idx);
    [f.to_coeffs(p.x), f.to_coeffs(p.y)]
}

/// Quadric index of a coefficient pair; errors if it is not a quadric point.
pub fn pair_index(f: &FieldTable, quad: &Quadric, pair: &PairCoeffs) -> Result<usize> {
    let x = f.from_coeffs(&pair[0])?;
    let y = f.from_coeffs(&pair[1])?;
    quad.index_of(f, x, y)
}

impl Certificate {
    pub fn new(
        f: &FieldTable,
        quad: &Quadric,
        group: &str,
        x: u64,
        reps: &[usize],
        points: Option<&[usize]>,
    ) -> Self {
        Certificate {
            schema_version: SCHEMA_VERSION,
            q: f.q(),
            p: f.p(),
            e: f.e(),
            modulus: f.modulus().to_vec(),
            group: group.to_string(),
            x,
            orbit_reps: reps.iter().map(|&i| pair_coeffs(f, quad, i)).collect(),
            points: points.map(|pts| pts.iter().map(|&i| pair_coeffs(f, quad, i)).collect()),
            checks: Checks::default(),
            timing_ms: None,
        }
    }

    /// Rebuild the field and check it matches the recorded parameters.
    pub fn field(&self) -> Result<FieldTable> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Certificate(format!(
                "unsupported schema version {}",
                self.schema_version
            )));
        }
        let f = FieldTable::new(self.q)?;
        if f.p() != self.p || f.e() != self.e || f.modulus() != self.modulus.as_slice() {
            return Err(Error::Certificate(format!(
                "field parameters (p={}, e={}, modulus={:?}) do not match q={}",
                self.p, self.e, self.modulus, self.q
            )));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineDocument {
    pub schema_version: u32,
    pub q: u64,
    pub plane: [Coeffs; 4],
    /// Plücker coordinates `(p01, p02, p03, p23, p31, p12)`.
    pub infinite_line: [Coeffs; 6],
    pub points: Vec<[Coeffs; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub size: usize,
    pub two_intersection: bool,
    pub counting_identities: bool,
    /// Intersection size -> number of affine lines.
    pub spectrum: BTreeMap<u64, u64>,
}

impl AffineDocument {
    pub fn new(f: &FieldTable, set: &AffineSet) -> Self {
        let c4 = |v: &[Elem; 4]| v.map(|a| f.to_coeffs(a));
        let kind = set.kind();
        AffineDocument {
            schema_version: SCHEMA_VERSION,
            q: f.q(),
            plane: c4(&set.plane),
            infinite_line: set.infinite_line.plucker().map(|a| f.to_coeffs(a)),
            points: set.points.iter().map(c4).collect(),
            m: kind.map(|k| k.0),
            n: kind.map(|k| k.1),
            size: set.points.len(),
            two_intersection: kind.is_some(),
            counting_identities: set.counting_identities_hold(f.q()),
            spectrum: set.spectrum.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn pair_round_trip(idx in 0usize..806) {
            let f = FieldTable::new(5).unwrap();
            let quad = Quadric::new(&f);
            let pair = pair_coeffs(&f, &quad, idx);
            prop_assert_eq!(pair_index(&f, &quad, &pair).unwrap(), idx);
        }
    }

    #[test]
    fn json_round_trip_and_field_check() {
        let f = FieldTable::new(5).unwrap();
        let quad = Quadric::new(&f);
        let pts: Vec<usize> = quad.pi1().collect();
        let cert = Certificate::new(&f, &quad, "C", 1, &[0], Some(&pts));
        let s = cert.to_json().unwrap();
        let back = Certificate::from_json(&s).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json().unwrap(), s);
        assert!(back.field().is_ok());
        let mut bad = cert.clone();
        bad.modulus[0] += 1;
        assert!(bad.field().is_err());
    }

    #[test]
    fn off_quadric_pair_rejected() {
        let f = FieldTable::new(5).unwrap();
        let quad = Quadric::new(&f);
        // (1, 1): T(1) = 3 != 0
        let one = f.to_coeffs(Elem::ONE);
        assert!(pair_index(&f, &quad, &[one.clone(), one]).is_err());
    }
}

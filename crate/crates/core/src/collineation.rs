//! The collineations `g`, `sigma`, `theta` of the quadric as index
//! permutations, and orbit partitions of the groups they generate.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldTable};
use crate::quadric::Quadric;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `(x, y) -> (mu x, mu^-1 y)`
    G,
    /// `(x, y) -> (x^q, y^q)`
    Sigma,
    /// `(x, y) -> (x, omega^4 y)`
    Theta,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::G => "g",
            Generator::Sigma => "sigma",
            Generator::Theta => "theta",
        })
    }
}

/// A collineation realized as a permutation of quadric point indices.
#[derive(Clone, Debug)]
pub struct Collineation {
    pub name: Generator,
    perm: Vec<u32>,
}

impl Collineation {
    fn from_map(
        name: Generator,
        f: &FieldTable,
        quad: &Quadric,
        map: impl Fn(Elem, Elem) -> (Elem, Elem) + Sync,
    ) -> Self {
        use rayon::prelude::*;
        let perm = (0..quad.len())
            .into_par_iter()
            .map(|i| {
                let p = quad.point(f, i);
                let (x, y) = map(p.x, p.y);
                quad.index_unchecked(f, x, y) as u32
            })
            .collect();
        Collineation { name, perm }
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.perm[i] as usize
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Order of the permutation (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.perm.len()];
        let mut ord = 1u64;
        for s in 0..self.perm.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.perm[i] as usize;
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }
}

pub fn make_g(f: &FieldTable, quad: &Quadric) -> Collineation {
    let (_, mu) = f.canonical_generators();
    let mu_inv = f.inv(mu).unwrap();
    Collineation::from_map(Generator::G, f, quad, |x, y| (f.mul(mu, x), f.mul(mu_inv, y)))
}

pub fn make_sigma(f: &FieldTable, quad: &Quadric) -> Collineation {
    Collineation::from_map(Generator::Sigma, f, quad, |x, y| (f.frob(x), f.frob(y)))
}

/// `theta` is only defined here for `q = 1 mod 4`.
pub fn make_theta(f: &FieldTable, quad: &Quadric) -> Result<Collineation> {
    if f.q() % 4 != 1 {
        return Err(Error::Unsupported {
            q: f.q(),
            reason: "theta requires q = 1 mod 4".into(),
        });
    }
    let (omega, _) = f.canonical_generators();
    let w4 = f.pow(omega, 4);
    Ok(Collineation::from_map(Generator::Theta, f, quad, |x, y| {
        (x, f.mul(w4, y))
    }))
}

/// Which group the partition came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupLabel {
    /// `C = <g>`
    C,
    /// `G = C <sigma> <theta>`
    G,
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupLabel::C => "C",
            GroupLabel::G => "G",
        })
    }
}

impl std::str::FromStr for GroupLabel {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "C" | "c" => Ok(GroupLabel::C),
            "G" | "g" => Ok(GroupLabel::G),
            _ => Err(format!("unknown group {s:?}, expected C or G")),
        }
    }
}

/// Orbits, ordered by `(size, smallest member)`. Representatives are the
/// smallest member of each orbit.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    pub label: GroupLabel,
    class_of: Vec<u32>,
    members: Vec<Vec<u32>>,
}

impl OrbitPartition {
    pub fn num_classes(&self) -> usize {
        self.members.len()
    }
    pub fn num_points(&self) -> usize {
        self.class_of.len()
    }
    #[inline]
    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i] as usize
    }
    pub fn members(&self, c: usize) -> &[u32] {
        &self.members[c]
    }
    pub fn size(&self, c: usize) -> usize {
        self.members[c].len()
    }
    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }
    pub fn representative(&self, c: usize) -> usize {
        self.members[c][0] as usize
    }
    pub fn representatives(&self) -> Vec<usize> {
        (0..self.num_classes()).map(|c| self.representative(c)).collect()
    }

    fn from_class_ids(label: GroupLabel, raw: &[u32]) -> Self {
        let n_raw = raw.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); n_raw];
        for (i, &c) in raw.iter().enumerate() {
            members[c as usize].push(i as u32);
        }
        members.retain(|m| !m.is_empty());
        members.sort_by_key(|m| (m.len(), m[0]));
        let mut class_of = vec![0u32; raw.len()];
        for (c, m) in members.iter().enumerate() {
            for &i in m {
                class_of[i as usize] = c as u32;
            }
        }
        OrbitPartition {
            label,
            class_of,
            members,
        }
    }
}

/// Orbits of the group generated by `gens` on `n_points` indices.
pub fn orbits(label: GroupLabel, gens: &[&Collineation], n_points: usize) -> OrbitPartition {
    let mut raw = vec![u32::MAX; n_points];
    let mut next = 0u32;
    let mut stack = Vec::new();
    for s in 0..n_points {
        if raw[s] != u32::MAX {
            continue;
        }
        raw[s] = next;
        stack.push(s);
        while let Some(i) = stack.pop() {
            for g in gens {
                let j = g.apply(i);
                if raw[j] == u32::MAX {
                    raw[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    OrbitPartition::from_class_ids(label, &raw)
}

/// `C`-orbits; in strict mode, checks semiregularity: every orbit has size
/// `q^2+q+1`, there are `q^2+1` of them, and `pi_1`, `pi_2` are orbits.
pub fn c_orbits(g: &Collineation, quad: &Quadric, strict: bool) -> Result<OrbitPartition> {
    let part = orbits(GroupLabel::C, &[g], quad.len());
    if strict {
        let q = quad.q() as usize;
        let expected = q * q + q + 1;
        for c in 0..part.num_classes() {
            if part.size(c) != expected {
                return Err(Error::NotSemiregular {
                    point: part.representative(c),
                    size: part.size(c),
                    expected,
                });
            }
        }
        assert_eq!(part.num_classes(), q * q + 1);
        for plane in [quad.pi1().collect::<Vec<_>>(), quad.pi2().collect()] {
            let c = part.class_of(plane[0]);
            assert!(plane.iter().all(|&i| part.class_of(i) == c));
        }
    }
    Ok(part)
}

/// The generators of `G` (`theta` is dropped when it acts trivially).
pub struct GroupG {
    pub g: Collineation,
    pub sigma: Collineation,
    pub theta: Collineation,
}

impl GroupG {
    pub fn new(f: &FieldTable, quad: &Quadric) -> Result<Self> {
        Ok(GroupG {
            g: make_g(f, quad),
            sigma: make_sigma(f, quad),
            theta: make_theta(f, quad)?,
        })
    }

    pub fn orbits(&self, n_points: usize) -> OrbitPartition {
        orbits(GroupLabel::G, &[&self.g, &self.sigma, &self.theta], n_points)
    }

    /// `3/4 (q-1)(q^2+q+1)`.
    pub fn nominal_order(q: u64) -> u64 {
        3 * (q - 1) * (q * q + q + 1) / 4
    }

    /// Number of distinct permutations `g^i sigma^j theta^k`.
    ///
    /// `sigma` normalizes both `<g>` and `<theta>`, and `g` commutes with
    /// `theta`, so every element of `G` has this form. The count is the
    /// nominal order divided by the number of words acting trivially.
    pub fn effective_order(&self, f: &FieldTable, quad: &Quadric) -> u64 {
        let q = f.q();
        let m = q * q + q + 1;
        let (omega, mu) = f.canonical_generators();
        let w4 = f.pow(omega, 4);
        let sample: Vec<usize> = (0..quad.len()).step_by((quad.len() / 64).max(1)).collect();
        let mut trivial = 0u64;
        for i in 0..m {
            let mi = f.pow(mu, i);
            let mi_inv = f.inv(mi).unwrap();
            for j in 0..3u32 {
                for k in 0..(q - 1) / 4 {
                    let tk = f.pow(w4, k);
                    let act = |idx: usize| {
                        let p = quad.point(f, idx);
                        let (mut x, mut y) = (p.x, p.y);
                        for _ in 0..j {
                            x = f.frob(x);
                            y = f.frob(y);
                        }
                        quad.index_unchecked(f, f.mul(mi, x), f.mul(f.mul(mi_inv, tk), y))
                    };
                    if sample.iter().all(|&s| act(s) == s) && (0..quad.len()).all(|s| act(s) == s)
                    {
                        trivial += 1;
                    }
                }
            }
        }
        Self::nominal_order(q) / trivial
    }
}

/// Map each fine orbit to the coarse orbit containing it, checking that the
/// coarse partition is a union of fine orbits.
pub fn orbit_fusion_map(fine: &OrbitPartition, coarse: &OrbitPartition) -> Result<Vec<usize>> {
    if fine.num_points() != coarse.num_points() {
        return Err(Error::InconsistentPartitions(format!(
            "{} vs {} points",
            fine.num_points(),
            coarse.num_points()
        )));
    }
    let mut map = Vec::with_capacity(fine.num_classes());
    for c in 0..fine.num_classes() {
        let members = fine.members(c);
        let target = coarse.class_of(members[0] as usize);
        if let Some(&bad) = members
            .iter()
            .find(|&&i| coarse.class_of(i as usize) != target)
        {
            return Err(Error::InconsistentPartitions(format!(
                "fine class {c} splits at point {bad}"
            )));
        }
        map.push(target);
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadric::{collinear, quadratic_form};

    fn setup(q: u64) -> (FieldTable, Quadric) {
        let f = FieldTable::new(q).unwrap();
        let quad = Quadric::new(&f);
        (f, quad)
    }

    #[test]
    fn g_order_and_planes() {
        let (f, quad) = setup(5);
        let g = make_g(&f, &quad);
        assert_eq!(g.order(), 31);
        let mut i = 0;
        let mut steps = 0;
        loop {
            i = g.apply(i);
            steps += 1;
            if i == 0 {
                break;
            }
        }
        assert_eq!(steps, 31);
        let pi1: Vec<usize> = quad.pi1().collect();
        assert!(pi1.iter().all(|&i| pi1.contains(&g.apply(i))));
        let pi2: Vec<usize> = quad.pi2().collect();
        assert!(pi2.iter().all(|&i| pi2.contains(&g.apply(i))));
        // The map preserves the form exactly.
        let (_, mu) = f.canonical_generators();
        for p in quad.points(&f).iter().step_by(7) {
            let img = (f.mul(mu, p.x), f.mul(f.inv(mu).unwrap(), p.y));
            assert_eq!(quadratic_form(&f, img), quadratic_form(&f, (p.x, p.y)));
        }
    }

    #[test]
    fn sigma_theta_orders() {
        let (f, quad) = setup(5);
        assert_eq!(make_sigma(&f, &quad).order(), 3);
        assert!(make_theta(&f, &quad).unwrap().is_identity());
        let (f9, quad9) = setup(9);
        assert_eq!(make_sigma(&f9, &quad9).order(), 3);
        let (omega, _) = f9.canonical_generators();
        assert_eq!(f9.mult_order(f9.pow(omega, 4)), Some(2));
        assert_eq!(make_theta(&f9, &quad9).unwrap().order(), 2);
        let (f7, quad7) = setup(7);
        assert!(make_theta(&f7, &quad7).is_err());
    }

    #[test]
    fn generators_are_isometries_q5() {
        let (f, quad) = setup(5);
        let pts = quad.points(&f);
        for gen in [
            make_g(&f, &quad),
            make_sigma(&f, &quad),
            make_theta(&f, &quad).unwrap(),
        ] {
            for (i, a) in pts.iter().enumerate() {
                for (j, b) in pts.iter().enumerate() {
                    let ga = &pts[gen.apply(i)];
                    let gb = &pts[gen.apply(j)];
                    assert_eq!(collinear(&f, a, b), collinear(&f, ga, gb));
                }
            }
        }
    }

    #[test]
    fn c_orbits_q5_semiregular() {
        let (f, quad) = setup(5);
        let part = c_orbits(&make_g(&f, &quad), &quad, true).unwrap();
        assert_eq!(part.num_classes(), 26);
        assert!(part.sizes().iter().all(|&s| s == 31));
        assert_eq!(part.class_of(0), 0);
    }

    #[test]
    fn c_orbits_q7_not_semiregular() {
        let (f, quad) = setup(7);
        let g = make_g(&f, &quad);
        let err = c_orbits(&g, &quad, true).unwrap_err();
        assert!(matches!(err, Error::NotSemiregular { size: 19, .. }), "{err}");
        let part = c_orbits(&g, &quad, false).unwrap();
        assert_eq!(part.size(part.class_of(0)), 19);
    }

    #[test]
    fn g_orbits_q9_fuse_c_orbits() {
        let (f, quad) = setup(9);
        let grp = GroupG::new(&f, &quad).unwrap();
        let fine = c_orbits(&grp.g, &quad, true).unwrap();
        let coarse = grp.orbits(quad.len());
        assert!(coarse.sizes().iter().all(|s| s % 91 == 0));
        assert_eq!(coarse.sizes().iter().sum::<usize>(), 7462);
        let fusion = orbit_fusion_map(&fine, &coarse).unwrap();
        let pi1c = fine.class_of(0);
        assert_eq!(coarse.size(fusion[pi1c]), 91);
        let pi2c = fine.class_of(quad.pi2_start());
        for (c, &g) in fusion.iter().enumerate() {
            if c != pi1c && c != pi2c {
                assert!([91, 182, 273, 546].contains(&coarse.size(g)));
            }
        }
        assert_eq!(GroupG::nominal_order(9), 546);
        assert_eq!(grp.effective_order(&f, &quad), 546);
    }

    #[test]
    fn effective_order_q5_collapses_theta() {
        let (f, quad) = setup(5);
        let grp = GroupG::new(&f, &quad).unwrap();
        assert_eq!(GroupG::nominal_order(5), 93);
        assert_eq!(grp.effective_order(&f, &quad), 93);
    }

    #[test]
    fn fusion_rejects_non_refinement() {
        let (f, quad) = setup(5);
        let g = make_g(&f, &quad);
        let fine = c_orbits(&g, &quad, true).unwrap();
        let sigma = make_sigma(&f, &quad);
        let coarse = orbits(GroupLabel::G, &[&sigma], quad.len());
        assert!(orbit_fusion_map(&fine, &coarse).is_err());
    }
}

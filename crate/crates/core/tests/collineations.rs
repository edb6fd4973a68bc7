use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tightsets::collineation::{c_orbits, make_g, make_sigma, make_theta, orbit_fusion_map, GroupG};
use tightsets::quadric::collinear;
use tightsets::{Error, Space};

#[test]
fn generators_preserve_collinearity_sampled_q9() {
    let sp = Space::new(9).unwrap();
    let (f, quad) = (&sp.field, &sp.quadric);
    let gens = [make_g(f, quad), make_sigma(f, quad), make_theta(f, quad).unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = quad.len();
    for _ in 0..10_000 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let before = collinear(f, &quad.point(f, i), &quad.point(f, j));
        for g in &gens {
            let after = collinear(f, &quad.point(f, g.apply(i)), &quad.point(f, g.apply(j)));
            assert_eq!(before, after);
        }
    }
}

#[test]
fn cyclic_group_order_and_semiregularity() {
    for q in [2u64, 3, 5, 8, 9, 11] {
        let sp = Space::new(q).unwrap();
        let g = make_g(&sp.field, &sp.quadric);
        assert_eq!(g.order(), q * q + q + 1, "q = {q}");
        let part = sp.c_partition(true).unwrap();
        assert!(part.sizes().iter().all(|&s| s as u64 == q * q + q + 1));
        assert_eq!(part.num_classes() as u64, q * q + 1);
    }
}

#[test]
fn q7_cyclic_group_is_not_semiregular() {
    let sp = Space::new(7).unwrap();
    let g = make_g(&sp.field, &sp.quadric);
    match c_orbits(&g, &sp.quadric, true) {
        Err(Error::NotSemiregular { size, expected, .. }) => {
            assert_eq!((size, expected), (19, 57));
        }
        other => panic!("expected a semiregularity failure, got {other:?}"),
    }
    let part = c_orbits(&g, &sp.quadric, false).unwrap();
    assert!(part.sizes().contains(&19));
}

#[test]
fn theta_needs_q_one_mod_four() {
    for q in [3u64, 7, 11] {
        let sp = Space::new(q).unwrap();
        assert!(make_theta(&sp.field, &sp.quadric).is_err(), "q = {q}");
    }
}

#[test]
fn group_g_order_and_fusion_q9() {
    let sp = Space::new(9).unwrap();
    let (f, quad) = (&sp.field, &sp.quadric);
    let grp = GroupG::new(f, quad).unwrap();
    assert_eq!(GroupG::nominal_order(9), 546);
    assert_eq!(grp.effective_order(f, quad), 546);
    let fine = sp.c_partition(true).unwrap();
    let coarse = sp.g_partition().unwrap();
    let map = orbit_fusion_map(&fine, &coarse).unwrap();
    assert_eq!(map.len(), fine.num_classes());
    assert_eq!(coarse.sizes().iter().sum::<usize>(), quad.len());
    // pi_1 and pi_2 are each a single G-orbit.
    let [a, b] = sp.plane_classes(&coarse);
    assert_ne!(a, b);
    assert_eq!(coarse.size(a), 91);
    assert_eq!(coarse.size(b), 91);
}

#[test]
fn orbit_partitions_are_deterministic() {
    let a = Space::new(9).unwrap().g_partition().unwrap();
    let b = Space::new(9).unwrap().g_partition().unwrap();
    assert_eq!(a.representatives(), b.representatives());
    assert_eq!(a.sizes(), b.sizes());
}

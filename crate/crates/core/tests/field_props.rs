use std::sync::OnceLock;

use proptest::prelude::*;
use tightsets::FieldTable;

const QS: [u64; 9] = [2, 3, 4, 5, 7, 8, 9, 16, 27];

fn tables() -> &'static [FieldTable] {
    static T: OnceLock<Vec<FieldTable>> = OnceLock::new();
    T.get_or_init(|| QS.iter().map(|&q| FieldTable::new(q).unwrap()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn trace_is_f_linear(k in 0..QS.len(), a in any::<u32>(), b in any::<u32>(), l in any::<u32>()) {
        let f = &tables()[k];
        let size = f.order() + 1;
        let (a, b) = (f.from_code(a % size), f.from_code(b % size));
        let sub = f.subfield_elements();
        let lam = sub[l as usize % sub.len()];
        prop_assert_eq!(f.trace(f.add(a, b)), f.add(f.trace(a), f.trace(b)));
        prop_assert_eq!(f.trace(f.mul(lam, a)), f.mul(lam, f.trace(a)));
        prop_assert!(f.in_subfield(f.trace(a)));
    }

    #[test]
    fn frobenius_is_an_automorphism(k in 0..QS.len(), a in any::<u32>(), b in any::<u32>()) {
        let f = &tables()[k];
        let size = f.order() + 1;
        let (a, b) = (f.from_code(a % size), f.from_code(b % size));
        prop_assert_eq!(f.frob(f.add(a, b)), f.add(f.frob(a), f.frob(b)));
        prop_assert_eq!(f.frob(f.mul(a, b)), f.mul(f.frob(a), f.frob(b)));
        prop_assert_eq!(f.frob(f.frob(f.frob(a))), a);
    }
}

#[test]
fn trace_linearity_exhaustive_q5() {
    let f = FieldTable::new(5).unwrap();
    let all: Vec<_> = f.elements().collect();
    let sub = f.subfield_elements();
    for &a in &all {
        for &b in &all {
            assert_eq!(f.trace(f.add(a, b)), f.add(f.trace(a), f.trace(b)));
        }
        for &lam in &sub {
            assert_eq!(f.trace(f.mul(lam, a)), f.mul(lam, f.trace(a)));
        }
    }
}

#[test]
fn trace_is_onto_with_equal_fibres() {
    for &q in &[2, 3, 4, 5, 7, 8, 9, 16, 27] {
        let f = FieldTable::new(q).unwrap();
        let mut fibre = std::collections::HashMap::new();
        for a in f.elements() {
            *fibre.entry(f.trace(a)).or_insert(0u64) += 1;
        }
        assert_eq!(fibre.len() as u64, q, "q = {q}");
        assert!(fibre.values().all(|&n| n == q * q), "q = {q}");
    }
}

#[test]
fn frobenius_fixes_exactly_the_subfield() {
    for &q in &[4, 5, 9, 25] {
        let f = FieldTable::new(q).unwrap();
        let fixed: Vec<_> = f.elements().filter(|&a| f.frob(a) == a).collect();
        assert_eq!(fixed.len() as u64, q);
        assert!(fixed.iter().all(|&a| f.in_subfield(a)));
    }
}

#[test]
fn construction_is_deterministic() {
    for &q in &[5, 9, 17] {
        let a = FieldTable::new(q).unwrap();
        let b = FieldTable::new(q).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.exp_table(), b.exp_table());
    }
}

//! Module constructions checked against the defining relations and the
//! structural invariants of completely splittable modules.

use std::collections::BTreeMap;

use hecke_clifford::algebra::jucys_murphy;
use hecke_clifford::combinatorics::weights::enumerate_wprime;
use hecke_clifford::combinatorics::{Characteristic, Weight};
use hecke_clifford::supermodules::*;
use hecke_clifford::{with_field, Field, Fp2, Quad};

fn ch(p: u32) -> Characteristic {
    Characteristic::new(p).unwrap()
}

fn failures<F: Field>(m: &SuperModule<F>) -> Vec<String> {
    check_relations(m).into_iter().filter(|c| !c.holds).map(|c| format!("{}: {:?}", c.relation, c.witness)).collect()
}

fn seminormal_checks<F: Field>(p: u32, n: usize) -> Result<(), SupermoduleError> {
    for w in enumerate_wprime(n, ch(p), 3) {
        let m = build_d::<F>(&w)?;
        assert!(failures(&m).is_empty(), "{w}: {:?}", failures(&m));
        assert!(is_x_semisimple(&m)?, "{w}");
        let expected: BTreeMap<Vec<u32>, usize> =
            w.class().into_iter().map(|c| (c.weight.entries().to_vec(), 1 << n)).collect();
        assert_eq!(weight_decomposition(&m)?, expected, "{w}");
        // x_k² acts as q(i_k) on the component of w itself.
        let own = weight_space_indices(&m, w.entries())?;
        assert_eq!(own.len(), 1 << n);
    }
    Ok(())
}

#[test]
fn seminormal_modules_satisfy_relations() {
    for p in [0u32, 3, 5, 7] {
        for n in 1..=3 {
            let r: Result<(), SupermoduleError> = with_field!(p, F => seminormal_checks::<F>(p, n));
            r.unwrap();
        }
    }
}

#[test]
fn thick_endomorphisms_have_dimension_two_to_the_zero_count() {
    for p in [0u32, 5] {
        for n in 1..=3 {
            for w in enumerate_wprime(n, ch(p), 3) {
                let e = with_field!(p, F => build_d::<F>(&w).map(|m| end_dimension(&m))).unwrap();
                let g = w.zero_count();
                assert_eq!(e.total(), 1 << g, "{w}");
                // Any zero entry gives an odd automorphism, so the two halves match.
                assert_eq!(e.even == e.odd, g > 0, "{w}: {e:?}");
            }
        }
    }
}

fn jm_agrees<F: Field>(w: &Weight) -> Result<bool, SupermoduleError> {
    let n = w.len();
    let m = build_d::<F>(w)?;
    let mut ok = m.x(1).is_zero();
    for k in 2..=n {
        ok &= m.act(&jucys_murphy::<F>(n, k))? == *m.x(k);
    }
    Ok(ok)
}

#[test]
fn finite_weights_see_jucys_murphy_elements() {
    for p in [0u32, 5] {
        for n in 1..=4 {
            for w in enumerate_wprime(n, ch(p), 4).into_iter().filter(Weight::in_wyn) {
                let ok: Result<bool, SupermoduleError> = with_field!(p, F => jm_agrees::<F>(&w));
                assert!(ok.unwrap(), "{w}");
            }
        }
    }
}

#[test]
fn normalized_intertwiners_are_involutive_and_intertwine() {
    for w in enumerate_wprime(3, ch(0), 3) {
        let m = build_d::<Quad>(&w).unwrap();
        for k in 1..3 {
            if !w.admissible(k) {
                continue;
            }
            let v = w.swapped(k);
            let f = phi_hat(&m, w.entries(), k).unwrap();
            let g = phi_hat(&m, v.entries(), k).unwrap();
            assert_eq!(g.mul(&f), Matrix::identity(f.cols()), "{w} k={k}");
            let src = weight_space_indices(&m, w.entries()).unwrap();
            let tgt = weight_space_indices(&m, v.entries()).unwrap();
            let on = |a: &Matrix<Quad>, rows: &[usize], cols: &[usize]| a.restrict(rows, cols);
            assert_eq!(f.mul(&on(m.x(k), &src, &src)), on(m.x(k + 1), &tgt, &tgt).mul(&f));
            assert_eq!(f.mul(&on(m.c(k), &src, &src)), on(m.c(k + 1), &tgt, &tgt).mul(&f));
        }
    }
}

#[test]
fn rank_two_modules() {
    for i in 0..=4u32 {
        for j in 0..=4u32 {
            let m = build_v2::<Quad>(i, j).unwrap();
            assert!(failures(&m).is_empty(), "V({i},{j}): {:?}", failures(&m));
            assert_eq!(is_x_squared_semisimple(&m).unwrap(), i != j || i == 0, "V({i},{j})");
        }
    }
    let v00 = build_v2::<Quad>(0, 0).unwrap();
    assert!(v00.x(1).mul(v00.x(1)).is_zero() && v00.x(2).mul(v00.x(2)).is_zero());
}

#[test]
fn three_strand_examples() {
    let v001 = build_v001::<Quad>().unwrap();
    let v100 = build_v100::<Quad>().unwrap();
    assert!(failures(&v001).is_empty(), "{:?}", failures(&v001));
    assert!(failures(&v100).is_empty(), "{:?}", failures(&v100));
    let x3 = v001.x(3);
    assert_eq!(x3.mul(x3), Matrix::scalar(v001.dim(), Quad::from_int(2)));
    assert!(is_x_squared_semisimple(&v001).unwrap());
    for j in [2u32, 3] {
        let m = induced_v00_l::<Quad>(j).unwrap();
        assert!(failures(&m).is_empty(), "j={j}: {:?}", failures(&m));
        assert!(is_x_squared_semisimple(&m).unwrap());
    }
    let kato = kato_module::<Quad>(3).unwrap();
    assert!(failures(&kato).is_empty());
    assert!(!is_x_squared_semisimple(&kato).unwrap());
}

#[test]
fn basic_spin_modules() {
    for n in 1..=4 {
        let m = basic_spin::<Quad>(n).unwrap();
        assert_eq!(m.dim(), 1 << n);
        assert!(failures(&m).is_empty(), "n={n}: {:?}", failures(&m));
        assert!(is_x_squared_semisimple(&m).unwrap(), "n={n}");
        let m = basic_spin::<Fp2<3>>(n).unwrap();
        assert!(failures(&m).is_empty(), "p=3 n={n}");
    }
}

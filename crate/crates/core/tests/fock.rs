//! The truncated Fock model: group law, unitarity, central character,
//! orthogonality relations and the scaled injections.

use dlimit_core::fock::{
    coefficient, group_multiply, operator_matrix, orthogonality_gram, orthogonality_integral,
    verify_group_law, verify_injection_isometry, zeta_prime_scale, CoefficientFamily, FockBasis,
    GroupElement, IndexPair,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_element(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> GroupElement {
    let v: Vec<Complex64> = (0..n)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let r = radius * rng.gen_range(0.5..1.0) / norm;
    GroupElement::new(rng.gen_range(-2.0..2.0), v.iter().map(|x| x * r).collect())
}

fn multi_indices(n: usize, max: usize) -> Vec<Vec<usize>> {
    FockBasis::new(n, max).index
}

#[test]
fn identity_and_vacuum() {
    let basis = FockBasis::new(2, 6);
    let id = operator_matrix(1.5, &GroupElement::identity(2), &basis).unwrap();
    for (i, row) in id.matrix.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            assert_eq!(*x, if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) });
        }
    }
    for v in [c(0.3, 0.4), c(-1.0, 0.2), c(0.0, 2.0)] {
        let h = GroupElement::new(0.0, vec![v]);
        let x = coefficient(&[0], &[0], 1.0, &h).unwrap();
        assert!((x - c((-v.norm_sqr() / 2.0).exp(), 0.0)).norm() < 1e-15);
    }
    assert!(operator_matrix(0.0, &GroupElement::identity(1), &FockBasis::new(1, 2)).is_err());
    assert!(operator_matrix(1.0, &GroupElement::identity(2), &FockBasis::new(1, 2)).is_err());
}

#[test]
fn central_character_is_exactly_scalar() {
    for t in [1.0, -1.0, 0.5, 2.0] {
        let basis = FockBasis::new(2, 8);
        let (z1, z2) = (0.7, -1.9);
        let m1 = operator_matrix(t, &GroupElement::central(2, z1), &basis).unwrap();
        let m12 = operator_matrix(t, &GroupElement::central(2, z1 + z2), &basis).unwrap();
        let phase = m1.matrix[0][0];
        assert!(
            (phase - Complex64::from_polar(1.0, -t * z1)).norm() < 1e-13,
            "e^(-itz)"
        );
        let m2 = operator_matrix(t, &GroupElement::central(2, z2), &basis).unwrap();
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let want = if i == j { phase } else { c(0.0, 0.0) };
                assert!((m1.matrix[i][j] - want).norm() < 1e-13);
            }
        }
        // additive phase
        assert!((m12.matrix[0][0] - m1.matrix[0][0] * m2.matrix[0][0]).norm() < 1e-13);
        let a = GroupElement::central(2, z1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = random_element(&mut rng, 2, 1.0);
        assert!(verify_group_law(t, &a, &b, 14, 4).unwrap() < 1e-13);
    }
}

#[test]
fn group_law_converges_with_the_cutoff() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for t in [1.0, -1.0] {
        for _ in 0..4 {
            let a = random_element(&mut rng, 1, 1.0);
            let b = random_element(&mut rng, 1, 1.0);
            let r15 = verify_group_law(t, &a, &b, 15, 5).unwrap();
            let r30 = verify_group_law(t, &a, &b, 30, 5).unwrap();
            assert!(r30 < 1e-8, "t={t} residual {r30:e}");
            assert!(r30 * 100.0 <= r15, "t={t} {r15:e} -> {r30:e}");
            let id = GroupElement::identity(1);
            assert_eq!(verify_group_law(t, &a, &id, 15, 5).unwrap(), 0.0);
        }
    }
    let a = random_element(&mut rng, 2, 1.0);
    let b = random_element(&mut rng, 2, 1.0);
    assert!(verify_group_law(0.5, &a, &b, 24, 4).unwrap() < 1e-8);
    assert!(verify_group_law(1.0, &a, &b, 12, 5).is_err());
}

#[test]
fn columns_are_unit_vectors_up_to_the_tail() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for t in [0.5, 1.0, 2.0, -1.0] {
        let h = random_element(&mut rng, 1, 1.0);
        let op = operator_matrix(t, &h, &FockBasis::new(1, 30)).unwrap();
        for col in 0..op.basis.len() {
            let d = op.column_defect(col);
            assert!(d > -1e-12, "column norm above one");
            if col <= 10 {
                assert!(d < 1e-8, "t={t} col={col} defect {d:e}");
            }
        }
    }
}

#[test]
fn coefficients_are_conjugate_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for t in [1.0, 2.0, -0.5] {
        let h = random_element(&mut rng, 2, 1.2);
        for l in multi_indices(2, 2) {
            for m in multi_indices(2, 2) {
                let a = coefficient(&l, &m, t, &h.inverse()).unwrap();
                let b = coefficient(&m, &l, t, &h).unwrap().conj();
                assert!((a - b).norm() < 1e-13);
            }
        }
        let basis = FockBasis::new(2, 6);
        let op = operator_matrix(t, &h, &basis).unwrap();
        assert!(
            (op.entry(&[1, 1], &[2, 0]).unwrap() - coefficient(&[1, 1], &[2, 0], t, &h).unwrap())
                .norm()
                < 1e-15
        );
    }
    let e = GroupElement::identity(1);
    assert_eq!(coefficient(&[2], &[2], 1.0, &e).unwrap(), c(1.0, 0.0));
    assert_eq!(coefficient(&[2], &[1], 1.0, &e).unwrap(), c(0.0, 0.0));
}

#[test]
fn orthogonality_relations() {
    assert!(
        (orthogonality_integral(&[0], &[0], &[0], &[0], 1.0, 4)
            .unwrap()
            .value
            - c(1.0, 0.0))
        .norm()
            < 1e-6
    );
    assert!(
        orthogonality_integral(&[0], &[0], &[1], &[0], 1.0, 4)
            .unwrap()
            .value
            .norm()
            < 1e-6
    );
    assert!(
        (orthogonality_integral(&[0], &[0], &[0], &[0], 2.0, 4)
            .unwrap()
            .value
            - c(0.5, 0.0))
        .norm()
            < 1e-6
    );
    for n in 1..=2 {
        let idx = multi_indices(n, 2);
        let funcs: Vec<IndexPair> = idx
            .iter()
            .flat_map(|l| idx.iter().map(move |m| (l.clone(), m.clone())))
            .collect();
        for t in [0.5, 1.0, 2.0, -1.0] {
            let r = orthogonality_gram(&funcs, t, 4).unwrap();
            assert!(r.converged);
            let diag = t.abs().powi(-(n as i32));
            for i in 0..funcs.len() {
                for j in 0..funcs.len() {
                    let want = if i == j { diag } else { 0.0 };
                    assert!(
                        (r.gram[i][j] - c(want, 0.0)).norm() < 1e-6,
                        "n={n} t={t} {:?} {:?}",
                        funcs[i],
                        funcs[j]
                    );
                }
            }
        }
    }
    assert!(
        orthogonality_integral(&[0, 0, 0], &[0, 0, 0], &[0, 0, 0], &[0, 0, 0], 1.0, 4).is_err()
    );
}

#[test]
fn zeta_prime_scales() {
    assert_eq!(zeta_prime_scale(2, 2, 3.0).unwrap(), 1.0);
    assert_eq!(zeta_prime_scale(1, 2, 4.0).unwrap(), 0.5);
    assert_eq!(zeta_prime_scale(1, 3, -4.0).unwrap(), 0.25);
    assert!(zeta_prime_scale(2, 1, 1.0).is_err());
    assert!(zeta_prime_scale(1, 2, 0.0).is_err());
}

#[test]
fn injections_are_isometric() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let single: CoefficientFamily = vec![(vec![1], vec![0], c(1.0, 0.0))];
    let r = verify_injection_isometry(1, 2, 3.0, &single, None).unwrap();
    assert!(r.defect < 1e-15 && r.round_trip_exact);
    for t in [0.5, 2.0, -3.0] {
        for (ns, nl) in [(1, 2), (1, 3), (2, 4)] {
            let idx = multi_indices(ns, 3);
            let mut family: CoefficientFamily = Vec::new();
            while family.len() < 5 {
                let l = idx[rng.gen_range(0..idx.len())].clone();
                let m = idx[rng.gen_range(0..idx.len())].clone();
                if family.iter().any(|(a, b, _)| *a == l && *b == m) {
                    continue;
                }
                family.push((l, m, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))));
            }
            let r = verify_injection_isometry(ns, nl, t, &family, Some(4)).unwrap();
            assert!(r.defect < 1e-12, "{r:?}");
            assert!(r.round_trip_exact);
            let q = r.quadrature_norm.unwrap();
            assert!(
                (q - r.norm_small).abs() < 1e-6,
                "quadrature {q} vs {}",
                r.norm_small
            );
        }
    }
}

#[test]
fn group_multiply_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let (a, b, d) = (
            random_element(&mut rng, 3, 2.0),
            random_element(&mut rng, 3, 2.0),
            random_element(&mut rng, 3, 2.0),
        );
        let x = group_multiply(&group_multiply(&a, &b).unwrap(), &d).unwrap();
        let y = group_multiply(&a, &group_multiply(&b, &d).unwrap()).unwrap();
        assert!((x.z - y.z).abs() < 1e-12);
    }
}

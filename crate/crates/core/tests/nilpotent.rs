//! Pfaffian identities on Heisenberg-type algebras and the nilpotent-table
//! constructions.

#![allow(clippy::needless_range_loop)]

use dlimit_core::linalg::{self, q, qr, Matrix, Q};
use dlimit_core::nilpotent::{
    self, b_form, build_algebra, generic_set_witness, is_square_integrable, pfaffian,
    pfaffian_split_check, random_rational, table_algebras, CentralFunctional, NilpotentAlgebra,
};
use dlimit_core::tables::HeisenbergField;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn h(n: usize) -> NilpotentAlgebra {
    NilpotentAlgebra::heisenberg(HeisenbergField::C, n).unwrap()
}

fn hq(n: usize) -> NilpotentAlgebra {
    NilpotentAlgebra::heisenberg(HeisenbergField::H, n).unwrap()
}

fn t(v: &[i64]) -> CentralFunctional {
    CentralFunctional::from_i64(v)
}

#[test]
fn heisenberg_pfaffian_is_t_to_the_n() {
    for n in 1..=4 {
        let alg = h(n);
        assert_eq!(alg.pf_sign, 1, "global sign");
        for x in [qr(1, 1), qr(-2, 1), qr(3, 7), qr(-5, 2)] {
            let f = b_form(&alg, &CentralFunctional::new(vec![x.clone()])).unwrap();
            assert_eq!(pfaffian(&f), linalg::pow(&x, n as u32), "n={n}");
            // t times the standard symplectic matrix
            for i in 0..2 * n {
                for j in 0..2 * n {
                    let want = match (i % 2, j) {
                        (0, j) if j == i + 1 => x.clone(),
                        (1, j) if j + 1 == i => -x.clone(),
                        _ => Q::zero(),
                    };
                    assert_eq!(f.matrix()[i][j], want);
                }
            }
        }
        assert!(!is_square_integrable(&alg, &t(&[0])).unwrap());
        assert!(is_square_integrable(&alg, &t(&[1])).unwrap());
    }
}

#[test]
fn quaternionic_heisenberg_form_and_pfaffian() {
    let alg = hq(1);
    assert_eq!((alg.dim_z, alg.dim_v), (3, 4));
    let f = b_form(&alg, &t(&[1, 0, 0])).unwrap();
    // basis 1, i, j, k: [1, i] = i and [j, k] = Im(conj(j) k) = -i
    let expect = linalg::from_i64(&[
        vec![0, 1, 0, 0],
        vec![-1, 0, 0, 0],
        vec![0, 0, 0, -1],
        vec![0, 0, 1, 0],
    ]);
    assert_eq!(f.matrix(), &expect);
    assert!(!is_square_integrable(&alg, &t(&[0, 0, 0])).unwrap());
    assert!(is_square_integrable(&alg, &t(&[1, 2, 3])).unwrap());

    // interpolate a quadratic form through 20 rational points
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let monomials = |x: &[Q]| -> Vec<Q> {
        vec![
            &x[0] * &x[0],
            &x[1] * &x[1],
            &x[2] * &x[2],
            &x[0] * &x[1],
            &x[0] * &x[2],
            &x[1] * &x[2],
        ]
    };
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut values = Vec::new();
    for _ in 0..20 {
        let x = random_rational(&mut rng, 3);
        values.push(pfaffian(
            &b_form(&alg, &CentralFunctional::new(x.clone())).unwrap(),
        ));
        rows.push(monomials(&x));
    }
    let basis: Vec<Vec<Q>> = (0..6)
        .map(|k| rows.iter().map(|r| r[k].clone()).collect())
        .collect();
    let coeffs = linalg::solve_in_span(&basis, &values).expect("values fit one quadratic form");
    let s = q(alg.pf_sign as i64);
    assert_eq!(coeffs, vec![s.clone(), s.clone(), s, q(0), q(0), q(0)]);
}

#[test]
fn octonionic_heisenberg() {
    let alg = NilpotentAlgebra::heisenberg(HeisenbergField::O, 1).unwrap();
    assert_eq!((alg.dim_z, alg.dim_v), (7, 8));
    alg.check_invariants().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let x = random_rational(&mut rng, 7);
        let n2: Q = x.iter().map(|v| v * v).sum();
        let pf = pfaffian(&b_form(&alg, &CentralFunctional::new(x)).unwrap());
        assert_eq!(pf.abs(), &n2 * &n2, "|Pf| = |t|^4");
    }
}

#[test]
fn table_constructions() {
    let algs = table_algebras().unwrap();
    // 21 ipms rows with an algebra, all 28 indIpms rows, and h_{1;O}
    assert_eq!(algs.len(), 21 + 28 + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for alg in &algs {
        alg.check_invariants().unwrap();
        for _ in 0..5 {
            let x = CentralFunctional::new(random_rational(&mut rng, alg.dim_z));
            let f = b_form(alg, &x).unwrap();
            let pf = pfaffian(&f);
            assert_eq!(&pf * &pf, f.det(), "{}", alg.name);
            if alg.split.is_some() {
                assert!(alg.z_double_prime_is_bracket_trivial(), "{}", alg.name);
                assert!(
                    pfaffian_split_check(alg, &x, 10, 7).unwrap(),
                    "{}",
                    alg.name
                );
            }
        }
        let g = generic_set_witness(alg, 20, 1).unwrap();
        assert!(!g.identically_zero, "{}", alg.name);
    }
}

#[test]
fn split_check_controls() {
    // n′ = h_{2;C}, z″ = su(2) as a vector space
    let alg = build_algebra("h(2;C) + z(3)").unwrap();
    assert!(pfaffian_split_check(&alg, &t(&[2, 5, -1, 7]), 10, 0).unwrap());
    assert!(pfaffian_split_check(&alg, &t(&[2, 0, 0, 0]), 0, 0).unwrap());
    let control = NilpotentAlgebra::coupled_control().unwrap();
    assert!(!control.z_double_prime_is_bracket_trivial());
    assert!(!pfaffian_split_check(&control, &t(&[1, 1]), 10, 0).unwrap());
    assert!(pfaffian_split_check(&h(1), &t(&[1]), 1, 0).is_err());
}

#[test]
fn generic_set() {
    let r = generic_set_witness(&h(2), 100, 9).unwrap();
    assert_eq!(r.nonzero, 100);
    let r = generic_set_witness(&hq(2), 100, 9).unwrap();
    assert!(r.nonzero >= 1);
    let r = generic_set_witness(&NilpotentAlgebra::abelian(4, 1), 10, 9).unwrap();
    assert!(r.identically_zero);
    assert_eq!(r.fraction(), 0.0);
    assert!(generic_set_witness(&h(1), 0, 9).is_err());
}

#[test]
fn matrix_heisenberg_square_integrability() {
    // z = sp(2); t = diag(a1 i, a2 i) is generic iff a1 and a2 are nonzero
    for n in 1..=2 {
        let alg = NilpotentAlgebra::matrix_heisenberg(HeisenbergField::H, 2, n).unwrap();
        assert_eq!((alg.dim_z, alg.dim_v), (10, 8 * n));
        alg.check_invariants().unwrap();
        let functional = |a1: i64, a2: i64| {
            let mut v = vec![0; 10];
            v[0] = a1;
            v[3] = a2;
            t(&v)
        };
        for (a1, a2, si) in [
            (0, 1, false),
            (1, 0, false),
            (1, 2, true),
            (1, 1, true),
            (1, -1, true),
            (0, 0, false),
        ] {
            assert_eq!(
                is_square_integrable(&alg, &functional(a1, a2)).unwrap(),
                si,
                "n={n} a=({a1},{a2})"
            );
        }
    }
    // u(2) centre on C^{2×n}: t is generic iff it is a nondegenerate hermitian form
    let alg = NilpotentAlgebra::matrix_heisenberg(HeisenbergField::C, 2, 2).unwrap();
    assert_eq!((alg.dim_z, alg.dim_v), (4, 8));
    assert!(is_square_integrable(&alg, &t(&[1, 1, 0, 0])).unwrap());
    assert!(!is_square_integrable(&alg, &t(&[1, 0, 0, 0])).unwrap());
    // Pf = a1 a2 - |c|^2 / 4 for n = 1, c the off-diagonal coordinate
    let one = NilpotentAlgebra::matrix_heisenberg(HeisenbergField::C, 2, 1).unwrap();
    for (v, pf) in [
        ([1, 1, 0, 1], qr(3, 4)),
        ([1, 1, 0, 2], q(0)),
        ([1, 1, 2, 0], q(0)),
        ([1, 2, 0, 3], qr(-1, 4)),
    ] {
        assert_eq!(pfaffian(&b_form(&one, &t(&v)).unwrap()), pf, "{v:?}");
    }
    assert!(!is_square_integrable(&alg, &t(&[1, 1, 0, 2])).unwrap());
    assert!(is_square_integrable(&alg, &t(&[1, 1, 0, 1])).unwrap());
}

fn random_skew(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut m = linalg::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = qr(rng.gen_range(-6..=6), rng.gen_range(1..=3));
            m[j][i] = -x.clone();
            m[i][j] = x;
        }
    }
    m
}

#[test]
fn expansion_and_elimination_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in (0..=12).step_by(2) {
        for _ in 0..3 {
            let m = random_skew(&mut rng, n);
            let a = nilpotent::pfaffian::by_expansion(&m);
            assert_eq!(a, nilpotent::pfaffian::by_elimination(&m), "n={n}");
            assert_eq!(&a * &a, linalg::det(&m));
        }
    }
    // a zero leading block forces a pivot swap
    let mut m = random_skew(&mut rng, 6);
    for j in 0..6 {
        m[0][j] = Q::zero();
        m[j][0] = Q::zero();
    }
    m[0][4] = q(3);
    m[4][0] = q(-3);
    assert_eq!(
        nilpotent::pfaffian::by_expansion(&m),
        nilpotent::pfaffian::by_elimination(&m)
    );
}

#[test]
fn structure_constants_from_toml() {
    let text = r#"
name = "heisenberg(1) by hand"
dim_z = 1
dim_v = 2
brackets = [{ i = 0, j = 1, k = 0, c = "1" }]
"#;
    let alg = NilpotentAlgebra::from_toml(text).unwrap();
    assert_eq!(
        b_form(&alg, &t(&[1])).unwrap(),
        b_form(&h(1), &t(&[1])).unwrap()
    );
    assert!(NilpotentAlgebra::from_toml(
        "name = \"x\"\ndim_z = 1\ndim_v = 2\nbrackets = [{ i = 0, j = 2, k = 0, c = \"1\" }]"
    )
    .is_err());
    assert!(NilpotentAlgebra::from_toml(
        "name = \"x\"\ndim_z = 1\ndim_v = 2\nbrackets = [{ i = 0, j = 1, k = 0, c = \"a\" }]"
    )
    .is_err());
}

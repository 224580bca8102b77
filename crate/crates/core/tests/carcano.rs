//! Polynomial-ring decompositions, multiplicity-free verdicts and the explicit
//! highest-weight model, checked against hand oracles and each other.

use std::collections::BTreeMap;

use dlimit_core::carcano::{
    self, action::Op, highest_weight_stability, highest_weight_vectors, is_multiplicity_free,
    negative_control, polynomial_decompose, ActionKind, GroupSpec, RepAction, Verdict,
};
use dlimit_core::linalg::{self, q, Matrix, Q};
use dlimit_core::repcalc::{decompose, sym_power};
use dlimit_core::weights::{FactorKind, Weight};
use num_bigint::BigInt;
use num_traits::Zero;

fn spec(kinds: &[FactorKind], action: ActionKind, charges: &[(usize, i64)]) -> GroupSpec {
    GroupSpec::new(kinds, &[], RepAction::charged(action, charges)).unwrap()
}

fn dense(op: &Op) -> Matrix {
    let n = op.len();
    let mut m = linalg::zeros(n, n);
    for (a, col) in op.iter().enumerate() {
        for &(b, c) in col {
            m[b][a] += q(c);
        }
    }
    m
}

fn classical_specs() -> Vec<GroupSpec> {
    use ActionKind::*;
    use FactorKind::*;
    let mut v = vec![];
    for k in [
        Unitary(3),
        SpecialUnitary(3),
        Symplectic(1),
        Symplectic(2),
        Symplectic(3),
        Orthogonal(2),
        Orthogonal(3),
        Orthogonal(4),
        Orthogonal(5),
        Orthogonal(6),
        Orthogonal(7),
    ] {
        v.push(spec(std::slice::from_ref(&k), Standard(0), &[]));
        v.push(spec(std::slice::from_ref(&k), Sym2(0), &[]));
        v.push(spec(std::slice::from_ref(&k), Wedge2(0), &[]));
        v.push(spec(&[k], DualOf(Box::new(RepAction::new(Sym2(0)))), &[]));
    }
    v.push(spec(&[Unitary(2), Symplectic(2)], Tensor(0, 1), &[]));
    v.push(spec(&[Circle, Orthogonal(5)], Standard(1), &[(0, 1)]));
    v.push(
        GroupSpec::new(
            &[Unitary(2), Unitary(3)],
            &[(0, 1)],
            RepAction::new(Tensor(0, 1)),
        )
        .unwrap(),
    );
    v.push(spec(
        &[Circle, SpecialUnitary(3)],
        DirectSum(vec![
            RepAction::charged(Standard(1), &[(0, 1)]),
            RepAction::charged(DualOf(Box::new(RepAction::new(Standard(1)))), &[(0, 1)]),
        ]),
        &[],
    ));
    v
}

#[test]
fn explicit_operators_satisfy_the_chevalley_relations() {
    for s in classical_specs() {
        let b = s.basis().unwrap();
        let g = &s.group;
        let n = b.dim();
        // the explicit basis carries the same weights as the character
        let mut from_basis = dlimit_core::repcalc::WeightMultiset::empty(g);
        for w in &b.weights {
            from_basis.add(w.clone(), 1.into());
        }
        assert_eq!(from_basis, s.weights().unwrap(), "{}", s.name());
        let gram: Matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            b.norms[i].clone()
                        } else {
                            Q::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for i in 0..g.rank() {
            let e = dense(&b.raising[i]);
            let f = dense(&b.lowering[i]);
            // raising shifts weights by the simple root
            for (a, col) in b.raising[i].iter().enumerate() {
                for &(t, _) in col {
                    assert_eq!(
                        b.weights[t],
                        b.weights[a].add(&g.simple_roots[i]),
                        "{}",
                        s.name()
                    );
                }
            }
            // lowering is the adjoint of raising for the basis norms
            assert_eq!(
                linalg::mul(&gram, &f),
                linalg::transpose(&linalg::mul(&gram, &e)),
                "{} adjoint {i}",
                s.name()
            );
            for j in 0..g.rank() {
                let fj = dense(&b.lowering[j]);
                let bracket = linalg::sub(&linalg::mul(&e, &fj), &linalg::mul(&fj, &e));
                if i == j {
                    let h: Matrix = (0..n)
                        .map(|x| {
                            (0..n)
                                .map(|y| {
                                    if x == y {
                                        q(g.pairing(&b.weights[x], i))
                                    } else {
                                        Q::zero()
                                    }
                                })
                                .collect()
                        })
                        .collect();
                    assert_eq!(bracket, h, "{} [E{i},F{i}]", s.name());
                } else {
                    assert!(linalg::is_zero(&bracket), "{} [E{i},F{j}]", s.name());
                }
            }
        }
    }
}

#[test]
fn degree_zero_is_trivial() {
    for s in classical_specs().iter().take(6) {
        let d = polynomial_decompose(s, 0).unwrap();
        assert_eq!(
            d[0].terms,
            vec![(Weight::zero(s.group.dim), BigInt::from(1))]
        );
    }
}

#[test]
fn su2_quadratics_are_one_irreducible() {
    let s = spec(
        &[FactorKind::SpecialUnitary(2)],
        ActionKind::Standard(0),
        &[],
    );
    let d = polynomial_decompose(&s, 2).unwrap();
    assert_eq!(d[2].terms, vec![(Weight(vec![2, 0]), BigInt::from(1))]);
    assert_eq!(s.group.dynkin_labels(&d[2].terms[0].0), vec![2]);
}

#[test]
fn harmonic_decomposition_of_quadratics_on_c3() {
    let s = spec(
        &[FactorKind::Circle, FactorKind::Orthogonal(3)],
        ActionKind::Standard(1),
        &[(0, 1)],
    );
    let d = polynomial_decompose(&s, 2).unwrap();
    let expect: BTreeMap<Weight, BigInt> = [
        (Weight(vec![-2, 2]), 1.into()),
        (Weight(vec![-2, 0]), 1.into()),
    ]
    .into();
    assert_eq!(d[2].as_map(), expect);
    assert_eq!(d[2].total_dimension(&s.group).unwrap(), BigInt::from(6));
}

#[test]
fn bounded_degree_verdicts() {
    let sp1 = spec(&[FactorKind::Symplectic(1)], ActionKind::Standard(0), &[]);
    let r = is_multiplicity_free(&sp1, 4).unwrap();
    assert_eq!(r.verdict, Verdict::MultiplicityFree);
    assert!(r.certificate().contains("0..=4"));
    assert_eq!(r.per_degree.len(), 5);

    let s_uu = |l, m| {
        GroupSpec::new(
            &[FactorKind::Unitary(l), FactorKind::Unitary(m)],
            &[(0, 1)],
            RepAction::new(ActionKind::Tensor(0, 1)),
        )
        .unwrap()
    };
    assert!(is_multiplicity_free(&s_uu(2, 3), 3)
        .unwrap()
        .is_multiplicity_free());
    // equal sizes: the determinant of a 2x2 matrix is an invariant quadratic
    let r = is_multiplicity_free(&s_uu(2, 2), 3).unwrap();
    let w = r.witness.unwrap();
    assert!(w.label.is_zero());
    assert_eq!(w.degrees, vec![0, 2]);

    for n in [3, 4] {
        let r = is_multiplicity_free(&negative_control(n).unwrap(), 2).unwrap();
        assert_eq!(r.verdict, Verdict::Violation);
        let w = r.witness.unwrap();
        assert!(w.label.is_zero());
        assert_eq!(w.degrees, vec![0, 2]);
    }
    assert!(is_multiplicity_free(&sp1, 0).is_err());
}

#[test]
fn verdict_matches_label_totals() {
    for s in classical_specs() {
        let r = is_multiplicity_free(&s, 3).unwrap();
        let mut totals: BTreeMap<Weight, BigInt> = BTreeMap::new();
        for d in &r.per_degree {
            for (w, m) in &d.terms {
                *totals.entry(w.clone()).or_default() += m;
            }
        }
        let repeated = totals.values().any(|m| *m > BigInt::from(1));
        assert_eq!(repeated, r.verdict == Verdict::Violation, "{}", s.name());
    }
}

/// Highest weights found as raising-operator kernels agree with peeling of
/// the symmetric-power character.
#[test]
fn operator_kernels_agree_with_character_peeling() {
    for s in classical_specs() {
        let b = s.basis().unwrap();
        let g = &s.group;
        for d in 0..=3 {
            let space = carcano::DegreeSpace::new(&b, d);
            let hw = carcano::poly::highest_weights(g, &b, &space);
            let mut from_kernel: BTreeMap<Weight, BigInt> = BTreeMap::new();
            for (w, k) in hw {
                *from_kernel.entry(g.normalized(w)).or_default() += BigInt::from(k);
            }
            let peeled = decompose(&sym_power(&s.weights().unwrap(), d)).unwrap();
            assert_eq!(from_kernel, peeled.as_map(), "{} d={d}", s.name());
        }
    }
}

#[test]
fn su_highest_weight_vector_is_a_power_of_the_first_variable() {
    for n in 2..=4 {
        let s = spec(
            &[FactorKind::SpecialUnitary(n)],
            ActionKind::Standard(0),
            &[],
        );
        for d in 1..=3 {
            let mut w = vec![0; n];
            w[0] = d as i64;
            let v = highest_weight_vectors(&s, d, &Weight(w)).unwrap();
            assert_eq!(v.len(), 1);
            assert_eq!(v[0].len(), 1);
            assert_eq!(v[0][0].0, vec![0; d]);
        }
    }
}

#[test]
fn stability_examples() {
    let su = |n| {
        spec(
            &[FactorKind::SpecialUnitary(n)],
            ActionKind::Standard(0),
            &[],
        )
    };
    for d in 0..=3 {
        let r = highest_weight_stability(&su(2), &su(3), d, true).unwrap();
        assert!(r.highest_weights_stable(), "d={d}");
        assert_eq!(r.nesting_holds(), Some(true));
    }
    let u = |m| spec(&[FactorKind::Unitary(m)], ActionKind::Sym2(0), &[]);
    let r = highest_weight_stability(&u(2), &u(3), 1, true).unwrap();
    assert!(r.highest_weights_stable() && r.labels_included());
    assert_eq!(r.nesting_holds(), Some(true));
    let r0 = highest_weight_stability(&u(2), &u(3), 0, true).unwrap();
    assert_eq!(r0.labels.len(), 1);
    assert!(r0.highest_weights_stable());

    // the quadratic invariant picks up the new variables
    let so = |n| {
        spec(
            &[FactorKind::Circle, FactorKind::Orthogonal(n)],
            ActionKind::Standard(1),
            &[(0, 1)],
        )
    };
    let r = highest_weight_stability(&so(3), &so(5), 2, true).unwrap();
    assert!(r.labels_included());
    assert!(!r.highest_weights_stable());
    let not_proportional: Vec<Weight> = r
        .labels
        .iter()
        .filter(|l| !l.proportional)
        .map(|l| l.label.clone())
        .collect();
    assert_eq!(not_proportional, vec![Weight(vec![2, 0])]);
    // the harmonic projector loses mass to the new invariant direction as well
    assert!(r.labels.iter().all(|l| l.nested == Some(false)));
}

#[test]
fn embedding_mismatch_is_a_domain_error() {
    let a = spec(&[FactorKind::Symplectic(2)], ActionKind::Standard(0), &[]);
    let b = spec(&[FactorKind::Unitary(4)], ActionKind::Standard(0), &[]);
    assert!(highest_weight_stability(&a, &b, 1, false).is_err());
    let e6 = spec(&[FactorKind::E6], ActionKind::E6Fund(0), &[]);
    assert!(e6.basis().is_err());
    assert_eq!(e6.dim().unwrap(), BigInt::from(27));
}

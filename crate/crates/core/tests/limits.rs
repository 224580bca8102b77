//! Stage chains: composite injections, Pfaffian-ratio scales, alignment and
//! the nesting of isotypic invariants.

use dlimit_core::carcano::{is_multiplicity_free, DegreeSpace};
use dlimit_core::limits::{
    build_heisenberg_chain, build_semidirect_chain, check_limit_aligned, invariant_nesting_check,
    invariant_vector, multiplicity_free_verdict, ComponentKey, Injection, LabelMap, LabelSource,
    Stage, StageChain, StageEntry,
};
use dlimit_core::linalg::{q, qr, Q};
use dlimit_core::nilpotent::{
    b_form, pfaffian, random_rational, CentralFunctional, NilpotentAlgebra,
};
use dlimit_core::tables::{self, HeisenbergField, Rank, TableId, TableRow};
use dlimit_core::weights::Weight;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn jaw(id: &str) -> TableRow {
    tables::table(TableId::Jaw)
        .unwrap()
        .row(id)
        .unwrap()
        .clone()
}

fn rank(k: &str, v: i64) -> Rank {
    [(k.to_string(), v)].into()
}

fn assert_composites_match(chain: &StageChain) {
    for i in 0..chain.stages.len() {
        for j in i + 1..chain.stages.len() {
            assert_eq!(
                chain.compose(i, j).unwrap(),
                chain.direct(i, j).unwrap(),
                "{} {i}->{j}",
                chain.name
            );
        }
    }
}

#[test]
fn heisenberg_chains() {
    let ts = [q(1), q(2), qr(1, 3), q(-5)];
    let chain = build_heisenberg_chain(4, &ts).unwrap();
    assert!(check_limit_aligned(&chain).aligned);
    assert_composites_match(&chain);
    let mut reversed = ts.to_vec();
    reversed.reverse();
    assert_eq!(
        check_limit_aligned(&build_heisenberg_chain(4, &reversed).unwrap()),
        check_limit_aligned(&chain)
    );
    let c = build_heisenberg_chain(2, &[q(1), q(2)]).unwrap();
    assert!(check_limit_aligned(&c).aligned);
}

#[test]
fn heisenberg_scales_are_pfaffian_ratios() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let ts: Vec<Q> = (0..10)
        .map(|_| loop {
            let t = random_rational(&mut rng, 1).remove(0);
            if !t.is_zero() {
                break t;
            }
        })
        .collect();
    let ts: Vec<Q> = ts
        .into_iter()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let chain = build_heisenberg_chain(4, &ts).unwrap();
    let pf = |n: usize, t: &Q| {
        let h = NilpotentAlgebra::heisenberg(HeisenbergField::C, n).unwrap();
        pfaffian(&b_form(&h, &CentralFunctional::new(vec![t.clone()])).unwrap())
    };
    for i in 0..3 {
        for j in i + 1..4 {
            for m in chain.compose(i, j).unwrap() {
                let t = m.source.t.clone().unwrap();
                assert_eq!(m.scale_sq, (pf(i + 1, &t) / pf(j + 1, &t)).abs());
            }
        }
    }
}

fn hand_chain(split: bool, shift_t: bool) -> StageChain {
    let entry = |t: i64| StageEntry {
        key: ComponentKey::t(q(t)),
        density: q(t.abs()),
    };
    let stages = vec![
        Stage {
            name: "a".into(),
            entries: vec![entry(1), entry(2)],
        },
        Stage {
            name: "b".into(),
            entries: vec![entry(1), entry(2), entry(3)],
        },
    ];
    let map = |s: i64, t: i64| LabelMap {
        source: ComponentKey::t(q(s)),
        target: ComponentKey::t(q(t)),
        scale_sq: q(1),
    };
    let mut maps = vec![map(1, 1), map(2, if shift_t { 3 } else { 2 })];
    if split {
        maps.push(map(1, 3));
    }
    StageChain::from_parts("hand-built", stages, vec![Injection { from: 0, maps }]).unwrap()
}

#[test]
fn misaligned_controls() {
    assert!(check_limit_aligned(&hand_chain(false, false)).aligned);
    let r = check_limit_aligned(&hand_chain(true, false));
    assert!(!r.aligned);
    assert!(r.witness.unwrap().contains("(t=1)"));
    let r = check_limit_aligned(&hand_chain(false, true));
    assert!(!r.aligned);
    assert!(r.witness.unwrap().contains("changes t"));
    assert!(hand_chain(false, false).direct(0, 1).is_err());
}

#[test]
fn verdict_gate() {
    let good = hand_chain(false, false);
    let bad = hand_chain(true, false);
    assert!(multiplicity_free_verdict(&good, &[true, true]).unwrap());
    assert!(!multiplicity_free_verdict(&good, &[true, false]).unwrap());
    assert!(!multiplicity_free_verdict(&bad, &[true, true]).unwrap());
    assert!(multiplicity_free_verdict(&good, &[true]).is_err());
}

#[test]
fn su_row_semidirect_chain() {
    let row = jaw("1");
    let ranks = row.ranks(3).unwrap();
    let chain = build_semidirect_chain(
        &row,
        &ranks,
        &[q(1), qr(1, 2), q(3)],
        &LabelSource::Polynomial { dmax: 3 },
    )
    .unwrap();
    assert!(check_limit_aligned(&chain).aligned);
    assert_composites_match(&chain);
    let find = |t: Q, w: &[i64]| -> LabelMap {
        chain.injections[0]
            .maps
            .iter()
            .find(|m| m.source == ComponentKey::with_lambda(t.clone(), Weight(w.to_vec())))
            .unwrap()
            .clone()
    };
    // dim of ξ1 is n, so 2 → 3 gives (2/3)^{1/2}
    assert_eq!(find(q(1), &[1, 0]).scale_sq, qr(2, 3));
    assert_eq!(find(q(1), &[0, 0]).scale_sq, q(1));
    // λ = 0: only the |t| factor, v grows from C^2 to C^3
    assert_eq!(find(q(3), &[0, 0]).scale_sq, qr(1, 3));
    assert_eq!(find(q(3), &[2, 0]).scale_sq, qr(1, 3) * qr(3, 6));
    let per_stage: Vec<bool> = ranks
        .iter()
        .map(|r| {
            is_multiplicity_free(&row.spec(r).unwrap(), 3)
                .unwrap()
                .is_multiplicity_free()
        })
        .collect();
    assert!(multiplicity_free_verdict(&chain, &per_stage).unwrap());
}

#[test]
fn semidirect_chains_over_the_classification() {
    for row in tables::table(TableId::Jaw).unwrap().rows {
        let ranks = row.ranks(3).unwrap();
        let built = build_semidirect_chain(
            &row,
            &ranks,
            &[q(1), q(2)],
            &LabelSource::Polynomial { dmax: 2 },
        );
        if row.id == "5a" {
            // SO(2) is a torus: its labels do not embed as dominant weights
            let e = built.unwrap_err().to_string();
            assert!(e.contains("parabolic correspondence"), "{e}");
            continue;
        }
        let chain = built.unwrap();
        assert!(check_limit_aligned(&chain).aligned, "{}", row.id);
        assert_composites_match(&chain);
    }
}

#[test]
fn explicit_labels() {
    let row = jaw("1");
    let ranks = row.ranks(2).unwrap();
    let chain = build_semidirect_chain(
        &row,
        &ranks,
        &[q(1)],
        &LabelSource::Explicit(vec![Weight(vec![3, 0])]),
    )
    .unwrap();
    assert_eq!(
        chain.stages[1].entries[0].key.lambda,
        Some(Weight(vec![3, 0, 0]))
    );
    // S^3 dims 4 → 10
    assert_eq!(chain.stages[1].entries[0].density, q(10));
    assert_eq!(chain.injections[0].maps[0].scale_sq, qr(4, 10));
}

#[test]
fn nesting_of_invariants() {
    // SU(n) standard: the λ-isotypic space of S^d is the whole irreducible
    let row = jaw("1");
    for d in 0..=3 {
        let w = Weight(vec![d, 0]);
        let r =
            invariant_nesting_check(&row, &rank("n", 2), &rank("n", 3), &w, d as usize).unwrap();
        assert!(!r.vacuous && r.holds, "{r:?}");
        assert_eq!(r.q_small, Some(q(d + 1)));
        assert_eq!(
            r.q_large,
            Some(Q::from_integer(BigInt::from((d + 1) * (d + 2) / 2)))
        );
    }
    let r = invariant_nesting_check(&row, &rank("n", 2), &rank("n", 3), &Weight(vec![1, 1]), 1)
        .unwrap();
    assert!(r.vacuous && r.holds);

    // U(2) on S^2 C^2, degree 2, into U(3)
    let row = jaw("6");
    let spec = row.spec(&rank("m", 2)).unwrap();
    let basis = spec.basis().unwrap();
    let space = DegreeSpace::new(&basis, 2);
    let labels = dlimit_core::carcano::poly::highest_weights(&spec.group, &basis, &space);
    assert_eq!(
        labels.keys().cloned().collect::<Vec<_>>(),
        vec![Weight(vec![2, 2]), Weight(vec![4, 0])]
    );
    for w in labels.keys() {
        let r = invariant_nesting_check(&row, &rank("m", 2), &rank("m", 3), w, 2).unwrap();
        assert!(r.holds, "{r:?}");
        let v = invariant_vector(&spec, 2, w).unwrap().unwrap();
        assert!(v.is_self_adjoint());
        assert_eq!(v.rank(), Q::from_integer(spec.group.weyl_dim(w).unwrap()));
    }

    // the quadratic invariant of SO(3) picks up the new variables
    let r = invariant_nesting_check(
        &jaw("5b"),
        &rank("m", 1),
        &rank("m", 2),
        &Weight(vec![2, 0]),
        2,
    )
    .unwrap();
    assert!(!r.vacuous && !r.holds);
}

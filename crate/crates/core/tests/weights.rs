//! Root data and Weyl-group folding checked against brute-force oracles.

use std::collections::BTreeSet;

use dlimit_core::linalg::{self, q, Q};
use dlimit_core::weights::{
    build_root_system, standard_cartan, standard_positive_root_count, FactorKind, Family,
    Reductive, RootSystem, Weight,
};
use num_traits::{One, Zero};

fn systems_up_to_rank4() -> Vec<(Family, usize)> {
    let mut v = Vec::new();
    for r in 1..=4 {
        v.push((Family::A, r));
    }
    for r in 2..=4 {
        v.push((Family::B, r));
        v.push((Family::C, r));
    }
    v.push((Family::D, 3));
    v.push((Family::D, 4));
    v.push((Family::G2, 2));
    v
}

/// Full Weyl group as rational matrices acting on ambient coordinates (identity Gram).
fn weyl_group(rs: &RootSystem) -> Vec<(Vec<Vec<Q>>, i8)> {
    let n = rs.ambient_dim;
    let refl: Vec<Vec<Vec<Q>>> = rs
        .simple_roots
        .iter()
        .map(|a| {
            let na: i64 = a.0.iter().map(|x| x * x).sum();
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            q(i64::from(i == j)) - Q::new((2 * a.0[i] * a.0[j]).into(), na.into())
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = vec![];
    let mut queue = vec![(linalg::identity(n), 1i8)];
    while let Some((m, s)) = queue.pop() {
        if !seen.insert(m.clone()) {
            continue;
        }
        for r in &refl {
            let p = linalg::mul(r, &m);
            if !seen.contains(&p) {
                queue.push((p, -s));
            }
        }
        out.push((m, s));
    }
    out
}

fn apply(m: &[Vec<Q>], w: &Weight) -> Weight {
    Weight(
        m.iter()
            .map(|r| {
                let x: Q = r.iter().zip(&w.0).map(|(a, b)| a * q(*b)).sum();
                assert!(x.is_integer());
                i64::try_from(x.to_integer()).unwrap()
            })
            .collect(),
    )
}

#[test]
fn cartan_matrices_and_root_counts_match_standard_data() {
    for (f, r) in systems_up_to_rank4() {
        let rs = build_root_system(f, r).unwrap();
        assert_eq!(rs.cartan_matrix(), standard_cartan(f, r), "{f:?}{r}");
        assert_eq!(
            rs.positive_roots.len(),
            standard_positive_root_count(f, r),
            "{f:?}{r}"
        );
    }
}

#[test]
fn fundamental_weights_pair_to_identity() {
    for (f, r) in systems_up_to_rank4() {
        let rs = build_root_system(f, r).unwrap();
        for (i, w) in rs.fundamental_weights.iter().enumerate() {
            for j in 0..r {
                let p = rs.coroot_pairing_q(w, j);
                let expect = if i == j { Q::one() } else { Q::zero() };
                assert_eq!(p, expect, "{f:?}{r} ω{i} α{j}");
            }
        }
    }
}

#[test]
fn small_examples() {
    let a1 = build_root_system(Family::A, 1).unwrap();
    assert_eq!(a1.positive_roots.len(), 1);
    assert_eq!(a1.fundamental_weights.len(), 1);
    assert_eq!(
        a1.fundamental_weights[0],
        vec![Q::new(1.into(), 2.into()), Q::new((-1).into(), 2.into())]
    );

    let c2 = build_root_system(Family::C, 2).unwrap();
    // brute-force ±ε_i±ε_j and ±2ε_i, positive ones have first nonzero coordinate > 0
    let mut all = BTreeSet::new();
    for i in 0..2 {
        let mut v = vec![0; 2];
        v[i] = 2;
        all.insert(v);
        for j in i + 1..2 {
            for s in [1, -1] {
                let mut v = vec![0; 2];
                v[i] = 1;
                v[j] = s;
                all.insert(v);
            }
        }
    }
    let got: BTreeSet<Vec<i64>> = c2.positive_roots.iter().map(|w| w.0.clone()).collect();
    assert_eq!(got, all);

    let g2 = build_root_system(Family::G2, 2).unwrap();
    let w = weyl_group(&g2);
    assert_eq!(w.len(), 12);
    let mut roots = BTreeSet::new();
    for (m, _) in &w {
        for a in &g2.simple_roots {
            roots.insert(apply(m, a));
        }
    }
    assert_eq!(roots.len(), 12);
    assert_eq!(g2.positive_roots.len(), 6);
}

#[test]
fn unsupported_ranks_are_rejected() {
    assert!(build_root_system(Family::A, 0).is_err());
    assert!(build_root_system(Family::B, 1).is_err());
    assert!(build_root_system(Family::C, 1).is_err());
    assert!(build_root_system(Family::D, 2).is_err());
    assert!(build_root_system(Family::G2, 3).is_err());
}

#[test]
fn weyl_dimension_examples() {
    for m in 2..=6usize {
        let g = Reductive::new(&[FactorKind::Unitary(m)], &[]).unwrap();
        let mut s2 = vec![0; m];
        s2[0] = 2;
        assert_eq!(g.weyl_dim(&Weight(s2)).unwrap(), (m * (m + 1) / 2).into());
        let mut l2 = vec![0; m];
        l2[0] = 1;
        l2[1] = 1;
        assert_eq!(g.weyl_dim(&Weight(l2)).unwrap(), (m * (m - 1) / 2).into());
        assert_eq!(g.weyl_dim(&Weight::zero(m)).unwrap(), 1.into());
    }
    let g = Reductive::new(&[FactorKind::Unitary(3)], &[]).unwrap();
    assert!(g.weyl_dim(&Weight(vec![0, 1, 0])).is_err());
}

fn brute_representative(rs: &RootSystem, g: &Reductive, w: &Weight) -> (Weight, Option<i8>) {
    let x = w.scale(2).add(&g.two_rho);
    let mut hits = vec![];
    for (m, s) in weyl_group(rs) {
        let y = apply(&m, &x);
        if g.is_dominant(&y) {
            hits.push((y, s));
        }
    }
    let y = hits[0].0.clone();
    assert!(hits.iter().all(|(z, _)| *z == y));
    let rep = Weight(y.sub(&g.two_rho).0.iter().map(|c| c / 2).collect());
    let sign = if hits.len() == 1 {
        Some(hits[0].1)
    } else {
        None
    };
    (rep, sign)
}

#[test]
fn folding_matches_brute_force_weyl_group() {
    let a1 = build_root_system(Family::A, 1).unwrap();
    let g = Reductive::from_root_system(&a1);
    // w + ρ on the wall
    let (_, _, stab) = g.dominant_representative(&Weight(vec![0, 1]));
    assert!(stab);
    let (r, s, stab) = g.dominant_representative(&Weight(vec![-2, 0]));
    let (br, bs) = brute_representative(&a1, &g, &Weight(vec![-2, 0]));
    assert_eq!((r, Some(s), stab), (br, bs, false));

    for (f, rank) in [
        (Family::C, 2),
        (Family::B, 3),
        (Family::G2, 2),
        (Family::A, 3),
    ] {
        let rs = build_root_system(f, rank).unwrap();
        let g = Reductive::from_root_system(&rs);
        let n = rs.ambient_dim;
        let mut seed = 7u64;
        for _ in 0..60 {
            let mut v = vec![0i64; n];
            for x in v.iter_mut() {
                seed = seed
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                *x = ((seed >> 33) % 9) as i64 - 4;
            }
            if f == Family::G2 {
                let s: i64 = v.iter().sum();
                v[2] -= s;
            }
            let w = Weight(v);
            let (r, s, stab) = g.dominant_representative(&w);
            let (br, bs) = brute_representative(&rs, &g, &w);
            assert_eq!(r, br, "{f:?}{rank} {w}");
            assert_eq!(stab, bs.is_none(), "{f:?}{rank} {w}");
            if let Some(bs) = bs {
                assert_eq!(s, bs);
            }
        }
    }
}

#[test]
fn folding_dominant_weight_is_identity() {
    let rs = build_root_system(Family::C, 3).unwrap();
    let g = Reductive::from_root_system(&rs);
    for w in [vec![0, 0, 0], vec![2, 1, 0], vec![3, 3, 1]] {
        let w = Weight(w);
        assert_eq!(g.dominant_representative(&w), (w.clone(), 1, false));
        assert_eq!(g.dominant_fold(&w), w);
    }
}

#[test]
fn dynkin_label_round_trip() {
    let g = Reductive::new(&[FactorKind::SpecialUnitary(3)], &[]).unwrap();
    let w = g.from_dynkin_labels(&[1, 1]).unwrap();
    assert_eq!(w, Weight(vec![2, 1, 0]));
    assert_eq!(g.dynkin_labels(&w), vec![1, 1]);
    let spin = Reductive::new(&[FactorKind::Spin(7)], &[]).unwrap();
    let s = spin.from_dynkin_labels(&[0, 0, 1]).unwrap();
    assert_eq!(s, Weight(vec![1, 1, 1]));
    assert_eq!(spin.weyl_dim(&s).unwrap(), 8.into());
}

//! Randomized invariants spanning several modules.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use proptest::prelude::*;

use crate::arith::{binomial, p_adic_valuation};
use crate::cayley::{quotient_connection_set, CayleyGraph, ConnectionSet};
use crate::criteria::{coset_condition, dual_condition, tau};
use crate::dense::{Adjacency, DenseWalk};
use crate::scheme::{kummer_carries, krawtchouk, krawtchouk_gf, SchemeGraphSpec};
use crate::stars::star_transition;
use crate::times::{build_fg, build_fg_counting, pair_count};
use crate::walk::{mullin_entry, scheme_transition_class, transition_row, WalkTime};
use crate::zq::{
    all_vectors, macwilliams_transform, minimum_distance, weight_enumerator, Submodule, ZqVector,
};

fn vector(q: u32, d: usize) -> impl Strategy<Value = ZqVector> {
    prop::collection::vec(0..q, d).prop_map(move |c| ZqVector::from_residues(q, c).unwrap())
}

/// `(q, d, generators)` with `q ∈ {2, 3, 4}`, `1 ≤ d ≤ d_max`.
fn module(d_max: usize, gens: usize) -> impl Strategy<Value = Submodule> {
    (prop_oneof![Just(2u32), Just(3), Just(4)], 1..=d_max).prop_flat_map(move |(q, d)| {
        prop::collection::vec(vector(q, d), 1..=gens).prop_map(move |g| Submodule::new(q, d, g).unwrap())
    })
}

/// Random inverse-closed, identity-free, nonempty connection set on `Z_q^d` with `q^d ≤ 81`.
fn connection_set() -> impl Strategy<Value = ConnectionSet> {
    prop_oneof![(Just(2u32), 1..=6usize), (Just(3u32), 1..=4usize), (Just(4u32), 1..=3usize), (Just(5u32), 1..=2usize)]
        .prop_flat_map(|(q, d)| {
            prop::collection::vec(vector(q, d), 1..6).prop_filter_map("all zero", move |vs| {
                let els: Vec<ZqVector> =
                    vs.iter().filter(|v| !v.is_zero()).flat_map(|v| [v.clone(), v.neg()]).collect();
                (!els.is_empty()).then(|| ConnectionSet::new(q, d, els).unwrap())
            })
        })
}

fn rational_time() -> impl Strategy<Value = WalkTime> {
    (1i64..40, 1u64..30).prop_map(|(n, d)| WalkTime::rational(n, d).unwrap())
}

fn max_entry_gap(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coordinates_are_reduced(q in 2u32..8, raw in prop::collection::vec(-50i64..50, 1..8)) {
        let v = ZqVector::new(q, &raw).unwrap();
        prop_assert!(v.coords().iter().all(|&c| c < q));
        prop_assert_eq!(v.dim(), raw.len());
    }

    #[test]
    fn ternary_weight_is_self_inner_product(v in vector(3, 10)) {
        prop_assert_eq!(v.weight() as u32 % 3, v.inner(&v).unwrap());
    }

    #[test]
    fn submodules_are_closed(gamma in module(5, 3)) {
        let els = gamma.elements().unwrap();
        let q = gamma.q();
        prop_assert_eq!(q.pow(gamma.dim() as u32) as usize % els.len(), 0);
        for x in els.iter().take(12) {
            for y in els.iter().take(12) {
                prop_assert!(gamma.contains(&x.add(y).unwrap()).unwrap());
            }
            for l in 0..q {
                prop_assert!(gamma.contains(&x.scale(l)).unwrap());
            }
        }
    }

    #[test]
    fn dual_sizes_and_macwilliams(gamma in module(6, 3)) {
        let (q, d) = (gamma.q(), gamma.dim());
        let size = gamma.size().unwrap() as u64;
        let dual = gamma.dual().unwrap();
        let total = (q as u64).pow(d as u32);
        prop_assert_eq!(size * dual.size().unwrap() as u64, total);
        let w = weight_enumerator(&gamma).unwrap();
        let wd = macwilliams_transform(&w, size, q, d).unwrap();
        prop_assert_eq!(&wd, &weight_enumerator(&dual).unwrap());
        prop_assert_eq!(macwilliams_transform(&wd, total / size, q, d).unwrap(), w);
    }

    #[test]
    fn parity_check_annihilates_every_element(gamma in module(6, 3)) {
        if let Ok(pc) = gamma.parity_check_matrix() {
            for x in gamma.elements().unwrap() {
                prop_assert!(pc.syndrome(x).iter().all(|&s| s == 0));
            }
        }
    }

    #[test]
    fn spectrum_moments(c in connection_set()) {
        let x = CayleyGraph::new(c.clone()).unwrap();
        let theta = x.eigenvalues().unwrap().real_values();
        let n = theta.len() as f64;
        prop_assert!((theta[0] - c.len() as f64).abs() < 1e-9);
        prop_assert!(theta.iter().sum::<f64>().abs() < 1e-6);
        let squares: f64 = theta.iter().map(|t| t * t).sum();
        prop_assert!((squares - n * c.len() as f64).abs() < 1e-6);
    }

    #[test]
    fn character_spectrum_matches_dense(c in connection_set()) {
        let x = CayleyGraph::new(c.clone()).unwrap();
        let mut theta = x.eigenvalues().unwrap().real_values();
        theta.sort_by(f64::total_cmp);
        let dense = DenseWalk::new(&Adjacency::cayley(&c).unwrap()).sorted_eigenvalues();
        for (a, b) in theta.iter().zip(&dense) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn exact_rows_are_unit(c in connection_set(), t in rational_time()) {
        let row = transition_row(&CayleyGraph::new(c).unwrap(), &t).unwrap();
        match row.exact_unit_norm() {
            Some(unit) => prop_assert!(unit),
            None => prop_assert!((row.norm_sqr() - 1.0).abs() < 1e-9),
        }
    }

    #[test]
    fn float_row_matches_dense(c in connection_set(), t in 0.0f64..20.0) {
        let row = transition_row(&CayleyGraph::new(c.clone()).unwrap(), &WalkTime::real(t)).unwrap();
        prop_assert!((row.norm_sqr() - 1.0).abs() < 1e-9);
        let dense = DenseWalk::new(&Adjacency::cayley(&c).unwrap()).row(0, t);
        for (g, z) in dense.iter().enumerate() {
            prop_assert!((row.amplitude(g) - z).norm() < 1e-9);
        }
    }

    #[test]
    fn dense_group_law(c in connection_set(), t1 in 0.0f64..5.0, t2 in 0.0f64..5.0) {
        prop_assume!(c.q().pow(c.dim() as u32) <= 64);
        let walk = DenseWalk::new(&Adjacency::cayley(&c).unwrap());
        let lhs = walk.transition(t1 + t2);
        let rhs = walk.transition(t1) * walk.transition(t2);
        prop_assert!(max_entry_gap(&lhs, &rhs) < 1e-8);
    }

    #[test]
    fn scheme_class_matches_character_row(
        d in 1usize..=5,
        q in prop_oneof![Just(2u32), Just(3)],
        mask in 1u32..32,
        t in rational_time(),
    ) {
        let classes: Vec<usize> = (1..=d).filter(|r| mask & (1 << (r - 1)) != 0).collect();
        prop_assume!(!classes.is_empty());
        let spec = SchemeGraphSpec::new(d, q, &classes).unwrap();
        let class_row = scheme_transition_class(d, q, &spec.eigenvalues().unwrap(), &t).unwrap();
        let row = transition_row(&CayleyGraph::new(spec.connection_set().unwrap()).unwrap(), &t).unwrap();
        for v in all_vectors(q, d) {
            prop_assert!((class_row.amplitude(v.weight()) - row.amplitude(v.index())).norm() < 1e-9);
        }
    }

    #[test]
    fn mullin_matches_quotient_row(gamma in module(6, 2), t in rational_time()) {
        prop_assume!(gamma.size().unwrap() > 1 && gamma.systematic_form().is_ok());
        prop_assume!(minimum_distance(&gamma).unwrap() >= 3);
        let pc = gamma.parity_check_matrix().unwrap();
        prop_assume!(!pc.rows.is_empty());
        let x = CayleyGraph::new(quotient_connection_set(&gamma).unwrap()).unwrap();
        let row = transition_row(&x, &t).unwrap();
        let r = pc.rows.len();
        for v in all_vectors(gamma.q(), gamma.dim()).take(40) {
            let vertex = ZqVector::from_residues(gamma.q(), pc.syndrome(&v)).unwrap();
            prop_assert_eq!(vertex.dim(), r);
            let m = mullin_entry(&gamma, &v, &t).unwrap().to_complex();
            prop_assert!((m - row.amplitude(vertex.index())).norm() < 1e-9);
        }
    }

    #[test]
    fn coset_identity_implies_dual_condition(gamma in module(7, 2)) {
        prop_assume!(gamma.size().unwrap() > 1 && gamma.systematic_form().is_ok());
        prop_assume!(minimum_distance(&gamma).unwrap() >= 3);
        let q = gamma.q();
        if coset_condition(&gamma, q).unwrap() {
            prop_assert!(dual_condition(&gamma, &tau(q).unwrap()).unwrap());
        }
    }

    #[test]
    fn krawtchouk_paths_agree(d in 0usize..=40, q in 2u32..=4, r in 0usize..=40, s in 0usize..=40) {
        prop_assume!(r <= d && s <= d);
        prop_assert_eq!(krawtchouk(d, q, r, s).unwrap(), krawtchouk_gf(d, q, r, s).unwrap());
        prop_assert_eq!(krawtchouk(d, q, 0, s).unwrap(), BigInt::from(1));
        prop_assert_eq!(krawtchouk(d, q, r, 0).unwrap(), binomial(d, r) * BigInt::from(q - 1).pow(r as u32));
    }

    #[test]
    fn kummer_matches_valuation(n in 0u64..=2000, m in 0u64..=2000, p in prop_oneof![Just(2u64), Just(3)]) {
        prop_assume!(m <= n);
        let v = p_adic_valuation(&binomial(n as usize, m as usize), p).unwrap();
        prop_assert_eq!(kummer_carries(n, m, p).unwrap(), v);
    }

    #[test]
    fn rational_times_are_reduced(num in -500i64..500, den in 1u64..500) {
        if let Some((n, d)) = WalkTime::rational(num, den).unwrap().as_rational() {
            prop_assert!(d >= 1);
            prop_assert_eq!(n.unsigned_abs().gcd(&d).max(1), 1);
        }
    }

    #[test]
    fn identity_class_is_dropped(d in 1usize..10, extra in 1usize..10) {
        prop_assume!(extra <= d);
        let spec = SchemeGraphSpec::new(d, 3, &[0, extra]).unwrap();
        prop_assert!(!spec.classes().contains(&0));
        prop_assert!(spec.dropped_identity());
    }

    #[test]
    fn fg_is_palindromic_and_counts_pairs(
        (q, d) in prop_oneof![(Just(2u32), 1..=6usize), (Just(3u32), 1..=5usize), (Just(4u32), 1..=3usize)],
        seed in any::<u64>(),
    ) {
        let x = CayleyGraph::hamming(d, q).unwrap();
        let g = ZqVector::from_index(q, d, (seed % (q as u64).pow(d as u32)) as usize);
        prop_assert!(build_fg(&x, &g).unwrap().is_palindromic());
        let counting = build_fg_counting(&x, &g).unwrap();
        let pairs = pair_count(&counting, q, d);
        let expected = if g.is_zero() { BigInt::from(q).pow(2 * d as u32) } else { BigInt::from(q).pow(2 * d as u32 - 1) };
        if q != 4 || g.coords().iter().any(|&c| c % 2 == 1) {
            prop_assert_eq!(pairs, expected);
        }
    }

    #[test]
    fn star_closed_form_matches_dense(n in 1usize..=12, t in 0.0f64..15.0) {
        let st = star_transition(n, t).unwrap();
        let dense = Adjacency::star(n).unwrap().spectrum().transition(t);
        prop_assert!(max_entry_gap(&st.matrix(), &dense) < 1e-10);
        let unit = st.corner.norm_sqr() + n as f64 * st.edge_amp.norm_sqr();
        prop_assert!((unit - 1.0).abs() < 1e-12);
    }
}

mod common;

use std::collections::BTreeMap;

use common::hook_schur;
use proptest::prelude::*;
use proptest::sample::select;
use superllt::cauchy::{window_partition_function, CauchyWindow, WindowOrder};
use superllt::fock::{verify_commutation, CommutationPair};
use superllt::lattice::{verify_branching, LatticeSystem};
use superllt::poly::{rat, VarId};
use superllt::shapes::{add_strips, n_core, n_core_with, remove_strips, Partition, SkewShape, StripMode};
use superllt::suites::{all_routes, conjugation_residual, instance_grid, orders_with, Instance};
use superllt::tableaux::{super_llt, AlphabetOrder};
use superllt::{MPoly, Monomial};

fn var() -> impl Strategy<Value = VarId> {
    select(vec![VarId::Q, VarId::x(1), VarId::x(2), VarId::y(1), VarId::w(1)])
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((var(), 0i32..3), 0..3).prop_map(|pairs| {
        let pairs: Vec<_> = pairs.into_iter().map(|(v, e)| if v.is_q() { (v, e - 1) } else { (v, e) }).collect();
        let mut merged: BTreeMap<VarId, i32> = BTreeMap::new();
        for (v, e) in pairs {
            *merged.entry(v).or_default() += e;
        }
        Monomial::from_pairs(merged).unwrap()
    })
}

fn mpoly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((monomial(), -3i64..=3), 0..5)
        .prop_map(|terms| MPoly::from_terms(terms.into_iter().map(|(m, c)| (m, rat(c)))))
}

fn partition(max: u32) -> impl Strategy<Value = Partition> {
    select(Partition::all_up_to(max))
}

fn mode() -> impl Strategy<Value = StripMode> {
    select(vec![StripMode::Horizontal, StripMode::Vertical])
}

fn small_instance() -> impl Strategy<Value = Instance> {
    select(instance_grid(&[1, 2, 3], 7, 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in mpoly(), b in mpoly(), c in mpoly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MPoly::one(), a.clone());
        prop_assert!((&a * &MPoly::zero()).is_zero());
    }

    #[test]
    fn truncated_product_agrees_with_truncating_the_product(a in mpoly(), b in mpoly(), bound in 0u64..6) {
        prop_assert_eq!(a.mul_truncated(&b, bound), (&a * &b).truncate(bound));
        prop_assert_eq!((&a.truncate(bound) * &b.truncate(bound)).truncate(bound), (&a * &b).truncate(bound));
    }

    #[test]
    fn json_round_trip(a in mpoly()) {
        prop_assert_eq!(MPoly::from_json(&a.to_json()).unwrap(), a.clone());
        prop_assert_eq!(a.invert_q().invert_q(), a);
    }

    #[test]
    fn conjugation_is_an_involution(p in partition(12)) {
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().size(), p.size());
    }

    #[test]
    fn particle_encodings_round_trip(p in partition(12), extra in 0usize..3) {
        let r = p.len() + extra;
        prop_assert_eq!(Partition::from_beta(&p.to_beta(r).unwrap()).unwrap(), p.clone());
        prop_assert_eq!(Partition::from_mask(p.mask(r).unwrap()), p);
    }

    /// Adding and removing strips are adjoint: ⟨D_k λ, μ⟩ = ⟨U_k μ, λ⟩.
    #[test]
    fn strip_addition_and_removal_are_adjoint(mu in partition(6), n in 1u32..4, k in 0u32..3, mode in mode()) {
        for added in add_strips(&mu, n, k, mode, None).unwrap() {
            let back = remove_strips(&added.shape, n, k, mode).unwrap();
            prop_assert!(back.iter().any(|r| r.shape == mu && r.spin == added.spin));
        }
        for removed in remove_strips(&mu, n, k, mode).unwrap() {
            let up = add_strips(&removed.shape, n, k, mode, None).unwrap();
            prop_assert!(up.iter().any(|r| r.shape == mu && r.spin == removed.spin));
        }
    }

    #[test]
    fn core_is_independent_of_removal_order(p in partition(14), n in 2u32..5, seed in any::<u64>()) {
        let mut state = seed;
        let core = n_core_with(&p, n, |options| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize % options
        });
        prop_assert_eq!(core, n_core(&p, n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn routes_agree(inst in small_instance()) {
        let routes = all_routes(&inst).unwrap();
        let reference = &routes["tableaux"];
        for (name, p) in &routes {
            prop_assert_eq!(p, reference, "route {} on {}", name, inst.label());
        }
    }

    #[test]
    fn symmetric_and_order_free(inst in small_instance(), swap in any::<prop::sample::Index>()) {
        let g = super_llt(&inst.shape, inst.n, &inst.order).unwrap();
        // a random order with the same letters
        let orders: Vec<AlphabetOrder> = orders_with(inst.order.len())
            .into_iter()
            .filter(|o| {
                let count = |o: &AlphabetOrder| o.letters.iter().filter(|l| l.var.family == superllt::poly::Family::X).count();
                count(o) == count(&inst.order)
            })
            .collect();
        let other = swap.get(&orders);
        prop_assert_eq!(super_llt(&inst.shape, inst.n, other).unwrap(), g.clone());
        let xs: Vec<VarId> = g.variables().into_iter().filter(|v| v.family == superllt::poly::Family::X).collect();
        if xs.len() >= 2 {
            let map = BTreeMap::from([(xs[0], xs[1]), (xs[1], xs[0])]);
            prop_assert_eq!(g.rename(&map), g);
        }
    }

    #[test]
    fn conjugation_relation(inst in small_instance()) {
        prop_assert!(conjugation_residual(&inst).unwrap().is_zero());
    }

    #[test]
    fn branching_at_any_cut(inst in small_instance(), cut in any::<prop::sample::Index>()) {
        prop_assume!(inst.order.len() >= 2);
        let c = 1 + cut.index(inst.order.len() - 1);
        let r = verify_branching(&inst.shape, inst.n, &inst.order, c).unwrap();
        prop_assert!(r.passed, "{} cut {}: {}", inst.label(), c, r.residual);
    }

    /// More particles than rows of the outer shape do not change anything.
    #[test]
    fn extra_particles_are_inert(inst in small_instance(), extra in 1usize..3) {
        let r = inst.shape.outer.len() + extra;
        let base = LatticeSystem::original(&inst.shape, inst.n, &inst.order).unwrap().partition_function();
        let more = LatticeSystem::original_with_particles(&inst.shape, inst.n, &inst.order, r).unwrap();
        prop_assert_eq!(more.partition_function(), base.clone());
        let alt = LatticeSystem::alternate_with_particles(&inst.shape, inst.n, &inst.order, r).unwrap();
        prop_assert_eq!(alt.partition_function(), base);
    }

    #[test]
    fn hook_schur_at_ribbon_length_one(outer in partition(5), k in 1usize..4, pick in any::<prop::sample::Index>()) {
        let s = SkewShape::straight(outer);
        let orders = orders_with(k);
        let o = pick.get(&orders);
        prop_assert_eq!(super_llt(&s, 1, o).unwrap(), hook_schur(&s, o));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn commutation_relations(n in 1u32..4, a in 0u32..4, b in 0u32..4, pair in select(CommutationPair::ALL.to_vec())) {
        let domain = Partition::all_up_to(4);
        let r = verify_commutation(n, a, b, pair, &domain).unwrap();
        prop_assert!(r.passed(), "{} n={} a={} b={}", pair, n, a, b);
    }

    /// The exact window does not change when it is widened.
    #[test]
    fn alternate_window_is_stable(n in 1u32..3, mu in partition(3), nu in partition(3)) {
        let to_w = BTreeMap::from([(VarId::x(1), VarId::w(1))]);
        let w = CauchyWindow::sized(
            n,
            mu,
            nu,
            WindowOrder::AlternateAbove,
            "1".parse().unwrap(),
            "1".parse::<AlphabetOrder>().unwrap().with_vars(&to_w),
            1,
        );
        let z = window_partition_function(&w).unwrap();
        prop_assert_eq!(window_partition_function(&w.widened(n)).unwrap(), z);
    }
}

use std::sync::Arc;

use bicrossed::dual::{self, DualElement, Fourier};
use bicrossed::fusion::FusionTable;
use bicrossed::length::{self, validate_group_length, MatchedLengthPair};
use bicrossed::{corpus, rep, Bicrossed, FiniteGroup, MatchedPair, Tolerances};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn trivial_pair(a: usize, b: usize) -> Bicrossed {
    let mp = MatchedPair::trivial(Arc::new(FiniteGroup::cyclic(a)), Arc::new(FiniteGroup::cyclic(b)));
    Bicrossed::new(Arc::new(mp), 0, Tolerances::default()).unwrap()
}

fn corpus_pair(name: &str, seed: u64) -> Bicrossed {
    let mp = corpus::find(name).unwrap().pair().unwrap();
    Bicrossed::new(Arc::new(mp), seed, Tolerances::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn cyclic_groups_have_n_linear_characters(n in 1usize..13, seed in 0u64..1000) {
        let g = Arc::new(FiniteGroup::cyclic(n));
        let t = rep::irreps(&g, seed, &Tolerances::default()).unwrap();
        prop_assert_eq!(t.len(), n);
        prop_assert!(t.dims().iter().all(|&d| d == 1));
    }

    #[test]
    fn trivial_pairs_are_the_product_dual(a in 1usize..5, b in 1usize..5) {
        let bc = trivial_pair(a, b);
        prop_assert_eq!(bc.classes().len(), a * b);
        prop_assert_eq!(bc.check_completeness().unwrap(), a * b);
        let t = FusionTable::compute(&bc).unwrap();
        prop_assert!(t.dimension_count_failures().is_empty());
        prop_assert!(t.associativity_failures().is_empty());
    }

    #[test]
    fn class_dimensions_do_not_depend_on_seed(seed in 0u64..10_000) {
        for name in ["s3-z3z2", "s4-d4z3"] {
            let b = corpus_pair(name, seed);
            let base = corpus_pair(name, 0);
            let d: Vec<usize> = b.classes().iter().map(|c| c.dim).collect();
            let e: Vec<usize> = base.classes().iter().map(|c| c.dim).collect();
            prop_assert_eq!(d, e);
        }
    }

    #[test]
    fn word_lengths_are_lengths(gens in proptest::collection::vec(0usize..24, 1..4)) {
        let (s4, _) = FiniteGroup::from_permutations(&[vec![1, 2, 3, 0], vec![1, 0, 2, 3]]).unwrap();
        let l = length::word_length(&s4, &gens);
        prop_assert!(validate_group_length(&s4, &l).is_ok());
    }

    #[test]
    fn word_pairs_are_matched_exactly_when_invariant(gens in proptest::collection::vec(1usize..8, 1..3)) {
        let b = corpus_pair("s4-d4z3", 0);
        let l = length::word_length(b.pair().gamma(), &gens);
        // a proper generated subgroup leaves elements at infinite length; those
        // are not length functions in the finite sense, so close the set first
        prop_assume!(l.iter().all(|v| v.is_finite()));
        // the orbit condition forces l_Γ to be constant on β-orbits
        let invariant = (0..l.len()).all(|c| b.orbit(c).orbit().iter().all(|&r| l[r] == l[c]));
        let pair = MatchedLengthPair::from_gamma_length(&b, l);
        let rep = pair.validate(&b).unwrap();
        prop_assert_eq!(rep.is_ok(), invariant, "{:?}", rep.violations.first());
        if !invariant {
            prop_assert!(rep.violations.iter().any(|v| v.axiom == length::Axiom::MatchedOrbit));
        }
        prop_assert!(dual::lift_support_failures(&b, &pair).unwrap().is_empty());
    }

    #[test]
    fn plancherel_and_rd_on_random_elements(seed in 0u64..10_000) {
        let b = corpus_pair("s4-d4z3", 0);
        let f = Fourier::new(&b);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all: Vec<usize> = (0..b.classes().len()).collect();
        let a = DualElement::random_on(&f.dims(), &all, &mut rng);
        prop_assert!(f.plancherel_residual(&a) < 1e-9);
        let lt = length::recipe("ltilde").unwrap().build(&b, &length::default_generators(b.pair().gamma())).unwrap();
        let r = dual::rd_ratio(&f, &lt, 0, 8, seed).unwrap();
        prop_assert!(r.within_bound(1e-8));
    }
}

#[test]
fn s4_pair_facts() {
    let b = corpus_pair("s4-d4z3", 0);
    assert!(b.pair().both_actions_nontrivial());
    assert_eq!(b.check_completeness().unwrap(), 24);
    let lt = length::recipe("ltilde")
        .unwrap()
        .build(&b, &length::default_generators(b.pair().gamma()))
        .unwrap();
    let g = length::growth_series(&b, &lt);
    assert_eq!(g.iter().sum::<usize>(), 24);
}

#[test]
fn trivial_z2z2_growth_with_single_generator() {
    let b = trivial_pair(2, 2);
    let lp = length::recipe("lprime").unwrap().build(&b, &[1]).unwrap();
    assert_eq!(length::growth_series(&b, &lp), vec![2, 2]);
}

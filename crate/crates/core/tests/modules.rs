use bipers::bigraded::{parse_bpm, to_bpm};
use bipers::generators::{random_hook_sum, random_module, RandomMode, RandomSpec};
use bipers::resolution::{betti_from_syzygies, verify_exactness};
use bipers::{betti_table, classify, minimal_free_resolution, Bigrade, GridModule, PrimeField};
use proptest::prelude::*;

fn spec(mode: RandomMode, seed: u64, p: u32) -> RandomSpec {
    RandomSpec {
        field: PrimeField::new(p).unwrap(),
        ..RandomSpec::new(mode, seed)
    }
}

fn modes() -> impl Strategy<Value = RandomMode> {
    prop_oneof![
        Just(RandomMode::Arbitrary),
        Just(RandomMode::Free),
        Just(RandomMode::HookSumScrambled)
    ]
}

fn has_unit_entry(p: &bipers::Presentation) -> bool {
    (0..p.gens().len()).any(|i| (0..p.rels().len()).any(|j| p.gens()[i] == p.rels()[j] && p.coeffs().get(i, j) != 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn grid_dimensions_match_hilbert(mode in modes(), seed in any::<u64>(), p in prop_oneof![Just(2u32), Just(3)]) {
        let pres = random_module(&spec(mode, seed, p));
        let m = GridModule::for_classification(&pres).unwrap();
        prop_assert!(m.frontier_is_stable());
        for d in m.grid().points() {
            prop_assert_eq!(m.dim(d), pres.hilbert_function(d));
        }
    }

    #[test]
    fn minimize_is_minimal_and_preserves_module(mode in modes(), seed in any::<u64>(), p in prop_oneof![Just(2u32), Just(3)]) {
        let pres = random_module(&spec(mode, seed, p));
        let min = pres.minimize();
        prop_assert!(!has_unit_entry(&min));
        prop_assert_eq!(min.minimize(), min.clone());
        for d in pres.classification_box().points() {
            prop_assert_eq!(min.hilbert_function(d), pres.hilbert_function(d));
        }
    }

    #[test]
    fn bpm_round_trip(mode in modes(), seed in any::<u64>(), p in prop_oneof![Just(2u32), Just(5)]) {
        let pres = random_module(&spec(mode, seed, p));
        prop_assert_eq!(parse_bpm(&to_bpm(&pres)).unwrap(), pres);
    }

    #[test]
    fn resolutions_are_exact_and_minimal(mode in modes(), seed in any::<u64>(), p in prop_oneof![Just(2u32), Just(3)]) {
        let pres = random_module(&spec(mode, seed, p));
        let res = minimal_free_resolution(&pres).unwrap();
        prop_assert!(!res.has_unit_entries());
        prop_assert!(verify_exactness(&res, pres.classification_box()));
        prop_assert_eq!(res.betti(), betti_table(&pres).unwrap());
        prop_assert_eq!(betti_from_syzygies(&pres).unwrap(), betti_table(&pres).unwrap());
    }

    #[test]
    fn alternating_betti_sum_is_hilbert(mode in modes(), seed in any::<u64>()) {
        let pres = random_module(&spec(mode, seed, 2));
        let table = betti_table(&pres).unwrap();
        for d in pres.classification_box().points() {
            prop_assert_eq!(table.hilbert_from_betti(d), pres.hilbert_function(d) as i64);
        }
    }

    #[test]
    fn scrambling_preserves_verdicts(seed in any::<u64>(), p in prop_oneof![Just(2u32), Just(3)]) {
        let s = spec(RandomMode::HookSumScrambled, seed, p);
        let (pres, hooks) = random_hook_sum(&s);
        let plain = bipers::generators::hook_sum(s.field, &hooks);
        let (a, b) = (classify(&pres).unwrap(), classify(&plain).unwrap());
        prop_assert_eq!(a.to_json(false), b.to_json(false));
    }
}

#[test]
fn exactness_rejects_broken_resolutions() {
    let pres = bipers::generators::gallery("koszul-point").unwrap();
    let mut res = minimal_free_resolution(&pres).unwrap();
    assert!(verify_exactness(&res, pres.classification_box()));
    res.d2 = bipers::Matrix::zeros(res.field, 2, 1);
    assert!(!verify_exactness(&res, pres.classification_box()));
    let too_small = bipers::GridBox::new(0, 0);
    let res = minimal_free_resolution(&pres).unwrap();
    assert!(!verify_exactness(&res, too_small));
    assert_eq!(res.bounding_degree(), Bigrade::new(1, 1));
}


use proptest::prelude::*;
use tricl_core::classgroup::{class_group_formula, class_group_snf, n_tilde, predicates};
use tricl_core::coxring::total_coordinate_space;
use tricl_core::type1::{adjust_type1, Type1Variety};
use tricl_core::{ClassGroup, RationalityClass, TrinomialVariety};

fn blocks(max_blocks: usize, max_n: usize, max_l: u64) -> impl Strategy<Value = Vec<Vec<u64>>> {
    prop::collection::vec(prop::collection::vec(1..=max_l, 1..=max_n), 1..=max_blocks)
}

fn variety() -> impl Strategy<Value = TrinomialVariety> {
    (blocks(5, 3, 8), 0..=2usize).prop_map(|(b, m)| TrinomialVariety::from_blocks(b, m).unwrap())
}

fn sorted_multiset(blocks: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut b = blocks.to_vec();
    b.sort();
    b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn adjust_is_idempotent(v in variety()) {
        let once = v.adjust();
        prop_assert!(once.variety.is_adjusted());
        let twice = once.variety.adjust();
        prop_assert_eq!(&twice.variety, &once.variety);
        prop_assert!(twice.record.eliminated.is_empty());
    }

    /// Adjusting permutes the blocks and drops only linear ones.
    #[test]
    fn adjust_preserves_blocks(v in variety()) {
        let a = v.adjust();
        let mut kept = a.record.kept.clone();
        kept.extend(&a.record.eliminated);
        kept.sort_unstable();
        prop_assert_eq!(kept, (0..v.num_blocks()).collect::<Vec<_>>());
        for &i in &a.record.eliminated {
            prop_assert_eq!(&v.blocks()[i], &vec![1]);
        }
        let survivors: Vec<Vec<u64>> = a.record.kept.iter().map(|&i| v.blocks()[i].clone()).collect();
        prop_assert_eq!(sorted_multiset(&survivors), sorted_multiset(a.variety.blocks()));
        prop_assert_eq!(a.variety.m(), v.m());
    }

    /// Block order does not matter for the adjusted form's class group.
    #[test]
    fn adjust_ignores_input_order(
        (b, shuffled) in blocks(5, 3, 8).prop_flat_map(|b| (Just(b.clone()), Just(b).prop_shuffle())),
    ) {
        let x = TrinomialVariety::from_blocks(b, 0).unwrap().adjust().variety;
        let y = TrinomialVariety::from_blocks(shuffled, 0).unwrap().adjust().variety;
        prop_assert_eq!(sorted_multiset(x.blocks()), sorted_multiset(y.blocks()));
        prop_assert_eq!(class_group_formula(&x).unwrap(), class_group_formula(&y).unwrap());
    }

    /// Every ordering meeting the constraints gives the same group.
    #[test]
    fn tied_orderings_agree(b in blocks(4, 2, 6)) {
        let v = TrinomialVariety::from_blocks(b, 0).unwrap();
        let reference = class_group_formula(&v.adjust().variety).unwrap();
        for w in v.all_adjusted_orderings() {
            prop_assert_eq!(&class_group_formula(&w).unwrap(), &reference, "{}", w);
            if let (ClassGroup::Group(g), Ok(RationalityClass::CaseII { .. } | RationalityClass::CaseIII)) =
                (&reference, w.rationality_class())
            {
                prop_assert_eq!(&class_group_snf(&w).unwrap(), g);
            }
        }
    }

    #[test]
    fn formula_agrees_with_smith_form(v in variety()) {
        let v = v.adjust().variety;
        let class = v.rationality_class().unwrap();
        let formula = class_group_formula(&v).unwrap();
        match class {
            RationalityClass::NonRational => prop_assert_eq!(formula, ClassGroup::NotFinitelyGenerated),
            RationalityClass::Factorial => prop_assert!(formula.as_group().unwrap().is_trivial()),
            _ => {
                let snf = class_group_snf(&v).unwrap();
                prop_assert_eq!(formula.as_group(), Some(&snf));
                prop_assert_eq!(snf.rank(), n_tilde(&v).unwrap());
            }
        }
    }

    /// Trivial class group exactly for the factorial criterion.
    #[test]
    fn trivial_iff_factorial(v in variety()) {
        let v = v.adjust().variety;
        let class = v.rationality_class().unwrap();
        let trivial = class_group_formula(&v).unwrap().as_group().is_some_and(|g| g.is_trivial());
        prop_assert_eq!(trivial, class == RationalityClass::Factorial);
    }

    /// The predicate criteria never disagree with the computed group.
    #[test]
    fn predicates_are_consistent(v in variety()) {
        let v = v.adjust().variety;
        prop_assert!(predicates(&v).is_ok(), "{:?}", predicates(&v));
    }

    #[test]
    fn tcs_dimension_grows_by_rank(v in variety()) {
        let v = v.adjust().variety;
        if let Ok(RationalityClass::CaseII { .. } | RationalityClass::CaseIII) = v.rationality_class() {
            let cox = total_coordinate_space(&v).unwrap();
            prop_assert_eq!(cox.tcs.dimension() - v.dimension(), n_tilde(&v).unwrap());
            prop_assert_eq!(cox.tcs.m(), v.m());
        }
    }

    #[test]
    fn variety_serde_round_trip(v in variety()) {
        let json = serde_json::to_string(&v).unwrap();
        let back: TrinomialVariety = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn type1_adjust_is_idempotent(b in blocks(4, 3, 6), m in 0..=2usize) {
        let v = adjust_type1(&Type1Variety::from_blocks(b, m).unwrap());
        prop_assert!(v.is_adjusted());
        prop_assert_eq!(adjust_type1(&v), v);
    }
}

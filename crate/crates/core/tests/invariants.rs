use proptest::prelude::*;
use richctx::verifier::oracle_concept_count;
use richctx::{
    contranominal_summand_size, count_concepts, find_rich_pair, is_rich_pair, noncontranominal_kernel,
    read_cxt, write_cxt, FormalContext,
};

fn context(max: usize) -> impl Strategy<Value = FormalContext> {
    (0..=max, 0..=max).prop_flat_map(|(a, b)| {
        proptest::collection::vec(any::<bool>(), a * b).prop_map(move |cells| {
            let names_g: Vec<String> = (0..a).map(|i| format!("o{i}")).collect();
            let names_m: Vec<String> = (0..b).map(|i| format!("a{i}")).collect();
            FormalContext::from_fn(names_g, names_m, |g, m| cells[g * b + m]).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn derivation_is_antitone(k in context(7), s in any::<u64>(), t in any::<u64>()) {
        let a = k.num_objects();
        let small = k.object_set((0..a).filter(|g| s >> g & 1 == 1 && t >> g & 1 == 1)).unwrap();
        let large = k.object_set((0..a).filter(|g| s >> g & 1 == 1)).unwrap();
        prop_assert!(small.is_subset(&large));
        prop_assert!(k.derive_objects(&large).unwrap().is_subset(&k.derive_objects(&small).unwrap()));
        let closed = k.close_objects(&small).unwrap();
        prop_assert!(small.is_subset(&closed));
        prop_assert!(closed.is_subset(&k.close_objects(&large).unwrap()));
        prop_assert_eq!(k.close_objects(&closed).unwrap(), closed);
    }

    #[test]
    fn count_matches_oracle(k in context(7)) {
        prop_assert_eq!(count_concepts(&k), oracle_concept_count(&k).unwrap());
    }

    #[test]
    fn op_doubles_deletion(k in context(6)) {
        for (g, m) in k.non_incident_pairs() {
            let op = count_concepts(&k.apply_op(g, m).unwrap());
            let del = count_concepts(&k.delete_pair(g, m).unwrap());
            prop_assert_eq!(op, 2 * del);
            prop_assert_eq!(is_rich_pair(&k, g, m).unwrap(), op >= count_concepts(&k));
        }
    }

    #[test]
    fn rich_pair_on_larger_contexts(k in context(6)) {
        match find_rich_pair(&k).unwrap() {
            None => prop_assert!(!k.has_non_incidence()),
            Some(p) => prop_assert!(is_rich_pair(&k, p.object, p.attribute).unwrap()),
        }
    }

    #[test]
    fn direct_sum_multiplies_counts(k in context(4), l in context(4)) {
        let sum = k.direct_sum(&l);
        prop_assert_eq!(count_concepts(&sum), count_concepts(&k) * count_concepts(&l));
    }

    #[test]
    fn summand_scan_recovers_added_scales(k in context(5), j in 0usize..4) {
        let kernel = noncontranominal_kernel(&k).kernel;
        prop_assert_eq!(contranominal_summand_size(&kernel), 0);
        let sum = kernel.direct_sum(&FormalContext::contranominal(j));
        let split = noncontranominal_kernel(&sum);
        prop_assert_eq!(split.summand_size, j);
        prop_assert!(split.kernel.same_incidence(&kernel));
    }

    #[test]
    fn cxt_round_trip(k in context(6)) {
        let text = write_cxt(&k);
        let back = read_cxt(&text).unwrap();
        prop_assert_eq!(&back, &k);
        prop_assert_eq!(write_cxt(&back), text);
    }
}

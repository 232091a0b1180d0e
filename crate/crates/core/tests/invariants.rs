use num_bigint::BigUint;
use proptest::prelude::*;
use simcores::abacus::{all_abaci, partition_from_gaps, Variant};
use simcores::counting::{
    catalan, count, count_brute, count_recurrence, count_series, in_p_set, in_q_set, Method, DEFAULT_BRUTE_LIMIT,
};
use simcores::partitions::{all_ab_cores, is_ab_core, partitions_of};
use simcores::{AbacusFunction, DiffSet, Partition};

const SETS: [&str; 10] = [
    "all",
    "positive",
    "mult:2",
    "mult+:2",
    "mult:3",
    "atleast:2",
    "upto:1",
    "finite:1,3|ap:10:5",
    "finite:0,4",
    "ap:1:3",
];

#[test]
fn abacus_counts_are_catalan() {
    for n in 1..=10 {
        assert_eq!(BigUint::from(all_abaci(n).len()), catalan(n as u64), "n = {n}");
    }
}

#[test]
fn decode_encode_round_trip() {
    // Hook-based enumeration walks every partition up to the largest core size.
    for n in 1..=5 {
        let cores = all_ab_cores(n, n + 1).unwrap();
        let abaci = all_abaci(n);
        assert_eq!(cores.len(), abaci.len());
        for f in abaci {
            let lambda = f.decode();
            assert!(is_ab_core(&lambda, n, n + 1), "{f} -> {lambda}");
            assert_eq!(AbacusFunction::encode(&lambda, n).unwrap(), f);
        }
    }
}

#[test]
fn abacus_filter_matches_partition_filter() {
    for spec in SETS {
        let m = DiffSet::parse(spec).unwrap();
        for n in 1..=8 {
            for f in all_abaci(n) {
                let lambda = f.decode();
                assert_eq!(f.satisfies(&m, Variant::Q), in_q_set(&lambda, &m), "{spec} {f}");
                assert_eq!(f.satisfies(&m, Variant::P), in_p_set(&lambda, &m), "{spec} {f}");
            }
        }
    }
}

#[test]
fn statistics_match_decoded_partition() {
    for n in 1..=9 {
        for f in all_abaci(n) {
            let s = f.statistics();
            let lambda = f.decode();
            assert_eq!((s.largest, s.length, s.size), (lambda.largest(), lambda.length(), lambda.size()), "{f}");
        }
    }
}

#[test]
fn gaps_rebuild_the_partition() {
    for f in all_abaci(8) {
        assert_eq!(partition_from_gaps(&f.gap_lengths()), f.decode());
        assert_eq!(f.gap_lengths(), f.decode().differences());
    }
}

#[test]
fn every_route_agrees_on_the_battery() {
    for spec in SETS {
        let m = DiffSet::parse(spec).unwrap();
        let rec = count_recurrence(&m, 10);
        assert_eq!(count_series(&m, 10).values, rec.values, "{spec}");
        assert_eq!(count_brute(&m, 10, Variant::Q).unwrap().values, rec.values, "{spec}");
    }
}

#[test]
fn dispatcher_rejects_unsupported_methods() {
    let m = DiffSet::parse("atleast:2").unwrap();
    assert!(count(&m, 5, Variant::Q, Method::Closed, DEFAULT_BRUTE_LIMIT).is_err());
    assert!(count(&m, 5, Variant::P, Method::Recurrence, DEFAULT_BRUTE_LIMIT).is_err());
    assert!(count(&m, 20, Variant::Q, Method::Brute, DEFAULT_BRUTE_LIMIT).is_err());
    let odd = count(&m, 7, Variant::Odd, Method::Recurrence, DEFAULT_BRUTE_LIMIT).unwrap();
    let brute = count(&m, 7, Variant::Odd, Method::Brute, DEFAULT_BRUTE_LIMIT).unwrap();
    assert_eq!(odd.values, brute.values);
}

#[test]
fn report_json_round_trip() {
    let report = count_recurrence(&DiffSet::parse("mult+:2").unwrap(), 11);
    let json = report.to_json();
    assert!(json.contains(r#""values":["1","1","1","2","2","3","4","5","7","9","12","16"]"#), "{json}");
    let back: simcores::CountReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
}

#[test]
fn enumeration_order_is_reverse_lexicographic() {
    let parts: Vec<String> = partitions_of(4).iter().map(Partition::to_string).collect();
    assert_eq!(parts, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
}

fn abacus_strategy(max_n: usize) -> impl Strategy<Value = AbacusFunction> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0usize..=n, n - 1).prop_map(move |steps| {
            // Each step either climbs by one or drops to a value already allowed.
            let mut values = vec![0];
            for s in steps {
                let prev = *values.last().unwrap();
                values.push(s.min(prev + 1));
            }
            AbacusFunction::validate(n, values).unwrap()
        })
    })
}

fn diffset_strategy() -> impl Strategy<Value = DiffSet> {
    (
        proptest::collection::btree_set(0u64..12, 0..5),
        proptest::collection::btree_set((0u64..6, 1u64..5), 0..3),
    )
        .prop_filter("the grammar has no empty set", |(f, p)| !f.is_empty() || !p.is_empty())
        .prop_map(|(finite, progressions)| DiffSet::from_parts(finite, progressions).unwrap())
}

proptest! {
    #[test]
    fn round_trip_random(f in abacus_strategy(30)) {
        let lambda = f.decode();
        prop_assert!(is_ab_core(&lambda, f.n(), f.n() + 1));
        prop_assert_eq!(AbacusFunction::encode(&lambda, f.n()).unwrap(), f.clone());
        let s = f.statistics();
        prop_assert_eq!(s.size, lambda.size());
        prop_assert_eq!(s.largest, lambda.largest());
        prop_assert_eq!(s.length, lambda.length());
    }

    #[test]
    fn q_is_stricter_than_p(f in abacus_strategy(20), m in diffset_strategy()) {
        if f.satisfies(&m, Variant::Q) {
            prop_assert!(f.satisfies(&m, Variant::P));
        }
        prop_assert_eq!(f.satisfies(&m, Variant::Q), in_q_set(&f.decode(), &m));
    }

    #[test]
    fn series_matches_recurrence(m in diffset_strategy()) {
        prop_assert_eq!(count_series(&m, 25).values, count_recurrence(&m, 25).values);
    }

    #[test]
    fn canonical_spec_round_trip(m in diffset_strategy()) {
        let again = DiffSet::parse(&m.canonical_spec()).unwrap();
        prop_assert!(again.agrees_up_to(&m, 100));
    }

    #[test]
    fn brute_matches_recurrence_random_sets(m in diffset_strategy()) {
        prop_assert_eq!(count_brute(&m, 8, Variant::Q).unwrap().values, count_recurrence(&m, 8).values);
    }
}

mod common;

use approval_outliers::graph::Graph;
use approval_outliers::io::{parse_instance, serialize_instance, InstanceFile};
use approval_outliers::reductions::{reduce, ReductionKind};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn serialize_then_parse_is_identity(
        (election, query) in common::instance(12, 12, common::rule()),
        target in prop::option::of(-50i64..50),
    ) {
        let file = InstanceFile { election, query: approval_outliers::OutlierQuery { target, ..query }, provenance: None };
        let text = serialize_instance(&file);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(serialize_instance(&back), text);
    }
}

#[test]
fn every_generator_round_trips_through_text() {
    let graphs = [
        Graph::complete(4),
        Graph::cycle(6).unwrap(),
        Graph::complete_bipartite(2, 3),
    ];
    for g in &graphs {
        for kind in ReductionKind::ALL {
            for &rule in kind.rules() {
                for k in kind.valid_ks(g, rule) {
                    let inst = reduce(kind, g, k, rule).unwrap();
                    let file = InstanceFile::from_reduced(&inst);
                    let back = parse_instance(&serialize_instance(&file)).unwrap();
                    assert_eq!(back, file);
                    assert_eq!(back.provenance.unwrap().regenerate().unwrap(), inst);
                }
            }
        }
    }
}

#[test]
fn vote_index_m_is_rejected() {
    let text = r#"{"schema_version":1,"m":2,"votes":[[2]],"rule":"minisum","m_star":1,"n_bar":0}"#;
    assert!(matches!(
        parse_instance(text),
        Err(approval_outliers::Error::Parse { location, .. }) if location == "votes[0][0]"
    ));
}

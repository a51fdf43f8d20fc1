mod common;

use approval_outliers::exact::{
    brute_force_oracle, decide_minisum_fpt, solve_committee_enum, solve_voterset_enum, SolveOptions,
};
use approval_outliers::{OutlierQuery, ScoringRule};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn three_exact_solvers_return_identical_solutions((e, q) in common::instance(7, 7, common::rule())) {
        let opts = SolveOptions::default();
        let a = solve_committee_enum(&e, &q, &opts).unwrap().solution;
        let b = solve_voterset_enum(&e, &q, &opts).unwrap().solution;
        let c = brute_force_oracle(&e, &q, &opts).unwrap().solution;
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&a, &c);
        a.verify(&e, &q).unwrap();
    }

    #[test]
    fn worker_count_does_not_change_results((e, q) in common::instance(8, 8, common::rule())) {
        let one = SolveOptions::with_threads(1);
        let four = SolveOptions::with_threads(4);
        prop_assert_eq!(
            solve_committee_enum(&e, &q, &one).unwrap().solution,
            solve_committee_enum(&e, &q, &four).unwrap().solution
        );
        prop_assert_eq!(
            solve_voterset_enum(&e, &q, &one).unwrap().solution,
            solve_voterset_enum(&e, &q, &four).unwrap().solution
        );
    }

    #[test]
    fn decision_flips_exactly_at_the_optimum((e, q) in common::instance(6, 6, Just(ScoringRule::Minisum))) {
        let opts = SolveOptions::default();
        let opt = brute_force_oracle(&e, &q, &opts).unwrap().solution.score;
        for t in 0..=opt + 2 {
            let d = decide_minisum_fpt(&e, &q.with_target(t), &opts).unwrap();
            prop_assert_eq!(d.accepted, t >= opt);
            if let Some(w) = &d.witness {
                w.verify(&e, &q).unwrap();
                prop_assert!(w.score <= t);
            }
            prop_assert_eq!(d.witness.is_some(), d.accepted);
        }
    }
}

#[test]
fn duplicate_ballots_stay_distinct() {
    let e = approval_outliers::Election::from_lists(3, &[vec![0], vec![0], vec![1, 2]]).unwrap();
    let q = OutlierQuery::new(ScoringRule::Minisum, 1, 1);
    let s = solve_committee_enum(&e, &q, &SolveOptions::default())
        .unwrap()
        .solution;
    assert_eq!(s.non_outliers, vec![0, 1]);
    assert_eq!(s.score, 0);
}

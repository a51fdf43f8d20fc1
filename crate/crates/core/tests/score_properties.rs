mod common;

use approval_outliers::combinations::{binomial, for_each_in_rank_range};
use approval_outliers::score::{
    best_committee_for_votes, best_nonoutliers_for_committee, per_vote_score, total_score,
};
use approval_outliers::{ApprovalVote, Committee, ScoringRule};
use proptest::prelude::*;

fn pair() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>)> {
    (1usize..=40).prop_flat_map(|m| {
        (
            Just(m),
            prop::sample::subsequence((0..m).collect::<Vec<_>>(), 0..=m),
            prop::sample::subsequence((0..m).collect::<Vec<_>>(), 0..=m),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn symmetric_difference_and_net_identities((m, x, s) in pair()) {
        let committee = Committee::new(m, x.iter().copied()).unwrap();
        let vote = ApprovalVote::from_indices(m, s.iter().copied());
        let x_minus_s = x.iter().filter(|c| !s.contains(c)).count() as i64;
        let s_minus_x = s.iter().filter(|c| !x.contains(c)).count() as i64;
        prop_assert_eq!(per_vote_score(ScoringRule::Minisum, &committee, &vote), x_minus_s + s_minus_x);
        prop_assert_eq!(per_vote_score(ScoringRule::Disapproval, &committee, &vote), x_minus_s);
        prop_assert_eq!(per_vote_score(ScoringRule::DisapprovalPrime, &committee, &vote), s_minus_x);
        prop_assert_eq!(
            per_vote_score(ScoringRule::NetDisapproval, &committee, &vote),
            2 * x_minus_s - x.len() as i64
        );
    }

    #[test]
    fn greedy_committee_is_optimal_for_fixed_votes(
        (e, q) in common::instance(7, 6, common::rule()),
    ) {
        let all: Vec<usize> = (0..e.n()).collect();
        let greedy = best_committee_for_votes(q.rule, &e, &all, q.m_star).unwrap();
        let greedy_score = total_score(q.rule, &greedy, &e, &all);
        let mut best = i64::MAX;
        for_each_in_rank_range(e.m(), q.m_star, 0, binomial(e.m(), q.m_star), |c| {
            let committee = Committee::new(e.m(), c.iter().copied()).unwrap();
            best = best.min(total_score(q.rule, &committee, &e, &all));
        });
        prop_assert_eq!(greedy_score, best);
    }

    #[test]
    fn chosen_nonoutliers_are_optimal_for_fixed_committee(
        (e, q) in common::instance(6, 7, common::rule()),
    ) {
        let committee = Committee::new(e.m(), 0..q.m_star).unwrap();
        let n_star = q.n_star(&e);
        let (kept, score) = best_nonoutliers_for_committee(q.rule, &e, &committee, n_star).unwrap();
        prop_assert!(kept.len() >= n_star);
        prop_assert_eq!(score, total_score(q.rule, &committee, &e, &kept));
        let mut best = i64::MAX;
        for mask in 0u32..1 << e.n() {
            if (mask.count_ones() as usize) < n_star {
                continue;
            }
            let subset: Vec<usize> = (0..e.n()).filter(|&i| mask >> i & 1 == 1).collect();
            best = best.min(total_score(q.rule, &committee, &e, &subset));
        }
        prop_assert_eq!(score, best);
    }
}

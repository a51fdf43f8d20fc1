#![allow(dead_code)]

use approval_outliers::{Election, OutlierQuery, ScoringRule};
use proptest::prelude::*;

pub fn rule() -> impl Strategy<Value = ScoringRule> + Clone {
    prop::sample::select(ScoringRule::ALL.to_vec())
}

/// Election with 1..=max_m candidates and 1..=max_n votes, each approval a fair coin.
pub fn election(max_m: usize, max_n: usize) -> impl Strategy<Value = Election> {
    (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), m), n).prop_map(move |rows| {
            let lists: Vec<Vec<usize>> = rows
                .iter()
                .map(|r| (0..m).filter(|&c| r[c]).collect())
                .collect();
            Election::from_lists(m, &lists).unwrap()
        })
    })
}

/// Election plus a feasible query under `rules`.
pub fn instance(
    max_m: usize,
    max_n: usize,
    rules: impl Strategy<Value = ScoringRule> + Clone + 'static,
) -> impl Strategy<Value = (Election, OutlierQuery)> {
    election(max_m, max_n).prop_flat_map(move |e| {
        let (m, n) = (e.m(), e.n());
        (Just(e), rules.clone(), 0..=m, 0..n)
            .prop_map(|(e, r, m_star, n_bar)| (e, OutlierQuery::new(r, m_star, n_bar)))
    })
}

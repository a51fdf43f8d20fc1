//! Lexicographic k-subset enumeration with ranking, so enumerations can be split
//! into disjoint rank ranges and merged deterministically.

/// C(n, k), saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// The `rank`-th k-subset of `0..n` in lexicographic order.
pub fn unrank(n: usize, k: usize, mut rank: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut x = 0;
    for pos in 0..k {
        loop {
            let block = binomial(n - x - 1, k - pos - 1);
            if rank < block {
                break;
            }
            rank -= block;
            x += 1;
        }
        out.push(x);
        x += 1;
    }
    out
}

/// Advances `combo` to its lexicographic successor; false once exhausted.
pub fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Visits the k-subsets with ranks in `start..end`, in order.
pub fn for_each_in_rank_range(
    n: usize,
    k: usize,
    start: u64,
    end: u64,
    mut visit: impl FnMut(&[usize]),
) {
    if start >= end {
        return;
    }
    let mut combo = unrank(n, k, start);
    let mut rank = start;
    loop {
        visit(&combo);
        rank += 1;
        if rank >= end || !next_combination(&mut combo, n) {
            break;
        }
    }
}

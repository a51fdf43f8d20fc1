use smallvec::SmallVec;

const WORD: usize = 64;

/// Fixed-universe set of candidate indices stored as packed 64-bit words.
///
/// Elections with up to 128 candidates stay inline.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CandidateSet {
    words: SmallVec<[u64; 2]>,
}

impl CandidateSet {
    pub fn empty(universe: usize) -> Self {
        CandidateSet {
            words: SmallVec::from_elem(0, words_for(universe)),
        }
    }

    /// All of `0..universe`.
    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for i in 0..universe {
            set.insert(i);
        }
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut set = Self::empty(universe);
        for i in indices {
            set.insert(i);
        }
        set
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / WORD] |= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / WORD] &= !(1u64 << (i % WORD));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / WORD)
            .is_some_and(|w| w & (1u64 << (i % WORD)) != 0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn intersection_len(&self, other: &CandidateSet) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Complement within `0..universe`.
    pub fn complement(&self, universe: usize) -> CandidateSet {
        let mut out = CandidateSet::empty(universe);
        for (k, w) in out.words.iter_mut().enumerate() {
            *w = !self.words.get(k).copied().unwrap_or(0);
        }
        let tail = universe % WORD;
        if tail != 0 {
            if let Some(last) = out.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        out
    }

    /// Ascending iteration over members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(k * WORD + bit)
            })
        })
    }

    /// Largest member plus one, or zero for the empty set.
    pub fn span(&self) -> usize {
        for (k, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return k * WORD + (WORD - w.leading_zeros() as usize);
            }
        }
        0
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

fn words_for(universe: usize) -> usize {
    universe.div_ceil(WORD).max(1)
}

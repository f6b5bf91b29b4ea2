use super::Partition;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Default word length up to which `i_k` is computed by exhaustive search.
pub const EXHAUSTIVE_BOUND: usize = 12;

/// Word over the alphabet `1..=alphabet`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<u32>,
    alphabet: u32,
}

impl Word {
    pub fn new(letters: Vec<u32>, alphabet: u32) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&c| c == 0 || c > alphabet) {
            return Err(Error::LetterOutOfRange { letter: bad, alphabet });
        }
        Ok(Word { letters, alphabet })
    }

    /// The `index`-th word of length `len` in lexicographic order.
    pub fn from_index(mut index: u64, len: usize, alphabet: u32) -> Self {
        let mut letters = vec![1; len];
        for c in letters.iter_mut().rev() {
            *c = (index % alphabet as u64) as u32 + 1;
            index /= alphabet as u64;
        }
        Word { letters, alphabet }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Shape of the insertion tableau under RSK row insertion.
pub fn rsk_shape(w: &Word) -> Partition {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for &c in w.letters() {
        let mut x = c;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![x]);
                break;
            }
            let row = &mut rows[r];
            let pos = row.partition_point(|&y| y <= x);
            if pos == row.len() {
                row.push(x);
                break;
            }
            std::mem::swap(&mut row[pos], &mut x);
            r += 1;
        }
    }
    Partition::from_parts_unchecked(rows.iter().map(|r| r.len() as u32).collect())
}

/// Length of the longest strictly decreasing subsequence.
pub fn d1(w: &Word) -> usize {
    let l = w.letters();
    let mut best = vec![1usize; l.len()];
    for i in 0..l.len() {
        for j in 0..i {
            if l[j] > l[i] {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IkMethod {
    /// Exhaustive up to `bound`, RSK beyond.
    Auto { bound: usize },
    Exhaustive { bound: usize },
    Rsk,
}

impl Default for IkMethod {
    fn default() -> Self {
        IkMethod::Auto { bound: EXHAUSTIVE_BOUND }
    }
}

/// Maximal total length of `k` disjoint weakly increasing subsequences.
pub fn i_k(w: &Word, k: usize, method: IkMethod) -> Result<usize> {
    match method {
        IkMethod::Rsk => Ok(by_shape(w, k)),
        IkMethod::Auto { bound } if w.len() > bound => Ok(by_shape(w, k)),
        IkMethod::Exhaustive { bound } if w.len() > bound => {
            Err(Error::BruteForceBoundExceeded { length: w.len(), bound })
        }
        _ => Ok(exhaustive(w, k)),
    }
}

fn by_shape(w: &Word, k: usize) -> usize {
    rsk_shape(w).parts().iter().take(k).map(|&x| x as usize).sum()
}

// State: sorted last letters of the k subsequences (0 = not started yet).
// Every disjoint family is reached by deciding letter by letter which
// subsequence (if any) takes it, so the search is exact.
fn exhaustive(w: &Word, k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    let mut states: HashMap<Vec<u32>, usize> = HashMap::from([(vec![0; k], 0)]);
    for &c in w.letters() {
        let mut next: HashMap<Vec<u32>, usize> = HashMap::with_capacity(states.len() * 2);
        for (tops, len) in &states {
            let keep = next.entry(tops.clone()).or_insert(0);
            *keep = (*keep).max(*len);
            let mut last = None;
            for j in 0..k {
                if tops[j] <= c && last != Some(tops[j]) {
                    last = Some(tops[j]);
                    let mut t = tops.clone();
                    t[j] = c;
                    t.sort_unstable();
                    let e = next.entry(t).or_insert(0);
                    *e = (*e).max(len + 1);
                }
            }
        }
        states = next;
    }
    states.into_values().max().unwrap_or(0)
}

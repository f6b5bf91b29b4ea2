use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: &[i64]) -> Result<Self> {
        let bad = |reason| Error::InvalidPartition { parts: parts.to_vec(), reason };
        if parts.iter().any(|&x| x <= 0) {
            return Err(bad("parts must be strictly positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(bad("parts must be weakly decreasing"));
        }
        if parts.iter().any(|&x| x > u32::MAX as i64) {
            return Err(bad("part too large"));
        }
        Ok(Partition { parts: parts.iter().map(|&x| x as u32).collect() })
    }

    /// Accepts trailing zeros, which are dropped.
    pub fn from_padded(parts: &[i64]) -> Result<Self> {
        let end = parts.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
        Self::new(&parts[..end])
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&x| x > 0));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&x| x as u64).sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0) as usize;
        let mut out = vec![0u32; first];
        for &r in &self.parts {
            for c in out.iter_mut().take(r as usize) {
                *c += 1;
            }
        }
        Partition { parts: out }
    }

    /// Hook length of cell (i, j), 1-based, or `None` outside the diagram.
    pub fn hook_length(&self, i: usize, j: usize) -> Option<u32> {
        if i == 0 || j == 0 || i > self.len() || j as u32 > self.parts[i - 1] {
            return None;
        }
        let arm = self.parts[i - 1] - j as u32;
        let leg = self.parts[i..].iter().take_while(|&&r| r >= j as u32).count() as u32;
        Some(arm + leg + 1)
    }

    /// All hook lengths row by row.
    pub fn hooks(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.weight() as usize);
        for (i, &r) in self.parts.iter().enumerate() {
            for j in 0..r as usize {
                out.push(r - j as u32 + conj.parts[j] - i as u32 - 1);
            }
        }
        out
    }

    /// Contents j - i of all cells, 1-based coordinates.
    pub fn contents(&self) -> impl Iterator<Item = i64> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r as i64).map(move |j| j - i as i64))
    }

    /// Subtract `m` from each of the first `rows` parts; `None` if some part
    /// would go negative.
    pub fn strip_rectangle(&self, rows: usize, m: u32) -> Option<Partition> {
        if m == 0 {
            return Some(self.clone());
        }
        if self.len() < rows || self.part(rows - 1) < m {
            return None;
        }
        let parts: Vec<u32> =
            self.parts.iter().map(|&x| x - m).filter(|&x| x > 0).collect();
        Some(Partition { parts })
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Partition::from_padded(&v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| {
                x.trim().parse::<i64>().map_err(|_| Error::InvalidPartition {
                    parts: vec![],
                    reason: "not a comma-separated list of integers",
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::from_padded(&parts)
    }
}

/// Partitions of `weight` with at most `max_parts` parts, every part at
/// least `min_part` when given (and then exactly `max_parts` parts).
/// Yields in lexicographically decreasing order.
pub fn enumerate_partitions(weight: u64, max_parts: usize, min_part: Option<u32>) -> PartitionIter {
    match min_part {
        Some(m) if m > 0 => {
            // lambda <-> lambda - m^p
            let shift = m as u64 * max_parts as u64;
            if weight < shift || max_parts == 0 {
                PartitionIter::exhausted()
            } else {
                PartitionIter::new(weight - shift, max_parts, m, max_parts)
            }
        }
        _ => PartitionIter::new(weight, max_parts, 0, 0),
    }
}

/// Lazy partition generator (reverse-lexicographic).
pub struct PartitionIter {
    current: Option<Vec<u32>>,
    max_parts: usize,
    shift: u32,
    pad_to: usize,
}

impl PartitionIter {
    fn new(weight: u64, max_parts: usize, shift: u32, pad_to: usize) -> Self {
        let current = if weight == 0 {
            Some(Vec::new())
        } else if max_parts == 0 {
            None
        } else {
            Some(vec![weight as u32])
        };
        PartitionIter { current, max_parts, shift, pad_to }
    }

    fn exhausted() -> Self {
        PartitionIter { current: None, max_parts: 0, shift: 0, pad_to: 0 }
    }

    fn advance(&mut self) {
        let Some(cur) = self.current.as_mut() else { return };
        // Decrease the rightmost part that leaves a feasible greedy refill.
        let mut rem: u64 = 0;
        for i in (0..cur.len()).rev() {
            rem += 1;
            let v = cur[i] - 1;
            let slots = (self.max_parts - i - 1) as u64;
            if v > 0 && rem <= v as u64 * slots {
                cur.truncate(i);
                cur.push(v);
                while rem > 0 {
                    let take = (v as u64).min(rem);
                    cur.push(take as u32);
                    rem -= take;
                }
                return;
            }
            rem += cur[i] as u64 - 1;
        }
        self.current = None;
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.clone()?;
        self.advance();
        let mut parts: Vec<u32> = cur.iter().map(|&x| x + self.shift).collect();
        while parts.len() < self.pad_to {
            parts.push(self.shift);
        }
        parts.retain(|&x| x > 0);
        Some(Partition { parts })
    }
}

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One worker's verdict on which of two images looks more violent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairComparison {
    pub left: String,
    pub right: String,
    pub winner: Side,
    pub worker_id: String,
}

impl PairComparison {
    pub fn winner_id(&self) -> &str {
        match self.winner {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn loser_id(&self) -> &str {
        match self.winner {
            Side::Left => &self.right,
            Side::Right => &self.left,
        }
    }
}

/// Sparse win counts over an ordered item list.
///
/// A pair is *compared* once it has been declared or has at least one
/// recorded outcome; pseudo-counts in the fit apply to compared pairs only.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WinMatrix {
    items: Vec<String>,
    index: BTreeMap<String, usize>,
    /// `(lo, hi) -> [wins of lo over hi, wins of hi over lo]`
    pairs: BTreeMap<(usize, usize), [u64; 2]>,
}

impl WinMatrix {
    pub fn new() -> Self {
        Self::default()
    }

    /// Starts from a fixed item list; unknown ids are then rejected.
    pub fn with_items<I, S>(items: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut m = Self::new();
        for id in items {
            let id = id.into();
            if m.index.contains_key(&id) {
                return Err(Error::DuplicateId(id));
            }
            m.add_item(id);
        }
        Ok(m)
    }

    /// Returns the index of `id`, appending it if new.
    pub fn add_item(&mut self, id: impl Into<String>) -> usize {
        let id = id.into();
        if let Some(&i) = self.index.get(&id) {
            return i;
        }
        let i = self.items.len();
        self.index.insert(id.clone(), i);
        self.items.push(id);
        i
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    fn resolve(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::InvalidComparison(alloc::format!("unknown item `{id}`")))
    }

    fn key(i: usize, j: usize) -> Result<(usize, usize)> {
        if i == j {
            return Err(Error::InvalidComparison(alloc::format!("item {i} compared with itself")));
        }
        Ok((i.min(j), i.max(j)))
    }

    /// Marks a pair as compared without recording an outcome.
    pub fn declare_pair(&mut self, a: &str, b: &str) -> Result<()> {
        let key = Self::key(self.resolve(a)?, self.resolve(b)?)?;
        self.pairs.entry(key).or_insert([0, 0]);
        Ok(())
    }

    /// Records `count` wins of item `winner` over item `loser` (indices).
    pub fn record(&mut self, winner: usize, loser: usize, count: u64) -> Result<()> {
        if winner >= self.items.len() || loser >= self.items.len() {
            return Err(Error::InvalidComparison(alloc::format!("index out of range ({winner}, {loser})")));
        }
        let key = Self::key(winner, loser)?;
        let slot = self.pairs.entry(key).or_insert([0, 0]);
        slot[usize::from(winner != key.0)] += count;
        Ok(())
    }

    /// Adds one comparison; both ids must already be known.
    pub fn add(&mut self, c: &PairComparison) -> Result<()> {
        if c.left == c.right {
            return Err(Error::InvalidComparison(alloc::format!("`{}` compared with itself", c.left)));
        }
        let w = self.resolve(c.winner_id())?;
        let l = self.resolve(c.loser_id())?;
        self.record(w, l, 1)
    }

    /// Number of times item `i` beat item `j`.
    pub fn wins(&self, i: usize, j: usize) -> u64 {
        if i == j {
            return 0;
        }
        let key = (i.min(j), i.max(j));
        self.pairs.get(&key).map_or(0, |c| c[usize::from(i != key.0)])
    }

    /// Comparisons of the unordered pair `{i, j}`.
    pub fn total(&self, i: usize, j: usize) -> u64 {
        self.wins(i, j) + self.wins(j, i)
    }

    /// Total wins of item `i`.
    pub fn total_wins(&self, i: usize) -> u64 {
        self.pairs
            .iter()
            .map(|(&(a, b), c)| if a == i { c[0] } else if b == i { c[1] } else { 0 })
            .sum()
    }

    /// Compared pairs as `(lo, hi, wins of lo, wins of hi)`, ascending.
    pub fn compared_pairs(&self) -> impl Iterator<Item = (usize, usize, u64, u64)> + '_ {
        self.pairs.iter().map(|(&(a, b), c)| (a, b, c[0], c[1]))
    }

    pub fn n_compared_pairs(&self) -> usize {
        self.pairs.len()
    }

    /// Adds another matrix's counts into this one, matching items by id.
    pub fn merge(&mut self, other: &WinMatrix) {
        for (a, b, wa, wb) in other.compared_pairs() {
            let i = self.add_item(other.items[a].clone());
            let j = self.add_item(other.items[b].clone());
            let key = (i.min(j), i.max(j));
            let slot = self.pairs.entry(key).or_insert([0, 0]);
            if i < j {
                slot[0] += wa;
                slot[1] += wb;
            } else {
                slot[0] += wb;
                slot[1] += wa;
            }
        }
        for id in &other.items {
            self.add_item(id.clone());
        }
    }
}

/// Counts wins from individual verdicts. Items are indexed in order of first
/// appearance; repeated verdicts on the same pair all count.
pub fn accumulate_wins(comparisons: &[PairComparison]) -> Result<WinMatrix> {
    let mut m = WinMatrix::new();
    for c in comparisons {
        if c.left == c.right {
            return Err(Error::InvalidComparison(alloc::format!("`{}` compared with itself", c.left)));
        }
        m.add_item(c.left.as_str());
        m.add_item(c.right.as_str());
        m.add(c)?;
    }
    Ok(m)
}

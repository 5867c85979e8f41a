//! Vertex words and graph parameters for `S(K_n, t)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on `n^t` for operations that iterate the whole graph.
pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;
/// Default cap on the number of materialized members of a constructed set.
pub const DEFAULT_MEMBER_CAP: usize = 10_000_000;
/// Environment variable overriding [`DEFAULT_VERTEX_CAP`].
pub const VERTEX_CAP_ENV: &str = "SDOM_VERTEX_CAP";

/// A vertex of `S(K_n, t)`: a sequence of `t` labels, each in `1..=n`.
///
/// Words compare lexicographically, which for equal lengths coincides with
/// the order of their base-`n` indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u32>);

impl Word {
    /// Builds a word from 1-based labels. Labels must be positive; the upper
    /// bound depends on the graph and is checked by [`GraphParams::check`].
    pub fn new(labels: Vec<u32>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        if labels.contains(&0) {
            return Err(Error::InvalidWord(format!(
                "labels are 1-based, got {:?}",
                labels
            )));
        }
        Ok(Word(labels))
    }

    pub(crate) fn from_labels_unchecked(labels: Vec<u32>) -> Self {
        debug_assert!(!labels.is_empty() && !labels.contains(&0));
        Word(labels)
    }

    /// The constant word `alpha^len`.
    pub fn constant(alpha: u32, len: usize) -> Result<Self> {
        Word::new(vec![alpha; len])
    }

    pub fn labels(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when all entries are equal (an extreme vertex).
    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// The first `len` labels as a new word.
    pub fn prefix(&self, len: usize) -> Result<Word> {
        if len == 0 || len > self.len() {
            return Err(Error::InvalidWord(format!(
                "prefix length {len} out of range for {self}"
            )));
        }
        Ok(Word(self.0[..len].to_vec()))
    }

    pub fn into_labels(self) -> Vec<u32> {
        self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, label) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{label}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses the dot-separated form, e.g. `1.2.2`.
    fn from_str(s: &str) -> Result<Self> {
        let labels = s
            .split('.')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad label {part:?} in word {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(labels)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Resource limits for whole-graph operations and materialized sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub vertex_cap: usize,
    pub member_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            vertex_cap: DEFAULT_VERTEX_CAP,
            member_cap: DEFAULT_MEMBER_CAP,
        }
    }
}

impl Limits {
    /// Defaults, with the vertex cap overridden by `SDOM_VERTEX_CAP` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(VERTEX_CAP_ENV) {
            limits.vertex_cap = raw.trim().parse().map_err(|_| {
                Error::InvalidParams(format!(
                    "{VERTEX_CAP_ENV}={raw:?} is not an unsigned integer"
                ))
            })?;
        }
        Ok(limits)
    }
}

/// The pair `(n, t)` identifying the implicit graph `S(K_n, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GraphParams {
    n: u32,
    t: u32,
}

impl GraphParams {
    pub fn new(n: u32, t: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!(
                "n must be at least 2, got {n}"
            )));
        }
        if t < 1 {
            return Err(Error::InvalidParams(format!(
                "t must be at least 1, got {t}"
            )));
        }
        Ok(GraphParams { n, t })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Length of every word, `t`.
    pub fn word_len(&self) -> usize {
        self.t as usize
    }

    /// `n^t` as a native integer; fails when it does not fit.
    pub fn vertex_count(&self) -> Result<usize> {
        (self.n as usize).checked_pow(self.t).ok_or_else(|| {
            Error::capacity("vertex count", format!("{}^{}", self.n, self.t), usize::MAX)
        })
    }

    /// `n^t`, additionally bounded by the whole-graph vertex cap.
    pub fn vertex_count_within(&self, limits: &Limits) -> Result<usize> {
        let count = self.vertex_count()?;
        if count > limits.vertex_cap {
            return Err(Error::capacity("vertex count", count, limits.vertex_cap));
        }
        Ok(count)
    }

    /// Maximum degree: `n - 1` for `t = 1` (the clique), `n` otherwise.
    pub fn max_degree(&self) -> u32 {
        if self.t == 1 {
            self.n - 1
        } else {
            self.n
        }
    }

    /// Checks that `w` is a vertex of this graph.
    pub fn check(&self, w: &Word) -> Result<()> {
        if w.len() != self.t as usize {
            return Err(Error::InvalidWord(format!(
                "{w} has length {}, expected {}",
                w.len(),
                self.t
            )));
        }
        if let Some(bad) = w.labels().iter().find(|&&l| l == 0 || l > self.n) {
            return Err(Error::InvalidWord(format!(
                "label {bad} of {w} is outside 1..={}",
                self.n
            )));
        }
        Ok(())
    }

    /// Parses a dot-separated word and checks it against this graph.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let w: Word = s.parse()?;
        self.check(&w)?;
        Ok(w)
    }

    /// The all-`alpha` word of this graph.
    pub fn extreme(&self, alpha: u32) -> Result<Word> {
        let w = Word::constant(alpha, self.word_len())?;
        self.check(&w)?;
        Ok(w)
    }

    /// Base-`n` index of a valid word; lexicographic order equals index order.
    /// Only meaningful when `n^t` fits in `usize`.
    pub fn index_of(&self, w: &Word) -> usize {
        let n = self.n as usize;
        w.labels()
            .iter()
            .fold(0usize, |acc, &l| acc * n + (l as usize - 1))
    }

    /// Inverse of [`GraphParams::index_of`].
    pub fn word_at(&self, mut index: usize) -> Word {
        let n = self.n as usize;
        let mut labels = vec![0u32; self.word_len()];
        for slot in labels.iter_mut().rev() {
            *slot = (index % n) as u32 + 1;
            index /= n;
        }
        Word::from_labels_unchecked(labels)
    }

    /// Odometer enumeration of all `n^t` words in lexicographic order.
    pub fn words(&self, limits: &Limits) -> Result<Words> {
        self.vertex_count_within(limits)?;
        Ok(Words {
            n: self.n,
            next: Some(vec![1; self.word_len()]),
        })
    }
}

/// Odometer over `[n]^t`, see [`GraphParams::words`].
#[derive(Debug, Clone)]
pub struct Words {
    n: u32,
    next: Option<Vec<u32>>,
}

impl Iterator for Words {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut advanced = false;
        for slot in succ.iter_mut().rev() {
            if *slot < self.n {
                *slot += 1;
                advanced = true;
                break;
            }
            *slot = 1;
        }
        if advanced {
            self.next = Some(succ);
        }
        Some(Word::from_labels_unchecked(current))
    }
}

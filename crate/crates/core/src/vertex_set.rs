use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{GraphParams, Word};

/// A sorted, duplicate-free set of vertices of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    params: GraphParams,
    members: Vec<Word>,
}

impl VertexSet {
    /// Validates, sorts, and rejects duplicates.
    pub fn new(params: GraphParams, mut members: Vec<Word>) -> Result<Self> {
        for w in &members {
            params.check(w)?;
        }
        members.sort_unstable();
        if let Some(dup) = members.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::InvalidWord(format!("duplicate member {}", dup[0])));
        }
        Ok(VertexSet { params, members })
    }

    /// Sorts and deduplicates; members must already be valid for `params`.
    pub(crate) fn from_words(params: GraphParams, mut members: Vec<Word>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet { params, members }
    }

    pub(crate) fn from_sorted_unchecked(params: GraphParams, members: Vec<Word>) -> Self {
        debug_assert!(members.windows(2).all(|p| p[0] < p[1]));
        VertexSet { params, members }
    }

    pub fn empty(params: GraphParams) -> Self {
        VertexSet {
            params,
            members: Vec::new(),
        }
    }

    pub fn params(&self) -> GraphParams {
        self.params
    }

    pub fn members(&self) -> &[Word] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.binary_search(w).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Word> {
        self.members.iter()
    }

    /// Copy of the set without `w` (no-op when absent).
    pub fn without(&self, w: &Word) -> VertexSet {
        let members = self.members.iter().filter(|m| *m != w).cloned().collect();
        VertexSet::from_sorted_unchecked(self.params, members)
    }

    pub fn into_members(self) -> Vec<Word> {
        self.members
    }

    pub fn to_json(&self, kind: SetKind) -> String {
        let doc = VertexSetDoc {
            n: self.params.n(),
            t: self.params.t(),
            kind,
            members: self.members.clone(),
        };
        crate::json::to_sorted_string(&doc)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a Word;
    type IntoIter = std::slice::Iter<'a, Word>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetKind {
    #[serde(rename = "D")]
    D,
    #[serde(rename = "D_star")]
    DStar,
}

/// On-disk form of a vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSetDoc {
    pub n: u32,
    pub t: u32,
    pub kind: SetKind,
    pub members: Vec<Word>,
}

impl VertexSetDoc {
    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn into_set(self) -> Result<(VertexSet, SetKind)> {
        let params = GraphParams::new(self.n, self.t)?;
        Ok((VertexSet::new(params, self.members)?, self.kind))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(list: &[&str]) -> Vec<Word> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn new_sorts_and_rejects_duplicates() {
        let g = GraphParams::new(3, 2).unwrap();
        let s = VertexSet::new(g, words(&["3.1", "1.1", "2.1"])).unwrap();
        assert_eq!(s.members(), &words(&["1.1", "2.1", "3.1"])[..]);
        assert!(VertexSet::new(g, words(&["1.1", "1.1"])).is_err());
        assert!(VertexSet::new(g, words(&["1.4"])).is_err());
    }

    #[test]
    fn json_has_sorted_keys_and_parses_back() {
        let g = GraphParams::new(2, 2).unwrap();
        let s = VertexSet::new(g, words(&["2.1", "1.1"])).unwrap();
        let json = s.to_json(SetKind::D);
        assert_eq!(json, r#"{"kind":"D","members":["1.1","2.1"],"n":2,"t":2}"#);
        let (back, kind) = VertexSetDoc::parse(&json).unwrap().into_set().unwrap();
        assert_eq!(back, s);
        assert_eq!(kind, SetKind::D);
    }
}

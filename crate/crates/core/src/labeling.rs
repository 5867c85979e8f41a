use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{GraphParams, Limits, Word};

/// Which family of dominating functions a labeling belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Values in `{0, 1, 2}`.
    Roman,
    /// Values in `{0, 1, 2, 3}`.
    DoubleRoman,
}

impl Mode {
    pub fn max_value(self) -> u8 {
        match self {
            Mode::Roman => 2,
            Mode::DoubleRoman => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Roman => "roman",
            Mode::DoubleRoman => "double_roman",
        }
    }
}

/// A total map from vertices to small integers, stored sparsely: words not
/// listed carry 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    params: GraphParams,
    mode: Mode,
    values: BTreeMap<Word, u8>,
    weight: u64,
}

impl Labeling {
    /// The all-zero labeling.
    pub fn new(params: GraphParams, mode: Mode) -> Self {
        Labeling {
            params,
            mode,
            values: BTreeMap::new(),
            weight: 0,
        }
    }

    /// Every vertex labeled `value`; bounded by the vertex cap.
    pub fn constant(params: GraphParams, mode: Mode, value: u8, limits: &Limits) -> Result<Self> {
        let mut f = Labeling::new(params, mode);
        for w in params.words(limits)? {
            f.set(w, value)?;
        }
        Ok(f)
    }

    pub fn params(&self) -> GraphParams {
        self.params
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Assigns `value` to `w`; assigning 0 removes the entry.
    pub fn set(&mut self, w: Word, value: u8) -> Result<()> {
        self.params.check(&w)?;
        if value > self.mode.max_value() {
            return Err(Error::InvalidValue {
                value,
                mode: self.mode.name(),
            });
        }
        let old = if value == 0 {
            self.values.remove(&w)
        } else {
            self.values.insert(w, value)
        };
        self.weight = self.weight - old.unwrap_or(0) as u64 + value as u64;
        Ok(())
    }

    pub fn get(&self, w: &Word) -> u8 {
        self.values.get(w).copied().unwrap_or(0)
    }

    /// Sum of all values.
    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// Nonzero entries in lexicographic order.
    pub fn nonzero(&self) -> impl Iterator<Item = (&Word, u8)> {
        self.values.iter().map(|(w, &v)| (w, v))
    }

    /// Words carrying exactly `value` (nonzero values only).
    pub fn preimage(&self, value: u8) -> Vec<Word> {
        self.values
            .iter()
            .filter(|(_, &v)| v == value)
            .map(|(w, _)| w.clone())
            .collect()
    }

    pub fn to_doc(&self) -> LabelingDoc {
        LabelingDoc {
            n: self.params.n(),
            t: self.params.t(),
            mode: self.mode,
            weight: self.weight,
            assignments: self
                .values
                .iter()
                .map(|(w, &v)| (w.to_string(), v))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        crate::json::to_sorted_string(&self.to_doc())
    }
}

/// On-disk form of a labeling: nonzero assignments only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelingDoc {
    pub n: u32,
    pub t: u32,
    pub mode: Mode,
    pub weight: u64,
    pub assignments: BTreeMap<String, u8>,
}

impl LabelingDoc {
    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Rebuilds the labeling; a stated weight that disagrees with the
    /// assignments is rejected.
    pub fn into_labeling(self) -> Result<Labeling> {
        let params = GraphParams::new(self.n, self.t)?;
        let mut f = Labeling::new(params, self.mode);
        for (key, value) in self.assignments {
            if value == 0 {
                return Err(Error::Parse(format!("explicit zero for {key}")));
            }
            f.set(params.parse_word(&key)?, value)?;
        }
        if f.weight() != self.weight {
            return Err(Error::Parse(format!(
                "stated weight {} but assignments sum to {}",
                self.weight,
                f.weight()
            )));
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_tracks_updates() {
        let g = GraphParams::new(2, 2).unwrap();
        let mut f = Labeling::new(g, Mode::DoubleRoman);
        f.set("1.2".parse().unwrap(), 3).unwrap();
        f.set("2.2".parse().unwrap(), 2).unwrap();
        assert_eq!(f.weight(), 5);
        f.set("1.2".parse().unwrap(), 1).unwrap();
        assert_eq!(f.weight(), 3);
        f.set("2.2".parse().unwrap(), 0).unwrap();
        assert_eq!(f.weight(), 1);
        assert_eq!(f.nonzero().count(), 1);
    }

    #[test]
    fn rejects_out_of_range_values() {
        let g = GraphParams::new(2, 2).unwrap();
        let mut f = Labeling::new(g, Mode::Roman);
        assert!(matches!(
            f.set("1.1".parse().unwrap(), 3),
            Err(Error::InvalidValue { value: 3, .. })
        ));
        assert!(f.set("1.3".parse().unwrap(), 1).is_err());
    }

    #[test]
    fn json_round_trip_and_weight_check() {
        let g = GraphParams::new(2, 2).unwrap();
        let mut f = Labeling::new(g, Mode::Roman);
        f.set("2.1".parse().unwrap(), 2).unwrap();
        f.set("1.1".parse().unwrap(), 1).unwrap();
        let json = f.to_json();
        assert_eq!(
            json,
            r#"{"assignments":{"1.1":1,"2.1":2},"mode":"roman","n":2,"t":2,"weight":3}"#
        );
        assert_eq!(
            LabelingDoc::parse(&json).unwrap().into_labeling().unwrap(),
            f
        );
        let tampered = json.replace("\"weight\":3", "\"weight\":4");
        assert!(LabelingDoc::parse(&tampered)
            .unwrap()
            .into_labeling()
            .is_err());
    }
}

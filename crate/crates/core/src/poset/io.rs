//! The poset file: one JSON document with `elements`, `covers`, and optional
//! `ranks` and `weights`.

use num::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Partition, Poset, WeightFunction};
use crate::error::{Error, Result};
use crate::json;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPosetFile {
    elements: Vec<String>,
    covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ranks: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<Vec<Value>>>,
}

/// A poset together with an optional weight function, as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetFile {
    pub poset: Poset,
    pub weights: Option<WeightFunction>,
}

impl PosetFile {
    pub fn new(poset: Poset, weights: Option<WeightFunction>) -> Self {
        Self { poset, weights }
    }

    pub fn to_json(&self) -> String {
        let raw = RawPosetFile {
            elements: self.poset.labels().to_vec(),
            covers: self.poset.covers().iter().map(|&(i, j)| [i, j]).collect(),
            ranks: self.poset.ranks().map(<[usize]>::to_vec),
            weights: self.weights.as_ref().map(|w| {
                w.as_slice()
                    .iter()
                    .map(|r| json::rational_pair(r).to_vec())
                    .collect()
            }),
        };
        let mut s = serde_json::to_string(&raw).expect("poset files serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawPosetFile =
            serde_json::from_str(text).map_err(|e| Error::Schema(format!("poset file: {e}")))?;
        let n = raw.elements.len();
        let covers: Vec<(usize, usize)> = raw.covers.iter().map(|&[i, j]| (i, j)).collect();
        let mut poset = Poset::from_covers(raw.elements, &covers).map_err(|e| match e {
            Error::Structural(s) => Error::Schema(format!("covers: {s}")),
            other => other,
        })?;
        if raw.ranks.is_some() {
            poset = poset
                .with_ranks(raw.ranks)
                .map_err(|e| Error::Schema(format!("ranks: {e}")))?;
        }
        let weights = match raw.weights {
            None => None,
            Some(ws) => {
                if ws.len() != n {
                    return Err(Error::Schema(format!(
                        "weights: {} entries for {n} elements",
                        ws.len()
                    )));
                }
                let parsed = ws
                    .iter()
                    .enumerate()
                    .map(|(i, pair)| json::pair_rational(pair, &format!("weights[{i}]")))
                    .collect::<Result<Vec<BigRational>>>()?;
                let w = WeightFunction::new(parsed);
                w.validate(&poset).map_err(|e| Error::Schema(format!("weights: {e}")))?;
                Some(w)
            }
        };
        Ok(Self { poset, weights })
    }
}

/// A standalone weight file: a JSON array of `[numerator, denominator]`.
pub fn weights_to_json(weights: &WeightFunction) -> String {
    let pairs: Vec<Value> = weights
        .as_slice()
        .iter()
        .map(|r| Value::Array(json::rational_pair(r).to_vec()))
        .collect();
    let mut s = serde_json::to_string(&pairs).expect("weights serialize");
    s.push('\n');
    s
}

pub fn weights_from_json(text: &str) -> Result<WeightFunction> {
    let raw: Vec<Vec<Value>> =
        serde_json::from_str(text).map_err(|e| Error::Schema(format!("weights file: {e}")))?;
    let parsed = raw
        .iter()
        .enumerate()
        .map(|(i, pair)| json::pair_rational(pair, &format!("weights[{i}]")))
        .collect::<Result<Vec<BigRational>>>()?;
    Ok(WeightFunction::new(parsed))
}

/// Orbits as `{"orbits":[[…],…]}`.
pub fn partition_to_json(partition: &Partition) -> String {
    let mut s = serde_json::to_string(&serde_json::json!({ "orbits": partition.blocks() }))
        .expect("partitions serialize");
    s.push('\n');
    s
}

pub fn partition_from_json(text: &str, universe: usize) -> Result<Partition> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        orbits: Vec<Vec<usize>>,
    }
    let raw: Raw =
        serde_json::from_str(text).map_err(|e| Error::Schema(format!("orbit file: {e}")))?;
    Partition::new(raw.orbits, universe).map_err(|e| Error::Schema(format!("orbit file: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let p = Poset::from_covers(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let (q, w) = p.quotient(&Partition::new(vec![vec![0], vec![1, 2], vec![3]], 4).unwrap()).unwrap();
        for file in [PosetFile::new(p, None), PosetFile::new(q, Some(w))] {
            let text = file.to_json();
            let back = PosetFile::from_json(&text).unwrap();
            assert_eq!(back, file);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn huge_weights_survive() {
        let big: BigRational = "123456789012345678901234567890/7".parse().unwrap();
        let file = PosetFile::new(Poset::chain(1), Some(WeightFunction::new(vec![big])));
        assert_eq!(PosetFile::from_json(&file.to_json()).unwrap(), file);
    }

    #[test]
    fn weight_and_orbit_files() {
        let w = WeightFunction::new(vec![BigRational::new(3.into(), 4.into()), BigRational::from_integer(2.into())]);
        let text = weights_to_json(&w);
        assert_eq!(text, "[[3,4],[2,1]]\n");
        assert_eq!(weights_from_json(&text).unwrap(), w);
        let part = Partition::new(vec![vec![0], vec![1, 2]], 3).unwrap();
        let text = partition_to_json(&part);
        assert_eq!(partition_from_json(&text, 3).unwrap(), part);
        assert!(matches!(partition_from_json(&text, 2), Err(Error::Schema(_))));
        assert!(matches!(weights_from_json("[[1]]"), Err(Error::Schema(_))));
    }

    #[test]
    fn schema_errors() {
        for bad in [
            "{",
            r#"{"elements":["a"]}"#,
            r#"{"elements":["a","b"],"covers":[[0,1],[1,0]]}"#,
            r#"{"elements":["a","b"],"covers":[[0,1]],"ranks":[0,0]}"#,
            r#"{"elements":["a"],"covers":[],"weights":[[1,0]]}"#,
            r#"{"elements":["a"],"covers":[],"extra":1}"#,
        ] {
            assert!(matches!(PosetFile::from_json(bad), Err(Error::Schema(_))), "{bad}");
        }
    }
}

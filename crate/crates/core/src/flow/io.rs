//! JSON forms of certificates and witnesses.
//!
//! Certificate: `{"layers":[{"rank":i,"edges":[[x,y,num,den],…]},…]}`.
//! Witness: `{"kind":…, …, "comparison":{"lhs":[n,d],"rhs":[n,d]}}` where the
//! comparison `lhs > rhs` is the inequality the witness establishes.

use num::{BigRational, ToPrimitive};
use serde_json::{json, Map, Value};

use super::antichain::AntichainWitness;
use super::{CutWitness, FlowCertificate, FlowLayer};
use crate::error::{Error, Result};
use crate::json::{int_value, pair_rational, rational_pair};
use crate::poset::{Poset, RankConflict, WeightFunction};

impl FlowCertificate {
    pub fn to_json_value(&self) -> Value {
        let layers: Vec<Value> = self
            .layers
            .iter()
            .map(|l| {
                let edges: Vec<Value> = l
                    .edges
                    .iter()
                    .map(|(x, y, f)| {
                        json!([x, y, int_value(f.numer()), int_value(f.denom())])
                    })
                    .collect();
                json!({"rank": l.rank, "edges": edges})
            })
            .collect();
        json!({ "layers": layers })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(&self.to_json_value()).expect("certificates serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::Schema(format!("certificate: {e}")))?;
        let obj = as_object(&v, "certificate")?;
        only_keys(obj, &["layers"], "certificate")?;
        let layers = obj
            .get("layers")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema("certificate: missing layers array".to_string()))?;
        let layers = layers
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let what = format!("layers[{i}]");
                let o = as_object(l, &what)?;
                only_keys(o, &["rank", "edges"], &what)?;
                let rank = index(o.get("rank"), &format!("{what}.rank"))?;
                let edges = o
                    .get("edges")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Schema(format!("{what}: missing edges array")))?
                    .iter()
                    .enumerate()
                    .map(|(j, e)| {
                        let what = format!("{what}.edges[{j}]");
                        let a = e
                            .as_array()
                            .filter(|a| a.len() == 4)
                            .ok_or_else(|| Error::Schema(format!("{what}: expected [x, y, num, den]")))?;
                        Ok((
                            index(Some(&a[0]), &what)?,
                            index(Some(&a[1]), &what)?,
                            pair_rational(&a[2..], &what)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(FlowLayer { rank, edges })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { layers })
    }
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Schema(format!("{what}: expected an object")))
}

fn only_keys(o: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<()> {
    match o.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::Schema(format!("{what}: unknown field {k}"))),
        None => Ok(()),
    }
}

fn index(v: Option<&Value>, what: &str) -> Result<usize> {
    v.and_then(Value::as_u64)
        .and_then(|x| x.to_usize())
        .ok_or_else(|| Error::Schema(format!("{what}: expected a nonnegative integer")))
}

fn indices(v: Option<&Value>, what: &str) -> Result<Vec<usize>> {
    v.and_then(Value::as_array)
        .ok_or_else(|| Error::Schema(format!("{what}: expected an array")))?
        .iter()
        .map(|x| index(Some(x), what))
        .collect()
}

fn ratio(n: usize) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Evidence against a flow, against the Sperner property, or against
/// rankedness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A Hall violation in one layer: no normalized flow exists.
    Cut(CutWitness),
    /// An antichain larger than every rank.
    Antichain {
        antichain: AntichainWitness,
        largest_rank: usize,
    },
    /// A union of `k` antichains larger than the `k` largest ranks together.
    KFamily {
        k: usize,
        elements: Vec<usize>,
        bound: usize,
    },
    /// Two cover paths of different lengths from the minimum.
    RankConflict(RankConflict),
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::Cut(_) => "cut",
            Witness::Antichain { .. } => "antichain",
            Witness::KFamily { .. } => "k-family",
            Witness::RankConflict(_) => "rank-conflict",
        }
    }

    /// The two sides of the strict inequality the witness establishes.
    pub fn comparison(&self) -> (BigRational, BigRational) {
        match self {
            Witness::Cut(c) => (c.lhs.clone(), c.rhs.clone()),
            Witness::Antichain {
                antichain,
                largest_rank,
            } => (ratio(antichain.len()), ratio(*largest_rank)),
            Witness::KFamily { elements, bound, .. } => (ratio(elements.len()), ratio(*bound)),
            Witness::RankConflict(r) => (
                ratio(r.second_path.len() - 1),
                ratio(r.first_path.len() - 1),
            ),
        }
    }

    pub fn to_json_value(&self) -> Value {
        let mut o = Map::new();
        o.insert("kind".into(), json!(self.kind()));
        match self {
            Witness::Cut(c) => {
                o.insert("rank".into(), json!(c.rank));
                o.insert("subset".into(), json!(c.subset));
                o.insert("neighborhood".into(), json!(c.neighborhood));
            }
            Witness::Antichain { antichain, .. } => {
                o.insert("elements".into(), json!(antichain.elements));
            }
            Witness::KFamily { k, elements, .. } => {
                o.insert("k".into(), json!(k));
                o.insert("elements".into(), json!(elements));
            }
            Witness::RankConflict(r) => {
                o.insert("element".into(), json!(r.element));
                o.insert("paths".into(), json!([r.first_path, r.second_path]));
            }
        }
        let (lhs, rhs) = self.comparison();
        o.insert(
            "comparison".into(),
            json!({"lhs": rational_pair(&lhs), "rhs": rational_pair(&rhs)}),
        );
        Value::Object(o)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(&self.to_json_value()).expect("witnesses serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::Schema(format!("witness: {e}")))?;
        let o = as_object(&v, "witness")?;
        let cmp = as_object(
            o.get("comparison")
                .ok_or_else(|| Error::Schema("witness: missing comparison".to_string()))?,
            "comparison",
        )?;
        let side = |k: &str| -> Result<BigRational> {
            let a = cmp
                .get(k)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Schema(format!("comparison.{k}: expected [num, den]")))?;
            pair_rational(a, &format!("comparison.{k}"))
        };
        let (lhs, rhs) = (side("lhs")?, side("rhs")?);
        let whole = |r: &BigRational, what: &str| -> Result<usize> {
            r.is_integer()
                .then(|| r.to_integer().to_usize())
                .flatten()
                .ok_or_else(|| Error::Schema(format!("comparison.{what}: expected a count")))
        };
        let kind = o.get("kind").and_then(Value::as_str).unwrap_or_default();
        let w = match kind {
            "cut" => {
                only_keys(o, &["kind", "rank", "subset", "neighborhood", "comparison"], "witness")?;
                Witness::Cut(CutWitness {
                    rank: index(o.get("rank"), "rank")?,
                    subset: indices(o.get("subset"), "subset")?,
                    neighborhood: indices(o.get("neighborhood"), "neighborhood")?,
                    lhs: lhs.clone(),
                    rhs: rhs.clone(),
                })
            }
            "antichain" => {
                only_keys(o, &["kind", "elements", "comparison"], "witness")?;
                Witness::Antichain {
                    antichain: AntichainWitness {
                        elements: indices(o.get("elements"), "elements")?,
                    },
                    largest_rank: whole(&rhs, "rhs")?,
                }
            }
            "k-family" => {
                only_keys(o, &["kind", "k", "elements", "comparison"], "witness")?;
                Witness::KFamily {
                    k: index(o.get("k"), "k")?,
                    elements: indices(o.get("elements"), "elements")?,
                    bound: whole(&rhs, "rhs")?,
                }
            }
            "rank-conflict" => {
                only_keys(o, &["kind", "element", "paths", "comparison"], "witness")?;
                let paths = o
                    .get("paths")
                    .and_then(Value::as_array)
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::Schema("paths: expected two paths".to_string()))?;
                Witness::RankConflict(RankConflict {
                    element: index(o.get("element"), "element")?,
                    first_path: indices(Some(&paths[0]), "paths")?,
                    second_path: indices(Some(&paths[1]), "paths")?,
                })
            }
            other => return Err(Error::Schema(format!("witness: unknown kind {other:?}"))),
        };
        if w.comparison() != (lhs, rhs) {
            return Err(Error::Schema("witness: comparison does not match its data".to_string()));
        }
        Ok(w)
    }

    /// Re-checks the witness against `poset` from scratch.
    pub fn verify(&self, poset: &Poset, weights: &WeightFunction) -> bool {
        match self {
            Witness::Cut(c) => c.verify(poset, weights),
            Witness::Antichain {
                antichain,
                largest_rank,
            } => {
                let Ok(sizes) = poset.rank_sizes() else {
                    return false;
                };
                antichain.verify(poset)
                    && sizes.iter().max() == Some(largest_rank)
                    && antichain.len() > *largest_rank
            }
            Witness::KFamily { k, elements, bound } => {
                let Ok(mut sizes) = poset.rank_sizes() else {
                    return false;
                };
                sizes.sort_unstable_by(|a, b| b.cmp(a));
                let top: usize = sizes.iter().take(*k).sum();
                if top != *bound || elements.len() <= top {
                    return false;
                }
                if !elements.windows(2).all(|w| w[0] < w[1])
                    || elements.iter().any(|&x| x >= poset.len())
                {
                    return false;
                }
                // longest chain inside the family
                let up = poset.closure();
                let order = poset.linear_extension();
                let mut inside = vec![false; poset.len()];
                elements.iter().for_each(|&x| inside[x] = true);
                let mut longest = vec![0usize; poset.len()];
                for &x in order.iter().rev() {
                    if inside[x] {
                        longest[x] = 1 + up[x].ones().map(|y| longest[y]).max().unwrap_or(0);
                    } else {
                        longest[x] = up[x].ones().map(|y| longest[y]).max().unwrap_or(0);
                    }
                }
                longest.iter().all(|&l| l <= *k)
            }
            Witness::RankConflict(r) => {
                let path_ok = |p: &[usize]| {
                    !p.is_empty()
                        && p.iter().all(|&x| x < poset.len())
                        && poset.lower_covers(p[0]).is_empty()
                        && p.last() == Some(&r.element)
                        && p.windows(2).all(|w| poset.upper_covers(w[0]).binary_search(&w[1]).is_ok())
                };
                path_ok(&r.first_path)
                    && path_ok(&r.second_path)
                    && r.first_path[0] == r.second_path[0]
                    && r.first_path.len() != r.second_path.len()
            }
        }
    }
}

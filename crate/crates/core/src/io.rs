//! File formats: JSON documents for posets, pre-orders, maps, co-relations, lattices
//! and pushouts, and DOT for Hasse diagrams.
//!
//! Posets and pre-orders are written as `{"elements": [...], "pairs": [[x, y], ...]}`
//! with the diagonal left implicit. Loading validates the axioms instead of closing
//! the relation, so a file must list every non-diagonal pair.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{BitSet, Relation};
use crate::constructions::{coproduct_relation, PushoutResult, Tag};
use crate::corelation::{CoRelation, CoRelationError, Tagged};
use crate::duality::{BoundedLattice, DistLattice, LatticeError};
use crate::order::{covering_relation, Carrier, CarrierError, MapError, MonotoneMap, Poset, Preorder};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Carrier(#[from] CarrierError),
    #[error("unknown element {0:?}")]
    UnknownLabel(String),
    #[error("invalid order: {axiom} ({detail})")]
    Order { axiom: &'static str, detail: String },
    #[error("map has no image for {0:?}")]
    MissingImage(String),
    #[error("map entry for {0:?} is not in the domain")]
    ExtraImage(String),
    #[error("invalid map: {detail}")]
    Map { detail: String },
    #[error("invalid co-relation: {0}")]
    CoRelation(#[from] CoRelationError),
    #[error("invalid lattice: {0}")]
    Lattice(#[from] LatticeError),
    #[error("tag must be 0 or 1, got {0}")]
    BadTag(u8),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreorderJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub pairs: Vec<(String, String)>,
}

impl PreorderJson {
    pub fn from_preorder(p: &Preorder) -> Self {
        let c = p.carrier();
        PreorderJson {
            elements: c.labels().to_vec(),
            pairs: p
                .relation()
                .pairs()
                .filter(|(i, j)| i != j)
                .map(|(i, j)| (c.label(i).to_string(), c.label(j).to_string()))
                .collect(),
        }
    }

    fn relation(&self) -> Result<(Carrier, Relation), IoError> {
        let carrier = Carrier::new(self.elements.iter().cloned())?;
        let mut rel = Relation::identity(carrier.len());
        for (a, b) in &self.pairs {
            rel.insert(lookup(&carrier, a)?, lookup(&carrier, b)?);
        }
        Ok((carrier, rel))
    }

    pub fn to_preorder(&self) -> Result<Preorder, IoError> {
        let (carrier, rel) = self.relation()?;
        Preorder::new(carrier.clone(), rel).map_err(|v| IoError::Order { axiom: v.axiom(), detail: v.render(&carrier) })
    }

    pub fn to_poset(&self) -> Result<Poset, IoError> {
        let (carrier, rel) = self.relation()?;
        Poset::new(carrier.clone(), rel).map_err(|v| IoError::Order { axiom: v.axiom(), detail: v.render(&carrier) })
    }
}

fn lookup(c: &Carrier, label: &str) -> Result<usize, IoError> {
    c.index_of(label).ok_or_else(|| IoError::UnknownLabel(label.to_string()))
}

pub fn poset_json(p: &Poset) -> PreorderJson {
    PreorderJson::from_preorder(p.preorder())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub dom: PreorderJson,
    pub cod: PreorderJson,
    pub map: BTreeMap<String, String>,
}

impl MapJson {
    pub fn from_map(f: &MonotoneMap) -> Self {
        MapJson {
            dom: PreorderJson::from_preorder(f.dom()),
            cod: PreorderJson::from_preorder(f.cod()),
            map: table_json(f),
        }
    }

    /// Loads a monotone map between posets.
    pub fn to_map(&self) -> Result<MonotoneMap, IoError> {
        let dom = self.dom.to_poset()?;
        let cod = self.cod.to_poset()?;
        if let Some(extra) = self.map.keys().find(|k| dom.carrier().index_of(k).is_none()) {
            return Err(IoError::ExtraImage(extra.clone()));
        }
        let table = dom
            .carrier()
            .labels()
            .iter()
            .map(|l| {
                let target = self.map.get(l).ok_or_else(|| IoError::MissingImage(l.clone()))?;
                lookup(cod.carrier(), target)
            })
            .collect::<Result<Vec<_>, _>>()?;
        MonotoneMap::new(dom.clone(), cod.clone(), table).map_err(|e| IoError::Map { detail: render_map_error(&e, &dom, &cod) })
    }
}

fn render_map_error(e: &MapError, dom: &Poset, _cod: &Poset) -> String {
    match *e {
        MapError::NotMonotone { x, y } => {
            let (a, b) = (dom.carrier().label(x), dom.carrier().label(y));
            format!("not monotone: {a} <= {b} but f({a}) is not below f({b})")
        }
        ref other => other.to_string(),
    }
}

fn table_json(f: &MonotoneMap) -> BTreeMap<String, String> {
    f.table()
        .iter()
        .enumerate()
        .map(|(x, &y)| (f.dom().carrier().label(x).to_string(), f.cod().carrier().label(y).to_string()))
        .collect()
}

/// `[label, tag]`.
pub type TaggedJson = (String, u8);

fn tagged_json(c: &Carrier, t: Tagged) -> TaggedJson {
    (c.label(t.point).to_string(), t.tag.index() as u8)
}

/// A co-relation: its base poset and the pairs beyond the coproduct order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoRelationJson {
    pub base: PreorderJson,
    #[serde(default)]
    pub pairs: Vec<(TaggedJson, TaggedJson)>,
}

impl CoRelationJson {
    pub fn from_corelation(c: &CoRelation) -> Self {
        let base = c.base();
        let cop = coproduct_relation(base.relation(), base.relation());
        let tc = c.tagged();
        let pairs = c
            .relation()
            .pairs()
            .filter(|&(u, v)| !cop.contains(u, v))
            .map(|(u, v)| {
                let ((x, i), (y, j)) = (tc.split(u), tc.split(v));
                (tagged_json(base.carrier(), Tagged::new(x, i)), tagged_json(base.carrier(), Tagged::new(y, j)))
            })
            .collect();
        CoRelationJson { base: poset_json(base), pairs }
    }

    /// The listed pairs are added to the coproduct order; the result must already be transitive.
    pub fn to_corelation(&self) -> Result<CoRelation, IoError> {
        let base = self.base.to_poset()?;
        let n = base.len();
        let mut rel = coproduct_relation(base.relation(), base.relation());
        let idx = |(label, tag): &TaggedJson| -> Result<usize, IoError> {
            let x = lookup(base.carrier(), label)?;
            let t = Tag::from_index(*tag as usize).ok_or(IoError::BadTag(*tag))?;
            Ok(t.index() * n + x)
        };
        for (a, b) in &self.pairs {
            rel.insert(idx(a)?, idx(b)?);
        }
        Ok(CoRelation::new(base, rel)?)
    }
}

pub fn subset_labels(c: &Carrier, s: &BitSet) -> Vec<String> {
    s.iter().map(|i| c.label(i).to_string()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub pairs: Vec<(String, String)>,
    pub bot: String,
    pub top: String,
}

impl LatticeJson {
    pub fn from_lattice(l: &BoundedLattice) -> Self {
        let p = poset_json(l.order());
        let c = l.order().carrier();
        LatticeJson { elements: p.elements, pairs: p.pairs, bot: c.label(l.bot()).into(), top: c.label(l.top()).into() }
    }

    /// Recomputes meet and join from the order and checks the designated extremes.
    pub fn to_lattice(&self) -> Result<BoundedLattice, IoError> {
        let order = PreorderJson { elements: self.elements.clone(), pairs: self.pairs.clone() }.to_poset()?;
        let l = BoundedLattice::from_poset(order)?;
        let c = l.order().carrier();
        let (bot, top) = (lookup(c, &self.bot)?, lookup(c, &self.top)?);
        if bot != l.bot() {
            return Err(LatticeError::WrongExtreme { which: "bottom", got: self.bot.clone() }.into());
        }
        if top != l.top() {
            return Err(LatticeError::WrongExtreme { which: "top", got: self.top.clone() }.into());
        }
        Ok(l)
    }

    pub fn to_dist_lattice(&self) -> Result<DistLattice, IoError> {
        Ok(DistLattice::new(self.to_lattice()?)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PushoutJson {
    pub apex: PreorderJson,
    pub ins0: BTreeMap<String, String>,
    pub ins1: BTreeMap<String, String>,
    pub glue_classes: Vec<Vec<TaggedJson>>,
}

impl PushoutJson {
    pub fn from_pushout(po: &PushoutResult) -> Self {
        let (c0, c1) = (po.ins0.dom().carrier(), po.ins1.dom().carrier());
        PushoutJson {
            apex: poset_json(&po.apex),
            ins0: table_json(&po.ins0),
            ins1: table_json(&po.ins1),
            glue_classes: po
                .glue_classes
                .iter()
                .map(|class| {
                    class
                        .iter()
                        .map(|&(tag, w)| {
                            let c = if tag == Tag::Zero { c0 } else { c1 };
                            (c.label(w).to_string(), tag.index() as u8)
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram with edges along covering pairs, drawn bottom to top.
pub fn to_dot(p: &Poset, name: &str) -> String {
    let c = p.carrier();
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n  node [shape=plaintext];\n", dot_quote(name));
    for l in c.labels() {
        out.push_str(&format!("  {};\n", dot_quote(l)));
    }
    for (a, b) in covering_relation(p).pairs() {
        out.push_str(&format!("  {} -> {};\n", dot_quote(c.label(a)), dot_quote(c.label(b))));
    }
    out.push_str("}\n");
    out
}

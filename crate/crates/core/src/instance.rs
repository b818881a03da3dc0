//! JSON instance files: the on-disk description of a product of finite
//! factors, and the conversions between it and [`ProductSpec`].
//!
//! Subsets are written as label arrays sorted lexicographically. A point of
//! the product is written as the array of its coordinate labels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filters::{generate_filter, Filter};
use crate::foundations::{SetFamily, SubsetMask, Universe, DEFAULT_MAX_PRODUCT};
use crate::fproduct::{Factor, ProductSpec};
use crate::topology::Topology;
use crate::uniformity::{Relation, Uniformity};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub index_set: Vec<String>,
    pub factors: Vec<FactorFile>,
    pub index_filter: IndexFilterFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorFile {
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filter: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uniformity_base: Option<Vec<Vec<[String; 2]>>>,
}

/// A filter given by generators (a filter base), or the trivial filter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexFilterFile {
    #[serde(default)]
    pub generators: Vec<Vec<String>>,
    #[serde(default)]
    pub trivial: bool,
}

impl IndexFilterFile {
    pub fn from_filter(universe: &Universe, f: &Filter) -> Self {
        if f.is_trivial() {
            IndexFilterFile { generators: Vec::new(), trivial: true }
        } else {
            IndexFilterFile { generators: vec![universe.labels_of(&f.core())], trivial: false }
        }
    }

    pub fn to_filter(&self, universe: &Universe) -> Result<Filter> {
        if self.trivial {
            return Ok(Filter::trivial(universe.size()));
        }
        if self.generators.is_empty() {
            return Err(Error::input("a filter needs generators or `trivial: true`"));
        }
        generate_filter(&parse_family(universe, &self.generators)?)
    }
}

fn parse_family(universe: &Universe, sets: &[Vec<String>]) -> Result<SetFamily> {
    let masks = sets.iter().map(|s| universe.subset(s)).collect::<Result<Vec<_>>>()?;
    SetFamily::new(universe.size(), masks)
}

fn write_family(universe: &Universe, fam: &SetFamily) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = fam.iter().map(|m| universe.labels_of(m)).collect();
    out.sort();
    out
}

fn parse_relation(universe: &Universe, pairs: &[[String; 2]]) -> Result<Relation> {
    let idx = |l: &str| {
        universe
            .index_of(l)
            .ok_or_else(|| Error::input(format!("unknown element label `{l}`")))
    };
    let pairs = pairs.iter().map(|[a, b]| Ok((idx(a)?, idx(b)?))).collect::<Result<Vec<_>>>()?;
    Relation::from_pairs(universe.size(), pairs)
}

fn write_relation(universe: &Universe, r: &Relation) -> Vec<[String; 2]> {
    let mut out: Vec<[String; 2]> = r
        .pairs()
        .map(|(x, y)| [universe.label(x).to_string(), universe.label(y).to_string()])
        .collect();
    out.sort();
    out
}

impl FactorFile {
    pub fn to_factor(&self) -> Result<Factor> {
        let universe = Universe::new(self.points.iter().cloned())?;
        let mut factor = Factor::bare(universe.clone());
        if let Some(opens) = &self.opens {
            factor.set_topology(Topology::from_base(parse_family(&universe, opens)?)?)?;
        }
        if let Some(gens) = &self.filter {
            factor.set_filter(generate_filter(&parse_family(&universe, gens)?)?)?;
        }
        if let Some(base) = &self.uniformity_base {
            let rels = base.iter().map(|r| parse_relation(&universe, r)).collect::<Result<Vec<_>>>()?;
            factor.set_uniformity(Uniformity::from_relations(universe.size(), rels)?)?;
        }
        Ok(factor)
    }

    pub fn from_factor(f: &Factor) -> Self {
        let u = &f.universe;
        FactorFile {
            points: u.labels().to_vec(),
            opens: f.topology.as_ref().map(|t| write_family(u, t.opens())),
            filter: f.filter.as_ref().map(|fl| write_family(u, &fl.minimal())),
            uniformity_base: f
                .uniformity
                .as_ref()
                .map(|un| un.base_relations().iter().map(|r| write_relation(u, r)).collect()),
        }
    }
}

impl InstanceFile {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::input(format!("malformed instance file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files always serialize")
    }

    pub fn to_spec(&self) -> Result<ProductSpec> {
        self.to_spec_with_limit(DEFAULT_MAX_PRODUCT)
    }

    pub fn to_spec_with_limit(&self, max_product: usize) -> Result<ProductSpec> {
        let index_universe = Universe::new(self.index_set.iter().cloned())?;
        let factors = self.factors.iter().map(FactorFile::to_factor).collect::<Result<Vec<_>>>()?;
        let index_filter = self.index_filter.to_filter(&index_universe)?;
        ProductSpec::with_limit(index_universe, factors, index_filter, max_product)
    }

    pub fn from_spec(spec: &ProductSpec) -> Self {
        InstanceFile {
            index_set: spec.index_universe().labels().to_vec(),
            factors: spec.factors().iter().map(FactorFile::from_factor).collect(),
            index_filter: IndexFilterFile::from_filter(spec.index_universe(), spec.index_filter()),
        }
    }
}

/// Labels of a product point.
pub fn point_labels(spec: &ProductSpec, code: usize) -> Vec<String> {
    spec.indexing()
        .decode_unchecked(code)
        .iter()
        .zip(spec.factors())
        .map(|(&c, f)| f.universe.label(c).to_string())
        .collect()
}

/// A product subset as a sorted list of points.
pub fn product_subset_labels(spec: &ProductSpec, m: &SubsetMask) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = m.iter().map(|z| point_labels(spec, z)).collect();
    out.sort();
    out
}

pub fn parse_point(spec: &ProductSpec, labels: &[String]) -> Result<usize> {
    let factors = spec.factors();
    if labels.len() != factors.len() {
        return Err(Error::input(format!(
            "point has {} coordinates, product has {} factors",
            labels.len(),
            factors.len()
        )));
    }
    let coords = labels
        .iter()
        .zip(factors)
        .map(|(l, f)| {
            f.universe
                .index_of(l)
                .ok_or_else(|| Error::input(format!("unknown coordinate label `{l}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    spec.indexing().encode(&coords)
}

pub fn parse_product_subset(spec: &ProductSpec, points: &[Vec<String>]) -> Result<SubsetMask> {
    let codes = points.iter().map(|p| parse_point(spec, p)).collect::<Result<Vec<_>>>()?;
    Ok(SubsetMask::from_indices(spec.indexing().total(), codes))
}

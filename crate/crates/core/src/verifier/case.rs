//! A single verification instance and its round trip through witness files.

use crate::error::{Error, Result};
use crate::filters::{generate_filter, Filter};
use crate::foundations::{ProductIndexing, SetFamily, SubsetMask, Universe};
use crate::instance::{FactorFile, IndexFilterFile, InstanceFile};
use crate::topology::Topology;
use crate::uniformity::Uniformity;

use super::report::{ProductFilterFile, Witness, WitnessParams};

#[derive(Debug, Clone)]
pub enum FactorData {
    None,
    Topologies(Vec<Topology>),
    Filters(Vec<Filter>),
    Uniformities(Vec<Uniformity>),
}

#[derive(Debug, Clone)]
pub struct Case {
    pub index_size: usize,
    pub factors: FactorData,
    pub index_filter: Filter,
    pub index_family: Option<SetFamily>,
    pub other_filter: Option<Filter>,
    pub product_filter: Option<Filter>,
}

impl Case {
    pub fn new(index_size: usize, factors: FactorData, index_filter: Filter) -> Self {
        Case { index_size, factors, index_filter, index_family: None, other_filter: None, product_filter: None }
    }

    pub fn factor_sizes(&self) -> Vec<usize> {
        match &self.factors {
            FactorData::None => Vec::new(),
            FactorData::Topologies(t) => t.iter().map(Topology::universe_size).collect(),
            FactorData::Filters(f) => f.iter().map(Filter::universe_size).collect(),
            FactorData::Uniformities(u) => u.iter().map(Uniformity::universe_size).collect(),
        }
    }

    pub fn indexing(&self) -> Result<ProductIndexing> {
        ProductIndexing::new(self.factor_sizes())
    }

    pub fn topologies(&self) -> Result<Vec<&Topology>> {
        match &self.factors {
            FactorData::Topologies(t) => Ok(t.iter().collect()),
            _ => Err(Error::input("instance has no factor topologies")),
        }
    }

    pub fn filters(&self) -> Result<Vec<&Filter>> {
        match &self.factors {
            FactorData::Filters(f) => Ok(f.iter().collect()),
            _ => Err(Error::input("instance has no factor filters")),
        }
    }

    pub fn uniformities(&self) -> Result<Vec<&Uniformity>> {
        match &self.factors {
            FactorData::Uniformities(u) => Ok(u.iter().collect()),
            _ => Err(Error::input("instance has no factor uniformities")),
        }
    }

    pub fn to_witness(&self, part: &str, detail: String) -> Witness {
        let index = Universe::indices_from_one(self.index_size).expect("index sizes are small");
        let factor_files = match &self.factors {
            FactorData::None => Vec::new(),
            FactorData::Topologies(ts) => ts
                .iter()
                .map(|t| {
                    let u = Universe::numbered(t.universe_size()).expect("small");
                    FactorFile {
                        points: u.labels().to_vec(),
                        opens: Some(sorted_labels(&u, t.opens())),
                        filter: None,
                        uniformity_base: None,
                    }
                })
                .collect(),
            FactorData::Filters(fs) => fs
                .iter()
                .map(|f| {
                    let u = Universe::numbered(f.universe_size()).expect("small");
                    FactorFile {
                        points: u.labels().to_vec(),
                        opens: None,
                        filter: Some(sorted_labels(&u, &f.minimal())),
                        uniformity_base: None,
                    }
                })
                .collect(),
            FactorData::Uniformities(us) => us
                .iter()
                .map(|un| {
                    let u = Universe::numbered(un.universe_size()).expect("small");
                    let base = un
                        .base_relations()
                        .iter()
                        .map(|r| {
                            let mut pairs: Vec<[String; 2]> = r
                                .pairs()
                                .map(|(x, y)| [u.label(x).to_string(), u.label(y).to_string()])
                                .collect();
                            pairs.sort();
                            pairs
                        })
                        .collect();
                    FactorFile { points: u.labels().to_vec(), opens: None, filter: None, uniformity_base: Some(base) }
                })
                .collect(),
        };
        let instance = InstanceFile {
            index_set: index.labels().to_vec(),
            factors: factor_files,
            index_filter: IndexFilterFile::from_filter(&index, &self.index_filter),
        };
        let params = WitnessParams {
            index_family: self.index_family.as_ref().map(|f| sorted_labels(&index, f)),
            other_index_filter: self.other_filter.as_ref().map(|f| IndexFilterFile::from_filter(&index, f)),
            product_filter: self.product_filter.as_ref().map(|g| {
                if g.is_trivial() {
                    ProductFilterFile { generators: Vec::new(), trivial: true }
                } else {
                    let idx = self.indexing().expect("witness instances are small");
                    let mut points: Vec<Vec<String>> = g
                        .core()
                        .iter()
                        .map(|z| idx.decode_unchecked(z).iter().map(|c| c.to_string()).collect())
                        .collect();
                    points.sort();
                    ProductFilterFile { generators: vec![points], trivial: false }
                }
            }),
        };
        Witness { part: part.to_string(), detail, instance, params }
    }

    pub fn from_witness(w: &Witness) -> Result<Case> {
        let file = &w.instance;
        let index = Universe::new(file.index_set.iter().cloned())?;
        let factors = file.factors.iter().map(FactorFile::to_factor).collect::<Result<Vec<_>>>()?;
        let data = if factors.is_empty() {
            FactorData::None
        } else if factors.iter().all(|f| f.topology.is_some()) {
            FactorData::Topologies(factors.iter().map(|f| f.topology.clone().expect("checked")).collect())
        } else if factors.iter().all(|f| f.filter.is_some()) {
            FactorData::Filters(factors.iter().map(|f| f.filter.clone().expect("checked")).collect())
        } else if factors.iter().all(|f| f.uniformity.is_some()) {
            FactorData::Uniformities(factors.iter().map(|f| f.uniformity.clone().expect("checked")).collect())
        } else {
            return Err(Error::input("witness factors must all carry the same kind of structure"));
        };
        let mut case = Case::new(index.size(), data, file.index_filter.to_filter(&index)?);
        if let Some(fam) = &w.params.index_family {
            let masks = fam.iter().map(|s| index.subset(s)).collect::<Result<Vec<_>>>()?;
            case.index_family = Some(SetFamily::new(index.size(), masks)?);
        }
        if let Some(f) = &w.params.other_index_filter {
            case.other_filter = Some(f.to_filter(&index)?);
        }
        if let Some(g) = &w.params.product_filter {
            let idx = case.indexing()?;
            case.product_filter = Some(if g.trivial {
                Filter::trivial(idx.total())
            } else {
                let sets = g
                    .generators
                    .iter()
                    .map(|set| {
                        let codes = set
                            .iter()
                            .map(|p| {
                                let coords = p
                                    .iter()
                                    .zip(&factors)
                                    .map(|(l, f)| {
                                        f.universe
                                            .index_of(l)
                                            .ok_or_else(|| Error::input(format!("unknown coordinate label `{l}`")))
                                    })
                                    .collect::<Result<Vec<_>>>()?;
                                idx.encode(&coords)
                            })
                            .collect::<Result<Vec<_>>>()?;
                        Ok(SubsetMask::from_indices(idx.total(), codes))
                    })
                    .collect::<Result<Vec<_>>>()?;
                generate_filter(&SetFamily::new(idx.total(), sets)?)?
            });
        }
        Ok(case)
    }
}

fn sorted_labels(u: &Universe, fam: &SetFamily) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = fam.iter().map(|m| u.labels_of(m)).collect();
    out.sort();
    out
}

//! Instance grids: which index sizes, factor structures and index filters a
//! verification run sweeps, and the budget it may spend.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filters::{enumerate_filters, Filter};
use crate::foundations::{SetFamily, SubsetMask};
use crate::topology::{enumerate_topologies, Topology};
use crate::uniformity::{validate_uniformity_base, Relation, Uniformity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorPreset {
    Sierpinski,
    Discrete2,
    Discrete3,
    Indiscrete2,
}

impl FactorPreset {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "sierpinski" => Ok(FactorPreset::Sierpinski),
            "discrete2" => Ok(FactorPreset::Discrete2),
            "discrete3" => Ok(FactorPreset::Discrete3),
            "indiscrete2" => Ok(FactorPreset::Indiscrete2),
            other => Err(Error::input(format!(
                "unknown factor preset `{other}` (expected sierpinski, discrete2, discrete3 or indiscrete2)"
            ))),
        }
    }

    pub fn topology(self) -> Topology {
        match self {
            FactorPreset::Sierpinski => Topology::sierpinski(),
            FactorPreset::Discrete2 => Topology::discrete(2),
            FactorPreset::Discrete3 => Topology::discrete(3),
            FactorPreset::Indiscrete2 => Topology::indiscrete(2),
        }
    }

    pub fn uniformity(self) -> Result<Uniformity> {
        match self {
            FactorPreset::Sierpinski => {
                Err(Error::input("the Sierpinski space carries no uniformity inducing it"))
            }
            FactorPreset::Discrete2 => Ok(Uniformity::discrete(2)),
            FactorPreset::Discrete3 => Ok(Uniformity::discrete(3)),
            FactorPreset::Indiscrete2 => Ok(Uniformity::indiscrete(2)),
        }
    }
}

/// Where the per-factor structures come from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum FactorSource {
    /// The run needs no factors.
    Unused,
    /// Every topology on `min_points..=max_points` points.
    AllTopologies { min_points: usize, max_points: usize },
    /// Each factor is one of the listed presets.
    Fixed { presets: Vec<FactorPreset> },
    /// Every proper filter on a `points`-point set.
    AllFilters { points: usize },
    /// Every uniformity base on a `points`-point set.
    AllUniformityBases { points: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum FilterSource {
    /// Every filter on the index set, trivial first.
    All,
    /// Every proper filter on the index set.
    ProperOnly,
    /// Only the principal filter of the given 0-based indexes.
    Principal { indexes: Vec<usize> },
    Trivial,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Caps {
    pub max_instances: Option<u64>,
    pub max_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceGrid {
    pub index_sizes: Vec<usize>,
    pub factors: FactorSource,
    pub filters: FilterSource,
    pub caps: Caps,
    /// When false, instances outside a part's hypothesis are checked anyway.
    pub enforce_hypotheses: bool,
}

impl InstanceGrid {
    pub fn new(index_sizes: Vec<usize>, factors: FactorSource, filters: FilterSource) -> Self {
        InstanceGrid { index_sizes, factors, filters, caps: Caps::default(), enforce_hypotheses: true }
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn ignoring_hypotheses(mut self) -> Self {
        self.enforce_hypotheses = false;
        self
    }

    pub(crate) fn index_filters(&self, n: usize) -> Result<Vec<Filter>> {
        match &self.filters {
            FilterSource::All => enumerate_filters(n, true),
            FilterSource::ProperOnly => enumerate_filters(n, false),
            FilterSource::Trivial => Ok(vec![Filter::trivial(n)]),
            FilterSource::Principal { indexes } => {
                if let Some(bad) = indexes.iter().find(|&&i| i >= n) {
                    return Err(Error::input(format!("filter index {bad} outside an index set of size {n}")));
                }
                Filter::principal(SubsetMask::from_indices(n, indexes.iter().copied())).map(|f| vec![f])
            }
        }
    }

    pub(crate) fn topology_options(&self) -> Result<Vec<Topology>> {
        match &self.factors {
            FactorSource::AllTopologies { min_points, max_points } => {
                if min_points > max_points || *min_points == 0 {
                    return Err(Error::input("factor size range is empty"));
                }
                let mut out = Vec::new();
                for n in *min_points..=*max_points {
                    out.extend(enumerate_topologies(n)?);
                }
                Ok(out)
            }
            FactorSource::Fixed { presets } if !presets.is_empty() => {
                Ok(presets.iter().map(|p| p.topology()).collect())
            }
            other => Err(Error::input(format!("factor source {other:?} does not supply topologies"))),
        }
    }

    pub(crate) fn filter_options(&self) -> Result<Vec<Filter>> {
        match &self.factors {
            FactorSource::AllFilters { points } => enumerate_filters(*points, false),
            other => Err(Error::input(format!("factor source {other:?} does not supply filters"))),
        }
    }

    pub(crate) fn uniformity_options(&self) -> Result<Vec<Uniformity>> {
        match &self.factors {
            FactorSource::AllUniformityBases { points } => enumerate_uniformity_bases(*points),
            FactorSource::Fixed { presets } if !presets.is_empty() => {
                presets.iter().map(|p| p.uniformity()).collect()
            }
            other => Err(Error::input(format!("factor source {other:?} does not supply uniformities"))),
        }
    }
}

/// Every family of reflexive relations on an `n`-point set (`n <= 2`) that
/// is a uniformity base, in canonical order of the family encoding.
pub fn enumerate_uniformity_bases(n: usize) -> Result<Vec<Uniformity>> {
    if n == 0 || n > 2 {
        return Err(Error::input(format!("uniformity base enumeration supports 1..=2 points, got {n}")));
    }
    let diag = Relation::diagonal(n);
    let reflexive: Vec<SubsetMask> = SubsetMask::all_subsets(n * n)
        .filter(|m| diag.mask().is_subset(m))
        .collect();
    let mut out = Vec::new();
    for bits in 1u64..1 << reflexive.len() {
        let fam = SetFamily::new(
            n * n,
            reflexive.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, m)| m.clone()),
        )?;
        if validate_uniformity_base(&fam) {
            out.push(Uniformity::from_base(fam)?);
        }
    }
    Ok(out)
}

/// All `k`-tuples over `options`, lexicographic with the first factor slowest.
pub(crate) fn tuples<T: Clone>(options: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |o| {
                    let mut next = prefix.clone();
                    next.push(o.clone());
                    next
                })
            })
            .collect();
    }
    out
}

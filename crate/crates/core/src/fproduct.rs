//! Boxes over a product of finite factors and the constructions indexed by
//! a family of index sets: the F-topology, equalizers and the F-filter.
//!
//! A box is admitted when its set of distinguished indexes (the coordinates
//! where it takes the whole factor) belongs to the index family.

use crate::error::{Error, Result};
use crate::filters::{validate_filter_base, Filter, FilterBase};
use crate::foundations::{ProductIndexing, SetFamily, SubsetMask, Universe};
use crate::topology::Topology;
use crate::uniformity::Uniformity;

/// Anything that decides which distinguished-index sets admit a box.
pub trait IndexCondition {
    fn index_size(&self) -> usize;
    fn admits(&self, delta: &SubsetMask) -> bool;
}

impl IndexCondition for Filter {
    fn index_size(&self) -> usize {
        self.universe_size()
    }

    fn admits(&self, delta: &SubsetMask) -> bool {
        self.contains(delta)
    }
}

/// An arbitrary family on the index set, admitting exactly its members.
impl IndexCondition for SetFamily {
    fn index_size(&self) -> usize {
        self.universe_size()
    }

    fn admits(&self, delta: &SubsetMask) -> bool {
        self.contains(delta)
    }
}

/// One subset of each factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductBox {
    per_factor: Vec<SubsetMask>,
}

impl ProductBox {
    pub fn new(per_factor: Vec<SubsetMask>) -> Self {
        ProductBox { per_factor }
    }

    pub fn per_factor(&self) -> &[SubsetMask] {
        &self.per_factor
    }

    /// Indexes where the box takes the whole factor (exact equality).
    pub fn delta(&self) -> SubsetMask {
        SubsetMask::from_indices(
            self.per_factor.len(),
            self.per_factor.iter().enumerate().filter(|(_, u)| u.is_full()).map(|(i, _)| i),
        )
    }

    /// Indexes where the box is proper.
    pub fn sigma(&self) -> SubsetMask {
        self.delta().complement()
    }

    pub fn intersection(&self, other: &ProductBox) -> ProductBox {
        ProductBox::new(
            self.per_factor.iter().zip(&other.per_factor).map(|(a, b)| a.intersection(b)).collect(),
        )
    }

    pub fn is_empty(&self) -> bool {
        self.per_factor.iter().any(SubsetMask::is_empty)
    }

    pub fn to_pointset(&self, idx: &ProductIndexing) -> Result<SubsetMask> {
        if self.per_factor.len() != idx.factor_count()
            || self.per_factor.iter().zip(idx.factor_sizes()).any(|(u, &s)| u.universe_size() != s)
        {
            return Err(Error::input("box does not match the product's factor sizes"));
        }
        Ok(self.pointset_unchecked(idx))
    }

    pub(crate) fn pointset_unchecked(&self, idx: &ProductIndexing) -> SubsetMask {
        let mut codes = vec![0usize];
        let mut radix = 1;
        for (u, &s) in self.per_factor.iter().zip(idx.factor_sizes()) {
            codes = codes.iter().flat_map(|&c| u.iter().map(move |v| c + v * radix)).collect();
            radix *= s;
        }
        SubsetMask::from_indices(idx.total(), codes)
    }
}

pub fn box_delta(b: &ProductBox) -> SubsetMask {
    b.delta()
}

pub fn box_sigma(b: &ProductBox) -> SubsetMask {
    b.sigma()
}

pub fn box_to_pointset(b: &ProductBox, idx: &ProductIndexing) -> Result<SubsetMask> {
    b.to_pointset(idx)
}

/// Every box with component `i` drawn from `choices[i]`, in odometer order
/// (factor 0 varies fastest).
pub fn boxes(choices: &[Vec<SubsetMask>]) -> impl Iterator<Item = ProductBox> + '_ {
    let mut odometer = vec![0usize; choices.len()];
    let mut done = choices.iter().any(Vec::is_empty);
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let b = ProductBox::new(odometer.iter().zip(choices).map(|(&k, c)| c[k].clone()).collect());
        done = true;
        for (k, c) in odometer.iter_mut().zip(choices) {
            *k += 1;
            if *k < c.len() {
                done = false;
                break;
            }
            *k = 0;
        }
        Some(b)
    })
}

/// Point sets of the admitted boxes drawn from `choices`, empty boxes dropped.
pub fn admitted_box_family(
    choices: &[Vec<SubsetMask>],
    idx: &ProductIndexing,
    cond: &impl IndexCondition,
) -> Result<SetFamily> {
    if cond.index_size() != idx.factor_count() {
        return Err(Error::input(format!(
            "index family lives on {} indexes, product has {} factors",
            cond.index_size(),
            idx.factor_count()
        )));
    }
    Ok(SetFamily::from_masks(
        idx.total(),
        boxes(choices)
            .filter(|b| !b.is_empty() && cond.admits(&b.delta()))
            .map(|b| b.pointset_unchecked(idx)),
    ))
}

fn nonempty_opens(t: &Topology) -> Vec<SubsetMask> {
    t.opens().iter().filter(|o| !o.is_empty()).cloned().collect()
}

/// Base of the F-topology: admitted boxes of open sets.
pub fn f_topology_base_of(
    factors: &[&Topology],
    idx: &ProductIndexing,
    cond: &impl IndexCondition,
) -> Result<SetFamily> {
    check_factor_sizes(factors.iter().map(|t| t.universe_size()), idx)?;
    let choices: Vec<Vec<SubsetMask>> = factors.iter().map(|t| nonempty_opens(t)).collect();
    admitted_box_family(&choices, idx, cond)
}

/// The F-topology for a filter on the index set.
pub fn f_topology_of(factors: &[&Topology], idx: &ProductIndexing, filter: &Filter) -> Result<Topology> {
    let base = f_topology_base_of(factors, idx, filter)?;
    // δ = I is always admitted, so the full box is a member and the base covers.
    Ok(Topology::from_valid_base(base))
}

/// The topology generated by admitted open boxes for an arbitrary index family;
/// fails when those boxes do not form a base.
pub fn f_topology_for_family(
    factors: &[&Topology],
    idx: &ProductIndexing,
    family: &SetFamily,
) -> Result<Topology> {
    Topology::from_base(f_topology_base_of(factors, idx, family)?)
}

fn check_factor_sizes(sizes: impl Iterator<Item = usize>, idx: &ProductIndexing) -> Result<()> {
    let sizes: Vec<usize> = sizes.collect();
    if sizes != idx.factor_sizes() {
        return Err(Error::input(format!(
            "factor sizes {sizes:?} do not match the product indexing {:?}",
            idx.factor_sizes()
        )));
    }
    Ok(())
}

/// `{ z : z_i ∈ U }`.
pub fn projection_preimage(i: usize, u: &SubsetMask, idx: &ProductIndexing) -> Result<SubsetMask> {
    if i >= idx.factor_count() {
        return Err(Error::input(format!("index {i} out of range")));
    }
    if u.universe_size() != idx.factor_sizes()[i] {
        return Err(Error::input(format!("subset does not live on factor {i}")));
    }
    Ok(SubsetMask::from_indices(
        idx.total(),
        (0..idx.total()).filter(|&z| u.contains(idx.coord(z, i))),
    ))
}

/// The projection onto factor `i` as a map on point codes.
pub fn projection_map(idx: &ProductIndexing, i: usize) -> Vec<usize> {
    (0..idx.total()).map(|z| idx.coord(z, i)).collect()
}

/// Indexes where two points agree.
pub fn agreement_set(idx: &ProductIndexing, x: usize, y: usize) -> SubsetMask {
    let (cx, cy) = (idx.decode_unchecked(x), idx.decode_unchecked(y));
    SubsetMask::from_indices(cx.len(), (0..cx.len()).filter(|&i| cx[i] == cy[i]))
}

fn check_point(idx: &ProductIndexing, x: usize) -> Result<()> {
    if x >= idx.total() {
        return Err(Error::input(format!("point {x} outside product of {} points", idx.total())));
    }
    Ok(())
}

/// Points agreeing with `x` on a member of `filter`.
pub fn equalizer_of(idx: &ProductIndexing, filter: &Filter, x: usize) -> Result<SubsetMask> {
    check_point(idx, x)?;
    Ok(SubsetMask::from_indices(
        idx.total(),
        (0..idx.total()).filter(|&z| filter.contains(&agreement_set(idx, x, z))),
    ))
}

/// `{ i : x_i ≠ y_i }` belongs to the filter.
pub fn different_by_filter_of(idx: &ProductIndexing, filter: &Filter, x: usize, y: usize) -> Result<bool> {
    check_point(idx, x)?;
    check_point(idx, y)?;
    Ok(filter.contains(&agreement_set(idx, x, y).complement()))
}

fn proper_factor_filters(factors: &[&Filter]) -> Result<()> {
    if factors.iter().any(|f| f.is_trivial()) {
        return Err(Error::input("factor filters must be proper"));
    }
    Ok(())
}

/// Base of the F-filter: admitted boxes of factor-filter members.
pub fn f_filter_base_of(factors: &[&Filter], idx: &ProductIndexing, cond: &impl IndexCondition) -> Result<SetFamily> {
    check_factor_sizes(factors.iter().map(|f| f.universe_size()), idx)?;
    proper_factor_filters(factors)?;
    let choices: Vec<Vec<SubsetMask>> = factors.iter().map(|f| f.members().members().to_vec()).collect();
    admitted_box_family(&choices, idx, cond)
}

pub fn f_filter_of(factors: &[&Filter], idx: &ProductIndexing, cond: &impl IndexCondition) -> Result<Filter> {
    let base = f_filter_base_of(factors, idx, cond)?;
    if !validate_filter_base(&base) {
        return Err(Error::input("admitted boxes do not form a filter base"));
    }
    Ok(Filter::generate(&FilterBase::new(base)?))
}

/// One factor of a product: a finite set with whichever structures it carries.
#[derive(Debug, Clone)]
pub struct Factor {
    pub universe: Universe,
    pub topology: Option<Topology>,
    pub filter: Option<Filter>,
    pub uniformity: Option<Uniformity>,
}

impl Factor {
    pub fn bare(universe: Universe) -> Self {
        Factor { universe, topology: None, filter: None, uniformity: None }
    }

    pub fn with_topology(universe: Universe, topology: Topology) -> Result<Self> {
        let mut f = Factor::bare(universe);
        f.set_topology(topology)?;
        Ok(f)
    }

    pub fn set_topology(&mut self, t: Topology) -> Result<()> {
        if t.universe_size() != self.universe.size() {
            return Err(Error::input("topology does not live on the factor universe"));
        }
        self.topology = Some(t);
        Ok(())
    }

    pub fn set_filter(&mut self, f: Filter) -> Result<()> {
        if f.universe_size() != self.universe.size() {
            return Err(Error::input("filter does not live on the factor universe"));
        }
        self.filter = Some(f);
        Ok(())
    }

    pub fn set_uniformity(&mut self, u: Uniformity) -> Result<()> {
        if u.universe_size() != self.universe.size() {
            return Err(Error::input("uniformity does not live on the factor universe"));
        }
        self.uniformity = Some(u);
        Ok(())
    }
}

/// Factors indexed by `I` together with a filter on `I`.
#[derive(Debug, Clone)]
pub struct ProductSpec {
    index_universe: Universe,
    factors: Vec<Factor>,
    index_filter: Filter,
    indexing: ProductIndexing,
}

impl ProductSpec {
    pub fn new(index_universe: Universe, factors: Vec<Factor>, index_filter: Filter) -> Result<Self> {
        Self::with_limit(index_universe, factors, index_filter, crate::foundations::DEFAULT_MAX_PRODUCT)
    }

    pub fn with_limit(
        index_universe: Universe,
        factors: Vec<Factor>,
        index_filter: Filter,
        max_product: usize,
    ) -> Result<Self> {
        if factors.len() != index_universe.size() {
            return Err(Error::input(format!(
                "{} factors for an index set of {} elements",
                factors.len(),
                index_universe.size()
            )));
        }
        if index_filter.universe_size() != index_universe.size() {
            return Err(Error::input("index filter does not live on the index set"));
        }
        let indexing =
            ProductIndexing::with_limit(factors.iter().map(|f| f.universe.size()).collect(), max_product)?;
        Ok(ProductSpec { index_universe, factors, index_filter, indexing })
    }

    pub fn index_universe(&self) -> &Universe {
        &self.index_universe
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn index_filter(&self) -> &Filter {
        &self.index_filter
    }

    pub fn indexing(&self) -> &ProductIndexing {
        &self.indexing
    }

    pub fn with_index_filter(&self, f: Filter) -> Result<Self> {
        ProductSpec::with_limit(self.index_universe.clone(), self.factors.clone(), f, usize::MAX)
    }

    pub fn factor_topologies(&self) -> Result<Vec<&Topology>> {
        self.factors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                f.topology
                    .as_ref()
                    .ok_or_else(|| Error::input(format!("factor {i} has no topology")))
            })
            .collect()
    }

    pub fn factor_filters(&self) -> Result<Vec<&Filter>> {
        self.factors
            .iter()
            .enumerate()
            .map(|(i, f)| f.filter.as_ref().ok_or_else(|| Error::input(format!("factor {i} has no filter"))))
            .collect()
    }

    pub fn factor_uniformities(&self) -> Result<Vec<&Uniformity>> {
        self.factors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                f.uniformity
                    .as_ref()
                    .ok_or_else(|| Error::input(format!("factor {i} has no uniformity")))
            })
            .collect()
    }
}

pub fn f_topology_base(spec: &ProductSpec) -> Result<SetFamily> {
    f_topology_base_of(&spec.factor_topologies()?, spec.indexing(), spec.index_filter())
}

pub fn f_topology(spec: &ProductSpec) -> Result<Topology> {
    f_topology_of(&spec.factor_topologies()?, spec.indexing(), spec.index_filter())
}

pub fn equalizer(spec: &ProductSpec, x: usize) -> Result<SubsetMask> {
    equalizer_of(spec.indexing(), spec.index_filter(), x)
}

pub fn different_by_filter(spec: &ProductSpec, x: usize, y: usize) -> Result<bool> {
    different_by_filter_of(spec.indexing(), spec.index_filter(), x, y)
}

pub fn f_filter(spec: &ProductSpec) -> Result<Filter> {
    f_filter_of(&spec.factor_filters()?, spec.indexing(), spec.index_filter())
}

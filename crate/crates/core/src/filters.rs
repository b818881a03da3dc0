//! Filters and filter bases on finite universes.
//!
//! Every proper filter on a finite set is principal, so a [`Filter`] is
//! stored as its single minimal member. The trivial filter (the whole
//! powerset, empty set included) is a separate, explicitly flagged value.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::foundations::{SetFamily, SubsetMask};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Kind {
    Trivial,
    Principal(SubsetMask),
}

/// A filter on `{0, .., n-1}`, normalized to principal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Filter {
    universe_size: usize,
    kind: Kind,
}

impl Filter {
    /// The trivial filter `2^X`.
    pub fn trivial(n: usize) -> Self {
        Filter { universe_size: n, kind: Kind::Trivial }
    }

    /// The principal filter of all supersets of a nonempty `a`.
    pub fn principal(a: SubsetMask) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::input(
                "principal filter of the empty set; use the trivial filter instead",
            ));
        }
        Ok(Filter { universe_size: a.universe_size(), kind: Kind::Principal(a) })
    }

    /// The cofinite filter. Every subset of a finite universe is cofinite,
    /// so this is the trivial filter.
    pub fn frechet(n: usize) -> Self {
        Filter::trivial(n)
    }

    /// The filter of sets whose complement has fewer than `d` elements.
    ///
    /// On a finite universe of size `n` that family is only a filter when
    /// `d == 1` (giving `{X}`) or `d > n` (giving the trivial filter); every
    /// other `d` is rejected.
    pub fn d_complements(n: usize, d: usize) -> Result<Self> {
        match d {
            0 => Err(Error::input("no set has a complement of fewer than 0 elements")),
            1 => Filter::principal(SubsetMask::full(n)),
            d if d > n => Ok(Filter::trivial(n)),
            d => Err(Error::input(format!(
                "the {d}-complement family on {n} points is not closed under intersection"
            ))),
        }
    }

    /// The filter generated by a valid filter base.
    pub fn generate(base: &FilterBase) -> Self {
        let core = base.members.intersection_all();
        debug_assert!(base.members.contains(&core), "directed family must contain its meet");
        Filter { universe_size: base.members.universe_size(), kind: Kind::Principal(core) }
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.kind, Kind::Trivial)
    }

    pub fn is_proper(&self) -> bool {
        !self.is_trivial()
    }

    /// The minimal member: the generating set of a principal filter, or the
    /// empty mask for the trivial filter.
    pub fn core(&self) -> SubsetMask {
        match &self.kind {
            Kind::Trivial => SubsetMask::empty(self.universe_size),
            Kind::Principal(a) => a.clone(),
        }
    }

    /// Minimal members as a family (always exactly one).
    pub fn minimal(&self) -> SetFamily {
        SetFamily::from_masks(self.universe_size, [self.core()])
    }

    pub fn contains(&self, a: &SubsetMask) -> bool {
        match &self.kind {
            Kind::Trivial => true,
            Kind::Principal(core) => core.is_subset(a),
        }
    }

    /// All members in canonical order.
    pub fn members(&self) -> SetFamily {
        let rest = self.core().complement();
        let core = self.core();
        SetFamily::from_masks(self.universe_size, rest.subsets().into_iter().map(|s| s.union(&core)))
    }

    pub fn member_count(&self) -> u128 {
        1u128 << (self.universe_size - self.core().count())
    }

    pub fn is_ultrafilter(&self) -> bool {
        match &self.kind {
            Kind::Trivial => false,
            Kind::Principal(core) => core.count() == 1,
        }
    }

    pub fn is_saturated(&self) -> bool {
        (0..self.universe_size).all(|i| {
            let mut co = SubsetMask::full(self.universe_size);
            co.remove(i);
            self.contains(&co)
        })
    }

    /// `self ⊆ other` as families of sets.
    pub fn leq(&self, other: &Filter) -> Result<bool> {
        same_universe(self.universe_size, other.universe_size)?;
        Ok(match (&self.kind, &other.kind) {
            (_, Kind::Trivial) => true,
            (Kind::Trivial, Kind::Principal(_)) => false,
            (Kind::Principal(a), Kind::Principal(b)) => b.is_subset(a),
        })
    }
}

impl Ord for Filter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe_size
            .cmp(&other.universe_size)
            .then_with(|| self.core().cmp(&other.core()))
    }
}

impl PartialOrd for Filter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn same_universe(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::input(format!("universe sizes differ: {a} vs {b}")));
    }
    Ok(())
}

/// A proper filter base: nonempty, excludes the empty set, downward directed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterBase {
    members: SetFamily,
}

impl FilterBase {
    pub fn new(members: SetFamily) -> Result<Self> {
        if !validate_filter_base(&members) {
            return Err(Error::input("family is not a filter base"));
        }
        Ok(FilterBase { members })
    }

    pub fn members(&self) -> &SetFamily {
        &self.members
    }
}

pub fn validate_filter_base(fam: &SetFamily) -> bool {
    if fam.is_empty() || fam.iter().any(SubsetMask::is_empty) {
        return false;
    }
    fam.iter().enumerate().all(|(k, a)| {
        fam.members()[k + 1..].iter().all(|b| {
            let meet = a.intersection(b);
            fam.iter().any(|c| c.is_subset(&meet))
        })
    })
}

pub fn generate_filter(fam: &SetFamily) -> Result<Filter> {
    Ok(Filter::generate(&FilterBase::new(fam.clone())?))
}

pub fn principal_filter(a: SubsetMask) -> Result<Filter> {
    Filter::principal(a)
}

pub fn trivial_filter(n: usize) -> Filter {
    Filter::trivial(n)
}

pub fn frechet_filter(n: usize) -> Filter {
    Filter::frechet(n)
}

pub fn is_ultrafilter(f: &Filter) -> bool {
    f.is_ultrafilter()
}

pub fn is_saturated(f: &Filter) -> bool {
    f.is_saturated()
}

pub fn filter_leq(f: &Filter, g: &Filter) -> Result<bool> {
    f.leq(g)
}

/// Validate a total map given as `map[x] = f(x)` into a codomain of size `cod_size`.
pub(crate) fn check_map(map: &[usize], dom_size: usize, cod_size: usize) -> Result<()> {
    if map.len() != dom_size {
        return Err(Error::input(format!(
            "map has {} entries, domain has {dom_size} elements",
            map.len()
        )));
    }
    if let Some((x, &y)) = map.iter().enumerate().find(|(_, &y)| y >= cod_size) {
        return Err(Error::input(format!(
            "map sends {x} to {y}, codomain has {cod_size} elements"
        )));
    }
    Ok(())
}

pub(crate) fn image(map: &[usize], a: &SubsetMask, cod_size: usize) -> SubsetMask {
    SubsetMask::from_indices(cod_size, a.iter().map(|x| map[x]))
}

/// The filter generated by the images of the members of `fil` under `map`.
pub fn pushforward(map: &[usize], cod_size: usize, fil: &Filter) -> Result<Filter> {
    check_map(map, fil.universe_size(), cod_size)?;
    if cod_size == 0 {
        return Err(Error::input("codomain must be nonempty"));
    }
    // Images are monotone, so the image of the minimal member generates.
    Ok(match &fil.kind {
        Kind::Trivial => Filter::trivial(cod_size),
        Kind::Principal(core) => Filter {
            universe_size: cod_size,
            kind: Kind::Principal(image(map, core, cod_size)),
        },
    })
}

/// All filters on an `n`-universe: the trivial one (if requested) followed by
/// one principal filter per nonempty subset, in canonical order.
pub fn enumerate_filters(n: usize, include_trivial: bool) -> Result<Vec<Filter>> {
    if n == 0 || n > 4 {
        return Err(Error::input(format!("filter enumeration supports 1..=4 points, got {n}")));
    }
    let trivial = include_trivial.then(|| Filter::trivial(n));
    Ok(trivial
        .into_iter()
        .chain(
            SubsetMask::all_subsets(n)
                .filter(|a| !a.is_empty())
                .map(|a| Filter { universe_size: n, kind: Kind::Principal(a) }),
        )
        .collect())
}

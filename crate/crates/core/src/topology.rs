//! Finite topological spaces described by a base.
//!
//! Queries (openness, density, separation, continuity) run on the base.
//! The full open family is only materialized on request and memoized.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::filters::{check_map, Filter};
use crate::foundations::{SetFamily, SubsetMask};

pub struct Topology {
    universe_size: usize,
    base: SetFamily,
    opens: OnceLock<SetFamily>,
}

impl Clone for Topology {
    fn clone(&self) -> Self {
        Topology {
            universe_size: self.universe_size,
            base: self.base.clone(),
            opens: self.opens.clone(),
        }
    }
}

impl fmt::Debug for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Topology")
            .field("universe_size", &self.universe_size)
            .field("base", &self.base.members())
            .finish()
    }
}

/// Two topologies are equal when they have the same open sets.
impl PartialEq for Topology {
    fn eq(&self, other: &Self) -> bool {
        self.universe_size == other.universe_size
            && self.leq(other).unwrap_or(false)
            && other.leq(self).unwrap_or(false)
    }
}

impl Eq for Topology {}

/// Point criterion and covering for a candidate base.
pub fn validate_base(fam: &SetFamily) -> bool {
    let n = fam.universe_size();
    if fam.union_all() != SubsetMask::full(n) {
        return false;
    }
    let members = fam.members();
    members.iter().enumerate().all(|(k, u)| {
        members[k..].iter().all(|v| {
            let meet = u.intersection(v);
            union_of_members_inside(fam, &meet) == meet
        })
    })
}

fn union_of_members_inside(fam: &SetFamily, a: &SubsetMask) -> SubsetMask {
    fam.iter()
        .filter(|b| b.is_subset(a))
        .fold(SubsetMask::empty(a.universe_size()), |acc, b| acc.union(b))
}

/// Union closure of a family, including the empty union.
pub(crate) fn union_closure(fam: &SetFamily) -> SetFamily {
    let n = fam.universe_size();
    let mut seen: HashSet<SubsetMask> = HashSet::new();
    seen.insert(SubsetMask::empty(n));
    let mut all = vec![SubsetMask::empty(n)];
    for b in fam {
        let mut fresh = Vec::new();
        for o in &all {
            let u = o.union(b);
            if seen.insert(u.clone()) {
                fresh.push(u);
            }
        }
        all.extend(fresh);
    }
    SetFamily::from_masks(n, all)
}

impl Topology {
    /// Topology generated by a base; fails when `base` is not a base.
    pub fn from_base(base: SetFamily) -> Result<Self> {
        if !validate_base(&base) {
            return Err(Error::input("family is not a base: it must cover X and satisfy the point criterion"));
        }
        Ok(Self::from_valid_base(base))
    }

    pub(crate) fn from_valid_base(base: SetFamily) -> Self {
        let n = base.universe_size();
        let base = SetFamily::from_masks(n, base.iter().filter(|b| !b.is_empty()).cloned());
        Topology { universe_size: n, base, opens: OnceLock::new() }
    }

    /// Topology from its full family of open sets; checks the axioms.
    pub fn from_opens(opens: SetFamily) -> Result<Self> {
        let n = opens.universe_size();
        if !opens.contains(&SubsetMask::empty(n)) || !opens.contains(&SubsetMask::full(n)) {
            return Err(Error::input("open family must contain the empty set and X"));
        }
        let m = opens.members();
        for (k, a) in m.iter().enumerate() {
            for b in &m[k..] {
                if !opens.contains(&a.union(b)) || !opens.contains(&a.intersection(b)) {
                    return Err(Error::input("open family is not closed under unions and intersections"));
                }
            }
        }
        let t = Self::from_valid_base(opens.clone());
        let _ = t.opens.set(opens);
        Ok(t)
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_valid_base(SetFamily::from_masks(n, (0..n).map(|i| SubsetMask::singleton(n, i))))
    }

    pub fn indiscrete(n: usize) -> Self {
        Self::from_valid_base(SetFamily::from_masks(n, [SubsetMask::full(n)]))
    }

    /// Two points with opens `{∅, {0}, X}`.
    pub fn sierpinski() -> Self {
        Self::from_valid_base(SetFamily::from_masks(
            2,
            [SubsetMask::singleton(2, 0), SubsetMask::full(2)],
        ))
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn base(&self) -> &SetFamily {
        &self.base
    }

    /// All open sets, computed once.
    pub fn opens(&self) -> &SetFamily {
        self.opens.get_or_init(|| union_closure(&self.base))
    }

    fn check_mask(&self, a: &SubsetMask) -> Result<()> {
        if a.universe_size() != self.universe_size {
            return Err(Error::input(format!(
                "subset over {} points, space has {}",
                a.universe_size(),
                self.universe_size
            )));
        }
        Ok(())
    }

    pub fn is_open(&self, a: &SubsetMask) -> Result<bool> {
        self.check_mask(a)?;
        Ok(self.is_open_unchecked(a))
    }

    pub(crate) fn is_open_unchecked(&self, a: &SubsetMask) -> bool {
        union_of_members_inside(&self.base, a) == *a
    }

    /// Smallest open set containing `x`.
    pub fn minimal_open(&self, x: usize) -> SubsetMask {
        self.base
            .iter()
            .filter(|b| b.contains(x))
            .fold(SubsetMask::full(self.universe_size), |acc, b| acc.intersection(b))
    }

    /// The base of per-point minimal opens; equal topologies give equal families.
    pub fn minimal_base(&self) -> SetFamily {
        SetFamily::from_masks(self.universe_size, (0..self.universe_size).map(|x| self.minimal_open(x)))
    }

    /// Every base member of `self` is open in `other`.
    pub fn leq(&self, other: &Topology) -> Result<bool> {
        if self.universe_size != other.universe_size {
            return Err(Error::input("topologies live on different universes"));
        }
        Ok(self.base.iter().all(|b| other.is_open_unchecked(b)))
    }

    /// Some open set other than the empty set and X.
    pub fn is_nontrivial(&self) -> bool {
        let full = SubsetMask::full(self.universe_size);
        (0..self.universe_size).any(|x| self.minimal_open(x) != full)
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.universe_size).all(|x| self.minimal_open(x).count() == 1)
    }

    pub fn neighborhoods_filter(&self, x: usize) -> Result<Filter> {
        if x >= self.universe_size {
            return Err(Error::input(format!("point {x} outside space of {} points", self.universe_size)));
        }
        Filter::principal(self.minimal_open(x))
    }

    /// First pair of distinct points (in lexicographic order) that no two
    /// disjoint base members separate.
    pub fn inseparable_pair(&self) -> Option<(usize, usize)> {
        let around: Vec<Vec<&SubsetMask>> = (0..self.universe_size)
            .map(|x| self.base.iter().filter(|b| b.contains(x)).collect())
            .collect();
        (0..self.universe_size)
            .flat_map(|x| (x + 1..self.universe_size).map(move |y| (x, y)))
            .find(|&(x, y)| {
                !around[x]
                    .iter()
                    .any(|bx| around[y].iter().any(|by| !bx.intersects(by)))
            })
    }

    pub fn is_hausdorff(&self) -> bool {
        self.inseparable_pair().is_none()
    }

    pub fn is_t1(&self) -> bool {
        (0..self.universe_size).all(|x| {
            let mut co = SubsetMask::full(self.universe_size);
            co.remove(x);
            self.is_open_unchecked(&co)
        })
    }

    pub fn is_dense(&self, d: &SubsetMask) -> Result<bool> {
        self.check_mask(d)?;
        Ok(self.is_dense_unchecked(d))
    }

    pub(crate) fn is_dense_unchecked(&self, d: &SubsetMask) -> bool {
        self.base.iter().all(|b| b.intersects(d))
    }

    /// Points every one of whose basic neighborhoods meets `a`.
    pub fn closure(&self, a: &SubsetMask) -> Result<SubsetMask> {
        self.check_mask(a)?;
        Ok(SubsetMask::from_indices(
            self.universe_size,
            (0..self.universe_size).filter(|&x| self.minimal_open(x).intersects(a)),
        ))
    }

    /// Subspace on `a`, re-indexed so that the members of `a` in ascending
    /// order become `0..|a|`.
    pub fn subspace(&self, a: &SubsetMask) -> Result<Topology> {
        self.check_mask(a)?;
        if a.is_empty() {
            return Err(Error::input("subspace on the empty set"));
        }
        let pos: Vec<usize> = a.iter().collect();
        let k = pos.len();
        let restrict = |b: &SubsetMask| {
            SubsetMask::from_indices(k, pos.iter().enumerate().filter(|(_, &p)| b.contains(p)).map(|(j, _)| j))
        };
        Ok(Self::from_valid_base(SetFamily::from_masks(k, self.base.iter().map(restrict))))
    }

    /// Lexicographically least sequence of `n` pairwise disjoint dense sets.
    ///
    /// A finite space splits into disjoint minimal nonempty open sets and a
    /// set is dense iff it meets each of them, so `n` disjoint dense sets
    /// exist iff every minimal open has at least `n` points. The least
    /// witness takes the `j`-th smallest point of every minimal open as the
    /// `j`-th set.
    pub fn find_disjoint_dense(&self, n: usize) -> Option<Vec<SubsetMask>> {
        if n == 0 {
            return Some(Vec::new());
        }
        let mins = self.minimal_nonempty_opens();
        if mins.iter().any(|m| m.count() < n) {
            return None;
        }
        let points: Vec<Vec<usize>> = mins.iter().map(|m| m.iter().collect()).collect();
        Some(
            (0..n)
                .map(|j| SubsetMask::from_indices(self.universe_size, points.iter().map(|p| p[j])))
                .collect(),
        )
    }

    /// The minimal nonempty open sets; they are pairwise disjoint.
    pub fn minimal_nonempty_opens(&self) -> Vec<SubsetMask> {
        let candidates = self.minimal_base();
        candidates
            .iter()
            .filter(|m| !candidates.iter().any(|o| o != *m && o.is_subset(m)))
            .cloned()
            .collect()
    }
}

pub fn generate_topology(base: &SetFamily) -> Result<Topology> {
    Topology::from_base(base.clone())
}

pub fn is_open(t: &Topology, a: &SubsetMask) -> Result<bool> {
    t.is_open(a)
}

pub fn topology_leq(t1: &Topology, t2: &Topology) -> Result<bool> {
    t1.leq(t2)
}

pub fn neighborhoods_filter(t: &Topology, x: usize) -> Result<Filter> {
    t.neighborhoods_filter(x)
}

pub fn is_hausdorff(t: &Topology) -> bool {
    t.is_hausdorff()
}

pub fn is_t1(t: &Topology) -> bool {
    t.is_t1()
}

pub fn is_dense(t: &Topology, d: &SubsetMask) -> Result<bool> {
    t.is_dense(d)
}

pub fn subspace(t: &Topology, a: &SubsetMask) -> Result<Topology> {
    t.subspace(a)
}

pub fn find_disjoint_dense(t: &Topology, n: usize) -> Option<Vec<SubsetMask>> {
    t.find_disjoint_dense(n)
}

pub(crate) fn preimage(map: &[usize], b: &SubsetMask, dom_size: usize) -> SubsetMask {
    SubsetMask::from_indices(dom_size, (0..dom_size).filter(|&x| b.contains(map[x])))
}

/// Preimages of the codomain's base members are open in the domain.
pub fn is_continuous(map: &[usize], dom: &Topology, cod: &Topology) -> Result<bool> {
    check_map(map, dom.universe_size(), cod.universe_size())?;
    Ok(cod
        .base()
        .iter()
        .all(|b| dom.is_open_unchecked(&preimage(map, b, dom.universe_size()))))
}

/// All topologies on an `n`-point set (`n <= 4`), ordered by their open families.
pub fn enumerate_topologies(n: usize) -> Result<Vec<Topology>> {
    if n == 0 || n > 4 {
        return Err(Error::input(format!("topology enumeration supports 1..=4 points, got {n}")));
    }
    let subsets = 1usize << n;
    let full = subsets - 1;
    // Bit k of a family word says subset k is a member; ∅ and X are forced.
    let free: Vec<usize> = (1..full).collect();
    let mut found: Vec<SetFamily> = Vec::new();
    for choice in 0u64..1 << free.len() {
        let mut fam: u64 = 1 | 1 << full;
        for (j, &s) in free.iter().enumerate() {
            if choice >> j & 1 == 1 {
                fam |= 1 << s;
            }
        }
        let members: Vec<usize> = (0..subsets).filter(|&s| fam >> s & 1 == 1).collect();
        let closed = members.iter().all(|&a| {
            members
                .iter()
                .all(|&b| fam >> (a | b) & 1 == 1 && fam >> (a & b) & 1 == 1)
        });
        if closed {
            found.push(SetFamily::from_masks(
                n,
                members.iter().map(|&s| SubsetMask::from_bits(n, s as u64)),
            ));
        }
    }
    found.sort();
    found
        .into_iter()
        .map(Topology::from_opens)
        .collect()
}

//! Relations, uniformities and the F-uniformity on a finite product.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::filters::check_map;
use crate::foundations::{ProductIndexing, SetFamily, SubsetMask, DEFAULT_MAX_PRODUCT};
use crate::fproduct::{admitted_box_family, IndexCondition};
use crate::topology::Topology;

/// A relation on `{0, .., n-1}`; pair `(x, y)` is bit `x * n + y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    n: usize,
    mask: SubsetMask,
}

fn side_of(len: usize) -> Option<usize> {
    let n = len.isqrt();
    (n * n == len).then_some(n)
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { n, mask: SubsetMask::empty(n * n) }
    }

    pub fn full(n: usize) -> Self {
        Relation { n, mask: SubsetMask::full(n * n) }
    }

    pub fn diagonal(n: usize) -> Self {
        Relation::from_pairs(n, (0..n).map(|x| (x, x))).expect("diagonal pairs are in range")
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut r = Relation::empty(n);
        for (x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::input(format!("pair ({x},{y}) outside a {n}-point set")));
            }
            r.mask.insert(x * n + y);
        }
        Ok(r)
    }

    /// Reinterpret a mask on the squared universe.
    pub fn from_mask(mask: SubsetMask) -> Result<Self> {
        let n = side_of(mask.universe_size())
            .ok_or_else(|| Error::input("mask length is not a perfect square"))?;
        Ok(Relation { n, mask })
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> &SubsetMask {
        &self.mask
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.mask.contains(x * self.n + y)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mask.iter().map(|k| (k / self.n, k % self.n))
    }

    fn check_same(&self, other: &Relation) -> Result<()> {
        if self.n != other.n {
            return Err(Error::input(format!("relations on {} and {} points", self.n, other.n)));
        }
        Ok(())
    }

    /// `{(x,z) : ∃y. (x,y) ∈ self ∧ (y,z) ∈ other}`.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        self.check_same(other)?;
        let n = self.n;
        let mut out = Relation::empty(n);
        for (x, y) in self.pairs() {
            for z in other.row(y).iter() {
                out.mask.insert(x * n + z);
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Relation {
        let n = self.n;
        Relation { n, mask: SubsetMask::from_indices(n * n, self.pairs().map(|(x, y)| y * n + x)) }
    }

    /// `U[x] = { y : (x, y) ∈ U }`.
    pub fn row(&self, x: usize) -> SubsetMask {
        SubsetMask::from_indices(self.n, (0..self.n).filter(|&y| self.contains(x, y)))
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.n == other.n && self.mask.is_subset(&other.mask)
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        Relation { n: self.n, mask: self.mask.intersection(&other.mask) }
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation { n: self.n, mask: self.mask.union(&other.mask) }
    }
}

pub fn compose(g: &Relation, h: &Relation) -> Result<Relation> {
    g.compose(h)
}

pub fn inverse(g: &Relation) -> Relation {
    g.inverse()
}

pub fn diagonal(n: usize) -> Relation {
    Relation::diagonal(n)
}

pub fn entourage_ball(u: &Relation, x: usize) -> Result<SubsetMask> {
    if x >= u.universe_size() {
        return Err(Error::input(format!("point {x} outside a {}-point set", u.universe_size())));
    }
    Ok(u.row(x))
}

fn relations_of(fam: &SetFamily) -> Option<(usize, Vec<Relation>)> {
    let n = side_of(fam.universe_size())?;
    Some((n, fam.iter().map(|m| Relation { n, mask: m.clone() }).collect()))
}

/// The four base conditions: diagonal, inverse, square root, directedness.
pub fn validate_uniformity_base(fam: &SetFamily) -> bool {
    let Some((n, rels)) = relations_of(fam) else {
        return false;
    };
    if rels.is_empty() {
        return false;
    }
    let diag = Relation::diagonal(n);
    let contains_member = |target: &Relation| rels.iter().any(|b| b.is_subset(target));
    rels.iter().all(|u| diag.is_subset(u))
        && rels.iter().all(|u| contains_member(&u.inverse()))
        && rels
            .iter()
            .all(|u| rels.iter().any(|v| v.compose(v).expect("same universe").is_subset(u)))
        && rels
            .iter()
            .enumerate()
            .all(|(k, u)| rels[k + 1..].iter().all(|v| contains_member(&u.intersection(v))))
}

/// A uniformity on a finite set, given by a base.
///
/// A directed base on a finite set contains its own meet, so the uniformity
/// is the principal filter of that minimal entourage.
#[derive(Debug)]
pub struct Uniformity {
    n: usize,
    base: SetFamily,
    core: Relation,
    members: OnceLock<SetFamily>,
}

impl Clone for Uniformity {
    fn clone(&self) -> Self {
        Uniformity {
            n: self.n,
            base: self.base.clone(),
            core: self.core.clone(),
            members: self.members.clone(),
        }
    }
}

impl PartialEq for Uniformity {
    fn eq(&self, other: &Self) -> bool {
        self.core == other.core
    }
}

impl Eq for Uniformity {}

impl Uniformity {
    pub fn from_base(base: SetFamily) -> Result<Self> {
        if !validate_uniformity_base(&base) {
            return Err(Error::input("family is not a uniformity base"));
        }
        let n = side_of(base.universe_size()).expect("validated");
        let core = Relation { n, mask: base.intersection_all() };
        debug_assert!(base.contains(core.mask()));
        Ok(Uniformity { n, base, core, members: OnceLock::new() })
    }

    pub fn from_relations(n: usize, rels: impl IntoIterator<Item = Relation>) -> Result<Self> {
        let masks: Vec<SubsetMask> = rels
            .into_iter()
            .map(|r| {
                if r.n == n {
                    Ok(r.mask)
                } else {
                    Err(Error::input("relation on the wrong universe"))
                }
            })
            .collect::<Result<_>>()?;
        Uniformity::from_base(SetFamily::new(n * n, masks)?)
    }

    /// The finest uniformity, generated by the diagonal.
    pub fn discrete(n: usize) -> Self {
        Uniformity::from_relations(n, [Relation::diagonal(n)]).expect("diagonal is a base")
    }

    /// The coarsest uniformity `{X × X}`.
    pub fn indiscrete(n: usize) -> Self {
        Uniformity::from_relations(n, [Relation::full(n)]).expect("X×X is a base")
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &SetFamily {
        &self.base
    }

    pub fn base_relations(&self) -> Vec<Relation> {
        self.base.iter().map(|m| Relation { n: self.n, mask: m.clone() }).collect()
    }

    /// The smallest entourage.
    pub fn core(&self) -> &Relation {
        &self.core
    }

    pub fn contains(&self, r: &Relation) -> bool {
        self.core.is_subset(r)
    }

    /// Every entourage, materialized on first use.
    pub fn members(&self) -> &SetFamily {
        self.members.get_or_init(|| {
            let core = self.core.mask.clone();
            SetFamily::new(
                self.n * self.n,
                core.complement().subsets().into_iter().map(|s| s.union(&core)),
            )
            .expect("same universe")
        })
    }
}

pub fn generate_uniformity(base: &SetFamily) -> Result<Uniformity> {
    Uniformity::from_base(base.clone())
}

/// Opens are the sets containing a ball around each of their points; the
/// returned base is the per-point ball of the smallest entourage.
pub fn induced_topology(u: &Uniformity) -> Topology {
    Topology::from_valid_base(SetFamily::from_masks(u.n, (0..u.n).map(|x| u.core.row(x))))
}

pub fn is_uniformly_continuous(map: &[usize], dom: &Uniformity, cod: &Uniformity) -> Result<bool> {
    check_map(map, dom.n, cod.n)?;
    let dom_base = dom.base_relations();
    Ok(cod.base_relations().iter().all(|v| {
        dom_base
            .iter()
            .any(|u| u.pairs().all(|(x, y)| v.contains(map[x], map[y])))
    }))
}

/// The bijection `∏X_i × ∏X_i → ∏(X_i × X_i)`, `((x_i), (y_i)) ↦ ((x_i, y_i))`,
/// with factor pair `(a, b)` encoded as `a * n_i + b`.
#[derive(Debug, Clone)]
pub struct PairIdentification {
    points: ProductIndexing,
    pairs: ProductIndexing,
}

impl PairIdentification {
    pub fn new(points: &ProductIndexing, max_product: usize) -> Result<Self> {
        let squared: Vec<usize> = points.factor_sizes().iter().map(|&s| s * s).collect();
        let pairs = ProductIndexing::with_limit(squared, max_product)?;
        Ok(PairIdentification { points: points.clone(), pairs })
    }

    pub fn points(&self) -> &ProductIndexing {
        &self.points
    }

    pub fn pairs(&self) -> &ProductIndexing {
        &self.pairs
    }

    pub fn forward(&self, x: usize, y: usize) -> Result<usize> {
        let cx = self.points.decode(x)?;
        let cy = self.points.decode(y)?;
        let coords: Vec<usize> = cx
            .iter()
            .zip(&cy)
            .zip(self.points.factor_sizes())
            .map(|((&a, &b), &s)| a * s + b)
            .collect();
        self.pairs.encode(&coords)
    }

    pub fn backward(&self, code: usize) -> Result<(usize, usize)> {
        let coords = self.pairs.decode(code)?;
        let (mut cx, mut cy) = (Vec::new(), Vec::new());
        for (&c, &s) in coords.iter().zip(self.points.factor_sizes()) {
            cx.push(c / s);
            cy.push(c % s);
        }
        Ok((self.points.encode(&cx)?, self.points.encode(&cy)?))
    }

    /// A subset of `∏(X_i × X_i)` as a relation on the product.
    pub fn to_relation(&self, pairset: &SubsetMask) -> Relation {
        let t = self.points.total();
        let mut r = Relation::empty(t);
        for code in pairset.iter() {
            let (x, y) = self.backward(code).expect("code in range");
            r.mask.insert(x * t + y);
        }
        r
    }
}

/// Base of the F-uniformity.
///
/// Component `i` of a box is a base entourage of factor `i` or `X_i × X_i`;
/// the box is admitted when the indexes taking `X_i × X_i` form a member of
/// the index family.
pub fn f_uniformity_base_of(
    factors: &[&Uniformity],
    idx: &ProductIndexing,
    cond: &impl IndexCondition,
    max_product: usize,
) -> Result<SetFamily> {
    let sizes: Vec<usize> = factors.iter().map(|u| u.universe_size()).collect();
    if sizes != idx.factor_sizes() {
        return Err(Error::input("factor uniformities do not match the product indexing"));
    }
    let ident = PairIdentification::new(idx, max_product)?;
    let choices: Vec<Vec<SubsetMask>> = factors
        .iter()
        .map(|u| {
            let mut c: Vec<SubsetMask> = u.base().members().to_vec();
            let full = SubsetMask::full(u.n * u.n);
            if !c.contains(&full) {
                c.push(full);
            }
            c
        })
        .collect();
    let boxes = admitted_box_family(&choices, ident.pairs(), cond)?;
    let t = idx.total();
    Ok(SetFamily::from_masks(t * t, boxes.iter().map(|b| ident.to_relation(b).mask)))
}

pub fn f_uniformity_of(
    factors: &[&Uniformity],
    idx: &ProductIndexing,
    cond: &impl IndexCondition,
) -> Result<Uniformity> {
    Uniformity::from_base(f_uniformity_base_of(factors, idx, cond, DEFAULT_MAX_PRODUCT)?)
}

pub fn f_uniformity(spec: &crate::fproduct::ProductSpec) -> Result<Uniformity> {
    f_uniformity_of(&spec.factor_uniformities()?, spec.indexing(), spec.index_filter())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::Filter;

    fn rel(n: usize, pairs: &[(usize, usize)]) -> Relation {
        Relation::from_pairs(n, pairs.iter().copied()).unwrap()
    }

    fn all_relations(n: usize) -> Vec<Relation> {
        SubsetMask::all_subsets(n * n).map(|m| Relation::from_mask(m).unwrap()).collect()
    }

    #[test]
    fn compose_examples() {
        for n in 1..=3 {
            let d = Relation::diagonal(n);
            for r in all_relations(n) {
                assert_eq!(d.compose(&r).unwrap(), r);
            }
        }
        let g = rel(3, &[(0, 1)]);
        let h = rel(3, &[(1, 2)]);
        assert_eq!(g.compose(&h).unwrap(), rel(3, &[(0, 2)]));
        assert!(g.compose(&Relation::diagonal(2)).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Relation::diagonal(3).inverse(), Relation::diagonal(3));
        assert_eq!(rel(2, &[(0, 1)]).inverse(), rel(2, &[(1, 0)]));
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(Relation::diagonal(1).pairs().count(), 1);
        let d = Relation::diagonal(3);
        assert_eq!(d.pairs().count(), 3);
        assert_eq!(d.inverse(), d);
        assert_eq!(d.compose(&d).unwrap(), d);
    }

    #[test]
    fn base_validation_examples() {
        let single = |r: Relation| SetFamily::new(r.n * r.n, [r.mask]).unwrap();
        assert!(validate_uniformity_base(&single(Relation::diagonal(2))));
        assert!(validate_uniformity_base(&single(Relation::full(2))));
        let skew = Relation::diagonal(2).union(&rel(2, &[(0, 1)]));
        assert!(!validate_uniformity_base(&single(skew)));
        assert!(!validate_uniformity_base(&single(rel(2, &[(0, 0)]))));
        assert!(!validate_uniformity_base(&SetFamily::empty(4)));
    }

    #[test]
    fn generate_examples() {
        let u = Uniformity::discrete(2);
        assert_eq!(u.members().len(), 1 << (4 - 2));
        let u = Uniformity::indiscrete(2);
        assert_eq!(u.members().members(), &[SubsetMask::full(4)]);
    }

    #[test]
    fn ball_examples() {
        let d = Relation::diagonal(3);
        for x in 0..3 {
            assert_eq!(entourage_ball(&d, x).unwrap(), SubsetMask::singleton(3, x));
            assert_eq!(entourage_ball(&Relation::full(3), x).unwrap(), SubsetMask::full(3));
        }
        let u = Relation::diagonal(2).union(&rel(2, &[(0, 1)]));
        assert_eq!(entourage_ball(&u, 0).unwrap(), SubsetMask::full(2));
        assert_eq!(entourage_ball(&u, 1).unwrap(), SubsetMask::singleton(2, 1));
        assert!(entourage_ball(&u, 2).is_err());
    }

    #[test]
    fn induced_topology_examples() {
        assert!(induced_topology(&Uniformity::discrete(3)).is_discrete());
        assert_eq!(induced_topology(&Uniformity::indiscrete(3)), Topology::indiscrete(3));
    }

    #[test]
    fn uniform_continuity_examples() {
        let u = Uniformity::discrete(2);
        assert!(is_uniformly_continuous(&[0, 1], &u, &u).unwrap());
        assert!(is_uniformly_continuous(&[1, 0], &u, &Uniformity::indiscrete(2)).unwrap());
        assert!(!is_uniformly_continuous(&[0, 1], &Uniformity::indiscrete(2), &u).unwrap());
        assert!(is_uniformly_continuous(&[0, 2], &u, &u).is_err());
    }

    #[test]
    fn pair_identification_is_bijective() {
        let idx = ProductIndexing::new(vec![2, 3]).unwrap();
        let ident = PairIdentification::new(&idx, 4096).unwrap();
        let t = idx.total();
        let mut seen = vec![false; t * t];
        for x in 0..t {
            for y in 0..t {
                let c = ident.forward(x, y).unwrap();
                assert!(!seen[c]);
                seen[c] = true;
                assert_eq!(ident.backward(c).unwrap(), (x, y));
            }
        }
        assert!(seen.iter().all(|&s| s));
        assert!(PairIdentification::new(&ProductIndexing::new(vec![8, 9]).unwrap(), 4096).is_err());
    }

    #[test]
    fn f_uniformity_examples() {
        let idx = ProductIndexing::new(vec![2, 2]).unwrap();
        let d = Uniformity::discrete(2);
        let u = f_uniformity_of(&[&d, &d], &idx, &Filter::trivial(2)).unwrap();
        assert!(u.base().contains(Relation::diagonal(4).mask()));

        let f1 = Filter::principal(SubsetMask::singleton(2, 0)).unwrap();
        let u = f_uniformity_of(&[&d, &d], &idx, &f1).unwrap();
        // related iff the second coordinates agree
        let oracle = Relation::from_pairs(
            4,
            (0..4).flat_map(|x| (0..4).map(move |y| (x, y))).filter(|&(x, y)| x / 2 == y / 2),
        )
        .unwrap();
        assert_eq!(u.core(), &oracle);
    }
}

//! Finite universes, subsets as bit vectors, canonical set families and
//! mixed-radix encoding of product points.
//!
//! All core computation works on element indices. Labels only live on
//! [`Universe`] and are used at the I/O boundary.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest single universe (factor or index set).
pub const MAX_UNIVERSE: usize = 64;

/// Default cap on the number of points of a product (and on relation masks).
pub const DEFAULT_MAX_PRODUCT: usize = 4096;

/// An ordered set of distinct element labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    labels: Vec<String>,
}

impl Universe {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::input("a universe needs at least one element"));
        }
        if labels.len() > MAX_UNIVERSE {
            return Err(Error::resource(format!(
                "universe of {} elements exceeds the cap of {MAX_UNIVERSE}",
                labels.len()
            )));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::input(format!("duplicate element label `{l}`")));
            }
        }
        Ok(Universe { labels })
    }

    /// Universe labelled `0..n`.
    pub fn numbered(n: usize) -> Result<Self> {
        Universe::new((0..n).map(|i| i.to_string()))
    }

    /// Universe labelled `1..=n`, the convention used for index sets.
    pub fn indices_from_one(n: usize) -> Result<Self> {
        Universe::new((1..=n).map(|i| i.to_string()))
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Parse a list of labels into a mask.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<SubsetMask> {
        let mut m = SubsetMask::empty(self.size());
        for l in labels {
            let l = l.as_ref();
            let i = self
                .index_of(l)
                .ok_or_else(|| Error::input(format!("unknown element label `{l}`")))?;
            m.insert(i);
        }
        Ok(m)
    }

    /// Labels of the members of `m`, sorted lexicographically.
    pub fn labels_of(&self, m: &SubsetMask) -> Vec<String> {
        let mut out: Vec<String> = m.iter().map(|i| self.labels[i].clone()).collect();
        out.sort();
        out
    }
}

/// A subset of `{0, .., len-1}` stored as a characteristic bit vector.
///
/// The derived order is the canonical one: ascending numeric value of the
/// bit vector with element 0 as the least significant bit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    len: usize,
    words: Vec<u64>,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl SubsetMask {
    pub fn empty(len: usize) -> Self {
        SubsetMask { len, words: vec![0; word_count(len)] }
    }

    pub fn full(len: usize) -> Self {
        let mut m = SubsetMask { len, words: vec![u64::MAX; word_count(len)] };
        m.trim();
        m
    }

    pub fn singleton(len: usize, i: usize) -> Self {
        let mut m = SubsetMask::empty(len);
        m.insert(i);
        m
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut m = SubsetMask::empty(len);
        for i in indices {
            m.insert(i);
        }
        m
    }

    /// Mask from the low `len` bits of `bits`; `len` must be at most 64.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= 64, "from_bits needs len <= 64");
        let mut m = SubsetMask { len, words: vec![bits; word_count(len)] };
        m.trim();
        m
    }

    /// The low word as an integer, when the universe fits in 64 bits.
    pub fn to_bits(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn universe_size(&self) -> usize {
        self.len
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "element {i} outside universe of size {}", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.len, "element {i} outside universe of size {}", self.len);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == SubsetMask::full(self.len)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.len, other.len, "mask universe sizes differ");
        let words = self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect();
        SubsetMask { len: self.len, words }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let mut m = SubsetMask {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        m.trim();
        m
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "mask universe sizes differ");
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "mask universe sizes differ");
        self.words.iter().zip(&other.words).any(|(&a, &b)| a & b != 0)
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// All subsets of a universe of size `len`, in canonical order.
    ///
    /// Panics when `len > 24`; exhaustive sweeps beyond that are not meant to run.
    pub fn all_subsets(len: usize) -> impl Iterator<Item = SubsetMask> {
        assert!(len <= 24, "refusing to enumerate 2^{len} subsets");
        (0u64..1 << len).map(move |b| SubsetMask::from_bits(len, b))
    }

    /// All subsets of `self`, in canonical order.
    pub fn subsets(&self) -> Vec<SubsetMask> {
        let members: Vec<usize> = self.iter().collect();
        assert!(members.len() <= 24, "refusing to enumerate 2^{} subsets", members.len());
        (0u64..1 << members.len())
            .map(|b| {
                SubsetMask::from_indices(
                    self.len,
                    members.iter().enumerate().filter(|(k, _)| b >> k & 1 == 1).map(|(_, &i)| i),
                )
            })
            .collect()
    }
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}/{}", self.len)
    }
}

/// A duplicate-free family of subsets in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetFamily {
    universe_size: usize,
    members: Vec<SubsetMask>,
}

impl SetFamily {
    pub fn empty(universe_size: usize) -> Self {
        SetFamily { universe_size, members: Vec::new() }
    }

    /// Canonicalize a raw sequence: dedupe and sort.
    pub fn new(universe_size: usize, raw: impl IntoIterator<Item = SubsetMask>) -> Result<Self> {
        let mut members: Vec<SubsetMask> = raw.into_iter().collect();
        if let Some(bad) = members.iter().find(|m| m.universe_size() != universe_size) {
            return Err(Error::input(format!(
                "family over a {universe_size}-universe contains a mask over {}",
                bad.universe_size()
            )));
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily { universe_size, members })
    }

    /// Like [`SetFamily::new`] for masks already known to share the universe.
    pub(crate) fn from_masks(universe_size: usize, raw: impl IntoIterator<Item = SubsetMask>) -> Self {
        let mut members: Vec<SubsetMask> = raw.into_iter().collect();
        debug_assert!(members.iter().all(|m| m.universe_size() == universe_size));
        members.sort_unstable();
        members.dedup();
        SetFamily { universe_size, members }
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SubsetMask> {
        self.members.iter()
    }

    pub fn contains(&self, m: &SubsetMask) -> bool {
        self.members.binary_search(m).is_ok()
    }

    /// Union of all members (empty mask for the empty family).
    pub fn union_all(&self) -> SubsetMask {
        self.members
            .iter()
            .fold(SubsetMask::empty(self.universe_size), |acc, m| acc.union(m))
    }

    /// Intersection of all members (full mask for the empty family).
    pub fn intersection_all(&self) -> SubsetMask {
        self.members
            .iter()
            .fold(SubsetMask::full(self.universe_size), |acc, m| acc.intersection(m))
    }

    /// True iff `A ∩ B` belongs to the family for all members `A`, `B`.
    pub fn is_intersection_closed(&self) -> bool {
        self.members.iter().enumerate().all(|(k, a)| {
            self.members[k..].iter().all(|b| self.contains(&a.intersection(b)))
        })
    }

    /// All families over a universe of size `n`, in canonical order of their
    /// bit encodings. Only for tiny universes.
    pub fn all_families(n: usize) -> impl Iterator<Item = SetFamily> {
        let subsets: Vec<SubsetMask> = SubsetMask::all_subsets(n).collect();
        assert!(subsets.len() <= 20, "refusing to enumerate 2^{} families", subsets.len());
        (0u64..1 << subsets.len()).map(move |b| SetFamily {
            universe_size: n,
            members: subsets
                .iter()
                .enumerate()
                .filter(|(k, _)| b >> k & 1 == 1)
                .map(|(_, m)| m.clone())
                .collect(),
        })
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a SubsetMask;
    type IntoIter = std::slice::Iter<'a, SubsetMask>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Mixed-radix indexing of a finite product; coordinate 0 is least significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductIndexing {
    factor_sizes: Vec<usize>,
    total: usize,
}

impl ProductIndexing {
    pub fn new(factor_sizes: Vec<usize>) -> Result<Self> {
        Self::with_limit(factor_sizes, DEFAULT_MAX_PRODUCT)
    }

    pub fn with_limit(factor_sizes: Vec<usize>, max_product: usize) -> Result<Self> {
        if factor_sizes.is_empty() {
            return Err(Error::input("a product needs at least one factor"));
        }
        if factor_sizes.contains(&0) {
            return Err(Error::input("factor universes must be nonempty"));
        }
        let mut total: usize = 1;
        for &s in &factor_sizes {
            total = total
                .checked_mul(s)
                .filter(|&t| t <= max_product)
                .ok_or_else(|| {
                    Error::resource(format!(
                        "product of factor sizes {factor_sizes:?} exceeds the cap of {max_product}"
                    ))
                })?;
        }
        Ok(ProductIndexing { factor_sizes, total })
    }

    pub fn factor_sizes(&self) -> &[usize] {
        &self.factor_sizes
    }

    pub fn factor_count(&self) -> usize {
        self.factor_sizes.len()
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn encode(&self, coords: &[usize]) -> Result<usize> {
        if coords.len() != self.factor_sizes.len() {
            return Err(Error::input(format!(
                "expected {} coordinates, got {}",
                self.factor_sizes.len(),
                coords.len()
            )));
        }
        let mut code = 0;
        let mut radix = 1;
        for (i, (&c, &s)) in coords.iter().zip(&self.factor_sizes).enumerate() {
            if c >= s {
                return Err(Error::input(format!(
                    "coordinate {i} is {c}, factor has {s} elements"
                )));
            }
            code += c * radix;
            radix *= s;
        }
        Ok(code)
    }

    pub fn decode(&self, code: usize) -> Result<Vec<usize>> {
        if code >= self.total {
            return Err(Error::input(format!(
                "point code {code} outside product of {} points",
                self.total
            )));
        }
        Ok(self.decode_unchecked(code))
    }

    pub(crate) fn decode_unchecked(&self, mut code: usize) -> Vec<usize> {
        self.factor_sizes
            .iter()
            .map(|&s| {
                let c = code % s;
                code /= s;
                c
            })
            .collect()
    }

    /// Coordinate `i` of `code` without allocating.
    pub(crate) fn coord(&self, code: usize, i: usize) -> usize {
        let radix: usize = self.factor_sizes[..i].iter().product();
        code / radix % self.factor_sizes[i]
    }
}

pub fn encode_point(coords: &[usize], idx: &ProductIndexing) -> Result<usize> {
    idx.encode(coords)
}

pub fn decode_point(code: usize, idx: &ProductIndexing) -> Result<Vec<usize>> {
    idx.decode(code)
}

pub fn canonicalize(universe_size: usize, family: impl IntoIterator<Item = SubsetMask>) -> Result<SetFamily> {
    SetFamily::new(universe_size, family)
}

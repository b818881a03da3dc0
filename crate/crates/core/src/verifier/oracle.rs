//! Brute-force reference computations, written straight from the
//! definitions and sharing no code with the constructions they check.

use crate::filters::Filter;
use crate::foundations::{ProductIndexing, SetFamily, SubsetMask};
use crate::topology::Topology;

/// Coordinates of `code`, recomputed digit by digit.
fn digits(sizes: &[usize], mut code: usize) -> Vec<usize> {
    sizes
        .iter()
        .map(|&s| {
            let d = code % s;
            code /= s;
            d
        })
        .collect()
}

/// Every tuple `(A_0, .., A_k)` of subsets with `A_i` accepted by `keep(i, A_i)`.
fn subset_tuples(sizes: &[usize], keep: impl Fn(usize, &SubsetMask) -> bool) -> Vec<Vec<SubsetMask>> {
    let mut out = vec![Vec::new()];
    for (i, &s) in sizes.iter().enumerate() {
        let opts: Vec<SubsetMask> = SubsetMask::all_subsets(s).filter(|a| keep(i, a)).collect();
        out = out
            .into_iter()
            .flat_map(|p| {
                opts.iter().map(move |a| {
                    let mut q = p.clone();
                    q.push(a.clone());
                    q
                })
            })
            .collect();
    }
    out
}

fn full_indexes(tuple: &[SubsetMask]) -> SubsetMask {
    SubsetMask::from_indices(tuple.len(), (0..tuple.len()).filter(|&i| tuple[i].is_full()))
}

fn points_of(sizes: &[usize], tuple: &[SubsetMask]) -> SubsetMask {
    let total: usize = sizes.iter().product();
    SubsetMask::from_indices(
        total,
        (0..total).filter(|&z| digits(sizes, z).iter().zip(tuple).all(|(&c, a)| a.contains(c))),
    )
}

/// Opens of the product topology admitted by `admits`: all subsets of the
/// product that are unions of admitted open boxes.
pub fn product_opens(factors: &[&Topology], admits: impl Fn(&SubsetMask) -> bool) -> SetFamily {
    let sizes: Vec<usize> = factors.iter().map(|t| t.universe_size()).collect();
    let boxes: Vec<SubsetMask> = subset_tuples(&sizes, |i, a| factors[i].opens().contains(a))
        .into_iter()
        .filter(|t| admits(&full_indexes(t)))
        .map(|t| points_of(&sizes, &t))
        .collect();
    let total: usize = sizes.iter().product();
    SetFamily::new(
        total,
        SubsetMask::all_subsets(total).filter(|a| {
            let covered = boxes
                .iter()
                .filter(|b| b.is_subset(a))
                .fold(SubsetMask::empty(total), |acc, b| acc.union(b));
            &covered == a
        }),
    )
    .expect("same universe")
}

/// Members of the product filter admitted by `admits`: supersets of admitted
/// boxes whose components belong to the factor filters.
pub fn product_filter_members(factors: &[&Filter], admits: impl Fn(&SubsetMask) -> bool) -> SetFamily {
    let sizes: Vec<usize> = factors.iter().map(|f| f.universe_size()).collect();
    let boxes: Vec<SubsetMask> = subset_tuples(&sizes, |i, a| factors[i].contains(a))
        .into_iter()
        .filter(|t| admits(&full_indexes(t)))
        .map(|t| points_of(&sizes, &t))
        .collect();
    let total: usize = sizes.iter().product();
    SetFamily::new(total, SubsetMask::all_subsets(total).filter(|a| boxes.iter().any(|b| b.is_subset(a))))
        .expect("same universe")
}

/// The base condition without covering: every point of `B1 ∩ B2` lies in a
/// member inside `B1 ∩ B2`.
pub fn meets_point_criterion(fam: &SetFamily) -> bool {
    fam.iter().all(|b1| {
        fam.iter().all(|b2| {
            let meet = b1.intersection(b2);
            let ok = meet.iter().all(|x| fam.iter().any(|b3| b3.contains(x) && b3.is_subset(&meet)));
            ok
        })
    })
}

/// Members of a filter, by asking it about every subset.
pub fn filter_members(f: &Filter) -> Vec<SubsetMask> {
    SubsetMask::all_subsets(f.universe_size()).filter(|a| f.contains(a)).collect()
}

/// Coordinates of a product point.
pub fn coords(idx: &ProductIndexing, z: usize) -> Vec<usize> {
    digits(idx.factor_sizes(), z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_opens_of_discrete_factors() {
        let d = Topology::discrete(2);
        let all = product_opens(&[&d, &d], |_| true);
        assert_eq!(all.len(), 16);
        // Only boxes with every component full: the indiscrete topology.
        let none = product_opens(&[&d, &d], |delta| delta.is_full());
        assert_eq!(none.len(), 2);
    }

    #[test]
    fn point_criterion_ignores_covering() {
        let fam = SetFamily::new(2, [SubsetMask::singleton(2, 0)]).unwrap();
        assert!(meets_point_criterion(&fam));
    }
}

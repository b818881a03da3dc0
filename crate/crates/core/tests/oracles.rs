//! Library results against direct brute force over small universes.

use fprod_core::filters::{enumerate_filters, validate_filter_base};
use fprod_core::fproduct::{f_filter_of, f_topology_of};
use fprod_core::topology::{enumerate_topologies, validate_base};
use fprod_core::uniformity::{f_uniformity_of, induced_topology};
use fprod_core::verifier::enumerate_uniformity_bases;
use fprod_core::{Filter, ProductIndexing, SetFamily, SubsetMask, Topology};

fn all_subsets(n: usize) -> Vec<SubsetMask> {
    (0..1u64 << n).map(|b| SubsetMask::from_bits(n, b)).collect()
}

fn coords(sizes: &[usize], mut z: usize) -> Vec<usize> {
    sizes
        .iter()
        .map(|&s| {
            let c = z % s;
            z /= s;
            c
        })
        .collect()
}

/// Try every colouring of the points with `k` colours plus "unused".
fn disjoint_dense_exists(t: &Topology, k: usize) -> bool {
    let n = t.universe_size();
    let opens: Vec<&SubsetMask> = t.opens().iter().filter(|o| !o.is_empty()).collect();
    let mut colour = vec![0usize; n];
    fn go(p: usize, k: usize, colour: &mut Vec<usize>, opens: &[&SubsetMask]) -> bool {
        let n = colour.len();
        if p == n {
            return (1..=k).all(|c| {
                let set = SubsetMask::from_indices(n, (0..n).filter(|&x| colour[x] == c));
                opens.iter().all(|o| o.intersects(&set))
            });
        }
        (0..=k).any(|c| {
            colour[p] = c;
            go(p + 1, k, colour, opens)
        })
    }
    go(0, k, &mut colour, &opens)
}

#[test]
fn disjoint_dense_matches_exhaustive_colouring() {
    for n in 1..=4 {
        for t in enumerate_topologies(n).unwrap() {
            for k in 1..=n {
                let found = t.find_disjoint_dense(k);
                assert_eq!(found.is_some(), disjoint_dense_exists(&t, k), "{t:?} k={k}");
                if let Some(sets) = found {
                    assert_eq!(sets.len(), k);
                    for (a, s) in sets.iter().enumerate() {
                        assert!(t.is_dense(s).unwrap());
                        assert!(sets[a + 1..].iter().all(|o| !o.intersects(s)));
                    }
                }
            }
        }
    }
}

fn is_base_by_definition(fam: &SetFamily) -> bool {
    let n = fam.universe_size();
    let covers = (0..n).all(|x| fam.iter().any(|b| b.contains(x)));
    covers
        && fam.iter().all(|u| {
            fam.iter().all(|v| {
                let meet = u.intersection(v);
                let ok = meet.iter().all(|x| fam.iter().any(|w| w.contains(x) && w.is_subset(&meet)));
                ok
            })
        })
}

#[test]
fn validate_base_matches_definition_exhaustively() {
    for n in 0..=3 {
        for fam in SetFamily::all_families(n) {
            assert_eq!(validate_base(&fam), is_base_by_definition(&fam), "{fam:?}");
        }
    }
}

#[test]
fn enumeration_counts_and_order() {
    let counts: Vec<usize> = (1..=4).map(|n| enumerate_topologies(n).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 4, 29, 355]);
    let filters: Vec<usize> = (1..=4).map(|n| enumerate_filters(n, true).unwrap().len()).collect();
    assert_eq!(filters, vec![2, 4, 8, 16]);
    // Topologies on 3 points by direct search over families of opens.
    let direct = SetFamily::all_families(3)
        .filter(|f| Topology::from_opens(f.clone()).is_ok())
        .count();
    assert_eq!(direct, 29);
}

/// A set is open when each of its points sits in an admitted box inside it.
fn product_opens_by_definition(factors: &[&Topology], filter: &Filter) -> Vec<SubsetMask> {
    let sizes: Vec<usize> = factors.iter().map(|t| t.universe_size()).collect();
    let total: usize = sizes.iter().product();
    let k = factors.len();
    let mut boxes: Vec<SubsetMask> = Vec::new();
    let choices: Vec<Vec<&SubsetMask>> =
        factors.iter().map(|t| t.opens().iter().filter(|o| !o.is_empty()).collect()).collect();
    let mut pick = vec![0usize; k];
    'outer: loop {
        let comps: Vec<&SubsetMask> = (0..k).map(|i| choices[i][pick[i]]).collect();
        let full_at = SubsetMask::from_indices(k, (0..k).filter(|&i| comps[i].is_full()));
        if filter.contains(&full_at) {
            boxes.push(SubsetMask::from_indices(
                total,
                (0..total).filter(|&z| coords(&sizes, z).iter().enumerate().all(|(i, &c)| comps[i].contains(c))),
            ));
        }
        for i in 0..k {
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                continue 'outer;
            }
            pick[i] = 0;
        }
        break;
    }
    all_subsets(total)
        .into_iter()
        .filter(|o| o.iter().all(|z| boxes.iter().any(|b| b.contains(z) && b.is_subset(o))))
        .collect()
}

#[test]
fn f_topology_matches_definition() {
    let twos = enumerate_topologies(2).unwrap();
    let idx = ProductIndexing::new(vec![2, 2]).unwrap();
    for f in enumerate_filters(2, true).unwrap() {
        for a in &twos {
            for b in &twos {
                let t = f_topology_of(&[a, b], &idx, &f).unwrap();
                assert_eq!(t.opens().members(), product_opens_by_definition(&[a, b], &f).as_slice());
            }
        }
    }
    let s = Topology::sierpinski();
    let threes = enumerate_topologies(3).unwrap();
    let idx3 = ProductIndexing::new(vec![2, 3, 2]).unwrap();
    for f in enumerate_filters(3, true).unwrap() {
        for c in threes.iter().step_by(4) {
            let t = f_topology_of(&[&s, c, &s], &idx3, &f).unwrap();
            assert_eq!(t.opens().members(), product_opens_by_definition(&[&s, c, &s], &f).as_slice());
        }
    }
}

#[test]
fn f_filter_matches_definition() {
    let proper2 = enumerate_filters(2, false).unwrap();
    let proper3 = enumerate_filters(3, false).unwrap();
    let idx = ProductIndexing::new(vec![2, 3]).unwrap();
    for g in enumerate_filters(2, true).unwrap() {
        for a in &proper2 {
            for b in &proper3 {
                let p = f_filter_of(&[a, b], &idx, &g).unwrap();
                // Members: supersets of an admitted box of member components.
                let mut boxes = Vec::new();
                for u in all_subsets(2).iter().filter(|u| a.contains(u)) {
                    for v in all_subsets(3).iter().filter(|v| b.contains(v)) {
                        let full_at = SubsetMask::from_indices(2, [u.is_full(), v.is_full()].iter().enumerate().filter(|(_, f)| **f).map(|(i, _)| i));
                        if g.contains(&full_at) {
                            boxes.push(SubsetMask::from_indices(6, (0..6).filter(|&z| u.contains(z % 2) && v.contains(z / 2))));
                        }
                    }
                }
                assert!(validate_filter_base(&SetFamily::new(6, boxes.clone()).unwrap()));
                for s in all_subsets(6) {
                    assert_eq!(p.contains(&s), boxes.iter().any(|bx| bx.is_subset(&s)), "{g:?} {a:?} {b:?} {s:?}");
                }
            }
        }
    }
}

#[test]
fn f_uniformity_topology_is_f_topology_of_induced() {
    let us = enumerate_uniformity_bases(2).unwrap();
    let idx = ProductIndexing::new(vec![2, 2]).unwrap();
    for f in enumerate_filters(2, true).unwrap() {
        for a in &us {
            for b in &us {
                let u = f_uniformity_of(&[a, b], &idx, &f).unwrap();
                let from_u = induced_topology(&u);
                let (ta, tb) = (induced_topology(a), induced_topology(b));
                let direct = f_topology_of(&[&ta, &tb], &idx, &f).unwrap();
                assert_eq!(from_u.opens(), direct.opens(), "{f:?}");
            }
        }
    }
}

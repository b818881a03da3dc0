//! The checked statements, each split into parts with a hypothesis gate.

use crate::error::{Error, Result};
use crate::filters::{pushforward, validate_filter_base, Filter};
use crate::foundations::{SetFamily, SubsetMask};
use crate::fproduct::{
    different_by_filter_of, equalizer_of, f_filter_base_of, f_filter_of, f_topology_base_of, f_topology_of,
    projection_map,
};
use crate::topology::{enumerate_topologies, is_continuous, validate_base, Topology};
use crate::uniformity::{f_uniformity_base_of, f_uniformity_of, induced_topology, validate_uniformity_base};
use crate::foundations::DEFAULT_MAX_PRODUCT;

use super::case::{Case, FactorData};
use super::grid::{tuples, FactorPreset, FactorSource, FilterSource, InstanceGrid};
use super::oracle;
use super::report::PartKind;

#[derive(Debug, Clone)]
pub struct Eval {
    pub holds: bool,
    pub detail: String,
}

impl Eval {
    fn new(holds: bool, detail: impl Into<String>) -> Self {
        Eval { holds, detail: detail.into() }
    }
}

pub type Hypothesis = fn(&Case) -> bool;
pub type Statement = fn(&Case) -> Result<Eval>;

pub struct Part {
    pub name: &'static str,
    pub kind: PartKind,
    pub hypothesis: Hypothesis,
    pub statement: Statement,
}

pub struct Prop {
    pub id: &'static str,
    pub claim: &'static str,
    /// What one instance is, for human-readable counts.
    pub unit: &'static str,
    pub default_grid: fn() -> InstanceGrid,
    pub generate: fn(&InstanceGrid) -> Result<Vec<Case>>,
    pub parts: Vec<Part>,
    pub notes: &'static [&'static str],
}

fn universal(name: &'static str, hypothesis: Hypothesis, statement: Statement) -> Part {
    Part { name, kind: PartKind::Universal, hypothesis, statement }
}

fn existential(name: &'static str, hypothesis: Hypothesis, statement: Statement) -> Part {
    Part { name, kind: PartKind::Existential, hypothesis, statement }
}

// ---- formatting ----

pub(crate) fn show_filter(f: &Filter) -> String {
    if f.is_trivial() {
        "trivial".to_string()
    } else {
        let core: Vec<String> = f.core().iter().map(|i| (i + 1).to_string()).collect();
        format!("<{{{}}}>", core.join(","))
    }
}

fn show_set(m: &SubsetMask, from_one: bool) -> String {
    let off = usize::from(from_one);
    let items: Vec<String> = m.iter().map(|i| (i + off).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn show_family(fam: &SetFamily) -> String {
    let items: Vec<String> = fam.iter().map(|m| show_set(m, true)).collect();
    format!("{{{}}}", items.join(", "))
}

fn show_point(c: &Case, z: usize) -> Result<String> {
    let coords = oracle::coords(&c.indexing()?, z);
    let items: Vec<String> = coords.iter().map(|x| x.to_string()).collect();
    Ok(format!("({})", items.join(",")))
}

// ---- hypotheses ----

fn always(_: &Case) -> bool {
    true
}

fn nontrivial_factors(c: &Case) -> bool {
    c.topologies().map(|ts| ts.iter().all(|t| t.is_nontrivial())).unwrap_or(false)
}

fn saturated(c: &Case) -> bool {
    c.index_filter.is_saturated()
}

fn not_saturated(c: &Case) -> bool {
    !c.index_filter.is_saturated()
}

fn proper(c: &Case) -> bool {
    c.index_filter.is_proper()
}

fn proper_with_two_point_factors(c: &Case) -> bool {
    c.index_filter.is_proper() && c.factor_sizes().iter().all(|&s| s >= 2)
}

fn hausdorff_example_hypothesis(c: &Case) -> bool {
    !c.index_filter.is_saturated()
        && c.topologies().map(|ts| ts.iter().all(|t| t.is_hausdorff() && t.universe_size() >= 2)).unwrap_or(false)
}

fn single_hausdorff(c: &Case) -> bool {
    c.topologies().map(|ts| ts[0].is_hausdorff()).unwrap_or(false)
}

fn projections_match(c: &Case) -> bool {
    (|| -> Result<bool> {
        let g = c.product_filter.as_ref().ok_or_else(|| Error::input("no product filter"))?;
        let idx = c.indexing()?;
        for (i, f) in c.filters()?.into_iter().enumerate() {
            if &pushforward(&projection_map(&idx, i), f.universe_size(), g)? != f {
                return Ok(false);
            }
        }
        Ok(true)
    })()
    .unwrap_or(false)
}

// ---- generators ----

fn check_index_size(n: usize) -> Result<()> {
    if n == 0 || n > 4 {
        return Err(Error::input(format!("index sizes must lie in 1..=4, got {n}")));
    }
    Ok(())
}

pub(crate) fn gen_topologies_by_filter(grid: &InstanceGrid) -> Result<Vec<Case>> {
    let opts = grid.topology_options()?;
    let mut out = Vec::new();
    for &n in &grid.index_sizes {
        check_index_size(n)?;
        for f in grid.index_filters(n)? {
            for t in tuples(&opts, n) {
                out.push(Case::new(n, FactorData::Topologies(t), f.clone()));
            }
        }
    }
    Ok(out)
}

fn gen_topologies_by_family(grid: &InstanceGrid) -> Result<Vec<Case>> {
    let opts = grid.topology_options()?;
    let mut out = Vec::new();
    for &n in &grid.index_sizes {
        check_index_size(n)?;
        for t in tuples(&opts, n) {
            for fam in SetFamily::all_families(n).skip(1) {
                let mut c = Case::new(n, FactorData::Topologies(t.clone()), Filter::trivial(n));
                c.index_family = Some(fam);
                out.push(c);
            }
        }
    }
    Ok(out)
}

pub(crate) fn gen_topologies_by_filter_pair(grid: &InstanceGrid) -> Result<Vec<Case>> {
    let opts = grid.topology_options()?;
    let mut out = Vec::new();
    for &n in &grid.index_sizes {
        check_index_size(n)?;
        let filters = grid.index_filters(n)?;
        for f in &filters {
            for g in &filters {
                for t in tuples(&opts, n) {
                    let mut c = Case::new(n, FactorData::Topologies(t), f.clone());
                    c.other_filter = Some(g.clone());
                    out.push(c);
                }
            }
        }
    }
    Ok(out)
}

fn gen_index_filters(grid: &InstanceGrid) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for &n in &grid.index_sizes {
        check_index_size(n)?;
        for f in grid.index_filters(n)? {
            out.push(Case::new(n, FactorData::None, f));
        }
    }
    Ok(out)
}

fn gen_single_topologies(grid: &InstanceGrid) -> Result<Vec<Case>> {
    Ok(grid
        .topology_options()?
        .into_iter()
        .map(|t| Case::new(1, FactorData::Topologies(vec![t]), Filter::trivial(1)))
        .collect())
}

pub(crate) fn gen_filters_by_filter(grid: &InstanceGrid) -> Result<Vec<Case>> {
    let opts = grid.filter_options()?;
    let mut out = Vec::new();
    for &n in &grid.index_sizes {
        check_index_size(n)?;
        for f in grid.index_filters(n)? {
            for t in tuples(&opts, n) {
                out.push(Case::new(n, FactorData::Filters(t), f.clone()));
            }
        }
    }
    Ok(out)
}

const MAX_PRODUCT_FOR_FILTER_SWEEP: usize = 12;

fn gen_product_filters(grid: &InstanceGrid) -> Result<Vec<Case>> {
    let opts = grid.filter_options()?;
    let mut out = Vec::new();
    for &n in &grid.index_sizes {
        check_index_size(n)?;
        for t in tuples(&opts, n) {
            let total: usize = t.iter().map(Filter::universe_size).product();
            if total > MAX_PRODUCT_FOR_FILTER_SWEEP {
                return Err(Error::resource(format!(
                    "sweeping all filters on a {total}-point product exceeds the cap of {MAX_PRODUCT_FOR_FILTER_SWEEP} points"
                )));
            }
            let all = std::iter::once(Filter::trivial(total)).chain(
                SubsetMask::all_subsets(total)
                    .filter(|a| !a.is_empty())
                    .map(|a| Filter::principal(a).expect("nonempty")),
            );
            for g in all {
                let mut c = Case::new(n, FactorData::Filters(t.clone()), Filter::trivial(n));
                c.product_filter = Some(g);
                out.push(c);
            }
        }
    }
    Ok(out)
}

pub(crate) fn gen_uniformities_by_filter(grid: &InstanceGrid) -> Result<Vec<Case>> {
    let opts = grid.uniformity_options()?;
    let mut out = Vec::new();
    for &n in &grid.index_sizes {
        check_index_size(n)?;
        for f in grid.index_filters(n)? {
            for t in tuples(&opts, n) {
                out.push(Case::new(n, FactorData::Uniformities(t), f.clone()));
            }
        }
    }
    Ok(out)
}

// ---- shared computations ----

pub(crate) fn product_topology(c: &Case, f: &Filter) -> Result<Topology> {
    f_topology_of(&c.topologies()?, &c.indexing()?, f)
}

fn product_filter_of(c: &Case) -> Result<Filter> {
    f_filter_of(&c.filters()?, &c.indexing()?, &c.index_filter)
}

fn index_family(c: &Case) -> Result<&SetFamily> {
    c.index_family.as_ref().ok_or_else(|| Error::input("instance has no index family"))
}

fn other_filter(c: &Case) -> Result<&Filter> {
    c.other_filter.as_ref().ok_or_else(|| Error::input("instance has no second index filter"))
}

fn product_point(c: &Case, coords: &[usize]) -> Result<usize> {
    c.indexing()?.encode(coords)
}

// ---- box families ----

fn family_base(c: &Case) -> Result<(bool, bool, bool, String)> {
    let fam = index_family(c)?;
    let base = f_topology_base_of(&c.topologies()?, &c.indexing()?, fam)?;
    let closed = fam.is_intersection_closed();
    let is_base = validate_base(&base);
    let point = oracle::meets_point_criterion(&base);
    let detail = format!(
        "family {}: intersection-closed={closed}, boxes form a base={is_base}, boxes cover the product={}",
        show_family(fam),
        base.union_all().is_full()
    );
    Ok((closed, is_base, point, detail))
}

fn family_forward(c: &Case) -> Result<Eval> {
    let (closed, is_base, _, d) = family_base(c)?;
    Ok(Eval::new(!is_base || closed, d))
}

fn family_backward(c: &Case) -> Result<Eval> {
    let (closed, is_base, _, d) = family_base(c)?;
    Ok(Eval::new(!closed || is_base, d))
}

fn family_backward_point(c: &Case) -> Result<Eval> {
    let (closed, _, point, d) = family_base(c)?;
    Ok(Eval::new(!closed || point, d))
}

// ---- order immersion ----

fn immersion_data(c: &Case) -> Result<(bool, bool, String)> {
    let f = &c.index_filter;
    let g = other_filter(c)?;
    let filters_leq = f.leq(g)?;
    let tops_leq = product_topology(c, f)?.leq(&product_topology(c, g)?)?;
    let detail = format!(
        "F={} G={}: F<=G is {filters_leq}, J_F<=J_G is {tops_leq}",
        show_filter(f),
        show_filter(g)
    );
    Ok((filters_leq, tops_leq, detail))
}

fn immersion_forward(c: &Case) -> Result<Eval> {
    let (a, b, d) = immersion_data(c)?;
    Ok(Eval::new(!a || b, d))
}

fn immersion_backward(c: &Case) -> Result<Eval> {
    let (a, b, d) = immersion_data(c)?;
    Ok(Eval::new(!b || a, d))
}

fn immersion_both(c: &Case) -> Result<Eval> {
    let (a, b, d) = immersion_data(c)?;
    Ok(Eval::new(a == b, d))
}

fn topology_matches_oracle(c: &Case) -> Result<Eval> {
    let ts = c.topologies()?;
    let t = product_topology(c, &c.index_filter)?;
    let oracle = oracle::product_opens(&ts, |delta| c.index_filter.contains(delta));
    let holds = t.opens() == &oracle;
    Ok(Eval::new(
        holds,
        format!(
            "F={}: {} opens constructed, {} by brute force",
            show_filter(&c.index_filter),
            t.opens().len(),
            oracle.len()
        ),
    ))
}

// ---- saturation forms ----

fn saturation_forms(c: &Case) -> (bool, bool, String) {
    let n = c.index_size;
    let members = oracle::filter_members(&c.index_filter);
    let escapes = (0..n).all(|i| members.iter().any(|a| !a.contains(i)));
    let cofinite = (0..n).all(|i| {
        let mut rest = SubsetMask::full(n);
        rest.remove(i);
        members.contains(&rest)
    });
    let detail = format!(
        "F={}: every index escapes a member={escapes}, every co-singleton is a member={cofinite}",
        show_filter(&c.index_filter)
    );
    (escapes, cofinite, detail)
}

fn saturation_forward(c: &Case) -> Result<Eval> {
    let (a, b, d) = saturation_forms(c);
    Ok(Eval::new(!a || b, d))
}

fn saturation_backward(c: &Case) -> Result<Eval> {
    let (a, b, d) = saturation_forms(c);
    Ok(Eval::new(!b || a, d))
}

fn saturation_flag(c: &Case) -> Result<Eval> {
    let (_, b, d) = saturation_forms(c);
    Ok(Eval::new(c.index_filter.is_saturated() == b, d))
}

// ---- projections ----

fn projections_continuous(c: &Case) -> Result<(Vec<bool>, String)> {
    let t = product_topology(c, &c.index_filter)?;
    let idx = c.indexing()?;
    let cont = c
        .topologies()?
        .iter()
        .enumerate()
        .map(|(i, f)| is_continuous(&projection_map(&idx, i), &t, f))
        .collect::<Result<Vec<_>>>()?;
    let detail = format!("F={}: projection continuity {:?}", show_filter(&c.index_filter), cont);
    Ok((cont, detail))
}

fn projections_forward(c: &Case) -> Result<Eval> {
    let (cont, d) = projections_continuous(c)?;
    Ok(Eval::new(!cont.iter().all(|&b| b) || c.index_filter.is_trivial(), d))
}

fn projections_backward(c: &Case) -> Result<Eval> {
    let (cont, d) = projections_continuous(c)?;
    Ok(Eval::new(!c.index_filter.is_trivial() || cont.iter().all(|&b| b), d))
}

fn projections_all(c: &Case) -> Result<Eval> {
    let (cont, d) = projections_continuous(c)?;
    Ok(Eval::new(cont.iter().all(|&b| b), d))
}

fn projection_criterion(c: &Case) -> Result<Eval> {
    let (cont, d) = projections_continuous(c)?;
    let n = c.index_size;
    let ts = c.topologies()?;
    let expected: Vec<bool> = (0..n)
        .map(|i| {
            let mut rest = SubsetMask::full(n);
            rest.remove(i);
            !ts[i].is_nontrivial() || c.index_filter.contains(&rest)
        })
        .collect();
    Ok(Eval::new(cont == expected, d))
}

// ---- separation ----

fn hausdorff_data(c: &Case) -> Result<(bool, bool, String)> {
    let t = product_topology(c, &c.index_filter)?;
    let product = t.is_hausdorff();
    let factors = c.topologies()?.iter().all(|f| f.is_hausdorff());
    let mut detail = format!(
        "F={}: product Hausdorff={product}, all factors Hausdorff={factors}",
        show_filter(&c.index_filter)
    );
    if let Some((x, y)) = t.inseparable_pair() {
        detail.push_str(&format!(", inseparable pair {} {}", show_point(c, x)?, show_point(c, y)?));
    }
    Ok((product, factors, detail))
}

fn hausdorff_forward(c: &Case) -> Result<Eval> {
    let (p, f, d) = hausdorff_data(c)?;
    Ok(Eval::new(!p || f, d))
}

fn hausdorff_backward(c: &Case) -> Result<Eval> {
    let (p, f, d) = hausdorff_data(c)?;
    Ok(Eval::new(!f || p, d))
}

fn hausdorff_both(c: &Case) -> Result<Eval> {
    let (p, f, d) = hausdorff_data(c)?;
    Ok(Eval::new(p == f, d))
}

/// Each slice through a point, varying one coordinate, carries the factor topology.
fn slices_homeomorphic(c: &Case) -> Result<Eval> {
    let t = product_topology(c, &c.index_filter)?;
    let idx = c.indexing()?;
    let ts = c.topologies()?;
    for y in 0..idx.total() {
        let yc = oracle::coords(&idx, y);
        for (i, fi) in ts.iter().enumerate() {
            let slice = SubsetMask::from_indices(
                idx.total(),
                (0..idx.total()).filter(|&z| {
                    let zc = oracle::coords(&idx, z);
                    zc.iter().zip(&yc).enumerate().all(|(j, (a, b))| j == i || a == b)
                }),
            );
            // Slice points in ascending order have coordinate i = 0, 1, ..
            let sub = t.subspace(&slice)?;
            if sub.opens() != fi.opens() {
                return Ok(Eval::new(
                    false,
                    format!("slice through {} along index {} is not homeomorphic to its factor", show_point(c, y)?, i + 1),
                ));
            }
        }
    }
    Ok(Eval::new(true, format!("F={}: every slice carries its factor topology", show_filter(&c.index_filter))))
}

fn first_unsaturated_index(f: &Filter, n: usize) -> Option<usize> {
    (0..n).find(|&i| {
        let mut rest = SubsetMask::full(n);
        rest.remove(i);
        !f.contains(&rest)
    })
}

fn unsaturated_pair(c: &Case) -> Result<Eval> {
    let t = product_topology(c, &c.index_filter)?;
    let n = c.index_size;
    let i0 = first_unsaturated_index(&c.index_filter, n)
        .ok_or_else(|| Error::input("the index filter is saturated"))?;
    let x = product_point(c, &vec![0; n])?;
    let mut yc = vec![0; n];
    yc[i0] = 1;
    let y = product_point(c, &yc)?;
    let meet = t.minimal_open(x).intersects(&t.minimal_open(y));
    Ok(Eval::new(
        meet,
        format!(
            "F={}: {} and {} (differing at index {}) have no disjoint neighborhoods={meet}",
            show_filter(&c.index_filter),
            show_point(c, x)?,
            show_point(c, y)?,
            i0 + 1
        ),
    ))
}

fn not_hausdorff(c: &Case) -> Result<Eval> {
    let (p, _, d) = hausdorff_data(c)?;
    Ok(Eval::new(!p, d))
}

// ---- single spaces ----

fn single(c: &Case) -> Result<&Topology> {
    Ok(c.topologies()?[0])
}

fn hausdorff_is_discrete(c: &Case) -> Result<Eval> {
    let t = single(c)?;
    Ok(Eval::new(t.is_discrete(), format!("{} points, discrete={}", t.universe_size(), t.is_discrete())))
}

fn strictly_coarser_not_hausdorff(c: &Case) -> Result<Eval> {
    let t = single(c)?;
    for s in enumerate_topologies(t.universe_size())? {
        if s.leq(t)? && !t.leq(&s)? && s.is_hausdorff() {
            return Ok(Eval::new(false, format!("a strictly coarser Hausdorff topology: {:?}", s.opens())));
        }
    }
    Ok(Eval::new(true, format!("{} points: no strictly coarser Hausdorff topology", t.universe_size())))
}

fn no_strictly_finer(c: &Case) -> Result<Eval> {
    let t = single(c)?;
    for s in enumerate_topologies(t.universe_size())? {
        if t.leq(&s)? && !s.leq(t)? {
            return Ok(Eval::new(false, format!("a strictly finer topology: {:?}", s.opens())));
        }
    }
    Ok(Eval::new(true, format!("{} points: no strictly finer topology", t.universe_size())))
}

// ---- equalizers ----

fn equalizers_dense(c: &Case) -> Result<Eval> {
    let t = product_topology(c, &c.index_filter)?;
    let idx = c.indexing()?;
    for x in 0..idx.total() {
        let eq = equalizer_of(&idx, &c.index_filter, x)?;
        if !t.is_dense(&eq)? {
            return Ok(Eval::new(
                false,
                format!("F={}: equalizer of {} is not dense", show_filter(&c.index_filter), show_point(c, x)?),
            ));
        }
    }
    Ok(Eval::new(true, format!("F={}: every equalizer is dense", show_filter(&c.index_filter))))
}

fn equalizers_disjoint(c: &Case) -> Result<Eval> {
    let idx = c.indexing()?;
    let f = &c.index_filter;
    for x in 0..idx.total() {
        let ex = equalizer_of(&idx, f, x)?;
        for y in 0..idx.total() {
            if different_by_filter_of(&idx, f, x, y)? && ex.intersects(&equalizer_of(&idx, f, y)?) {
                return Ok(Eval::new(
                    false,
                    format!(
                        "F={}: {} and {} differ on a member of F but their equalizers meet",
                        show_filter(f),
                        show_point(c, x)?,
                        show_point(c, y)?
                    ),
                ));
            }
        }
    }
    Ok(Eval::new(true, format!("F={}: equalizers of F-different points are disjoint", show_filter(f))))
}

fn equalizers_resolve(c: &Case) -> Result<Eval> {
    let t = product_topology(c, &c.index_filter)?;
    let idx = c.indexing()?;
    let n = c.index_size;
    let x = product_point(c, &vec![0; n])?;
    let y = product_point(c, &vec![1; n])?;
    let ex = equalizer_of(&idx, &c.index_filter, x)?;
    let ey = equalizer_of(&idx, &c.index_filter, y)?;
    let ok = !ex.intersects(&ey) && t.is_dense(&ex)? && t.is_dense(&ey)? && t.find_disjoint_dense(2).is_some();
    Ok(Eval::new(
        ok,
        format!(
            "F={}: equalizers of {} and {} are disjoint dense sets={ok}",
            show_filter(&c.index_filter),
            show_point(c, x)?,
            show_point(c, y)?
        ),
    ))
}

// ---- product filters ----

fn filter_base_valid(c: &Case) -> Result<Eval> {
    let base = f_filter_base_of(&c.filters()?, &c.indexing()?, &c.index_filter)?;
    let ok = validate_filter_base(&base);
    Ok(Eval::new(ok, format!("F={}: {} admitted boxes, filter base={ok}", show_filter(&c.index_filter), base.len())))
}

fn filter_matches_oracle(c: &Case) -> Result<Eval> {
    let ff = product_filter_of(c)?;
    let oracle = oracle::product_filter_members(&c.filters()?, |delta| c.index_filter.contains(delta));
    let members = ff.members();
    Ok(Eval::new(
        members == oracle,
        format!(
            "F={}: {} members constructed, {} by brute force",
            show_filter(&c.index_filter),
            members.len(),
            oracle.len()
        ),
    ))
}

fn projected_filters(c: &Case) -> Result<(Vec<Filter>, Vec<&Filter>)> {
    let ff = product_filter_of(c)?;
    let idx = c.indexing()?;
    let fs = c.filters()?;
    let images = fs
        .iter()
        .enumerate()
        .map(|(i, f)| pushforward(&projection_map(&idx, i), f.universe_size(), &ff))
        .collect::<Result<Vec<_>>>()?;
    Ok((images, fs))
}

fn describe_projections(c: &Case, images: &[Filter], fs: &[&Filter]) -> String {
    let pairs: Vec<String> = images
        .iter()
        .zip(fs)
        .map(|(p, f)| format!("{} vs {}", show_set(&p.core(), false), show_set(&f.core(), false)))
        .collect();
    format!("F={}: projected cores vs factor cores [{}]", show_filter(&c.index_filter), pairs.join(", "))
}

fn projections_inside(c: &Case) -> Result<Eval> {
    let (images, fs) = projected_filters(c)?;
    let ok = images.iter().zip(&fs).map(|(p, f)| p.leq(f)).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b);
    Ok(Eval::new(ok, describe_projections(c, &images, &fs)))
}

fn projections_equal(c: &Case) -> Result<Eval> {
    let (images, fs) = projected_filters(c)?;
    let ok = images.iter().zip(&fs).all(|(p, f)| p == *f);
    Ok(Eval::new(ok, describe_projections(c, &images, &fs)))
}

fn projections_strict(c: &Case) -> Result<Eval> {
    let (images, fs) = projected_filters(c)?;
    let ok = images.iter().zip(&fs).any(|(p, f)| p != *f);
    Ok(Eval::new(ok, describe_projections(c, &images, &fs)))
}

fn box_filter_minimal(c: &Case) -> Result<Eval> {
    let g = c.product_filter.as_ref().ok_or_else(|| Error::input("instance has no product filter"))?;
    let n = c.index_size;
    let boxes = f_filter_of(&c.filters()?, &c.indexing()?, &Filter::trivial(n))?;
    let ok = boxes.leq(g)?;
    Ok(Eval::new(
        ok,
        format!(
            "product filter with core {} contains the box filter with core {}: {ok}",
            show_set(&g.core(), false),
            show_set(&boxes.core(), false)
        ),
    ))
}

fn neighborhood_filters(c: &Case) -> Result<Eval> {
    let t = product_topology(c, &c.index_filter)?;
    let idx = c.indexing()?;
    let ts = c.topologies()?;
    for x in 0..idx.total() {
        let xc = oracle::coords(&idx, x);
        let local = ts
            .iter()
            .zip(&xc)
            .map(|(f, &p)| f.neighborhoods_filter(p))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&Filter> = local.iter().collect();
        let expected = f_filter_of(&refs, &idx, &c.index_filter)?;
        if t.neighborhoods_filter(x)? != expected {
            return Ok(Eval::new(
                false,
                format!("F={}: neighborhoods of {} differ", show_filter(&c.index_filter), show_point(c, x)?),
            ));
        }
    }
    Ok(Eval::new(true, format!("F={}: neighborhood filters agree at every point", show_filter(&c.index_filter))))
}

// ---- uniformities ----

fn uniformity_base_valid(c: &Case) -> Result<Eval> {
    let base = f_uniformity_base_of(&c.uniformities()?, &c.indexing()?, &c.index_filter, DEFAULT_MAX_PRODUCT)?;
    let ok = validate_uniformity_base(&base);
    Ok(Eval::new(ok, format!("F={}: {} admitted boxes, uniformity base={ok}", show_filter(&c.index_filter), base.len())))
}

fn uniformity_topology(c: &Case) -> Result<Eval> {
    let us = c.uniformities()?;
    let idx = c.indexing()?;
    let induced = induced_topology(&f_uniformity_of(&us, &idx, &c.index_filter)?);
    let factor_tops: Vec<Topology> = us.iter().map(|u| induced_topology(u)).collect();
    let refs: Vec<&Topology> = factor_tops.iter().collect();
    let direct = f_topology_of(&refs, &idx, &c.index_filter)?;
    let ok = induced == direct;
    Ok(Eval::new(
        ok,
        format!(
            "F={}: induced topology has {} opens, product topology of induced factors has {}",
            show_filter(&c.index_filter),
            induced.opens().len(),
            direct.opens().len()
        ),
    ))
}

// ---- the registry ----

fn grid(index_sizes: &[usize], factors: FactorSource, filters: FilterSource) -> InstanceGrid {
    InstanceGrid::new(index_sizes.to_vec(), factors, filters)
}

fn fixed(p: FactorPreset) -> FactorSource {
    FactorSource::Fixed { presets: vec![p] }
}

pub fn propositions() -> Vec<Prop> {
    vec![
        Prop {
            id: "P2.1",
            claim: "for non-trivial factors, the boxes admitted by a family of index sets form a base iff the family is closed under finite intersections",
            unit: "families",
            default_grid: || grid(&[2, 3], fixed(FactorPreset::Sierpinski), FilterSource::All),
            generate: gen_topologies_by_family,
            parts: vec![
                universal("base-implies-closed", nontrivial_factors, family_forward),
                universal("closed-implies-base", nontrivial_factors, family_backward),
                universal("closed-implies-intersection-condition", nontrivial_factors, family_backward_point),
            ],
            notes: &[
                "a closed family that omits the full index set admits boxes that need not cover the product; the intersection-condition part checks the base property without covering",
            ],
        },
        Prop {
            id: "P2.3",
            claim: "for non-trivial factors, F <= G iff the F-topology is coarser than the G-topology",
            unit: "pairs",
            default_grid: || grid(&[2, 3], fixed(FactorPreset::Sierpinski), FilterSource::All),
            generate: gen_topologies_by_filter_pair,
            parts: vec![
                universal("filter-order-implies-topology-order", nontrivial_factors, immersion_forward),
                universal("topology-order-implies-filter-order", nontrivial_factors, immersion_backward),
                universal("opens-match-brute-force", always, topology_matches_oracle),
            ],
            notes: &["indiscrete factors collapse every F-topology to the indiscrete one and are outside the hypothesis"],
        },
        Prop {
            id: "P2.5",
            claim: "every index escapes some member of F iff every co-singleton belongs to F",
            unit: "filters",
            default_grid: || grid(&[1, 2, 3, 4], FactorSource::Unused, FilterSource::All),
            generate: gen_index_filters,
            parts: vec![
                universal("escape-implies-co-singletons", always, saturation_forward),
                universal("co-singletons-imply-escape", always, saturation_backward),
                universal("saturation-flag-agrees", always, saturation_flag),
            ],
            notes: &["on a finite index set the only saturated filter is the trivial one"],
        },
        Prop {
            id: "P2.7",
            claim: "for non-trivial factors, every projection is continuous iff F contains the cofinite filter",
            unit: "instances",
            default_grid: || grid(&[1, 2, 3], FactorSource::AllTopologies { min_points: 2, max_points: 2 }, FilterSource::All),
            generate: gen_topologies_by_filter,
            parts: vec![
                universal("continuous-projections-imply-cofinite", nontrivial_factors, projections_forward),
                universal("cofinite-implies-continuous-projections", nontrivial_factors, projections_backward),
                universal("projection-continuous-iff-factor-trivial-or-co-singleton", always, projection_criterion),
            ],
            notes: &[
                "on a finite index set the cofinite filter is the trivial filter",
                "tuples containing an indiscrete factor are outside the hypothesis",
            ],
        },
        Prop {
            id: "P2.8",
            claim: "for saturated F, the F-product is Hausdorff iff every factor is",
            unit: "instances",
            default_grid: || grid(&[2], FactorSource::AllTopologies { min_points: 1, max_points: 3 }, FilterSource::All),
            generate: gen_topologies_by_filter,
            parts: vec![
                universal("product-hausdorff-implies-factors", saturated, hausdorff_forward),
                universal("factors-hausdorff-imply-product", saturated, hausdorff_backward),
                universal("slices-homeomorphic-to-factors", saturated, slices_homeomorphic),
            ],
            notes: &["on a finite index set only the trivial filter is saturated, so the F-product is the ordinary product"],
        },
        Prop {
            id: "E2.9",
            claim: "for non-saturated F and Hausdorff factors with two or more points, the F-product is not Hausdorff",
            unit: "instances",
            default_grid: || grid(&[3], fixed(FactorPreset::Discrete2), FilterSource::All),
            generate: gen_topologies_by_filter,
            parts: vec![
                universal("product-not-hausdorff", hausdorff_example_hypothesis, not_hausdorff),
                universal("pair-differing-off-filter-inseparable", hausdorff_example_hypothesis, unsaturated_pair),
                existential("exhibit-inseparable-pair", hausdorff_example_hypothesis, unsaturated_pair),
            ],
            notes: &[],
        },
        Prop {
            id: "P2.10",
            claim: "a Hausdorff finite space is discrete, minimal Hausdorff and maximal compact",
            unit: "spaces",
            default_grid: || grid(&[1], FactorSource::AllTopologies { min_points: 1, max_points: 3 }, FilterSource::Trivial),
            generate: gen_single_topologies,
            parts: vec![
                universal("hausdorff-is-discrete", single_hausdorff, hausdorff_is_discrete),
                universal("strictly-coarser-is-not-hausdorff", single_hausdorff, strictly_coarser_not_hausdorff),
                universal("no-strictly-finer-topology", single_hausdorff, no_strictly_finer),
            ],
            notes: &["every finite space is compact, so maximal compactness means no strictly finer topology exists"],
        },
        Prop {
            id: "P3.1",
            claim: "for proper F, every equalizer is dense and equalizers of F-different points are disjoint",
            unit: "instances",
            default_grid: || grid(&[1, 2, 3], fixed(FactorPreset::Discrete2), FilterSource::ProperOnly),
            generate: gen_topologies_by_filter,
            parts: vec![
                universal("equalizers-dense", proper, equalizers_dense),
                universal("different-points-have-disjoint-equalizers", proper, equalizers_disjoint),
                universal("two-disjoint-dense-equalizers", proper_with_two_point_factors, equalizers_resolve),
            ],
            notes: &[],
        },
        Prop {
            id: "P4.1",
            claim: "the admitted boxes of factor filters form a filter base on the product",
            unit: "instances",
            default_grid: || grid(&[1, 2, 3], FactorSource::AllFilters { points: 2 }, FilterSource::All),
            generate: gen_filters_by_filter,
            parts: vec![
                universal("boxes-form-filter-base", always, filter_base_valid),
                universal("members-match-brute-force", always, filter_matches_oracle),
            ],
            notes: &[],
        },
        Prop {
            id: "P4.2",
            claim: "projections of the F-filter are contained in the factor filters, with equality when F is saturated",
            unit: "instances",
            default_grid: || grid(&[1, 2, 3], FactorSource::AllFilters { points: 2 }, FilterSource::All),
            generate: gen_filters_by_filter,
            parts: vec![
                universal("projection-contained-in-factor", always, projections_inside),
                universal("saturated-projection-equals-factor", saturated, projections_equal),
                existential("non-saturated-projection-can-be-strict", not_saturated, projections_strict),
            ],
            notes: &[],
        },
        Prop {
            id: "P4.3",
            claim: "every filter on the product whose projections are the factor filters contains the box filter",
            unit: "product filters",
            default_grid: || grid(&[2], FactorSource::AllFilters { points: 2 }, FilterSource::Trivial),
            generate: gen_product_filters,
            parts: vec![universal("contains-box-filter", projections_match, box_filter_minimal)],
            notes: &["on a finite index set the box filter is the F-filter of the trivial (cofinite) filter"],
        },
        Prop {
            id: "P4.5",
            claim: "the neighborhood filter of a point in the F-product is the F-filter of the factor neighborhood filters",
            unit: "instances",
            default_grid: || grid(&[2], FactorSource::AllTopologies { min_points: 1, max_points: 3 }, FilterSource::All),
            generate: gen_topologies_by_filter,
            parts: vec![universal("neighborhood-filter-identity", always, neighborhood_filters)],
            notes: &[],
        },
        Prop {
            id: "P5.2",
            claim: "the admitted boxes of factor uniformity bases form a uniformity base on the product",
            unit: "instances",
            default_grid: || grid(&[2], FactorSource::AllUniformityBases { points: 2 }, FilterSource::All),
            generate: gen_uniformities_by_filter,
            parts: vec![universal("boxes-form-uniformity-base", always, uniformity_base_valid)],
            notes: &["each factor may also contribute its full square, so every index set in F can be realized"],
        },
        Prop {
            id: "P5.ind",
            claim: "the topology induced by the F-uniformity is the F-topology of the induced factor topologies",
            unit: "instances",
            default_grid: || grid(&[2], FactorSource::AllUniformityBases { points: 2 }, FilterSource::All),
            generate: gen_uniformities_by_filter,
            parts: vec![universal("induced-topology-identity", always, uniformity_topology)],
            notes: &[],
        },
    ]
}

/// Statements that look plausible but are false in general, together with
/// true controls; a search reports the first counterexample.
pub fn search_claims() -> Vec<Prop> {
    vec![
        Prop {
            id: "hausdorff-for-all-filters",
            claim: "the F-product is Hausdorff iff every factor is, for every F",
            unit: "instances",
            default_grid: || grid(&[2], fixed(FactorPreset::Discrete2), FilterSource::All),
            generate: gen_topologies_by_filter,
            parts: vec![universal("claim", always, hausdorff_both)],
            notes: &[],
        },
        Prop {
            id: "projection-filter-identity-for-all-filters",
            claim: "every projection of the F-filter equals its factor filter, for every F",
            unit: "instances",
            default_grid: || grid(&[2], FactorSource::AllFilters { points: 2 }, FilterSource::All),
            generate: gen_filters_by_filter,
            parts: vec![universal("claim", always, projections_equal)],
            notes: &[],
        },
        Prop {
            id: "projections-continuous-for-all-filters",
            claim: "every projection of the F-product is continuous, for every F",
            unit: "instances",
            default_grid: || grid(&[2], fixed(FactorPreset::Sierpinski), FilterSource::All),
            generate: gen_topologies_by_filter,
            parts: vec![universal("claim", always, projections_all)],
            notes: &[],
        },
        Prop {
            id: "order-immersion-for-all-factors",
            claim: "F <= G iff the F-topology is coarser than the G-topology, for all factors",
            unit: "pairs",
            default_grid: || grid(&[2], FactorSource::AllTopologies { min_points: 2, max_points: 2 }, FilterSource::All),
            generate: gen_topologies_by_filter_pair,
            parts: vec![universal("claim", always, immersion_both)],
            notes: &[],
        },
        Prop {
            id: "equalizers-disjoint-for-all-filters",
            claim: "equalizers of F-different points are disjoint, for every F",
            unit: "instances",
            default_grid: || grid(&[1], fixed(FactorPreset::Discrete2), FilterSource::All),
            generate: gen_topologies_by_filter,
            parts: vec![universal("claim", always, equalizers_disjoint)],
            notes: &[],
        },
        Prop {
            id: "equalizer-dense-for-all-filters",
            claim: "every equalizer is dense in the F-product, for every F",
            unit: "instances",
            default_grid: || grid(&[1, 2], fixed(FactorPreset::Discrete2), FilterSource::All),
            generate: gen_topologies_by_filter,
            parts: vec![universal("claim", always, equalizers_dense)],
            notes: &[],
        },
        Prop {
            id: "f-filter-base-for-all-filters",
            claim: "the admitted boxes of factor filters form a filter base, for every F",
            unit: "instances",
            default_grid: || grid(&[1, 2], FactorSource::AllFilters { points: 2 }, FilterSource::All),
            generate: gen_filters_by_filter,
            parts: vec![universal("claim", always, filter_base_valid)],
            notes: &[],
        },
    ]
}

/// Statements that need infinite index sets or infinite factors.
pub const OUT_OF_SCOPE: &[(&str, &str)] = &[
    ("C2.11", "needs an infinite index set; on finite ones the cofinite filter is trivial"),
    ("P2.12", "concerns infinite products of infinite spaces"),
    ("C2.13", "concerns infinite products of infinite spaces"),
    ("L2.14", "relies on cardinal arithmetic beyond finite models"),
    ("P2.15", "relies on cardinal arithmetic beyond finite models"),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = propositions().iter().chain(search_claims().iter()).map(|p| p.id).collect();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

}

//! Acceptance suite: one line per criterion, each run against its time bound.
//! Exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use fprod_core::fproduct::f_topology_of;
use fprod_core::topology::validate_base;
use fprod_core::verifier::{
    self, enumerate_filters, enumerate_topologies, FactorPreset, FactorSource, FilterSource, InstanceGrid,
    PropositionReport,
};
use fprod_core::{ProductIndexing, SetFamily, SubsetMask, Topology};

use common::{code, fprod, matches_golden, stable_json, stdout};

type Outcome = Result<String, String>;

fn part_passed(r: &PropositionReport, name: &str) -> Result<bool, String> {
    r.parts
        .iter()
        .find(|p| p.name == name)
        .map(|p| p.passed)
        .ok_or_else(|| format!("{} has no part `{name}`", r.prop_id))
}

fn require_parts(r: &PropositionReport, names: &[&str]) -> Result<(), String> {
    if r.incomplete {
        return Err(format!("{} did not finish its grid", r.prop_id));
    }
    for n in names {
        if !part_passed(r, n)? {
            let detail = r
                .parts
                .iter()
                .find(|p| p.name == *n)
                .and_then(|p| p.witness.as_ref())
                .map(|w| w.detail.clone())
                .unwrap_or_default();
            return Err(format!("{} part `{n}` fails: {detail}", r.prop_id));
        }
    }
    Ok(())
}

fn verify(id: &str) -> Result<PropositionReport, String> {
    verifier::verify_proposition(id, None).map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let r = verify("P2.1")?;
    let forward = part_passed(&r, "base-implies-closed")?;
    let backward = part_passed(&r, "closed-implies-base")?;
    let point = part_passed(&r, "closed-implies-intersection-condition")?;
    if forward && backward {
        return Ok(format!("{} families, both directions hold", r.checked));
    }
    let witness = r.witness.as_ref().map(|w| w.detail.clone()).unwrap_or_default();
    Err(format!(
        "non-closed families never give a base: {forward}; closed families always give a base: {backward} \
         (first counterexample: {witness}); closed families meet the intersection condition: {point}"
    ))
}

fn criterion_2() -> Outcome {
    let r = verify("P2.3")?;
    require_parts(&r, &["filter-order-implies-topology-order", "topology-order-implies-filter-order", "opens-match-brute-force"])?;
    if r.checked != 16 + 64 {
        return Err(format!("expected 80 ordered pairs, checked {}", r.checked));
    }
    Ok(format!("{} ordered filter pairs, zero exceptions", r.checked))
}

fn criterion_3() -> Outcome {
    let grid = InstanceGrid::new(
        vec![3],
        FactorSource::Fixed { presets: vec![FactorPreset::Discrete2] },
        FilterSource::Principal { indexes: vec![0] },
    );
    let r = verifier::verify_proposition("E2.9", Some(grid)).map_err(|e| e.to_string())?;
    require_parts(&r, &["product-not-hausdorff", "pair-differing-off-filter-inseparable", "exhibit-inseparable-pair"])?;
    let pair = r.exhibit.as_ref().map(|w| w.detail.clone()).ok_or("no exhibited pair")?;
    if !(pair.contains("(0,0,0)") && pair.contains("(1,0,0)")) {
        return Err(format!("unexpected pair: {pair}"));
    }
    let d = Topology::discrete(2);
    let idx = ProductIndexing::new(vec![2, 2, 2]).map_err(|e| e.to_string())?;
    let t = f_topology_of(&[&d, &d, &d], &idx, &fprod_core::Filter::trivial(3)).map_err(|e| e.to_string())?;
    if !(t.is_hausdorff() && t.is_discrete()) {
        return Err("trivial filter does not give the discrete product".into());
    }
    Ok(format!("{pair}; trivial filter gives the discrete product"))
}

fn criterion_4() -> Outcome {
    let r = verify("P2.7")?;
    require_parts(
        &r,
        &[
            "continuous-projections-imply-cofinite",
            "cofinite-implies-continuous-projections",
            "projection-continuous-iff-factor-trivial-or-co-singleton",
        ],
    )?;
    let gated = r.parts[0].checked;
    Ok(format!(
        "{} filter/tuple instances; {} with non-trivial factors checked in both directions, {} tuples with an indiscrete factor outside the hypothesis",
        r.checked,
        gated,
        r.checked - gated
    ))
}

fn criterion_5() -> Outcome {
    let r = verify("P2.8")?;
    require_parts(&r, &["product-hausdorff-implies-factors", "factors-hausdorff-imply-product", "slices-homeomorphic-to-factors"])?;
    Ok(format!("{} tuples under the trivial filter, {} non-saturated instances skipped", r.checked, r.skipped))
}

fn criterion_6() -> Outcome {
    let r = verify("P3.1")?;
    require_parts(&r, &["equalizers-dense", "different-points-have-disjoint-equalizers", "two-disjoint-dense-equalizers"])?;
    Ok(format!("{} proper filters", r.checked))
}

fn criterion_7() -> Outcome {
    let a = verify("P4.1")?;
    require_parts(&a, &["boxes-form-filter-base", "members-match-brute-force"])?;
    let b = verify("P4.2")?;
    require_parts(
        &b,
        &["projection-contained-in-factor", "saturated-projection-equals-factor", "non-saturated-projection-can-be-strict"],
    )?;
    let strict = b.exhibit.as_ref().map(|w| w.detail.clone()).ok_or("no strictness witness")?;
    let c = verify("P4.3")?;
    require_parts(&c, &["contains-box-filter"])?;
    Ok(format!(
        "{} base instances; {} projection instances, strictness: {strict}; {} product filters with matching projections",
        a.checked, b.checked, c.checked
    ))
}

fn criterion_8() -> Outcome {
    let r = verify("P4.5")?;
    require_parts(&r, &["neighborhood-filter-identity"])?;
    Ok(format!("{} instances, every point", r.checked))
}

fn criterion_9() -> Outcome {
    let a = verify("P5.2")?;
    require_parts(&a, &["boxes-form-uniformity-base"])?;
    let b = verify("P5.ind")?;
    require_parts(&b, &["induced-topology-identity"])?;
    Ok(format!("{} uniformity instances", a.checked))
}

/// All unions of members, computed subset by subset.
fn union_closure(fam: &SetFamily) -> Vec<SubsetMask> {
    let n = fam.universe_size();
    SubsetMask::all_subsets(n)
        .filter(|a| {
            let covered = fam.iter().filter(|b| b.is_subset(a)).fold(SubsetMask::empty(n), |acc, b| acc.union(b));
            &covered == a
        })
        .collect()
}

/// A family is a base iff its unions form a topology.
fn is_base_oracle(fam: &SetFamily) -> (bool, Vec<SubsetMask>) {
    let opens = union_closure(fam);
    let n = fam.universe_size();
    let ok = opens.contains(&SubsetMask::full(n))
        && opens.iter().all(|a| opens.iter().all(|b| opens.contains(&a.intersection(b))));
    (ok, opens)
}

fn compare_with_oracle(fam: &SetFamily) -> Result<bool, String> {
    let (oracle_base, opens) = is_base_oracle(fam);
    if validate_base(fam) != oracle_base {
        return Err(format!("validate_base disagrees with the oracle on {fam:?}"));
    }
    if oracle_base {
        let t = Topology::from_base(fam.clone()).map_err(|e| e.to_string())?;
        if t.opens().members() != opens.as_slice() {
            return Err(format!("generated opens disagree with the oracle on {fam:?}"));
        }
    }
    Ok(oracle_base)
}

fn criterion_10() -> Outcome {
    let mut exhaustive = 0;
    for n in 1..=3 {
        for fam in SetFamily::all_families(n) {
            if compare_with_oracle(&fam)? {
                exhaustive += 1;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let (mut random_bases, mut draws) = (0, 0);
    while random_bases < 500 {
        draws += 1;
        if draws > 1_000_000 {
            return Err("could not draw 500 random bases".into());
        }
        let members: Vec<SubsetMask> = SubsetMask::all_subsets(4).filter(|_| rng.gen_bool(0.35)).collect();
        let fam = SetFamily::new(4, members).map_err(|e| e.to_string())?;
        if compare_with_oracle(&fam)? {
            random_bases += 1;
        }
    }
    let tops = enumerate_topologies(3).map_err(|e| e.to_string())?.len();
    let filters = enumerate_filters(3, true).map_err(|e| e.to_string())?.len();
    if tops != 29 || filters != 8 {
        return Err(format!("enumerate_topologies(3) = {tops}, enumerate_filters(3) = {filters}"));
    }
    Ok(format!(
        "{exhaustive} bases among all families on <= 3 points, {random_bases} random 4-point bases in {draws} draws; 29 topologies, 8 filters"
    ))
}

fn criterion_11() -> Outcome {
    let ex29 = common::golden("ex29.json");
    let ex29 = ex29.to_str().ok_or("path is not UTF-8")?;

    let o = fprod(&["verify", "--prop", "P2.3", "--index-size", "2", "--factors", "sierpinski", "--json"]);
    if code(&o) != 0 {
        return Err(format!("verify P2.3 exited {}", code(&o)));
    }
    matches_golden("verify_p23.json", &stable_json(&stdout(&o)))?;

    let o = fprod(&["check", "--instance", ex29, "--prop", "hausdorff"]);
    if code(&o) != 0 {
        return Err(format!("check exited {}", code(&o)));
    }
    matches_golden("check_ex29_hausdorff.txt", &stdout(&o))?;

    let malformed = common::golden("malformed.json");
    let cases: [(&[&str], i32); 6] = [
        (&["enumerate", "--what", "topologies", "--size", "2"], 0),
        (&["check", "--instance", ex29, "--prop", "hausdorff", "--expect", "true"], 1),
        (&["verify", "--prop", "P2.8", "--filters", "proper", "--ignore-hypotheses"], 1),
        (&["check", "--instance", malformed.to_str().unwrap(), "--prop", "hausdorff"], 2),
        (&["verify", "--prop", "P9.9"], 2),
        (&["verify", "--prop", "P2.3", "--budget", "3"], 3),
    ];
    for (args, want) in cases {
        let got = code(&fprod(args));
        if got != want {
            return Err(format!("`fprod {}` exited {got}, expected {want}", args.join(" ")));
        }
    }
    Ok("golden files match; exit codes 0/1/2/3 as expected".into())
}

/// Number, title, time bound in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "box families form a base iff the index family is intersection-closed", 10, criterion_1),
        (2, "order immersion of filters into topologies", 30, criterion_2),
        (3, "non-saturated filter on discrete factors gives a non-Hausdorff product", 1, criterion_3),
        (4, "projections continuous iff the filter is trivial", 30, criterion_4),
        (5, "Hausdorff product iff Hausdorff factors under the saturated filter", 60, criterion_5),
        (6, "equalizers dense and disjoint", 30, criterion_6),
        (7, "F-filter base, projections and minimality", 30, criterion_7),
        (8, "neighborhood filters of the F-product", 60, criterion_8),
        (9, "F-uniformity base and induced topology", 60, criterion_9),
        (10, "oracle cross-checks and enumeration counts", 30, criterion_10),
        (11, "command-line contract", 5, criterion_11),
    ];
    let mut failures = 0;
    for (n, title, bound, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(bound);
        let (verdict, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over the {bound} s bound; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        println!("criterion {n:>2} {verdict} [{:.2} s / {bound} s] {title}: {detail}", elapsed.as_secs_f64());
    }
    println!("acceptance: {} of 11 criteria pass", 11 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}

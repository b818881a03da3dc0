use std::fs;

use serde_json::{json, Value};

use fprod_core::foundations::DEFAULT_MAX_PRODUCT;
use fprod_core::fproduct::{f_filter, f_topology, f_topology_base, projection_map};
use fprod_core::instance::{parse_product_subset, point_labels, product_subset_labels};
use fprod_core::topology::{enumerate_topologies, is_continuous};
use fprod_core::uniformity::f_uniformity_base_of;
use fprod_core::verifier::{
    self, enumerate_filters, FactorPreset, FactorSource, FilterSource, InstanceGrid, PropositionReport,
};
use fprod_core::{Error, InstanceFile, ProductSpec, Result, Uniformity};

use crate::render;
use crate::{
    CheckProp, Command, Construction, Enumerable, FilterChoice, GridArgs, EXIT_BUDGET, EXIT_COUNTEREXAMPLE,
    EXIT_OK,
};

pub fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Construct { instance, what, out } => construct(&instance, what, out.as_deref()),
        Command::Check { instance, prop, set, n, expect, json } => {
            check(&instance, prop, set.as_deref(), n, expect, json)
        }
        Command::Verify { prop, grid } => {
            let g = build_grid(&prop, &grid)?;
            let report = verifier::verify_proposition(&prop, Some(g))?;
            emit_report(&report, grid.json, false);
            Ok(if !report.passed {
                EXIT_COUNTEREXAMPLE
            } else if report.incomplete {
                EXIT_BUDGET
            } else {
                EXIT_OK
            })
        }
        Command::Search { claim, grid } => {
            let id = verifier::search_claim(&claim)?.id;
            let g = build_grid(id, &grid)?;
            let report = verifier::search_counterexample(id, Some(g))?;
            emit_report(&report, grid.json, true);
            Ok(if report.witness.is_some() {
                EXIT_OK
            } else if report.incomplete {
                EXIT_BUDGET
            } else {
                EXIT_COUNTEREXAMPLE
            })
        }
        Command::Enumerate { what, size, json } => enumerate(what, size, json),
        Command::List => {
            out!("propositions: {}", verifier::proposition_ids().join(" "));
            out!("search claims: {}", verifier::search_ids().join(" "));
            for (id, reason) in verifier::OUT_OF_SCOPE {
                out!("out of scope: {id} ({reason})");
            }
            Ok(EXIT_OK)
        }
    }
}

fn max_product() -> Result<usize> {
    match std::env::var("FPROD_MAX_PRODUCT") {
        Err(_) => Ok(DEFAULT_MAX_PRODUCT),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Input(format!("FPROD_MAX_PRODUCT must be a positive integer, got `{v}`"))),
    }
}

fn load(path: &str) -> Result<ProductSpec> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read `{path}`: {e}")))?;
    InstanceFile::parse(&text)?.to_spec_with_limit(max_product()?)
}

fn sorted_sets(spec: &ProductSpec, fam: impl IntoIterator<Item = fprod_core::SubsetMask>) -> Vec<Vec<Vec<String>>> {
    let mut out: Vec<Vec<Vec<String>>> = fam.into_iter().map(|m| product_subset_labels(spec, &m)).collect();
    out.sort();
    out
}

fn construct(path: &str, what: Construction, out: Option<&str>) -> Result<u8> {
    let spec = load(path)?;
    let value = match what {
        Construction::FTopology => {
            let t = f_topology(&spec)?;
            json!({
                "what": "f-topology",
                "points": spec.indexing().total(),
                "base": sorted_sets(&spec, f_topology_base(&spec)?.iter().cloned()),
                "opens": sorted_sets(&spec, t.opens().iter().cloned()),
            })
        }
        Construction::FFilter => {
            let f = f_filter(&spec)?;
            json!({
                "what": "f-filter",
                "points": spec.indexing().total(),
                "trivial": f.is_trivial(),
                "minimal": (!f.is_trivial()).then(|| product_subset_labels(&spec, &f.core())),
                "member_count": f.member_count().to_string(),
            })
        }
        Construction::FUniformity => {
            let cap = max_product()?;
            let base = f_uniformity_base_of(
                &spec.factor_uniformities()?,
                spec.indexing(),
                spec.index_filter(),
                cap.saturating_mul(cap),
            )?;
            let u = Uniformity::from_base(base)?;
            let relation = |r: &fprod_core::Relation| {
                let mut pairs: Vec<[Vec<String>; 2]> =
                    r.pairs().map(|(x, y)| [point_labels(&spec, x), point_labels(&spec, y)]).collect();
                pairs.sort();
                pairs
            };
            let mut base: Vec<_> = u.base_relations().iter().map(relation).collect();
            base.sort();
            json!({
                "what": "f-uniformity",
                "points": spec.indexing().total(),
                "base": base,
                "core": relation(u.core()),
            })
        }
    };
    let text = serde_json::to_string_pretty(&value).expect("values serialize");
    match out {
        Some(p) => fs::write(p, text + "\n").map_err(|e| Error::Input(format!("cannot write `{p}`: {e}")))?,
        None => out!("{text}"),
    }
    Ok(EXIT_OK)
}

fn check(path: &str, prop: CheckProp, set: Option<&str>, n: Option<usize>, expect: Option<bool>, as_json: bool) -> Result<u8> {
    let spec = load(path)?;
    let t = f_topology(&spec)?;
    let point = |z: usize| point_labels(&spec, z);
    let (name, verdict, extra): (&str, bool, Value) = match prop {
        CheckProp::Hausdorff => {
            let pair = t.inseparable_pair().map(|(x, y)| vec![point(x), point(y)]);
            ("hausdorff", pair.is_none(), json!({ "inseparable_pair": pair }))
        }
        CheckProp::T1 => ("t1", t.is_t1(), json!({})),
        CheckProp::Dense => {
            let raw = set.ok_or_else(|| Error::Input("`--prop dense` needs `--set`".into()))?;
            let points: Vec<Vec<String>> = serde_json::from_str(raw)
                .map_err(|e| Error::Input(format!("`--set` must be a JSON array of points: {e}")))?;
            let m = parse_product_subset(&spec, &points)?;
            ("dense", t.is_dense(&m)?, json!({ "set": product_subset_labels(&spec, &m) }))
        }
        CheckProp::Resolvable => {
            let k = n.ok_or_else(|| Error::Input("`--prop resolvable` needs `--n`".into()))?;
            let sets = t
                .find_disjoint_dense(k)
                .map(|ss| ss.iter().map(|m| product_subset_labels(&spec, m)).collect::<Vec<_>>());
            ("resolvable", sets.is_some(), json!({ "n": k, "dense_sets": sets }))
        }
        CheckProp::ContinuousProjections => {
            let per = spec
                .factor_topologies()?
                .iter()
                .enumerate()
                .map(|(i, f)| is_continuous(&projection_map(spec.indexing(), i), &t, f))
                .collect::<Result<Vec<_>>>()?;
            let labelled: Vec<Value> = spec
                .index_universe()
                .labels()
                .iter()
                .zip(&per)
                .map(|(l, c)| json!({ "index": l, "continuous": c }))
                .collect();
            ("continuous-projections", per.iter().all(|&c| c), json!({ "projections": labelled }))
        }
    };
    if as_json {
        let mut v = json!({ "prop": name, "verdict": verdict });
        if let (Some(obj), Value::Object(more)) = (v.as_object_mut(), extra) {
            obj.extend(more);
        }
        out!("{}", serde_json::to_string_pretty(&v).expect("values serialize"));
    } else {
        out!("{name}: {verdict}");
        render::check_details(&extra);
    }
    Ok(match expect {
        Some(e) if e != verdict => EXIT_COUNTEREXAMPLE,
        _ => EXIT_OK,
    })
}

fn build_grid(id: &str, args: &GridArgs) -> Result<InstanceGrid> {
    let mut g = verifier::default_grid(id)?;
    if !args.index_sizes.is_empty() {
        g.index_sizes = args.index_sizes.clone();
    }
    if !args.factors.is_empty() {
        let presets = args.factors.iter().map(|p| FactorPreset::parse(p)).collect::<Result<Vec<_>>>()?;
        g.factors = FactorSource::Fixed { presets };
    }
    if let Some(m) = args.factor_size {
        g.factors = match g.factors {
            FactorSource::AllTopologies { .. } => FactorSource::AllTopologies { min_points: m, max_points: m },
            FactorSource::AllFilters { .. } => FactorSource::AllFilters { points: m },
            FactorSource::AllUniformityBases { .. } => FactorSource::AllUniformityBases { points: m },
            FactorSource::Fixed { .. } if !args.factors.is_empty() => {
                return Err(Error::Input("`--factor-size` cannot be combined with `--factors`".into()))
            }
            FactorSource::Fixed { .. } => FactorSource::AllTopologies { min_points: m, max_points: m },
            FactorSource::Unused => return Err(Error::Input(format!("`{id}` takes no factors"))),
        };
    }
    if let Some(f) = args.filters {
        g.filters = match f {
            FilterChoice::All => FilterSource::All,
            FilterChoice::Proper => FilterSource::ProperOnly,
            FilterChoice::Trivial => FilterSource::Trivial,
        };
    }
    if !args.index_filter.is_empty() {
        if args.index_filter.contains(&0) {
            return Err(Error::Input("index labels start at 1".into()));
        }
        g.filters = FilterSource::Principal { indexes: args.index_filter.iter().map(|i| i - 1).collect() };
    }
    g.caps.max_instances = args.budget.or(g.caps.max_instances);
    g.caps.max_seconds = args.max_seconds.or(g.caps.max_seconds);
    if args.ignore_hypotheses {
        g.enforce_hypotheses = false;
    }
    Ok(g)
}

fn emit_report(report: &PropositionReport, as_json: bool, search: bool) {
    if as_json {
        out!("{}", report.to_json());
    } else {
        render::report_text(report, search);
    }
}

fn enumerate(what: Enumerable, size: usize, as_json: bool) -> Result<u8> {
    let items: Vec<String> = match what {
        Enumerable::Filters => enumerate_filters(size, true)?.iter().map(render::filter).collect(),
        Enumerable::Topologies => enumerate_topologies(size)?.iter().map(render::topology).collect(),
    };
    let kind = match what {
        Enumerable::Filters => "filters",
        Enumerable::Topologies => "topologies",
    };
    if as_json {
        let v = json!({ "what": kind, "size": size, "count": items.len(), "items": items });
        out!("{}", serde_json::to_string_pretty(&v).expect("values serialize"));
    } else {
        for it in &items {
            out!("{it}");
        }
        out!("{}", items.len());
    }
    Ok(EXIT_OK)
}

//! Exhaustive verification of statements about F-products over grids of
//! small instances, with replayable witnesses.

mod case;
mod grid;
pub mod oracle;
mod props;
mod report;

use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub use crate::filters::enumerate_filters;
pub use crate::topology::enumerate_topologies;
pub use case::{Case, FactorData};
pub use grid::{enumerate_uniformity_bases, Caps, FactorPreset, FactorSource, FilterSource, InstanceGrid};
pub use props::{propositions, search_claims, Eval, Part, Prop, OUT_OF_SCOPE};
pub use report::{
    PartKind, PartReport, ProductFilterFile, PropositionReport, Timing, Witness, WitnessParams,
};

/// Instances evaluated between budget checks.
const CHUNK: usize = 64;

pub fn proposition_ids() -> Vec<&'static str> {
    propositions().iter().map(|p| p.id).collect()
}

pub fn search_ids() -> Vec<&'static str> {
    search_claims().iter().map(|p| p.id).collect()
}

fn find(list: Vec<Prop>, id: &str) -> Result<Prop> {
    if let Some((_, reason)) = OUT_OF_SCOPE.iter().find(|(o, _)| *o == id) {
        return Err(Error::OutOfScope { id: id.to_string(), reason: reason.to_string() });
    }
    list.into_iter().find(|p| p.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))
}

pub fn proposition(id: &str) -> Result<Prop> {
    find(propositions(), id)
}

/// Longer names accepted for catalogued claims.
const CLAIM_ALIASES: &[(&str, &str)] =
    &[("f-product-of-hausdorff-is-hausdorff-for-all-filters", "hausdorff-for-all-filters")];

pub fn search_claim(id: &str) -> Result<Prop> {
    let id = CLAIM_ALIASES.iter().find(|(a, _)| *a == id).map_or(id, |(_, c)| c);
    find(search_claims(), id)
}

/// The grid a proposition is checked on when none is given.
pub fn default_grid(id: &str) -> Result<InstanceGrid> {
    proposition(id)
        .or_else(|e| match e {
            Error::UnknownId(_) => search_claim(id),
            other => Err(other),
        })
        .map(|p| (p.default_grid)())
}

/// Check every part of a proposition on every instance of the grid.
pub fn verify_proposition(id: &str, grid: Option<InstanceGrid>) -> Result<PropositionReport> {
    let prop = proposition(id)?;
    let grid = grid.unwrap_or_else(|| (prop.default_grid)());
    run(&prop, grid)
}

/// Look for a counterexample to a catalogued claim; `passed` is true when
/// the claim held on the whole grid.
pub fn search_counterexample(id: &str, grid: Option<InstanceGrid>) -> Result<PropositionReport> {
    let prop = search_claim(id)?;
    let grid = grid.unwrap_or_else(|| (prop.default_grid)());
    run(&prop, grid)
}

struct PartState {
    checked: u64,
    failure: Option<(usize, String)>,
    hit: Option<(usize, String)>,
}

pub fn run(prop: &Prop, grid: InstanceGrid) -> Result<PropositionReport> {
    let start = Instant::now();
    let cases = (prop.generate)(&grid)?;
    let limit = grid.caps.max_instances.map_or(usize::MAX, |m| m as usize);
    let enforce = grid.enforce_hypotheses;
    let mut states: Vec<PartState> =
        prop.parts.iter().map(|_| PartState { checked: 0, failure: None, hit: None }).collect();
    let (mut checked, mut skipped) = (0u64, 0u64);
    let mut evaluated = 0usize;
    let mut incomplete = false;

    while evaluated < cases.len() {
        if evaluated >= limit || grid.caps.max_seconds.is_some_and(|s| start.elapsed().as_secs_f64() > s) {
            incomplete = true;
            break;
        }
        let end = (evaluated + CHUNK).min(cases.len()).min(limit);
        let results: Vec<Result<Vec<Option<Eval>>>> = cases[evaluated..end]
            .par_iter()
            .map(|c| {
                prop.parts
                    .iter()
                    .map(|p| {
                        if enforce && !(p.hypothesis)(c) {
                            Ok(None)
                        } else {
                            (p.statement)(c).map(Some)
                        }
                    })
                    .collect()
            })
            .collect();
        for (offset, r) in results.into_iter().enumerate() {
            let evals = r?;
            let at = evaluated + offset;
            if evals.iter().all(Option::is_none) {
                skipped += 1;
                continue;
            }
            checked += 1;
            for ((state, part), eval) in states.iter_mut().zip(&prop.parts).zip(evals) {
                let Some(eval) = eval else { continue };
                state.checked += 1;
                match part.kind {
                    PartKind::Universal if !eval.holds && state.failure.is_none() => {
                        state.failure = Some((at, eval.detail));
                    }
                    PartKind::Existential if eval.holds && state.hit.is_none() => {
                        state.hit = Some((at, eval.detail));
                    }
                    _ => {}
                }
            }
        }
        evaluated = end;
    }

    let parts: Vec<PartReport> = states
        .into_iter()
        .zip(&prop.parts)
        .map(|(s, p)| {
            let vacuous = s.checked == 0;
            let passed = match p.kind {
                PartKind::Universal => s.failure.is_none(),
                PartKind::Existential => vacuous || s.hit.is_some(),
            };
            let witness = match p.kind {
                PartKind::Universal => s.failure.map(|(i, d)| cases[i].to_witness(p.name, d)),
                PartKind::Existential => None,
            };
            let exhibit = s.hit.map(|(i, d)| cases[i].to_witness(p.name, d));
            PartReport { name: p.name.to_string(), kind: p.kind, checked: s.checked, passed, vacuous, witness, exhibit }
        })
        .collect();
    let passed = parts.iter().all(|p| p.passed);
    let witness = parts.iter().find_map(|p| p.witness.clone());
    let exhibit = parts.iter().find_map(|p| p.exhibit.clone());
    let mut degenerate_notes: Vec<String> = prop.notes.iter().map(|s| s.to_string()).collect();
    for p in &parts {
        if p.vacuous && p.kind == PartKind::Existential {
            degenerate_notes.push(format!("part `{}` had no instance inside its hypothesis", p.name));
        }
    }
    Ok(PropositionReport {
        prop_id: prop.id.to_string(),
        claim: prop.claim.to_string(),
        unit: prop.unit.to_string(),
        grid,
        checked,
        skipped,
        passed,
        incomplete,
        parts,
        witness,
        exhibit,
        degenerate_notes,
        timing: Timing { elapsed_ms: start.elapsed().as_millis() as u64 },
    })
}

/// Result of re-running one part on a witness instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replay {
    pub in_hypothesis: bool,
    pub holds: bool,
    pub detail: String,
}

/// Re-run the part named in `witness` on the instance it carries.
pub fn replay(id: &str, witness: &Witness) -> Result<Replay> {
    let prop = proposition(id).or_else(|e| match e {
        Error::UnknownId(_) => search_claim(id),
        other => Err(other),
    })?;
    let part = prop
        .parts
        .iter()
        .find(|p| p.name == witness.part)
        .ok_or_else(|| Error::input(format!("`{id}` has no part named `{}`", witness.part)))?;
    let case = Case::from_witness(witness)?;
    let eval = (part.statement)(&case)?;
    Ok(Replay { in_hypothesis: (part.hypothesis)(&case), holds: eval.holds, detail: eval.detail })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_and_out_of_scope_ids() {
        assert!(matches!(verify_proposition("P9.9", None), Err(Error::UnknownId(_))));
        assert!(matches!(verify_proposition("P2.12", None), Err(Error::OutOfScope { .. })));
    }

    #[test]
    fn budget_marks_report_incomplete() {
        let mut g = default_grid("P2.3").unwrap();
        g.caps.max_instances = Some(5);
        let r = verify_proposition("P2.3", Some(g)).unwrap();
        assert!(r.incomplete);
        assert_eq!(r.checked + r.skipped, 5);
    }

    #[test]
    fn saturation_forms_pass() {
        let r = verify_proposition("P2.5", None).unwrap();
        assert!(r.passed, "{}", r.to_json());
        assert_eq!(r.checked, 2 + 4 + 8 + 16);
    }
}

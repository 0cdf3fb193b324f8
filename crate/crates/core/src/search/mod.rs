//! Exhaustive, isomorph-free enumeration of small maps: empty circuits and
//! pairs, and witnesses for the face-size thresholds.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::canon::canonical_code;
use crate::map::Map;

pub mod empty;
pub mod spec_text;
pub mod tracer;
pub mod witness;

pub use empty::{
    check_empty, enumerate_empty, verify_remark24, CaseReport, CaseStatus, EmptyCircuitSpec, Mode,
    SideConstraint,
};
pub use spec_text::{
    empty_spec_text, parse_empty_spec, parse_witness_spec, witness_spec_text, SpecError,
};
pub use witness::{search_empty_9_cycle, search_witness, DualDemand, WitnessSpec};

/// Node and wall-clock limits for one search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 2_000_000_000,
            time_limit: None,
        }
    }
}

/// Outcome of a search: the maps found, sorted by canonical code, and
/// whether the enumeration ran to the end.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub maps: Vec<Map>,
    pub complete: bool,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Runs `work` on every seed in parallel, merges the maps it reports and
/// removes isomorphic duplicates. With `stop_at_first` only the maps from
/// the lowest seed that produced any are kept, so the answer does not
/// depend on scheduling.
pub(crate) fn run_seeds<S: Sync>(
    seeds: &[S],
    budget: &SearchBudget,
    stop_at_first: bool,
    work: impl Fn(&S, &tracer::Budget, &dyn Fn() -> bool, &mut dyn FnMut(Map) -> bool) + Sync,
) -> SearchResult {
    use std::sync::atomic::{AtomicUsize, Ordering};
    let start = Instant::now();
    let shared = tracer::Budget::new(budget.max_nodes, budget.time_limit.map(|t| start + t));
    let best = AtomicUsize::new(usize::MAX);
    let per_seed: Vec<(usize, Vec<Map>)> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, seed)| {
            let mut found = Vec::new();
            if stop_at_first && best.load(Ordering::Relaxed) < i {
                return (i, found);
            }
            let cancelled = || stop_at_first && best.load(Ordering::Relaxed) < i;
            work(seed, &shared, &cancelled, &mut |m| {
                found.push(m);
                if stop_at_first {
                    best.fetch_min(i, Ordering::Relaxed);
                    return false;
                }
                true
            });
            (i, found)
        })
        .collect();
    let cutoff = best.load(Ordering::Relaxed);
    let mut unique = std::collections::BTreeMap::new();
    for (i, maps) in per_seed {
        if stop_at_first && i != cutoff {
            continue;
        }
        for m in maps {
            unique.entry(canonical_code(&m)).or_insert(m);
        }
    }
    let found_any = !unique.is_empty();
    // A stop-at-first search that found something is settled even if other
    // seeds ran out of budget afterwards.
    let complete = !shared.exhausted() || (stop_at_first && found_any);
    SearchResult {
        maps: unique.into_values().collect(),
        complete,
        nodes: shared.nodes(),
        elapsed: start.elapsed(),
    }
}

//! The verification harness: every checkable statement the toolkit knows is
//! packaged as a claim that produces one Report. Single claims back the CLI
//! subcommands; suites sweep dimension ranges.
//!
//! Verdict policy, applied uniformly: a claim is PASS/FAIL only when the
//! computation was exhaustive (or certified) and a closed form is licensed
//! for those parameters. Licensed means inside the range the source states;
//! outside it, agreements and disagreements alike are FINDINGs. Budget
//! exhaustion yields UPPER_BOUND_ONLY, and parameters with no licensed
//! expectation at all yield OUT_OF_RANGE when nothing else can be said.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::closedform::{self, ckappa_qn_formula, f, theta_qn_formula};
use crate::cutfinder::{
    certify_cut_floor, ckappa_exact, components, star_cut, CkappaBudget, CkappaResult,
};
use crate::error::{Error, Result};
use crate::extremal::{check_private_neighbor_lemma, theta_exact, CheckMode, SearchBudget};
use crate::faultsim::{sample_distinct, simulate};
use crate::report::{Report, Verdict};
use crate::setcalc::VertexSet;
use crate::topology::{Kind, Topology};

/// The folded-family extremal theorem is stated from n = 5 up, for set
/// sizes 1..=n+2.
fn theta_curve_licensed(n: u32, g: u32) -> bool {
    n >= 5 && g >= 1 && g <= n + 2
}

/// The folded-family connectivity theorem is stated from n = 8 up, for
/// curve indices 1..=n+1 (targets 2..=n+2).
fn ckappa_curve_licensed(n: u32, g: u32) -> bool {
    n >= 8 && g >= 1 && g <= n + 1
}

pub fn theta_exact_claim(t: &Topology, g: u32, budget: &SearchBudget) -> Result<Report> {
    let start = Instant::now();
    let r = theta_exact(t, g, budget)?;
    let n = t.n();
    let (expected, licensed) = match t.kind() {
        Kind::Folded => {
            let fv = f(n, g as i64)?;
            if fv.in_domain {
                (Some(fv.value), theta_curve_licensed(n, g))
            } else {
                (None, false)
            }
        }
        Kind::Hypercube => match theta_qn_formula(n, g as i64) {
            Ok(fv) => (Some(fv.value), true),
            Err(_) => (None, false),
        },
    };
    let matches = expected == Some(r.value as i64);
    let verdict = if !r.exhaustive {
        Verdict::UpperBoundOnly
    } else if expected.is_none() {
        Verdict::Finding
    } else if licensed {
        if matches {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    } else {
        Verdict::Finding
    };
    let mut report = Report::new(
        format!(
            "theta/exact-vs-closed-form/kind={}/n={n}/g={g}",
            t.kind().as_str()
        ),
        serde_json::json!({
            "kind": t.kind().as_str(), "n": n, "g": g,
            "exhaustive": r.exhaustive,
            "nodes_expanded": r.nodes_expanded,
            "licensed_range": licensed,
        }),
        verdict,
    )
    .computed(r.value)
    .witness(serde_json::json!({ "set": r.witness.to_sorted_vec() }));
    if let Some(e) = expected {
        report = report.expected(e);
    }
    Ok(report.elapsed(start))
}

pub fn theta_star_claim(t: &Topology, g: u32) -> Result<Report> {
    let start = Instant::now();
    let value = crate::extremal::theta_star_upper(t, g)?;
    let star = crate::setcalc::star_set(t, 0, g)?;
    let n = t.n();
    let mut report = Report::new(
        format!(
            "theta/star-upper-bound/kind={}/n={n}/g={g}",
            t.kind().as_str()
        ),
        serde_json::json!({ "kind": t.kind().as_str(), "n": n, "g": g }),
        Verdict::UpperBoundOnly,
    )
    .computed(value)
    .witness(serde_json::json!({ "set": star.to_sorted_vec() }));
    if t.kind() == Kind::Folded {
        let fv = f(n, g as i64)?;
        if fv.in_domain {
            report = report.expected(fv.value);
        }
    }
    Ok(report.elapsed(start))
}

pub fn theta_formula_claim(kind: Kind, n: u32, g: i64) -> Result<Report> {
    let start = Instant::now();
    let fv = match kind {
        Kind::Folded => f(n, g)?,
        Kind::Hypercube => theta_qn_formula(n, g)?,
    };
    let report = Report::new(
        format!("theta/closed-form/kind={}/n={n}/g={g}", kind.as_str()),
        serde_json::json!({
            "kind": kind.as_str(), "n": n, "g": g,
            "branch": fv.branch,
            "in_quoted_domain": fv.in_domain,
        }),
        if fv.in_domain {
            Verdict::Pass
        } else {
            Verdict::Finding
        },
    )
    .expected(fv.value)
    .computed(fv.value);
    Ok(report.elapsed(start))
}

/// Exact component connectivity versus the applicable closed form. The
/// argument g is the curve index: the search targets g+1 components.
pub fn ckappa_exact_claim(t: &Topology, g: u32, budget: &CkappaBudget) -> Result<Report> {
    let start = Instant::now();
    let target = g + 1;
    let n = t.n();
    let r = match ckappa_exact(t, target, budget) {
        Ok(r) => r,
        Err(Error::NoCutWithinBudget { .. }) => {
            // The search adopted no candidate of any size. Sweep every
            // conceivable size from below: the first hit is the exact value
            // (all smaller sizes were swept clean first), and a clean
            // complete sweep proves no such cut exists at all.
            let max_size = t.vertex_count().saturating_sub(target);
            let ev = certify_cut_floor(t, target, max_size, &budget.search)?;
            match ev.counterexample {
                Some(w) => CkappaResult {
                    target_g: target,
                    value: w.cut.len(),
                    witness: w,
                    exhaustive: true,
                    nodes_expanded: ev.nodes_expanded,
                },
                None => {
                    let proven = ev.complete_through == max_size;
                    let mut report = Report::new(
                        format!(
                            "ckappa/exact-vs-closed-form/kind={}/n={n}/target={target}",
                            t.kind().as_str()
                        ),
                        serde_json::json!({
                            "kind": t.kind().as_str(), "n": n,
                            "curve_index": g, "target_components": target,
                            "exhaustive": proven,
                            "nodes_expanded": ev.nodes_expanded,
                            "max_conceivable_size": max_size,
                            "sizes_fully_swept": ev.complete_through,
                        }),
                        Verdict::Finding,
                    );
                    if proven {
                        report = report.computed(serde_json::json!({ "cut_exists": false }));
                    }
                    return Ok(report.elapsed(start));
                }
            }
        }
        Err(e) => return Err(e),
    };
    let (expected, licensed) = match t.kind() {
        Kind::Folded => {
            let fv = f(n, g as i64)?;
            if fv.in_domain && g >= 1 {
                (Some(fv.value), ckappa_curve_licensed(n, g))
            } else {
                (None, false)
            }
        }
        Kind::Hypercube => match ckappa_qn_formula(n, g as i64) {
            Ok(fv) => (Some(fv.value), true),
            Err(_) => (None, false),
        },
    };
    // The constructive bound, where the construction applies.
    let star_upper = if t.kind() == Kind::Folded && (1..=n + 1).contains(&g) {
        Some(star_cut(t, 0, g)?.cut.len())
    } else {
        None
    };
    let sandwich_ok = star_upper.map_or(true, |s| r.value <= s);
    let matches = expected == Some(r.value as i64);
    let verdict = if !sandwich_ok {
        // The exact search can never exceed a certified constructive cut.
        Verdict::Fail
    } else if !r.exhaustive {
        Verdict::UpperBoundOnly
    } else if expected.is_none() {
        Verdict::Finding
    } else if licensed {
        if matches {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    } else {
        Verdict::Finding
    };
    let mut report = Report::new(
        format!(
            "ckappa/exact-vs-closed-form/kind={}/n={n}/target={target}",
            t.kind().as_str()
        ),
        serde_json::json!({
            "kind": t.kind().as_str(), "n": n,
            "curve_index": g, "target_components": target,
            "exhaustive": r.exhaustive,
            "nodes_expanded": r.nodes_expanded,
            "licensed_range": licensed,
            "star_upper_bound": star_upper,
        }),
        verdict,
    )
    .computed(r.value)
    .witness(serde_json::json!({
        "cut": r.witness.cut.to_sorted_vec(),
        "component_sizes": r.witness.profile.sizes,
        "singletons": r.witness.profile.singleton_count,
    }));
    if let Some(e) = expected {
        report = report.expected(e);
    }
    Ok(report.elapsed(start))
}

pub fn ckappa_upper_claim(t: &Topology, g: u32) -> Result<Report> {
    let start = Instant::now();
    let w = star_cut(t, 0, g)?;
    let n = t.n();
    let fv = f(n, g as i64)?;
    let size_licensed = n >= 5 && fv.in_domain;
    let verdict = if size_licensed && (!w.certified || w.cut.len() as i64 != fv.value) {
        Verdict::Fail
    } else {
        Verdict::UpperBoundOnly
    };
    let mut report = Report::new(
        format!("ckappa/star-cut-upper/kind=fq/n={n}/g={g}"),
        serde_json::json!({
            "kind": "fq", "n": n, "curve_index": g,
            "target_components": g + 1,
            "certified": w.certified,
        }),
        verdict,
    )
    .computed(serde_json::json!({
        "cut_size": w.cut.len(),
        "component_count": w.profile.component_count,
        "singletons": w.profile.singleton_count,
    }))
    .witness(serde_json::json!({ "cut": w.cut.to_sorted_vec() }));
    if size_licensed {
        report = report.expected(serde_json::json!({ "cut_size": fv.value }));
    }
    Ok(report.elapsed(start))
}

pub fn ckappa_formula_claim(kind: Kind, n: u32, g: i64) -> Result<Report> {
    let start = Instant::now();
    let fv = match kind {
        Kind::Folded => {
            let fv = f(n, g)?;
            if !fv.in_domain {
                return Err(Error::FormulaDomain(format!(
                    "the budget curve is quoted for 0 <= g <= n+2, got g = {g} at n = {n}"
                )));
            }
            fv
        }
        Kind::Hypercube => ckappa_qn_formula(n, g)?,
    };
    let report = Report::new(
        format!("ckappa/closed-form/kind={}/n={n}/g={g}", kind.as_str()),
        serde_json::json!({
            "kind": kind.as_str(), "n": n, "g": g,
            "target_components": g + 1,
            "branch": fv.branch,
        }),
        Verdict::Pass,
    )
    .expected(fv.value)
    .computed(fv.value);
    Ok(report.elapsed(start))
}

/// Bit masks for the pair/triple lemma sweeps; fits every dimension where
/// an exhaustive sweep is realistic.
struct Masks {
    nbr: Vec<u128>,
    dist2: Vec<u128>,
}

impl Masks {
    fn build(t: &Topology) -> Masks {
        let nv = t.vertex_count();
        let nbr: Vec<u128> = (0..nv)
            .map(|v| {
                let mut m = 0u128;
                t.for_each_neighbor(v, |u| m |= 1u128 << u);
                m
            })
            .collect();
        let dist2 = (0..nv as usize)
            .map(|v| {
                let mut two_steps = 0u128;
                let mut m = nbr[v];
                while m != 0 {
                    let u = m.trailing_zeros() as usize;
                    m &= m - 1;
                    two_steps |= nbr[u];
                }
                two_steps & !nbr[v] & !(1u128 << v)
            })
            .collect();
        Masks { nbr, dist2 }
    }
}

/// Exhaustive pair sweep: adjacent or coincident pairs share no neighbor,
/// distance-2 pairs share exactly two, larger distances share none.
pub fn pair_common_neighbor_claim(t: &Topology) -> Result<Report> {
    require_folded_at_most(t, 7)?;
    let start = Instant::now();
    let n = t.n();
    let nv = t.vertex_count();
    let masks = Masks::build(t);
    let mut violations = 0u64;
    let mut witnesses = Vec::new();
    for u in 0..nv {
        for v in (u + 1)..nv {
            let common = (masks.nbr[u as usize] & masks.nbr[v as usize]).count_ones();
            let want = if masks.dist2[u as usize] >> v & 1 == 1 { 2 } else { 0 };
            if common != want {
                violations += 1;
                if witnesses.len() < 10 {
                    witnesses.push(serde_json::json!({ "pair": [u, v], "common": common }));
                }
            }
        }
    }
    Ok(finish_count_claim(
        format!("lemmas/pair-common-neighbors/kind=fq/n={n}"),
        serde_json::json!({ "kind": "fq", "n": n, "pairs": nv as u64 * (nv as u64 - 1) / 2 }),
        violations,
        witnesses,
        start,
    ))
}

/// Exhaustive pair sweep: every pair's open neighborhood has at least 2n
/// vertices.
pub fn pair_neighborhood_floor_claim(t: &Topology) -> Result<Report> {
    require_folded_at_most(t, 7)?;
    let start = Instant::now();
    let n = t.n();
    let nv = t.vertex_count();
    let masks = Masks::build(t);
    let mut violations = 0u64;
    let mut witnesses = Vec::new();
    for u in 0..nv {
        for v in (u + 1)..nv {
            let nb = (masks.nbr[u as usize] | masks.nbr[v as usize])
                & !(1u128 << u)
                & !(1u128 << v);
            if nb.count_ones() < 2 * n {
                violations += 1;
                if witnesses.len() < 10 {
                    witnesses.push(serde_json::json!({ "pair": [u, v], "size": nb.count_ones() }));
                }
            }
        }
    }
    Ok(finish_count_claim(
        format!("lemmas/pair-neighborhood-floor/kind=fq/n={n}"),
        serde_json::json!({ "kind": "fq", "n": n, "floor": 2 * n }),
        violations,
        witnesses,
        start,
    ))
}

/// Exhaustive sweep of pairwise-distance-2 triples: exactly 4 vertices must
/// be adjacent to two or more of the triple.
pub fn triple_multicovered_claim(t: &Topology) -> Result<Report> {
    require_folded_at_most(t, 7)?;
    if t.n() < 5 {
        return Err(Error::InvalidDimension(t.n() as i64));
    }
    let start = Instant::now();
    let n = t.n();
    let nv = t.vertex_count();
    let masks = Masks::build(t);
    let mut triples = 0u64;
    let mut violations = 0u64;
    let mut witnesses = Vec::new();
    for u in 0..nv as usize {
        for v in (u + 1)..nv as usize {
            if masks.dist2[u] >> v & 1 == 0 {
                continue;
            }
            let both = masks.dist2[u] & masks.dist2[v];
            let mut m = both >> (v + 1) << (v + 1);
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                m &= m - 1;
                triples += 1;
                let ab = masks.nbr[u] & masks.nbr[v];
                let ac = masks.nbr[u] & masks.nbr[w];
                let bc = masks.nbr[v] & masks.nbr[w];
                let covered = (ab | ac | bc).count_ones();
                if covered != 4 {
                    violations += 1;
                    if witnesses.len() < 10 {
                        witnesses.push(serde_json::json!({
                            "triple": [u, v, w],
                            "multicovered": covered,
                        }));
                    }
                }
            }
        }
    }
    Ok(finish_count_claim(
        format!("lemmas/triple-multicovered/kind=fq/n={n}"),
        serde_json::json!({ "kind": "fq", "n": n, "distance2_triples": triples }),
        violations,
        witnesses,
        start,
    ))
}

pub fn bipartite_claim(t: &Topology) -> Report {
    let start = Instant::now();
    let computed = t.is_bipartite();
    let expected = match t.kind() {
        Kind::Folded => t.n() % 2 == 1,
        Kind::Hypercube => true,
    };
    Report::new(
        format!(
            "lemmas/bipartite-iff-odd-dimension/kind={}/n={}",
            t.kind().as_str(),
            t.n()
        ),
        serde_json::json!({ "kind": t.kind().as_str(), "n": t.n() }),
        if computed == expected {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
    )
    .expected(expected)
    .computed(computed)
    .elapsed(start)
}

/// For even dimensions: the shortest odd cycle has length n+1 and carries
/// exactly one complement-matching edge.
pub fn odd_girth_claim(t: &Topology) -> Result<Report> {
    if t.kind() != Kind::Folded || t.n() % 2 != 0 {
        return Err(Error::Precondition(
            "odd girth claims apply to even-dimensional folded graphs".into(),
        ));
    }
    let start = Instant::now();
    let n = t.n();
    let girth = t.odd_girth();
    let cycle = t.shortest_odd_cycle();
    let comp_edges = match &cycle {
        Some(c) => Some(t.count_complementary_edges_on_cycle(c)?),
        None => None,
    };
    let ok = girth == Some(n + 1) && comp_edges == Some(1);
    let mut report = Report::new(
        format!("lemmas/odd-girth-and-complement-edge/kind=fq/n={n}"),
        serde_json::json!({ "kind": "fq", "n": n }),
        if ok { Verdict::Pass } else { Verdict::Fail },
    )
    .expected(serde_json::json!({ "odd_girth": n + 1, "complementary_edges": 1 }))
    .computed(serde_json::json!({ "odd_girth": girth, "complementary_edges": comp_edges }));
    if let Some(c) = cycle {
        report = report.witness(serde_json::json!({ "cycle": c }));
    }
    Ok(report.elapsed(start))
}

/// Evidence that no deletion set of size <= f_n(n+2) yields n+3 components.
/// Complete sweeps PASS; budget-trimmed sweeps report how far they got.
pub fn cut_floor_claim(t: &Topology, budget: &SearchBudget) -> Result<Report> {
    if t.kind() != Kind::Folded {
        return Err(Error::Precondition("the budget-curve floor is a folded-family claim".into()));
    }
    let start = Instant::now();
    let n = t.n();
    let target = n + 3;
    let max_size = f(n, n as i64 + 2)?.value as u32;
    let ev = certify_cut_floor(t, target, max_size, budget)?;
    let complete = ev.complete_through == max_size;
    let verdict = match (&ev.counterexample, complete) {
        (Some(_), _) => Verdict::Fail,
        (None, true) => Verdict::Pass,
        (None, false) => Verdict::Finding,
    };
    let mut report = Report::new(
        format!("ckappa/no-cheap-extra-component-cut/kind=fq/n={n}"),
        serde_json::json!({
            "kind": "fq", "n": n,
            "target_components": target,
            "max_size": max_size,
            "complete": complete,
            "sizes_fully_swept": ev.complete_through,
            "nodes_expanded": ev.nodes_expanded,
        }),
        verdict,
    )
    .expected(serde_json::json!({ "cuts_found": 0 }))
    .computed(serde_json::json!({ "cuts_found": ev.counterexample.is_some() as u32 }));
    if let Some(cx) = ev.counterexample {
        report = report.witness(serde_json::json!({
            "cut": cx.cut.to_sorted_vec(),
            "component_sizes": cx.profile.sizes,
        }));
    }
    Ok(report.elapsed(start))
}

/// The plateau drop: the curve strictly decreases from n+1 to n+2.
pub fn budget_curve_drop_claim(n: u32) -> Result<Report> {
    let start = Instant::now();
    let hi = f(n, n as i64 + 1)?.value;
    let lo = f(n, n as i64 + 2)?.value;
    Ok(Report::new(
        format!("closed-form/budget-curve-drop/n={n}"),
        serde_json::json!({ "n": n }),
        if lo < hi { Verdict::Pass } else { Verdict::Fail },
    )
    .expected(serde_json::json!({ "strictly_below": true }))
    .computed(serde_json::json!({ "at_n_plus_1": hi, "at_n_plus_2": lo }))
    .elapsed(start))
}

/// Randomized structure check on the plain cube: whenever |F| is below the
/// extremal threshold for g, the components other than the largest must
/// stay within the branch bound in total order.
pub fn large_component_random_claim(n: u32, g: u32, trials: u64, seed: u64) -> Result<Report> {
    let t = Topology::build(Kind::Hypercube, n)?;
    if g < 1 || g as i64 > 2 * n as i64 - 4 {
        return Err(Error::GOutOfRange {
            g: g as i64,
            reason: format!("large-component bound covers 1 <= g <= 2n-4 = {}", 2 * n - 4),
        });
    }
    let start = Instant::now();
    let nv = t.vertex_count();
    let threshold = theta_qn_formula(n, g as i64)?.value as u32;
    let bound = if g <= n.saturating_sub(3) || g >= n + 2 { g - 1 } else { n + 1 };
    let mut worst_total = 0u32;
    let mut violations = 0u64;
    let mut balanced_splits = 0u64;
    let mut witnesses = Vec::new();
    for fsize in 0..threshold {
        for trial in 0..trials {
            let mut rng = tagged_rng(seed, &[n, g, fsize, trial as u32]);
            let labels = sample_distinct(&mut rng, nv, fsize);
            let fset = VertexSet::from_labels(nv, &labels);
            let profile = components(&t, &fset);
            let small_total = (nv - fsize) - profile.largest;
            worst_total = worst_total.max(small_total);
            if small_total > bound {
                violations += 1;
                if witnesses.len() < 5 {
                    witnesses.push(serde_json::json!({
                        "fault_set": fset.to_sorted_vec(),
                        "component_sizes": profile.sizes,
                        "small_total": small_total,
                    }));
                }
            } else if profile.sizes.iter().filter(|&&s| s > bound).count() != 1 {
                // Totals hold but no single component dominates; possible
                // only in exact ties at the bound. Recorded, not failed.
                balanced_splits += 1;
            }
        }
    }
    let mut report = Report::new(
        format!("structure/large-component-random/kind=q/n={n}/g={g}"),
        serde_json::json!({
            "kind": "q", "n": n, "g": g,
            "threshold": threshold,
            "bound": bound,
            "trials_per_cell": trials,
            "cells": threshold,
        }),
        if violations == 0 { Verdict::Pass } else { Verdict::Fail },
    )
    .expected(serde_json::json!({ "violations": 0 }))
    .computed(serde_json::json!({
        "violations": violations,
        "worst_small_total": worst_total,
        "balanced_splits": balanced_splits,
    }))
    .seed(seed);
    if !witnesses.is_empty() {
        report = report.witness(serde_json::json!(witnesses));
    }
    Ok(report.elapsed(start))
}

/// Hard-zero sampling claim: below the connectivity threshold, no trial may
/// ever disconnect the graph. Licensed at n >= 8.
pub fn faultsim_zero_claim(t: &Topology, trials: u64, seed: u64) -> Result<Report> {
    if t.kind() != Kind::Folded || t.n() < 8 {
        return Err(Error::Precondition(
            "the hard-zero claim needs the folded family at n >= 8".into(),
        ));
    }
    let start = Instant::now();
    let n = t.n();
    let faults = f(n, 1)?.value as u32 - 1;
    let stats = simulate(t, faults, trials, seed)?;
    let p_split = stats
        .prob_at_least_g_components
        .get(&2)
        .copied()
        .unwrap_or(0.0);
    Ok(Report::new(
        format!("faultsim/hard-zero-below-connectivity/kind=fq/n={n}"),
        serde_json::json!({
            "kind": "fq", "n": n,
            "fault_count": faults, "trials": trials,
        }),
        if p_split == 0.0 { Verdict::Pass } else { Verdict::Fail },
    )
    .expected(serde_json::json!({ "prob_geq_2_components": 0.0 }))
    .computed(serde_json::json!({ "prob_geq_2_components": p_split }))
    .seed(seed)
    .elapsed(start))
}

fn require_folded_at_most(t: &Topology, max_n: u32) -> Result<()> {
    if t.kind() != Kind::Folded {
        return Err(Error::Precondition("this sweep is a folded-family claim".into()));
    }
    if t.n() > max_n {
        return Err(Error::VertexBudgetExceeded { n: t.n(), max_n });
    }
    Ok(())
}

fn finish_count_claim(
    claim_id: String,
    parameters: serde_json::Value,
    violations: u64,
    witnesses: Vec<serde_json::Value>,
    start: Instant,
) -> Report {
    let mut report = Report::new(
        claim_id,
        parameters,
        if violations == 0 { Verdict::Pass } else { Verdict::Fail },
    )
    .expected(0u64)
    .computed(violations);
    if !witnesses.is_empty() {
        report = report.witness(serde_json::json!(witnesses));
    }
    report.elapsed(start)
}

fn tagged_rng(seed: u64, tags: &[u32]) -> ChaCha12Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    for (i, &tag) in tags.iter().take(6).enumerate() {
        key[8 + 4 * i..12 + 4 * i].copy_from_slice(&tag.to_le_bytes());
    }
    ChaCha12Rng::from_seed(key)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lemmas,
    Theta,
    Ckappa,
    Structure,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "lemmas" => Ok(Suite::Lemmas),
            "theta" => Ok(Suite::Theta),
            "ckappa" => Ok(Suite::Ckappa),
            "structure" => Ok(Suite::Structure),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite '{other}' (expected lemmas|theta|ckappa|structure|all)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub n_lo: u32,
    pub n_hi: u32,
    pub seed: u64,
    /// Per-claim search budget for the exact searches.
    pub max_nodes: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_lo: 4,
            n_hi: 5,
            seed: 42,
            max_nodes: 50_000_000,
        }
    }
}

/// Runs one suite over the dimension range, returning a deterministic
/// sequence of claim reports. Claims a dimension cannot support (odd girth
/// at odd n, triples below n = 5, sweeps beyond exhaustable sizes) are
/// omitted rather than padded with placeholders.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    if cfg.n_lo < 1 || cfg.n_lo > cfg.n_hi {
        return Err(Error::Precondition(format!(
            "bad dimension range {}..{}",
            cfg.n_lo, cfg.n_hi
        )));
    }
    let mut out = Vec::new();
    match suite {
        Suite::Lemmas => lemmas_suite(cfg, &mut out)?,
        Suite::Theta => theta_suite(cfg, &mut out)?,
        Suite::Ckappa => ckappa_suite(cfg, &mut out)?,
        Suite::Structure => structure_suite(cfg, &mut out)?,
        Suite::All => {
            lemmas_suite(cfg, &mut out)?;
            theta_suite(cfg, &mut out)?;
            ckappa_suite(cfg, &mut out)?;
            structure_suite(cfg, &mut out)?;
        }
    }
    Ok(out)
}

fn lemmas_suite(cfg: &SuiteConfig, out: &mut Vec<Report>) -> Result<()> {
    for n in cfg.n_lo..=cfg.n_hi {
        if n >= 2 {
            let fq = Topology::build(Kind::Folded, n)?;
            out.push(bipartite_claim(&fq));
            if n % 2 == 0 {
                out.push(odd_girth_claim(&fq)?);
            }
            if (4..=7).contains(&n) {
                out.push(pair_common_neighbor_claim(&fq)?);
                out.push(pair_neighborhood_floor_claim(&fq)?);
            }
            if (5..=7).contains(&n) {
                out.push(triple_multicovered_claim(&fq)?);
            }
            if (5..=7).contains(&n) {
                for g in 2..=n + 1 {
                    // Exhaustive while the subset count stays tame.
                    let exhaustive_cost = binomial_estimate(1u64 << n, g as u64);
                    let mode = if exhaustive_cost <= 2_000_000 {
                        CheckMode::Exhaustive
                    } else {
                        CheckMode::Sampled { draws: 100_000 }
                    };
                    out.push(check_private_neighbor_lemma(&fq, g, mode, cfg.seed)?);
                }
            }
        }
        let q = Topology::build(Kind::Hypercube, n)?;
        out.push(bipartite_claim(&q));
    }
    Ok(())
}

fn theta_suite(cfg: &SuiteConfig, out: &mut Vec<Report>) -> Result<()> {
    let budget = SearchBudget::nodes(cfg.max_nodes);
    for n in cfg.n_lo..=cfg.n_hi {
        if n >= 2 {
            let fq = Topology::build(Kind::Folded, n)?;
            for g in 1..=n + 2 {
                out.push(theta_exact_claim(&fq, g, &budget)?);
            }
            if n >= 5 {
                for g in 1..=n + 2 {
                    let claim = theta_star_claim(&fq, g)?;
                    // The star value must sit exactly on the curve here.
                    let tied = claim.computed == claim.expected;
                    let mut claim = claim;
                    claim.verdict = if tied { Verdict::Pass } else { Verdict::Fail };
                    claim.claim_id = format!("theta/star-upper-vs-closed-form/kind=fq/n={n}/g={g}");
                    out.push(claim);
                }
            }
        }
        let q = Topology::build(Kind::Hypercube, n)?;
        for g in 1..=2 * n {
            out.push(theta_exact_claim(&q, g, &budget)?);
        }
    }
    Ok(())
}

fn ckappa_suite(cfg: &SuiteConfig, out: &mut Vec<Report>) -> Result<()> {
    let budget = CkappaBudget {
        search: SearchBudget::nodes(cfg.max_nodes),
        ..CkappaBudget::default()
    };
    for n in cfg.n_lo..=cfg.n_hi {
        // Exact claims are certified by full sweeps, which are affordable
        // only while the graph fits in a machine word.
        if n >= 2 && n <= 6 {
            let fq = Topology::build(Kind::Folded, n)?;
            let mut values = Vec::new();
            for g in 1..=(n + 1).min(5) {
                let claim = ckappa_exact_claim(&fq, g, &budget)?;
                if let Some(v) = claim.computed.as_ref().and_then(|c| c.as_u64()) {
                    values.push(v);
                }
                out.push(claim);
            }
            out.push(monotonicity_claim("fq", n, &values));
            out.push(cut_floor_claim(&fq, &SearchBudget::nodes(cfg.max_nodes))?);
        }
        if n >= 2 {
            out.push(budget_curve_drop_claim(n)?);
            let fq = Topology::build(Kind::Folded, n)?;
            if n >= 5 && n <= 10 {
                for g in 1..=n + 1 {
                    out.push(star_cut_curve_claim(&fq, g)?);
                }
            }
        }
        if n >= 3 && n <= 6 {
            let q = Topology::build(Kind::Hypercube, n)?;
            let mut values = Vec::new();
            for g in 1..=n.min(5) {
                let claim = ckappa_exact_claim(&q, g, &budget)?;
                if let Some(v) = claim.computed.as_ref().and_then(|c| c.as_u64()) {
                    values.push(v);
                }
                out.push(claim);
            }
            out.push(monotonicity_claim("q", n, &values));
        }
    }
    Ok(())
}

/// The constructive cut hits the curve exactly: certified, right size,
/// enough singletons.
fn star_cut_curve_claim(t: &Topology, g: u32) -> Result<Report> {
    let start = Instant::now();
    let n = t.n();
    let w = star_cut(t, 0, g)?;
    let curve = f(n, g as i64)?.value;
    let ok = w.certified && w.cut.len() as i64 == curve && w.profile.singleton_count >= g;
    Ok(Report::new(
        format!("ckappa/star-cut-vs-closed-form/kind=fq/n={n}/g={g}"),
        serde_json::json!({ "kind": "fq", "n": n, "curve_index": g, "target_components": g + 1 }),
        if ok { Verdict::Pass } else { Verdict::Fail },
    )
    .expected(serde_json::json!({
        "cut_size": curve, "certified": true, "min_singletons": g,
    }))
    .computed(serde_json::json!({
        "cut_size": w.cut.len(),
        "certified": w.certified,
        "singletons": w.profile.singleton_count,
        "component_count": w.profile.component_count,
    }))
    .elapsed(start))
}

fn monotonicity_claim(kind: &str, n: u32, values: &[u64]) -> Report {
    let start = Instant::now();
    let monotone = values.windows(2).all(|w| w[0] <= w[1]);
    Report::new(
        format!("ckappa/monotone-in-target/kind={kind}/n={n}"),
        serde_json::json!({ "kind": kind, "n": n, "targets_from": 2 }),
        if monotone { Verdict::Pass } else { Verdict::Fail },
    )
    .expected(serde_json::json!({ "non_decreasing": true }))
    .computed(serde_json::json!({ "values": values }))
    .elapsed(start)
}

fn structure_suite(cfg: &SuiteConfig, out: &mut Vec<Report>) -> Result<()> {
    for n in cfg.n_lo..=cfg.n_hi {
        if (2..=16).contains(&n) {
            out.push(closedform::f_structure_facts(n)?);
        }
        if n == 4 || n == 5 {
            for g in 1..=2 * n - 4 {
                out.push(large_component_random_claim(n, g, 200, cfg.seed)?);
            }
        }
        if n >= 8 {
            let fq = Topology::build(Kind::Folded, n)?;
            out.push(faultsim_zero_claim(&fq, 2_000, cfg.seed)?);
        }
    }
    Ok(())
}

/// min(C(n, k), u64::MAX-ish), for deciding exhaustive vs sampled sweeps.
fn binomial_estimate(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 / 2 {
            return u64::MAX / 2;
        }
    }
    acc as u64
}

//! Component analysis under vertex deletion: component profiles, g-component
//! cut certification, the constructive neighbor-set cut, exact component
//! connectivity, and the large-component structure check for the plain cube.

use std::time::Instant;

use rayon::prelude::*;

use crate::closedform::theta_qn_formula;
use crate::error::{Error, Result};
use crate::extremal::{theta_exact, SearchBudget};
use crate::report::{Report, Verdict};
use crate::setcalc::{neighborhood, VertexSet};
use crate::topology::{Kind, Topology};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentProfile {
    pub component_count: u32,
    /// Component orders, largest first.
    pub sizes: Vec<u32>,
    pub largest: u32,
    pub singleton_count: u32,
}

#[derive(Debug, Clone)]
pub struct CutWitness {
    pub cut: VertexSet,
    pub profile: ComponentProfile,
    pub target_g: u32,
    /// True iff deleting `cut` leaves at least `target_g` components.
    pub certified: bool,
}

/// Exact component structure of t − f.
pub fn components(t: &Topology, f: &VertexSet) -> ComponentProfile {
    let nv = t.vertex_count();
    let mut visited = f.clone();
    let mut sizes: Vec<u32> = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    for v in 0..nv {
        if visited.contains(v) {
            continue;
        }
        let mut size = 0u32;
        visited.insert(v);
        stack.push(v);
        while let Some(x) = stack.pop() {
            size += 1;
            t.for_each_neighbor(x, |y| {
                if visited.insert(y) {
                    stack.push(y);
                }
            });
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let total: u32 = sizes.iter().sum();
    debug_assert_eq!(total, nv - f.len());
    ComponentProfile {
        component_count: sizes.len() as u32,
        largest: sizes.first().copied().unwrap_or(0),
        singleton_count: sizes.iter().filter(|&&s| s == 1).count() as u32,
        sizes,
    }
}

/// Certifies (or refutes) that f is a g-component cut.
pub fn is_g_component_cut(t: &Topology, f: &VertexSet, g: u32) -> Result<CutWitness> {
    if g < 2 {
        return Err(Error::GOutOfRange {
            g: g as i64,
            reason: "a component cut must target at least 2 components".into(),
        });
    }
    let profile = components(t, f);
    let certified = profile.component_count >= g;
    Ok(CutWitness {
        cut: f.clone(),
        profile,
        target_g: g,
        certified,
    })
}

/// The constructive cut: take S = the g lowest-labeled neighbors of v and
/// delete N(S). For n ≥ 3 the members of S are pairwise non-adjacent, so
/// they survive as g singletons and the deletion leaves at least g+1
/// components; |N(S)| realizes the budget curve f_n(g).
pub fn star_cut(t: &Topology, v: u32, g: u32) -> Result<CutWitness> {
    if t.kind() != Kind::Folded {
        return Err(Error::Precondition(
            "the neighbor-set cut construction is stated for the folded family".into(),
        ));
    }
    t.check_vertex(v)?;
    let n = t.n();
    if g < 1 || g > n + 1 {
        return Err(Error::GOutOfRange {
            g: g as i64,
            reason: format!("neighbor-set cut needs 1 <= g <= n+1 = {}", n + 1),
        });
    }
    let mut nbrs = t.neighbor_labels(v);
    nbrs.sort_unstable();
    nbrs.truncate(g as usize);
    let s = VertexSet::from_labels(t.vertex_count(), &nbrs);
    let cut = neighborhood(t, &s);
    is_g_component_cut(t, &cut, g + 1)
}

#[derive(Debug, Clone, Copy)]
pub struct CkappaBudget {
    pub search: SearchBudget,
    /// Cap on |U| during enumeration; None picks n+3, the size the
    /// structural argument bounds for minimal cuts.
    pub u_cap: Option<u32>,
    /// Run the minimality sweep after the U-phase. Without it the result is
    /// only ever an upper bound (exhaustive = false), because the |U| cap is
    /// an assumption, not a theorem, outside the quoted ranges.
    pub certify: bool,
}

impl Default for CkappaBudget {
    fn default() -> Self {
        CkappaBudget {
            search: SearchBudget::default(),
            u_cap: None,
            certify: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CkappaResult {
    pub target_g: u32,
    pub value: u32,
    pub witness: CutWitness,
    pub exhaustive: bool,
    pub nodes_expanded: u64,
}

/// Tracks connected pieces of the induced subgraph on the growing U.
/// Positions index into the label vector; ids are normalized on merge.
#[derive(Clone)]
struct PieceIds {
    ids: Vec<u8>,
    count: u32,
    next_id: u8,
}

impl PieceIds {
    fn new() -> Self {
        PieceIds {
            ids: Vec::new(),
            count: 0,
            next_id: 0,
        }
    }

    fn push(&mut self, t: &Topology, labels: &[u32], v: u32) {
        let mut merged: Option<u8> = None;
        let mut to_merge: Vec<u8> = Vec::new();
        for (i, &u) in labels.iter().enumerate() {
            if t.adjacent(u, v) {
                let id = self.ids[i];
                match merged {
                    None => merged = Some(id),
                    Some(m) if m != id && !to_merge.contains(&id) => to_merge.push(id),
                    _ => {}
                }
            }
        }
        match merged {
            None => {
                self.ids.push(self.next_id);
                self.next_id += 1;
                self.count += 1;
            }
            Some(m) => {
                for id in &mut self.ids {
                    if to_merge.contains(id) {
                        *id = m;
                    }
                }
                self.ids.push(m);
                self.count -= to_merge.len() as u32;
            }
        }
    }
}

struct UPhaseOutcome {
    value: u32,
    u_labels: Option<Vec<u32>>,
    f_labels: Vec<u32>,
    nodes: u64,
    exhausted: bool,
}

struct UPhaseSearch<'a> {
    t: &'a Topology,
    target_g: u32,
    u_cap: u32,
    /// Exhaustively certified lower bounds on |N(U)| by |U|; index 0 unused.
    theta_floor: &'a [u32],
    node_budget: u64,
    nodes: u64,
    exhausted: bool,
    incumbent: u32,
    best_u: Option<Vec<u32>>,
    best_f: Vec<u32>,
    labels: Vec<u32>,
}

impl<'a> UPhaseSearch<'a> {
    fn consider(&mut self, nb: &VertexSet, pieces: u32, k: u32, c: u32) {
        let nv = self.t.vertex_count();
        if pieces >= self.target_g - 1 && k + c < nv {
            if c < self.incumbent || (self.best_u.is_none() && c == self.incumbent) {
                self.incumbent = c;
                self.best_u = Some(self.labels.clone());
                self.best_f = nb.to_sorted_vec();
            }
        }
    }

    /// Smallest value any extension of the current node could still reach,
    /// over the sizes that could still produce enough pieces.
    fn future_floor(&self, k: u32, c: u32, pieces: u32) -> Option<u32> {
        let need = (self.target_g - 1).saturating_sub(pieces);
        let m_lo = (k + need).max(k + 1);
        if m_lo > self.u_cap {
            return None;
        }
        let mut floor = u32::MAX;
        for m in m_lo..=self.u_cap {
            let path = c.saturating_sub(m - k);
            floor = floor.min(path.max(self.theta_floor[m as usize]));
        }
        Some(floor)
    }

    fn extend(&mut self, members: &VertexSet, nb: &VertexSet, pieces: &PieceIds, c: u32) {
        let k = self.labels.len() as u32;
        if k >= self.u_cap {
            return;
        }
        match self.future_floor(k, c, pieces.count) {
            None => return,
            Some(floor) => {
                let cut = if self.best_u.is_some() {
                    floor >= self.incumbent
                } else {
                    floor > self.incumbent
                };
                if cut {
                    return;
                }
            }
        }
        let last = *self.labels.last().unwrap();
        for v in (last + 1)..self.t.vertex_count() {
            self.nodes += 1;
            if self.nodes > self.node_budget {
                self.exhausted = true;
                return;
            }
            let mut members2 = members.clone();
            members2.insert(v);
            let mut nb2 = nb.clone();
            nb2.remove(v);
            self.t.for_each_neighbor(v, |u| {
                if !members2.contains(u) {
                    nb2.insert(u);
                }
            });
            let c2 = nb2.len();
            let mut pieces2 = pieces.clone();
            pieces2.push(self.t, &self.labels, v);
            self.labels.push(v);
            self.consider(&nb2, pieces2.count, k + 1, c2);
            self.extend(&members2, &nb2, &pieces2, c2);
            self.labels.pop();
            if self.exhausted {
                return;
            }
        }
    }
}

/// min(C(n, k), cap) without overflow.
fn binomial_capped(n: u64, k: u64, cap: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc >= cap as u128 {
            return cap;
        }
    }
    acc as u64
}

/// Evidence gathered by sweeping all deletion sets of size lo..=hi (up to
/// symmetry) for one that splits the graph into >= g components.
pub struct CutFloorEvidence {
    pub target_g: u32,
    pub max_size: u32,
    /// Every size 1..=complete_through was fully swept (0 = none were).
    pub complete_through: u32,
    /// First counterexample found, if any: a cut of size <= max_size.
    pub counterexample: Option<CutWitness>,
    pub nodes_expanded: u64,
}

/// Sweeps canonical deletion sets level by level. Canonical form: 0 is in F
/// (translations act transitively) and the second-lowest label is 2^w − 1
/// (bit permutations sort the lowest-weight other member first); both maps
/// are automorphisms, so every orbit is covered. A level either runs to
/// completion or, when the remaining node budget cannot cover it, is not
/// started at all; partial levels would make results depend on scheduling.
pub fn certify_cut_floor(
    t: &Topology,
    g: u32,
    max_size: u32,
    budget: &SearchBudget,
) -> Result<CutFloorEvidence> {
    if g < 2 {
        return Err(Error::GOutOfRange {
            g: g as i64,
            reason: "a component cut must target at least 2 components".into(),
        });
    }
    let nv = t.vertex_count();
    if nv > 64 {
        // The mask-based sweep is the only implementation; beyond 64
        // vertices no full level is affordable anyway.
        return Ok(CutFloorEvidence {
            target_g: g,
            max_size,
            complete_through: 0,
            counterexample: None,
            nodes_expanded: 0,
        });
    }
    let full: u64 = if nv == 64 { !0 } else { (1u64 << nv) - 1 };
    let adj: Vec<u64> = (0..nv)
        .map(|v| {
            let mut m = 0u64;
            t.for_each_neighbor(v, |u| m |= 1u64 << u);
            m
        })
        .collect();

    let meets = |f_mask: u64| -> bool { components_meet_mask(&adj, full, f_mask, g) };

    let seconds: Vec<u32> = (1..=t.n()).map(|w| (1u32 << w) - 1).collect();
    let mut nodes: u64 = 0;
    let mut complete_through = 0;
    let mut hit: Option<Vec<u32>> = None;

    'levels: for k in 1..=max_size {
        // Size of this canonical level, for the all-or-nothing budget rule.
        let level_size: u64 = if k == 1 {
            1
        } else {
            seconds.iter().fold(0u64, |acc, &s| {
                acc.saturating_add(binomial_capped(
                    (nv - 1 - s) as u64,
                    (k - 2) as u64,
                    u64::MAX / 64,
                ))
            })
        };
        if nodes.saturating_add(level_size) > budget.max_nodes {
            break;
        }
        nodes += level_size;
        if k == 1 {
            if meets(1) {
                hit = Some(vec![0]);
            }
        } else {
            // One chunk per canonical second element; each chunk reports its
            // first hit in lexicographic order, and the merge prefers the
            // lowest second element, so the outcome is worker-invariant.
            let chunk_hits: Vec<Option<Vec<u32>>> = seconds
                .par_iter()
                .map(|&s| {
                    if nv - 1 - s < k - 2 {
                        return None;
                    }
                    let base = 1u64 | (1u64 << s);
                    let mut idx: Vec<u32> = (s + 1..s + 1 + (k - 2)).collect();
                    if k == 2 {
                        return if meets(base) { Some(vec![0, s]) } else { None };
                    }
                    loop {
                        let mut mask = base;
                        for &x in &idx {
                            mask |= 1u64 << x;
                        }
                        if meets(mask) {
                            let mut labels = vec![0, s];
                            labels.extend_from_slice(&idx);
                            return Some(labels);
                        }
                        let mut i = idx.len();
                        loop {
                            if i == 0 {
                                return None;
                            }
                            i -= 1;
                            if idx[i] < nv - (idx.len() - i) as u32 {
                                idx[i] += 1;
                                for j in i + 1..idx.len() {
                                    idx[j] = idx[j - 1] + 1;
                                }
                                break;
                            }
                        }
                    }
                })
                .collect();
            hit = chunk_hits.into_iter().flatten().next();
        }
        complete_through = k;
        if hit.is_some() {
            break 'levels;
        }
    }

    let counterexample = match hit {
        None => None,
        Some(labels) => {
            let f = VertexSet::from_labels(nv, &labels);
            Some(is_g_component_cut(t, &f, g)?)
        }
    };
    Ok(CutFloorEvidence {
        target_g: g,
        max_size,
        complete_through,
        counterexample,
        nodes_expanded: nodes,
    })
}

/// True iff deleting f_mask leaves at least g components (bitmask graphs,
/// up to 64 vertices).
fn components_meet_mask(adj: &[u64], full: u64, f_mask: u64, g: u32) -> bool {
    let mut alive = full & !f_mask;
    let mut count = 0u32;
    while alive != 0 {
        count += 1;
        if count >= g {
            return true;
        }
        let seed = alive & alive.wrapping_neg();
        let mut comp = seed;
        let mut frontier = seed;
        while frontier != 0 {
            let mut next = 0u64;
            let mut fr = frontier;
            while fr != 0 {
                let v = fr.trailing_zeros() as usize;
                fr &= fr - 1;
                next |= adj[v];
            }
            next &= alive & !comp;
            comp |= next;
            frontier = next;
        }
        alive &= !comp;
        if count + alive.count_ones() < g {
            return false;
        }
    }
    count >= g
}

/// Exact g-component connectivity: the minimum |F| whose deletion leaves at
/// least g components.
///
/// Phase one minimizes |N(U)| over connected-piece unions U with at least
/// g−1 pieces and a nonempty remainder outside the closed neighborhood; a
/// minimal cut is always the neighborhood of the union of all non-largest
/// components, so this search is complete up to the |U| cap. Phase two (the
/// minimality sweep) certifies that no strictly smaller deletion set of any
/// shape works, which also discharges the cap assumption. `exhaustive` is
/// true only when both phases finished within budget.
pub fn ckappa_exact(t: &Topology, g: u32, budget: &CkappaBudget) -> Result<CkappaResult> {
    if g < 2 {
        return Err(Error::GOutOfRange {
            g: g as i64,
            reason: "component connectivity is defined from 2 components up".into(),
        });
    }
    let nv = t.vertex_count();
    let n = t.n();
    let u_cap = budget.u_cap.unwrap_or(n + 3).min(nv - 2);
    let mut nodes: u64 = 0;

    // Exhaustive theta values double as lower bounds on |N(U)| by |U|.
    // Entries whose own search did not finish stay at the trivial floor 0.
    let mut theta_floor = vec![0u32; u_cap as usize + 1];
    for m in 1..=u_cap {
        let r = theta_exact(t, m, &SearchBudget::nodes(1_000_000))?;
        nodes += r.nodes_expanded;
        if r.exhaustive {
            theta_floor[m as usize] = r.value;
        }
    }

    // Optional incumbent seed from the constructive cut.
    let seed = if t.kind() == Kind::Folded && g >= 2 && g - 1 <= n + 1 {
        star_cut(t, 0, g - 1).ok().filter(|w| w.certified)
    } else {
        None
    };
    let seed_value = seed.as_ref().map_or(u32::MAX, |w| w.cut.len());

    // Size-1 candidate: U = {0} (all singletons are equivalent).
    let mut best: Option<(u32, Vec<u32>, Vec<u32>)> = None;
    if g == 2 && 1 + t.degree() < nv {
        let f = t.neighbors(0);
        best = Some((f.len(), vec![0], f.to_sorted_vec()));
    }

    let seconds: Vec<u32> = (1..=n).map(|w| (1u32 << w) - 1).collect();
    let per_branch = budget.search.max_nodes / seconds.len() as u64;
    let init_incumbent = best
        .as_ref()
        .map_or(u32::MAX, |(v, _, _)| *v)
        .min(seed_value);

    let outcomes: Vec<UPhaseOutcome> = seconds
        .par_iter()
        .map(|&s| {
            let members = VertexSet::from_labels(nv, &[0, s]);
            let nb = neighborhood(t, &members);
            let c = nb.len();
            let mut pieces = PieceIds::new();
            pieces.push(t, &[], 0);
            pieces.push(t, &[0], s);
            let mut search = UPhaseSearch {
                t,
                target_g: g,
                u_cap,
                theta_floor: &theta_floor,
                node_budget: per_branch,
                nodes: 1,
                exhausted: false,
                incumbent: init_incumbent,
                best_u: None,
                best_f: Vec::new(),
                labels: vec![0, s],
            };
            search.consider(&nb, pieces.count, 2, c);
            search.extend(&members, &nb, &pieces, c);
            UPhaseOutcome {
                value: search.incumbent,
                u_labels: search.best_u,
                f_labels: search.best_f,
                nodes: search.nodes,
                exhausted: search.exhausted,
            }
        })
        .collect();

    let mut u_phase_complete = true;
    for o in outcomes {
        nodes += o.nodes;
        u_phase_complete &= !o.exhausted;
        if let Some(u) = o.u_labels {
            let better = match &best {
                None => true,
                Some((bv, bu, _)) => o.value < *bv || (o.value == *bv && u < *bu),
            };
            if better {
                best = Some((o.value, u, o.f_labels));
            }
        }
    }

    // Fall back to the constructive seed if the search itself adopted
    // nothing within budget.
    let (mut value, mut f_labels) = match (&best, &seed) {
        (Some((v, _, f)), _) => (*v, f.clone()),
        (None, Some(w)) => (w.cut.len(), w.cut.to_sorted_vec()),
        (None, None) => return Err(Error::NoCutWithinBudget { target: g }),
    };

    let mut exhaustive = false;
    if budget.certify && u_phase_complete && value > 1 {
        let remaining = SearchBudget::nodes(budget.search.max_nodes.saturating_sub(nodes));
        let evidence = certify_cut_floor(t, g, value - 1, &remaining)?;
        nodes += evidence.nodes_expanded;
        if let Some(cx) = evidence.counterexample {
            // The cap assumption failed: a smaller cut exists. Every level
            // below it was swept clean first, so this is the exact value.
            value = cx.cut.len();
            f_labels = cx.cut.to_sorted_vec();
            exhaustive = true;
        } else {
            exhaustive = evidence.complete_through == value - 1;
        }
    } else if budget.certify && u_phase_complete && value == 1 {
        exhaustive = true;
    }

    let f = VertexSet::from_labels(nv, &f_labels);
    let witness = is_g_component_cut(t, &f, g)?;
    debug_assert!(witness.certified);
    Ok(CkappaResult {
        target_g: g,
        value,
        witness,
        exhaustive,
        nodes_expanded: nodes,
    })
}

/// Checks the structure of t − f for the plain cube when |f| is below the
/// extremal threshold for g: the components other than the largest must
/// together stay within the branch bound, and exactly one component must
/// exceed it.
pub fn large_component_check(t: &Topology, f: &VertexSet, g: u32) -> Result<Report> {
    if t.kind() != Kind::Hypercube {
        return Err(Error::Precondition(
            "the large-component bound is stated for the plain cube".into(),
        ));
    }
    let n = t.n();
    if n < 4 {
        return Err(Error::InvalidDimension(n as i64));
    }
    if g < 1 || g as i64 > 2 * n as i64 - 4 {
        return Err(Error::GOutOfRange {
            g: g as i64,
            reason: format!("large-component bound covers 1 <= g <= 2n-4 = {}", 2 * n - 4),
        });
    }
    let start = Instant::now();
    let threshold = theta_qn_formula(n, g as i64)?.value;
    if (f.len() as i64) >= threshold {
        return Err(Error::Precondition(format!(
            "|F| = {} is not below the extremal threshold {} for g = {g}",
            f.len(),
            threshold
        )));
    }
    let (bound, branch) = if g <= n.saturating_sub(3) {
        (g - 1, "low")
    } else if g <= n + 1 {
        (n + 1, "middle")
    } else {
        (g - 1, "high")
    };
    let profile = components(t, f);
    let small_total = (t.vertex_count() - f.len()) - profile.largest;
    let exceeding = profile.sizes.iter().filter(|&&s| s > bound).count() as u32;
    let ok = small_total <= bound && exceeding == 1;
    let mut report = Report::new(
        format!(
            "structure/large-component/kind=q/n={n}/g={g}/fsize={}",
            f.len()
        ),
        serde_json::json!({
            "kind": "q", "n": n, "g": g,
            "fault_count": f.len(),
            "threshold": threshold,
        }),
        if ok { Verdict::Pass } else { Verdict::Fail },
    )
    .expected(serde_json::json!({
        "small_total_at_most": bound,
        "components_exceeding_bound": 1,
    }))
    .computed(serde_json::json!({
        "branch": branch,
        "component_count": profile.component_count,
        "largest": profile.largest,
        "small_total": small_total,
        "components_exceeding_bound": exceeding,
    }));
    if !ok {
        report = report.witness(serde_json::json!({
            "component_sizes": profile.sizes,
            "fault_set": f.to_sorted_vec(),
        }));
    }
    Ok(report.elapsed(start))
}

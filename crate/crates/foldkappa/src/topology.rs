//! The two graph families under study. Vertices of the n-cube are the labels
//! 0..2^n with an edge per single-bit flip; the folded variant adds one edge
//! from each vertex to its bitwise complement. Adjacency is computed from the
//! labels on demand, so a `Topology` is just a kind and a dimension and the
//! whole graph never has to be materialized.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::setcalc::VertexSet;

/// Largest supported dimension. 2^24 vertices keeps every bitset and BFS
/// comfortably in memory; the exact searches are far more restrictive anyway.
pub const MAX_DIMENSION: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Kind {
    #[serde(rename = "q")]
    Hypercube,
    #[serde(rename = "fq")]
    Folded,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Hypercube => "q",
            Kind::Folded => "fq",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Topology {
    kind: Kind,
    n: u32,
}

impl Topology {
    /// Validates and constructs. The folded family starts at n = 2: at n = 1
    /// the complement edge would coincide with the single cube edge.
    pub fn build(kind: Kind, n: u32) -> Result<Topology> {
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if n > MAX_DIMENSION {
            return Err(Error::VertexBudgetExceeded {
                n,
                max_n: MAX_DIMENSION,
            });
        }
        if kind == Kind::Folded && n < 2 {
            return Err(Error::FoldedDimensionTooSmall);
        }
        Ok(Topology { kind, n })
    }

    #[inline]
    pub fn kind(&self) -> Kind {
        self.kind
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn vertex_count(&self) -> u32 {
        1u32 << self.n
    }

    /// Uniform degree: n for the cube, n + 1 with the complement matching.
    #[inline]
    pub fn degree(&self) -> u32 {
        match self.kind {
            Kind::Hypercube => self.n,
            Kind::Folded => self.n + 1,
        }
    }

    pub fn edge_count(&self) -> u64 {
        (self.vertex_count() as u64) * (self.degree() as u64) / 2
    }

    /// All-ones mask; XOR with it is the complement matching.
    #[inline]
    pub fn complement_mask(&self) -> u32 {
        self.vertex_count() - 1
    }

    #[inline]
    pub fn check_vertex(&self, v: u32) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                label: v as u64,
                n: self.n,
            })
        }
    }

    /// Calls f once per neighbor. The workhorse for everything; no allocation.
    #[inline]
    pub fn for_each_neighbor(&self, v: u32, mut f: impl FnMut(u32)) {
        debug_assert!(v < self.vertex_count());
        for i in 0..self.n {
            f(v ^ (1 << i));
        }
        if self.kind == Kind::Folded {
            f(v ^ self.complement_mask());
        }
    }

    #[inline]
    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        debug_assert!(u < self.vertex_count() && v < self.vertex_count());
        let x = u ^ v;
        x.count_ones() == 1 || (self.kind == Kind::Folded && x == self.complement_mask())
    }

    pub fn neighbors(&self, v: u32) -> VertexSet {
        let mut s = VertexSet::empty(self.vertex_count());
        self.for_each_neighbor(v, |u| {
            s.insert(u);
        });
        s
    }

    pub fn neighbor_labels(&self, v: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        self.for_each_neighbor(v, |u| out.push(u));
        out
    }

    /// Shortest-path distance by breadth-first search. On the folded cube
    /// this agrees with min(h, n + 1 − h) for Hamming weight h of u XOR v,
    /// but BFS is kept as the normative definition.
    pub fn distance(&self, u: u32, v: u32) -> Result<u32> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Ok(0);
        }
        let mut visited = VertexSet::empty(self.vertex_count());
        visited.insert(u);
        let mut frontier = vec![u];
        let mut next = Vec::new();
        let mut d = 0u32;
        while !frontier.is_empty() {
            d += 1;
            for &x in &frontier {
                let mut hit = false;
                self.for_each_neighbor(x, |y| {
                    if y == v {
                        hit = true;
                    }
                    if visited.insert(y) {
                        next.push(y);
                    }
                });
                if hit {
                    return Ok(d);
                }
            }
            frontier.clear();
            std::mem::swap(&mut frontier, &mut next);
        }
        unreachable!("both families are connected");
    }

    /// Two-colorability. Both families are connected, so one BFS suffices.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.vertex_count() as usize];
        color[0] = 0;
        let mut frontier = vec![0u32];
        let mut next = Vec::new();
        while !frontier.is_empty() {
            for &x in &frontier {
                let cx = color[x as usize];
                let mut odd_edge = false;
                self.for_each_neighbor(x, |y| {
                    let cy = &mut color[y as usize];
                    if *cy == u8::MAX {
                        *cy = 1 - cx;
                        next.push(y);
                    } else if *cy == cx {
                        odd_edge = true;
                    }
                });
                if odd_edge {
                    return false;
                }
            }
            frontier.clear();
            std::mem::swap(&mut frontier, &mut next);
        }
        true
    }

    /// Length of a shortest odd cycle, or None on bipartite graphs. Works on
    /// the bipartite double cover: states are (vertex, walk parity) and the
    /// shortest odd closed walk through a vertex is a shortest odd cycle
    /// through it. Both families are vertex-transitive, so searching from
    /// vertex 0 gives the global value.
    pub fn odd_girth(&self) -> Option<u32> {
        self.odd_walk_search().map(|(len, _)| len)
    }

    /// A concrete shortest odd cycle as a vertex list, or None on bipartite
    /// graphs. The returned cycle is simple, has odd length equal to
    /// `odd_girth`, and consecutive entries (cyclically) are adjacent.
    pub fn shortest_odd_cycle(&self) -> Option<Vec<u32>> {
        let (_, cycle) = self.odd_walk_search()?;
        Some(cycle)
    }

    fn odd_walk_search(&self) -> Option<(u32, Vec<u32>)> {
        let nv = self.vertex_count() as usize;
        // dist and parent per (vertex, parity); parity is the walk length mod 2.
        let mut dist = vec![[u32::MAX; 2]; nv];
        let mut parent = vec![[u32::MAX; 2]; nv];
        dist[0][0] = 0;
        let mut frontier = vec![(0u32, 0u8)];
        let mut next = Vec::new();
        while !frontier.is_empty() {
            for &(x, p) in &frontier {
                let dx = dist[x as usize][p as usize];
                let q = 1 - p;
                let mut done = false;
                self.for_each_neighbor(x, |y| {
                    if dist[y as usize][q as usize] == u32::MAX {
                        dist[y as usize][q as usize] = dx + 1;
                        parent[y as usize][q as usize] = x;
                        next.push((y, q));
                        if y == 0 && q == 1 {
                            done = true;
                        }
                    }
                });
                if done {
                    break;
                }
            }
            if dist[0][1] != u32::MAX {
                break;
            }
            frontier.clear();
            std::mem::swap(&mut frontier, &mut next);
        }
        let len = dist[0][1];
        if len == u32::MAX {
            return None;
        }
        // Walk parents back from (0, odd) to (0, even). The walk is a closed
        // odd walk of minimum length, hence a simple cycle.
        let mut walk = Vec::with_capacity(len as usize + 1);
        let (mut v, mut p) = (0u32, 1u8);
        loop {
            walk.push(v);
            if v == 0 && p == 0 {
                break;
            }
            let pv = parent[v as usize][p as usize];
            v = pv;
            p = 1 - p;
        }
        walk.pop(); // drop the duplicate start
        walk.reverse();
        debug_assert_eq!(walk.len() as u32, len);
        Some((len, walk))
    }

    /// Counts complement-matching edges along a cycle given as a vertex list
    /// (closing edge implied). Rejects anything that is not a simple cycle of
    /// this folded graph.
    pub fn count_complementary_edges_on_cycle(&self, cycle: &[u32]) -> Result<u32> {
        if self.kind != Kind::Folded {
            return Err(Error::Precondition(
                "complementary edges exist only in the folded family".into(),
            ));
        }
        if cycle.len() < 3 {
            return Err(Error::InvalidCycle(format!(
                "need at least 3 vertices, got {}",
                cycle.len()
            )));
        }
        let mut seen = VertexSet::empty(self.vertex_count());
        for &v in cycle {
            self.check_vertex(v)?;
            if !seen.insert(v) {
                return Err(Error::InvalidCycle(format!("vertex {v} repeats")));
            }
        }
        let mask = self.complement_mask();
        let mut count = 0;
        for i in 0..cycle.len() {
            let u = cycle[i];
            let v = cycle[(i + 1) % cycle.len()];
            if !self.adjacent(u, v) {
                return Err(Error::InvalidCycle(format!("{u} and {v} are not adjacent")));
            }
            if u ^ v == mask {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Plain-text edge list: a comment header, then one "u v" line per edge
    /// with u < v, sorted by u then v.
    pub fn export_edge_list(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "# kind={} n={}", self.kind.as_str(), self.n)?;
        let mut nbrs = Vec::with_capacity(self.degree() as usize);
        for u in 0..self.vertex_count() {
            nbrs.clear();
            self.for_each_neighbor(u, |v| {
                if v > u {
                    nbrs.push(v);
                }
            });
            nbrs.sort_unstable();
            for &v in &nbrs {
                writeln!(w, "{u} {v}")?;
            }
        }
        Ok(())
    }

    /// JSON object with the adjacency lists spelled out. Intended for small
    /// dimensions; the text grows as n * 2^n.
    pub fn export_json(&self, w: &mut impl Write) -> io::Result<()> {
        let adjacency: Vec<Vec<u32>> = (0..self.vertex_count())
            .map(|u| {
                let mut a = self.neighbor_labels(u);
                a.sort_unstable();
                a
            })
            .collect();
        let doc = serde_json::json!({
            "kind": self.kind.as_str(),
            "n": self.n,
            "vertex_count": self.vertex_count(),
            "degree": self.degree(),
            "adjacency": adjacency,
        });
        serde_json::to_writer(&mut *w, &doc)?;
        writeln!(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fq(n: u32) -> Topology {
        Topology::build(Kind::Folded, n).unwrap()
    }

    fn q(n: u32) -> Topology {
        Topology::build(Kind::Hypercube, n).unwrap()
    }

    #[test]
    fn build_validation() {
        assert_eq!(Topology::build(Kind::Hypercube, 0), Err(Error::InvalidDimension(0)));
        assert_eq!(
            Topology::build(Kind::Folded, 1),
            Err(Error::FoldedDimensionTooSmall)
        );
        assert!(Topology::build(Kind::Hypercube, 1).is_ok());
        assert_eq!(
            Topology::build(Kind::Folded, 25),
            Err(Error::VertexBudgetExceeded { n: 25, max_n: 24 })
        );
    }

    #[test]
    fn neighbor_sets_and_counts() {
        let t = fq(3);
        assert_eq!(t.neighbors(0b000).to_sorted_vec(), vec![0b001, 0b010, 0b100, 0b111]);
        let t4 = fq(4);
        assert_eq!(t4.neighbors(0).to_sorted_vec(), vec![1, 2, 4, 8, 15]);
        assert_eq!(t4.degree(), 5);
        assert_eq!(t4.edge_count(), 40);
        assert_eq!(q(3).edge_count(), 12);
    }

    #[test]
    fn adjacency_is_symmetric_irreflexive_regular() {
        for t in [q(4), fq(4), q(5), fq(5)] {
            for u in 0..t.vertex_count() {
                assert!(!t.adjacent(u, u));
                let nbrs = t.neighbor_labels(u);
                assert_eq!(nbrs.len() as u32, t.degree());
                for &v in &nbrs {
                    assert!(t.adjacent(u, v));
                    assert!(t.adjacent(v, u));
                }
            }
        }
    }

    #[test]
    fn distances_use_complement_shortcuts() {
        let t = fq(4);
        assert_eq!(t.distance(0b0000, 0b0011).unwrap(), 2);
        assert_eq!(t.distance(0b0000, 0b1111).unwrap(), 1);
        // Weight 3 out of 4: complement edge then one flip.
        assert_eq!(t.distance(0b0000, 0b0111).unwrap(), 2);
        assert_eq!(t.distance(5, 5).unwrap(), 0);
        assert!(t.distance(0, 16).is_err());
    }

    #[test]
    fn folded_distance_matches_weight_formula() {
        let t = fq(5);
        for v in 0..32u32 {
            let h = v.count_ones();
            let expected = h.min(5 + 1 - h);
            assert_eq!(t.distance(0, v).unwrap(), expected, "v={v:05b}");
        }
    }

    #[test]
    fn bipartite_iff_odd_dimension() {
        for n in 2..=8 {
            assert_eq!(fq(n).is_bipartite(), n % 2 == 1, "n={n}");
            assert!(q(n).is_bipartite(), "n={n}");
        }
    }

    #[test]
    fn odd_girth_on_even_dimensions() {
        assert_eq!(fq(2).odd_girth(), Some(3));
        assert_eq!(fq(4).odd_girth(), Some(5));
        assert_eq!(fq(6).odd_girth(), Some(7));
        assert_eq!(fq(5).odd_girth(), None);
        assert_eq!(q(6).odd_girth(), None);
    }

    #[test]
    fn shortest_odd_cycle_is_valid_and_uses_one_complement_edge() {
        for n in [2u32, 4, 6] {
            let t = fq(n);
            let cycle = t.shortest_odd_cycle().unwrap();
            assert_eq!(cycle.len() as u32, n + 1);
            assert_eq!(t.count_complementary_edges_on_cycle(&cycle).unwrap(), 1, "n={n}");
        }
        assert_eq!(fq(5).shortest_odd_cycle(), None);
    }

    #[test]
    fn complementary_edge_counting_validates_input() {
        let t = fq(4);
        // A plain 4-cycle inside the cube skeleton.
        assert_eq!(
            t.count_complementary_edges_on_cycle(&[0b0000, 0b0001, 0b0011, 0b0010]).unwrap(),
            0
        );
        // 0000-1111 and 1110-0001 are both complement edges.
        assert_eq!(
            t.count_complementary_edges_on_cycle(&[0b0000, 0b1111, 0b1110, 0b0001]).unwrap(),
            2
        );
        assert!(matches!(
            t.count_complementary_edges_on_cycle(&[0, 1]),
            Err(Error::InvalidCycle(_))
        ));
        assert!(matches!(
            t.count_complementary_edges_on_cycle(&[0, 1, 1]),
            Err(Error::InvalidCycle(_))
        ));
        assert!(matches!(
            t.count_complementary_edges_on_cycle(&[0, 1, 4]),
            Err(Error::InvalidCycle(_))
        ));
        assert!(matches!(
            q(4).count_complementary_edges_on_cycle(&[0, 1, 3, 2]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn edge_list_export_shape() {
        let t = fq(4);
        let mut buf = Vec::new();
        t.export_edge_list(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# kind=fq n=4");
        assert_eq!(lines.len() as u64, 1 + t.edge_count());
        // Ascending, u < v on every line.
        let mut prev = (0u32, 0u32);
        for line in &lines[1..] {
            let mut it = line.split_whitespace();
            let u: u32 = it.next().unwrap().parse().unwrap();
            let v: u32 = it.next().unwrap().parse().unwrap();
            assert!(u < v);
            assert!((u, v) > prev);
            prev = (u, v);
        }
    }

    #[test]
    fn json_export_shape() {
        let t = q(3);
        let mut buf = Vec::new();
        t.export_json(&mut buf).unwrap();
        let doc: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(doc["kind"], "q");
        assert_eq!(doc["n"], 3);
        assert_eq!(doc["vertex_count"], 8);
        assert_eq!(doc["adjacency"][0], serde_json::json!([1, 2, 4]));
    }
}

//! Vertex-set calculus: dense bitsets over the vertex universe, open and
//! closed neighborhoods, common and private neighbors, and the star
//! construction used as the extremal witness.

use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::topology::Topology;

/// Dense bitset over the labels [0, universe). The universal currency for
/// fault sets, neighborhood sets, and component vertex sets. Cardinality is
/// cached so hot search loops never re-count words.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexSet {
    universe: u32,
    words: SmallVec<[u64; 4]>,
    len: u32,
}

impl VertexSet {
    pub fn empty(universe: u32) -> Self {
        let nwords = (universe as usize).div_ceil(64);
        VertexSet {
            universe,
            words: smallvec::smallvec![0u64; nwords],
            len: 0,
        }
    }

    pub fn full(universe: u32) -> Self {
        let mut s = Self::empty(universe);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = (i * 64) as u32;
            *w = if universe - lo >= 64 {
                !0u64
            } else {
                (1u64 << (universe - lo)) - 1
            };
        }
        s.len = universe;
        s
    }

    pub fn from_labels(universe: u32, labels: &[u32]) -> Self {
        let mut s = Self::empty(universe);
        for &v in labels {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn universe(&self) -> u32 {
        self.universe
    }

    #[inline]
    pub fn len(&self) -> u32 {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, v: u32) -> bool {
        debug_assert!(v < self.universe);
        self.words[(v >> 6) as usize] & (1u64 << (v & 63)) != 0
    }

    /// Inserts v; returns true if it was not already present.
    #[inline]
    pub fn insert(&mut self, v: u32) -> bool {
        debug_assert!(v < self.universe);
        let w = &mut self.words[(v >> 6) as usize];
        let bit = 1u64 << (v & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        self.len += fresh as u32;
        fresh
    }

    /// Removes v; returns true if it was present.
    #[inline]
    pub fn remove(&mut self, v: u32) -> bool {
        debug_assert!(v < self.universe);
        let w = &mut self.words[(v >> 6) as usize];
        let bit = 1u64 << (v & 63);
        let present = *w & bit != 0;
        *w &= !bit;
        self.len -= present as u32;
        present
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= *b;
        }
        self.recount();
    }

    pub fn subtract(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !*b;
        }
        self.recount();
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= *b;
        }
        self.recount();
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// Lowest label present, if any.
    pub fn first(&self) -> Option<u32> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some((i as u32) * 64 + w.trailing_zeros());
            }
        }
        None
    }

    /// Ascending label iteration.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let base = (i as u32) * 64;
            std::iter::successors(
                if w == 0 { None } else { Some((w, base + w.trailing_zeros())) },
                move |&(rem, _)| {
                    let rem = rem & (rem - 1);
                    if rem == 0 {
                        None
                    } else {
                        Some((rem, base + rem.trailing_zeros()))
                    }
                },
            )
            .map(|(_, v)| v)
        })
    }

    pub fn to_sorted_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Lexicographic order on the ascending label sequences. Used to break
    /// ties among minimizing witnesses deterministically.
    pub fn lex_cmp(&self, other: &VertexSet) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => continue,
                    ord => return ord,
                },
            }
        }
    }

    fn recount(&mut self) {
        self.len = self.words.iter().map(|w| w.count_ones()).sum();
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len as usize))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

/// N(a): the union of the members' neighbor sets, minus the members. Empty
/// input yields empty output by design, so search code can stay total.
pub fn neighborhood(t: &Topology, a: &VertexSet) -> VertexSet {
    let mut nb = VertexSet::empty(t.vertex_count());
    for v in a.iter() {
        t.for_each_neighbor(v, |u| {
            nb.insert(u);
        });
    }
    nb.subtract(a);
    nb
}

/// C(a) = N(a) ∪ a.
pub fn closed_neighborhood(t: &Topology, a: &VertexSet) -> VertexSet {
    let mut c = neighborhood(t, a);
    c.union_with(a);
    c
}

/// N(u) ∩ N(v) for distinct vertices.
pub fn common_neighbors(t: &Topology, u: u32, v: u32) -> Result<VertexSet> {
    t.check_vertex(u)?;
    t.check_vertex(v)?;
    if u == v {
        return Err(Error::IdenticalVertices);
    }
    let mut nu = t.neighbors(u);
    let nv = t.neighbors(v);
    nu.intersect_with(&nv);
    Ok(nu)
}

/// PN(v) relative to the ambient set V': N(v) − N(V'−{v}) − V'.
pub fn private_neighbors(t: &Topology, v: u32, vprime: &VertexSet) -> Result<VertexSet> {
    t.check_vertex(v)?;
    if !vprime.contains(v) {
        return Err(Error::NotAMember(v));
    }
    let mut rest = vprime.clone();
    rest.remove(v);
    let mut pn = t.neighbors(v);
    pn.subtract(&neighborhood(t, &rest));
    pn.subtract(vprime);
    Ok(pn)
}

/// {v} plus the g−1 lowest-labeled neighbors of v: the witness set whose
/// neighborhood realizes the closed form on folded hypercubes.
pub fn star_set(t: &Topology, v: u32, g: u32) -> Result<VertexSet> {
    t.check_vertex(v)?;
    if g < 1 || g > t.degree() + 1 {
        return Err(Error::GOutOfRange {
            g: g as i64,
            reason: format!("star set needs 1 <= g <= degree+1 = {}", t.degree() + 1),
        });
    }
    let mut s = VertexSet::empty(t.vertex_count());
    s.insert(v);
    let mut nbrs = t.neighbor_labels(v);
    nbrs.sort_unstable();
    for &u in nbrs.iter().take((g - 1) as usize) {
        s.insert(u);
    }
    Ok(s)
}

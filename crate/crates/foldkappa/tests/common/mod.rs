//! Independent oracles for cross-checking the library. Everything here is
//! built straight from the bit-level graph definitions on plain integer
//! masks, deliberately sharing no code with the crate under test.
#![allow(dead_code)]

/// Adjacency masks from the definition: u ~ v iff their labels differ in
/// exactly one bit, plus (folded case) the full-complement matching.
pub fn adjacency(folded: bool, n: u32) -> Vec<u64> {
    assert!(n <= 6, "oracle adjacency is mask-based");
    let nv: u32 = 1 << n;
    (0..nv)
        .map(|v| {
            let mut m = 0u64;
            for b in 0..n {
                m |= 1u64 << (v ^ (1 << b));
            }
            if folded {
                m |= 1u64 << (v ^ (nv - 1));
            }
            m
        })
        .collect()
}

/// Component sizes of the graph restricted to `alive`, by plain BFS.
pub fn component_sizes(adj: &[u64], mut alive: u64) -> Vec<u32> {
    let mut sizes = Vec::new();
    while alive != 0 {
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
        sizes.push(comp.count_ones());
        alive &= !comp;
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Minimum open-neighborhood size over all g-subsets, by full enumeration.
/// Returns (value, lexicographically first witness labels).
pub fn naive_theta(adj: &[u64], g: u32) -> (u32, Vec<u32>) {
    let nv = adj.len() as u32;
    assert!(g >= 1 && g < nv);
    let mut best = u32::MAX;
    let mut witness = Vec::new();
    let mut idx: Vec<u32> = (0..g).collect();
    loop {
        let mut set_mask = 0u64;
        for &i in &idx {
            set_mask |= 1u64 << i;
        }
        let mut nb = 0u64;
        for &i in &idx {
            nb |= adj[i as usize];
        }
        nb &= !set_mask;
        let c = nb.count_ones();
        if c < best {
            best = c;
            witness = idx.clone();
        }
        // Advance the combination.
        let k = idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                return (best, witness);
            }
            i -= 1;
            if idx[i] < nv - (k - i) as u32 {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Minimum deletion-set size leaving at least `target` components, by
/// enumerating every subset of the vertex set. None if no subset works.
pub fn naive_ckappa(adj: &[u64], target: u32) -> Option<(u32, Vec<u32>)> {
    let nv = adj.len() as u32;
    assert!(nv <= 16, "all-subsets oracle is exponential");
    let full: u64 = (1u64 << nv) - 1;
    let mut best: Option<(u32, u64)> = None;
    for f in 0..=full {
        let size = f.count_ones();
        if let Some((b, _)) = best {
            if size >= b {
                continue;
            }
        }
        let sizes = component_sizes(adj, full & !f);
        if sizes.len() as u32 >= target {
            best = Some((size, f));
        }
    }
    best.map(|(size, f)| {
        let labels = (0..nv).filter(|&v| f >> v & 1 == 1).collect();
        (size, labels)
    })
}

/// Distance by BFS on the mask graph.
pub fn naive_distance(adj: &[u64], from: u32, to: u32) -> u32 {
    let mut seen = 1u64 << from;
    let mut frontier = seen;
    let mut d = 0;
    while seen >> to & 1 == 0 {
        let mut next = 0u64;
        let mut fr = frontier;
        while fr != 0 {
            let v = fr.trailing_zeros() as usize;
            fr &= fr - 1;
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
        d += 1;
        assert!(d as usize <= adj.len(), "unreachable vertex");
    }
    d
}

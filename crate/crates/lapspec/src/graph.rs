//! Immutable simple graphs on up to 64 vertices, packed one `u64` row per vertex.
//!
//! All composition operators place the vertices of the left operand first;
//! the Cartesian product orders pairs lexicographically by (left vertex,
//! right vertex). Fixed labelings keep serialization deterministic.

use crate::error::{Error, Result};

/// Hard cap so each adjacency row fits one machine word.
pub const MAX_ORDER: usize = 64;

/// Named graph families usable as building blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    /// k isolated vertices.
    Empty(usize),
    Complete(usize),
    Path(usize),
    Cycle(usize),
    /// Star on k vertices (one center, k-1 leaves).
    Star(usize),
    /// Friendship graph of k triangles sharing one vertex (2k+1 vertices).
    Friendship(usize),
    /// Complete multipartite graph with the given part sizes.
    Multipartite(Vec<usize>),
}

/// An undirected simple graph with dense vertex labels 0..order-1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Result<Graph> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderLimit(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            assert!(u < n && v < n && u != v, "edge ({u},{v}) out of range for order {n}");
            g.add_edge(u, v);
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u] >> v & 1 == 1
    }

    /// Neighbor set of `v` as a bitmask.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let mut rest = self.adj[u] >> (u + 1) << (u + 1);
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                out.push((u, v));
                rest &= rest - 1;
            }
        }
        out
    }

    /// Relabel by `perm`, where vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph { n: self.n, adj: vec![0; self.n] };
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        let mut seen: u64 = 1;
        let mut frontier: u64 = 1;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                next |= self.adj[v];
                f &= f - 1;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.n
    }

    pub fn complement(&self) -> Graph {
        let full = mask(self.n);
        let adj = (0..self.n)
            .map(|v| (full & !self.adj[v]) & !(1 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    pub fn disjoint_union(a: &Graph, b: &Graph) -> Result<Graph> {
        let n = a.n + b.n;
        if n > MAX_ORDER {
            return Err(Error::OrderLimit(n));
        }
        let mut adj = Vec::with_capacity(n);
        adj.extend_from_slice(&a.adj);
        adj.extend(b.adj.iter().map(|r| r << a.n));
        Ok(Graph { n, adj })
    }

    /// Union plus all cross edges; equals the complement of the union of complements.
    pub fn join(a: &Graph, b: &Graph) -> Result<Graph> {
        let mut g = Graph::disjoint_union(a, b)?;
        let a_mask = mask(a.n);
        let b_mask = mask(g.n) & !a_mask;
        for v in 0..a.n {
            g.adj[v] |= b_mask;
        }
        for v in a.n..g.n {
            g.adj[v] |= a_mask;
        }
        Ok(g)
    }

    pub fn cartesian_product(a: &Graph, b: &Graph) -> Result<Graph> {
        let n = a
            .n
            .checked_mul(b.n)
            .filter(|&n| n <= MAX_ORDER)
            .ok_or(Error::OrderLimit(a.n * b.n))?;
        let mut g = Graph { n, adj: vec![0; n] };
        // vertex (u, w) -> u * |b| + w
        for u in 0..a.n {
            for (w1, w2) in b.edges() {
                g.add_edge(u * b.n + w1, u * b.n + w2);
            }
        }
        for w in 0..b.n {
            for (u1, u2) in a.edges() {
                g.add_edge(u1 * b.n + w, u2 * b.n + w);
            }
        }
        Ok(g)
    }

    /// Delete one vertex; remaining vertices keep their relative order.
    pub fn delete_vertex(&self, v: usize) -> Graph {
        assert!(self.n > 1 && v < self.n);
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        let mut g = Graph { n: self.n - 1, adj: vec![0; self.n - 1] };
        for (i, &u) in keep.iter().enumerate() {
            for (j, &w) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, w) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn named(family: &Family) -> Result<Graph> {
        let bad = |family: &str, reason: &str| Error::InvalidFamily {
            family: family.to_string(),
            reason: reason.to_string(),
        };
        match family {
            Family::Empty(k) => {
                if *k < 1 {
                    return Err(bad("empty", "requires k >= 1"));
                }
                Graph::empty(*k)
            }
            Family::Complete(k) => {
                if *k < 1 {
                    return Err(bad("complete", "requires k >= 1"));
                }
                let mut g = Graph::empty(*k)?;
                for u in 0..*k {
                    for v in u + 1..*k {
                        g.add_edge(u, v);
                    }
                }
                Ok(g)
            }
            Family::Path(k) => {
                if *k < 1 {
                    return Err(bad("path", "requires k >= 1"));
                }
                let mut g = Graph::empty(*k)?;
                for v in 1..*k {
                    g.add_edge(v - 1, v);
                }
                Ok(g)
            }
            Family::Cycle(k) => {
                if *k < 3 {
                    return Err(bad("cycle", "requires k >= 3"));
                }
                let mut g = Graph::empty(*k)?;
                for v in 1..*k {
                    g.add_edge(v - 1, v);
                }
                g.add_edge(*k - 1, 0);
                Ok(g)
            }
            Family::Star(k) => {
                if *k < 1 {
                    return Err(bad("star", "requires k >= 1"));
                }
                let mut g = Graph::empty(*k)?;
                for v in 1..*k {
                    g.add_edge(0, v);
                }
                Ok(g)
            }
            Family::Friendship(k) => {
                if *k < 1 {
                    return Err(bad("friendship", "requires k >= 1"));
                }
                let mut g = Graph::empty(2 * k + 1)?;
                for t in 0..*k {
                    let (u, v) = (2 * t + 1, 2 * t + 2);
                    g.add_edge(0, u);
                    g.add_edge(0, v);
                    g.add_edge(u, v);
                }
                Ok(g)
            }
            Family::Multipartite(parts) => {
                if parts.is_empty() || parts.iter().any(|&p| p < 1) {
                    return Err(bad("complete_multipartite", "requires nonempty parts of size >= 1"));
                }
                let n: usize = parts.iter().sum();
                let mut g = Graph::empty(n)?;
                let mut starts = Vec::with_capacity(parts.len() + 1);
                let mut acc = 0;
                for p in parts {
                    starts.push(acc);
                    acc += p;
                }
                starts.push(acc);
                for a in 0..parts.len() {
                    for b in a + 1..parts.len() {
                        for u in starts[a]..starts[a + 1] {
                            for v in starts[b]..starts[b + 1] {
                                g.add_edge(u, v);
                            }
                        }
                    }
                }
                Ok(g)
            }
        }
    }

    /// Standard header-less graph6 encoding.
    pub fn to_graph6(&self) -> String {
        let mut out = Vec::new();
        if self.n <= 62 {
            out.push(63 + self.n as u8);
        } else {
            // 63 <= n <= 64: 18-bit size field
            out.push(126);
            let n = self.n as u32;
            out.push(63 + ((n >> 12) & 63) as u8);
            out.push(63 + ((n >> 6) & 63) as u8);
            out.push(63 + (n & 63) as u8);
        }
        let mut bits: u8 = 0;
        let mut nbits = 0;
        for j in 1..self.n {
            for i in 0..j {
                bits = (bits << 1) | u8::from(self.has_edge(i, j));
                nbits += 1;
                if nbits == 6 {
                    out.push(63 + bits);
                    bits = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            out.push(63 + (bits << (6 - nbits)));
        }
        String::from_utf8(out).unwrap()
    }

    pub fn from_graph6(s: &str) -> Result<Graph> {
        let bytes = s.as_bytes();
        let err = |offset: usize, reason: &str| Error::Graph6 {
            offset,
            reason: reason.to_string(),
        };
        if bytes.is_empty() {
            return Err(err(0, "empty record"));
        }
        let val = |offset: usize| -> Result<u64> {
            let b = bytes[offset];
            if !(63..=126).contains(&b) {
                return Err(err(offset, "byte outside graph6 range 63..=126"));
            }
            Ok((b - 63) as u64)
        };
        let (n, mut offset) = if bytes[0] == 126 {
            if bytes.len() < 4 {
                return Err(err(bytes.len(), "truncated extended size field"));
            }
            if bytes[1] == 126 {
                return Err(err(1, "orders above 64 are not supported"));
            }
            let n = (val(1)? << 12 | val(2)? << 6 | val(3)?) as usize;
            (n, 4)
        } else {
            (val(0)? as usize, 1)
        };
        if n == 0 || n > MAX_ORDER {
            return Err(err(0, "order outside supported range 1..=64"));
        }
        let nbits = n * (n - 1) / 2;
        let nbytes = nbits.div_ceil(6);
        if bytes.len() != offset + nbytes {
            return Err(err(bytes.len().min(offset + nbytes), "record has the wrong length"));
        }
        let mut g = Graph::empty(n)?;
        let mut cur: u64 = 0;
        let mut have = 0usize;
        let mut it = {
            let mut pairs = Vec::with_capacity(nbits);
            for j in 1..n {
                for i in 0..j {
                    pairs.push((i, j));
                }
            }
            pairs.into_iter()
        };
        for _ in 0..nbytes {
            cur = (cur << 6) | val(offset)?;
            have += 6;
            offset += 1;
            while have > 0 {
                let Some((i, j)) = it.next() else {
                    // padding bits must be zero
                    if cur & ((1 << have) - 1) != 0 {
                        return Err(err(offset - 1, "nonzero padding bits"));
                    }
                    have = 0;
                    break;
                };
                if cur >> (have - 1) & 1 == 1 {
                    g.add_edge(i, j);
                }
                have -= 1;
            }
        }
        Ok(g)
    }
}

pub(crate) fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(f: Family) -> Graph {
        Graph::named(&f).unwrap()
    }

    #[test]
    fn star_4_is_k13() {
        let g = named(Family::Star(4));
        assert_eq!(g.order(), 4);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree(0), 3);
        let k13 = named(Family::Multipartite(vec![3, 1]));
        assert_eq!(
            crate::canon::canonical_form(&g),
            crate::canon::canonical_form(&k13)
        );
    }

    #[test]
    fn degenerate_families_agree() {
        let k1 = named(Family::Complete(1));
        assert_eq!(k1.order(), 1);
        assert_eq!(k1.edge_count(), 0);
        assert_eq!(k1, named(Family::Path(1)));
        assert_eq!(k1, named(Family::Empty(1)));
    }

    #[test]
    fn friendship_2_is_butterfly() {
        let g = named(Family::Friendship(2));
        assert_eq!(g.order(), 5);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn family_domain_errors() {
        assert!(Graph::named(&Family::Cycle(2)).is_err());
        assert!(Graph::named(&Family::Complete(0)).is_err());
        assert!(Graph::named(&Family::Multipartite(vec![])).is_err());
    }

    #[test]
    fn union_basics() {
        let g = Graph::disjoint_union(&named(Family::Complete(1)), &named(Family::Complete(2))).unwrap();
        assert_eq!((g.order(), g.edge_count()), (3, 1));
        assert!(!g.is_connected());
        let g = Graph::disjoint_union(&named(Family::Complete(2)), &named(Family::Complete(2))).unwrap();
        assert_eq!((g.order(), g.edge_count()), (4, 2));
    }

    #[test]
    fn union_k1_k3_is_complement_of_star() {
        let g = Graph::disjoint_union(&named(Family::Complete(1)), &named(Family::Complete(3))).unwrap();
        let s4 = named(Family::Star(4)).complement();
        assert_eq!(
            crate::canon::canonical_form(&g),
            crate::canon::canonical_form(&s4)
        );
    }

    #[test]
    fn join_examples() {
        let star = Graph::join(&named(Family::Complete(1)), &named(Family::Empty(3))).unwrap();
        assert_eq!(
            crate::canon::canonical_form(&star),
            crate::canon::canonical_form(&named(Family::Star(4)))
        );
        let diamond = Graph::join(&named(Family::Complete(2)), &named(Family::Empty(2))).unwrap();
        assert_eq!(diamond.edge_count(), 5);
        let k2 = Graph::join(&named(Family::Complete(1)), &named(Family::Complete(1))).unwrap();
        assert_eq!(k2, named(Family::Complete(2)));
        assert!(Graph::join(&named(Family::Empty(40)), &named(Family::Empty(40))).is_err());
    }

    #[test]
    fn complement_examples() {
        let c4 = named(Family::Cycle(4));
        let two_k2 = Graph::disjoint_union(&named(Family::Complete(2)), &named(Family::Complete(2))).unwrap();
        assert_eq!(
            crate::canon::canonical_form(&c4.complement()),
            crate::canon::canonical_form(&two_k2)
        );
        let k5 = named(Family::Complete(5));
        assert_eq!(k5.complement().edge_count(), 0);
        assert_eq!(c4.complement().complement(), c4);
    }

    #[test]
    fn cartesian_examples() {
        let ladder = Graph::cartesian_product(&named(Family::Path(2)), &named(Family::Path(3))).unwrap();
        assert_eq!((ladder.order(), ladder.edge_count()), (6, 7));
        let c5 = named(Family::Cycle(5));
        let same = Graph::cartesian_product(&named(Family::Complete(1)), &c5).unwrap();
        assert_eq!(same, c5);
        let sq = Graph::cartesian_product(&named(Family::Complete(2)), &named(Family::Complete(2))).unwrap();
        assert_eq!(
            crate::canon::canonical_form(&sq),
            crate::canon::canonical_form(&named(Family::Cycle(4)))
        );
    }

    #[test]
    fn connectivity() {
        assert!(named(Family::Cycle(5)).is_connected());
        let two_k2 = Graph::disjoint_union(&named(Family::Complete(2)), &named(Family::Complete(2))).unwrap();
        assert!(!two_k2.is_connected());
        let j = Graph::join(&two_k2, &named(Family::Empty(2))).unwrap();
        assert!(j.is_connected());
    }

    #[test]
    fn graph6_k3() {
        // upper triangle of K_3 is 1,1,1; padded to 111000 this is 'w'
        assert_eq!(named(Family::Complete(3)).to_graph6(), "Bw");
        assert_eq!(Graph::from_graph6("Bw").unwrap(), named(Family::Complete(3)));
    }

    #[test]
    fn graph6_rejects_malformed() {
        assert!(Graph::from_graph6("").is_err());
        assert!(Graph::from_graph6("B").is_err());
        assert!(Graph::from_graph6("Bw ").is_err());
        match Graph::from_graph6("B\x07") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("expected graph6 error, got {other:?}"),
        }
    }

    #[test]
    fn graph6_order_64_round_trip() {
        let g = named(Family::Cycle(64));
        let s = g.to_graph6();
        assert!(s.starts_with('~'));
        assert_eq!(Graph::from_graph6(&s).unwrap(), g);
    }
}

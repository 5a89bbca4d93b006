//! Exact canonical forms by equitable refinement plus backtracking.
//!
//! Two graphs share a `CanonicalForm` iff they are isomorphic. The search
//! individualizes vertices from the first smallest non-singleton cell and
//! keeps the lexicographically minimal adjacency code; automorphisms found
//! at equal-code leaves prune sibling branches.

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub order: usize,
    /// Upper-triangle adjacency bits of the canonical labeling, packed MSB-first.
    pub edge_code: Vec<u8>,
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let lab = canonical_labeling(g);
    let relabeled = apply(g, &lab);
    CanonicalForm {
        order: g.order(),
        edge_code: pack_upper_triangle(&relabeled),
    }
}

/// The graph relabeled into its canonical form.
pub fn canonical_graph(g: &Graph) -> Graph {
    apply(g, &canonical_labeling(g))
}

/// Canonical labeling as position -> vertex.
fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.order();
    if n == 1 {
        return vec![0];
    }
    let mut search = Search {
        g,
        n,
        best_code: None,
        best_lab: Vec::new(),
        autos: Vec::new(),
    };
    let cells = vec![(0..n).collect::<Vec<usize>>()];
    search.node(cells, &mut Vec::new());
    search.best_lab
}

fn apply(g: &Graph, lab: &[usize]) -> Graph {
    // lab is position -> vertex; relabel wants vertex -> position
    let mut perm = vec![0; lab.len()];
    for (pos, &v) in lab.iter().enumerate() {
        perm[v] = pos;
    }
    g.relabel(&perm)
}

fn pack_upper_triangle(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let mut out = Vec::with_capacity((n * (n - 1) / 2).div_ceil(8));
    let mut bits: u8 = 0;
    let mut nbits = 0;
    for i in 0..n {
        for j in i + 1..n {
            bits = (bits << 1) | u8::from(g.has_edge(i, j));
            nbits += 1;
            if nbits == 8 {
                out.push(bits);
                bits = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push(bits << (8 - nbits));
    }
    out
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    best_code: Option<Vec<u64>>,
    best_lab: Vec<usize>,
    /// Automorphism generators discovered at equal-code leaves, as vertex -> vertex maps.
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn node(&mut self, mut cells: Vec<Vec<usize>>, fixed: &mut Vec<usize>) {
        refine(self.g, &mut cells);
        let target = match cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(_, c)| c.len())
        {
            None => {
                let lab: Vec<usize> = cells.iter().map(|c| c[0]).collect();
                self.leaf(lab);
                return;
            }
            Some((i, _)) => i,
        };
        let candidates = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for v in candidates {
            if !tried.is_empty() && self.pruned_by_orbit(v, &tried, fixed) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            for (i, c) in cells.iter().enumerate() {
                if i == target {
                    child.push(vec![v]);
                    child.push(c.iter().copied().filter(|&u| u != v).collect());
                } else {
                    child.push(c.clone());
                }
            }
            fixed.push(v);
            self.node(child, fixed);
            fixed.pop();
            tried.push(v);
        }
    }

    fn leaf(&mut self, lab: Vec<usize>) {
        let code = self.code_of(&lab);
        match &self.best_code {
            None => {
                self.best_code = Some(code);
                self.best_lab = lab;
            }
            Some(best) => match code.cmp(best) {
                std::cmp::Ordering::Less => {
                    self.best_code = Some(code);
                    self.best_lab = lab;
                }
                std::cmp::Ordering::Equal => {
                    // equal codes reveal an automorphism best_lab[pos] -> lab[pos]
                    let mut auto = vec![0; self.n];
                    for pos in 0..self.n {
                        auto[self.best_lab[pos]] = lab[pos];
                    }
                    if auto.iter().enumerate().any(|(v, &w)| v != w) {
                        self.autos.push(auto);
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    fn code_of(&self, lab: &[usize]) -> Vec<u64> {
        let mut pos = vec![0usize; self.n];
        for (p, &v) in lab.iter().enumerate() {
            pos[v] = p;
        }
        let mut code = vec![0u64; self.n];
        for (p, &v) in lab.iter().enumerate() {
            let mut row = 0u64;
            let mut nb = self.g.neighbors(v);
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                row |= 1 << pos[w];
                nb &= nb - 1;
            }
            code[p] = row;
        }
        code
    }

    /// True if `v` lies in the orbit of an already-tried vertex under the
    /// subgroup of found automorphisms fixing every individualized vertex.
    fn pruned_by_orbit(&self, v: usize, tried: &[usize], fixed: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for auto in &self.autos {
            if fixed.iter().any(|&f| auto[f] != f) {
                continue;
            }
            any = true;
            for u in 0..self.n {
                let (a, b) = (find(&mut parent, u), find(&mut parent, auto[u]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&u| find(&mut parent, u) == rv)
    }
}

/// Split every cell by neighbor counts against all cells until stable.
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    loop {
        let masks: Vec<u64> = cells
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let sig = masks
                        .iter()
                        .map(|&m| (g.neighbors(v) & m).count_ones())
                        .collect();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    if i - start != cell.len() {
                        changed = true;
                    }
                    start = i;
                }
            }
        }
        *cells = next;
        if !changed {
            break;
        }
    }
}

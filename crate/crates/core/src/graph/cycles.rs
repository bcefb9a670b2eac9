use std::collections::BTreeSet;

use super::{ColoredRegularGraph, Edge};

/// A cycle: distinct vertices `vertices[0..r]` and distinct edges, edge `i`
/// of color `colors[i]` joining `vertices[i]` and `vertices[(i+1) % r]`.
///
/// Stored in canonical form: the least vertex first, then the direction
/// whose `(vertices, colors)` is lexicographically smaller.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    vertices: Vec<usize>,
    colors: Vec<usize>,
}

impl Cycle {
    /// Canonicalize a closed walk given as vertices and edge colors.
    pub fn new(vertices: Vec<usize>, colors: Vec<usize>) -> Self {
        assert_eq!(vertices.len(), colors.len());
        let r = vertices.len();
        let start = (0..r).min_by_key(|&i| vertices[i]).unwrap_or(0);
        let fwd_v: Vec<usize> = (0..r).map(|i| vertices[(start + i) % r]).collect();
        let fwd_c: Vec<usize> = (0..r).map(|i| colors[(start + i) % r]).collect();
        // walk backwards: vertex start, start-1, ...; edge into start-1 is colors[start-1]
        let back_v: Vec<usize> = (0..r).map(|i| vertices[(start + r - i) % r]).collect();
        let back_c: Vec<usize> = (0..r).map(|i| colors[(start + 2 * r - i - 1) % r]).collect();
        if (&back_v, &back_c) < (&fwd_v, &fwd_c) {
            Self { vertices: back_v, colors: back_c }
        } else {
            Self { vertices: fwd_v, colors: fwd_c }
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let r = self.len();
        (0..r).map(move |i| Edge::new(self.colors[i], self.vertices[i], self.vertices[(i + 1) % r]))
    }

    /// Whether every edge of the cycle is still present in `g`.
    pub fn present_in(&self, g: &ColoredRegularGraph) -> bool {
        self.edges().all(|e| g.has_edge(e))
    }
}

/// All cycles of length `2..=c`, each once, sorted by canonical form.
///
/// Each cycle is found from its least vertex by a depth-bounded walk that
/// only visits larger vertices and never repeats a vertex.
pub fn enumerate_small_cycles(g: &ColoredRegularGraph, c: usize) -> Vec<Cycle> {
    let mut found = BTreeSet::new();
    if c < 2 {
        return Vec::new();
    }
    let mut path = Vec::with_capacity(c);
    let mut colors = Vec::with_capacity(c);
    for s in 0..g.n() {
        path.clear();
        colors.clear();
        path.push(s);
        walk(g, c, &mut path, &mut colors, &mut found);
    }
    found.into_iter().collect()
}

fn walk(
    g: &ColoredRegularGraph,
    c: usize,
    path: &mut Vec<usize>,
    colors: &mut Vec<usize>,
    found: &mut BTreeSet<Cycle>,
) {
    let s = path[0];
    let u = *path.last().unwrap();
    let len = colors.len();
    for k in 0..g.d() {
        let w = g.mate(k, u);
        if w == s {
            // closing edge must differ from the first edge when len == 1
            if len >= 1 && !(len == 1 && colors[0] == k) {
                let mut cs = colors.clone();
                cs.push(k);
                found.insert(Cycle::new(path.clone(), cs));
            }
        } else if w > s && len + 1 < c && !path.contains(&w) {
            path.push(w);
            colors.push(k);
            walk(g, c, path, colors, found);
            path.pop();
            colors.pop();
        }
    }
}

/// Whether `e` lies on a cycle of length `<= c`: its endpoints are joined
/// by a path of at most `c - 1` edges avoiding `e`.
pub fn edge_on_small_cycle(g: &ColoredRegularGraph, e: Edge, c: usize) -> bool {
    if c < 2 {
        return false;
    }
    g.bfs(e.a, c - 1, Some(e))[e.b] < c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    /// Every sequence of distinct vertices starting at its minimum, with
    /// every color assignment, kept when each consecutive pair is an edge of
    /// the assigned color and the edges are distinct.
    fn brute_force(g: &ColoredRegularGraph, c: usize) -> BTreeSet<Cycle> {
        let mut out = BTreeSet::new();
        let n = g.n();
        fn seqs(n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            for v in 0..n {
                if !cur.contains(&v) && (cur.is_empty() || v > cur[0]) {
                    cur.push(v);
                    seqs(n, len, cur, out);
                    cur.pop();
                }
            }
        }
        for r in 2..=c {
            let mut all = Vec::new();
            seqs(n, r, &mut Vec::new(), &mut all);
            for vs in all {
                let total = g.d().pow(r as u32);
                for code in 0..total {
                    let cols: Vec<usize> = (0..r).map(|i| code / g.d().pow(i as u32) % g.d()).collect();
                    let edges: Vec<Edge> = (0..r)
                        .map(|i| Edge::new(cols[i], vs[i], vs[(i + 1) % r]))
                        .collect();
                    let distinct = edges.iter().collect::<BTreeSet<_>>().len() == r;
                    if distinct && edges.iter().all(|&e| g.has_edge(e)) {
                        out.insert(Cycle::new(vs.clone(), cols));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn double_edge_is_one_two_cycle() {
        let g = ColoredRegularGraph::from_matchings(2, &[vec![(0, 1)], vec![(0, 1)]]).unwrap();
        let cs = enumerate_small_cycles(&g, 2);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].vertices(), &[0, 1]);
        assert_eq!(cs[0].colors(), &[0, 1]);
    }

    #[test]
    fn hand_built_four_cycle() {
        // 0-1-2-3-0 alternating colors, plus 4-5 in both colors (a 2-cycle)
        let g = ColoredRegularGraph::from_matchings(
            6,
            &[vec![(0, 1), (2, 3), (4, 5)], vec![(1, 2), (0, 3), (4, 5)]],
        )
        .unwrap();
        let cs = enumerate_small_cycles(&g, 4);
        let four: Vec<_> = cs.iter().filter(|c| c.len() == 4).collect();
        assert_eq!(four.len(), 1);
        assert_eq!(four[0].vertices(), &[0, 1, 2, 3]);
        assert_eq!(cs.iter().collect::<BTreeSet<_>>(), brute_force(&g, 4).iter().collect());
        // below length 4 only the 2-cycle remains
        assert_eq!(enumerate_small_cycles(&g, 3).len(), 1);
    }

    #[test]
    fn canonical_form_ignores_rotation_and_direction() {
        let a = Cycle::new(vec![2, 0, 1], vec![5, 6, 7]);
        let b = Cycle::new(vec![1, 0, 2], vec![6, 5, 7]);
        assert_eq!(a, b);
        assert_eq!(a.vertices()[0], 0);
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        for seed in 0..40 {
            for (n, d) in [(6, 2), (6, 3), (8, 2), (4, 3)] {
                let g = generate(n, d, seed).unwrap();
                for c in 2..=4 {
                    let fast: BTreeSet<_> = enumerate_small_cycles(&g, c).into_iter().collect();
                    assert_eq!(fast, brute_force(&g, c), "n={n} d={d} seed={seed} c={c}");
                }
            }
        }
    }

    #[test]
    fn edge_on_cycle_agrees_with_enumeration() {
        for seed in 0..20 {
            let g = generate(10, 3, seed).unwrap();
            let cs = enumerate_small_cycles(&g, 4);
            for e in g.edges() {
                let on = cs.iter().any(|c| c.edges().any(|x| x == e));
                assert_eq!(edge_on_small_cycle(&g, e, 4), on);
            }
        }
    }
}

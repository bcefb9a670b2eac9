//! Orders induced on a colored graph by a vertex ordering.
//!
//! Given an ordering `<` of the vertices and a color `k`, `x ⋖_k y` holds
//! when the `k`-neighbor of `x` is `<`-below the `k`-neighbor of `y`. On a
//! window of `N` consecutive ranks, `<` and `⋖_k` form a bi-order; the
//! functions here compute it, look for a target among all windows and
//! colors, and plant a target deliberately.

mod montecarlo;
mod pipeline;

pub use montecarlo::{montecarlo, MonteCarloReport};
pub use pipeline::{end_to_end, interpret_via_phi, EndToEnd};

use rayon::prelude::*;

use crate::biorder::BiOrder;
use crate::error::{Error, Result};
use crate::graph::ColoredRegularGraph;
use crate::rng::SplitMix64;

const PLANT_STREAM: u64 = 0x0050_4C41_4E54;

/// A linear order on the vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrdering {
    rank_of: Vec<usize>,
    vertex_at: Vec<usize>,
}

impl VertexOrdering {
    /// From the vertices listed in increasing rank.
    pub fn from_sequence(vertex_at: Vec<usize>) -> Result<Self> {
        let n = vertex_at.len();
        let mut rank_of = vec![usize::MAX; n];
        for (r, &v) in vertex_at.iter().enumerate() {
            if v >= n || rank_of[v] != usize::MAX {
                return Err(Error::invalid("ordering is not a permutation of the vertices"));
            }
            rank_of[v] = r;
        }
        Ok(Self { rank_of, vertex_at })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_sequence((0..n).collect()).unwrap()
    }

    /// Uniformly random ordering.
    pub fn random(n: usize, rng: &mut SplitMix64) -> Self {
        Self::from_sequence(rng.permutation(n)).unwrap()
    }

    pub fn len(&self) -> usize {
        self.rank_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank_of.is_empty()
    }

    #[inline]
    pub fn rank(&self, v: usize) -> usize {
        self.rank_of[v]
    }

    #[inline]
    pub fn vertex_at(&self, r: usize) -> usize {
        self.vertex_at[r]
    }

    /// Order file: one line of vertex ids in increasing rank.
    pub fn to_text(&self) -> String {
        let mut s = self
            .vertex_at
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let seq = text
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::parse(1, format!("bad vertex `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_sequence(seq).map_err(|e| Error::parse(1, e.to_string()))
    }
}

/// A window `[a, a+N-1]` (by rank) and color whose induced bi-order is the
/// target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeWitness {
    pub a: usize,
    pub color: usize,
    pub induced: BiOrder,
}

/// The `k`-neighbor of `x`.
pub fn neighbor(g: &ColoredRegularGraph, x: usize, k: usize) -> usize {
    g.mate(k, x)
}

/// `x ⋖_k y`.
#[inline]
pub fn less_k(g: &ColoredRegularGraph, order: &VertexOrdering, k: usize, x: usize, y: usize) -> bool {
    order.rank(g.mate(k, x)) < order.rank(g.mate(k, y))
}

/// `Φ(x, y, u, v)`: `{u,v}` is an edge and, for its color `k`, `x ⋖_k y`.
/// When `{u,v}` carries several colors the formula holds if some carried
/// color satisfies it.
pub fn eval_phi(
    g: &ColoredRegularGraph,
    order: &VertexOrdering,
    x: usize,
    y: usize,
    u: usize,
    v: usize,
) -> bool {
    g.colors_between(u, v).any(|k| less_k(g, order, k, x, y))
}

/// `([a, a+N-1]; <, ⋖_k)` in canonical form.
pub fn induced_biorder(
    g: &ColoredRegularGraph,
    order: &VertexOrdering,
    a: usize,
    size: usize,
    k: usize,
) -> Result<BiOrder> {
    if a + size > g.n() || order.len() != g.n() || k >= g.d() {
        return Err(Error::invalid(format!(
            "window [{a}, {a}+{size}) or color {k} out of range"
        )));
    }
    let mut idx: Vec<usize> = (0..size).collect();
    idx.sort_unstable_by_key(|&i| order.rank(g.mate(k, order.vertex_at(a + i))));
    BiOrder::from_order2(idx)
}

/// Whether the window at `a` with color `k` realizes `target`: the
/// neighbor ranks must increase along `target`'s `<2` chain.
fn window_matches(
    g: &ColoredRegularGraph,
    order: &VertexOrdering,
    target: &BiOrder,
    a: usize,
    k: usize,
) -> bool {
    let key = |j: usize| order.rank(g.mate(k, order.vertex_at(a + target.at2(j))));
    (1..target.len()).all(|j| key(j - 1) < key(j))
}

/// Every `(a, k)` whose window realizes `target`, sorted by `(a, k)`.
pub fn scan(g: &ColoredRegularGraph, order: &VertexOrdering, target: &BiOrder) -> Vec<ProbeWitness> {
    let size = target.len();
    if size > g.n() || order.len() != g.n() {
        return Vec::new();
    }
    let last = g.n() - size;
    let mut hits: Vec<(usize, usize)> = (0..g.d())
        .into_par_iter()
        .flat_map_iter(|k| {
            (0..=last)
                .filter(move |&a| window_matches(g, order, target, a, k))
                .map(move |a| (a, k))
        })
        .collect();
    hits.sort_unstable();
    hits.into_iter()
        .map(|(a, color)| ProbeWitness {
            a,
            color,
            induced: target.clone(),
        })
        .collect()
}

/// An ordering built to contain `target` at a known window.
#[derive(Clone, Debug)]
pub struct Planted {
    pub order: VertexOrdering,
    pub a: usize,
    pub color: usize,
}

/// Build an ordering in which the window at `a` with some color `k`
/// realizes `target`.
///
/// Picks `N` vertices whose `k`-neighbors are distinct from each other and
/// from the picked set, gives them the consecutive ranks `a..a+N`, gives
/// their neighbors the next `N` ranks in the `<2` pattern of `target`, and
/// fills the remaining ranks in a seed-derived order.
pub fn plant(g: &ColoredRegularGraph, target: &BiOrder, seed: u64) -> Result<Planted> {
    let n = g.n();
    let size = target.len();
    let mut rng = SplitMix64::stream(seed, PLANT_STREAM);
    for k in rng.permutation(g.d()) {
        let mut used = vec![false; n];
        let mut chosen = Vec::with_capacity(size);
        for v in rng.permutation(n) {
            if chosen.len() == size {
                break;
            }
            let w = g.mate(k, v);
            if !used[v] && !used[w] {
                used[v] = true;
                used[w] = true;
                chosen.push(v);
            }
        }
        if chosen.len() < size {
            continue;
        }
        let a = rng.below((n - 2 * size + 1) as u64) as usize;
        let mut vertex_at = vec![usize::MAX; n];
        for (i, &v) in chosen.iter().enumerate() {
            vertex_at[a + i] = v;
        }
        for j in 0..size {
            vertex_at[a + size + j] = g.mate(k, chosen[target.at2(j)]);
        }
        let mut rest: Vec<usize> = (0..n).filter(|&v| !used[v]).collect();
        rng.shuffle(&mut rest);
        let mut rest = rest.into_iter();
        for slot in vertex_at.iter_mut().filter(|s| **s == usize::MAX) {
            *slot = rest.next().unwrap();
        }
        return Ok(Planted {
            order: VertexOrdering::from_sequence(vertex_at)?,
            a,
            color: k,
        });
    }
    Err(Error::PlantImpossible(format!(
        "no color admits {size} vertices with disjoint neighbors among {n}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn neighbor_basics() {
        let g = generate(2, 1, 0).unwrap();
        assert_eq!(neighbor(&g, 0, 0), 1);
        let g = generate(50, 3, 4).unwrap();
        for k in 0..3 {
            let mut seen = std::collections::HashSet::new();
            for x in 0..50 {
                let y = neighbor(&g, x, k);
                assert_ne!(x, y);
                assert_eq!(neighbor(&g, y, k), x);
                assert!(seen.insert(y));
            }
        }
    }

    fn square() -> ColoredRegularGraph {
        // color 0: {0,1},{2,3}; color 1: {0,2},{1,3}
        ColoredRegularGraph::from_matchings(4, &[vec![(0, 1), (2, 3)], vec![(0, 2), (1, 3)]]).unwrap()
    }

    #[test]
    fn less_k_hand_example() {
        let g = square();
        // ranks: vertex 2 -> 0, 0 -> 1, 3 -> 2, 1 -> 3
        let order = VertexOrdering::from_sequence(vec![2, 0, 3, 1]).unwrap();
        // color 0: nb(0)=1 (rank 3), nb(2)=3 (rank 2), so 2 ⋖_0 0
        assert!(less_k(&g, &order, 0, 2, 0));
        assert!(!less_k(&g, &order, 0, 0, 2));
        // color 1: nb(0)=2 (rank 0), nb(1)=3 (rank 2), so 0 ⋖_1 1
        assert!(less_k(&g, &order, 1, 0, 1));
        for x in 0..4 {
            assert!(!less_k(&g, &order, 0, x, x));
            for y in 0..4 {
                if x != y {
                    assert_ne!(less_k(&g, &order, 1, x, y), less_k(&g, &order, 1, y, x));
                }
            }
        }
    }

    #[test]
    fn phi_examples() {
        let g = square();
        let order = VertexOrdering::from_sequence(vec![2, 0, 3, 1]).unwrap();
        assert!(!eval_phi(&g, &order, 2, 0, 0, 3)); // not an edge
        assert_eq!(eval_phi(&g, &order, 2, 0, 0, 1), less_k(&g, &order, 0, 2, 0));
        assert_eq!(eval_phi(&g, &order, 0, 1, 2, 0), less_k(&g, &order, 1, 0, 1));
        assert!(!eval_phi(&g, &order, 1, 1, 0, 1));
    }

    #[test]
    fn phi_on_parallel_edges_is_disjunctive() {
        let g = ColoredRegularGraph::from_matchings(4, &[vec![(0, 1), (2, 3)], vec![(0, 1), (2, 3)], vec![(0, 2), (1, 3)]]).unwrap();
        let order = VertexOrdering::identity(4);
        // colors 0 and 1 agree here, color 2 is a separate edge
        for x in 0..4 {
            for y in 0..4 {
                let any = less_k(&g, &order, 0, x, y) || less_k(&g, &order, 1, x, y);
                assert_eq!(eval_phi(&g, &order, x, y, 0, 1), any);
            }
        }
    }

    #[test]
    fn induced_small_windows() {
        let g = square();
        let order = VertexOrdering::identity(4);
        assert_eq!(induced_biorder(&g, &order, 2, 1, 0).unwrap(), BiOrder::identity(1));
        // window {0,1}, color 1: nb(0)=2, nb(1)=3 -> same order
        assert_eq!(induced_biorder(&g, &order, 0, 2, 1).unwrap(), BiOrder::identity(2));
        // color 0: nb(0)=1, nb(1)=0 -> reversed
        assert_eq!(induced_biorder(&g, &order, 0, 2, 0).unwrap().order2(), &[1, 0]);
        assert!(induced_biorder(&g, &order, 3, 2, 0).is_err());
    }

    #[test]
    fn size_one_target_hits_everything() {
        let g = generate(20, 3, 1).unwrap();
        let order = VertexOrdering::random(20, &mut SplitMix64::new(3));
        assert_eq!(scan(&g, &order, &BiOrder::identity(1)).len(), 20 * 3);
    }

    #[test]
    fn plant_then_scan() {
        let g = generate(1024, 4, 8).unwrap();
        let target = crate::arith::encode(2).unwrap().biorder;
        let p = plant(&g, &target, 5).unwrap();
        let hits = scan(&g, &p.order, &target);
        assert!(hits.iter().any(|w| w.a == p.a && w.color == p.color));
        assert_eq!(induced_biorder(&g, &p.order, p.a, 40, p.color).unwrap(), target);
    }

    #[test]
    fn plant_edge_cases() {
        let g = generate(2, 1, 0).unwrap();
        assert!(plant(&g, &BiOrder::identity(1), 0).is_ok());
        assert!(matches!(
            plant(&g, &BiOrder::identity(2), 0),
            Err(Error::PlantImpossible(_))
        ));
    }

    #[test]
    fn order_file_round_trip() {
        let o = VertexOrdering::random(30, &mut SplitMix64::new(1));
        assert_eq!(VertexOrdering::parse(&o.to_text()).unwrap(), o);
        assert!(VertexOrdering::parse("0 0").is_err());
    }
}

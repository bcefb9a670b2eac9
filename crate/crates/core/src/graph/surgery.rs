use super::cycles::{edge_on_small_cycle, enumerate_small_cycles};
use super::{ColoredRegularGraph, Edge};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Stream index for the partner shuffles, kept apart from the color streams.
const SURGERY_STREAM: u64 = 0x5347_5259;

/// One edge swap of color `color`: `{a,b}` and `{a2,b2}` were replaced by
/// `{a,a2}` and `{b,b2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Swap {
    pub color: usize,
    pub a: usize,
    pub b: usize,
    pub a2: usize,
    pub b2: usize,
}

impl Swap {
    pub fn removed(&self) -> [Edge; 2] {
        [
            Edge::new(self.color, self.a, self.b),
            Edge::new(self.color, self.a2, self.b2),
        ]
    }

    pub fn added(&self) -> [Edge; 2] {
        [
            Edge::new(self.color, self.a, self.a2),
            Edge::new(self.color, self.b, self.b2),
        ]
    }

    /// Each swap changes two edges of the graph.
    pub const CHANGED_EDGES: usize = 2;
}

/// Remove every cycle of length `<= c` by edge swaps.
///
/// Small cycles are taken in canonical order. For a cycle still present,
/// its edges `{a,b}` (color `k`) are tried in turn against partner edges
/// `{a',b'}` of color `k` in a seed-derived order, both orientations. A
/// partner is admissible when `dist(a, a') >= c + 2` and `{a',b'}` lies on
/// no small cycle; after swapping, the two new edges are checked to lie on
/// no small cycle, and the swap is undone otherwise. No swap creates a
/// small cycle, so at most one swap is spent per initial cycle.
pub fn surgery(
    g: &ColoredRegularGraph,
    c: usize,
    seed: u64,
) -> Result<(ColoredRegularGraph, Vec<Swap>)> {
    if c < 2 {
        return Err(Error::invalid("cycle bound c must be at least 2"));
    }
    let mut g = g.clone();
    let mut rng = SplitMix64::stream(seed, SURGERY_STREAM);
    let mut log = Vec::new();

    for cycle in enumerate_small_cycles(&g, c) {
        if !cycle.present_in(&g) {
            continue;
        }
        let swap = cycle
            .edges()
            .find_map(|e| try_edge(&mut g, e, c, &mut rng))
            .ok_or_else(|| {
                let e = cycle.edges().next().unwrap();
                Error::SurgeryStuck {
                    color: e.color,
                    a: e.a,
                    b: e.b,
                }
            })?;
        log.push(swap);
    }

    debug_assert!(enumerate_small_cycles(&g, c).is_empty());
    g.meta.c = c;
    g.meta.surgered = true;
    Ok((g, log))
}

fn try_edge(g: &mut ColoredRegularGraph, e: Edge, c: usize, rng: &mut SplitMix64) -> Option<Swap> {
    let k = e.color;
    let (a, b) = (e.a, e.b);
    let near = g.bfs(a, c + 1, None);
    let mut partners = g.pairs(k);
    rng.shuffle(&mut partners);
    for (x, y) in partners {
        if x == a || x == b || y == a || y == b {
            continue;
        }
        if edge_on_small_cycle(g, Edge::new(k, x, y), c) {
            continue;
        }
        for (a2, b2) in [(x, y), (y, x)] {
            // dist(a, a2) >= c + 2
            if near[a2] <= c + 1 {
                continue;
            }
            g.swap_edges(k, a, b, a2, b2);
            let swap = Swap { color: k, a, b, a2, b2 };
            if swap.added().iter().all(|&ne| !edge_on_small_cycle(g, ne, c)) {
                return Some(swap);
            }
            // undo: {a,a2},{b,b2} back to {a,b},{a2,b2}
            g.swap_edges(k, a, a2, b, b2);
        }
    }
    None
}

/// Changelog text: header then one `color a b a2 b2` line per swap.
pub fn changelog_text(log: &[Swap]) -> String {
    let mut s = format!("changelog v1 swaps={} changed_edges={}\n", log.len(), log.len() * Swap::CHANGED_EDGES);
    for w in log {
        s.push_str(&format!("{} {} {} {} {}\n", w.color, w.a, w.b, w.a2, w.b2));
    }
    s
}

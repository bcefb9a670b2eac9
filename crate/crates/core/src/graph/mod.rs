//! Colored regular multigraphs.
//!
//! A graph on `n` vertices with `d` colors is a list of `d` perfect
//! matchings: every vertex lies on exactly one edge of each color. Two
//! colors may pick the same pair, in which case the pair carries two
//! parallel edges and forms a 2-cycle.

mod cycles;
mod surgery;

pub use cycles::{edge_on_small_cycle, enumerate_small_cycles, Cycle};
pub use surgery::{changelog_text, surgery, Swap};

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// An edge of one color, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub color: usize,
    pub a: usize,
    pub b: usize,
}

impl Edge {
    pub fn new(color: usize, x: usize, y: usize) -> Self {
        Self {
            color,
            a: x.min(y),
            b: x.max(y),
        }
    }
}

/// Provenance recorded in the graph file header.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GraphMeta {
    /// Cycle-length bound the graph was surgered for (0 if never surgered).
    pub c: usize,
    pub seed: u64,
    pub surgered: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredRegularGraph {
    n: usize,
    /// `mates[k][x]` is the `k`-neighbor of `x`.
    mates: Vec<Vec<usize>>,
    pub meta: GraphMeta,
}

/// `d = round(n^(1-alpha))`, at least 1, for `1 - 1/(3c) < alpha < 1`.
pub fn param_d(n: usize, c: usize, alpha: f64) -> Result<usize> {
    if n < 2 || c == 0 {
        return Err(Error::invalid("need n >= 2 and c >= 1"));
    }
    let lower = 1.0 - 1.0 / (3.0 * c as f64);
    if !(alpha > lower && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "alpha must lie strictly between {lower} and 1"
        )));
    }
    Ok(((n as f64).powf(1.0 - alpha).round() as usize).max(1))
}

/// The multigraph `G(σ)`: color `k` pairs `σ_k(2l)` with `σ_k(2l+1)`, where
/// `σ_k` is the Fisher–Yates permutation drawn from stream `(seed, k)`.
pub fn generate(n: usize, d: usize, seed: u64) -> Result<ColoredRegularGraph> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::invalid(format!("n must be even and >= 2, got {n}")));
    }
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    let mates = (0..d)
        .map(|k| {
            let sigma = SplitMix64::stream(seed, k as u64).permutation(n);
            let mut m = vec![0; n];
            for pair in sigma.chunks_exact(2) {
                m[pair[0]] = pair[1];
                m[pair[1]] = pair[0];
            }
            m
        })
        .collect();
    Ok(ColoredRegularGraph {
        n,
        mates,
        meta: GraphMeta {
            c: 0,
            seed,
            surgered: false,
        },
    })
}

impl ColoredRegularGraph {
    /// Build from explicit pair lists, one per color.
    pub fn from_matchings(n: usize, matchings: &[Vec<(usize, usize)>]) -> Result<Self> {
        if !n.is_multiple_of(2) {
            return Err(Error::invalid("vertex count must be even"));
        }
        if matchings.is_empty() {
            return Err(Error::invalid("need at least one color"));
        }
        let mut mates = Vec::with_capacity(matchings.len());
        for (k, pairs) in matchings.iter().enumerate() {
            let mut m = vec![usize::MAX; n];
            for &(a, b) in pairs {
                if a >= n || b >= n || a == b || m[a] != usize::MAX || m[b] != usize::MAX {
                    return Err(Error::invalid(format!(
                        "color {k}: pair ({a}, {b}) breaks the perfect matching"
                    )));
                }
                m[a] = b;
                m[b] = a;
            }
            if m.contains(&usize::MAX) {
                return Err(Error::invalid(format!("color {k} does not cover every vertex")));
            }
            mates.push(m);
        }
        Ok(Self {
            n,
            mates,
            meta: GraphMeta::default(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.mates.len()
    }

    /// The `k`-neighbor of `x`.
    #[inline]
    pub fn mate(&self, k: usize, x: usize) -> usize {
        self.mates[k][x]
    }

    /// Pairs of color `k`, each as `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self, k: usize) -> Vec<(usize, usize)> {
        (0..self.n)
            .filter_map(|x| {
                let y = self.mates[k][x];
                (x < y).then_some((x, y))
            })
            .collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.d()).flat_map(move |k| {
            self.pairs(k)
                .into_iter()
                .map(move |(a, b)| Edge { color: k, a, b })
        })
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        e.color < self.d() && e.a < self.n && self.mates[e.color][e.a] == e.b
    }

    /// Colors of the edges joining `u` and `v`.
    pub fn colors_between(&self, u: usize, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.d()).filter(move |&k| u != v && self.mates[k][u] == v)
    }

    /// Check that every color is a fixed-point-free involution.
    pub fn check_matchings(&self) -> Result<()> {
        for (k, m) in self.mates.iter().enumerate() {
            if m.len() != self.n {
                return Err(Error::invalid(format!("color {k} has wrong length")));
            }
            for x in 0..self.n {
                let y = m[x];
                if y >= self.n || y == x || m[y] != x {
                    return Err(Error::invalid(format!(
                        "color {k} is not a perfect matching at vertex {x}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Replace `{a,b}` and `{a2,b2}` of color `k` by `{a,a2}` and `{b,b2}`.
    pub(crate) fn swap_edges(&mut self, k: usize, a: usize, b: usize, a2: usize, b2: usize) {
        let m = &mut self.mates[k];
        debug_assert!(m[a] == b && m[a2] == b2);
        m[a] = a2;
        m[a2] = a;
        m[b] = b2;
        m[b2] = b;
    }

    /// Breadth-first distances from `src`, stopping after `limit` levels.
    /// Unreached vertices get `usize::MAX`. `skip` removes one edge.
    pub(crate) fn bfs(&self, src: usize, limit: usize, skip: Option<Edge>) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(x) = queue.pop_front() {
            if dist[x] >= limit {
                continue;
            }
            for k in 0..self.d() {
                let y = self.mates[k][x];
                if skip == Some(Edge::new(k, x, y)) {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Shortest-path length over edges of all colors; `None` if unreachable.
    pub fn distance(&self, a: usize, b: usize) -> Option<usize> {
        let d = self.bfs(a, usize::MAX, None)[b];
        (d != usize::MAX).then_some(d)
    }

    /// Graph file text.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let m = &self.meta;
        writeln!(s, "cgraph v1").unwrap();
        writeln!(
            s,
            "n={} d={} c={} seed={} surgered={}",
            self.n,
            self.d(),
            m.c,
            m.seed,
            u8::from(m.surgered)
        )
        .unwrap();
        for k in 0..self.d() {
            writeln!(s, "color {k}").unwrap();
            for (a, b) in self.pairs(k) {
                writeln!(s, "{a} {b}").unwrap();
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, magic) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
        if magic.trim() != "cgraph v1" {
            return Err(Error::parse(1, "expected `cgraph v1`"));
        }
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(2, "missing header"))?;
        let mut fields = std::collections::HashMap::new();
        for tok in header.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::parse(ln, format!("bad field `{tok}`")))?;
            fields.insert(k, v);
        }
        let field = |name: &str| -> Result<u64> {
            fields
                .get(name)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::parse(ln, format!("missing or bad `{name}`")))
        };
        let n = field("n")? as usize;
        let d = field("d")? as usize;
        let meta = GraphMeta {
            c: field("c")? as usize,
            seed: field("seed")?,
            surgered: match field("surgered")? {
                0 => false,
                1 => true,
                _ => return Err(Error::parse(ln, "surgered must be 0 or 1")),
            },
        };
        let mut matchings: Vec<Vec<(usize, usize)>> = Vec::with_capacity(d);
        for (ln, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(k) = line.strip_prefix("color ") {
                let k: usize = k.parse().map_err(|_| Error::parse(ln, "bad color index"))?;
                if k != matchings.len() {
                    return Err(Error::parse(ln, "colors out of sequence"));
                }
                matchings.push(Vec::with_capacity(n / 2));
                continue;
            }
            let cur = matchings
                .last_mut()
                .ok_or_else(|| Error::parse(ln, "pair before first `color` line"))?;
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(a)), Some(Ok(b)), None) if a < b => cur.push((a, b)),
                _ => return Err(Error::parse(ln, format!("bad pair `{line}`"))),
            }
        }
        if matchings.len() != d {
            return Err(Error::parse(0, format!("expected {d} colors, found {}", matchings.len())));
        }
        let mut g = Self::from_matchings(n, &matchings).map_err(|e| Error::parse(0, e.to_string()))?;
        g.meta = meta;
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn param_d_examples() {
        assert_eq!(param_d(4096, 3, 0.9).unwrap(), 2);
        assert!(param_d(4096, 3, 1.0).is_err());
        assert!(param_d(4096, 3, 0.8).is_err());
        assert_eq!(param_d(2, 3, 0.95).unwrap(), 1);
    }

    #[test]
    fn two_vertices_one_matching() {
        for seed in 0..5 {
            let g = generate(2, 1, seed).unwrap();
            assert_eq!(g.pairs(0), vec![(0, 1)]);
        }
    }

    #[test]
    fn golden_n4_d2_seed1() {
        let g = generate(4, 2, 1).unwrap();
        let golden = include_str!("../../tests/data/n4_d2_seed1.cgraph");
        assert_eq!(g.to_text(), golden);
    }

    #[test]
    fn regular_degree() {
        let g = generate(6, 3, 7).unwrap();
        g.check_matchings().unwrap();
        for x in 0..6 {
            let degree: usize = (0..6).map(|y| g.colors_between(x, y).count()).sum();
            assert_eq!(degree, 3);
        }
    }

    #[test]
    fn odd_n_rejected() {
        assert!(generate(5, 2, 0).is_err());
        assert!(generate(4, 0, 0).is_err());
    }

    #[test]
    fn distances() {
        let g = ColoredRegularGraph::from_matchings(4, &[vec![(0, 1), (2, 3)]]).unwrap();
        assert_eq!(g.distance(2, 2), Some(0));
        assert_eq!(g.distance(0, 1), Some(1));
        assert_eq!(g.distance(0, 2), None);
        let path = ColoredRegularGraph::from_matchings(
            4,
            &[vec![(0, 1), (2, 3)], vec![(1, 2), (0, 3)]],
        )
        .unwrap();
        assert_eq!(path.distance(0, 2), Some(2));
    }

    #[test]
    fn from_matchings_validates() {
        assert!(ColoredRegularGraph::from_matchings(4, &[vec![(0, 1), (1, 2)]]).is_err());
        assert!(ColoredRegularGraph::from_matchings(4, &[vec![(0, 1)]]).is_err());
        assert!(ColoredRegularGraph::from_matchings(4, &[vec![(0, 0), (2, 3)]]).is_err());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(ColoredRegularGraph::parse("cgraph v2\n").is_err());
        assert!(ColoredRegularGraph::parse("cgraph v1\nn=2 d=1 c=0 seed=0 surgered=0\ncolor 0\n1 0\n").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn generated_graphs_are_regular_and_round_trip(half in 1usize..40, d in 1usize..5, seed in any::<u64>()) {
            let g = generate(2 * half, d, seed).unwrap();
            g.check_matchings().unwrap();
            prop_assert_eq!(&generate(2 * half, d, seed).unwrap(), &g);
            prop_assert_eq!(ColoredRegularGraph::parse(&g.to_text()).unwrap(), g);
        }
    }
}

//! The disjoint union of per-class graphs, class `n` carrying a planted
//! copy of `P_n`.

use crate::error::{Error, Result};
use crate::graph::enumerate_small_cycles;
use crate::probe::{end_to_end, EndToEnd};
use crate::report::Report;
use crate::rng::SplitMix64;

/// Degree used for every class.
pub const CLASS_DEGREE: usize = 3;

#[derive(Clone, Debug)]
pub struct M0Class {
    pub index: usize,
    /// First vertex of this class in the union.
    pub offset: usize,
    pub run: EndToEnd,
}

impl M0Class {
    pub fn vertices(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.run.graph.n()
    }

    /// Girth greater than the class index.
    pub fn girth_ok(&self) -> bool {
        enumerate_small_cycles(&self.run.graph, self.index).is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct M0Family {
    pub seed: u64,
    pub classes: Vec<M0Class>,
}

impl M0Family {
    pub fn total_vertices(&self) -> usize {
        self.classes.last().map_or(0, |c| c.offset + c.run.graph.n())
    }

    /// Class index of a vertex of the union.
    pub fn class_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().find(|c| c.vertices().contains(&v)).map(|c| c.index)
    }

    /// The equivalence `E`: same class.
    pub fn equivalent(&self, x: usize, y: usize) -> bool {
        self.class_of(x).is_some_and(|c| Some(c) == self.class_of(y))
    }

    /// Edges of the union as `(color, a, b)` in global vertex numbers.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.classes.iter().flat_map(|c| {
            c.run.graph.edges().map(move |e| (e.color, e.a + c.offset, e.b + c.offset))
        })
    }

    pub fn verified(&self) -> bool {
        self.classes.iter().all(|c| c.run.verified() && c.girth_ok())
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.set("seed", self.seed)
            .set("classes", self.classes.len())
            .set("vertices", self.total_vertices())
            .set("verified", u8::from(self.verified()));
        let rows = self
            .classes
            .iter()
            .map(|c| {
                vec![
                    c.index.to_string(),
                    c.offset.to_string(),
                    c.run.graph.n().to_string(),
                    c.run.swaps.to_string(),
                    u8::from(c.girth_ok()).to_string(),
                    u8::from(c.run.verified()).to_string(),
                ]
            })
            .collect();
        r.table(&["class", "offset", "n", "swaps", "girth_ok", "verified"], rows);
        r
    }
}

/// Vertex count for class `n`: the least even count with room to plant
/// `P_n`.
pub fn class_size(n: usize) -> usize {
    40 * n * n
}

pub fn assemble_m0(max_class: usize, seed: u64) -> Result<M0Family> {
    if max_class < 3 {
        return Err(Error::invalid("max class must be at least 3"));
    }
    let mut classes = Vec::new();
    let mut offset = 0;
    for index in 3..=max_class {
        let class_seed = SplitMix64::stream(seed, index as u64).next_u64();
        let run = end_to_end(index, class_size(index), CLASS_DEGREE, index, class_seed)?;
        let n = run.graph.n();
        classes.push(M0Class { index, offset, run });
        offset += n;
    }
    Ok(M0Family { seed, classes })
}

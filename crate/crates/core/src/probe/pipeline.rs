use super::{eval_phi, plant, scan, VertexOrdering};
use crate::arith::{compare_tables, decode, encode, ArithTables, Discrepancy};
use crate::biorder::BiOrder;
use crate::error::{Error, Result};
use crate::graph::{enumerate_small_cycles, generate, surgery, ColoredRegularGraph};
use crate::report::Report;

/// `([a, a+N-1]; <, Φ(x, y, u, v))` as a bi-order.
pub fn interpret_via_phi(
    g: &ColoredRegularGraph,
    order: &VertexOrdering,
    a: usize,
    size: usize,
    (u, v): (usize, usize),
) -> Result<BiOrder> {
    if a + size > g.n() {
        return Err(Error::invalid("window out of range"));
    }
    let x = |i: usize| order.vertex_at(a + i);
    BiOrder::from_relation(size, |i, j| eval_phi(g, order, x(i), x(j), u, v))
}

/// Everything the graph-to-arithmetic pipeline produced.
#[derive(Clone, Debug)]
pub struct EndToEnd {
    pub k: usize,
    pub graph: ColoredRegularGraph,
    pub small_cycles_before: usize,
    pub swaps: usize,
    pub order: VertexOrdering,
    pub param_ranks: [usize; 3],
    /// Recovered window and color.
    pub witness: Option<(usize, usize)>,
    pub edge: Option<(usize, usize)>,
    pub interpreted: Option<BiOrder>,
    pub tables: Option<ArithTables>,
    pub discrepancy: Option<Discrepancy>,
}

impl EndToEnd {
    pub fn verified(&self) -> bool {
        self.discrepancy.as_ref().is_some_and(Discrepancy::is_empty)
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.set("k", self.k)
            .set("n", self.graph.n())
            .set("d", self.graph.d())
            .set("c", self.graph.meta.c)
            .set("seed", self.graph.meta.seed)
            .set("small_cycles_before", self.small_cycles_before)
            .set("swaps", self.swaps);
        match self.witness {
            Some((a, k)) => r.set("witness", format!("{a} {k}")),
            None => r.set("witness", "none"),
        };
        if let Some((u, v)) = self.edge {
            r.set("edge", format!("{u} {v}"));
        }
        if let Some(t) = &self.tables {
            r.set("domain", t.domain)
                .set("add_entries", t.add.len())
                .set("mul_entries", t.mul.len());
        }
        r.set("verified", u8::from(self.verified()));
        if let Some(d) = &self.discrepancy {
            let rows = d.lines().into_iter().map(|l| vec![l]).collect::<Vec<_>>();
            if !rows.is_empty() {
                r.table(&["discrepancy"], rows);
            }
        }
        r
    }
}

/// Generate, surger, plant `P_k`, recover it by scanning, and decode the
/// arithmetic through `Φ` with an edge of the recovered color.
pub fn end_to_end(k: usize, n: usize, d: usize, c: usize, seed: u64) -> Result<EndToEnd> {
    if n < 40 * k * k {
        return Err(Error::invalid(format!("n must be at least 4·10k² = {}", 40 * k * k)));
    }
    let carrier = encode(k)?;
    let g0 = generate(n, d, seed)?;
    let small_cycles_before = enumerate_small_cycles(&g0, c).len();
    let (graph, log) = surgery(&g0, c, seed)?;
    let planted = plant(&graph, &carrier.biorder, seed)?;
    let order = planted.order;

    let mut out = EndToEnd {
        k,
        small_cycles_before,
        swaps: log.len(),
        param_ranks: carrier.param_ranks,
        witness: None,
        edge: None,
        interpreted: None,
        tables: None,
        discrepancy: None,
        order,
        graph,
    };
    let Some(w) = scan(&out.graph, &out.order, &carrier.biorder).into_iter().next() else {
        return Ok(out);
    };
    let edge = out.graph.pairs(w.color)[0];
    let interpreted = interpret_via_phi(&out.graph, &out.order, w.a, carrier.n(), edge)?;
    let tables = decode(&interpreted, carrier.param_ranks)?;
    out.discrepancy = Some(compare_tables(k, &tables));
    out.witness = Some((w.a, w.color));
    out.edge = Some(edge);
    out.interpreted = Some(interpreted);
    out.tables = Some(tables);
    Ok(out)
}

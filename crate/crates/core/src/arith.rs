//! Truncated arithmetic `({0..k-1}, +, ×)` coded into a bi-order, and the
//! fixed formulas that read it back.
//!
//! The carrier `P_k` has `10k²` points named by their `<1`-rank. The points
//! `b_i = 7k(i+1)` are the representatives of the values `i < k` and form
//! the `<2`-initial segment. A point `l` *codes* `r` when
//! `b_{r-1} < l < b_r` (with `b_{-1} = -1`); points above `b_{k-1}` are
//! delimiters. Each triple `(r, s, t)` of the graph of `+` (then of `×`) is
//! written as a `<2`-interval `c_r <2 c_s <2 c_t <2 d` of three code points
//! and a delimiter.
//!
//! Decoding uses three parameters `a1 <2 a2 <2 a3` (the last representative,
//! the last addition delimiter, the last multiplication delimiter) and
//! nothing else; in particular the same formulas serve every `k`:
//!
//! ```text
//! Dom(x)        := x <=2 a1
//! Repr(c) = y   := Dom(y) & c <1 y & forall z (Dom(z) & c <1 z -> y <=1 z)
//! S2(u, v)      := v is the immediate <2-successor of u
//! Block[lo,hi](u1..u4) := S2(u1,u2) & S2(u2,u3) & S2(u3,u4)
//!                         & lo <2 u1 & u4 <=2 hi & a1 <1 u4
//! phi(x,y,z)    := exists u1..u4 Block[a1,a2] & Repr(u1)=x & Repr(u2)=y & Repr(u3)=z
//! psi(x,y,z)    := the same over Block[a2,a3]
//! ```
//!
//! Values are read as `<2`-ranks of domain elements.

use std::collections::BTreeSet;

use crate::biorder::BiOrder;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Add,
    Mul,
}

impl Op {
    pub fn apply(self, r: usize, s: usize) -> usize {
        match self {
            Op::Add => r + s,
            Op::Mul => r * s,
        }
    }
}

/// One coded triple: `points` are `<1`-ranks `(c_r, c_s, c_t, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub triple: (usize, usize, usize),
    pub op: Op,
    pub points: [usize; 4],
}

/// The structure `P_k` with its construction record.
#[derive(Clone, Debug)]
pub struct ArithCarrier {
    pub k: usize,
    pub biorder: BiOrder,
    /// `<1`-ranks of the representatives `b_0..b_{k-1}`.
    pub reprs: Vec<usize>,
    /// `<2`-ranks of `a1`, `a2`, `a3`.
    pub param_ranks: [usize; 3],
    pub blocks: Vec<Block>,
}

pub type Triple = (usize, usize, usize);

/// The graph of `op` truncated to `{0..k-1}`, enumerated by brute force.
pub fn graph_of(op: Op, k: usize) -> BTreeSet<Triple> {
    let mut out = BTreeSet::new();
    for r in 0..k {
        for s in 0..k {
            let t = op.apply(r, s);
            if t < k {
                out.insert((r, s, t));
            }
        }
    }
    out
}

/// `b_i = 7k(i+1)`.
fn representative(k: usize, i: usize) -> usize {
    7 * k * (i + 1)
}

pub fn encode(k: usize) -> Result<ArithCarrier> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let n = 10 * k * k;
    let reprs: Vec<usize> = (0..k).map(|i| representative(k, i)).collect();
    let a1 = reprs[k - 1];

    // next unused code point for each value, and the exclusive upper limit
    let mut next_code: Vec<usize> = (0..k).map(|r| if r == 0 { 0 } else { reprs[r - 1] + 1 }).collect();
    let mut next_delim = a1 + 1;
    let mut used = vec![false; n];
    for &b in &reprs {
        used[b] = true;
    }

    let mut order2 = reprs.clone();
    let mut blocks = Vec::new();
    let mut take_code = |r: usize, used: &mut Vec<bool>| -> Result<usize> {
        let c = next_code[r];
        if c >= reprs[r] {
            return Err(Error::Exhausted(format!("code points for value {r}")));
        }
        next_code[r] += 1;
        used[c] = true;
        Ok(c)
    };

    let mut last_delim = [0usize; 2];
    for (slot, op) in [Op::Add, Op::Mul].into_iter().enumerate() {
        for (r, s, t) in graph_of(op, k) {
            let cr = take_code(r, &mut used)?;
            let cs = take_code(s, &mut used)?;
            let ct = take_code(t, &mut used)?;
            if next_delim >= n {
                return Err(Error::Exhausted("delimiters".into()));
            }
            let d = next_delim;
            next_delim += 1;
            used[d] = true;
            let points = [cr, cs, ct, d];
            order2.extend_from_slice(&points);
            last_delim[slot] = order2.len() - 1;
            blocks.push(Block {
                triple: (r, s, t),
                op,
                points,
            });
        }
    }
    order2.extend((0..n).filter(|&x| !used[x]));

    let biorder = BiOrder::from_order2(order2)?;
    Ok(ArithCarrier {
        k,
        biorder,
        reprs,
        param_ranks: [k - 1, last_delim[0], last_delim[1]],
        blocks,
    })
}

impl ArithCarrier {
    pub fn n(&self) -> usize {
        self.biorder.len()
    }

    pub fn code_of(&self, l: usize) -> Result<Option<usize>> {
        code_of(l, self.k)
    }

    /// Carrier file: the bi-order lines, `params ...` and `k=<k>`.
    pub fn to_text(&self) -> String {
        let [p1, p2, p3] = self.param_ranks;
        format!(
            "{}params {p1} {p2} {p3}\nk={}\n",
            self.biorder.to_text(),
            self.k
        )
    }
}

/// The value coded by `<1`-rank `l` in `P_k`, if any.
pub fn code_of(l: usize, k: usize) -> Result<Option<usize>> {
    let n = 10 * k * k;
    if l >= n {
        return Err(Error::invalid(format!("rank {l} outside 0..{n}")));
    }
    // b_{r-1} < l < b_r
    Ok((0..k).find(|&r| {
        let lo = if r == 0 { -1 } else { representative(k, r - 1) as i64 };
        lo < l as i64 && l < representative(k, r)
    }))
}

/// A parsed carrier file. `k` is informational; decoding ignores it.
#[derive(Clone, Debug, PartialEq)]
pub struct CarrierFile {
    pub biorder: BiOrder,
    pub param_ranks: [usize; 3],
    pub k: Option<usize>,
}

impl CarrierFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let biorder = BiOrder::parse_lines(&mut lines)?;
        let params_line = lines
            .next()
            .ok_or_else(|| Error::parse(3, "missing `params` line"))?;
        let ranks = params_line
            .strip_prefix("params ")
            .ok_or_else(|| Error::parse(3, "expected `params <a1> <a2> <a3>`"))?
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::parse(3, format!("bad rank `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        let param_ranks: [usize; 3] = ranks
            .try_into()
            .map_err(|_| Error::parse(3, "expected three ranks"))?;
        let k = match lines.next() {
            Some(l) => Some(
                l.strip_prefix("k=")
                    .and_then(|v| v.trim().parse().ok())
                    .ok_or_else(|| Error::parse(4, "expected `k=<k>`"))?,
            ),
            None => None,
        };
        Ok(Self {
            biorder,
            param_ranks,
            k,
        })
    }
}

/// The two partial operation tables read off a bi-order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArithTables {
    pub domain: usize,
    pub add: BTreeSet<Triple>,
    pub mul: BTreeSet<Triple>,
}

/// Evaluates the fixed decoding formulas over one bi-order.
struct Interpretation<'a> {
    b: &'a BiOrder,
    a1: usize,
    a2: usize,
    a3: usize,
    /// Domain elements sorted by `<1`, for `Repr`.
    domain_by_order1: Vec<usize>,
}

impl<'a> Interpretation<'a> {
    fn new(b: &'a BiOrder, [r1, r2, r3]: [usize; 3]) -> Result<Self> {
        if !(r1 < r2 && r2 < r3 && r3 < b.len()) {
            return Err(Error::invalid(format!(
                "parameter ranks ({r1}, {r2}, {r3}) must increase strictly within 0..{}",
                b.len()
            )));
        }
        let (a1, a2, a3) = (b.at2(r1), b.at2(r2), b.at2(r3));
        let mut this = Self {
            b,
            a1,
            a2,
            a3,
            domain_by_order1: Vec::new(),
        };
        let mut dom: Vec<usize> = (0..b.len()).filter(|&x| this.dom(x)).collect();
        dom.sort_unstable_by(|&x, &y| if b.less1(x, y) { std::cmp::Ordering::Less } else { std::cmp::Ordering::Greater });
        this.domain_by_order1 = dom;
        Ok(this)
    }

    fn dom(&self, x: usize) -> bool {
        !self.b.less2(self.a1, x)
    }

    /// `Repr(c)`: the `<1`-least domain element `<1`-above `c`.
    fn repr(&self, c: usize) -> Option<usize> {
        let i = self
            .domain_by_order1
            .partition_point(|&y| !self.b.less1(c, y));
        self.domain_by_order1.get(i).copied()
    }

    fn succ2(&self, u: usize) -> Option<usize> {
        let j = self.b.rank2(u) + 1;
        (j < self.b.len()).then(|| self.b.at2(j))
    }

    /// Quadruples satisfying `Block[lo,hi]`.
    fn blocks(&self, lo: usize, hi: usize) -> impl Iterator<Item = [usize; 4]> + '_ {
        (0..self.b.len()).filter_map(move |u1| {
            let u2 = self.succ2(u1)?;
            let u3 = self.succ2(u2)?;
            let u4 = self.succ2(u3)?;
            let ok = self.b.less2(lo, u1) && !self.b.less2(hi, u4) && self.b.less1(self.a1, u4);
            ok.then_some([u1, u2, u3, u4])
        })
    }

    /// Triples `(x, y, z)` of values satisfying the formula over `Block[lo,hi]`.
    fn relation(&self, lo: usize, hi: usize) -> BTreeSet<Triple> {
        self.blocks(lo, hi)
            .filter_map(|[u1, u2, u3, _]| {
                let x = self.repr(u1)?;
                let y = self.repr(u2)?;
                let z = self.repr(u3)?;
                Some((self.b.rank2(x), self.b.rank2(y), self.b.rank2(z)))
            })
            .collect()
    }
}

pub fn decode(b: &BiOrder, param_ranks: [usize; 3]) -> Result<ArithTables> {
    let it = Interpretation::new(b, param_ranks)?;
    Ok(ArithTables {
        domain: it.domain_by_order1.len(),
        add: it.relation(it.a1, it.a2),
        mul: it.relation(it.a2, it.a3),
    })
}

/// Differences between decoded tables and the truncated graphs of `+`, `×`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Discrepancy {
    pub domain: Option<(usize, usize)>,
    pub missing_add: Vec<Triple>,
    pub extra_add: Vec<Triple>,
    pub missing_mul: Vec<Triple>,
    pub extra_mul: Vec<Triple>,
}

impl Discrepancy {
    pub fn is_empty(&self) -> bool {
        *self == Self::default()
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some((want, got)) = self.domain {
            out.push(format!("domain\texpected {want}\tfound {got}"));
        }
        let groups = [
            ("missing_add", &self.missing_add),
            ("extra_add", &self.extra_add),
            ("missing_mul", &self.missing_mul),
            ("extra_mul", &self.extra_mul),
        ];
        for (name, v) in groups {
            for (r, s, t) in v {
                out.push(format!("{name}\t{r} {s} {t}"));
            }
        }
        out
    }
}

/// Compare `tables` against `({0..k-1}, +, ×)`.
pub fn compare_tables(k: usize, tables: &ArithTables) -> Discrepancy {
    let diff = |want: &BTreeSet<Triple>, got: &BTreeSet<Triple>| {
        (
            want.difference(got).copied().collect::<Vec<_>>(),
            got.difference(want).copied().collect::<Vec<_>>(),
        )
    };
    let (missing_add, extra_add) = diff(&graph_of(Op::Add, k), &tables.add);
    let (missing_mul, extra_mul) = diff(&graph_of(Op::Mul, k), &tables.mul);
    Discrepancy {
        domain: (tables.domain != k).then_some((k, tables.domain)),
        missing_add,
        extra_add,
        missing_mul,
        extra_mul,
    }
}

pub fn verify_carrier(carrier: &ArithCarrier) -> Result<Discrepancy> {
    let tables = decode(&carrier.biorder, carrier.param_ranks)?;
    Ok(compare_tables(carrier.k, &tables))
}

/// `decode(encode(k))` against the truncated graphs; empty discrepancy means
/// the round trip holds.
pub fn verify_roundtrip(k: usize) -> Result<Discrepancy> {
    verify_carrier(&encode(k)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_sizes() {
        let c = encode(1).unwrap();
        assert_eq!(c.n(), 10);
        assert_eq!(c.reprs, vec![7]);
    }

    #[test]
    fn k3_layout() {
        let c = encode(3).unwrap();
        assert_eq!(c.n(), 90);
        assert_eq!(c.reprs, vec![21, 42, 63]);
        let adds = c.blocks.iter().filter(|b| b.op == Op::Add).count();
        let muls = c.blocks.iter().filter(|b| b.op == Op::Mul).count();
        assert_eq!((adds, muls), (6, 8));
        // <2-initial segment is b_0 <2 b_1 <2 b_2
        assert_eq!(&c.biorder.order2()[..3], &[21, 42, 63]);
        assert_eq!(c.param_ranks, [2, 2 + 4 * 6, 2 + 4 * 14]);
    }

    #[test]
    fn k0_rejected() {
        assert!(encode(0).is_err());
    }

    #[test]
    fn code_points_code_their_value() {
        for k in 1..=8 {
            let c = encode(k).unwrap();
            for b in &c.blocks {
                let (r, s, t) = b.triple;
                assert_eq!(code_of(b.points[0], k).unwrap(), Some(r));
                assert_eq!(code_of(b.points[1], k).unwrap(), Some(s));
                assert_eq!(code_of(b.points[2], k).unwrap(), Some(t));
                assert!(b.points[3] > c.reprs[k - 1]);
                assert_eq!(code_of(b.points[3], k).unwrap(), None);
            }
        }
    }

    #[test]
    fn blocks_are_disjoint_intervals() {
        for k in 1..=10 {
            let c = encode(k).unwrap();
            let mut seen = std::collections::HashSet::new();
            for b in &c.blocks {
                for &p in &b.points {
                    assert!(seen.insert(p), "point {p} reused at k={k}");
                }
                let r0 = c.biorder.rank2(b.points[0]);
                for (i, &p) in b.points.iter().enumerate() {
                    assert_eq!(c.biorder.rank2(p), r0 + i);
                }
                let [_, a2, a3] = c.param_ranks;
                let (lo, hi) = match b.op {
                    Op::Add => (c.param_ranks[0], a2),
                    Op::Mul => (a2, a3),
                };
                assert!(lo < r0 && r0 + 3 <= hi);
            }
        }
    }

    #[test]
    fn code_of_examples() {
        assert_eq!(code_of(10, 3).unwrap(), Some(0));
        assert_eq!(code_of(21, 3).unwrap(), None);
        assert_eq!(code_of(80, 3).unwrap(), None);
        assert_eq!(code_of(22, 3).unwrap(), Some(1));
        assert!(code_of(90, 3).is_err());
    }

    #[test]
    fn decode_k2() {
        let c = encode(2).unwrap();
        let t = decode(&c.biorder, c.param_ranks).unwrap();
        assert_eq!(t.domain, 2);
        let add: BTreeSet<_> = [(0, 0, 0), (0, 1, 1), (1, 0, 1)].into();
        let mul: BTreeSet<_> = [(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 1)].into();
        assert_eq!(t.add, add);
        assert_eq!(t.mul, mul);
    }

    #[test]
    fn decode_k1() {
        let c = encode(1).unwrap();
        let t = decode(&c.biorder, c.param_ranks).unwrap();
        assert_eq!(t.domain, 1);
        assert_eq!(t.add, [(0, 0, 0)].into());
        assert_eq!(t.mul, [(0, 0, 0)].into());
    }

    #[test]
    fn decode_without_blocks_is_empty() {
        // reversed <2: every point <2-after a1 is <1-below it, so no delimiter
        let n = 20;
        let b = BiOrder::from_order2((0..n).rev().collect()).unwrap();
        let t = decode(&b, [3, 10, 15]).unwrap();
        assert_eq!(t.domain, 4);
        assert!(t.add.is_empty() && t.mul.is_empty());
    }

    #[test]
    fn malformed_params_rejected() {
        let c = encode(2).unwrap();
        assert!(decode(&c.biorder, [5, 5, 9]).is_err());
        assert!(decode(&c.biorder, [1, 9, 40]).is_err());
    }

    #[test]
    fn roundtrip_small() {
        assert!(verify_roundtrip(1).unwrap().is_empty());
        assert!(verify_roundtrip(5).unwrap().is_empty());
    }

    #[test]
    fn fault_injection_is_reported() {
        let mut c = encode(3).unwrap();
        // swap the last code point of the first addition block with its delimiter
        let r = c.param_ranks[0] + 3;
        c.biorder = c.biorder.swap2(r, r + 1);
        let d = verify_carrier(&c).unwrap();
        assert!(!d.is_empty());
        assert_eq!(d.missing_add, vec![(0, 0, 0)]);
        assert!(d.lines().iter().any(|l| l.starts_with("missing_add")));
    }

    #[test]
    fn carrier_file_round_trip() {
        let c = encode(3).unwrap();
        let f = CarrierFile::parse(&c.to_text()).unwrap();
        assert_eq!(f.biorder, c.biorder);
        assert_eq!(f.param_ranks, c.param_ranks);
        assert_eq!(f.k, Some(3));
    }
}

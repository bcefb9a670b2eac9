//! Order-embeddings of a pure-equality structure into the rationals.
//!
//! Elements are `u64` ids mapped injectively to exact fractions. Each
//! constraint `θ(x_1..x_m)` names parameters by id; if it can be solved by
//! fresh pairwise-distinct points, new elements are created realizing it.

mod formula;

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use formula::{parse_constraint, parse_constraints, Formula, OrderConstraint, Term};

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

type Literal = (bool, Term, Term);

/// Strict `<` edges of one disjunct, or `None` if it contains `t < t`.
fn disjunct_edges(lits: &[Literal]) -> Option<Vec<(Term, Term)>> {
    let mut edges = Vec::new();
    for &(pos, s, t) in lits {
        match (pos, s == t) {
            (true, true) => return None,
            (false, true) => {}
            (true, false) => edges.push((s, t)),
            (false, false) => edges.push((t, s)),
        }
    }
    Some(edges)
}

/// Topological order of the disjunct's terms (all variables plus the
/// parameters it mentions), with the parameters chained by value. `None`
/// when the graph has a cycle.
fn solve_disjunct(
    lits: &[Literal],
    var_count: usize,
    f: &BTreeMap<u64, BigRational>,
) -> Result<Option<Vec<Term>>> {
    let Some(mut edges) = disjunct_edges(lits) else {
        return Ok(None);
    };
    let mut nodes: BTreeSet<Term> = (1..=var_count).map(Term::Var).collect();
    for &(_, s, t) in lits {
        nodes.insert(s);
        nodes.insert(t);
    }
    let mut params = Vec::new();
    for t in &nodes {
        if let Term::Param(j) = *t {
            let v = f
                .get(&j)
                .ok_or_else(|| Error::invalid(format!("parameter p{j} is not mapped")))?;
            params.push((v, *t));
        }
    }
    params.sort();
    for w in params.windows(2) {
        edges.push((w[0].1, w[1].1));
    }

    let mut indeg: BTreeMap<Term, usize> = nodes.iter().map(|&t| (t, 0)).collect();
    let mut out: BTreeMap<Term, Vec<Term>> = BTreeMap::new();
    for &(s, t) in &edges {
        *indeg.get_mut(&t).unwrap() += 1;
        out.entry(s).or_default().push(t);
    }
    let mut ready: BinaryHeap<Reverse<Term>> =
        indeg.iter().filter(|(_, &d)| d == 0).map(|(&t, _)| Reverse(t)).collect();
    let mut order = Vec::with_capacity(nodes.len());
    while let Some(Reverse(t)) = ready.pop() {
        order.push(t);
        for &u in out.get(&t).map(Vec::as_slice).unwrap_or(&[]) {
            let d = indeg.get_mut(&u).unwrap();
            *d -= 1;
            if *d == 0 {
                ready.push(Reverse(u));
            }
        }
    }
    Ok((order.len() == nodes.len()).then_some(order))
}

/// Indices of the DNF disjuncts solvable by fresh distinct points.
fn feasible_disjuncts(
    c: &OrderConstraint,
    f: &BTreeMap<u64, BigRational>,
) -> Result<Vec<(usize, Vec<Term>)>> {
    let mut out = Vec::new();
    for (i, lits) in c.theta.dnf().iter().enumerate() {
        if let Some(order) = solve_disjunct(lits, c.var_count, f)? {
            out.push((i, order));
        }
    }
    Ok(out)
}

/// Whether `c` is solvable by pairwise-distinct fresh rationals distinct
/// from every parameter value. All parameters must already be mapped.
pub fn check_large(c: &OrderConstraint, f: &BTreeMap<u64, BigRational>) -> Result<bool> {
    Ok(!feasible_disjuncts(c, f)?.is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Fresh element ids for `x_1..x_m`.
    Realized(Vec<u64>),
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogEntry {
    pub step: usize,
    /// Parameters that were first mapped at this step.
    pub new_params: Vec<u64>,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmbeddingState {
    f: BTreeMap<u64, BigRational>,
    pub log: Vec<LogEntry>,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl EmbeddingState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    pub fn value(&self, id: u64) -> Option<&BigRational> {
        self.f.get(&id)
    }

    pub fn map(&self) -> &BTreeMap<u64, BigRational> {
        &self.f
    }

    /// Ids sorted by their image.
    pub fn structure(&self) -> Vec<u64> {
        let mut ids: Vec<u64> = self.f.keys().copied().collect();
        ids.sort_by(|a, b| self.f[a].cmp(&self.f[b]));
        ids
    }

    pub fn is_injective(&self) -> bool {
        let vals: BTreeSet<&BigRational> = self.f.values().collect();
        vals.len() == self.f.len()
    }

    fn next_id(&self) -> u64 {
        self.f.keys().next_back().map_or(0, |m| m + 1)
    }

    fn max_value(&self) -> Option<&BigRational> {
        self.f.values().max()
    }

    fn above(&self, x: &BigRational) -> Option<&BigRational> {
        self.f.values().filter(|v| *v > x).min()
    }

    fn below(&self, x: &BigRational) -> Option<&BigRational> {
        self.f.values().filter(|v| *v < x).max()
    }

    /// Values for `r` fresh points strictly between `lo` and `hi` (either may
    /// be absent) and avoiding every current value.
    fn fill(&self, lo: Option<&BigRational>, hi: Option<&BigRational>, r: usize) -> Vec<BigRational> {
        let (lo, hi) = match (lo, hi) {
            (Some(l), _) => (Some(l.clone()), self.above(l).cloned()),
            (None, Some(h)) => (self.below(h).cloned(), Some(h.clone())),
            (None, None) => (None, self.f.values().min().cloned()),
        };
        (1..=r as i64)
            .map(|j| match (&lo, &hi) {
                (Some(l), Some(h)) => l + (h - l) * BigRational::new(j.into(), (r as i64 + 1).into()),
                (Some(l), None) => l + int(j),
                (None, Some(h)) => h - int(r as i64 + 1 - j),
                (None, None) => int(j),
            })
            .collect()
    }

    /// Process one constraint.
    pub fn extend_step(&mut self, c: &OrderConstraint, seed: u64) -> Result<&LogEntry> {
        let step = self.log.len();
        let mut new_params = Vec::new();
        for j in c.params() {
            if !self.f.contains_key(&j) {
                let v = self.max_value().map_or_else(BigRational::zero, |m| m + BigRational::one());
                self.f.insert(j, v);
                new_params.push(j);
            }
        }
        let feasible = feasible_disjuncts(c, &self.f)?;
        let outcome = if feasible.is_empty() {
            Outcome::Skipped
        } else {
            let mut rng = SplitMix64::stream(seed, step as u64);
            let (_, order) = &feasible[rng.below(feasible.len() as u64) as usize];
            let values = self.realize(order, c.var_count);
            let first = self.next_id();
            let ids: Vec<u64> = (0..c.var_count as u64).map(|i| first + i).collect();
            for (id, v) in ids.iter().zip(values) {
                self.f.insert(*id, v);
            }
            Outcome::Realized(ids)
        };
        self.log.push(LogEntry { step, new_params, outcome });
        Ok(self.log.last().unwrap())
    }

    /// Values for `x_1..x_m` consistent with the topological `order`.
    fn realize(&self, order: &[Term], var_count: usize) -> Vec<BigRational> {
        let mut values = vec![BigRational::zero(); var_count];
        let mut lo: Option<BigRational> = None;
        let mut pending = Vec::new();
        let bounds = order.iter().map(Some).chain(std::iter::once(None));
        for t in bounds {
            let hi = match t {
                Some(Term::Var(i)) => {
                    pending.push(*i);
                    continue;
                }
                Some(Term::Param(j)) => Some(self.f[j].clone()),
                None => None,
            };
            let fresh = self.fill(lo.as_ref(), hi.as_ref(), pending.len());
            for (i, v) in pending.drain(..).zip(fresh) {
                values[i - 1] = v;
            }
            lo = hi;
        }
        values
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let realized = self.log.iter().filter(|e| e.outcome != Outcome::Skipped).count();
        writeln!(
            s,
            "generic v1 elements={} realized={} skipped={}",
            self.f.len(),
            realized,
            self.log.len() - realized
        )
        .unwrap();
        let order: Vec<String> = self.structure().iter().map(u64::to_string).collect();
        writeln!(s, "order {}", order.join(" ")).unwrap();
        for (id, v) in &self.f {
            writeln!(s, "f {id} {v}").unwrap();
        }
        for e in &self.log {
            let params: Vec<String> = e.new_params.iter().map(u64::to_string).collect();
            match &e.outcome {
                Outcome::Realized(ids) => {
                    let ids: Vec<String> = ids.iter().map(u64::to_string).collect();
                    writeln!(s, "step {} realized [{}] {}", e.step, params.join(","), ids.join(" ")).unwrap()
                }
                Outcome::Skipped => writeln!(s, "step {} skipped [{}]", e.step, params.join(",")).unwrap(),
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, l)) if l.starts_with("generic v1") => {}
            _ => return Err(Error::parse(1, "expected `generic v1` header")),
        }
        let num = |tok: &str, line| tok.parse::<u64>().map_err(|_| Error::parse(line, format!("bad id `{tok}`")));
        let mut st = Self::new();
        for (line, l) in lines {
            let toks: Vec<&str> = l.split_whitespace().collect();
            match toks.as_slice() {
                ["order", ..] => {}
                ["f", id, v] => {
                    let v: BigRational = v.parse().map_err(|_| Error::parse(line, format!("bad value `{v}`")))?;
                    st.f.insert(num(id, line)?, v);
                }
                ["step", step, kind, params, ids @ ..] => {
                    let params = params
                        .strip_prefix('[')
                        .and_then(|p| p.strip_suffix(']'))
                        .ok_or_else(|| Error::parse(line, "bad parameter list"))?;
                    let new_params = params
                        .split(',')
                        .filter(|p| !p.is_empty())
                        .map(|p| num(p, line))
                        .collect::<Result<_>>()?;
                    let outcome = match *kind {
                        "realized" => Outcome::Realized(ids.iter().map(|i| num(i, line)).collect::<Result<_>>()?),
                        "skipped" if ids.is_empty() => Outcome::Skipped,
                        _ => return Err(Error::parse(line, format!("bad step kind `{kind}`"))),
                    };
                    let step = num(step, line)? as usize;
                    st.log.push(LogEntry { step, new_params, outcome });
                }
                [] => {}
                _ => return Err(Error::parse(line, "unrecognised line")),
            }
        }
        if !st.is_injective() {
            return Err(Error::parse(0, "embedding is not injective"));
        }
        Ok(st)
    }
}

/// Process a queue in order.
pub fn run_queue(constraints: &[OrderConstraint], seed: u64) -> Result<EmbeddingState> {
    let mut st = EmbeddingState::new();
    for c in constraints {
        st.extend_step(c, seed)?;
    }
    Ok(st)
}

/// Steps whose logged witnesses fail their formula under the final order
/// (evaluated on positions, not on the stored fractions).
pub fn unsound_steps(st: &EmbeddingState, constraints: &[OrderConstraint]) -> Vec<usize> {
    let pos: BTreeMap<u64, usize> = st.structure().iter().enumerate().map(|(i, &id)| (id, i)).collect();
    st.log
        .iter()
        .zip(constraints)
        .filter_map(|(e, c)| {
            let Outcome::Realized(ids) = &e.outcome else {
                return None;
            };
            let value = |t: Term| match t {
                Term::Var(i) => pos[&ids[i - 1]],
                Term::Param(j) => pos[&j],
            };
            (!c.theta.eval(&value)).then_some(e.step)
        })
        .collect()
}

/// All arrangements of `m` fresh variables around the parameters `params`
/// (kept in the given order), as chains `t_1 < t_2 < ..`.
pub fn order_patterns(params: &[u64], m: usize) -> Vec<OrderConstraint> {
    fn go(slots: &mut Vec<Term>, params: &[u64], vars: &mut Vec<usize>, out: &mut Vec<Vec<Term>>) {
        if params.is_empty() && vars.is_empty() {
            out.push(slots.clone());
            return;
        }
        if let Some((&p, rest)) = params.split_first() {
            slots.push(Term::Param(p));
            go(slots, rest, vars, out);
            slots.pop();
        }
        for i in 0..vars.len() {
            let v = vars.remove(i);
            slots.push(Term::Var(v));
            go(slots, params, vars, out);
            slots.pop();
            vars.insert(i, v);
        }
    }
    let mut chains = Vec::new();
    go(&mut Vec::new(), params, &mut (1..=m).collect(), &mut chains);
    chains
        .into_iter()
        .map(|chain| {
            let theta = Formula::all(chain.windows(2).map(|w| Formula::lt(w[0], w[1])));
            OrderConstraint::with_vars(m, theta).expect("variables in range")
        })
        .collect()
}

/// The genericity probe queue: every pattern of 1..=`max_vars` variables
/// over every subset of `params`.
pub fn probe_queue(params: &[u64], max_vars: usize) -> Vec<OrderConstraint> {
    let mut out = Vec::new();
    for mask in 0..1usize << params.len() {
        let subset: Vec<u64> = (0..params.len()).filter(|i| mask >> i & 1 == 1).map(|i| params[i]).collect();
        for m in 1..=max_vars {
            out.extend(order_patterns(&subset, m));
        }
    }
    out
}

/// Pairwise-distinct non-parameter elements of the final structure
/// satisfying a chain pattern from [`order_patterns`], chosen by filling each
/// gap between consecutive parameters from the left.
pub fn find_pattern_witness(st: &EmbeddingState, pattern: &OrderConstraint) -> Option<Vec<u64>> {
    let order = st.structure();
    let params: BTreeSet<u64> = pattern.params().into_iter().collect();
    let chain: Vec<Term> = pattern.theta.dnf().into_iter().next().map(|lits| {
        let mut chain: Vec<Term> = lits.iter().map(|l| l.1).collect();
        if let Some(last) = lits.last() {
            chain.push(last.2);
        }
        chain
    })?;
    let chain = if chain.is_empty() { (1..=pattern.var_count).map(Term::Var).collect() } else { chain };
    let mut ids = vec![0u64; pattern.var_count];
    let mut cursor = 0;
    for t in chain {
        match t {
            Term::Param(j) => {
                let at = order.iter().position(|&id| id == j)?;
                if at < cursor {
                    return None;
                }
                cursor = at + 1;
            }
            Term::Var(i) => {
                let at = (cursor..order.len()).find(|&q| !params.contains(&order[q]))?;
                ids[i - 1] = order[at];
                cursor = at + 1;
            }
        }
    }
    Some(ids)
}

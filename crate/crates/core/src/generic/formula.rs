use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A variable `x<i>` (1-based) or a parameter `p<j>` naming element `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(usize),
    Param(u64),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::Param(j) => write!(f, "p{j}"),
        }
    }
}

/// Quantifier-free formula over `<`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Lt(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn lt(s: Term, t: Term) -> Self {
        Formula::Lt(s, t)
    }

    pub fn negate(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// Conjunction of a list (`true` when empty).
    pub fn all(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    pub fn terms(&self, out: &mut BTreeSet<Term>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Lt(s, t) => {
                out.insert(*s);
                out.insert(*t);
            }
            Formula::Not(a) => a.terms(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.terms(out);
                b.terms(out);
            }
        }
    }

    /// Parameters in order of first appearance.
    pub fn params_in_order(&self) -> Vec<u64> {
        fn go(f: &Formula, out: &mut Vec<u64>) {
            match f {
                Formula::True | Formula::False => {}
                Formula::Lt(s, t) => {
                    for term in [s, t] {
                        if let Term::Param(j) = term {
                            if !out.contains(j) {
                                out.push(*j);
                            }
                        }
                    }
                }
                Formula::Not(a) => go(a, out),
                Formula::And(a, b) | Formula::Or(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Evaluate with `value` giving each term's position.
    pub fn eval<V: PartialOrd, F: Fn(Term) -> V + ?Sized>(&self, value: &F) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Lt(s, t) => value(*s) < value(*t),
            Formula::Not(a) => !a.eval(value),
            Formula::And(a, b) => a.eval(value) && b.eval(value),
            Formula::Or(a, b) => a.eval(value) || b.eval(value),
        }
    }

    /// Disjunctive normal form: a list of conjunctions of literals
    /// `(positive, s, t)`.
    pub fn dnf(&self) -> Vec<Vec<(bool, Term, Term)>> {
        fn go(f: &Formula, positive: bool) -> Vec<Vec<(bool, Term, Term)>> {
            match (f, positive) {
                (Formula::True, true) | (Formula::False, false) => vec![vec![]],
                (Formula::True, false) | (Formula::False, true) => vec![],
                (Formula::Lt(s, t), pos) => vec![vec![(pos, *s, *t)]],
                (Formula::Not(a), pos) => go(a, !pos),
                (Formula::And(a, b), true) | (Formula::Or(a, b), false) => {
                    let (l, r) = (go(a, positive), go(b, positive));
                    let mut out = Vec::with_capacity(l.len() * r.len());
                    for x in &l {
                        for y in &r {
                            let mut c = x.clone();
                            c.extend_from_slice(y);
                            out.push(c);
                        }
                    }
                    out
                }
                (Formula::Or(a, b), true) | (Formula::And(a, b), false) => {
                    let mut out = go(a, positive);
                    out.extend(go(b, positive));
                    out
                }
            }
        }
        go(self, true)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Lt(s, t) => write!(f, "lt {s} {t}"),
            Formula::Not(a) => write!(f, "not {a}"),
            Formula::And(a, b) => write!(f, "and {a} {b}"),
            Formula::Or(a, b) => write!(f, "or {a} {b}"),
        }
    }
}

/// `θ(x_1..x_m)` with parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderConstraint {
    pub var_count: usize,
    pub theta: Formula,
}

impl OrderConstraint {
    /// Variable count defaults to the largest variable index used.
    pub fn new(theta: Formula) -> Self {
        let mut terms = BTreeSet::new();
        theta.terms(&mut terms);
        let var_count = terms
            .iter()
            .filter_map(|t| match t {
                Term::Var(i) => Some(*i),
                Term::Param(_) => None,
            })
            .max()
            .unwrap_or(0);
        Self { var_count, theta }
    }

    pub fn with_vars(var_count: usize, theta: Formula) -> Result<Self> {
        let c = Self::new(theta);
        if c.var_count > var_count {
            return Err(Error::invalid(format!(
                "formula uses x{} but only {var_count} variables are declared",
                c.var_count
            )));
        }
        Ok(Self { var_count, ..c })
    }

    pub fn params(&self) -> Vec<u64> {
        self.theta.params_in_order()
    }

    /// One line of the constraint file.
    pub fn to_line(&self) -> String {
        format!("vars={} {}", self.var_count, self.theta)
    }
}

fn parse_term(tok: &str, line: usize) -> Result<Term> {
    let bad = || Error::parse(line, format!("bad term `{tok}`"));
    if let Some(i) = tok.strip_prefix('x') {
        let i: usize = i.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(Error::parse(line, "variables are numbered from x1"));
        }
        Ok(Term::Var(i))
    } else if let Some(j) = tok.strip_prefix('p') {
        Ok(Term::Param(j.parse().map_err(|_| bad())?))
    } else {
        Err(bad())
    }
}

fn parse_prefix<'a>(toks: &mut impl Iterator<Item = &'a str>, line: usize) -> Result<Formula> {
    let tok = toks
        .next()
        .ok_or_else(|| Error::parse(line, "formula ends early"))?;
    Ok(match tok {
        "true" => Formula::True,
        "false" => Formula::False,
        "lt" => {
            let s = parse_term(toks.next().unwrap_or(""), line)?;
            let t = parse_term(toks.next().unwrap_or(""), line)?;
            Formula::Lt(s, t)
        }
        "not" => Formula::negate(parse_prefix(toks, line)?),
        "and" => Formula::and(parse_prefix(toks, line)?, parse_prefix(toks, line)?),
        "or" => Formula::or(parse_prefix(toks, line)?, parse_prefix(toks, line)?),
        other => return Err(Error::parse(line, format!("unknown token `{other}`"))),
    })
}

/// Parse one constraint: `[vars=<m>] <prefix formula>`.
pub fn parse_constraint(text: &str, line: usize) -> Result<OrderConstraint> {
    let mut toks = text.split_whitespace().peekable();
    let declared = match toks.peek() {
        Some(t) if t.starts_with("vars=") => {
            let m = t["vars=".len()..]
                .parse::<usize>()
                .map_err(|_| Error::parse(line, "bad `vars=`"))?;
            toks.next();
            Some(m)
        }
        _ => None,
    };
    let theta = parse_prefix(&mut toks, line)?;
    if let Some(extra) = toks.next() {
        return Err(Error::parse(line, format!("trailing token `{extra}`")));
    }
    match declared {
        Some(m) => OrderConstraint::with_vars(m, theta).map_err(|e| Error::parse(line, e.to_string())),
        None => Ok(OrderConstraint::new(theta)),
    }
}

/// Constraint file: one constraint per line; blank lines and `#` comments
/// are skipped.
pub fn parse_constraints(text: &str) -> Result<Vec<OrderConstraint>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split('#').next().unwrap().trim();
            (!l.is_empty()).then(|| parse_constraint(l, i + 1))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_prefix_notation() {
        let c = parse_constraint("and lt x1 p3 or lt p3 x2 not lt x2 x1", 1).unwrap();
        assert_eq!(c.var_count, 2);
        assert_eq!(c.params(), vec![3]);
        assert_eq!(parse_constraint(&c.to_line(), 1).unwrap(), c);
        assert_eq!(parse_constraint("vars=3 true", 1).unwrap().var_count, 3);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_constraint("and lt x1 x2", 1).is_err());
        assert!(parse_constraint("lt x0 x1", 1).is_err());
        assert!(parse_constraint("lt x1 y2", 1).is_err());
        assert!(parse_constraint("lt x1 x2 x3", 1).is_err());
        assert!(parse_constraint("vars=1 lt x1 x2", 1).is_err());
    }

    #[test]
    fn dnf_preserves_truth() {
        let f = parse_constraint("not and or lt x1 x2 lt x2 x3 not lt x3 x1", 1).unwrap().theta;
        let d = f.dnf();
        // all orderings of three distinct values
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let val = |t: Term| match t {
                Term::Var(i) => perm[i - 1],
                Term::Param(_) => unreachable!(),
            };
            let via_dnf = d.iter().any(|c| c.iter().all(|&(pos, s, t)| (val(s) < val(t)) == pos));
            assert_eq!(f.eval(&val), via_dnf);
        }
    }

    #[test]
    fn file_skips_comments() {
        let cs = parse_constraints("# header\nlt x1 x2\n\ntrue # trailing\n").unwrap();
        assert_eq!(cs.len(), 2);
    }
}

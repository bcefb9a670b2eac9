//! Finite sets carrying two linear orders.

use std::fmt;

use crate::error::{Error, Result};

/// A bi-order `(N; <1, <2)` in canonical form.
///
/// Elements are named by their `<1`-rank, so `<1` is the usual order on
/// `0..N`. `order2[j]` is the element whose `<2`-rank is `j`. Two bi-orders
/// are isomorphic exactly when their `order2` vectors are equal, which is
/// what `PartialEq` compares.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiOrder {
    order2: Vec<usize>,
    rank2: Vec<usize>,
}

impl BiOrder {
    pub fn from_order2(order2: Vec<usize>) -> Result<Self> {
        let n = order2.len();
        let mut rank2 = vec![usize::MAX; n];
        for (j, &e) in order2.iter().enumerate() {
            if e >= n || rank2[e] != usize::MAX {
                return Err(Error::invalid(format!(
                    "order2 is not a permutation of 0..{n}"
                )));
            }
            rank2[e] = j;
        }
        Ok(Self { order2, rank2 })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_order2((0..n).collect()).expect("identity is a permutation")
    }

    /// Build from a strict relation `less2` on `0..n` (elements again named
    /// by their `<1`-rank). Fails if `less2` is not a strict total order.
    ///
    /// The `<2`-rank of `i` is the number of `j` with `less2(j, i)`; those
    /// scores form a permutation exactly when a complete relation is
    /// transitive, which is checked afterwards pair by pair.
    pub fn from_relation(n: usize, less2: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut order2 = vec![usize::MAX; n];
        for i in 0..n {
            let score = (0..n).filter(|&j| j != i && less2(j, i)).count();
            if order2[score] != usize::MAX {
                return Err(Error::invalid("relation is not a strict total order"));
            }
            order2[score] = i;
        }
        let b = Self::from_order2(order2)?;
        for i in 0..n {
            if less2(i, i) {
                return Err(Error::invalid("relation is reflexive"));
            }
            for j in 0..n {
                if i != j && less2(i, j) != b.less2(i, j) {
                    return Err(Error::invalid("relation is not a strict total order"));
                }
            }
        }
        Ok(b)
    }

    /// Canonical form of an arbitrary labelled set with two orders, given as
    /// the labels listed in `<1` order and in `<2` order.
    pub fn from_labelled<T: PartialEq>(by_order1: &[T], by_order2: &[T]) -> Result<Self> {
        if by_order1.len() != by_order2.len() {
            return Err(Error::invalid("orders list different numbers of elements"));
        }
        let order2 = by_order2
            .iter()
            .map(|x| {
                by_order1
                    .iter()
                    .position(|y| y == x)
                    .ok_or_else(|| Error::invalid("orders list different elements"))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_order2(order2)
    }

    pub fn len(&self) -> usize {
        self.order2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order2.is_empty()
    }

    pub fn order2(&self) -> &[usize] {
        &self.order2
    }

    /// `<2`-rank of element `e`.
    pub fn rank2(&self, e: usize) -> usize {
        self.rank2[e]
    }

    /// Element at `<2`-rank `j`.
    pub fn at2(&self, j: usize) -> usize {
        self.order2[j]
    }

    pub fn less1(&self, x: usize, y: usize) -> bool {
        x < y
    }

    pub fn less2(&self, x: usize, y: usize) -> bool {
        self.rank2[x] < self.rank2[y]
    }

    /// Exchange the elements at `<2`-ranks `i` and `j`.
    pub fn swap2(&self, i: usize, j: usize) -> Self {
        let mut order2 = self.order2.clone();
        order2.swap(i, j);
        Self::from_order2(order2).expect("swap keeps a permutation")
    }

    /// Every bi-order type of size `n`, in lexicographic order of `order2`.
    pub fn all_types(n: usize) -> Vec<BiOrder> {
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            out.push(Self::from_order2(perm.clone()).unwrap());
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
        out
    }

    /// Short label used in histograms: `order2` joined by commas.
    pub fn label(&self) -> String {
        self.order2
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Text form: `biorder v1 N=<N>` and the `order2` line.
    pub fn to_text(&self) -> String {
        let body = self
            .order2
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        format!("biorder v1 N={}\n{}\n", self.len(), body)
    }

    /// Parse the first two lines of a bi-order (or arithmetic carrier) file.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        Self::parse_lines(&mut lines)
    }

    pub(crate) fn parse_lines<'a>(lines: &mut impl Iterator<Item = &'a str>) -> Result<Self> {
        let header = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
        let n: usize = header
            .strip_prefix("biorder v1 N=")
            .ok_or_else(|| Error::parse(1, "expected `biorder v1 N=<N>`"))?
            .trim()
            .parse()
            .map_err(|_| Error::parse(1, "bad N"))?;
        let body = lines.next().unwrap_or("");
        let order2 = body
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::parse(2, format!("bad entry `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if order2.len() != n {
            return Err(Error::parse(
                2,
                format!("expected {n} entries, found {}", order2.len()),
            ));
        }
        Self::from_order2(order2).map_err(|e| Error::parse(2, e.to_string()))
    }
}

impl fmt::Debug for BiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiOrder[{}]", self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_non_permutations() {
        assert!(BiOrder::from_order2(vec![0, 0]).is_err());
        assert!(BiOrder::from_order2(vec![0, 2]).is_err());
        assert!(BiOrder::from_order2(vec![]).unwrap().is_empty());
    }

    #[test]
    fn all_types_counts() {
        assert_eq!(BiOrder::all_types(0).len(), 1);
        assert_eq!(BiOrder::all_types(1).len(), 1);
        assert_eq!(BiOrder::all_types(3).len(), 6);
        assert_eq!(BiOrder::all_types(4).len(), 24);
        let t = BiOrder::all_types(3);
        assert_eq!(t[0].order2(), &[0, 1, 2]);
        assert_eq!(t[5].order2(), &[2, 1, 0]);
    }

    #[test]
    fn relation_must_be_transitive() {
        // a 3-cycle is complete and antisymmetric but not an order
        let cyc = |i: usize, j: usize| (i + 1) % 3 == j;
        assert!(BiOrder::from_relation(3, cyc).is_err());
        let rev = BiOrder::from_relation(3, |i, j| i > j).unwrap();
        assert_eq!(rev.order2(), &[2, 1, 0]);
    }

    #[test]
    fn labelled_sets_canonicalize() {
        let b = BiOrder::from_labelled(&["a", "b", "c"], &["c", "a", "b"]).unwrap();
        assert_eq!(b.order2(), &[2, 0, 1]);
        assert!(b.less2(2, 0));
    }

    #[test]
    fn parse_rejects_bad_header() {
        assert!(BiOrder::parse("biorder v2 N=1\n0\n").is_err());
        assert!(BiOrder::parse("biorder v1 N=2\n0\n").is_err());
    }

    proptest! {
        #[test]
        fn text_round_trip(seed in any::<u64>(), n in 0usize..40) {
            let b = BiOrder::from_order2(crate::rng::SplitMix64::new(seed).permutation(n)).unwrap();
            prop_assert_eq!(BiOrder::parse(&b.to_text()).unwrap(), b);
        }

        #[test]
        fn relation_round_trip(seed in any::<u64>(), n in 0usize..20) {
            let b = BiOrder::from_order2(crate::rng::SplitMix64::new(seed).permutation(n)).unwrap();
            let again = BiOrder::from_relation(n, |i, j| b.less2(i, j)).unwrap();
            prop_assert_eq!(again, b);
        }
    }
}

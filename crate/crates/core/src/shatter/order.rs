use super::Space;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

const ORDER_STREAM: u64 = 0x004F_5244_4552;

/// A comparison on the points of `F_p^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointOrder {
    /// Lexicographic, coordinate 1 most significant.
    Lex,
    /// `rank[x]` is the position of point `x`.
    Explicit { rank: Vec<usize> },
    /// A tournament on `size` points: for `x < y`, bit `(x, y)` set means
    /// `x` beats `y`. Only for `p = 2`.
    Tournament { size: usize, bits: Vec<u64> },
}

impl PointOrder {
    /// From the points listed in increasing order.
    pub fn from_sequence(space: &Space, seq: &[usize]) -> Result<Self> {
        if seq.len() != space.size() {
            return Err(Error::invalid(format!(
                "order lists {} points, F_{}^{} has {}",
                seq.len(),
                space.p,
                space.n,
                space.size()
            )));
        }
        let mut rank = vec![usize::MAX; seq.len()];
        for (r, &x) in seq.iter().enumerate() {
            if x >= seq.len() || rank[x] != usize::MAX {
                return Err(Error::invalid("order is not a permutation of the points"));
            }
            rank[x] = r;
        }
        Ok(Self::Explicit { rank })
    }

    pub fn random(space: &Space, seed: u64) -> Self {
        let seq = SplitMix64::stream(seed, ORDER_STREAM).permutation(space.size());
        Self::from_sequence(space, &seq).expect("permutation")
    }

    pub fn random_tournament(space: &Space, seed: u64) -> Result<Self> {
        if space.p != 2 {
            return Err(Error::invalid("tournaments are only supported for p = 2"));
        }
        let size = space.size();
        let words = (size * size).div_ceil(64);
        let mut rng = SplitMix64::stream(seed, ORDER_STREAM + 1);
        let bits = (0..words).map(|_| rng.next_u64()).collect();
        Ok(Self::Tournament { size, bits })
    }

    pub fn is_tournament(&self) -> bool {
        matches!(self, Self::Tournament { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Lex => "lex",
            Self::Explicit { .. } => "explicit",
            Self::Tournament { .. } => "tournament",
        }
    }

    #[inline]
    pub fn less(&self, x: usize, y: usize) -> bool {
        match self {
            Self::Lex => x < y,
            Self::Explicit { rank } => rank[x] < rank[y],
            Self::Tournament { size, bits } => {
                if x == y {
                    return false;
                }
                let (lo, hi) = (x.min(y), x.max(y));
                let i = lo * size + hi;
                let lo_wins = bits[i / 64] >> (i % 64) & 1 == 1;
                lo_wins == (x == lo)
            }
        }
    }

    /// Points in increasing order. Not defined for tournaments.
    pub fn sequence(&self, space: &Space) -> Option<Vec<usize>> {
        match self {
            Self::Lex => Some((0..space.size()).collect()),
            Self::Explicit { rank } => {
                let mut seq = vec![0; rank.len()];
                for (x, &r) in rank.iter().enumerate() {
                    seq[r] = x;
                }
                Some(seq)
            }
            Self::Tournament { .. } => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tournament_is_complete_and_antisymmetric() {
        let s = Space::new(2, 4).unwrap();
        let t = PointOrder::random_tournament(&s, 3).unwrap();
        for x in 0..16 {
            assert!(!t.less(x, x));
            for y in 0..16 {
                if x != y {
                    assert!(t.less(x, y) ^ t.less(y, x));
                }
            }
        }
        assert!(PointOrder::random_tournament(&Space::new(3, 2).unwrap(), 0).is_err());
    }

    #[test]
    fn explicit_sequence_round_trip() {
        let s = Space::new(3, 2).unwrap();
        let o = PointOrder::random(&s, 5);
        let seq = o.sequence(&s).unwrap();
        assert_eq!(PointOrder::from_sequence(&s, &seq).unwrap(), o);
        assert!(PointOrder::from_sequence(&s, &[0, 1]).is_err());
    }
}

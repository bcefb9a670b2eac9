use crate::error::{Error, Result};

/// Largest point count accepted for exhaustive work.
pub const MAX_POINTS: usize = 1 << 20;

/// The vector space `F_p^n`. Points are indices `0..p^n` whose base-`p`
/// digits are the coordinates, coordinate 1 most significant, so the
/// lexicographic order on points is the order on indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Space {
    pub p: usize,
    pub n: usize,
    size: usize,
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Space {
    pub fn new(p: usize, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        let size = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(p).filter(|&s| s <= MAX_POINTS));
        let size = size.ok_or_else(|| Error::invalid(format!("F_{p}^{n} is too large to enumerate")))?;
        Ok(Self { p, n, size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Coordinates `[x_1, .., x_n]`.
    pub fn coords(&self, mut x: usize) -> Vec<usize> {
        let mut c = vec![0; self.n];
        for i in (0..self.n).rev() {
            c[i] = x % self.p;
            x /= self.p;
        }
        c
    }

    pub fn from_coords(&self, c: &[usize]) -> usize {
        c.iter().fold(0, |acc, &v| acc * self.p + v % self.p)
    }

    /// Coordinate `i` (1-based, 1 = most significant).
    pub fn coord(&self, x: usize, i: usize) -> usize {
        x / self.p.pow((self.n - i) as u32) % self.p
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        if self.p == 2 {
            return x ^ y;
        }
        let (cx, cy) = (self.coords(x), self.coords(y));
        let s: Vec<usize> = cx.iter().zip(&cy).map(|(a, b)| (a + b) % self.p).collect();
        self.from_coords(&s)
    }

    pub fn scale(&self, t: usize, x: usize) -> usize {
        let t = t % self.p;
        if self.p == 2 {
            return if t == 0 { 0 } else { x };
        }
        let s: Vec<usize> = self.coords(x).iter().map(|a| a * t % self.p).collect();
        self.from_coords(&s)
    }

    pub fn neg(&self, x: usize) -> usize {
        self.scale(self.p - 1, x)
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// `x + t·y`.
    pub fn axpy(&self, x: usize, t: usize, y: usize) -> usize {
        self.add(x, self.scale(t, y))
    }

    /// 1-based index of the first nonzero coordinate, `None` for zero.
    pub fn leading(&self, x: usize) -> Option<usize> {
        (1..=self.n).find(|&i| self.coord(x, i) != 0)
    }

    /// All linear combinations of `vectors`.
    pub fn span(&self, vectors: &[usize]) -> Vec<usize> {
        let mut out = vec![0];
        for &v in vectors {
            let mut next = Vec::with_capacity(out.len() * self.p);
            for &x in &out {
                for t in 0..self.p {
                    next.push(self.axpy(x, t, v));
                }
            }
            out = next;
        }
        out
    }

    /// Digit string, e.g. `01101`.
    pub fn label(&self, x: usize) -> String {
        self.coords(x).iter().map(|d| d.to_string()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_huge() {
        assert!(Space::new(4, 2).is_err());
        assert!(Space::new(2, 21).is_err());
        assert_eq!(Space::new(3, 4).unwrap().size(), 81);
    }

    #[test]
    fn arithmetic_mod_p() {
        let s = Space::new(3, 2).unwrap();
        let x = s.from_coords(&[1, 2]);
        let y = s.from_coords(&[2, 2]);
        assert_eq!(s.coords(s.add(x, y)), vec![0, 1]);
        assert_eq!(s.coords(s.scale(2, x)), vec![2, 1]);
        assert_eq!(s.sub(x, x), 0);
        assert_eq!(s.coord(x, 1), 1);
        assert_eq!(s.coord(x, 2), 2);
        assert_eq!(s.leading(s.from_coords(&[0, 1])), Some(2));
        assert_eq!(s.span(&[x]).len(), 3);
    }
}

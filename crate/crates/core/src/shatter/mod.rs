//! Shattering witnesses in ordered `F_p` vector spaces.
//!
//! Each affine line of `F_p^n` gets a color: the permutation `π` that sorts
//! its points (listed lexicographically) by the given order. Inside a
//! `k`-dimensional affine subspace `W` whose lines all share the color `π`,
//! the lexicographically greedy basis `b^1..b^k` of its direction space,
//! the leading positions `ω_1 > .. > ω_k`, and the points `d_I` of `W` with
//! `ω_i`-coordinate `[i ∈ I]` witness that
//!
//! ```text
//! φ_π(x, y) := x + π(0)·y < x + π(1)·y < .. < x + π(p-1)·y
//! ```
//!
//! shatters `{b^1..b^k}`: `φ_π(d_I, b^l)` holds exactly when `l ∉ I`.

mod order;
mod space;

pub use order::PointOrder;
pub use space::{Space, MAX_POINTS};

use crate::error::{Error, Result};
use crate::report::Report;

/// A permutation of `0..p`.
pub type Perm = Vec<usize>;

/// `base + span(directions)`, directions in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    pub base: usize,
    pub directions: Vec<usize>,
}

impl AffineSubspace {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn points(&self, space: &Space) -> Vec<usize> {
        space
            .span(&self.directions)
            .into_iter()
            .map(|v| space.add(self.base, v))
            .collect()
    }

    /// Every affine line inside, as point lists.
    pub fn lines(&self, space: &Space) -> Vec<Vec<usize>> {
        let points = self.points(space);
        let mut out = Vec::new();
        for v in space.span(&self.directions) {
            // one representative direction per 1-dimensional subspace
            let Some(lead) = space.leading(v) else { continue };
            if space.coord(v, lead) != 1 {
                continue;
            }
            for &x in &points {
                let line: Vec<usize> = (0..space.p).map(|t| space.axpy(x, t, v)).collect();
                if line.iter().all(|&y| y >= x) {
                    out.push(line);
                }
            }
        }
        out
    }
}

/// The color of a line: the `π` with `d_{π(0)} < .. < d_{π(p-1)}`, where
/// `d_0 ⊲ .. ⊲ d_{p-1}` lists the line lexicographically.
pub fn color_line(space: &Space, points: &[usize], order: &PointOrder) -> Result<Perm> {
    let p = space.p;
    let mut d = points.to_vec();
    d.sort_unstable();
    d.dedup();
    if d.len() != p || d.iter().any(|&x| x >= space.size()) {
        return Err(Error::invalid("a line needs p distinct points of the space"));
    }
    let v = space.sub(d[1], d[0]);
    let mut expect: Vec<usize> = (0..p).map(|t| space.axpy(d[0], t, v)).collect();
    expect.sort_unstable();
    if expect != d {
        return Err(Error::invalid("points are not collinear"));
    }
    if order.is_tournament() && p != 2 {
        return Err(Error::invalid("tournament colors need p = 2"));
    }
    let mut pi: Perm = (0..p).collect();
    pi.sort_by(|&i, &j| {
        if order.less(d[i], d[j]) {
            std::cmp::Ordering::Less
        } else if order.less(d[j], d[i]) {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    Ok(pi)
}

/// A subspace all of whose lines share one color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monochromatic {
    pub subspace: AffineSubspace,
    pub color: Perm,
}

/// Next `k`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Every `k`-dimensional linear subspace of `F_p^n`, as echelon bases:
/// pivot columns in lexicographic order, then free entries counted up.
fn direction_spaces(space: &Space, k: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    let n = space.n;
    let mut pivots: Option<Vec<usize>> = Some((0..k).collect());
    std::iter::from_fn(move || {
        let piv = pivots.take()?;
        // free slots: (row, column) with column > pivot of row, not a pivot column
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((piv[r] + 1)..n).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let count = space.p.pow(free.len() as u32);
        let piv_c = piv.clone();
        let bases = (0..count).map(move |code| {
            let mut rows = vec![vec![0usize; n]; k];
            for (r, &c) in piv_c.iter().enumerate() {
                rows[r][c] = 1;
            }
            let mut x = code;
            for &(r, c) in &free {
                rows[r][c] = x % space.p;
                x /= space.p;
            }
            rows.iter().map(|row| space.from_coords(row)).collect::<Vec<_>>()
        });
        let mut next = piv;
        if k > 0 && next_combination(&mut next, n) {
            pivots = Some(next);
        }
        Some(bases)
    })
    .flatten()
}

fn subspace_color(space: &Space, w: &AffineSubspace, order: &PointOrder) -> Result<Option<Perm>> {
    let mut color: Option<Perm> = None;
    for line in w.lines(space) {
        let c = color_line(space, &line, order)?;
        match &color {
            None => color = Some(c),
            Some(prev) if *prev != c => return Ok(None),
            _ => {}
        }
    }
    Ok(Some(color.unwrap_or_else(|| (0..space.p).collect())))
}

/// First `k`-dimensional affine subspace (in enumeration order) whose lines
/// are monochromatic, or `None` if there is none.
pub fn find_mono_subspace(space: &Space, k: usize, order: &PointOrder) -> Result<Option<Monochromatic>> {
    if k > space.n {
        return Err(Error::invalid(format!("k = {k} exceeds n = {}", space.n)));
    }
    if order.is_tournament() && space.p != 2 {
        return Err(Error::invalid("tournament colors need p = 2"));
    }
    for dirs in direction_spaces(space, k) {
        let pivots: Vec<usize> = dirs.iter().map(|&v| space.leading(v).unwrap()).collect();
        // coset representatives: zero at every pivot coordinate
        for base in (0..space.size()).filter(|&x| pivots.iter().all(|&i| space.coord(x, i) == 0)) {
            let w = AffineSubspace {
                base,
                directions: dirs.clone(),
            };
            if let Some(color) = subspace_color(space, &w, order)? {
                return Ok(Some(Monochromatic { subspace: w, color }));
            }
        }
    }
    Ok(None)
}

/// Check independently that every line of `w` has color `color`.
pub fn recheck_monochromatic(space: &Space, w: &AffineSubspace, color: &Perm, order: &PointOrder) -> Result<bool> {
    for line in w.lines(space) {
        if color_line(space, &line, order)? != *color {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Greedy lexicographically minimal basis `b^1..b^k` of `span(directions)`
/// and the leading positions `ω_l` (1-based).
pub fn minimal_basis(space: &Space, directions: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut vectors = space.span(directions);
    vectors.sort_unstable();
    vectors.dedup();
    let mut basis: Vec<usize> = Vec::new();
    let mut spanned = vec![0usize];
    for v in vectors {
        if v == 0 || spanned.binary_search(&v).is_ok() {
            continue;
        }
        basis.push(v);
        spanned = space.span(&basis);
        spanned.sort_unstable();
    }
    let omega = basis.iter().map(|&b| space.leading(b).unwrap()).collect();
    (basis, omega)
}

/// The point of `base + span(basis)` whose `ω_i`-coordinate is `s[i]`.
pub fn d_point(space: &Space, base: usize, basis: &[usize], omega: &[usize], s: &[usize]) -> usize {
    let k = basis.len();
    let p = space.p;
    let mut lambda = vec![0usize; k];
    // row i involves lambda_l for l >= i only, with unit diagonal
    for i in (0..k).rev() {
        let mut acc = space.coord(base, omega[i]);
        for l in i + 1..k {
            acc += lambda[l] * space.coord(basis[l], omega[i]);
        }
        lambda[i] = (s[i] % p + p - acc % p) % p;
    }
    basis
        .iter()
        .zip(&lambda)
        .fold(base, |x, (&b, &t)| space.axpy(x, t, b))
}

/// `φ_π(x, y)`.
pub fn eval_phi_pi(space: &Space, x: usize, y: usize, pi: &[usize], order: &PointOrder) -> bool {
    pi.windows(2)
        .all(|w| order.less(space.axpy(x, w[0], y), space.axpy(x, w[1], y)))
}

/// The data certifying that `φ_π` shatters `k` points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShatterWitness {
    pub pi: Perm,
    pub subspace: AffineSubspace,
    pub basis: Vec<usize>,
    pub omega: Vec<usize>,
    /// `d_I` indexed by the bitmask of `I` (bit `l-1` for `l ∈ I`).
    pub d: Vec<usize>,
}

impl ShatterWitness {
    pub fn k(&self) -> usize {
        self.basis.len()
    }
}

/// Assemble the witness from a monochromatic subspace.
pub fn build_witness(space: &Space, mono: &Monochromatic) -> ShatterWitness {
    let w = &mono.subspace;
    let (basis, omega) = minimal_basis(space, &w.directions);
    let k = basis.len();
    let d = (0..1usize << k)
        .map(|mask| {
            let s: Vec<usize> = (0..k).map(|i| (mask >> i) & 1).collect();
            d_point(space, w.base, &basis, &omega, &s)
        })
        .collect();
    ShatterWitness {
        pi: mono.color.clone(),
        subspace: w.clone(),
        basis,
        omega,
        d,
    }
}

/// Check `φ_π(d_I, b^l) ⟺ l ∉ I` for every `I` and `l`, together with the
/// witness invariants (`ω` strictly decreasing, `d_I` lies in `W` with the
/// prescribed `ω`-coordinates).
pub fn verify_witness(space: &Space, w: &ShatterWitness, order: &PointOrder) -> bool {
    let k = w.k();
    if w.d.len() != 1 << k || w.omega.windows(2).any(|p| p[0] <= p[1]) {
        return false;
    }
    let points: std::collections::HashSet<usize> = w.subspace.points(space).into_iter().collect();
    for (mask, &d) in w.d.iter().enumerate() {
        if !points.contains(&d) {
            return false;
        }
        for l in 0..k {
            let in_i = (mask >> l) & 1 == 1;
            if space.coord(d, w.omega[l]) != usize::from(in_i) {
                return false;
            }
            if eval_phi_pi(space, d, w.basis[l], &w.pi, order) == in_i {
                return false;
            }
        }
    }
    true
}

/// Search, assemble and verify. Fails when no monochromatic subspace exists.
pub fn build_and_verify_witness(
    space: &Space,
    k: usize,
    order: &PointOrder,
) -> Result<(ShatterWitness, bool)> {
    let mono = find_mono_subspace(space, k, order)?.ok_or(Error::NoMonochromaticSubspace {
        p: space.p as u32,
        n: space.n,
        k,
    })?;
    let w = build_witness(space, &mono);
    let ok = verify_witness(space, &w, order);
    Ok((w, ok))
}

pub fn witness_report(space: &Space, order: &PointOrder, w: &ShatterWitness, verified: bool) -> Report {
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let mut r = Report::new();
    r.set("p", space.p)
        .set("n", space.n)
        .set("k", w.k())
        .set("order", order.kind())
        .set("found", 1)
        .set("pi", join(&w.pi))
        .set("base", space.label(w.subspace.base))
        .set("omega", join(&w.omega))
        .set("patterns", 1usize << w.k())
        .set("verified", u8::from(verified));
    let rows = w
        .basis
        .iter()
        .enumerate()
        .map(|(l, &b)| vec![format!("b{}", l + 1), space.label(b)])
        .chain(w.d.iter().enumerate().map(|(mask, &d)| {
            let set: Vec<String> = (0..w.k()).filter(|l| mask >> l & 1 == 1).map(|l| (l + 1).to_string()).collect();
            vec![format!("d{{{}}}", set.join(",")), space.label(d)]
        }))
        .collect();
    r.table(&["name", "point"], rows);
    r
}

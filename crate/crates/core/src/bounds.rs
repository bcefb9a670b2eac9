//! Hoeffding lower-tail bound for the binomial and a Monte Carlo check of it.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::report::{fmt_f64, Report};
use crate::rng::SplitMix64;

/// `exp(-2(np - x)^2 / n)` bounding `Prob(X <= x)` for `X ~ Bin(n, p)`.
/// Clamped to 1 at and above the mean.
pub fn hoeffding_bound(n: u64, p: f64, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("p = {p} is not a probability")));
    }
    let mean = n as f64 * p;
    if x >= mean {
        return Ok(1.0);
    }
    Ok((-2.0 * (mean - x).powi(2) / n as f64).exp())
}

pub const MIN_SAMPLES: u64 = 10_000;

const CHUNK: u64 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct TailRow {
    pub x: u64,
    pub estimate: f64,
    pub se: f64,
    pub bound: f64,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TailCheck {
    pub n: u64,
    pub p: f64,
    pub samples: u64,
    pub rows: Vec<TailRow>,
}

impl TailCheck {
    pub fn flagged(&self) -> usize {
        self.rows.iter().filter(|r| r.flagged).count()
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.set("n", self.n)
            .set("p", self.p)
            .set("samples", self.samples)
            .set("flagged", self.flagged());
        let rows = self
            .rows
            .iter()
            .map(|row| {
                vec![
                    row.x.to_string(),
                    fmt_f64(row.estimate),
                    fmt_f64(row.se),
                    fmt_f64(row.bound),
                    u8::from(row.flagged).to_string(),
                ]
            })
            .collect();
        r.table(&["x", "estimate", "se", "bound", "flagged"], rows);
        r
    }
}

/// Draw `samples` binomials and compare the empirical `Prob(X <= x)` with the
/// bound for each `x`; a row is flagged when the estimate exceeds the bound by
/// more than three standard errors.
pub fn binom_tail_check(n: u64, p: f64, xs: &[u64], samples: u64, seed: u64) -> Result<TailCheck> {
    hoeffding_bound(n, p, 0.0)?;
    if samples < MIN_SAMPLES {
        return Err(Error::invalid(format!("need at least {MIN_SAMPLES} samples")));
    }
    // Each chunk of draws uses its own stream, so the result does not depend
    // on the thread count.
    let chunks = samples.div_ceil(CHUNK);
    let hist = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = SplitMix64::stream(seed, c);
            let mut h = vec![0u64; n as usize + 1];
            for _ in 0..CHUNK.min(samples - c * CHUNK) {
                let x = (0..n).filter(|_| rng.next_f64() < p).count();
                h[x] += 1;
            }
            h
        })
        .reduce(
            || vec![0u64; n as usize + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let mut rows = Vec::with_capacity(xs.len());
    for &x in xs {
        let hits: u64 = hist.iter().take(x.min(n) as usize + 1).sum();
        let estimate = hits as f64 / samples as f64;
        let se = (estimate * (1.0 - estimate) / samples as f64).sqrt();
        let bound = hoeffding_bound(n, p, x as f64)?;
        rows.push(TailRow { x, estimate, se, bound, flagged: estimate > bound + 3.0 * se });
    }
    Ok(TailCheck { n, p, samples, rows })
}

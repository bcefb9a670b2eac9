use rayon::prelude::*;

use super::{induced_biorder, scan, VertexOrdering};
use crate::biorder::BiOrder;
use crate::error::{Error, Result};
use crate::graph::ColoredRegularGraph;
use crate::report::{fmt_f64, Report};
use crate::rng::SplitMix64;

/// Trial `t` draws its ordering from stream `TRIAL_STREAM_BASE + t`.
const TRIAL_STREAM_BASE: u64 = 1 << 40;

/// Largest target size whose `N!` type table is tabulated.
pub const MAX_TABULATED: usize = 8;

#[derive(Clone, Debug, Default)]
struct Trial {
    witnesses: usize,
    /// Windows whose `k`-neighbors avoid the window.
    conditioned: usize,
    target_hits: usize,
    type_counts: Vec<usize>,
}

/// Results of `trials` uniformly random orderings of one graph.
#[derive(Clone, Debug)]
pub struct MonteCarloReport {
    pub n: usize,
    pub d: usize,
    pub size: usize,
    pub types: Vec<BiOrder>,
    trials: Vec<Trial>,
}

/// Run `trials` random orderings of `g` against `target`.
///
/// Per trial: the number of windows `(a, k)` realizing `target`, and among
/// the windows whose `k`-neighbors are disjoint from the window, how often
/// each bi-order type occurs.
pub fn montecarlo(
    g: &ColoredRegularGraph,
    target: &BiOrder,
    trials: usize,
    seed: u64,
) -> Result<MonteCarloReport> {
    let size = target.len();
    if size == 0 || size > MAX_TABULATED || size > g.n() {
        return Err(Error::invalid(format!(
            "target size must be in 1..={MAX_TABULATED} and at most n"
        )));
    }
    if trials == 0 {
        return Err(Error::invalid("need at least one trial"));
    }
    let types = BiOrder::all_types(size);
    let type_index: std::collections::HashMap<&BiOrder, usize> =
        types.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let target_idx = type_index[target];

    let results: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = SplitMix64::stream(seed, TRIAL_STREAM_BASE + t as u64);
            let order = VertexOrdering::random(g.n(), &mut rng);
            let mut trial = Trial {
                witnesses: scan(g, &order, target).len(),
                type_counts: vec![0; types.len()],
                ..Trial::default()
            };
            for k in 0..g.d() {
                for a in 0..=g.n() - size {
                    let disjoint = (a..a + size).all(|r| {
                        let nr = order.rank(g.mate(k, order.vertex_at(r)));
                        nr < a || nr >= a + size
                    });
                    if !disjoint {
                        continue;
                    }
                    let b = induced_biorder(g, &order, a, size, k).expect("window in range");
                    let i = type_index[&b];
                    trial.conditioned += 1;
                    trial.type_counts[i] += 1;
                    if i == target_idx {
                        trial.target_hits += 1;
                    }
                }
            }
            trial
        })
        .collect();

    Ok(MonteCarloReport {
        n: g.n(),
        d: g.d(),
        size,
        types,
        trials: results,
    })
}

/// Ratio estimate `Σ hits / Σ total` with its standard error across trials
/// (trials are the independent units; windows inside one trial overlap).
fn ratio_estimate(pairs: &[(usize, usize)]) -> (f64, f64) {
    let hits: usize = pairs.iter().map(|p| p.0).sum();
    let total: usize = pairs.iter().map(|p| p.1).sum();
    if total == 0 {
        return (0.0, 0.0);
    }
    let r = hits as f64 / total as f64;
    let t = pairs.len() as f64;
    if pairs.len() < 2 {
        return (r, (r * (1.0 - r) / total as f64).sqrt());
    }
    let mean_total = total as f64 / t;
    let ss: f64 = pairs
        .iter()
        .map(|&(h, c)| {
            let e = (h as f64 - r * c as f64) / mean_total;
            e * e
        })
        .sum();
    (r, (ss / (t * (t - 1.0))).sqrt())
}

impl MonteCarloReport {
    pub fn trials(&self) -> usize {
        self.trials.len()
    }

    pub fn witness_counts(&self) -> Vec<usize> {
        self.trials.iter().map(|t| t.witnesses).collect()
    }

    pub fn witness_mean(&self) -> f64 {
        let c = self.witness_counts();
        c.iter().sum::<usize>() as f64 / c.len() as f64
    }

    pub fn witness_se(&self) -> f64 {
        let c = self.witness_counts();
        if c.len() < 2 {
            return 0.0;
        }
        let m = self.witness_mean();
        let var = c.iter().map(|&x| (x as f64 - m).powi(2)).sum::<f64>() / (c.len() - 1) as f64;
        (var / c.len() as f64).sqrt()
    }

    pub fn witness_min(&self) -> usize {
        self.witness_counts().into_iter().min().unwrap_or(0)
    }

    pub fn conditioned(&self) -> usize {
        self.trials.iter().map(|t| t.conditioned).sum()
    }

    /// Frequency of the target among conditioned windows, with standard error.
    pub fn target_frequency(&self) -> (f64, f64) {
        let pairs: Vec<_> = self.trials.iter().map(|t| (t.target_hits, t.conditioned)).collect();
        ratio_estimate(&pairs)
    }

    /// Frequency of `types[i]` among conditioned windows, with standard error.
    pub fn type_frequency(&self, i: usize) -> (f64, f64) {
        let pairs: Vec<_> = self.trials.iter().map(|t| (t.type_counts[i], t.conditioned)).collect();
        ratio_estimate(&pairs)
    }

    pub fn type_counts(&self) -> Vec<usize> {
        (0..self.types.len())
            .map(|i| self.trials.iter().map(|t| t.type_counts[i]).sum())
            .collect()
    }

    /// The floor `1 / (2 N!)` on the per-window success probability.
    pub fn success_floor(&self) -> f64 {
        0.5 / self.types.len() as f64
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        let (tf, tse) = self.target_frequency();
        r.set("n", self.n)
            .set("d", self.d)
            .set("target_size", self.size)
            .set("trials", self.trials())
            .set("witness_mean", fmt_f64(self.witness_mean()))
            .set("witness_se", fmt_f64(self.witness_se()))
            .set("witness_min", self.witness_min())
            .set("conditioned", self.conditioned())
            .set("target_freq", fmt_f64(tf))
            .set("target_se", fmt_f64(tse))
            .set("success_floor", fmt_f64(self.success_floor()));
        let rows = self
            .types
            .iter()
            .zip(self.type_counts())
            .map(|(t, c)| vec![t.label(), c.to_string()])
            .collect();
        r.table(&["type", "count"], rows);
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn size_one_always_succeeds() {
        let g = generate(64, 2, 3).unwrap();
        let rep = montecarlo(&g, &BiOrder::identity(1), 4, 1).unwrap();
        assert_eq!(rep.target_frequency().0, 1.0);
        assert_eq!(rep.witness_min(), 64 * 2);
    }

    #[test]
    fn deterministic_report() {
        let g = generate(200, 3, 1).unwrap();
        let t = BiOrder::from_order2(vec![1, 0, 2]).unwrap();
        let a = montecarlo(&g, &t, 6, 9).unwrap().to_report().to_string();
        let b = montecarlo(&g, &t, 6, 9).unwrap().to_report().to_string();
        assert_eq!(a, b);
    }

    #[test]
    fn type_counts_sum_to_conditioned() {
        let g = generate(300, 2, 2).unwrap();
        let rep = montecarlo(&g, &BiOrder::identity(3), 3, 4).unwrap();
        assert_eq!(rep.type_counts().iter().sum::<usize>(), rep.conditioned());
        let (f, _) = rep.target_frequency();
        assert_eq!(f, rep.type_frequency(0).0);
    }

    #[test]
    fn rejects_oversized_targets() {
        let g = generate(40, 2, 2).unwrap();
        assert!(montecarlo(&g, &BiOrder::identity(9), 1, 0).is_err());
        assert!(montecarlo(&g, &BiOrder::identity(2), 0, 0).is_err());
    }
}

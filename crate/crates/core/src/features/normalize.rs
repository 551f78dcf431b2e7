//! `log(1 + c)` followed by a dataset-wide z-score, per column.

use serde::{Deserialize, Serialize};

use crate::hom::FeatureMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColumnStats {
    pub mean: f64,
    /// Sample standard deviation of `log(1 + c)`.
    pub std: f64,
    /// Zero variance (or fewer than two rows): normalised values are all 0.
    pub constant: bool,
}

impl ColumnStats {
    pub fn from_counts(counts: impl Iterator<Item = u128> + Clone) -> ColumnStats {
        let logs = counts.map(|c| (c as f64).ln_1p());
        let n = logs.clone().count();
        if n == 0 {
            return ColumnStats {
                mean: 0.0,
                std: 0.0,
                constant: true,
            };
        }
        let mean = logs.clone().sum::<f64>() / n as f64;
        let first = logs.clone().next().unwrap();
        let all_same = logs.clone().all(|x| x == first);
        if n < 2 || all_same {
            return ColumnStats {
                mean,
                std: 0.0,
                constant: true,
            };
        }
        let var = logs.map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
        ColumnStats {
            mean,
            std: var.sqrt(),
            constant: false,
        }
    }

    pub fn transform(&self, c: u128) -> f64 {
        if self.constant {
            0.0
        } else {
            ((c as f64).ln_1p() - self.mean) / self.std
        }
    }

    /// Raw count closest to the normalised value `z`. Constant columns have no inverse
    /// beyond their single value, which is `exp(mean) - 1`.
    pub fn inverse(&self, z: f64) -> u128 {
        let log = if self.constant { self.mean } else { z * self.std + self.mean };
        log.exp_m1().round().max(0.0) as u128
    }
}

/// Statistics for every column over every non-overflowed row of `m`.
pub fn column_stats(m: &FeatureMatrix) -> Vec<ColumnStats> {
    (0..m.pattern_ids.len())
        .map(|j| {
            let values = m
                .graphs
                .iter()
                .filter(|g| !g.overflow)
                .flat_map(move |g| g.columns[j].counts.iter().copied());
            ColumnStats::from_counts(values)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_mean_unit_std() {
        let counts: Vec<u128> = vec![0, 1, 2, 5, 100, 7, 7];
        let s = ColumnStats::from_counts(counts.iter().copied());
        let z: Vec<f64> = counts.iter().map(|&c| s.transform(c)).collect();
        let mean = z.iter().sum::<f64>() / z.len() as f64;
        let sd = (z.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (z.len() - 1) as f64).sqrt();
        assert!(mean.abs() < 1e-12 && (sd - 1.0).abs() < 1e-12);
        for &c in &counts {
            assert_eq!(s.inverse(s.transform(c)), c);
        }
    }

    #[test]
    fn constant_column() {
        let s = ColumnStats::from_counts([3u128, 3, 3].into_iter());
        assert!(s.constant);
        assert_eq!(s.transform(3), 0.0);
        assert_eq!(s.inverse(0.0), 3);
    }
}

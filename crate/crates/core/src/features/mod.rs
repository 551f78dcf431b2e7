//! Dataset-level feature export and pattern advice.

mod advisor;
mod normalize;
mod output;

pub use advisor::{advise, AdviceVerdict, AdvisorReport, CandidateAdvice, GainRule, PatternEvidence};
pub use normalize::{column_stats, ColumnStats};
pub use output::{parse_stats_comment, stats_comment, write_features, Format, Normalize, OVERFLOW_CELL};

use crate::error::{Error, Result};
use crate::graph::{Graph, LabelAlphabet, RootedPattern};
use crate::hom::{CountMode, FeaturePlan};

#[derive(Clone, Copy, Debug)]
pub struct FeatureOptions {
    pub mode: CountMode,
    pub normalize: Normalize,
    pub format: Format,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
}

impl Default for FeatureOptions {
    fn default() -> Self {
        FeatureOptions {
            mode: CountMode::Hom,
            normalize: Normalize::None,
            format: Format::Csv,
            threads: 0,
        }
    }
}

/// Computes features for `graphs` and writes the table to `out`. With log-z normalisation,
/// statistics come from `stats_from` when given, else from `graphs`.
pub fn export_features<W: std::io::Write>(
    out: W,
    graphs: &[Graph],
    patterns: &[RootedPattern],
    alphabet: &LabelAlphabet,
    opts: &FeatureOptions,
    stats_from: Option<&[Graph]>,
) -> Result<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let (matrix, stats) = pool.install(|| -> Result<_> {
        let plan = FeaturePlan::new(patterns, opts.mode)?;
        let matrix = plan.matrix(graphs)?;
        let stats = match (opts.normalize, stats_from) {
            (Normalize::LogZ, Some(reference)) => Some(column_stats(&plan.matrix(reference)?)),
            _ => None,
        };
        Ok((matrix, stats))
    })?;
    write_features(out, &matrix, alphabet, opts.normalize, opts.format, stats)
}

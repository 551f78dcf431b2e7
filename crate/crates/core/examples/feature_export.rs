//! Per-vertex feature table for a small dataset, raw and log-z normalised.

use hompat::features::{export_features, FeatureOptions, Normalize};
use hompat::hom::CountMode;
use hompat::{Graph, LabelAlphabet, RootedPattern};

fn main() -> hompat::Result<()> {
    let graphs = vec![Graph::clique(4), Graph::cycle(5), Graph::path(4)];
    let patterns = vec![RootedPattern::clique(3), RootedPattern::cycle(4), RootedPattern::edge()];
    let alphabet = LabelAlphabet::new();
    for (mode, normalize) in [(CountMode::Hom, Normalize::None), (CountMode::Sub, Normalize::None), (CountMode::Hom, Normalize::LogZ)] {
        let opts = FeatureOptions {
            mode,
            normalize,
            ..Default::default()
        };
        export_features(std::io::stdout(), &graphs, &patterns, &alphabet, &opts, None)?;
        println!();
    }
    Ok(())
}

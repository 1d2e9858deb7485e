#pragma once

#include "mildflow/config.hpp"
#include "mildflow/corpus.hpp"
#include "mildflow/csv.hpp"
#include "mildflow/spectral_grid.hpp"

namespace mildflow {

// Each run_* validates the exponent windows of its estimate, then builds one
// CSV table. Rows come out in a fixed loop order; summary rows carry "max"
// (or "spread") in their index column. Rows whose denominator vanishes are
// kept with degenerate=1 and left out of the summaries.

/// Per field: norms and divergence diagnostics; writes spectral dumps when
/// cfg.dump names a directory.
CsvTable run_corpus(const ExperimentConfig& cfg);

/// Sobolev-Lorentz norms for every (q, r, s) and heat-Besov norms of
/// regularity s - d(1/q - 1/q~), over a resolution sweep of cfg.levels grids.
/// Every level uses the heat time grid of the coarsest level, so the Besov
/// functional is the same across the sweep.
CsvTable run_norms_experiment(const ExperimentConfig& cfg);

/// Both sides of the heat-flow embedding and of the Besov embedding, with
/// ratios, over the resolution sweep. Window: s/d < 1/q~ < 1/q.
CsvTable run_embedding_experiment(const ExperimentConfig& cfg);

/// ||uv||_{H^s_r} / (||u||_{H^s_p} ||v||_{H^s_q}), 1/r = 1/p + 1/q - s/d, over
/// neighbouring corpus pairs (first components) and the resolution sweep.
CsvTable run_product_experiment(const ExperimentConfig& cfg);

/// Empirical bilinear constants over the T list for heat-flow pairs.
CsvTable run_bilinear_experiment(const ExperimentConfig& cfg);

/// Gate values, Picard diagnostics and oracle distance per (datum, amplitude, T).
CsvTable run_solver_experiment(const ExperimentConfig& cfg);

/// Dispatch on cfg.experiment (corpus, norms, embedding, product, bilinear, solve).
CsvTable run_experiment(const ExperimentConfig& cfg);

/// Corpus description of the config, with the given amplitude.
CorpusSpec corpus_spec(const ExperimentConfig& cfg, double amplitude = 1.0);
/// Grid of sweep level `level`: n * 2^level points per axis.
SpectralGrid sweep_grid(const ExperimentConfig& cfg, int level);

}  // namespace mildflow

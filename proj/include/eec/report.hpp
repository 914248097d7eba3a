#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eec/corpus.hpp"
#include "eec/predictions.hpp"
#include "eec/stats.hpp"
#include "eec/synth.hpp"
#include "eec/types.hpp"

namespace eec {

struct RunConfig {
  std::optional<std::filesystem::path> lexicon_dir;
  std::filesystem::path predictions_dir;
  std::vector<Task> tasks;  // empty means all five
  SubsetKind subset = SubsetKind::Full;
  double alpha = 0.05;
  std::optional<int> corrections;  // default: prediction sets in the run x 2 dimensions
  std::filesystem::path out_dir = "out";
  bool write_csv = true;
  bool write_json = true;
  std::optional<std::filesystem::path> dump_units;
};

struct RunInfo {
  double alpha = 0.05;
  int corrections = 2;
  double threshold = 0.025;
  SubsetKind subset = SubsetKind::Full;
  std::string corpus_fingerprint;
  std::size_t systems_analyzed = 0;
  std::size_t systems_skipped = 0;
};

struct PlotPoint {
  std::string system_id;
  Task task = Task::Valence;
  Dimension dimension = Dimension::Gender;
  std::string unit_id;
  double delta = 0.0;
};

struct GroupTable {
  Task task = Task::Valence;
  Dimension dimension = Dimension::Gender;
  std::vector<GroupRow> rows;
};

struct AnalysisResult {
  RunInfo run;
  std::vector<SystemBiasSummary> summaries;  // ordered by task, system id, dimension
  std::vector<GroupTable> group_tables;      // ordered by task, dimension
  std::vector<PlotPoint> plot;
  std::vector<Diagnostic> diagnostics;       // skipped systems and ignored files
};

// Paper-style row label, e.g. "F↑–M↓ significant" / "AA=EA not significant".
std::string group_label(Dimension d, const std::string& group);

// Loads lexicons, regenerates the corpus, pairs it, and analyzes every
// readable {system_id}.{task}.csv under predictions_dir. Invalid prediction
// files are skipped with diagnostics; the run fails (ValidationError) only
// when nothing valid remains.
AnalysisResult analyze_run(const RunConfig& config);

// Writes summary/groups/plot files into config.out_dir per the format flags.
void write_analysis_outputs(const AnalysisResult& result, const RunConfig& config);

// Rebuilds an AnalysisResult (minus plot data) from a saved summary.json.
AnalysisResult load_summary_json(const std::filesystem::path& path);

// Recomputes the group tables from the per-system summaries alone.
std::vector<GroupTable> regroup(const std::vector<SystemBiasSummary>& summaries);

struct GenerateOptions {
  std::optional<std::filesystem::path> lexicon_dir;
  std::filesystem::path out_dir = "out";
  bool dump_lexicons = false;
};

// Writes out_dir/corpus.csv; returns the corpus.
Corpus run_generate(const GenerateOptions& options);

struct SynthOptions {
  std::optional<std::filesystem::path> lexicon_dir;
  std::filesystem::path out_dir = "out";
  std::vector<Task> tasks;  // empty means all five
  std::string system_id = "synth";
  int count = 1;
  std::uint64_t seed = 0;
  double gender_shift = 0.0;
  double race_shift = 0.0;
  double noise_sd = 0.0;
};

// Writes one prediction file per (system, task). System i uses seed + i,
// mixed per task, so every file has its own reproducible stream.
void run_synth(const SynthOptions& options);

struct ValidateOptions {
  std::optional<std::filesystem::path> lexicon_dir;
  std::optional<std::filesystem::path> predictions_dir;
  std::optional<std::filesystem::path> corpus_file;
};

// Lexicon rules, corpus round-trip and count law, prediction completeness.
std::vector<Diagnostic> run_validate(const ValidateOptions& options);

// Re-renders summary.csv and the group tables from out_dir/summary.json.
AnalysisResult run_report(const std::filesystem::path& out_dir, bool write_csv, bool write_json);

std::vector<Task> all_tasks();

}  // namespace eec

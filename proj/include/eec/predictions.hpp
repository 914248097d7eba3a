#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "eec/corpus.hpp"
#include "eec/types.hpp"

namespace eec {

// One system's scores for one task: a real value in [0, 1] per corpus sentence.
struct PredictionSet {
  std::string system_id;
  Task task = Task::Valence;
  std::unordered_map<std::string, double> scores;

  double score(const std::string& id) const { return scores.at(id); }
};

struct Diagnostic {
  std::string kind;     // parse_error | missing_id | duplicate_id | range_error | unknown_id | ...
  std::string message;
};

struct PredictionFile {
  PredictionSet set;
  std::vector<Diagnostic> diagnostics;

  bool valid() const { return diagnostics.empty(); }
};

// Reads and range-checks a prediction file against the corpus id set.
// Completeness failures come back as diagnostics, one per offending id,
// so a caller can skip the system and keep the run alive.
PredictionFile load_predictions(std::istream& in, const std::string& filename,
                                const Corpus& corpus);
PredictionFile load_predictions(const std::filesystem::path& path, const Corpus& corpus);

void write_predictions_csv(const PredictionSet& set, const Corpus& corpus, std::ostream& out);
void write_predictions_csv(const PredictionSet& set, const Corpus& corpus,
                           const std::filesystem::path& path);

// Splits "{system_id}.{task}.csv"; returns false for anything else.
bool parse_prediction_filename(const std::string& filename, std::string& system_id, Task& task);

}  // namespace eec

#include "eec/predictions.hpp"

#include <algorithm>
#include <cstdlib>

#include "eec/errors.hpp"
#include "text_io.hpp"

namespace eec {

namespace {
constexpr const char* kHeader = "ID,Score";
}

PredictionFile load_predictions(std::istream& in, const std::string& filename,
                                const Corpus& corpus) {
  PredictionFile file;
  auto fail = [&file](const std::string& kind, const std::string& message) {
    file.diagnostics.push_back(Diagnostic{kind, message});
  };

  std::string line;
  int lineno = 0;
  if (!detail::read_line(in, line) || line != kHeader) {
    fail("parse_error", filename + ":1: missing 'ID,Score' header");
    return file;
  }
  ++lineno;
  while (detail::read_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    try {
      f = detail::csv_split(line, filename, lineno);
    } catch (const ParseError& e) {
      fail("parse_error", e.what());
      continue;
    }
    const std::string where = filename + ":" + std::to_string(lineno);
    if (f.size() != 2) {
      fail("parse_error", where + ": expected 2 fields, got " + std::to_string(f.size()));
      continue;
    }
    char* end = nullptr;
    double score = std::strtod(f[1].c_str(), &end);
    if (f[1].empty() || end != f[1].c_str() + f[1].size()) {
      fail("parse_error", where + ": bad score '" + f[1] + "'");
      continue;
    }
    if (!(score >= 0.0 && score <= 1.0)) {
      fail("range_error", where + ": score " + f[1] + " outside [0,1] for id '" + f[0] + "'");
      continue;
    }
    if (!file.set.scores.emplace(f[0], score).second)
      fail("duplicate_id", where + ": duplicate id '" + f[0] + "'");
  }

  // Completeness: the id set must equal the corpus id set.
  std::unordered_map<std::string, bool> known;
  known.reserve(corpus.records.size());
  for (const auto& r : corpus.records) {
    known.emplace(r.id, true);
    if (!file.set.scores.count(r.id)) fail("missing_id", filename + ": missing id '" + r.id + "'");
  }
  std::vector<std::string> unknown;
  for (const auto& [id, score] : file.set.scores)
    if (!known.count(id)) unknown.push_back(id);
  std::sort(unknown.begin(), unknown.end());
  for (const auto& id : unknown) fail("unknown_id", filename + ": unknown id '" + id + "'");
  return file;
}

PredictionFile load_predictions(const std::filesystem::path& path, const Corpus& corpus) {
  PredictionFile file;
  std::string system_id;
  Task task = Task::Valence;
  if (!parse_prediction_filename(path.filename().string(), system_id, task)) {
    file.diagnostics.push_back(Diagnostic{
        "bad_filename", path.string() + ": expected name '{system_id}.{task}.csv'"});
    return file;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    file.diagnostics.push_back(Diagnostic{"io_error", "cannot open: " + path.string()});
    return file;
  }
  file = load_predictions(in, path.filename().string(), corpus);
  file.set.system_id = system_id;
  file.set.task = task;
  return file;
}

void write_predictions_csv(const PredictionSet& set, const Corpus& corpus, std::ostream& out) {
  out << kHeader << '\n';
  for (const auto& r : corpus.records)
    out << r.id << ',' << detail::format_fixed(set.score(r.id), 6) << '\n';
}

void write_predictions_csv(const PredictionSet& set, const Corpus& corpus,
                           const std::filesystem::path& path) {
  auto out = detail::open_output(path.string());
  write_predictions_csv(set, corpus, out);
  if (!out) throw IoError("write failed: " + path.string());
}

bool parse_prediction_filename(const std::string& filename, std::string& system_id, Task& task) {
  if (filename.size() < 5 || filename.substr(filename.size() - 4) != ".csv") return false;
  std::string stem = filename.substr(0, filename.size() - 4);
  auto dot = stem.rfind('.');
  if (dot == std::string::npos || dot == 0) return false;
  auto parsed = parse_task(stem.substr(dot + 1));
  if (!parsed) return false;
  system_id = stem.substr(0, dot);
  task = *parsed;
  return true;
}

}  // namespace eec

#include "eec/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "eec/errors.hpp"
#include "eec/pairing.hpp"
#include "text_io.hpp"

namespace eec {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kSummaryHeader =
    "System,Task,Dimension,N,MeanDelta,T,DF,P,Significant,Group,"
    "AvgDeltaPos,AvgDeltaNeg,DeltaSpread,Q1,Median,Q3,WhiskerLow,WhiskerHigh";
constexpr const char* kGroupsHeader = "Task,Dimension,Group,Label,Systems,AvgDeltaPos,AvgDeltaNeg";
constexpr const char* kPlotHeader = "System,Task,Dimension,UnitID,Delta";

std::string opt_fixed(const std::optional<double>& x, int decimals) {
  return x ? detail::format_fixed(*x, decimals) : "-";
}

int task_rank(Task t) { return static_cast<int>(t); }

std::vector<Task> normalized_tasks(const std::vector<Task>& tasks) {
  std::vector<Task> out = tasks.empty() ? all_tasks() : tasks;
  std::sort(out.begin(), out.end(), [](Task a, Task b) { return task_rank(a) < task_rank(b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Lexicons load_run_lexicons(const std::optional<fs::path>& dir) {
  return load_lexicons(dir ? LexiconPaths::in_directory(*dir) : LexiconPaths{});
}

ordered_json summary_to_json(const SystemBiasSummary& s) {
  ordered_json j;
  j["system"] = s.system_id;
  j["task"] = to_string(s.task);
  j["dimension"] = to_string(s.dimension);
  j["n"] = s.test.n;
  j["mean_delta"] = s.test.mean_delta;
  j["t"] = s.test.t_statistic;  // nlohmann renders a non-finite t as null
  j["df"] = s.test.degrees_of_freedom;
  j["p"] = s.test.p_value;
  j["significant"] = s.test.significant;
  j["group"] = to_string(s.group);
  j["avg_delta_pos"] = s.avg_delta_pos ? ordered_json(*s.avg_delta_pos) : ordered_json();
  j["avg_delta_neg"] = s.avg_delta_neg ? ordered_json(*s.avg_delta_neg) : ordered_json();
  j["delta_spread"] = s.delta_spread;
  j["box"] = {{"q1", s.box.q1},
              {"median", s.box.median},
              {"q3", s.box.q3},
              {"whisker_low", s.box.whisker_low},
              {"whisker_high", s.box.whisker_high}};
  return j;
}

SystemBiasSummary summary_from_json(const ordered_json& j) {
  SystemBiasSummary s;
  s.system_id = j.at("system").get<std::string>();
  auto task = parse_task(j.at("task").get<std::string>());
  auto group = parse_bias_group(j.at("group").get<std::string>());
  if (!task || !group) throw ValidationError("summary.json: unknown task or group token");
  s.task = *task;
  auto dim = j.at("dimension").get<std::string>();
  if (dim != "gender" && dim != "race")
    throw ValidationError("summary.json: unknown dimension '" + dim + "'");
  s.dimension = dim == "gender" ? Dimension::Gender : Dimension::Race;
  s.test.n = j.at("n").get<std::size_t>();
  s.test.mean_delta = j.at("mean_delta").get<double>();
  s.test.t_statistic = j.at("t").is_null()
                           ? std::copysign(std::numeric_limits<double>::infinity(),
                                           s.test.mean_delta)
                           : j.at("t").get<double>();
  s.test.degrees_of_freedom = j.at("df").get<double>();
  s.test.p_value = j.at("p").get<double>();
  s.test.significant = j.at("significant").get<bool>();
  s.group = *group;
  if (!j.at("avg_delta_pos").is_null()) s.avg_delta_pos = j.at("avg_delta_pos").get<double>();
  if (!j.at("avg_delta_neg").is_null()) s.avg_delta_neg = j.at("avg_delta_neg").get<double>();
  s.delta_spread = j.at("delta_spread").get<double>();
  const auto& box = j.at("box");
  s.box = BoxStats{box.at("q1").get<double>(), box.at("median").get<double>(),
                   box.at("q3").get<double>(), box.at("whisker_low").get<double>(),
                   box.at("whisker_high").get<double>()};
  return s;
}

void write_summary_csv(const AnalysisResult& result, const fs::path& path) {
  auto out = detail::open_output(path.string());
  out << kSummaryHeader << '\n';
  for (const auto& s : result.summaries) {
    out << detail::csv_join(
               {s.system_id, to_string(s.task), to_string(s.dimension),
                std::to_string(s.test.n), detail::format_fixed(s.test.mean_delta, 6),
                detail::format_fixed(s.test.t_statistic, 6),
                std::to_string(static_cast<long long>(s.test.degrees_of_freedom)),
                detail::format_sci(s.test.p_value, 6), s.test.significant ? "true" : "false",
                to_string(s.group), opt_fixed(s.avg_delta_pos, 6), opt_fixed(s.avg_delta_neg, 6),
                detail::format_fixed(s.delta_spread, 6), detail::format_fixed(s.box.q1, 6),
                detail::format_fixed(s.box.median, 6), detail::format_fixed(s.box.q3, 6),
                detail::format_fixed(s.box.whisker_low, 6),
                detail::format_fixed(s.box.whisker_high, 6)})
        << '\n';
  }
}

void write_summary_json(const AnalysisResult& result, const fs::path& path) {
  ordered_json j;
  j["run"] = {{"alpha", result.run.alpha},
              {"corrections", result.run.corrections},
              {"threshold", result.run.threshold},
              {"subset", to_string(result.run.subset)},
              {"corpus_fingerprint", result.run.corpus_fingerprint},
              {"systems_analyzed", result.run.systems_analyzed},
              {"systems_skipped", result.run.systems_skipped}};
  j["systems"] = ordered_json::array();
  for (const auto& s : result.summaries) j["systems"].push_back(summary_to_json(s));
  auto out = detail::open_output(path.string());
  out << j.dump(2) << '\n';
}

void write_groups_csv(const AnalysisResult& result, const fs::path& path) {
  auto out = detail::open_output(path.string());
  out << kGroupsHeader << '\n';
  for (const auto& table : result.group_tables) {
    for (const auto& row : table.rows) {
      out << detail::csv_join({to_string(table.task), to_string(table.dimension), row.group,
                               group_label(table.dimension, row.group),
                               std::to_string(row.count), opt_fixed(row.mean_delta_pos, 3),
                               opt_fixed(row.mean_delta_neg, 3)})
          << '\n';
    }
  }
}

void write_groups_json(const AnalysisResult& result, const fs::path& path) {
  ordered_json tables = ordered_json::array();
  for (const auto& table : result.group_tables) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
      ordered_json r;
      r["group"] = row.group;
      r["label"] = group_label(table.dimension, row.group);
      r["systems"] = row.count;
      r["avg_delta_pos"] = row.mean_delta_pos ? ordered_json(*row.mean_delta_pos) : ordered_json();
      r["avg_delta_neg"] = row.mean_delta_neg ? ordered_json(*row.mean_delta_neg) : ordered_json();
      rows.push_back(std::move(r));
    }
    tables.push_back(ordered_json{{"task", to_string(table.task)},
                                  {"dimension", to_string(table.dimension)},
                                  {"rows", std::move(rows)}});
  }
  auto out = detail::open_output(path.string());
  out << ordered_json{{"tables", std::move(tables)}}.dump(2) << '\n';
}

void write_plot_csv(const AnalysisResult& result, const fs::path& path) {
  auto out = detail::open_output(path.string());
  out << kPlotHeader << '\n';
  for (const auto& p : result.plot) {
    out << detail::csv_join({p.system_id, to_string(p.task), to_string(p.dimension), p.unit_id,
                             detail::format_fixed(p.delta, 6)})
        << '\n';
  }
}

void write_diagnostics_json(const AnalysisResult& result, const fs::path& path) {
  ordered_json j = ordered_json::array();
  for (const auto& d : result.diagnostics)
    j.push_back(ordered_json{{"kind", d.kind}, {"message", d.message}});
  auto out = detail::open_output(path.string());
  out << j.dump(2) << '\n';
}

}  // namespace

std::vector<Task> all_tasks() {
  return {Task::Anger, Task::Fear, Task::Joy, Task::Sadness, Task::Valence};
}

std::string group_label(Dimension d, const std::string& group) {
  const bool gender = d == Dimension::Gender;
  const std::string left = gender ? "F" : "AA";
  const std::string right = gender ? "M" : "EA";
  if (group == "not_significant") return left + "=" + right + " not significant";
  if (group == "left_higher") return left + "↑–" + right + "↓ significant";
  if (group == "right_higher") return left + "↓–" + right + "↑ significant";
  return "All";
}

std::vector<GroupTable> regroup(const std::vector<SystemBiasSummary>& summaries) {
  std::map<std::pair<int, int>, std::vector<SystemBiasSummary>> buckets;
  for (const auto& s : summaries)
    buckets[{task_rank(s.task), static_cast<int>(s.dimension)}].push_back(s);
  std::vector<GroupTable> tables;
  for (const auto& [key, members] : buckets) {
    GroupTable table;
    table.task = static_cast<Task>(key.first);
    table.dimension = static_cast<Dimension>(key.second);
    table.rows = aggregate_groups(members);
    tables.push_back(std::move(table));
  }
  return tables;
}

AnalysisResult analyze_run(const RunConfig& config) {
  if (!(config.alpha > 0.0 && config.alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0,1)");
  const std::vector<Task> tasks = normalized_tasks(config.tasks);
  if (config.subset == SubsetKind::EmotionMatched)
    for (Task t : tasks)
      if (!task_emotion(t))
        throw std::invalid_argument(
            "the emotion-matched subset is undefined for the valence task; restrict --task");

  const Lexicons lex = load_run_lexicons(config.lexicon_dir);
  const Corpus corpus = generate_corpus(lex);
  const auto gender_units = build_gender_comparisons(corpus);
  const auto race_units = build_race_comparisons(corpus);

  if (config.dump_units) {
    auto out = detail::open_output(config.dump_units->string());
    dump_units_jsonl(gender_units, out);
    dump_units_jsonl(race_units, out);
  }

  AnalysisResult result;
  result.run.alpha = config.alpha;
  result.run.subset = config.subset;
  result.run.corpus_fingerprint = corpus.fingerprint();

  if (!fs::is_directory(config.predictions_dir))
    throw IoError("predictions directory not found: " + config.predictions_dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(config.predictions_dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  struct Candidate {
    std::string system_id;
    Task task;
    fs::path path;
  };
  std::vector<Candidate> candidates;
  for (const auto& path : files) {
    std::string system_id;
    Task task;
    if (!parse_prediction_filename(path.filename().string(), system_id, task)) {
      result.diagnostics.push_back(Diagnostic{
          "skipped_file", path.string() + ": expected name '{system_id}.{task}.csv'"});
      continue;
    }
    if (std::find(tasks.begin(), tasks.end(), task) == tasks.end()) continue;
    candidates.push_back(Candidate{std::move(system_id), task, path});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.task, a.system_id) < std::tie(b.task, b.system_id);
  });

  std::vector<PredictionSet> sets;
  for (const auto& c : candidates) {
    PredictionFile file = load_predictions(c.path, corpus);
    if (!file.valid()) {
      for (auto& d : file.diagnostics) result.diagnostics.push_back(std::move(d));
      result.diagnostics.push_back(Diagnostic{
          "skipped_system", c.path.string() + ": system skipped (invalid prediction file)"});
      ++result.run.systems_skipped;
      continue;
    }
    sets.push_back(std::move(file.set));
  }
  if (sets.empty()) {
    std::string detail = candidates.empty() ? "no prediction files matched the task filter"
                                            : "every prediction file failed validation";
    throw ValidationError("nothing to analyze under " + config.predictions_dir.string() + ": " +
                          detail);
  }

  result.run.systems_analyzed = sets.size();
  result.run.corrections =
      config.corrections ? *config.corrections : static_cast<int>(sets.size()) * 2;
  result.run.threshold = bonferroni_threshold(config.alpha, result.run.corrections);

  // Filtered unit lists are shared across systems; emotion-matched filtering
  // depends on the task, so cache per (dimension, task emotion).
  std::map<std::pair<int, int>, std::vector<ComparisonUnit>> unit_cache;
  auto units_for = [&](Dimension dim, Task task) -> const std::vector<ComparisonUnit>& {
    int emotion_key = -1;
    SubsetSpec spec = SubsetSpec::full();
    if (config.subset == SubsetKind::NeutralOnly) spec = SubsetSpec::neutral_only();
    if (config.subset == SubsetKind::EmotionMatched) {
      spec = SubsetSpec::emotion_matched(*task_emotion(task));
      emotion_key = static_cast<int>(*task_emotion(task));
    }
    auto key = std::make_pair(static_cast<int>(dim), emotion_key);
    auto it = unit_cache.find(key);
    if (it == unit_cache.end())
      it = unit_cache
               .emplace(key, filter_comparisons(
                                 dim == Dimension::Gender ? gender_units : race_units, spec))
               .first;
    return it->second;
  };

  for (const auto& set : sets) {
    for (Dimension dim : {Dimension::Gender, Dimension::Race}) {
      const auto& units = units_for(dim, set.task);
      const auto deltas = compute_deltas(units, set);
      const auto values = delta_values(deltas);
      const TestResult test = paired_t_test(values, result.run.threshold);
      result.summaries.push_back(
          classify_and_summarize(set.system_id, set.task, dim, values, test));
      for (const auto& d : deltas)
        result.plot.push_back(
            PlotPoint{set.system_id, set.task, dim, units[d.unit_index].unit_id, d.delta});
    }
  }

  result.group_tables = regroup(result.summaries);
  return result;
}

void write_analysis_outputs(const AnalysisResult& result, const RunConfig& config) {
  fs::create_directories(config.out_dir);
  if (config.write_csv) {
    write_summary_csv(result, config.out_dir / "summary.csv");
    write_groups_csv(result, config.out_dir / "groups.csv");
  }
  if (config.write_json) {
    write_summary_json(result, config.out_dir / "summary.json");
    write_groups_json(result, config.out_dir / "groups.json");
    write_diagnostics_json(result, config.out_dir / "diagnostics.json");
  }
  write_plot_csv(result, config.out_dir / "plot_data.csv");
}

AnalysisResult load_summary_json(const fs::path& path) {
  auto in = detail::open_input(path.string());
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  AnalysisResult result;
  try {
    const auto& run = j.at("run");
    result.run.alpha = run.at("alpha").get<double>();
    result.run.corrections = run.at("corrections").get<int>();
    result.run.threshold = run.at("threshold").get<double>();
    std::string subset = run.at("subset").get<std::string>();
    result.run.subset = subset == "neutral"          ? SubsetKind::NeutralOnly
                        : subset == "emotion-matched" ? SubsetKind::EmotionMatched
                                                       : SubsetKind::Full;
    result.run.corpus_fingerprint = run.at("corpus_fingerprint").get<std::string>();
    result.run.systems_analyzed = run.at("systems_analyzed").get<std::size_t>();
    result.run.systems_skipped = run.at("systems_skipped").get<std::size_t>();
    for (const auto& s : j.at("systems")) result.summaries.push_back(summary_from_json(s));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  result.group_tables = regroup(result.summaries);
  return result;
}

AnalysisResult run_report(const fs::path& out_dir, bool write_csv, bool write_json) {
  AnalysisResult result = load_summary_json(out_dir / "summary.json");
  if (write_csv) {
    write_summary_csv(result, out_dir / "summary.csv");
    write_groups_csv(result, out_dir / "groups.csv");
  }
  if (write_json) write_groups_json(result, out_dir / "groups.json");
  return result;
}

Corpus run_generate(const GenerateOptions& options) {
  const Lexicons lex = load_run_lexicons(options.lexicon_dir);
  Corpus corpus = generate_corpus(lex);
  validate_corpus(corpus);
  fs::create_directories(options.out_dir);
  write_corpus_csv(corpus, options.out_dir / "corpus.csv");
  if (options.dump_lexicons) dump_lexicons(lex, options.out_dir);
  return corpus;
}

void run_synth(const SynthOptions& options) {
  if (options.count < 1) throw std::invalid_argument("system count must be >= 1");
  const Lexicons lex = load_run_lexicons(options.lexicon_dir);
  const Corpus corpus = generate_corpus(lex);
  const std::vector<Task> tasks = normalized_tasks(options.tasks);
  fs::create_directories(options.out_dir);
  for (int i = 0; i < options.count; ++i) {
    std::string system_id = options.system_id;
    if (options.count > 1) {
      system_id += i < 10 ? "0" : "";
      system_id += std::to_string(i);
    }
    for (Task task : tasks) {
      BiasSpec spec = default_bias_spec();
      spec.gender_shift = options.gender_shift;
      spec.race_shift = options.race_shift;
      spec.noise_sd = options.noise_sd;
      spec.seed = mix_seed(options.seed + static_cast<std::uint64_t>(i), to_string(task));
      PredictionSet set = synth_predictions(corpus, spec);
      set.system_id = system_id;
      set.task = task;
      write_predictions_csv(set, corpus,
                            options.out_dir / (system_id + "." + to_string(task) + ".csv"));
    }
  }
}

std::vector<Diagnostic> run_validate(const ValidateOptions& options) {
  std::vector<Diagnostic> diagnostics;
  Lexicons lex;
  bool have_lexicons = false;
  try {
    lex = load_run_lexicons(options.lexicon_dir);
    have_lexicons = true;
  } catch (const std::exception& e) {
    diagnostics.push_back(Diagnostic{"lexicon_error", e.what()});
  }
  if (!have_lexicons) return diagnostics;

  Corpus corpus = generate_corpus(lex);
  try {
    validate_corpus(corpus);
    std::ostringstream buffer;
    write_corpus_csv(corpus, buffer);
    std::istringstream rewind(buffer.str());
    Corpus reread = read_corpus_csv(rewind, lex, "<generated>");
    if (!(reread == corpus) || reread.fingerprint() != corpus.fingerprint())
      diagnostics.push_back(
          Diagnostic{"corpus_integrity", "corpus round-trip changed the corpus"});
  } catch (const std::exception& e) {
    diagnostics.push_back(Diagnostic{"corpus_integrity", e.what()});
  }

  if (options.corpus_file) {
    try {
      Corpus loaded = read_corpus_csv(*options.corpus_file, lex);
      validate_corpus(loaded);
      if (loaded.fingerprint() != corpus.fingerprint())
        diagnostics.push_back(Diagnostic{
            "corpus_mismatch", options.corpus_file->string() +
                                   ": differs from regeneration (fingerprint " +
                                   loaded.fingerprint() + " vs " + corpus.fingerprint() + ")"});
    } catch (const std::exception& e) {
      diagnostics.push_back(Diagnostic{"corpus_integrity", e.what()});
    }
  }

  if (options.predictions_dir) {
    if (!fs::is_directory(*options.predictions_dir)) {
      diagnostics.push_back(Diagnostic{
          "io_error", "predictions directory not found: " + options.predictions_dir->string()});
      return diagnostics;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(*options.predictions_dir))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
      PredictionFile file = load_predictions(path, corpus);
      for (auto& d : file.diagnostics) diagnostics.push_back(std::move(d));
    }
  }
  return diagnostics;
}

}  // namespace eec

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eec/errors.hpp"
#include "eec/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::vector<eec::Task> tasks_from_flag(const std::string& flag) {
  if (flag == "all") return {};
  auto task = eec::parse_task(flag);
  if (!task) throw CLI::ValidationError("--task", "unknown task '" + flag + "'");
  return {*task};
}

eec::SubsetKind subset_from_flag(const std::string& flag) {
  if (flag == "full") return eec::SubsetKind::Full;
  if (flag == "neutral") return eec::SubsetKind::NeutralOnly;
  if (flag == "emotion-matched") return eec::SubsetKind::EmotionMatched;
  throw CLI::ValidationError("--subset", "unknown subset '" + flag + "'");
}

void formats_from_flag(const std::string& flag, bool& csv, bool& json) {
  if (flag == "csv") {
    csv = true;
    json = false;
  } else if (flag == "json") {
    csv = false;
    json = true;
  } else if (flag == "both") {
    csv = json = true;
  } else {
    throw CLI::ValidationError("--format", "unknown format '" + flag + "'");
  }
}

void print_diagnostics(const std::vector<eec::Diagnostic>& diagnostics) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& d : diagnostics)
    j.push_back(nlohmann::ordered_json{{"kind", d.kind}, {"message", d.message}});
  std::cout << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equity Evaluation Corpus generation and bias-audit toolkit"};
  app.require_subcommand(1);

  std::string lexicons_dir, predictions_dir, out_dir = "out";
  std::string task_flag = "all", subset_flag = "full", format_flag = "both";
  std::string dump_units_path;
  double alpha = 0.05;
  int corrections = 0;
  bool dump_lexicons = false;

  std::string system_id = "synth";
  int count = 1;
  std::uint64_t seed = 0;
  double gender_shift = 0.0, race_shift = 0.0, noise = 0.0;
  std::string corpus_file;

  auto add_lexicons = [&](CLI::App* cmd) {
    cmd->add_option("--lexicons", lexicons_dir, "Directory with persons/emotions/templates TSVs");
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
  };

  CLI::App* generate = app.add_subcommand("generate", "Expand the corpus and write corpus.csv");
  add_lexicons(generate);
  add_out(generate);
  generate->add_flag("--dump-lexicons", dump_lexicons,
                     "Also write the active lexicons as editable TSV files");

  CLI::App* validate = app.add_subcommand("validate", "Check lexicons, corpus and predictions");
  add_lexicons(validate);
  validate->add_option("--predictions", predictions_dir, "Directory of prediction files");
  validate->add_option("--corpus", corpus_file, "Corpus CSV to check against regeneration");

  CLI::App* analyze = app.add_subcommand("analyze", "Run the bias analysis over predictions");
  add_lexicons(analyze);
  add_out(analyze);
  analyze->add_option("--predictions", predictions_dir, "Directory of {system}.{task}.csv files")
      ->required();
  analyze->add_option("--task", task_flag, "anger|fear|joy|sadness|valence|all")
      ->capture_default_str();
  analyze->add_option("--subset", subset_flag, "full|neutral|emotion-matched")
      ->capture_default_str();
  analyze->add_option("--alpha", alpha, "Significance level")->capture_default_str();
  analyze->add_option("--corrections", corrections,
                      "Bonferroni denominator (default: prediction sets x 2)");
  analyze->add_option("--format", format_flag, "csv|json|both")->capture_default_str();
  analyze->add_option("--dump-units", dump_units_path, "Write comparison units as JSON lines");

  CLI::App* synth = app.add_subcommand("synth", "Write synthetic prediction files");
  add_lexicons(synth);
  add_out(synth);
  synth->add_option("--task", task_flag, "anger|fear|joy|sadness|valence|all")
      ->capture_default_str();
  synth->add_option("--system-id", system_id, "System id stem")->capture_default_str();
  synth->add_option("--count", count, "Number of systems (suffixes 00, 01, ...)")
      ->capture_default_str();
  synth->add_option("--seed", seed, "Base seed")->capture_default_str();
  synth->add_option("--gender-shift", gender_shift, "Added to female-term sentence scores")
      ->capture_default_str();
  synth->add_option("--race-shift", race_shift, "Added to African American name sentence scores")
      ->capture_default_str();
  synth->add_option("--noise", noise, "Gaussian noise standard deviation")->capture_default_str();

  CLI::App* report = app.add_subcommand("report", "Re-render tables from a saved summary.json");
  add_out(report);
  report->add_option("--format", format_flag, "csv|json|both")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      eec::GenerateOptions options;
      if (!lexicons_dir.empty()) options.lexicon_dir = lexicons_dir;
      options.out_dir = out_dir;
      options.dump_lexicons = dump_lexicons;
      eec::Corpus corpus = eec::run_generate(options);
      std::cout << "wrote " << (options.out_dir / "corpus.csv").string() << " ("
                << corpus.records.size() << " sentences, fingerprint " << corpus.fingerprint()
                << ")\n";
      return kExitOk;
    }

    if (validate->parsed()) {
      eec::ValidateOptions options;
      if (!lexicons_dir.empty()) options.lexicon_dir = lexicons_dir;
      if (!predictions_dir.empty()) options.predictions_dir = predictions_dir;
      if (!corpus_file.empty()) options.corpus_file = corpus_file;
      auto diagnostics = eec::run_validate(options);
      print_diagnostics(diagnostics);
      return diagnostics.empty() ? kExitOk : kExitValidation;
    }

    if (analyze->parsed()) {
      eec::RunConfig config;
      if (!lexicons_dir.empty()) config.lexicon_dir = lexicons_dir;
      config.predictions_dir = predictions_dir;
      config.tasks = tasks_from_flag(task_flag);
      config.subset = subset_from_flag(subset_flag);
      config.alpha = alpha;
      if (corrections > 0) config.corrections = corrections;
      config.out_dir = out_dir;
      formats_from_flag(format_flag, config.write_csv, config.write_json);
      if (!dump_units_path.empty()) config.dump_units = dump_units_path;

      eec::AnalysisResult result = eec::analyze_run(config);
      eec::write_analysis_outputs(result, config);
      std::cout << "alpha " << result.run.alpha << ", corrections " << result.run.corrections
                << ", threshold " << result.run.threshold << ", subset "
                << to_string(result.run.subset) << "\n"
                << "analyzed " << result.run.systems_analyzed << " prediction set(s), skipped "
                << result.run.systems_skipped << "\n"
                << "wrote report files under " << config.out_dir.string() << "\n";
      for (const auto& d : result.diagnostics)
        std::cerr << d.kind << ": " << d.message << "\n";
      return kExitOk;
    }

    if (synth->parsed()) {
      eec::SynthOptions options;
      if (!lexicons_dir.empty()) options.lexicon_dir = lexicons_dir;
      options.out_dir = out_dir;
      options.tasks = tasks_from_flag(task_flag);
      options.system_id = system_id;
      options.count = count;
      options.seed = seed;
      options.gender_shift = gender_shift;
      options.race_shift = race_shift;
      options.noise_sd = noise;
      eec::run_synth(options);
      std::cout << "wrote synthetic prediction files under " << options.out_dir.string() << "\n";
      return kExitOk;
    }

    if (report->parsed()) {
      bool write_csv = true, write_json = true;
      formats_from_flag(format_flag, write_csv, write_json);
      eec::AnalysisResult result = eec::run_report(out_dir, write_csv, write_json);
      std::cout << "re-rendered tables for " << result.run.systems_analyzed
                << " prediction set(s) under " << out_dir << "\n";
      return kExitOk;
    }
  } catch (const eec::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

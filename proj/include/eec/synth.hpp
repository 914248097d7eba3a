#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "eec/corpus.hpp"
#include "eec/predictions.hpp"
#include "eec/types.hpp"

namespace eec {

// A scorer with known, injectable bias. Scores are
//   base(sentence) + gender_shift [female term] + race_shift [AA name]
//   + N(0, noise_sd), clamped to [0, 1].
// Noise is drawn per sentence in corpus order from mt19937_64 via Box-Muller,
// so a given (corpus, spec) always produces the same prediction set.
struct BiasSpec {
  double gender_shift = 0.0;
  double race_shift = 0.0;
  double noise_sd = 0.0;
  std::map<std::pair<Emotion, EmotionRegister>, double> base_by_emotion;
  double neutral_base = 0.5;
  std::uint64_t seed = 0;
};

// Bases spread over [0.35, 0.70] so small shifts never clamp.
BiasSpec default_bias_spec();

PredictionSet synth_predictions(const Corpus& corpus, const BiasSpec& spec);

// Stable per-task stream split: hashes the task name into the seed.
std::uint64_t mix_seed(std::uint64_t seed, const std::string& label);

}  // namespace eec

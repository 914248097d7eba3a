#include "eec/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "text_io.hpp"

namespace eec {

namespace {

// Box-Muller on raw mt19937_64 draws. std::normal_distribution is
// implementation-defined, this is not.
class SeededGaussian {
public:
  explicit SeededGaussian(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    double u1 = to_unit_open(engine_());   // (0, 1]
    double u2 = to_unit_closed(engine_()); // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

private:
  static double to_unit_closed(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
  }
  static double to_unit_open(std::uint64_t x) { return 1.0 - to_unit_closed(x); }

  std::mt19937_64 engine_;
};

}  // namespace

BiasSpec default_bias_spec() {
  BiasSpec spec;
  using R = EmotionRegister;
  spec.base_by_emotion = {
      {{Emotion::Anger, R::State}, 0.60},  {{Emotion::Anger, R::Situation}, 0.55},
      {{Emotion::Fear, R::State}, 0.55},   {{Emotion::Fear, R::Situation}, 0.50},
      {{Emotion::Joy, R::State}, 0.70},    {{Emotion::Joy, R::Situation}, 0.65},
      {{Emotion::Sadness, R::State}, 0.45},{{Emotion::Sadness, R::Situation}, 0.40},
  };
  spec.neutral_base = 0.35;
  return spec;
}

PredictionSet synth_predictions(const Corpus& corpus, const BiasSpec& spec) {
  if (spec.noise_sd < 0.0) throw std::invalid_argument("noise_sd must be >= 0");
  if (!(spec.neutral_base >= 0.0 && spec.neutral_base <= 1.0))
    throw std::invalid_argument("neutral_base must lie in [0,1]");
  for (const auto& [key, base] : spec.base_by_emotion)
    if (!(base >= 0.0 && base <= 1.0))
      throw std::invalid_argument("emotion base must lie in [0,1]");

  std::map<int, EmotionRegister> register_by_template;
  for (const auto& t : corpus.templates) register_by_template[t.id] = t.emotion_register;

  SeededGaussian gauss(spec.seed);
  PredictionSet set;
  set.scores.reserve(corpus.records.size());
  for (const auto& r : corpus.records) {
    double score;
    if (r.emotion) {
      auto it = spec.base_by_emotion.find({*r.emotion, register_by_template.at(r.template_id)});
      score = it != spec.base_by_emotion.end() ? it->second : spec.neutral_base;
    } else {
      score = spec.neutral_base;
    }
    if (r.gender == Gender::Female) score += spec.gender_shift;
    if (r.race == Race::AfricanAmerican) score += spec.race_shift;
    if (spec.noise_sd > 0.0) score += spec.noise_sd * gauss();
    set.scores.emplace(r.id, std::clamp(score, 0.0, 1.0));
  }
  return set;
}

std::uint64_t mix_seed(std::uint64_t seed, const std::string& label) {
  return seed ^ detail::fnv1a64(label);
}

}  // namespace eec

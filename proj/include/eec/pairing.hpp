#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eec/corpus.hpp"
#include "eec/types.hpp"

namespace eec {

// One left-vs-right score comparison within a (template, emotion word)
// instantiation. Left is the female side for gender and the African American
// side for race. NounPhrasePair units hold one sentence id per side;
// NameAverage units hold every given-name sentence of the side.
struct ComparisonUnit {
  Dimension dimension = Dimension::Gender;
  int template_id = 0;
  int emotion_index = -1;
  std::string emotion_surface;  // empty for neutral instantiations
  std::optional<Emotion> emotion;
  UnitKind kind = UnitKind::NameAverage;
  std::string unit_id;
  std::vector<std::string> left_ids;
  std::vector<std::string> right_ids;

  bool operator==(const ComparisonUnit&) const = default;
};

// Per instantiation: one unit per noun-phrase pair plus one NameAverage unit.
// Throws IntegrityError naming the orphan id if a counterpart sentence is
// missing, or if an instantiation has no given names on one side.
std::vector<ComparisonUnit> build_gender_comparisons(const Corpus& corpus);

// Per instantiation: a single NameAverage unit, African American names on the
// left, European American on the right.
std::vector<ComparisonUnit> build_race_comparisons(const Corpus& corpus);

struct SubsetSpec {
  SubsetKind kind = SubsetKind::Full;
  std::optional<Emotion> matched_emotion;  // required for EmotionMatched

  static SubsetSpec full() { return {SubsetKind::Full, std::nullopt}; }
  static SubsetSpec neutral_only() { return {SubsetKind::NeutralOnly, std::nullopt}; }
  static SubsetSpec emotion_matched(Emotion e) { return {SubsetKind::EmotionMatched, e}; }
};

// Never creates units; idempotent. NeutralOnly keeps units of templates with
// no emotion slot; EmotionMatched keeps units whose word carries the task's
// emotion (and therefore drops neutral units).
std::vector<ComparisonUnit> filter_comparisons(std::vector<ComparisonUnit> units,
                                               const SubsetSpec& subset);

// Debug dump, one JSON object per line.
void dump_units_jsonl(std::span<const ComparisonUnit> units, std::ostream& out);

}  // namespace eec

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "eec/errors.hpp"
#include "eec/pairing.hpp"

using namespace eec;

namespace {

// Brute-force enumeration straight over the records: counts how many
// comparison units each dimension must produce, without any of the pairing
// module's grouping machinery.
std::size_t brute_force_gender_units(const Corpus& corpus) {
  std::set<std::pair<int, int>> instantiations;
  for (const auto& r : corpus.records) instantiations.insert({r.template_id, r.emotion_index});
  std::size_t units = 0;
  for (const auto& [template_id, emotion_index] : instantiations) {
    std::set<std::string> female_pairs;
    bool any_female_name = false, any_male_name = false;
    for (const auto& r : corpus.records) {
      if (r.template_id != template_id || r.emotion_index != emotion_index) continue;
      const PersonTerm& p = corpus.persons[r.person_index];
      if (p.kind == PersonKind::NounPhrase && p.gender == Gender::Female)
        female_pairs.insert(p.pair_id);
      if (p.kind == PersonKind::GivenName && p.gender == Gender::Female) any_female_name = true;
      if (p.kind == PersonKind::GivenName && p.gender == Gender::Male) any_male_name = true;
    }
    units += female_pairs.size() + ((any_female_name && any_male_name) ? 1 : 0);
  }
  return units;
}

std::size_t brute_force_race_units(const Corpus& corpus) {
  std::set<std::pair<int, int>> instantiations;
  for (const auto& r : corpus.records)
    if (r.race != Race::Unspecified) instantiations.insert({r.template_id, r.emotion_index});
  return instantiations.size();
}

Corpus default_corpus() { return generate_corpus(default_lexicons()); }

}  // namespace

TEST_CASE("gender pairing yields 1,584 units on the default corpus") {
  Corpus corpus = default_corpus();
  auto units = build_gender_comparisons(corpus);
  CHECK(units.size() == 1584);
  CHECK(units.size() == 11 * (20 * 7 + 4));
  CHECK(units.size() == brute_force_gender_units(corpus));

  std::size_t noun_pairs = 0, name_averages = 0;
  for (const auto& u : units) {
    CHECK(u.dimension == Dimension::Gender);
    if (u.kind == UnitKind::NounPhrasePair) {
      ++noun_pairs;
      CHECK(u.left_ids.size() == 1);
      CHECK(u.right_ids.size() == 1);
    } else {
      ++name_averages;
      CHECK(u.left_ids.size() == 20);
      CHECK(u.right_ids.size() == 20);
    }
    // Sides are disjoint.
    std::set<std::string> left(u.left_ids.begin(), u.left_ids.end());
    for (const auto& id : u.right_ids) CHECK(!left.count(id));
  }
  CHECK(noun_pairs == 10 * 144);
  CHECK(name_averages == 144);
}

TEST_CASE("race pairing yields 144 name-average units") {
  Corpus corpus = default_corpus();
  auto units = build_race_comparisons(corpus);
  CHECK(units.size() == 144);
  CHECK(units.size() == brute_force_race_units(corpus));
  for (const auto& u : units) {
    CHECK(u.dimension == Dimension::Race);
    CHECK(u.kind == UnitKind::NameAverage);
    CHECK(u.left_ids.size() == 20);
    CHECK(u.right_ids.size() == 20);
  }
}

TEST_CASE("every unit id exists in the corpus and sides split by the attribute") {
  Corpus corpus = default_corpus();
  std::map<std::string, const SentenceRecord*> by_id;
  for (const auto& r : corpus.records) by_id[r.id] = &r;

  for (const auto& u : build_gender_comparisons(corpus)) {
    for (const auto& id : u.left_ids) {
      REQUIRE(by_id.count(id));
      CHECK(by_id.at(id)->gender == Gender::Female);
      CHECK(by_id.at(id)->template_id == u.template_id);
      CHECK(by_id.at(id)->emotion_index == u.emotion_index);
    }
    for (const auto& id : u.right_ids) {
      REQUIRE(by_id.count(id));
      CHECK(by_id.at(id)->gender == Gender::Male);
    }
  }
  for (const auto& u : build_race_comparisons(corpus)) {
    for (const auto& id : u.left_ids) CHECK(by_id.at(id)->race == Race::AfricanAmerican);
    for (const auto& id : u.right_ids) CHECK(by_id.at(id)->race == Race::EuropeanAmerican);
    // The two sides partition the instantiation's 40 given-name sentences.
    std::size_t named = 0;
    for (const auto& r : corpus.records)
      if (r.template_id == u.template_id && r.emotion_index == u.emotion_index &&
          r.race != Race::Unspecified)
        ++named;
    CHECK(named == u.left_ids.size() + u.right_ids.size());
  }
}

TEST_CASE("a single instantiation contributes eleven gender units and one race unit") {
  Lexicons lex = default_lexicons();
  // Restrict to template 7 and the single word "heartbreaking".
  std::vector<SentenceTemplate> keep;
  for (const auto& t : lex.templates)
    if (t.id == 7) keep.push_back(t);
  lex.templates = keep;
  std::vector<EmotionWord> words;
  for (const auto& w : lex.emotions)
    if (w.surface == "heartbreaking") words.push_back(w);
  lex.emotions = words;
  validate_lexicons(lex);
  Corpus corpus = generate_corpus(lex);
  CHECK(corpus.records.size() == 60);
  CHECK(build_gender_comparisons(corpus).size() == 11);
  CHECK(build_race_comparisons(corpus).size() == 1);
}

TEST_CASE("neutral templates alone contribute 44 gender and 4 race units") {
  Lexicons lex = default_lexicons();
  std::vector<SentenceTemplate> keep;
  for (const auto& t : lex.templates)
    if (t.emotion_register == EmotionRegister::None) keep.push_back(t);
  lex.templates = keep;
  Corpus corpus = generate_corpus(lex);
  CHECK(corpus.records.size() == 240);
  CHECK(build_gender_comparisons(corpus).size() == 44);
  CHECK(build_race_comparisons(corpus).size() == 4);
}

TEST_CASE("subset filters select the documented unit counts") {
  Corpus corpus = default_corpus();
  auto units = build_gender_comparisons(corpus);

  auto neutral = filter_comparisons(units, SubsetSpec::neutral_only());
  CHECK(neutral.size() == 44);
  for (const auto& u : neutral) CHECK(u.emotion_index == -1);

  auto anger = filter_comparisons(units, SubsetSpec::emotion_matched(Emotion::Anger));
  CHECK(anger.size() == 385);  // 11 units x 5 anger words x 7 templates
  for (const auto& u : anger) CHECK(u.emotion == Emotion::Anger);

  auto full = filter_comparisons(units, SubsetSpec::full());
  CHECK(full == units);

  SUBCASE("filtering is idempotent") {
    CHECK(filter_comparisons(neutral, SubsetSpec::neutral_only()) == neutral);
    CHECK(filter_comparisons(anger, SubsetSpec::emotion_matched(Emotion::Anger)) == anger);
  }
  SUBCASE("emotion-matched without an emotion is a contract error") {
    CHECK_THROWS_AS(filter_comparisons(units, SubsetSpec{SubsetKind::EmotionMatched, {}}),
                    std::invalid_argument);
  }
}

TEST_CASE("a missing counterpart sentence names the orphan id") {
  Corpus corpus = default_corpus();
  // Drop "My son feels devastated." style counterparts: erase every male
  // 'child' pair sentence from template 1.
  std::erase_if(corpus.records, [&corpus](const SentenceRecord& r) {
    const PersonTerm& p = corpus.persons[r.person_index];
    return r.template_id == 1 && p.pair_id == "child" && p.gender == Gender::Male;
  });
  CHECK_THROWS_WITH_AS(build_gender_comparisons(corpus),
                       doctest::Contains("missing counterpart"), IntegrityError);
}

TEST_CASE("unit dump is one JSON object per line") {
  Corpus corpus = default_corpus();
  auto units = build_race_comparisons(corpus);
  std::ostringstream out;
  dump_units_jsonl(std::span(units.data(), 2), out);
  std::istringstream lines(out.str());
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    ++n;
    CHECK(line.front() == '{');
    CHECK(line.find("\"left_ids\"") != std::string::npos);
  }
  CHECK(n == 2);
}

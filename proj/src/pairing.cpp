#include "eec/pairing.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "eec/errors.hpp"

namespace eec {

namespace {

struct Instantiation {
  int template_id = 0;
  int emotion_index = -1;
  std::string emotion_surface;
  std::optional<Emotion> emotion;
  std::vector<const SentenceRecord*> records;  // corpus order
};

// Groups corpus records by (template, emotion word), preserving corpus order.
std::vector<Instantiation> collect_instantiations(const Corpus& corpus) {
  std::map<std::pair<int, int>, std::size_t> index;
  std::vector<Instantiation> insts;
  for (const auto& r : corpus.records) {
    auto key = std::make_pair(r.template_id, r.emotion_index);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, insts.size()).first;
      insts.push_back(Instantiation{r.template_id, r.emotion_index, r.emotion_surface, r.emotion, {}});
    }
    insts[it->second].records.push_back(&r);
  }
  std::sort(insts.begin(), insts.end(), [](const Instantiation& a, const Instantiation& b) {
    return std::tie(a.template_id, a.emotion_index) < std::tie(b.template_id, b.emotion_index);
  });
  return insts;
}

std::string two_digits(int n) {
  std::string s = std::to_string(n);
  return s.size() < 2 ? "0" + s : s;
}

std::string unit_id_for(const Instantiation& inst, const std::string& tail) {
  std::string id = "t" + two_digits(inst.template_id) + "-e";
  id += inst.emotion_index < 0 ? "--" : two_digits(inst.emotion_index);
  return id + "-" + tail;
}

ComparisonUnit make_unit(const Instantiation& inst, Dimension dim, UnitKind kind,
                         const std::string& tail, std::vector<std::string> left,
                         std::vector<std::string> right) {
  ComparisonUnit u;
  u.dimension = dim;
  u.template_id = inst.template_id;
  u.emotion_index = inst.emotion_index;
  u.emotion_surface = inst.emotion_surface;
  u.emotion = inst.emotion;
  u.kind = kind;
  u.unit_id = unit_id_for(inst, tail);
  u.left_ids = std::move(left);
  u.right_ids = std::move(right);
  return u;
}

}  // namespace

std::vector<ComparisonUnit> build_gender_comparisons(const Corpus& corpus) {
  std::vector<ComparisonUnit> units;
  for (const auto& inst : collect_instantiations(corpus)) {
    // Noun-phrase units, ordered by the female term's lexicon position.
    std::map<std::string, std::pair<const SentenceRecord*, const SentenceRecord*>> np_pairs;
    std::vector<std::string> pair_order;
    std::vector<std::string> female_names, male_names;
    for (const auto* r : inst.records) {
      const PersonTerm& person = corpus.persons[r->person_index];
      if (person.kind == PersonKind::GivenName) {
        (person.gender == Gender::Female ? female_names : male_names).push_back(r->id);
        continue;
      }
      auto [it, fresh] = np_pairs.try_emplace(person.pair_id);
      if (fresh) pair_order.push_back(person.pair_id);
      (person.gender == Gender::Female ? it->second.first : it->second.second) = r;
    }
    std::sort(pair_order.begin(), pair_order.end(),
              [&](const std::string& a, const std::string& b) {
                auto female_index = [&](const std::string& pid) {
                  const auto& [f, m] = np_pairs.at(pid);
                  return f ? f->person_index : m->person_index;
                };
                return female_index(a) < female_index(b);
              });
    int np = 0;
    for (const auto& pid : pair_order) {
      const auto& [female, male] = np_pairs.at(pid);
      if (!female || !male) {
        const SentenceRecord* present = female ? female : male;
        throw IntegrityError("missing counterpart sentence for '" + present->id +
                             "' (noun-phrase pair '" + pid + "')");
      }
      units.push_back(make_unit(inst, Dimension::Gender, UnitKind::NounPhrasePair,
                                "np" + two_digits(np++), {female->id}, {male->id}));
    }
    if (female_names.empty() || male_names.empty())
      throw IntegrityError("instantiation t" + std::to_string(inst.template_id) +
                           " has no given-name sentences for one gender");
    units.push_back(make_unit(inst, Dimension::Gender, UnitKind::NameAverage, "names",
                              female_names, male_names));
  }
  return units;
}

std::vector<ComparisonUnit> build_race_comparisons(const Corpus& corpus) {
  std::vector<ComparisonUnit> units;
  for (const auto& inst : collect_instantiations(corpus)) {
    std::vector<std::string> aa, ea;
    for (const auto* r : inst.records) {
      if (corpus.persons[r->person_index].kind != PersonKind::GivenName) continue;
      if (r->race == Race::AfricanAmerican) aa.push_back(r->id);
      else if (r->race == Race::EuropeanAmerican) ea.push_back(r->id);
    }
    if (aa.empty() || ea.empty())
      throw IntegrityError("instantiation t" + std::to_string(inst.template_id) +
                           " has no given-name sentences for one race");
    units.push_back(
        make_unit(inst, Dimension::Race, UnitKind::NameAverage, "names", aa, ea));
  }
  return units;
}

std::vector<ComparisonUnit> filter_comparisons(std::vector<ComparisonUnit> units,
                                               const SubsetSpec& subset) {
  switch (subset.kind) {
    case SubsetKind::Full:
      return units;
    case SubsetKind::NeutralOnly:
      std::erase_if(units, [](const ComparisonUnit& u) { return u.emotion_index >= 0; });
      return units;
    case SubsetKind::EmotionMatched: {
      if (!subset.matched_emotion)
        throw std::invalid_argument(
            "emotion-matched subset needs a task emotion (valence has none)");
      Emotion wanted = *subset.matched_emotion;
      std::erase_if(units, [wanted](const ComparisonUnit& u) { return u.emotion != wanted; });
      return units;
    }
  }
  return units;
}

void dump_units_jsonl(std::span<const ComparisonUnit> units, std::ostream& out) {
  for (const auto& u : units) {
    nlohmann::ordered_json j;
    j["unit_id"] = u.unit_id;
    j["dimension"] = to_string(u.dimension);
    j["template"] = u.template_id;
    j["emotion_word"] = u.emotion_surface.empty() ? nlohmann::json() : nlohmann::json(u.emotion_surface);
    j["kind"] = to_string(u.kind);
    j["left_ids"] = u.left_ids;
    j["right_ids"] = u.right_ids;
    out << j.dump() << '\n';
  }
}

}  // namespace eec

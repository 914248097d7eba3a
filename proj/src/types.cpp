#include "eec/types.hpp"

namespace eec {

std::string to_string(Gender g) {
  return g == Gender::Female ? "female" : "male";
}

std::string to_string(Race r) {
  switch (r) {
    case Race::AfricanAmerican: return "african-american";
    case Race::EuropeanAmerican: return "european-american";
    default: return "unspecified";
  }
}

std::string to_string(PersonKind k) {
  return k == PersonKind::GivenName ? "given-name" : "noun-phrase";
}

std::string to_string(Emotion e) {
  switch (e) {
    case Emotion::Anger: return "anger";
    case Emotion::Fear: return "fear";
    case Emotion::Joy: return "joy";
    default: return "sadness";
  }
}

std::string to_string(EmotionRegister r) {
  switch (r) {
    case EmotionRegister::State: return "state";
    case EmotionRegister::Situation: return "situation";
    default: return "none";
  }
}

std::string to_string(PersonRole r) {
  return r == PersonRole::Subject ? "subject" : "object";
}

std::string to_string(Task t) {
  switch (t) {
    case Task::Anger: return "anger";
    case Task::Fear: return "fear";
    case Task::Joy: return "joy";
    case Task::Sadness: return "sadness";
    default: return "valence";
  }
}

std::string to_string(Dimension d) {
  return d == Dimension::Gender ? "gender" : "race";
}

std::string to_string(UnitKind k) {
  return k == UnitKind::NounPhrasePair ? "noun-phrase-pair" : "name-average";
}

std::string to_string(BiasGroup g) {
  switch (g) {
    case BiasGroup::NotSignificant: return "not_significant";
    case BiasGroup::LeftHigher: return "left_higher";
    default: return "right_higher";
  }
}

std::string to_string(SubsetKind s) {
  switch (s) {
    case SubsetKind::Full: return "full";
    case SubsetKind::NeutralOnly: return "neutral";
    default: return "emotion-matched";
  }
}

std::optional<Gender> parse_gender(const std::string& s) {
  if (s == "female") return Gender::Female;
  if (s == "male") return Gender::Male;
  return std::nullopt;
}

std::optional<Race> parse_race(const std::string& s) {
  if (s == "african-american") return Race::AfricanAmerican;
  if (s == "european-american") return Race::EuropeanAmerican;
  if (s == "unspecified" || s.empty()) return Race::Unspecified;
  return std::nullopt;
}

std::optional<PersonKind> parse_person_kind(const std::string& s) {
  if (s == "given-name") return PersonKind::GivenName;
  if (s == "noun-phrase") return PersonKind::NounPhrase;
  return std::nullopt;
}

std::optional<Emotion> parse_emotion(const std::string& s) {
  if (s == "anger") return Emotion::Anger;
  if (s == "fear") return Emotion::Fear;
  if (s == "joy") return Emotion::Joy;
  if (s == "sadness") return Emotion::Sadness;
  return std::nullopt;
}

std::optional<EmotionRegister> parse_register(const std::string& s) {
  if (s == "state") return EmotionRegister::State;
  if (s == "situation") return EmotionRegister::Situation;
  if (s == "none") return EmotionRegister::None;
  return std::nullopt;
}

std::optional<PersonRole> parse_person_role(const std::string& s) {
  if (s == "subject") return PersonRole::Subject;
  if (s == "object") return PersonRole::Object;
  return std::nullopt;
}

std::optional<Task> parse_task(const std::string& s) {
  if (s == "anger") return Task::Anger;
  if (s == "fear") return Task::Fear;
  if (s == "joy") return Task::Joy;
  if (s == "sadness") return Task::Sadness;
  if (s == "valence") return Task::Valence;
  return std::nullopt;
}

std::optional<BiasGroup> parse_bias_group(const std::string& s) {
  if (s == "not_significant") return BiasGroup::NotSignificant;
  if (s == "left_higher") return BiasGroup::LeftHigher;
  if (s == "right_higher") return BiasGroup::RightHigher;
  return std::nullopt;
}

std::optional<Emotion> task_emotion(Task t) {
  switch (t) {
    case Task::Anger: return Emotion::Anger;
    case Task::Fear: return Emotion::Fear;
    case Task::Joy: return Emotion::Joy;
    case Task::Sadness: return Emotion::Sadness;
    default: return std::nullopt;
  }
}

}  // namespace eec

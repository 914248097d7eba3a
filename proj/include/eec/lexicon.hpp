#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eec/types.hpp"

namespace eec {

// A name or noun phrase that fills a template's person slot.
struct PersonTerm {
  std::string surface;
  std::string subject_form;
  std::string object_form;
  Gender gender = Gender::Female;
  Race race = Race::Unspecified;
  PersonKind kind = PersonKind::GivenName;
  std::string pair_id;  // links the two noun phrases of a female/male pair; empty for names

  bool operator==(const PersonTerm&) const = default;
};

struct EmotionWord {
  std::string surface;
  Emotion emotion = Emotion::Anger;
  EmotionRegister reg = EmotionRegister::State;

  bool operator==(const EmotionWord&) const = default;
};

// A sentence frame. Patterns use {person}, {emotion}, {reflexive} and {article}
// placeholders; the flags must agree with the placeholders present.
struct SentenceTemplate {
  int id = 0;
  std::string pattern;
  EmotionRegister emotion_register = EmotionRegister::None;
  PersonRole person_role = PersonRole::Subject;
  bool has_reflexive = false;
  bool has_article_before_emotion = false;

  bool operator==(const SentenceTemplate&) const = default;
};

struct Lexicons {
  std::vector<PersonTerm> persons;
  std::vector<EmotionWord> emotions;
  std::vector<SentenceTemplate> templates;

  std::vector<EmotionWord> words_of_register(EmotionRegister reg) const;

  bool operator==(const Lexicons&) const = default;
};

// Paths to the three tab-separated lexicon files. Absent entries fall back to
// the embedded defaults.
struct LexiconPaths {
  std::optional<std::filesystem::path> persons;
  std::optional<std::filesystem::path> emotions;
  std::optional<std::filesystem::path> templates;

  // persons.tsv / emotions.tsv / templates.tsv inside dir, each optional.
  static LexiconPaths in_directory(const std::filesystem::path& dir);
};

// The lists used by the study: 40 given names, 10 noun-phrase pairs,
// 40 emotion words, 11 templates.
Lexicons default_lexicons();

// Loads (or defaults) and validates. Throws ParseError with a line number on
// malformed input, ValidationError naming the broken rule otherwise.
Lexicons load_lexicons(const LexiconPaths& paths = {});

void validate_lexicons(const Lexicons& lex);

std::vector<PersonTerm> parse_person_terms(std::istream& in, const std::string& filename);
std::vector<EmotionWord> parse_emotion_words(std::istream& in, const std::string& filename);
std::vector<SentenceTemplate> parse_templates(std::istream& in, const std::string& filename);

void write_person_terms(const std::vector<PersonTerm>& terms, std::ostream& out);
void write_emotion_words(const std::vector<EmotionWord>& words, std::ostream& out);
void write_templates(const std::vector<SentenceTemplate>& templates, std::ostream& out);

// Writes persons.tsv, emotions.tsv and templates.tsv into dir.
void dump_lexicons(const Lexicons& lex, const std::filesystem::path& dir);

}  // namespace eec

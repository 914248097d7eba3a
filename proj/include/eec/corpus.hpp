#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eec/lexicon.hpp"
#include "eec/types.hpp"

namespace eec {

// One fully expanded sentence and the coordinates that produced it.
// person_index addresses Corpus::persons; emotion_index addresses the word
// list of the template's register (-1 when the template has no emotion slot).
struct SentenceRecord {
  std::string id;
  std::string text;
  int template_id = 0;
  int person_index = 0;
  int emotion_index = -1;
  std::string person_surface;
  std::string emotion_surface;
  std::optional<Emotion> emotion;
  Gender gender = Gender::Female;
  Race race = Race::Unspecified;

  bool operator==(const SentenceRecord&) const = default;
};

struct Corpus {
  std::vector<PersonTerm> persons;          // generation order
  std::vector<EmotionWord> state_words;     // register order
  std::vector<EmotionWord> situation_words;
  std::vector<SentenceTemplate> templates;
  std::vector<SentenceRecord> records;

  // FNV-1a64 of the canonical CSV serialization; equal corpora hash equal.
  std::string fingerprint() const;

  const std::vector<EmotionWord>& words_for(EmotionRegister reg) const;

  bool operator==(const Corpus&) const = default;
};

std::string sentence_id(int template_id, int person_index, int emotion_index);

// Fills the template's slots: the person's subject or object form per the
// template role, herself/himself per the person's gender, a/an per the
// emotion word's initial letter, then capitalizes the first character.
// The emotion word is required exactly when the template has an emotion slot,
// and its register must match; violations throw std::invalid_argument.
std::string expand_template(const SentenceTemplate& tmpl, const PersonTerm& person,
                            const EmotionWord* emotion_word);

// Cartesian expansion in deterministic order: template id, then person
// lexicon order, then emotion lexicon order within the template's register.
Corpus generate_corpus(const Lexicons& lex);

void write_corpus_csv(const Corpus& corpus, std::ostream& out);
void write_corpus_csv(const Corpus& corpus, const std::filesystem::path& path);

// Re-reads an emitted corpus, cross-checking every row against the lexicons;
// the result compares equal to the corpus that was written.
Corpus read_corpus_csv(std::istream& in, const Lexicons& lex, const std::string& filename);
Corpus read_corpus_csv(const std::filesystem::path& path, const Lexicons& lex);

// Count law and structural checks (unique ids, per-template totals).
void validate_corpus(const Corpus& corpus);

}  // namespace eec

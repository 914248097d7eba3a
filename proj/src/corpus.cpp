#include "eec/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "eec/errors.hpp"
#include "text_io.hpp"

namespace eec {

namespace {

constexpr const char* kCorpusHeader = "ID,Sentence,Template,Person,Gender,Race,EmotionWord,Emotion";

bool starts_with_vowel_letter(const std::string& word) {
  if (word.empty()) return false;
  char c = static_cast<char>(std::tolower(static_cast<unsigned char>(word[0])));
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

void replace_once(std::string& text, const std::string& token, const std::string& value) {
  auto pos = text.find(token);
  if (pos != std::string::npos) text.replace(pos, token.size(), value);
}

std::string two_digits(int n) {
  std::string s = std::to_string(n);
  return s.size() < 2 ? "0" + s : s;
}

}  // namespace

std::string sentence_id(int template_id, int person_index, int emotion_index) {
  std::string id = "t" + two_digits(template_id) + "-p" + two_digits(person_index) + "-e";
  id += emotion_index < 0 ? "--" : two_digits(emotion_index);
  return id;
}

std::string expand_template(const SentenceTemplate& tmpl, const PersonTerm& person,
                            const EmotionWord* emotion_word) {
  const bool wants_emotion = tmpl.emotion_register != EmotionRegister::None;
  if (wants_emotion && emotion_word == nullptr)
    throw std::invalid_argument("template " + std::to_string(tmpl.id) +
                                " requires an emotion word");
  if (!wants_emotion && emotion_word != nullptr)
    throw std::invalid_argument("template " + std::to_string(tmpl.id) +
                                " takes no emotion word");
  if (wants_emotion && emotion_word->reg != tmpl.emotion_register)
    throw std::invalid_argument("emotion word '" + emotion_word->surface +
                                "' register does not match template " + std::to_string(tmpl.id));

  std::string text = tmpl.pattern;
  replace_once(text, "{person}",
               tmpl.person_role == PersonRole::Subject ? person.subject_form : person.object_form);
  if (tmpl.has_reflexive)
    replace_once(text, "{reflexive}", person.gender == Gender::Female ? "herself" : "himself");
  if (wants_emotion) {
    if (tmpl.has_article_before_emotion)
      replace_once(text, "{article}", starts_with_vowel_letter(emotion_word->surface) ? "an" : "a");
    replace_once(text, "{emotion}", emotion_word->surface);
  }
  if (!text.empty())
    text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  while (!text.empty() && text.back() == '.') text.pop_back();
  text += '.';
  return text;
}

const std::vector<EmotionWord>& Corpus::words_for(EmotionRegister reg) const {
  static const std::vector<EmotionWord> empty;
  switch (reg) {
    case EmotionRegister::State: return state_words;
    case EmotionRegister::Situation: return situation_words;
    default: return empty;
  }
}

Corpus generate_corpus(const Lexicons& lex) {
  Corpus corpus;
  corpus.persons = lex.persons;
  corpus.state_words = lex.words_of_register(EmotionRegister::State);
  corpus.situation_words = lex.words_of_register(EmotionRegister::Situation);
  corpus.templates = lex.templates;

  std::vector<const SentenceTemplate*> order;
  for (const auto& t : lex.templates) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](const SentenceTemplate* a, const SentenceTemplate* b) { return a->id < b->id; });

  for (const SentenceTemplate* tmpl : order) {
    const auto& words = corpus.words_for(tmpl->emotion_register);
    for (std::size_t p = 0; p < corpus.persons.size(); ++p) {
      const PersonTerm& person = corpus.persons[p];
      auto emit = [&](int emotion_index, const EmotionWord* word) {
        SentenceRecord rec;
        rec.id = sentence_id(tmpl->id, static_cast<int>(p), emotion_index);
        rec.text = expand_template(*tmpl, person, word);
        rec.template_id = tmpl->id;
        rec.person_index = static_cast<int>(p);
        rec.emotion_index = emotion_index;
        rec.person_surface = person.surface;
        if (word) {
          rec.emotion_surface = word->surface;
          rec.emotion = word->emotion;
        }
        rec.gender = person.gender;
        rec.race = person.race;
        corpus.records.push_back(std::move(rec));
      };
      if (tmpl->emotion_register == EmotionRegister::None) {
        emit(-1, nullptr);
      } else {
        for (std::size_t e = 0; e < words.size(); ++e) emit(static_cast<int>(e), &words[e]);
      }
    }
  }
  return corpus;
}

void write_corpus_csv(const Corpus& corpus, std::ostream& out) {
  out << kCorpusHeader << '\n';
  for (const auto& r : corpus.records) {
    out << detail::csv_join({r.id, r.text, std::to_string(r.template_id), r.person_surface,
                             to_string(r.gender),
                             r.race == Race::Unspecified ? "" : to_string(r.race),
                             r.emotion_surface, r.emotion ? to_string(*r.emotion) : ""})
        << '\n';
  }
}

void write_corpus_csv(const Corpus& corpus, const std::filesystem::path& path) {
  auto out = detail::open_output(path.string());
  write_corpus_csv(corpus, out);
  if (!out) throw IoError("write failed: " + path.string());
}

std::string Corpus::fingerprint() const {
  std::ostringstream out;
  write_corpus_csv(*this, out);
  return detail::fnv1a64_hex(out.str());
}

Corpus read_corpus_csv(std::istream& in, const Lexicons& lex, const std::string& filename) {
  Corpus corpus;
  corpus.persons = lex.persons;
  corpus.state_words = lex.words_of_register(EmotionRegister::State);
  corpus.situation_words = lex.words_of_register(EmotionRegister::Situation);
  corpus.templates = lex.templates;

  std::map<int, const SentenceTemplate*> templates_by_id;
  for (const auto& t : lex.templates) templates_by_id[t.id] = &t;

  std::string line;
  int lineno = 0;
  if (!detail::read_line(in, line) || line != kCorpusHeader)
    throw ParseError(filename, 1, "missing corpus header");
  ++lineno;
  while (detail::read_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = detail::csv_split(line, filename, lineno);
    if (f.size() != 8)
      throw ParseError(filename, lineno, "expected 8 fields, got " + std::to_string(f.size()));
    SentenceRecord rec;
    rec.id = f[0];
    rec.text = f[1];
    // The id encodes the generating coordinates; decode and cross-check.
    int tmpl_id, person_index, emotion_index;
    {
      char emo[8];
      if (std::sscanf(rec.id.c_str(), "t%d-p%d-e%7s", &tmpl_id, &person_index, emo) != 3)
        throw ParseError(filename, lineno, "malformed sentence id '" + rec.id + "'");
      std::string tail(emo);
      bool digits = !tail.empty() && std::all_of(tail.begin(), tail.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      });
      if (tail != "--" && !digits)
        throw ParseError(filename, lineno, "malformed sentence id '" + rec.id + "'");
      emotion_index = tail == "--" ? -1 : std::atoi(tail.c_str());
    }
    rec.template_id = tmpl_id;
    rec.person_index = person_index;
    rec.emotion_index = emotion_index;
    auto tmpl_it = templates_by_id.find(tmpl_id);
    if (tmpl_it == templates_by_id.end())
      throw IntegrityError(filename + ":" + std::to_string(lineno) + ": unknown template id " +
                           std::to_string(tmpl_id));
    if (std::to_string(tmpl_id) != f[2])
      throw IntegrityError(filename + ":" + std::to_string(lineno) +
                           ": template column disagrees with id '" + rec.id + "'");
    if (person_index < 0 || person_index >= static_cast<int>(corpus.persons.size()))
      throw IntegrityError(filename + ":" + std::to_string(lineno) + ": person index " +
                           std::to_string(person_index) + " outside the lexicon");
    const PersonTerm& person = corpus.persons[person_index];
    if (person.surface != f[3])
      throw IntegrityError(filename + ":" + std::to_string(lineno) + ": person '" + f[3] +
                           "' disagrees with lexicon entry '" + person.surface + "'");
    rec.person_surface = f[3];
    auto gender = parse_gender(f[4]);
    if (!gender || *gender != person.gender)
      throw IntegrityError(filename + ":" + std::to_string(lineno) + ": gender '" + f[4] +
                           "' disagrees with lexicon");
    rec.gender = *gender;
    auto race = parse_race(f[5]);
    if (!race || *race != person.race)
      throw IntegrityError(filename + ":" + std::to_string(lineno) + ": race '" + f[5] +
                           "' disagrees with lexicon");
    rec.race = *race;
    const auto& words = corpus.words_for(tmpl_it->second->emotion_register);
    if (emotion_index >= 0) {
      if (emotion_index >= static_cast<int>(words.size()))
        throw IntegrityError(filename + ":" + std::to_string(lineno) + ": emotion index " +
                             std::to_string(emotion_index) + " outside the register list");
      const EmotionWord& word = words[emotion_index];
      if (word.surface != f[6] || to_string(word.emotion) != f[7])
        throw IntegrityError(filename + ":" + std::to_string(lineno) + ": emotion columns '" +
                             f[6] + "/" + f[7] + "' disagree with lexicon");
      rec.emotion_surface = f[6];
      rec.emotion = word.emotion;
    } else if (!f[6].empty() || !f[7].empty()) {
      throw IntegrityError(filename + ":" + std::to_string(lineno) +
                           ": emotion columns must be empty for id '" + rec.id + "'");
    }
    if (rec.text.empty() || rec.text.back() != '.' ||
        !std::isupper(static_cast<unsigned char>(rec.text.front())))
      throw IntegrityError(filename + ":" + std::to_string(lineno) +
                           ": sentence text fails shape invariants");
    corpus.records.push_back(std::move(rec));
  }
  return corpus;
}

Corpus read_corpus_csv(const std::filesystem::path& path, const Lexicons& lex) {
  auto in = detail::open_input(path.string());
  return read_corpus_csv(in, lex, path.filename().string());
}

void validate_corpus(const Corpus& corpus) {
  std::set<std::string> ids;
  std::map<int, std::size_t> per_template;
  for (const auto& r : corpus.records) {
    if (!ids.insert(r.id).second) throw IntegrityError("duplicate sentence id '" + r.id + "'");
    ++per_template[r.template_id];
  }
  for (const auto& t : corpus.templates) {
    const auto& words = corpus.words_for(t.emotion_register);
    std::size_t expected = t.emotion_register == EmotionRegister::None
                               ? corpus.persons.size()
                               : corpus.persons.size() * words.size();
    std::size_t actual = per_template.count(t.id) ? per_template.at(t.id) : 0;
    if (actual != expected)
      throw IntegrityError("template " + std::to_string(t.id) + " has " + std::to_string(actual) +
                           " sentences, expected " + std::to_string(expected));
  }
}

}  // namespace eec

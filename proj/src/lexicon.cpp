#include "eec/lexicon.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "eec/errors.hpp"
#include "text_io.hpp"

namespace eec {

namespace {

PersonTerm name(const char* surface, Gender g, Race r) {
  return PersonTerm{surface, surface, surface, g, r, PersonKind::GivenName, {}};
}

PersonTerm phrase(const char* surface, Gender g, const char* pair_id) {
  return PersonTerm{surface, surface, surface, g, Race::Unspecified, PersonKind::NounPhrase,
                    pair_id};
}

std::vector<PersonTerm> default_persons() {
  std::vector<PersonTerm> p;
  // Female and male first names associated with being African American or
  // European American, ten per cell.
  const char* aa_female[] = {"Ebony",    "Jasmine",  "Lakisha", "Latisha", "Latoya",
                             "Nichelle", "Shaniqua", "Shereen", "Tanisha", "Tia"};
  const char* aa_male[] = {"Alonzo", "Alphonse", "Darnell",  "Jamel",    "Jerome",
                           "Lamar",  "Leroy",    "Malik",    "Terrence", "Torrance"};
  const char* ea_female[] = {"Amanda", "Betsy",   "Courtney", "Ellen", "Heather",
                             "Katie",  "Kristin", "Melanie",  "Nancy", "Stephanie"};
  const char* ea_male[] = {"Adam", "Alan", "Andrew", "Frank",  "Harry",
                           "Jack", "Josh", "Justin", "Roger",  "Ryan"};
  for (const char* s : aa_female) p.push_back(name(s, Gender::Female, Race::AfricanAmerican));
  for (const char* s : aa_male) p.push_back(name(s, Gender::Male, Race::AfricanAmerican));
  for (const char* s : ea_female) p.push_back(name(s, Gender::Female, Race::EuropeanAmerican));
  for (const char* s : ea_male) p.push_back(name(s, Gender::Male, Race::EuropeanAmerican));

  // Ten female/male noun-phrase pairs. The pronoun pair declines for case.
  PersonTerm she{"she", "she", "her", Gender::Female, Race::Unspecified, PersonKind::NounPhrase,
                 "pronoun"};
  PersonTerm he{"he", "he", "him", Gender::Male, Race::Unspecified, PersonKind::NounPhrase,
                "pronoun"};
  p.push_back(she);
  p.push_back(he);
  const char* pairs[][3] = {
      {"this woman", "this man", "this-person"},
      {"this girl", "this boy", "this-child"},
      {"my sister", "my brother", "sibling"},
      {"my daughter", "my son", "child"},
      {"my wife", "my husband", "spouse"},
      {"my girlfriend", "my boyfriend", "partner"},
      {"my mother", "my father", "parent"},
      {"my aunt", "my uncle", "pibling"},
      {"my mom", "my dad", "parent-informal"},
  };
  for (auto& row : pairs) {
    p.push_back(phrase(row[0], Gender::Female, row[2]));
    p.push_back(phrase(row[1], Gender::Male, row[2]));
  }
  return p;
}

std::vector<EmotionWord> default_emotions() {
  std::vector<EmotionWord> w;
  auto add = [&w](EmotionRegister reg, Emotion e, std::initializer_list<const char*> surfaces) {
    for (const char* s : surfaces) w.push_back(EmotionWord{s, e, reg});
  };
  add(EmotionRegister::State, Emotion::Anger, {"angry", "annoyed", "enraged", "furious", "irritated"});
  add(EmotionRegister::State, Emotion::Fear, {"anxious", "discouraged", "fearful", "scared", "terrified"});
  add(EmotionRegister::State, Emotion::Joy, {"ecstatic", "excited", "glad", "happy", "relieved"});
  add(EmotionRegister::State, Emotion::Sadness, {"depressed", "devastated", "disappointed", "miserable", "sad"});
  add(EmotionRegister::Situation, Emotion::Anger, {"annoying", "displeasing", "irritating", "outrageous", "vexing"});
  add(EmotionRegister::Situation, Emotion::Fear, {"dreadful", "horrible", "shocking", "terrifying", "threatening"});
  add(EmotionRegister::Situation, Emotion::Joy, {"amazing", "funny", "great", "hilarious", "wonderful"});
  add(EmotionRegister::Situation, Emotion::Sadness, {"depressing", "gloomy", "grim", "heartbreaking", "serious"});
  return w;
}

std::vector<SentenceTemplate> default_templates() {
  using R = EmotionRegister;
  using P = PersonRole;
  return {
      {1, "{person} feels {emotion}.", R::State, P::Subject, false, false},
      {2, "The situation makes {person} feel {emotion}.", R::State, P::Object, false, false},
      {3, "I made {person} feel {emotion}.", R::State, P::Object, false, false},
      {4, "{person} made me feel {emotion}.", R::State, P::Subject, false, false},
      {5, "{person} found {reflexive} in {article} {emotion} situation.", R::Situation, P::Subject,
       true, true},
      {6, "{person} told us all about the recent {emotion} events.", R::Situation, P::Subject,
       false, false},
      {7, "The conversation with {person} was {emotion}.", R::Situation, P::Object, false, false},
      {8, "I saw {person} in the market.", R::None, P::Object, false, false},
      {9, "I talked to {person} yesterday.", R::None, P::Object, false, false},
      {10, "{person} goes to the school in our neighborhood.", R::None, P::Subject, false, false},
      {11, "{person} has two children.", R::None, P::Subject, false, false},
  };
}

int count_placeholder(const std::string& pattern, const std::string& token) {
  int n = 0;
  for (std::size_t pos = pattern.find(token); pos != std::string::npos;
       pos = pattern.find(token, pos + token.size()))
    ++n;
  return n;
}

bool parse_flag(const std::string& s, const std::string& file, int lineno) {
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  throw ParseError(file, lineno, "expected flag 0/1, got '" + s + "'");
}

}  // namespace

std::vector<EmotionWord> Lexicons::words_of_register(EmotionRegister reg) const {
  std::vector<EmotionWord> out;
  for (const auto& w : emotions)
    if (w.reg == reg) out.push_back(w);
  return out;
}

LexiconPaths LexiconPaths::in_directory(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw IoError("lexicon directory not found: " + dir.string());
  LexiconPaths paths;
  if (fs::exists(dir / "persons.tsv")) paths.persons = dir / "persons.tsv";
  if (fs::exists(dir / "emotions.tsv")) paths.emotions = dir / "emotions.tsv";
  if (fs::exists(dir / "templates.tsv")) paths.templates = dir / "templates.tsv";
  return paths;
}

Lexicons default_lexicons() {
  return Lexicons{default_persons(), default_emotions(), default_templates()};
}

std::vector<PersonTerm> parse_person_terms(std::istream& in, const std::string& filename) {
  std::vector<PersonTerm> terms;
  std::string line;
  int lineno = 0;
  while (detail::read_line(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto f = detail::tsv_split(line);
    if (f.size() != 7)
      throw ParseError(filename, lineno,
                       "expected 7 tab-separated fields, got " + std::to_string(f.size()));
    PersonTerm t;
    t.surface = f[0];
    t.subject_form = f[1];
    t.object_form = f[2];
    auto gender = parse_gender(f[3]);
    if (!gender) throw ParseError(filename, lineno, "unknown gender '" + f[3] + "'");
    t.gender = *gender;
    auto race = parse_race(f[4]);
    if (!race) throw ParseError(filename, lineno, "unknown race '" + f[4] + "'");
    t.race = *race;
    auto kind = parse_person_kind(f[5]);
    if (!kind) throw ParseError(filename, lineno, "unknown person kind '" + f[5] + "'");
    t.kind = *kind;
    t.pair_id = f[6] == "-" ? "" : f[6];
    terms.push_back(std::move(t));
  }
  return terms;
}

std::vector<EmotionWord> parse_emotion_words(std::istream& in, const std::string& filename) {
  std::vector<EmotionWord> words;
  std::string line;
  int lineno = 0;
  while (detail::read_line(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto f = detail::tsv_split(line);
    if (f.size() != 3)
      throw ParseError(filename, lineno,
                       "expected 3 tab-separated fields, got " + std::to_string(f.size()));
    auto emotion = parse_emotion(f[1]);
    if (!emotion) throw ParseError(filename, lineno, "unknown emotion '" + f[1] + "'");
    auto reg = parse_register(f[2]);
    if (!reg || *reg == EmotionRegister::None)
      throw ParseError(filename, lineno, "unknown register '" + f[2] + "'");
    words.push_back(EmotionWord{f[0], *emotion, *reg});
  }
  return words;
}

std::vector<SentenceTemplate> parse_templates(std::istream& in, const std::string& filename) {
  std::vector<SentenceTemplate> templates;
  std::string line;
  int lineno = 0;
  while (detail::read_line(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto f = detail::tsv_split(line);
    if (f.size() != 6)
      throw ParseError(filename, lineno,
                       "expected 6 tab-separated fields, got " + std::to_string(f.size()));
    SentenceTemplate t;
    try {
      t.id = std::stoi(f[0]);
    } catch (const std::exception&) {
      throw ParseError(filename, lineno, "bad template id '" + f[0] + "'");
    }
    auto reg = parse_register(f[1]);
    if (!reg) throw ParseError(filename, lineno, "unknown register '" + f[1] + "'");
    t.emotion_register = *reg;
    auto role = parse_person_role(f[2]);
    if (!role) throw ParseError(filename, lineno, "unknown person role '" + f[2] + "'");
    t.person_role = *role;
    t.has_reflexive = parse_flag(f[3], filename, lineno);
    t.has_article_before_emotion = parse_flag(f[4], filename, lineno);
    t.pattern = f[5];
    templates.push_back(std::move(t));
  }
  return templates;
}

void write_person_terms(const std::vector<PersonTerm>& terms, std::ostream& out) {
  out << "# surface\tsubject_form\tobject_form\tgender\trace\tkind\tpair_id\n";
  for (const auto& t : terms) {
    out << t.surface << '\t' << t.subject_form << '\t' << t.object_form << '\t'
        << to_string(t.gender) << '\t' << to_string(t.race) << '\t' << to_string(t.kind) << '\t'
        << (t.pair_id.empty() ? "-" : t.pair_id) << '\n';
  }
}

void write_emotion_words(const std::vector<EmotionWord>& words, std::ostream& out) {
  out << "# surface\temotion\tregister\n";
  for (const auto& w : words)
    out << w.surface << '\t' << to_string(w.emotion) << '\t' << to_string(w.reg) << '\n';
}

void write_templates(const std::vector<SentenceTemplate>& templates, std::ostream& out) {
  out << "# id\tregister\tperson_role\treflexive\tarticle\tpattern\n";
  for (const auto& t : templates) {
    out << t.id << '\t' << to_string(t.emotion_register) << '\t' << to_string(t.person_role)
        << '\t' << (t.has_reflexive ? 1 : 0) << '\t' << (t.has_article_before_emotion ? 1 : 0)
        << '\t' << t.pattern << '\n';
  }
}

void dump_lexicons(const Lexicons& lex, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto persons = detail::open_output((dir / "persons.tsv").string());
  write_person_terms(lex.persons, persons);
  auto emotions = detail::open_output((dir / "emotions.tsv").string());
  write_emotion_words(lex.emotions, emotions);
  auto templates = detail::open_output((dir / "templates.tsv").string());
  write_templates(lex.templates, templates);
}

void validate_lexicons(const Lexicons& lex) {
  if (lex.persons.empty()) throw ValidationError("person lexicon is empty");
  if (lex.templates.empty()) throw ValidationError("template lexicon is empty");

  std::map<std::string, std::vector<const PersonTerm*>> pairs;
  for (const auto& t : lex.persons) {
    if (t.surface.empty() || t.subject_form.empty() || t.object_form.empty())
      throw ValidationError("person term with empty surface or form");
    if (t.kind == PersonKind::GivenName) {
      if (!t.pair_id.empty())
        throw ValidationError("given name '" + t.surface + "' carries a pair id");
      if (t.race == Race::Unspecified)
        throw ValidationError("given name '" + t.surface + "' lacks a race tag");
    } else {
      if (t.race != Race::Unspecified)
        throw ValidationError("noun phrase '" + t.surface + "' carries a race tag");
      if (t.pair_id.empty())
        throw ValidationError("unpaired noun phrase '" + t.surface + "' (no pair id)");
      pairs[t.pair_id].push_back(&t);
    }
  }
  for (const auto& [pair_id, members] : pairs) {
    if (members.size() != 2)
      throw ValidationError("unpaired noun phrase: pair id '" + pair_id + "' occurs " +
                            std::to_string(members.size()) + " times, expected 2");
    if (members[0]->gender == members[1]->gender)
      throw ValidationError("unpaired noun phrase: pair id '" + pair_id +
                            "' lacks one term per gender");
  }

  std::set<std::pair<EmotionRegister, std::string>> seen_words;
  for (const auto& w : lex.emotions) {
    if (w.surface.empty()) throw ValidationError("emotion word with empty surface");
    if (w.reg == EmotionRegister::None)
      throw ValidationError("emotion word '" + w.surface + "' without a register");
    if (!seen_words.insert({w.reg, w.surface}).second)
      throw ValidationError("duplicate emotion word '" + w.surface + "' within its register");
  }

  std::set<int> ids;
  for (const auto& t : lex.templates) {
    const std::string where = "template " + std::to_string(t.id);
    if (t.id < 1) throw ValidationError(where + ": id must be positive");
    if (!ids.insert(t.id).second) throw ValidationError(where + ": duplicate id");
    if (count_placeholder(t.pattern, "{person}") != 1)
      throw ValidationError(where + ": pattern needs exactly one {person} placeholder");
    int emotion_slots = count_placeholder(t.pattern, "{emotion}");
    if (t.emotion_register == EmotionRegister::None ? emotion_slots != 0 : emotion_slots != 1)
      throw ValidationError(where + ": {emotion} placeholder disagrees with register");
    if (count_placeholder(t.pattern, "{reflexive}") != (t.has_reflexive ? 1 : 0))
      throw ValidationError(where + ": {reflexive} placeholder disagrees with flag");
    if (count_placeholder(t.pattern, "{article}") != (t.has_article_before_emotion ? 1 : 0))
      throw ValidationError(where + ": {article} placeholder disagrees with flag");
    if (t.has_article_before_emotion && t.emotion_register == EmotionRegister::None)
      throw ValidationError(where + ": article flag requires an emotion slot");
  }
}

Lexicons load_lexicons(const LexiconPaths& paths) {
  Lexicons defaults = default_lexicons();
  Lexicons lex;
  if (paths.persons) {
    auto in = detail::open_input(paths.persons->string());
    lex.persons = parse_person_terms(in, paths.persons->filename().string());
  } else {
    lex.persons = std::move(defaults.persons);
  }
  if (paths.emotions) {
    auto in = detail::open_input(paths.emotions->string());
    lex.emotions = parse_emotion_words(in, paths.emotions->filename().string());
  } else {
    lex.emotions = std::move(defaults.emotions);
  }
  if (paths.templates) {
    auto in = detail::open_input(paths.templates->string());
    lex.templates = parse_templates(in, paths.templates->filename().string());
  } else {
    lex.templates = std::move(defaults.templates);
  }
  validate_lexicons(lex);
  return lex;
}

}  // namespace eec

#pragma once

#include <optional>
#include <string>

namespace eec {

enum class Gender { Female, Male };
enum class Race { AfricanAmerican, EuropeanAmerican, Unspecified };
enum class PersonKind { GivenName, NounPhrase };
enum class Emotion { Anger, Fear, Joy, Sadness };
enum class EmotionRegister { State, Situation, None };
enum class PersonRole { Subject, Object };
enum class Task { Anger, Fear, Joy, Sadness, Valence };
enum class Dimension { Gender, Race };
enum class UnitKind { NounPhrasePair, NameAverage };
enum class BiasGroup { NotSignificant, LeftHigher, RightHigher };
enum class SubsetKind { Full, NeutralOnly, EmotionMatched };

std::string to_string(Gender g);
std::string to_string(Race r);
std::string to_string(PersonKind k);
std::string to_string(Emotion e);
std::string to_string(EmotionRegister r);
std::string to_string(PersonRole r);
std::string to_string(Task t);
std::string to_string(Dimension d);
std::string to_string(UnitKind k);
std::string to_string(BiasGroup g);
std::string to_string(SubsetKind s);

std::optional<Gender> parse_gender(const std::string& s);
std::optional<Race> parse_race(const std::string& s);
std::optional<PersonKind> parse_person_kind(const std::string& s);
std::optional<Emotion> parse_emotion(const std::string& s);
std::optional<EmotionRegister> parse_register(const std::string& s);
std::optional<PersonRole> parse_person_role(const std::string& s);
std::optional<Task> parse_task(const std::string& s);
std::optional<BiasGroup> parse_bias_group(const std::string& s);

// The emotion category an intensity task scores, if it has one. Valence does not.
std::optional<Emotion> task_emotion(Task t);

}  // namespace eec

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "acd/errors.hpp"

namespace acd {

enum class ActorKind { Primary, Secondary };
enum class FlowSection { Main, Sub, SpecificAlternate, GlobalAlternate };

std::string to_string(ActorKind k);
std::string to_string(FlowSection s);

struct Actor {
  std::string name;
  ActorKind kind = ActorKind::Primary;
  std::optional<std::string> parent_actor_name;
};

struct FlowStep {
  std::string id;  // M1, S1, A1, GA1, ...
  std::string text;
  std::optional<std::string> pre_condition;  // also holds guard text (shared column)
  std::optional<std::string> post_condition;
  std::vector<std::string> sub_flow_ids;  // ranges already expanded
  std::vector<std::string> alt_flow_ids;
  FlowSection section = FlowSection::Main;
};

struct UcsInstance {
  std::string use_case_name;
  std::string main_system_name;
  std::optional<std::string> parent_use_case_name;
  std::vector<std::string> description;
  std::vector<std::string> constraints;
  std::vector<Actor> actors;
  std::vector<FlowStep> steps;

  const FlowStep* step(const std::string& id) const;
};

bool operator==(const Actor& a, const Actor& b);
bool operator==(const FlowStep& a, const FlowStep& b);
bool operator==(const UcsInstance& a, const UcsInstance& b);

// Reads the sectioned plain-text UCS format. Throws ParseError for syntax
// problems (with line numbers) and ValidationError for semantic ones
// (duplicate ids, dangling references, bad id prefixes, missing period).
UcsInstance read_ucs(std::istream& in);
UcsInstance read_ucs_file(const std::string& path);

// Canonical serialization; read_ucs(write_ucs(u)) == u.
std::string write_ucs(const UcsInstance& u);

enum class LintKind { Pronoun, KeywordCase };

struct LintWarning {
  LintKind kind = LintKind::Pronoun;
  std::string location;  // step id or section name
  std::string word;
  std::string message;
};

// Restriction checks that are automatable: the pronoun wordlist and the
// INCLUDE/EXTEND/RESUME/REPEAT keyword casing. Never fails.
std::vector<LintWarning> lint_restrictions(const UcsInstance& u);

}  // namespace acd

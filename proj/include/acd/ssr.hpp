#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acd/parse.hpp"

namespace acd {

enum class Structure {
  SVIODO, SVDOThatClause, SVThatClause, SVDONotToInf, SVNotToInf,
  SVDOtobeComp, SVDOToInf, SVDOPresentPart, SVDOPastPart, SVDOAdj,
  SVDONoun, SVDOConjToInf, SVDOConjClause, SVDOAdverbial, SAuxVDO,
  SVDOPO, SVConjToInf, SVConjClause, SVToInf, SVGerund,
  SVAdverbialAdjunct, SVPredicative, SVForComp, SVPassPO, SAuxVPassPO,
  SVPO, SVDO, Conditional, SV, Include, Extend, Resume, Loop,
  Unrecognized,
};

std::string to_string(Structure s);
std::optional<Structure> structure_from_string(const std::string& name);

bool is_keyword_structure(Structure s);

// One dependency pattern of an antecedent: label(HeadVar, DepVar).
struct DepPattern {
  std::string label;
  char head_var = 0;
  char dep_var = 0;
};

struct PosGuard {
  char var = 0;
  std::string pos_prefix;  // matched as a prefix of the token's tag
};

struct SsrRule {
  std::string id;  // "SSR7"
  std::vector<DepPattern> patterns;
  std::vector<PosGuard> guards;
  std::string keyword;  // non-empty for SSR30-SSR33
  Structure result = Structure::Unrecognized;
};

// Variable assignment produced by a successful unification.
struct Binding {
  std::map<char, int> vars;  // variable -> token index
  std::string describe(const ParsedSentence& s) const;
};

// Matches every pattern of `rule` against s.deps. Distinct patterns must
// bind distinct dependencies; repeated variables bind consistently; among
// multiple solutions the one using the earliest candidates (ordered by
// head then dependent index), resolved left to right, wins. On failure
// *matched_depth, when given, receives the deepest pattern prefix that
// unified.
std::optional<Binding> unify(const SsrRule& rule, const ParsedSentence& s,
                             int* matched_depth = nullptr);

struct Classification {
  Structure structure = Structure::Unrecognized;
  std::string rule_id;  // empty for Unrecognized
  Binding binding;
  // For Unrecognized: the rule that got furthest, and how far.
  std::string near_miss_rule_id;
  int near_miss_depth = 0;
  int near_miss_total = 0;
};

class StructureClassifier {
 public:
  StructureClassifier();

  // Keyword rules first (on the sentence text), then Conditional, then the
  // dependency rules in order; Unrecognized when nothing fires.
  Classification classify(const ParsedSentence& s) const;

  // Keyword phrase at the start of the sentence, if any.
  static std::optional<Structure> keyword_structure(const std::string& text);

  const std::vector<SsrRule>& rules() const { return rules_; }
  const SsrRule* rule(const std::string& id) const;

 private:
  std::vector<SsrRule> rules_;  // in evaluation order
};

}  // namespace acd

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acd/errors.hpp"

namespace acd {

struct Token {
  int index = 0;  // 1-based within the sentence
  std::string surface;
  std::string pos;  // Penn Treebank tag
};

// label(head, dependent); head 0 denotes ROOT.
struct TypeDependency {
  std::string label;
  int head = 0;
  int dep = 0;
};

bool operator==(const Token& a, const Token& b);
bool operator==(const TypeDependency& a, const TypeDependency& b);

struct ParsedSentence {
  std::string text;
  std::vector<Token> tokens;
  std::vector<TypeDependency> deps;
  std::string origin_section;  // main/sub/alt/galt/pre/post/guard/description
  std::string origin_step;     // step id, empty for description

  const Token* token(int index) const;      // nullptr for 0 or out of range
  std::string surface(int index) const;     // "ROOT" for index 0
  std::string pos(int index) const;         // "" for ROOT
  int root_index() const;                   // dep of the root dependency, 0 if absent

  // Index of the first dependency whose label matches, -1 if none.
  int find_dep(const std::string& label) const;
};

bool operator==(const ParsedSentence& a, const ParsedSentence& b);

// Collapses runs of whitespace and guarantees exactly one trailing period.
std::string normalize_sentence(const std::string& text);

// Rebuilds sentence text from token surfaces: space-joined except before
// punctuation tokens.
std::string reconstruct_text(const std::vector<Token>& tokens);

// ---------------------------------------------------------------------------
// Label scheme mapping (UD -> legacy Stanford typed dependencies).

enum class LabelScheme { SD, UD };

LabelScheme label_scheme_from_string(const std::string& name);  // throws ConfigError

struct MappedParse {
  std::vector<TypeDependency> deps;
  std::vector<std::string> passthrough_labels;  // labels with no rewrite rule
};

// tokens are needed for the context-sensitive rewrites (case/aux/mark).
MappedParse map_labels(const std::vector<Token>& tokens,
                       const std::vector<TypeDependency>& deps,
                       LabelScheme scheme);

// ---------------------------------------------------------------------------
// Fixture store: recorded parses in a CoNLL-U-style format.
//
//   # text = The system ejects the ATM card.
//   1  The  _  _  DT  _  3  det  _  _
//   ...
// blank line between blocks.

class FixtureStore {
 public:
  FixtureStore() = default;

  void load_file(const std::string& path, LabelScheme scheme = LabelScheme::SD);
  void load_directory(const std::string& dir, LabelScheme scheme = LabelScheme::SD);
  void load_stream(std::istream& in, const std::string& name, LabelScheme scheme);

  // Adds or replaces one record (used by the `fixtures` subcommand).
  void put(const std::string& text, std::vector<Token> tokens,
           std::vector<TypeDependency> deps);

  std::optional<ParsedSentence> find(const std::string& sentence) const;
  size_t size() const { return records_.size(); }

 private:
  struct Record {
    std::string text;  // normalized
    std::vector<Token> tokens;
    std::vector<TypeDependency> deps;
  };
  std::map<std::string, Record> records_;
};

// Serializes one sentence as a fixture block.
std::string to_fixture_block(const ParsedSentence& s);

}  // namespace acd

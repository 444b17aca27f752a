#pragma once

#include <memory>
#include <string>
#include <vector>

#include "acd/parse.hpp"

namespace acd {

// Source of parses: either recorded fixtures (offline) or the external
// parser service. Implementations must be safe to share across threads.
class Annotator {
 public:
  virtual ~Annotator() = default;
  // Throws MissingParseError / TransportError / ProtocolError.
  virtual ParsedSentence annotate(const std::string& sentence) const = 0;
};

class FixtureAnnotator : public Annotator {
 public:
  explicit FixtureAnnotator(FixtureStore store) : store_(std::move(store)) {}
  ParsedSentence annotate(const std::string& sentence) const override;
  const FixtureStore& store() const { return store_; }

 private:
  FixtureStore store_;
};

// Posts the sentence as the request body to `endpoint` and expects one
// fixture block back.
class ServiceAnnotator : public Annotator {
 public:
  ServiceAnnotator(std::string endpoint, LabelScheme scheme);
  ParsedSentence annotate(const std::string& sentence) const override;

 private:
  std::string host_;
  std::string path_;
  int port_ = 80;
  LabelScheme scheme_;
};

struct MergeResult {
  ParsedSentence sentence;           // re-annotated when a merge happened
  std::vector<std::string> terms;    // all NN* token surfaces of the result
  bool changed = false;
};

// TR1: concatenates maximal runs of >=2 consecutive NN*-tagged tokens and
// re-annotates the modified sentence through `source`. Idempotent.
MergeResult merge_entity_terms(const ParsedSentence& s, const Annotator& source);

}  // namespace acd

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "acd/annotate.hpp"
#include "acd/diagram.hpp"
#include "acd/ssr.hpp"
#include "acd/ucs.hpp"

namespace acd {

// Insertion-ordered set of entity terms, case-insensitively unique.
class EntityTermSet {
 public:
  void add(const std::string& term);
  bool contains(const std::string& term) const;
  const std::vector<std::string>& items() const { return items_; }

 private:
  std::vector<std::string> items_;
};

// Marker phrases that signal generalization / aggregation sentences.
struct GenAggLexicon {
  std::vector<std::string> child_parent_markers;
  std::vector<std::string> parent_child_markers;
  std::vector<std::string> part_whole_markers;
  std::vector<std::string> whole_part_markers;

  static GenAggLexicon defaults();
  static GenAggLexicon load_file(const std::string& path);
};

enum class MarkerCategory { None, ChildParent, ParentChild, PartWhole, WholePart };

struct MarkerScan {
  MarkerCategory category = MarkerCategory::None;
  int first = 0;  // 1-based token index of the first marker token
  int last = 0;   // 1-based token index of the last marker token
};

// Token-boundary scan over the raw (pre-merge) sentence.
MarkerScan scan_markers(const ParsedSentence& raw, const GenAggLexicon& lex);

// Operation candidate mined from one sentence.
struct OpCandidate {
  std::string name;
  std::string source_entity_term;
  std::string dest_entity_term;
  std::string params;
  std::shared_ptr<OpCandidate> secondary;      // TR17 op2
  std::vector<std::string> dest_attributes;    // TR18 extras for the host class
  std::string dest_stereotype = kEntityClass;  // control for TR40 targets
  std::string provenance;                      // step id
};

// One prepared sentence: raw + merged parses, classification, terms.
struct SentenceUnit {
  std::string step_id;   // empty for the description
  std::string section;   // main/sub/alt/galt/description
  bool is_flow = false;
  ParsedSentence raw;
  ParsedSentence merged;
  Classification cls;
  std::vector<std::string> terms;  // NN* surfaces of the merged form
  MarkerScan marker;
};

struct UnrecognizedRow {
  std::string step_id;
  std::string sentence;
  std::string near_miss_rule_id;
  int matched = 0;
  int total = 0;
};

struct BuildResult {
  ClassDiagram diagram;
  std::vector<std::string> trace;           // one line per fired TR rule
  std::vector<std::string> hosted_steps;    // steps with >=1 hosted operation
  std::vector<std::string> no_op_steps;     // recognized but op-free (guards etc.)
  std::vector<UnrecognizedRow> skipped;     // flow steps the transformation skipped
  std::vector<std::string> removed_classes; // TR54 removals
};

// Stage-level access to the transformation; the
// stages mutate one diagram and must be called in order.
class DiagramBuilder {
 public:
  DiagramBuilder(const StructureClassifier& classifier, const Annotator& annotator,
                 GenAggLexicon lexicon);

  int create_control_class(const UcsInstance& ucs);   // TR2
  void create_boundary_classes(const UcsInstance& ucs);  // TR3

  // TR4 over the global term set, then TR5-TR9 per sentence.
  void seed_entity_classes(const EntityTermSet& terms,
                           const std::vector<const SentenceUnit*>& units);

  // TR11-TR43; applies TR32's side effects directly and returns no op for
  // it; Conditional strips the guard clause and re-dispatches.
  std::vector<OpCandidate> extract_operations(const SentenceUnit& unit);

  void materialize_classes(const OpCandidate& op);  // TR44-TR45
  void derive_association(const OpCandidate& op);   // TR46

  void derive_generalizations(const UcsInstance& ucs,
                              const std::vector<const SentenceUnit*>& marker_units);  // TR47-TR50
  void derive_aggregations(const std::vector<const SentenceUnit*>& marker_units);     // TR51-TR53
  std::vector<std::string> prune();                 // TR54

  // Replaces accumulated association name parts with their sorted join.
  void finalize_association_names();

  ClassDiagram& diagram() { return diagram_; }
  const std::vector<std::string>& trace() const { return trace_; }
  const std::vector<std::string>& hosted_steps() const { return hosted_steps_; }
  const std::vector<std::string>& no_op_steps() const { return no_op_steps_; }

 private:
  std::vector<OpCandidate> extract_operations_impl(const SentenceUnit& unit,
                                                   int depth);
  int resolve_source_class(const OpCandidate& op);       // TR44
  int resolve_host_class(const OpCandidate& op);         // TR45 target
  void associate(int from, int to, const std::string& op_name,
                 const std::string& provenance);
  void add_generalization(int parent, int child, const std::string& provenance);
  void add_aggregation(int whole, int part, const std::string& provenance);
  bool is_system_term(const std::string& term) const;
  void note(const std::string& rule, const std::string& step,
            const std::string& bindings, const std::string& effect);

  const StructureClassifier& classifier_;
  const Annotator& annotator_;
  GenAggLexicon lexicon_;
  ClassDiagram diagram_;
  int control_ = -1;
  std::string control_alias_;  // whitespace-stripped use case name
  std::vector<std::vector<std::string>> assoc_parts_;  // per relationship index
  std::vector<std::string> trace_;
  std::vector<std::string> hosted_steps_;
  std::vector<std::string> no_op_steps_;
};

// Runs TR2..TR54 over prepared sentences in stage order.
BuildResult build_diagram(const UcsInstance& ucs,
                          const std::vector<SentenceUnit>& units,
                          const StructureClassifier& classifier,
                          const Annotator& annotator,
                          const GenAggLexicon& lexicon);

// Removes every whitespace character (use case / actor names to class names).
std::string strip_spaces(const std::string& s);

// TR rule id for an op-yielding structure ("TR37" for SVDO, ...).
std::string tr_rule_for(Structure s);

}  // namespace acd

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acd/annotate.hpp"
#include "acd/engine.hpp"
#include "acd/metrics.hpp"
#include "acd/ssr.hpp"
#include "acd/ucs.hpp"

namespace acd {

struct RunConfig {
  std::string input_path;
  std::optional<std::string> fixture_dir;
  std::optional<std::string> parser_endpoint;
  LabelScheme label_scheme = LabelScheme::SD;
  std::optional<std::string> lexicon_path;
  std::optional<std::string> dot_path;
  std::optional<std::string> xmi_path;
  std::optional<std::string> report_path;
  std::optional<std::string> questionnaire_prefix;
  std::optional<std::string> trace_path;

  void validate() const;  // throws ConfigError
};

// Classification record for one parsed sentence of the UCS.
struct SentenceReport {
  std::string step_id;  // or "description"/"<id>.guard"
  std::string section;
  std::string text;           // merged form
  Structure structure = Structure::Unrecognized;
  std::string rule_id;
  std::string binding;
  std::string near_miss;  // "SSR13 (3/4)" for unrecognized sentences
};

struct PipelineResult {
  UcsInstance ucs;
  std::vector<LintWarning> lint;
  std::vector<SentenceReport> sentences;  // flow steps, guards, description
  BuildResult build;
  QualityReport quality;
  std::string dot;
  std::string xmi;
  std::string report_text;
  std::string unrecognized_report;
  bool any_skipped = false;
};

// Steps 1-3 only: annotate, merge, classify. Throws MissingParsesError with
// the full list of unparsed sentences in offline mode.
std::vector<SentenceUnit> prepare_sentences(const UcsInstance& ucs,
                                            const Annotator& annotator,
                                            const StructureClassifier& classifier,
                                            const GenAggLexicon& lexicon,
                                            std::vector<SentenceReport>* reports);

// Full pipeline over an already-loaded UCS.
PipelineResult run_pipeline(const UcsInstance& ucs, const Annotator& annotator,
                            const GenAggLexicon& lexicon);

// Convenience entry used by the CLI: loads everything per config.
PipelineResult run_pipeline(const RunConfig& config);

std::string format_unrecognized_report(const std::vector<UnrecognizedRow>& rows);

}  // namespace acd

#include "acd/pipeline.hpp"

#include <algorithm>
#include <sstream>

namespace acd {

void RunConfig::validate() const {
  if (input_path.empty()) throw ConfigError("no input UCS file given");
  if (!fixture_dir && !parser_endpoint)
    throw ConfigError("need a fixture directory or a parser endpoint");
}

namespace {

// Annotator wrapper that records fixture misses instead of failing fast, so
// one run reports every missing sentence at once.
class CollectingAnnotator : public Annotator {
 public:
  explicit CollectingAnnotator(const Annotator& inner) : inner_(inner) {}

  ParsedSentence annotate(const std::string& sentence) const override {
    return inner_.annotate(sentence);
  }

  std::optional<ParsedSentence> try_annotate(const std::string& sentence) const {
    try {
      return inner_.annotate(sentence);
    } catch (const MissingParseError& e) {
      missing_.push_back(e.sentence());
      return std::nullopt;
    }
  }

  const std::vector<std::string>& missing() const { return missing_; }

 private:
  const Annotator& inner_;
  mutable std::vector<std::string> missing_;
};

std::string section_tag(FlowSection s) {
  switch (s) {
    case FlowSection::Main: return "main";
    case FlowSection::Sub: return "sub";
    case FlowSection::SpecificAlternate: return "alt";
    case FlowSection::GlobalAlternate: return "galt";
  }
  return "?";
}

}  // namespace

std::vector<SentenceUnit> prepare_sentences(const UcsInstance& ucs,
                                            const Annotator& annotator,
                                            const StructureClassifier& classifier,
                                            const GenAggLexicon& lexicon,
                                            std::vector<SentenceReport>* reports) {
  CollectingAnnotator coll(annotator);
  std::vector<SentenceUnit> units;

  auto report = [&](const std::string& id, const std::string& section,
                    const ParsedSentence& s, const Classification& cls) {
    if (!reports) return;
    SentenceReport r;
    r.step_id = id;
    r.section = section;
    r.text = s.text;
    r.structure = cls.structure;
    r.rule_id = cls.rule_id;
    r.binding = cls.binding.describe(s);
    if (cls.structure == Structure::Unrecognized && !cls.near_miss_rule_id.empty())
      r.near_miss = cls.near_miss_rule_id + " (" +
                    std::to_string(cls.near_miss_depth) + "/" +
                    std::to_string(cls.near_miss_total) + ")";
    reports->push_back(r);
  };

  auto prepare_one = [&](const std::string& id, const std::string& section,
                         bool is_flow, const std::string& text) {
    auto raw = coll.try_annotate(text);
    if (!raw) return;
    raw->origin_section = section;
    raw->origin_step = id;
    SentenceUnit u;
    u.step_id = id;
    u.section = section;
    u.is_flow = is_flow;
    u.raw = *raw;

    if (StructureClassifier::keyword_structure(u.raw.text)) {
      // Keyword steps are not grammatical sentences; no merging, no terms.
      u.merged = u.raw;
      u.cls = classifier.classify(u.merged);
      report(id, section, u.merged, u.cls);
      units.push_back(std::move(u));
      return;
    }

    u.marker = scan_markers(u.raw, lexicon);
    if (u.marker.category != MarkerCategory::None) {
      // Marker sentences belong to TR47-TR53; the raw parse is kept.
      u.merged = u.raw;
      u.cls = classifier.classify(u.merged);
      report(id, section, u.merged, u.cls);
      units.push_back(std::move(u));
      return;
    }

    try {
      MergeResult m = merge_entity_terms(u.raw, coll);
      u.merged = std::move(m.sentence);
      u.terms = std::move(m.terms);
    } catch (const MissingParseError&) {
      return;  // already collected
    }
    u.cls = classifier.classify(u.merged);
    report(id, section, u.merged, u.cls);
    units.push_back(std::move(u));
  };

  for (const auto& step : ucs.steps) {
    prepare_one(step.id, section_tag(step.section), true, step.text);
    // Guards/pre/post are parsed (and guards classified) but excluded from
    // the transformation; conditions are not classified at all.
    if (step.pre_condition) {
      if (step.section == FlowSection::GlobalAlternate) {
        auto g = coll.try_annotate(*step.pre_condition);
        if (g) {
          Classification c = classifier.classify(*g);
          report(step.id + ".guard", "guard", *g, c);
        }
      } else {
        coll.try_annotate(*step.pre_condition);
      }
    }
    if (step.post_condition) coll.try_annotate(*step.post_condition);
  }
  for (const auto& d : ucs.description)
    prepare_one("", "description", false, d);

  if (!coll.missing().empty()) {
    auto missing = coll.missing();
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    throw MissingParsesError(missing);
  }
  return units;
}

std::string format_unrecognized_report(const std::vector<UnrecognizedRow>& rows) {
  std::ostringstream out;
  if (rows.empty()) {
    out << "All flow sentences were recognized.\n";
    return out.str();
  }
  out << "Unrecognized sentences (skipped by the transformation; rewrite and rerun):\n";
  for (const auto& r : rows) {
    out << "  " << r.step_id << " | " << r.sentence << " | nearest miss ";
    if (r.near_miss_rule_id.empty())
      out << "-";
    else
      out << r.near_miss_rule_id << " (" << r.matched << "/" << r.total
          << " patterns)";
    out << "\n";
  }
  return out.str();
}

PipelineResult run_pipeline(const UcsInstance& ucs, const Annotator& annotator,
                            const GenAggLexicon& lexicon) {
  PipelineResult result;
  result.ucs = ucs;
  result.lint = lint_restrictions(ucs);

  StructureClassifier classifier;
  auto units = prepare_sentences(ucs, annotator, classifier, lexicon,
                                 &result.sentences);
  result.build = build_diagram(ucs, units, classifier, annotator, lexicon);
  result.any_skipped = !result.build.skipped.empty();
  result.unrecognized_report = format_unrecognized_report(result.build.skipped);

  int ns = static_cast<int>(ucs.steps.size());
  int nsf = static_cast<int>(result.build.hosted_steps.size());
  result.quality = quality_report(result.build.diagram, nsf, ns);

  result.dot = emit_dot(result.build.diagram);
  result.xmi = emit_xmi(result.build.diagram);
  result.report_text = format_report(result.quality);
  return result;
}

PipelineResult run_pipeline(const RunConfig& config) {
  config.validate();
  UcsInstance ucs = read_ucs_file(config.input_path);

  GenAggLexicon lexicon = config.lexicon_path
                              ? GenAggLexicon::load_file(*config.lexicon_path)
                              : GenAggLexicon::defaults();

  std::unique_ptr<Annotator> annotator;
  if (config.fixture_dir) {
    FixtureStore store;
    store.load_directory(*config.fixture_dir, config.label_scheme);
    annotator = std::make_unique<FixtureAnnotator>(std::move(store));
  } else {
    annotator = std::make_unique<ServiceAnnotator>(*config.parser_endpoint,
                                                   config.label_scheme);
  }
  return run_pipeline(ucs, *annotator, lexicon);
}

}  // namespace acd

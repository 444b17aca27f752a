// acdgen: generates UML analysis class diagrams from use case specifications.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "acd/pipeline.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw acd::ConfigError("cannot write " + path);
  out << content;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw acd::ConfigError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw acd::ConfigError("config line is not key=value: " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

struct CliOptions {
  std::string input;
  std::string fixtures;
  std::string endpoint;
  std::string scheme;
  std::string lexicon;
  std::string dot;
  std::string xmi;
  std::string report;
  std::string questionnaires;
  std::string trace;
  std::string config_file;
  bool explain = false;
};

// Precedence: flags > config file > environment/defaults.
acd::RunConfig resolve(const CliOptions& o) {
  std::map<std::string, std::string> file;
  if (!o.config_file.empty()) file = read_config_file(o.config_file);
  auto pick = [&](const std::string& flag, const char* key) {
    if (!flag.empty()) return flag;
    auto it = file.find(key);
    return it == file.end() ? std::string() : it->second;
  };

  acd::RunConfig c;
  c.input_path = pick(o.input, "in");
  std::string fixtures = pick(o.fixtures, "fixtures");
  if (!fixtures.empty()) c.fixture_dir = fixtures;
  std::string endpoint = pick(o.endpoint, "endpoint");
  if (endpoint.empty()) {
    const char* env = std::getenv("ACDGEN_PARSER_ENDPOINT");
    if (env && *env) endpoint = env;
  }
  if (!endpoint.empty()) c.parser_endpoint = endpoint;
  std::string scheme = pick(o.scheme, "scheme");
  if (!scheme.empty()) c.label_scheme = acd::label_scheme_from_string(scheme);
  std::string lexicon = pick(o.lexicon, "lexicon");
  if (!lexicon.empty()) c.lexicon_path = lexicon;
  std::string dot = pick(o.dot, "dot");
  if (!dot.empty()) c.dot_path = dot;
  std::string xmi = pick(o.xmi, "xmi");
  if (!xmi.empty()) c.xmi_path = xmi;
  std::string report = pick(o.report, "report");
  if (!report.empty()) c.report_path = report;
  std::string q = pick(o.questionnaires, "questionnaires");
  if (!q.empty()) c.questionnaire_prefix = q;
  std::string trace = pick(o.trace, "trace");
  if (!trace.empty()) c.trace_path = trace;
  return c;
}

void add_common_flags(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--in", o.input, "UCS input file");
  cmd->add_option("--fixtures", o.fixtures, "directory of recorded parse fixtures");
  cmd->add_option("--endpoint", o.endpoint,
                  "parser service endpoint (overrides ACDGEN_PARSER_ENDPOINT)");
  cmd->add_option("--scheme", o.scheme, "dependency label scheme: SD or UD");
  cmd->add_option("--lexicon", o.lexicon, "marker lexicon file");
  cmd->add_option("--config", o.config_file, "key=value config file");
}

int run_generate(const CliOptions& o) {
  acd::RunConfig config = resolve(o);
  if (!config.dot_path && !config.xmi_path && !config.report_path &&
      !config.questionnaire_prefix && !config.trace_path)
    throw acd::ConfigError(
        "generate needs at least one output (--dot/--xmi/--report/"
        "--questionnaires/--trace)");
  acd::PipelineResult r = acd::run_pipeline(config);

  for (const auto& w : r.lint)
    std::cerr << "lint: " << w.location << ": " << w.message << "\n";

  if (config.dot_path) write_file(*config.dot_path, r.dot);
  if (config.xmi_path) write_file(*config.xmi_path, r.xmi);
  if (config.report_path) write_file(*config.report_path, r.report_text);
  if (config.questionnaire_prefix) {
    auto q = acd::emit_questionnaires(r.build.diagram);
    write_file(*config.questionnaire_prefix + ".classes.txt", q.classes);
    write_file(*config.questionnaire_prefix + ".relationships.txt", q.relationships);
    write_file(*config.questionnaire_prefix + ".summary.txt", q.summary);
  }
  if (config.trace_path) {
    std::string t;
    for (const auto& line : r.build.trace) t += line + "\n";
    write_file(*config.trace_path, t);
  }

  std::cout << r.unrecognized_report;
  std::cout << "classes: " << r.build.diagram.classes().size()
            << ", relationships: " << r.build.diagram.relationships().size()
            << "\n";
  return r.any_skipped ? 2 : 0;
}

int run_classify(const CliOptions& o) {
  acd::RunConfig config = resolve(o);
  acd::UcsInstance ucs = acd::read_ucs_file(config.input_path);
  acd::GenAggLexicon lexicon = config.lexicon_path
                                   ? acd::GenAggLexicon::load_file(*config.lexicon_path)
                                   : acd::GenAggLexicon::defaults();
  std::unique_ptr<acd::Annotator> annotator;
  if (config.fixture_dir) {
    acd::FixtureStore store;
    store.load_directory(*config.fixture_dir, config.label_scheme);
    annotator = std::make_unique<acd::FixtureAnnotator>(std::move(store));
  } else if (config.parser_endpoint) {
    annotator = std::make_unique<acd::ServiceAnnotator>(*config.parser_endpoint,
                                                        config.label_scheme);
  } else {
    throw acd::ConfigError("need a fixture directory or a parser endpoint");
  }

  acd::StructureClassifier classifier;
  std::vector<acd::SentenceReport> reports;
  auto units = acd::prepare_sentences(ucs, *annotator, classifier, lexicon, &reports);
  (void)units;

  bool any_unrecognized = false;
  for (const auto& s : reports) {
    std::cout << (s.step_id.empty() ? std::string("description") : s.step_id)
              << " | " << acd::to_string(s.structure) << " | "
              << (s.rule_id.empty() ? "-" : s.rule_id);
    if (o.explain) {
      std::cout << " | " << (s.binding.empty() ? "-" : s.binding) << " | "
                << s.text;
      if (!s.near_miss.empty()) std::cout << " | near miss " << s.near_miss;
    }
    std::cout << "\n";
    // only skipped flow steps affect the exit code, as in generate
    if (s.structure == acd::Structure::Unrecognized &&
        s.section != "description" && s.section != "guard")
      any_unrecognized = true;
  }
  return any_unrecognized ? 2 : 0;
}

int run_metrics(const CliOptions& o, const std::string& score_classes,
                const std::string& score_rels, const std::string& score_summary) {
  acd::RunConfig config = resolve(o);
  acd::PipelineResult r = acd::run_pipeline(config);
  std::cout << r.report_text;

  bool scoring = !score_classes.empty() || !score_rels.empty() ||
                 !score_summary.empty();
  if (scoring) {
    if (score_classes.empty() || score_rels.empty() || score_summary.empty())
      throw acd::ConfigError(
          "--score needs --classes, --relationships and --summary files");
    std::ifstream c(score_classes), rl(score_rels), su(score_summary);
    if (!c || !rl || !su) throw acd::ConfigError("cannot open a score input file");
    auto s = acd::score_questionnaires(
        c, rl, su, r.quality.ns, r.quality.nc, r.quality.nr);
    std::cout << "AvgCcr=" << s.avg_c_cr << "\n";
    std::cout << "AvgRcr=" << s.avg_r_cr << "\n";
    std::cout << "CDcr=" << s.cd_cr << "\n";
    std::cout << "CDcm_judged=" << s.cd_cm << "\n";
    std::cout << "CDrd=" << s.cd_rd << "\n";
  }
  return 0;
}

int run_fixtures(const CliOptions& o, const std::string& sentences_path,
                 const std::string& out_path) {
  acd::RunConfig config = resolve(o);
  if (!config.parser_endpoint)
    throw acd::ConfigError("fixtures recording needs --endpoint");
  acd::ServiceAnnotator service(*config.parser_endpoint, config.label_scheme);

  std::vector<std::string> sentences;
  if (!sentences_path.empty()) {
    std::ifstream in(sentences_path);
    if (!in) throw acd::ConfigError("cannot open " + sentences_path);
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) sentences.push_back(line);
  } else {
    acd::UcsInstance ucs = acd::read_ucs_file(config.input_path);
    for (const auto& s : ucs.steps) {
      sentences.push_back(s.text);
      if (s.pre_condition) sentences.push_back(*s.pre_condition);
      if (s.post_condition) sentences.push_back(*s.post_condition);
    }
    for (const auto& d : ucs.description) sentences.push_back(d);
  }

  std::ostringstream out;
  for (const auto& s : sentences) {
    acd::ParsedSentence p = service.annotate(s);
    out << acd::to_fixture_block(p) << "\n";
  }
  write_file(out_path, out.str());
  std::cout << "recorded " << sentences.size() << " fixture blocks to " << out_path
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analysis class diagram generation from use case specifications"};
  app.require_subcommand(1);

  CliOptions o;
  std::string score_classes, score_rels, score_summary;
  std::string sentences_path, fixtures_out;

  CLI::App* generate = app.add_subcommand("generate",
                                          "run the full pipeline and write artifacts");
  add_common_flags(generate, o);
  generate->add_option("--dot", o.dot, "write the DOT graph here");
  generate->add_option("--xmi", o.xmi, "write the XMI export here");
  generate->add_option("--report", o.report, "write the quality report here");
  generate->add_option("--questionnaires", o.questionnaires,
                       "prefix for the questionnaire files");
  generate->add_option("--trace", o.trace, "write the rule trace here");

  CLI::App* classify = app.add_subcommand("classify",
                                          "steps 1-3 only: per-sentence structures");
  add_common_flags(classify, o);
  classify->add_flag("--explain", o.explain, "include sentences and near misses");

  CLI::App* metrics = app.add_subcommand("metrics", "pipeline + quality report");
  add_common_flags(metrics, o);
  metrics->add_option("--classes", score_classes, "filled class questionnaire");
  metrics->add_option("--relationships", score_rels,
                      "filled relationship questionnaire");
  metrics->add_option("--summary", score_summary, "filled summary questionnaire");

  CLI::App* fixtures = app.add_subcommand(
      "fixtures", "record parser service responses into a fixture file");
  add_common_flags(fixtures, o);
  fixtures->add_option("--sentences", sentences_path,
                       "file with one sentence per line (default: the UCS)");
  fixtures->add_option("--out", fixtures_out, "fixture file to write")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return run_generate(o);
    if (classify->parsed()) return run_classify(o);
    if (metrics->parsed())
      return run_metrics(o, score_classes, score_rels, score_summary);
    if (fixtures->parsed()) return run_fixtures(o, sentences_path, fixtures_out);
  } catch (const acd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

#include "acd/engine.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace acd {

namespace {

std::string lower(std::string s) { return to_lower_copy(std::move(s)); }

bool starts_with_ci(const std::string& s, const std::string& prefix) {
  if (s.size() < prefix.size()) return false;
  return lower(s.substr(0, prefix.size())) == lower(prefix);
}

bool is_noun_pos(const std::string& pos) { return pos.rfind("NN", 0) == 0; }

std::vector<std::string> split_words(const std::string& phrase) {
  std::vector<std::string> out;
  std::stringstream ss(phrase);
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

}  // namespace

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

void EntityTermSet::add(const std::string& term) {
  if (term.empty() || contains(term)) return;
  items_.push_back(term);
}

bool EntityTermSet::contains(const std::string& term) const {
  for (const auto& t : items_)
    if (equal_ci(t, term)) return true;
  return false;
}

GenAggLexicon GenAggLexicon::defaults() {
  GenAggLexicon l;
  l.child_parent_markers = {"is a", "type of", "types of", "kind of", "kinds of"};
  l.parent_child_markers = {"parent of", "categorized into", "has types",
                            "of types", "classified into", "classified as"};
  l.part_whole_markers = {"part of", "parts of", "unit of", "member of"};
  l.whole_part_markers = {"consists of", "consist of", "composed of", "made of",
                          "contains"};
  return l;
}

GenAggLexicon GenAggLexicon::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lexicon file: " + path);
  GenAggLexicon l;
  std::vector<std::string>* target = nullptr;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = line;
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front())))
      t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back())))
      t.pop_back();
    if (t.empty() || t[0] == '#') continue;
    if (t == "[child-parent]") target = &l.child_parent_markers;
    else if (t == "[parent-child]") target = &l.parent_child_markers;
    else if (t == "[part-whole]") target = &l.part_whole_markers;
    else if (t == "[whole-part]") target = &l.whole_part_markers;
    else if (t[0] == '[') throw ParseError("unknown lexicon section: " + t, lineno);
    else if (!target) throw ParseError("marker before any section", lineno);
    else target->push_back(lower(t));
  }
  if (l.child_parent_markers.empty() || l.parent_child_markers.empty() ||
      l.part_whole_markers.empty() || l.whole_part_markers.empty())
    throw ValidationError("lexicon must populate all four marker lists");
  return l;
}

MarkerScan scan_markers(const ParsedSentence& raw, const GenAggLexicon& lex) {
  std::vector<std::string> toks;
  toks.reserve(raw.tokens.size());
  for (const auto& t : raw.tokens) toks.push_back(lower(t.surface));

  auto scan_list = [&](const std::vector<std::string>& markers,
                       MarkerCategory cat) -> MarkerScan {
    int first = 0, last = 0;
    for (const auto& m : markers) {
      auto words = split_words(lower(m));
      if (words.empty()) continue;
      for (size_t i = 0; i + words.size() <= toks.size(); ++i) {
        bool hit = true;
        for (size_t j = 0; j < words.size(); ++j)
          if (toks[i + j] != words[j]) {
            hit = false;
            break;
          }
        if (hit) {
          int b = static_cast<int>(i) + 1;
          int e = static_cast<int>(i + words.size());
          if (first == 0 || b < first) first = b;
          if (e > last) last = e;
        }
      }
    }
    if (first == 0) return {};
    return {cat, first, last};
  };

  MarkerScan s;
  s = scan_list(lex.child_parent_markers, MarkerCategory::ChildParent);
  if (s.category != MarkerCategory::None) return s;
  s = scan_list(lex.parent_child_markers, MarkerCategory::ParentChild);
  if (s.category != MarkerCategory::None) return s;
  s = scan_list(lex.part_whole_markers, MarkerCategory::PartWhole);
  if (s.category != MarkerCategory::None) return s;
  return scan_list(lex.whole_part_markers, MarkerCategory::WholePart);
}

std::string tr_rule_for(Structure s) {
  switch (s) {
    case Structure::SVIODO: return "TR11";
    case Structure::SVDOThatClause: return "TR12";
    case Structure::SVThatClause: return "TR13";
    case Structure::SVDONotToInf: return "TR14";
    case Structure::SVNotToInf: return "TR15";
    case Structure::SVDOtobeComp: return "TR16";
    case Structure::SVDOToInf: return "TR17";
    case Structure::SVDOPresentPart: return "TR18";
    case Structure::SVDOPastPart: return "TR19";
    case Structure::SVDOAdj: return "TR20";
    case Structure::SVDONoun: return "TR21";
    case Structure::SVDOConjToInf: return "TR22";
    case Structure::SVDOConjClause: return "TR23";
    case Structure::SVDOAdverbial: return "TR24";
    case Structure::SAuxVDO: return "TR25";
    case Structure::SVDOPO: return "TR26";
    case Structure::SVConjToInf: return "TR27";
    case Structure::SVConjClause: return "TR28";
    case Structure::SVToInf: return "TR29";
    case Structure::SVGerund: return "TR30";
    case Structure::SVAdverbialAdjunct: return "TR31";
    case Structure::SVPredicative: return "TR32";
    case Structure::SVForComp: return "TR33";
    case Structure::SVPassPO: return "TR34";
    case Structure::SAuxVPassPO: return "TR35";
    case Structure::SVPO: return "TR36";
    case Structure::SVDO: return "TR37";
    case Structure::Conditional: return "TR38";
    case Structure::SV: return "TR39";
    case Structure::Include:
    case Structure::Extend: return "TR40";
    case Structure::Resume: return "TR41";
    case Structure::Loop: return "TR42";
    default: return "";
  }
}

DiagramBuilder::DiagramBuilder(const StructureClassifier& classifier,
                               const Annotator& annotator, GenAggLexicon lexicon)
    : classifier_(classifier), annotator_(annotator), lexicon_(std::move(lexicon)) {}

void DiagramBuilder::note(const std::string& rule, const std::string& step,
                          const std::string& bindings, const std::string& effect) {
  std::string s = step.empty() ? "-" : step;
  std::string b = bindings.empty() ? "-" : bindings;
  trace_.push_back(rule + " | " + s + " | " + b + " | " + effect);
}

bool DiagramBuilder::is_system_term(const std::string& term) const {
  if (equal_ci(term, "system")) return true;
  return !control_alias_.empty() && equal_ci(term, control_alias_);
}

int DiagramBuilder::create_control_class(const UcsInstance& ucs) {
  control_alias_ = strip_spaces(ucs.use_case_name);
  control_ = diagram_.ensure_class(control_alias_, {kControlClass}, "usecase");
  note("TR2", "", "", "control class " + control_alias_);
  return control_;
}

void DiagramBuilder::create_boundary_classes(const UcsInstance& ucs) {
  for (const auto& a : ucs.actors) {
    std::string name = strip_spaces(a.name);
    std::string kind = a.kind == ActorKind::Primary ? kPrimary : kSecondary;
    diagram_.ensure_class(name, {kBoundary, kind}, "actors");
    note("TR3", "", "", "boundary class " + name + " <<" + kind + ">>");
  }
}

void DiagramBuilder::seed_entity_classes(const EntityTermSet& terms,
                                         const std::vector<const SentenceUnit*>& units) {
  // TR4: prefix pairs over the global term set. A term that already names a
  // class stays a class and is not recorded as an attribute.
  for (const auto& t1 : terms.items()) {
    for (const auto& t2 : terms.items()) {
      if (equal_ci(t1, t2)) continue;
      if (!starts_with_ci(t2, t1)) continue;
      if (diagram_.find_class(t2) >= 0) continue;
      int c = diagram_.ensure_class(t1, {kEntityClass}, "terms");
      diagram_.add_attribute(c, t2);
      note("TR4", "", "t1=" + t1 + " t2=" + t2,
           "class " + t1 + " attribute " + t2);
    }
  }

  auto add_attr = [&](int cls, const std::string& attr, const std::string& step,
                      const std::string& rule) {
    if (diagram_.find_class(attr) >= 0) return;  // class wins over attribute
    diagram_.add_attribute(cls, attr, step);
    note(rule, step, "", "class " + diagram_.class_at(cls).name + " attribute " + attr);
  };

  for (const SentenceUnit* u : units) {
    const ParsedSentence& s = u->merged;
    const std::string& step = u->step_id;
    int root = s.root_index();

    // TR5: has-pattern.
    for (const auto& d : s.deps) {
      if (d.label != "nsubj" || !equal_ci(s.surface(d.head), "has")) continue;
      for (const auto& o : s.deps) {
        if (o.label != "dobj" || o.head != d.head) continue;
        int c = diagram_.ensure_class(s.surface(d.dep), {kEntityClass}, step);
        note("TR5", step, "A=" + s.surface(d.dep) + " B=" + s.surface(o.dep),
             "class " + s.surface(d.dep));
        add_attr(c, s.surface(o.dep), step, "TR5");
      }
    }

    // TR6 (in/on) and TR7 (of): prep must hang off a noun.
    for (size_t pi = 0; pi < s.deps.size(); ++pi) {
      const auto& p = s.deps[pi];
      if (p.label != "prep") continue;
      std::string prep_word = lower(s.surface(p.dep));
      bool tr6 = prep_word == "in" || prep_word == "on";
      bool tr7 = prep_word == "of";
      if (!tr6 && !tr7) continue;
      if (!is_noun_pos(s.pos(p.head))) continue;
      for (const auto& o : s.deps) {
        if (o.label != "pobj" || o.head != p.dep) continue;
        std::string rule = tr6 ? "TR6" : "TR7";
        if (is_noun_pos(s.pos(o.dep))) {
          int c = diagram_.ensure_class(s.surface(o.dep), {kEntityClass}, step);
          note(rule, step, "A=" + s.surface(p.head) + " B=" + s.surface(o.dep),
               "class " + s.surface(o.dep));
          add_attr(c, s.surface(p.head), step, rule);
          for (size_t ci = 0; ci < pi; ++ci) {
            const auto& cj = s.deps[ci];
            if (cj.label == "conj" && cj.head == p.head)
              add_attr(c, s.surface(cj.dep), step, rule);
          }
        } else if (tr6 && s.pos(o.dep).rfind("JJ", 0) == 0) {
          int c = diagram_.ensure_class(s.surface(p.head), {kEntityClass}, step);
          note(rule, step, "A=" + s.surface(p.head) + " B=" + s.surface(o.dep),
               "class " + s.surface(p.head));
          add_attr(c, s.surface(o.dep), step, rule);
        }
      }
    }

    // TR8: possessives.
    for (const auto& d : s.deps) {
      if (d.label != "poss") continue;
      int c = diagram_.ensure_class(s.surface(d.dep), {kEntityClass}, step);
      note("TR8", step, "A=" + s.surface(d.head) + " B=" + s.surface(d.dep),
           "class " + s.surface(d.dep));
      add_attr(c, s.surface(d.head), step, "TR8");
    }

    // TR9: adjectival modifiers of main-clause heads only.
    for (const auto& d : s.deps) {
      if (d.label != "amod") continue;
      bool main_clause = false;
      for (const auto& o : s.deps)
        if (o.dep == d.head && o.head == root) {
          main_clause = true;
          break;
        }
      if (!main_clause) continue;
      int c = diagram_.ensure_class(s.surface(d.head), {kEntityClass}, step);
      note("TR9", step, "A=" + s.surface(d.head) + " B=" + s.surface(d.dep),
           "class " + s.surface(d.head));
      add_attr(c, s.surface(d.dep), step, "TR9");
    }
  }
}

namespace {

// TR43: dependents after the root dependency, in token order.
std::string params_after_root(const ParsedSentence& s) {
  int root_pos = s.find_dep("root");
  if (root_pos < 0) return "";
  std::vector<int> idxs;
  for (size_t i = static_cast<size_t>(root_pos) + 1; i < s.deps.size(); ++i)
    idxs.push_back(s.deps[i].dep);
  std::sort(idxs.begin(), idxs.end());
  std::string out;
  for (int i : idxs) {
    if (!out.empty()) out += " ";
    out += s.surface(i);
  }
  return out;
}

bool tr43_applies(Structure st) {
  switch (st) {
    case Structure::SV:
    case Structure::SVDO:
    case Structure::Conditional:
    case Structure::Include:
    case Structure::Extend:
    case Structure::Resume:
    case Structure::Loop:
      return false;
    default:
      return true;
  }
}

}  // namespace

std::vector<OpCandidate> DiagramBuilder::extract_operations(const SentenceUnit& unit) {
  return extract_operations_impl(unit, 0);
}

std::vector<OpCandidate> DiagramBuilder::extract_operations_impl(
    const SentenceUnit& unit, int depth) {
  const ParsedSentence& s = unit.merged;
  const Classification& cls = unit.cls;
  const std::string& step = unit.step_id;
  Structure st = cls.structure;
  std::vector<OpCandidate> out;

  auto var = [&](char v) -> int {
    auto it = cls.binding.vars.find(v);
    return it == cls.binding.vars.end() ? 0 : it->second;
  };
  auto sv = [&](char v) { return s.surface(var(v)); };
  auto find_dobj_of = [&](int head) -> int {
    for (const auto& d : s.deps)
      if (d.label == "dobj" && d.head == head) return d.dep;
    return 0;
  };

  OpCandidate op;
  op.provenance = step;

  switch (st) {
    case Structure::SVIODO:
      op.name = sv('A'); op.source_entity_term = sv('B'); op.dest_entity_term = sv('D');
      break;
    case Structure::SVDOThatClause:
    case Structure::SVDONotToInf:
    case Structure::SVDOPastPart:
    case Structure::SVDOConjToInf:
    case Structure::SVDOConjClause:
    case Structure::SVDOAdverbial:
    case Structure::SVDO:
      op.name = sv('A'); op.source_entity_term = sv('B'); op.dest_entity_term = sv('C');
      break;
    case Structure::SVThatClause:
      op.name = sv('A'); op.source_entity_term = sv('B'); op.dest_entity_term = sv('E');
      break;
    case Structure::SVNotToInf:
      op.name = sv('A'); op.source_entity_term = sv('B'); op.dest_entity_term = sv('F');
      break;
    case Structure::SVDOtobeComp:
    case Structure::SVDOAdj:
    case Structure::SVDONoun:
      op.name = sv('A'); op.source_entity_term = sv('B'); op.dest_entity_term = sv('D');
      break;
    case Structure::SVDOToInf: {
      // TR17: dest is the infinitive verb; a dobj under it adds op2.
      op.name = sv('A'); op.source_entity_term = sv('B'); op.dest_entity_term = sv('D');
      int f = find_dobj_of(var('D'));
      if (f != 0) {
        auto op2 = std::make_shared<OpCandidate>();
        op2->name = sv('D');
        op2->source_entity_term = sv('C');
        op2->dest_entity_term = s.surface(f);
        op2->provenance = step;
        op.secondary = op2;
      }
      break;
    }
    case Structure::SVDOPresentPart: {
      // TR18 (dest=C; the participle's object and its conjuncts become
      // attributes of the class hosting C).
      op.name = sv('A'); op.source_entity_term = sv('B'); op.dest_entity_term = sv('C');
      int e = find_dobj_of(var('D'));
      if (e != 0) {
        op.dest_attributes.push_back(s.surface(e));
        int dobj_pos = -1;
        for (size_t i = 0; i < s.deps.size(); ++i)
          if (s.deps[i].label == "dobj" && s.deps[i].head == var('D') &&
              s.deps[i].dep == e) {
            dobj_pos = static_cast<int>(i);
            break;
          }
        for (size_t i = static_cast<size_t>(dobj_pos) + 1; i < s.deps.size(); ++i)
          if (s.deps[i].label == "conj" && s.deps[i].head == e)
            op.dest_attributes.push_back(s.surface(s.deps[i].dep));
      }
      break;
    }
    case Structure::SAuxVDO:
      op.name = sv('A'); op.source_entity_term = sv('B'); op.dest_entity_term = sv('D');
      break;
    case Structure::SVDOPO: {
      // TR26 tests E (the prepositional object word) against the list.
      op.name = sv('A'); op.source_entity_term = sv('B');
      std::string e = lower(sv('E'));
      static const char* preps[] = {"to", "from", "on", "in", "into", "through", "of"};
      bool in_list = std::any_of(std::begin(preps), std::end(preps),
                                 [&](const char* p) { return e == p; });
      op.dest_entity_term = in_list ? sv('E') : sv('C');
      break;
    }
    case Structure::SVConjToInf:
    case Structure::SVConjClause:
    case Structure::SVAdverbialAdjunct:
      op.name = sv('A'); op.source_entity_term = sv('B'); op.dest_entity_term = sv('B');
      break;
    case Structure::SVToInf: {
      op.name = sv('A'); op.source_entity_term = sv('B');
      int e = find_dobj_of(var('C'));
      op.dest_entity_term = e != 0 ? s.surface(e) : sv('B');
      break;
    }
    case Structure::SVGerund: {
      op.name = sv('A'); op.source_entity_term = sv('B');
      int d = find_dobj_of(var('C'));
      op.dest_entity_term = d != 0 ? s.surface(d) : sv('B');
      break;
    }
    case Structure::SVPredicative: {
      // TR32: no operation; adjective complements become attributes, noun
      // complements a generalization.
      std::string pred = sv('A');
      std::string subj = sv('B');
      if (s.pos(var('A')).rfind("JJ", 0) == 0) {
        int c = diagram_.ensure_class(subj, {kEntityClass}, step);
        if (diagram_.find_class(pred) < 0) diagram_.add_attribute(c, pred, step);
        note("TR32", step, "A=" + pred + " B=" + subj,
             "class " + subj + " attribute " + pred);
      } else if (is_noun_pos(s.pos(var('A')))) {
        int parent = diagram_.ensure_class(pred, {kEntityClass}, step);
        int child = diagram_.ensure_class(subj, {kEntityClass}, step);
        if (parent != child) add_generalization(parent, child, step);
        note("TR32", step, "A=" + pred + " B=" + subj,
             "generalization " + pred + " <- " + subj);
      }
      no_op_steps_.push_back(step);
      return out;
    }
    case Structure::SVForComp: {
      op.name = sv('A'); op.source_entity_term = sv('B');
      op.dest_entity_term = equal_ci(sv('A'), sv('E')) ? sv('B') : sv('E');
      break;
    }
    case Structure::SVPassPO:
      op.name = sv('A'); op.source_entity_term = sv('E'); op.dest_entity_term = sv('B');
      break;
    case Structure::SAuxVPassPO:
      op.name = sv('A'); op.source_entity_term = sv('F'); op.dest_entity_term = sv('B');
      break;
    case Structure::SVPO:
      op.name = sv('A'); op.source_entity_term = sv('B'); op.dest_entity_term = sv('D');
      break;
    case Structure::Conditional: {
      // TR38: strip the guard clause and re-dispatch the main clause.
      if (depth > 2) {
        no_op_steps_.push_back(step);
        return out;
      }
      int mark_head = var('A');
      if (mark_head == 0) {
        no_op_steps_.push_back(step);
        return out;
      }
      std::set<int> remove;
      std::vector<int> stack{mark_head};
      remove.insert(mark_head);
      while (!stack.empty()) {
        int h = stack.back();
        stack.pop_back();
        for (const auto& d : s.deps)
          if (d.head == h && !remove.count(d.dep)) {
            remove.insert(d.dep);
            stack.push_back(d.dep);
          }
      }
      int lastRemoved = *remove.rbegin();
      std::vector<Token> rest;
      for (const auto& t : s.tokens) {
        if (remove.count(t.index)) continue;
        if (t.index == lastRemoved + 1 && t.surface == ",") continue;
        rest.push_back(t);
      }
      if (rest.empty()) {
        no_op_steps_.push_back(step);
        return out;
      }
      std::string text = reconstruct_text(rest);
      SentenceUnit main;
      main.step_id = step;
      main.section = unit.section;
      main.is_flow = unit.is_flow;
      main.raw = annotator_.annotate(text);
      main.merged = main.raw;
      main.cls = classifier_.classify(main.merged);
      note("TR38", step, cls.binding.describe(s),
           "guard stripped; main clause \"" + text + "\" re-dispatched as " +
               to_string(main.cls.structure));
      if (main.cls.structure == Structure::Unrecognized ||
          main.cls.structure == Structure::Conditional) {
        no_op_steps_.push_back(step);
        return out;
      }
      return extract_operations_impl(main, depth + 1);
    }
    case Structure::SV:
      op.name = sv('A'); op.source_entity_term = sv('B'); op.dest_entity_term = sv('B');
      op.params = "";
      break;
    case Structure::Include:
    case Structure::Extend: {
      // TR40: named from the keyword phrase; the target use case name is the
      // concatenation of the dependents after the first nn().
      op.source_entity_term = "system";
      op.name = st == Structure::Include ? "<<INCLUDE USE CASE>>" : "<<EXTEND USE CASE>>";
      op.dest_stereotype = kControlClass;
      int first_nn = s.find_dep("nn");
      std::string dest;
      if (first_nn >= 0)
        for (size_t i = static_cast<size_t>(first_nn) + 1; i < s.deps.size(); ++i)
          dest += s.surface(s.deps[i].dep);
      op.dest_entity_term = dest;
      break;
    }
    case Structure::Resume:
    case Structure::Loop: {
      op.source_entity_term = "system";
      op.dest_entity_term = "system";
      int first_nn = s.find_dep("nn");
      if (first_nn >= 0) {
        op.name = s.surface(s.deps[static_cast<size_t>(first_nn)].dep);
        op.params = s.surface(s.deps[static_cast<size_t>(first_nn)].head);
      } else {
        op.name = st == Structure::Resume ? "RESUME" : "REPEAT";
      }
      break;
    }
    case Structure::Unrecognized:
      return out;
  }

  if (tr43_applies(st)) {
    op.params = params_after_root(s);
    if (op.secondary) op.secondary->params = op.params;
  }

  note(tr_rule_for(st), step, cls.binding.describe(s),
       "op " + op.name + " src=" + op.source_entity_term + " dest=" +
           op.dest_entity_term +
           (op.params.empty() ? "" : " params=\"" + op.params + "\""));
  if (op.secondary)
    note("TR17", step, "", "op2 " + op.secondary->name + " src=" +
                               op.secondary->source_entity_term + " dest=" +
                               op.secondary->dest_entity_term);
  out.push_back(std::move(op));
  return out;
}

int DiagramBuilder::resolve_source_class(const OpCandidate& op) {
  const std::string& term = op.source_entity_term;
  if (is_system_term(term) && control_ >= 0) return control_;
  int idx = diagram_.find_class(term);
  if (idx >= 0) return idx;
  idx = diagram_.ensure_class(term, {kEntityClass}, op.provenance);
  note("TR44", op.provenance, "", "entity class " + term);
  return idx;
}

int DiagramBuilder::resolve_host_class(const OpCandidate& op) {
  const std::string& term = op.dest_entity_term;
  if (term.empty() || (is_system_term(term) && control_ >= 0)) {
    return control_ >= 0 ? control_ : resolve_source_class(op);
  }
  int idx = diagram_.find_class(term);
  if (idx >= 0) return idx;
  for (size_t i = 0; i < diagram_.classes().size(); ++i)
    if (diagram_.classes()[i].has_attribute_ci(term)) return static_cast<int>(i);
  idx = diagram_.ensure_class(term, {op.dest_stereotype}, op.provenance);
  note("TR45", op.provenance, "",
       op.dest_stereotype + " " + term + " created for operation " + op.name);
  return idx;
}

void DiagramBuilder::materialize_classes(const OpCandidate& op) {
  resolve_source_class(op);
  int host = resolve_host_class(op);
  diagram_.add_operation(host, op.name, op.params, op.provenance);
  note("TR45", op.provenance, "",
       "operation " + op.name + "(" + op.params + ") hosted on " +
           diagram_.class_at(host).name);
  for (const auto& a : op.dest_attributes) {
    if (diagram_.find_class(a) >= 0) continue;
    diagram_.add_attribute(host, a, op.provenance);
    note("TR18", op.provenance, "",
         "class " + diagram_.class_at(host).name + " attribute " + a);
  }
  if (!op.provenance.empty() &&
      std::find(hosted_steps_.begin(), hosted_steps_.end(), op.provenance) ==
          hosted_steps_.end())
    hosted_steps_.push_back(op.provenance);
  if (op.secondary) materialize_classes(*op.secondary);
}

void DiagramBuilder::associate(int from, int to, const std::string& op_name,
                               const std::string& provenance) {
  if (from == to) return;
  for (size_t i = 0; i < diagram_.relationships().size(); ++i) {
    const auto& r = diagram_.relationships()[i];
    if (r.kind != RelKind::Association || r.end1 != from || r.end2 != to) continue;
    auto& parts = assoc_parts_[i];
    if (std::find(parts.begin(), parts.end(), op_name) == parts.end()) {
      parts.push_back(op_name);
      note("TR46", provenance, "",
           "association " + diagram_.class_at(from).name + " -> " +
               diagram_.class_at(to).name + " gains " + op_name);
    }
    auto& rel = diagram_.rel_at(static_cast<int>(i));
    if (!provenance.empty() &&
        std::find(rel.provenance.begin(), rel.provenance.end(), provenance) ==
            rel.provenance.end())
      rel.provenance.push_back(provenance);
    return;
  }
  UmlRelationship r;
  r.end1 = from;
  r.end2 = to;
  r.kind = RelKind::Association;
  r.navigability = Navigability::End1ToEnd2;
  r.name = op_name;
  if (!provenance.empty()) r.provenance.push_back(provenance);
  diagram_.add_relationship(r);
  assoc_parts_.resize(diagram_.relationships().size());
  assoc_parts_.back() = {op_name};
  note("TR46", provenance, "",
       "association " + diagram_.class_at(from).name + " -> " +
           diagram_.class_at(to).name + " named " + op_name);
}

void DiagramBuilder::derive_association(const OpCandidate& op) {
  int src = resolve_source_class(op);
  int host = resolve_host_class(op);
  if (src == host) {
    note("TR46", op.provenance, "", "self association suppressed for " + op.name);
  } else if (diagram_.class_at(src).has_stereotype(kBoundary) && control_ >= 0) {
    // Boundary callers interact through the control class.
    if (src != control_) associate(src, control_, op.name, op.provenance);
    if (host != control_) associate(control_, host, op.name, op.provenance);
  } else {
    associate(src, host, op.name, op.provenance);
  }
  if (op.secondary) derive_association(*op.secondary);
}

void DiagramBuilder::finalize_association_names() {
  assoc_parts_.resize(diagram_.relationships().size());
  for (size_t i = 0; i < diagram_.relationships().size(); ++i) {
    const auto& r = diagram_.relationships()[i];
    if (r.kind != RelKind::Association || assoc_parts_[i].empty()) continue;
    auto parts = assoc_parts_[i];
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    std::string name;
    for (const auto& p : parts) {
      if (!name.empty()) name += "_";
      name += p;
    }
    diagram_.rel_at(static_cast<int>(i)).name = name;
  }
}

void DiagramBuilder::add_generalization(int parent, int child,
                                        const std::string& provenance) {
  for (const auto& r : diagram_.relationships())
    if (r.kind == RelKind::Generalization && r.end1 == parent && r.end2 == child)
      return;
  UmlRelationship r;
  r.end1 = parent;
  r.end2 = child;
  r.kind = RelKind::Generalization;
  r.navigability = Navigability::None;
  if (!provenance.empty()) r.provenance.push_back(provenance);
  diagram_.add_relationship(r);
  assoc_parts_.resize(diagram_.relationships().size());
}

void DiagramBuilder::add_aggregation(int whole, int part,
                                     const std::string& provenance) {
  for (const auto& r : diagram_.relationships())
    if (r.kind == RelKind::Aggregation && r.end1 == whole && r.end2 == part)
      return;
  UmlRelationship r;
  r.end1 = whole;
  r.end2 = part;
  r.kind = RelKind::Aggregation;
  r.navigability = Navigability::None;
  if (!provenance.empty()) r.provenance.push_back(provenance);
  diagram_.add_relationship(r);
  assoc_parts_.resize(diagram_.relationships().size());
}

namespace {

std::vector<int> noun_indices_before(const ParsedSentence& s, int limit) {
  std::vector<int> out;
  for (const auto& t : s.tokens)
    if (t.index < limit && is_noun_pos(t.pos)) out.push_back(t.index);
  return out;
}

std::vector<int> noun_indices_after(const ParsedSentence& s, int limit) {
  std::vector<int> out;
  for (const auto& t : s.tokens)
    if (t.index > limit && is_noun_pos(t.pos)) out.push_back(t.index);
  return out;
}

}  // namespace

void DiagramBuilder::derive_generalizations(
    const UcsInstance& ucs, const std::vector<const SentenceUnit*>& marker_units) {
  for (const SentenceUnit* u : marker_units) {
    const ParsedSentence& s = u->raw;
    const MarkerScan& m = u->marker;
    std::string loc = u->step_id.empty() ? "description" : u->step_id;
    if (m.category == MarkerCategory::ChildParent) {
      auto rights = noun_indices_after(s, m.last);
      auto lefts = noun_indices_before(s, m.first);
      if (rights.empty() || lefts.empty()) continue;
      int parent = diagram_.ensure_class(s.surface(rights.front()), {kEntityClass}, loc);
      for (int li : lefts) {
        int child = diagram_.ensure_class(s.surface(li), {kEntityClass}, loc);
        if (child == parent) continue;
        add_generalization(parent, child, loc);
        note("TR47", loc, "", "generalization " + diagram_.class_at(parent).name +
                                  " <- " + diagram_.class_at(child).name);
      }
    } else if (m.category == MarkerCategory::ParentChild) {
      auto lefts = noun_indices_before(s, m.first);
      auto rights = noun_indices_after(s, m.last);
      if (lefts.empty() || rights.empty()) continue;
      int parent = diagram_.ensure_class(s.surface(lefts.back()), {kEntityClass}, loc);
      for (int ri : rights) {
        int child = diagram_.ensure_class(s.surface(ri), {kEntityClass}, loc);
        if (child == parent) continue;
        add_generalization(parent, child, loc);
        note("TR48", loc, "", "generalization " + diagram_.class_at(parent).name +
                                  " <- " + diagram_.class_at(child).name);
      }
    }
  }

  // TR49/TR50 only connect classes that already exist with the right
  // stereotype (single-UCS runs have no parent control/boundary classes).
  if (ucs.parent_use_case_name && control_ >= 0) {
    std::string pname = strip_spaces(*ucs.parent_use_case_name);
    int idx = diagram_.find_class(pname);
    if (idx >= 0 && idx != control_ &&
        diagram_.class_at(idx).has_stereotype(kControlClass)) {
      add_generalization(idx, control_, "usecase");
      note("TR49", "", "", "generalization " + pname + " <- " +
                               diagram_.class_at(control_).name);
    } else {
      note("TR49", "", "",
           "skipped: no control class named " + pname + " in this diagram");
    }
  }
  for (const auto& a : ucs.actors) {
    if (!a.parent_actor_name) continue;
    std::string pname = strip_spaces(*a.parent_actor_name);
    int parent = diagram_.find_class(pname);
    int child = diagram_.find_class(strip_spaces(a.name));
    if (parent >= 0 && child >= 0 && parent != child &&
        diagram_.class_at(parent).has_stereotype(kBoundary)) {
      add_generalization(parent, child, "actors");
      note("TR50", "", "", "generalization " + pname + " <- " +
                               diagram_.class_at(child).name);
    } else {
      note("TR50", "", "",
           "skipped: no boundary class named " + pname + " in this diagram");
    }
  }
}

void DiagramBuilder::derive_aggregations(
    const std::vector<const SentenceUnit*>& marker_units) {
  // TR51: a class named like another class's attribute is its part.
  size_t n = diagram_.classes().size();
  for (size_t c1 = 0; c1 < n; ++c1)
    for (size_t c2 = 0; c2 < n; ++c2) {
      if (c1 == c2) continue;
      if (!diagram_.classes()[c1].has_attribute_ci(diagram_.classes()[c2].name))
        continue;
      add_aggregation(static_cast<int>(c1), static_cast<int>(c2), "");
      note("TR51", "", "", "aggregation " + diagram_.classes()[c1].name + " <>- " +
                               diagram_.classes()[c2].name);
    }

  for (const SentenceUnit* u : marker_units) {
    const ParsedSentence& s = u->raw;
    const MarkerScan& m = u->marker;
    std::string loc = u->step_id.empty() ? "description" : u->step_id;
    if (m.category == MarkerCategory::PartWhole) {
      auto rights = noun_indices_after(s, m.last);
      auto lefts = noun_indices_before(s, m.first);
      if (rights.empty() || lefts.empty()) continue;
      int whole = diagram_.ensure_class(s.surface(rights.front()), {kEntityClass}, loc);
      for (int li : lefts) {
        int part = diagram_.ensure_class(s.surface(li), {kEntityClass}, loc);
        if (part == whole) continue;
        add_aggregation(whole, part, loc);
        note("TR52", loc, "", "aggregation " + diagram_.class_at(whole).name +
                                  " <>- " + diagram_.class_at(part).name);
      }
    } else if (m.category == MarkerCategory::WholePart) {
      auto lefts = noun_indices_before(s, m.first);
      auto rights = noun_indices_after(s, m.last);
      if (lefts.empty() || rights.empty()) continue;
      int whole = diagram_.ensure_class(s.surface(lefts.back()), {kEntityClass}, loc);
      for (int ri : rights) {
        int part = diagram_.ensure_class(s.surface(ri), {kEntityClass}, loc);
        if (part == whole) continue;
        add_aggregation(whole, part, loc);
        note("TR53", loc, "", "aggregation " + diagram_.class_at(whole).name +
                                  " <>- " + diagram_.class_at(part).name);
      }
    }
  }
}

std::vector<std::string> DiagramBuilder::prune() {
  auto removed = diagram_.prune_unrelated();
  for (const auto& name : removed) note("TR54", "", "", "removed class " + name);
  control_ = control_alias_.empty() ? -1 : diagram_.find_class(control_alias_);
  return removed;
}

BuildResult build_diagram(const UcsInstance& ucs,
                          const std::vector<SentenceUnit>& units,
                          const StructureClassifier& classifier,
                          const Annotator& annotator, const GenAggLexicon& lexicon) {
  DiagramBuilder b(classifier, annotator, lexicon);
  BuildResult result;

  b.create_control_class(ucs);
  b.create_boundary_classes(ucs);

  EntityTermSet terms;
  std::vector<const SentenceUnit*> seed_units;
  std::vector<const SentenceUnit*> op_units;
  std::vector<const SentenceUnit*> marker_units;
  for (const auto& u : units) {
    if (u.marker.category != MarkerCategory::None) {
      marker_units.push_back(&u);
      continue;
    }
    if (!u.is_flow) continue;
    if (u.cls.structure == Structure::Unrecognized) {
      result.skipped.push_back({u.step_id, u.merged.text, u.cls.near_miss_rule_id,
                                u.cls.near_miss_depth, u.cls.near_miss_total});
      continue;
    }
    op_units.push_back(&u);
    if (!is_keyword_structure(u.cls.structure)) {
      seed_units.push_back(&u);
      for (const auto& t : u.terms) terms.add(t);
    }
  }

  b.seed_entity_classes(terms, seed_units);

  std::vector<OpCandidate> ops;
  for (const SentenceUnit* u : op_units) {
    auto extracted = b.extract_operations(*u);
    for (auto& op : extracted) ops.push_back(std::move(op));
  }
  for (const auto& op : ops) b.materialize_classes(op);
  for (const auto& op : ops) b.derive_association(op);

  b.derive_generalizations(ucs, marker_units);
  b.derive_aggregations(marker_units);
  b.finalize_association_names();
  result.removed_classes = b.prune();

  result.trace = b.trace();
  result.hosted_steps = b.hosted_steps();
  result.no_op_steps = b.no_op_steps();
  result.diagram = std::move(b.diagram());
  return result;
}

}  // namespace acd

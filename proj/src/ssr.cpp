#include "acd/ssr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace acd {

std::string to_string(Structure s) {
  switch (s) {
    case Structure::SVIODO: return "SVIODO";
    case Structure::SVDOThatClause: return "SVDOThatClause";
    case Structure::SVThatClause: return "SVThatClause";
    case Structure::SVDONotToInf: return "SVDONotToInf";
    case Structure::SVNotToInf: return "SVNotToInf";
    case Structure::SVDOtobeComp: return "SVDOtobeComp";
    case Structure::SVDOToInf: return "SVDOToInf";
    case Structure::SVDOPresentPart: return "SVDOPresentPart";
    case Structure::SVDOPastPart: return "SVDOPastPart";
    case Structure::SVDOAdj: return "SVDOAdj";
    case Structure::SVDONoun: return "SVDONoun";
    case Structure::SVDOConjToInf: return "SVDOConjToInf";
    case Structure::SVDOConjClause: return "SVDOConjClause";
    case Structure::SVDOAdverbial: return "SVDOAdverbial";
    case Structure::SAuxVDO: return "SAuxVDO";
    case Structure::SVDOPO: return "SVDOPO";
    case Structure::SVConjToInf: return "SVConjToInf";
    case Structure::SVConjClause: return "SVConjClause";
    case Structure::SVToInf: return "SVToInf";
    case Structure::SVGerund: return "SVGerund";
    case Structure::SVAdverbialAdjunct: return "SVAdverbialAdjunct";
    case Structure::SVPredicative: return "SVPredicative";
    case Structure::SVForComp: return "SVForComp";
    case Structure::SVPassPO: return "SVPassPO";
    case Structure::SAuxVPassPO: return "SAuxVPassPO";
    case Structure::SVPO: return "SVPO";
    case Structure::SVDO: return "SVDO";
    case Structure::Conditional: return "Conditional";
    case Structure::SV: return "SV";
    case Structure::Include: return "Include";
    case Structure::Extend: return "Extend";
    case Structure::Resume: return "Resume";
    case Structure::Loop: return "Loop";
    case Structure::Unrecognized: return "Unrecognized";
  }
  return "?";
}

std::optional<Structure> structure_from_string(const std::string& name) {
  static const Structure all[] = {
      Structure::SVIODO, Structure::SVDOThatClause, Structure::SVThatClause,
      Structure::SVDONotToInf, Structure::SVNotToInf, Structure::SVDOtobeComp,
      Structure::SVDOToInf, Structure::SVDOPresentPart, Structure::SVDOPastPart,
      Structure::SVDOAdj, Structure::SVDONoun, Structure::SVDOConjToInf,
      Structure::SVDOConjClause, Structure::SVDOAdverbial, Structure::SAuxVDO,
      Structure::SVDOPO, Structure::SVConjToInf, Structure::SVConjClause,
      Structure::SVToInf, Structure::SVGerund, Structure::SVAdverbialAdjunct,
      Structure::SVPredicative, Structure::SVForComp, Structure::SVPassPO,
      Structure::SAuxVPassPO, Structure::SVPO, Structure::SVDO,
      Structure::Conditional, Structure::SV, Structure::Include,
      Structure::Extend, Structure::Resume, Structure::Loop,
      Structure::Unrecognized};
  for (Structure s : all)
    if (to_string(s) == name) return s;
  return std::nullopt;
}

bool is_keyword_structure(Structure s) {
  return s == Structure::Include || s == Structure::Extend ||
         s == Structure::Resume || s == Structure::Loop;
}

std::string Binding::describe(const ParsedSentence& s) const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [var, idx] : vars) {
    if (!first) out << " ";
    first = false;
    out << var << "=" << s.surface(idx);
  }
  return out.str();
}

namespace {

// pattern shorthand: parse "nsubj(A,B)" strings so the rule table below
// stays readable as a table.
DepPattern pat(const std::string& text) {
  size_t open = text.find('(');
  size_t comma = text.find(',', open);
  size_t close = text.find(')', comma);
  DepPattern p;
  p.label = text.substr(0, open);
  p.head_var = text[open + 1];
  p.dep_var = text[comma + 1];
  (void)close;
  return p;
}

SsrRule make_rule(std::string id, Structure result, std::vector<std::string> patterns,
             std::vector<PosGuard> guards = {}) {
  SsrRule r;
  r.id = std::move(id);
  r.result = result;
  for (const auto& p : patterns) r.patterns.push_back(pat(p));
  r.guards = std::move(guards);
  return r;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

StructureClassifier::StructureClassifier() {
  // Keyword rules (checked first; matching is on the raw text).
  {
    SsrRule inc; inc.id = "SSR30"; inc.keyword = "INCLUDE USE CASE"; inc.result = Structure::Include;
    SsrRule ext; ext.id = "SSR31"; ext.keyword = "EXTEND USE CASE"; ext.result = Structure::Extend;
    SsrRule res; res.id = "SSR32"; res.keyword = "RESUME"; res.result = Structure::Resume;
    SsrRule rep; rep.id = "SSR33"; rep.keyword = "REPEAT"; rep.result = Structure::Loop;
    rules_.push_back(inc);
    rules_.push_back(ext);
    rules_.push_back(res);
    rules_.push_back(rep);
  }

  // Conditional next: any subordinating if/when/while clause wins over the
  // clause-internal matches the dependency rules would otherwise find.
  rules_.push_back(make_rule("SSR28", Structure::Conditional, {"mark(A,B)"}));

  // SSR1-SSR10: the core sentence structures.
  rules_.push_back(make_rule("SSR1", Structure::SVIODO,
                        {"nsubj(A,B)", "iobj(A,C)", "dobj(A,D)"}));
  rules_.push_back(make_rule("SSR2", Structure::SVDOThatClause,
                        {"nsubj(A,B)", "dobj(A,C)", "complm(D,E)", "nsubj(D,F)"}));
  rules_.push_back(make_rule("SSR3", Structure::SVThatClause,
                        {"nsubj(A,B)", "complm(C,D)", "nsubj(C,E)"}));
  rules_.push_back(make_rule("SSR4", Structure::SVDONotToInf,
                        {"nsubj(A,B)", "dobj(A,C)", "neg(D,E)", "aux(D,F)",
                         "infmod(C,D)"}));
  rules_.push_back(make_rule("SSR5", Structure::SVNotToInf,
                        {"nsubj(A,B)", "neg(C,D)", "aux(C,E)", "xcomp(A,C)",
                         "dobj(C,F)"}));
  rules_.push_back(make_rule("SSR6", Structure::SVDOtobeComp,
                        {"nsubj(A,B)", "nsubj(C,D)", "aux(C,E)", "cop(C,F)",
                         "xcomp(A,C)"}));
  rules_.push_back(make_rule("SSR7", Structure::SVDOToInf,
                        {"nsubj(A,B)", "dobj(A,C)", "aux(D,E)", "infmod(C,D)"}));
  rules_.push_back(make_rule("SSR8", Structure::SVDOPresentPart,
                        {"nsubj(A,B)", "dobj(A,C)", "partmod(C,D)"},
                        {{'D', "VBG"}}));
  rules_.push_back(make_rule("SSR9", Structure::SVDOPastPart,
                        {"nsubj(A,B)", "dobj(A,C)", "partmod(C,D)"},
                        {{'D', "VBN"}}));
  rules_.push_back(make_rule("SSR10", Structure::SVDOAdj,
                        {"nsubj(A,B)", "nsubj(C,D)", "xcomp(A,C)"},
                        {{'C', "JJ"}}));

  // SSR11-SSR26: derived from the TR21-TR36 antecedents, most specific
  // first (more dependencies first, POS-guarded before unguarded).
  rules_.push_back(make_rule("SSR11", Structure::SAuxVPassPO,
                        {"nsubjpass(A,B)", "aux(A,C)", "auxpass(A,D)", "prep(A,E)",
                         "pobj(E,F)"}));
  rules_.push_back(make_rule("SSR12", Structure::SVDOConjToInf,
                        {"nsubj(A,B)", "dobj(A,C)", "advmod(D,E)", "aux(D,F)",
                         "xcomp(A,D)"}));
  rules_.push_back(make_rule("SSR13", Structure::SVDOConjClause,
                        {"nsubj(A,B)", "dobj(A,C)", "advmod(D,E)", "nsubj(D,F)"}));
  rules_.push_back(make_rule("SSR14", Structure::SVDOPO,
                        {"nsubj(A,B)", "dobj(A,C)", "prep(A,D)", "pobj(D,E)"}));
  rules_.push_back(make_rule("SSR15", Structure::SVConjToInf,
                        {"nsubj(A,B)", "advmod(C,D)", "aux(C,E)", "xcomp(A,C)"}));
  rules_.push_back(make_rule("SSR16", Structure::SVConjClause,
                        {"nsubj(A,B)", "advmod(C,D)", "nsubj(C,E)", "advcl(A,C)"}));
  rules_.push_back(make_rule("SSR17", Structure::SVForComp,
                        {"nsubj(A,B)", "prep(A,C)", "num(D,E)", "pobj(C,D)"}));
  rules_.push_back(make_rule("SSR18", Structure::SVPassPO,
                        {"nsubjpass(A,B)", "auxpass(A,C)", "prep(A,D)", "pobj(D,E)"}));
  rules_.push_back(make_rule("SSR19", Structure::SVDONoun,
                        {"nsubj(A,B)", "nsubj(C,D)", "xcomp(A,C)"},
                        {{'C', "NN"}}));
  rules_.push_back(make_rule("SSR20", Structure::SAuxVDO,
                        {"nsubj(A,B)", "aux(A,C)", "dobj(A,D)"}));
  rules_.push_back(make_rule("SSR21", Structure::SVDOAdverbial,
                        {"nsubj(A,B)", "dobj(A,C)", "advmod(A,D)"}));
  rules_.push_back(make_rule("SSR22", Structure::SVToInf,
                        {"nsubj(A,B)", "aux(C,D)", "xcomp(A,C)"}));
  rules_.push_back(make_rule("SSR23", Structure::SVPO,
                        {"nsubj(A,B)", "prep(A,C)", "pobj(C,D)"}));
  rules_.push_back(make_rule("SSR24", Structure::SVGerund,
                        {"nsubj(A,B)", "xcomp(A,C)"}, {{'C', "VBG"}}));
  rules_.push_back(make_rule("SSR25", Structure::SVPredicative,
                        {"nsubj(A,B)", "cop(A,C)"}));
  rules_.push_back(make_rule("SSR26", Structure::SVAdverbialAdjunct,
                        {"nsubj(A,B)", "advmod(A,C)"}));

  rules_.push_back(make_rule("SSR27", Structure::SVDO, {"nsubj(A,B)", "dobj(A,C)"}));
  rules_.push_back(make_rule("SSR29", Structure::SV, {"nsubj(A,B)"}));
}

const SsrRule* StructureClassifier::rule(const std::string& id) const {
  for (const auto& r : rules_)
    if (r.id == id) return &r;
  return nullptr;
}

std::optional<Structure> StructureClassifier::keyword_structure(const std::string& text) {
  std::string t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front())))
    t.erase(t.begin());
  auto starts_with_kw = [&](const std::string& kw) {
    if (t.size() < kw.size() || t.compare(0, kw.size(), kw) != 0) return false;
    if (t.size() == kw.size()) return true;
    char next = t[kw.size()];
    return next == ' ' || next == '.';  // token boundary
  };
  if (starts_with_kw("INCLUDE USE CASE")) return Structure::Include;
  if (starts_with_kw("EXTEND USE CASE")) return Structure::Extend;
  if (starts_with_kw("RESUME")) return Structure::Resume;
  if (starts_with_kw("REPEAT")) return Structure::Loop;
  return std::nullopt;
}

namespace {

struct Unifier {
  const SsrRule& rule;
  const ParsedSentence& s;
  // candidates per pattern, pre-sorted by (head, dep)
  std::vector<std::vector<int>> candidates;
  std::map<char, int> vars;
  std::vector<bool> used;
  int best_depth = 0;

  bool guards_ok() const {
    for (const auto& g : rule.guards) {
      auto it = vars.find(g.var);
      if (it == vars.end()) return false;
      if (s.pos(it->second).rfind(g.pos_prefix, 0) != 0) return false;
    }
    return true;
  }

  bool solve(size_t pi) {
    if (pi == rule.patterns.size()) return guards_ok();
    best_depth = std::max(best_depth, static_cast<int>(pi));
    const DepPattern& p = rule.patterns[pi];
    for (int di : candidates[pi]) {
      if (used[static_cast<size_t>(di)]) continue;
      const TypeDependency& d = s.deps[static_cast<size_t>(di)];
      auto hit = vars.find(p.head_var);
      auto dit = vars.find(p.dep_var);
      bool head_new = hit == vars.end();
      bool dep_new = dit == vars.end();
      if (!head_new && hit->second != d.head) continue;
      if (!dep_new && dit->second != d.dep) continue;
      if (head_new) vars[p.head_var] = d.head;
      if (dep_new) vars[p.dep_var] = d.dep;
      used[static_cast<size_t>(di)] = true;
      if (solve(pi + 1)) return true;
      used[static_cast<size_t>(di)] = false;
      if (head_new) vars.erase(p.head_var);
      if (dep_new) vars.erase(p.dep_var);
    }
    return false;
  }
};

}  // namespace

std::optional<Binding> unify(const SsrRule& rule, const ParsedSentence& s,
                             int* matched_depth) {
  Unifier u{rule, s, {}, {}, {}, 0};
  u.candidates.resize(rule.patterns.size());
  for (size_t pi = 0; pi < rule.patterns.size(); ++pi) {
    for (size_t di = 0; di < s.deps.size(); ++di)
      if (s.deps[di].label == rule.patterns[pi].label)
        u.candidates[pi].push_back(static_cast<int>(di));
    std::sort(u.candidates[pi].begin(), u.candidates[pi].end(),
              [&](int a, int b) {
                const auto& da = s.deps[static_cast<size_t>(a)];
                const auto& db = s.deps[static_cast<size_t>(b)];
                if (da.head != db.head) return da.head < db.head;
                return da.dep < db.dep;
              });
  }
  u.used.assign(s.deps.size(), false);
  bool ok = u.solve(0);
  if (matched_depth)
    *matched_depth = ok ? static_cast<int>(rule.patterns.size()) : u.best_depth;
  if (!ok) return std::nullopt;
  Binding b;
  b.vars = u.vars;
  return b;
}

Classification StructureClassifier::classify(const ParsedSentence& s) const {
  Classification c;

  if (auto kw = keyword_structure(s.text)) {
    c.structure = *kw;
    for (const auto& r : rules_)
      if (r.result == *kw) {
        c.rule_id = r.id;
        break;
      }
    return c;
  }

  std::string best_rule;
  int best_depth = -1;
  int best_total = 0;
  for (const auto& r : rules_) {
    if (!r.keyword.empty()) continue;
    if (r.result == Structure::Conditional) {
      // Any subordinating if/when/while mark makes the sentence Conditional.
      for (const auto& d : s.deps) {
        if (d.label != "mark") continue;
        std::string w = lower(s.surface(d.dep));
        if (w == "if" || w == "when" || w == "while") {
          c.structure = Structure::Conditional;
          c.rule_id = r.id;
          c.binding.vars['A'] = d.head;
          c.binding.vars['B'] = d.dep;
          return c;
        }
      }
      continue;
    }
    int depth = 0;
    auto b = unify(r, s, &depth);
    if (b) {
      c.structure = r.result;
      c.rule_id = r.id;
      c.binding = *b;
      return c;
    }
    if (depth > best_depth) {
      best_depth = depth;
      best_total = static_cast<int>(r.patterns.size());
      best_rule = r.id;
    }
  }
  c.structure = Structure::Unrecognized;
  c.near_miss_rule_id = best_rule;
  c.near_miss_depth = best_depth < 0 ? 0 : best_depth;
  c.near_miss_total = best_total;
  return c;
}

}  // namespace acd

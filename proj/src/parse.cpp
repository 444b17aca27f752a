#include "acd/parse.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace acd {

bool operator==(const Token& a, const Token& b) {
  return a.index == b.index && a.surface == b.surface && a.pos == b.pos;
}

bool operator==(const TypeDependency& a, const TypeDependency& b) {
  return a.label == b.label && a.head == b.head && a.dep == b.dep;
}

bool operator==(const ParsedSentence& a, const ParsedSentence& b) {
  return a.text == b.text && a.tokens == b.tokens && a.deps == b.deps;
}

const Token* ParsedSentence::token(int index) const {
  if (index < 1 || index > static_cast<int>(tokens.size())) return nullptr;
  return &tokens[static_cast<size_t>(index) - 1];
}

std::string ParsedSentence::surface(int index) const {
  if (index == 0) return "ROOT";
  const Token* t = token(index);
  return t ? t->surface : "";
}

std::string ParsedSentence::pos(int index) const {
  const Token* t = token(index);
  return t ? t->pos : "";
}

int ParsedSentence::root_index() const {
  for (const auto& d : deps)
    if (d.label == "root") return d.dep;
  return 0;
}

int ParsedSentence::find_dep(const std::string& label) const {
  for (size_t i = 0; i < deps.size(); ++i)
    if (deps[i].label == label) return static_cast<int>(i);
  return -1;
}

namespace {

bool is_punct_token(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::ispunct(c) != 0;
  });
}

}  // namespace

std::string normalize_sentence(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool in_space = true;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!in_space) out.push_back(' ');
      in_space = true;
    } else {
      out.push_back(c);
      in_space = false;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  while (!out.empty() && out.back() == '.') out.pop_back();
  while (!out.empty() && out.back() == ' ') out.pop_back();
  out.push_back('.');
  return out;
}

std::string reconstruct_text(const std::vector<Token>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty() && !is_punct_token(t.surface)) out.push_back(' ');
    out += t.surface;
  }
  return out;
}

// ---------------------------------------------------------------------------

LabelScheme label_scheme_from_string(const std::string& name) {
  if (name == "SD" || name == "sd") return LabelScheme::SD;
  if (name == "UD" || name == "ud") return LabelScheme::UD;
  throw ConfigError("unknown label scheme: " + name + " (expected SD or UD)");
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

MappedParse map_labels(const std::vector<Token>& tokens,
                       const std::vector<TypeDependency>& deps,
                       LabelScheme scheme) {
  MappedParse out;
  if (scheme == LabelScheme::SD) {
    out.deps = deps;
    return out;
  }

  auto surface_of = [&](int idx) -> std::string {
    if (idx < 1 || idx > static_cast<int>(tokens.size())) return "";
    return lower(tokens[static_cast<size_t>(idx) - 1].surface);
  };
  auto has_aux_to = [&](int head) {
    for (const auto& d : deps)
      if ((d.label == "aux" || d.label == "aux:pass") && d.head == head &&
          surface_of(d.dep) == "to")
        return true;
    return false;
  };
  auto is_ccomp_head = [&](int idx) {
    for (const auto& d : deps)
      if (d.label == "ccomp" && d.dep == idx) return true;
    return false;
  };

  // case() dependencies consumed by an nmod/obl rewrite.
  std::vector<bool> consumed(deps.size(), false);
  for (size_t i = 0; i < deps.size(); ++i) {
    const auto& d = deps[i];
    if (d.label != "nmod" && d.label != "obl") continue;
    for (size_t j = 0; j < deps.size(); ++j) {
      if (deps[j].label == "case" && deps[j].head == d.dep) {
        consumed[j] = true;
        break;
      }
    }
  }

  for (size_t i = 0; i < deps.size(); ++i) {
    const auto& d = deps[i];
    if (consumed[i]) continue;
    const std::string& l = d.label;
    if (l == "obj") {
      out.deps.push_back({"dobj", d.head, d.dep});
    } else if (l == "compound") {
      out.deps.push_back({"nn", d.head, d.dep});
    } else if (l == "nmod:poss") {
      out.deps.push_back({"poss", d.head, d.dep});
    } else if (l == "nummod") {
      out.deps.push_back({"num", d.head, d.dep});
    } else if (l == "nsubj:pass") {
      out.deps.push_back({"nsubjpass", d.head, d.dep});
    } else if (l == "aux:pass") {
      out.deps.push_back({"auxpass", d.head, d.dep});
    } else if (l == "acl") {
      out.deps.push_back({has_aux_to(d.dep) ? "infmod" : "partmod", d.head, d.dep});
    } else if (l == "mark" && surface_of(d.dep) == "that" && is_ccomp_head(d.head)) {
      out.deps.push_back({"complm", d.head, d.dep});
    } else if (l == "case" && surface_of(d.dep) == "'s") {
      out.deps.push_back({"possessive", d.head, d.dep});
    } else if (l == "nmod" || l == "obl") {
      int case_dep = 0;
      for (const auto& c : deps)
        if (c.label == "case" && c.head == d.dep) {
          case_dep = c.dep;
          break;
        }
      if (case_dep != 0) {
        out.deps.push_back({"prep", d.head, case_dep});
        out.deps.push_back({"pobj", case_dep, d.dep});
      } else {
        out.deps.push_back(d);
        out.passthrough_labels.push_back(l);
      }
    } else if (l == "nsubj" || l == "iobj" || l == "ccomp" || l == "xcomp" ||
               l == "advmod" || l == "advcl" || l == "aux" || l == "cop" ||
               l == "neg" || l == "det" || l == "conj" || l == "cc" ||
               l == "amod" || l == "mark" || l == "root" || l == "punct") {
      out.deps.push_back(d);
    } else {
      out.deps.push_back(d);
      out.passthrough_labels.push_back(l);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

void FixtureStore::load_directory(const std::string& dir, LabelScheme scheme) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw ConfigError("fixture directory not found: " + dir);
  std::vector<std::string> paths;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".conllu")
      paths.push_back(e.path().string());
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) load_file(p, scheme);
}

void FixtureStore::load_file(const std::string& path, LabelScheme scheme) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open fixture file: " + path);
  load_stream(in, path, scheme);
}

void FixtureStore::load_stream(std::istream& in, const std::string& name,
                               LabelScheme scheme) {
  std::string line;
  int lineno = 0;
  std::string text;
  std::vector<Token> tokens;
  std::vector<TypeDependency> deps;

  auto flush = [&]() {
    if (tokens.empty() && text.empty()) return;
    if (text.empty())
      throw ParseError(name + ": fixture block without '# text =' line", lineno);
    if (tokens.empty())
      throw ParseError(name + ": fixture block without token lines", lineno);
    MappedParse mapped = map_labels(tokens, deps, scheme);
    put(text, tokens, mapped.deps);
    text.clear();
    tokens.clear();
    deps.clear();
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.rfind("# text =", 0) == 0) {
      text = line.substr(8);
      while (!text.empty() && text.front() == ' ') text.erase(text.begin());
      continue;
    }
    if (line[0] == '#') continue;

    std::istringstream ls(line);
    std::string idx, surface, f3, f4, pos, f6, head, label;
    if (!(ls >> idx >> surface >> f3 >> f4 >> pos >> f6 >> head >> label))
      throw ParseError(name + ": malformed token line", lineno);
    Token t;
    try {
      t.index = std::stoi(idx);
    } catch (const std::exception&) {
      throw ParseError(name + ": non-numeric token index", lineno);
    }
    t.surface = surface;
    t.pos = pos;
    tokens.push_back(t);
    int h;
    try {
      h = std::stoi(head);
    } catch (const std::exception&) {
      throw ParseError(name + ": non-numeric head index", lineno);
    }
    if (label != "_") deps.push_back({label, h, t.index});
  }
  flush();
}

void FixtureStore::put(const std::string& text, std::vector<Token> tokens,
                       std::vector<TypeDependency> deps) {
  std::string key = normalize_sentence(text);
  Record r;
  r.text = key;
  r.tokens = std::move(tokens);
  r.deps = std::move(deps);
  // Token and dependency invariants.
  for (size_t i = 0; i < r.tokens.size(); ++i)
    if (r.tokens[i].index != static_cast<int>(i) + 1)
      throw ValidationError("fixture token indices not contiguous for: " + key);
  int n = static_cast<int>(r.tokens.size());
  int roots = 0;
  for (const auto& d : r.deps) {
    if (d.dep < 1 || d.dep > n || d.head < 0 || d.head > n)
      throw ValidationError("fixture dependency out of range for: " + key);
    if (d.label == "root") ++roots;
  }
  if (roots != 1)
    throw ValidationError("fixture needs exactly one root dependency: " + key);
  records_[key] = std::move(r);
}

std::optional<ParsedSentence> FixtureStore::find(const std::string& sentence) const {
  auto it = records_.find(normalize_sentence(sentence));
  if (it == records_.end()) return std::nullopt;
  ParsedSentence s;
  s.text = it->second.text;
  s.tokens = it->second.tokens;
  s.deps = it->second.deps;
  return s;
}

std::string to_fixture_block(const ParsedSentence& s) {
  std::ostringstream out;
  out << "# text = " << s.text << "\n";
  // head/label of each token, from its (single) incoming dependency.
  for (const auto& t : s.tokens) {
    int head = 0;
    std::string label = "_";
    std::string head_s = "0";
    for (const auto& d : s.deps)
      if (d.dep == t.index) {
        head = d.head;
        label = d.label;
        break;
      }
    if (label != "_") head_s = std::to_string(head);
    out << t.index << "\t" << t.surface << "\t_\t_\t" << t.pos << "\t_\t"
        << head_s << "\t" << label << "\t_\t_\n";
  }
  return out.str();
}

}  // namespace acd

#include "acd/ucs.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace acd {

std::string to_string(ActorKind k) {
  return k == ActorKind::Primary ? "primary" : "secondary";
}

std::string to_string(FlowSection s) {
  switch (s) {
    case FlowSection::Main: return "main";
    case FlowSection::Sub: return "sub";
    case FlowSection::SpecificAlternate: return "specificAlternate";
    case FlowSection::GlobalAlternate: return "globalAlternate";
  }
  return "?";
}

bool operator==(const Actor& a, const Actor& b) {
  return a.name == b.name && a.kind == b.kind &&
         a.parent_actor_name == b.parent_actor_name;
}

bool operator==(const FlowStep& a, const FlowStep& b) {
  return a.id == b.id && a.text == b.text && a.pre_condition == b.pre_condition &&
         a.post_condition == b.post_condition && a.sub_flow_ids == b.sub_flow_ids &&
         a.alt_flow_ids == b.alt_flow_ids && a.section == b.section;
}

bool operator==(const UcsInstance& a, const UcsInstance& b) {
  return a.use_case_name == b.use_case_name &&
         a.main_system_name == b.main_system_name &&
         a.parent_use_case_name == b.parent_use_case_name &&
         a.description == b.description && a.constraints == b.constraints &&
         a.actors == b.actors && a.steps == b.steps;
}

const FlowStep* UcsInstance::step(const std::string& id) const {
  for (const auto& s : steps)
    if (s.id == id) return &s;
  return nullptr;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& s) {
  // fields are separated by " | "
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t next = s.find(" | ", pos);
    if (next == std::string::npos) {
      out.push_back(trim(s.substr(pos)));
      break;
    }
    out.push_back(trim(s.substr(pos, next - pos)));
    pos = next + 3;
  }
  return out;
}

std::string section_prefix(FlowSection s) {
  switch (s) {
    case FlowSection::Main: return "M";
    case FlowSection::Sub: return "S";
    case FlowSection::SpecificAlternate: return "A";
    case FlowSection::GlobalAlternate: return "GA";
  }
  return "";
}

bool id_matches_section(const std::string& id, FlowSection s) {
  std::string p = section_prefix(s);
  if (id.size() <= p.size() || id.compare(0, p.size(), p) != 0) return false;
  // "A" must not swallow "GA"; prefix must be followed by digits only.
  return std::all_of(id.begin() + static_cast<long>(p.size()), id.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

// Expands "S1-S2" to S1,S2; single ids pass through. Comma-separated lists
// of ranges are accepted.
std::vector<std::string> expand_ranges(const std::string& spec, int line) {
  std::vector<std::string> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    if (part.empty()) continue;
    size_t dash = part.find('-');
    if (dash == std::string::npos) {
      out.push_back(part);
      continue;
    }
    std::string lo = trim(part.substr(0, dash));
    std::string hi = trim(part.substr(dash + 1));
    auto split_id = [&](const std::string& id) -> std::pair<std::string, int> {
      size_t i = 0;
      while (i < id.size() && !std::isdigit(static_cast<unsigned char>(id[i]))) ++i;
      if (i == 0 || i == id.size())
        throw ParseError("malformed step-id range: " + part, line);
      return {id.substr(0, i), std::stoi(id.substr(i))};
    };
    auto [lp, ln] = split_id(lo);
    auto [hp, hn] = split_id(hi);
    if (lp != hp || hn < ln)
      throw ParseError("malformed step-id range: " + part, line);
    for (int n = ln; n <= hn; ++n) out.push_back(lp + std::to_string(n));
  }
  return out;
}

}  // namespace

UcsInstance read_ucs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open UCS file: " + path);
  return read_ucs(in);
}

UcsInstance read_ucs(std::istream& in) {
  UcsInstance u;
  bool saw_usecase = false;
  std::string line;
  int lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] != '[') throw ParseError("expected section header", lineno);
    size_t close = t.find(']');
    if (close == std::string::npos)
      throw ParseError("malformed section header", lineno);
    std::string section = t.substr(1, close - 1);
    std::string rest = trim(t.substr(close + 1));

    if (section == "DESCRIPTION") {
      u.description.push_back(rest);
      continue;
    }
    if (section == "CONSTRAINT") {
      u.constraints.push_back(rest);
      continue;
    }

    auto fields = split_fields(rest);
    auto parse_kv = [&](const std::string& f) -> std::pair<std::string, std::string> {
      size_t eq = f.find('=');
      if (eq == std::string::npos)
        throw ParseError("expected key=value, got: " + f, lineno);
      return {trim(f.substr(0, eq)), trim(f.substr(eq + 1))};
    };

    if (section == "USECASE") {
      if (saw_usecase) throw ParseError("duplicate [USECASE] section", lineno);
      saw_usecase = true;
      for (const auto& f : fields) {
        auto [k, v] = parse_kv(f);
        if (k == "name") u.use_case_name = v;
        else if (k == "system") u.main_system_name = v;
        else if (k == "parent") u.parent_use_case_name = v;
        else throw ParseError("unknown key in [USECASE]: " + k, lineno);
      }
      if (trim(u.use_case_name).empty())
        throw ValidationError("use case name must be non-empty");
      continue;
    }
    if (section == "ACTOR") {
      Actor a;
      bool have_name = false;
      for (const auto& f : fields) {
        auto [k, v] = parse_kv(f);
        if (k == "kind") {
          if (v == "primary") a.kind = ActorKind::Primary;
          else if (v == "secondary") a.kind = ActorKind::Secondary;
          else throw ParseError("unknown actor kind: " + v, lineno);
        } else if (k == "name") {
          a.name = v;
          have_name = true;
        } else if (k == "parent") {
          a.parent_actor_name = v;
        } else {
          throw ParseError("unknown key in [ACTOR]: " + k, lineno);
        }
      }
      if (!have_name || trim(a.name).empty())
        throw ValidationError("actor name must be non-empty (line " +
                              std::to_string(lineno) + ")");
      u.actors.push_back(std::move(a));
      continue;
    }

    FlowSection fs;
    if (section == "MAIN") fs = FlowSection::Main;
    else if (section == "SUB") fs = FlowSection::Sub;
    else if (section == "ALT") fs = FlowSection::SpecificAlternate;
    else if (section == "GALT") fs = FlowSection::GlobalAlternate;
    else throw ParseError("unknown section [" + section + "]", lineno);

    FlowStep step;
    step.section = fs;
    for (const auto& f : fields) {
      auto [k, v] = parse_kv(f);
      if (k == "id") step.id = v;
      else if (k == "text") step.text = v;
      else if (k == "pre" || k == "guard") step.pre_condition = v;
      else if (k == "post") step.post_condition = v;
      else if (k == "sub") step.sub_flow_ids = expand_ranges(v, lineno);
      else if (k == "alt") step.alt_flow_ids = expand_ranges(v, lineno);
      else throw ParseError("unknown key in [" + section + "]: " + k, lineno);
    }
    if (step.id.empty()) throw ParseError("step without id", lineno);
    if (!id_matches_section(step.id, fs))
      throw ValidationError("step id " + step.id + " does not match section [" +
                            section + "] (line " + std::to_string(lineno) + ")");
    std::string text = trim(step.text);
    if (text.empty())
      throw ValidationError("step " + step.id + " has empty text");
    if (text.back() != '.' || (text.size() >= 2 && text[text.size() - 2] == '.'))
      throw ValidationError("step " + step.id +
                            " text must end with exactly one period");
    u.steps.push_back(std::move(step));
  }

  if (!saw_usecase) throw ParseError("missing [USECASE] section", 0);

  std::set<std::string> ids;
  for (const auto& s : u.steps)
    if (!ids.insert(s.id).second)
      throw ValidationError("duplicate step id: " + s.id);
  for (const auto& s : u.steps) {
    for (const auto& r : s.sub_flow_ids)
      if (!ids.count(r))
        throw ValidationError("step " + s.id + " references unknown sub flow: " + r);
    for (const auto& r : s.alt_flow_ids)
      if (!ids.count(r))
        throw ValidationError("step " + s.id + " references unknown alternate flow: " + r);
  }
  return u;
}

namespace {

// Re-compacts an expanded id list back into range notation for serialization.
std::string compact_ranges(const std::vector<std::string>& ids) {
  std::string out;
  size_t i = 0;
  auto num_of = [](const std::string& id) {
    size_t p = 0;
    while (p < id.size() && !std::isdigit(static_cast<unsigned char>(id[p]))) ++p;
    return std::pair<std::string, int>(id.substr(0, p), std::stoi(id.substr(p)));
  };
  while (i < ids.size()) {
    auto [prefix, n] = num_of(ids[i]);
    size_t j = i;
    int last = n;
    while (j + 1 < ids.size()) {
      auto [p2, n2] = num_of(ids[j + 1]);
      if (p2 != prefix || n2 != last + 1) break;
      last = n2;
      ++j;
    }
    if (!out.empty()) out += ",";
    out += ids[i];
    if (j > i) out += "-" + ids[j];
    i = j + 1;
  }
  return out;
}

}  // namespace

std::string write_ucs(const UcsInstance& u) {
  std::ostringstream out;
  out << "[USECASE] name=" << u.use_case_name << " | system=" << u.main_system_name;
  if (u.parent_use_case_name) out << " | parent=" << *u.parent_use_case_name;
  out << "\n";
  for (const auto& d : u.description) out << "[DESCRIPTION] " << d << "\n";
  for (const auto& c : u.constraints) out << "[CONSTRAINT] " << c << "\n";
  for (const auto& a : u.actors) {
    out << "[ACTOR] kind=" << to_string(a.kind) << " | name=" << a.name;
    if (a.parent_actor_name) out << " | parent=" << *a.parent_actor_name;
    out << "\n";
  }
  for (const auto& s : u.steps) {
    switch (s.section) {
      case FlowSection::Main: out << "[MAIN] "; break;
      case FlowSection::Sub: out << "[SUB] "; break;
      case FlowSection::SpecificAlternate: out << "[ALT] "; break;
      case FlowSection::GlobalAlternate: out << "[GALT] "; break;
    }
    out << "id=" << s.id;
    if (s.pre_condition) {
      if (s.section == FlowSection::GlobalAlternate)
        out << " | guard=" << *s.pre_condition;
      else
        out << " | pre=" << *s.pre_condition;
    }
    if (!s.sub_flow_ids.empty()) out << " | sub=" << compact_ranges(s.sub_flow_ids);
    if (!s.alt_flow_ids.empty()) out << " | alt=" << compact_ranges(s.alt_flow_ids);
    if (s.post_condition) out << " | post=" << *s.post_condition;
    out << " | text=" << s.text << "\n";
  }
  return out.str();
}

namespace {

const char* kPronouns[] = {"i",   "you", "he",  "she",  "it",  "we",   "they",
                           "him", "her", "them", "his", "its", "their"};
const char* kKeywords[] = {"INCLUDE", "EXTEND", "RESUME", "REPEAT"};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> words_of(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void lint_text(const std::string& text, const std::string& loc,
               std::vector<LintWarning>& out) {
  for (const auto& w : words_of(text)) {
    std::string lw = lower(w);
    for (const char* p : kPronouns)
      if (lw == p) {
        out.push_back({LintKind::Pronoun, loc, w,
                       "pronoun \"" + w + "\" violates the no-pronoun restriction"});
        break;
      }
    for (const char* k : kKeywords)
      if (lw == lower(k) && w != k) {
        out.push_back({LintKind::KeywordCase, loc, w,
                       "keyword \"" + w + "\" should be written " + k});
        break;
      }
  }
}

}  // namespace

std::vector<LintWarning> lint_restrictions(const UcsInstance& u) {
  std::vector<LintWarning> out;
  for (size_t i = 0; i < u.description.size(); ++i)
    lint_text(u.description[i], "description", out);
  for (size_t i = 0; i < u.constraints.size(); ++i)
    lint_text(u.constraints[i], "constraint", out);
  for (const auto& s : u.steps) {
    lint_text(s.text, s.id, out);
    if (s.pre_condition) lint_text(*s.pre_condition, s.id + ".pre", out);
    if (s.post_condition) lint_text(*s.post_condition, s.id + ".post", out);
  }
  return out;
}

}  // namespace acd

#include "acd/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>

namespace acd {

bool operator==(const UmlOperation& a, const UmlOperation& b) {
  return a.name == b.name && a.params == b.params;
}

std::string to_lower_copy(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool equal_ci(const std::string& a, const std::string& b) {
  return to_lower_copy(a) == to_lower_copy(b);
}

std::string to_string(RelKind k) {
  switch (k) {
    case RelKind::Association: return "association";
    case RelKind::Generalization: return "generalization";
    case RelKind::Aggregation: return "aggregation";
  }
  return "?";
}

bool UmlClass::has_stereotype(const std::string& s) const {
  return std::find(stereotypes.begin(), stereotypes.end(), s) != stereotypes.end();
}

bool UmlClass::has_attribute_ci(const std::string& a) const {
  for (const auto& x : attributes)
    if (equal_ci(x, a)) return true;
  return false;
}

bool UmlClass::has_operation(const std::string& name, const std::string& params) const {
  for (const auto& op : operations)
    if (op.name == name && op.params == params) return true;
  return false;
}

int ClassDiagram::find_class(const std::string& name) const {
  for (size_t i = 0; i < classes_.size(); ++i)
    if (equal_ci(classes_[i].name, name)) return static_cast<int>(i);
  return -1;
}

int ClassDiagram::ensure_class(const std::string& name,
                               const std::vector<std::string>& stereotypes_if_new,
                               const std::string& provenance) {
  int i = find_class(name);
  if (i < 0) {
    UmlClass c;
    c.name = name;
    c.stereotypes = stereotypes_if_new;
    if (c.stereotypes.empty()) c.stereotypes.push_back(kEntityClass);
    if (!provenance.empty()) c.provenance.push_back(provenance);
    classes_.push_back(std::move(c));
    return static_cast<int>(classes_.size()) - 1;
  }
  UmlClass& c = classes_[static_cast<size_t>(i)];
  if (!provenance.empty() &&
      std::find(c.provenance.begin(), c.provenance.end(), provenance) ==
          c.provenance.end())
    c.provenance.push_back(provenance);
  return i;
}

void ClassDiagram::add_attribute(int class_index, const std::string& attribute,
                                 const std::string& provenance) {
  UmlClass& c = classes_.at(static_cast<size_t>(class_index));
  if (!c.has_attribute_ci(attribute)) c.attributes.push_back(attribute);
  if (!provenance.empty() &&
      std::find(c.provenance.begin(), c.provenance.end(), provenance) ==
          c.provenance.end())
    c.provenance.push_back(provenance);
}

void ClassDiagram::add_operation(int class_index, const std::string& name,
                                 const std::string& params,
                                 const std::string& provenance) {
  UmlClass& c = classes_.at(static_cast<size_t>(class_index));
  if (!c.has_operation(name, params)) c.operations.push_back({name, params});
  if (!provenance.empty() &&
      std::find(c.provenance.begin(), c.provenance.end(), provenance) ==
          c.provenance.end())
    c.provenance.push_back(provenance);
}

int ClassDiagram::add_relationship(UmlRelationship r) {
  if (r.end1 < 0 || r.end1 >= static_cast<int>(classes_.size()) || r.end2 < 0 ||
      r.end2 >= static_cast<int>(classes_.size()))
    throw ValidationError("relationship references a class that does not exist");
  rels_.push_back(std::move(r));
  return static_cast<int>(rels_.size()) - 1;
}

int ClassDiagram::degree(int class_index) const {
  int n = 0;
  for (const auto& r : rels_)
    if (r.end1 == class_index || r.end2 == class_index) ++n;
  return n;
}

std::vector<std::string> ClassDiagram::prune_unrelated() {
  std::vector<std::string> removed;
  std::vector<int> remap(classes_.size(), -1);
  std::vector<UmlClass> kept;
  for (size_t i = 0; i < classes_.size(); ++i) {
    if (degree(static_cast<int>(i)) > 0) {
      remap[i] = static_cast<int>(kept.size());
      kept.push_back(std::move(classes_[i]));
    } else {
      removed.push_back(classes_[i].name);
    }
  }
  classes_ = std::move(kept);
  for (auto& r : rels_) {
    r.end1 = remap[static_cast<size_t>(r.end1)];
    r.end2 = remap[static_cast<size_t>(r.end2)];
  }
  return removed;
}

std::vector<std::vector<int>> ClassDiagram::connected_components() const {
  int n = static_cast<int>(classes_.size());
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (const auto& r : rels_) {
    adj[static_cast<size_t>(r.end1)].push_back(r.end2);
    adj[static_cast<size_t>(r.end2)].push_back(r.end1);
  }
  std::vector<bool> seen(static_cast<size_t>(n), false);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    if (seen[static_cast<size_t>(i)]) continue;
    std::vector<int> comp;
    std::vector<int> stack{i};
    seen[static_cast<size_t>(i)] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int w : adj[static_cast<size_t>(v)])
        if (!seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = true;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

namespace {

std::string stereo_text(const UmlClass& c) {
  std::string out;
  for (const auto& s : c.stereotypes) out += "«" + s + "»";
  return out;
}

// Escapes for a DOT record label field.
std::string record_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '{' || c == '}' || c == '|' || c == '<' || c == '>' || c == '"' ||
        c == '\\' || c == ' ')
      out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out += "\"";
  return out;
}

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string xmi_id(const std::string& kind, const std::string& name) {
  std::ostringstream out;
  out << kind << "_" << std::hex << fnv1a64(kind + ":" + name);
  return out.str();
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string emit_dot(const ClassDiagram& d) {
  std::ostringstream out;
  out << "// analysis class diagram\n";
  out << "digraph ACD {\n";
  if (!d.classes().empty()) {
    out << "  node [shape=record];\n";
    out << "  rankdir=BT;\n";
  }
  for (const auto& c : d.classes()) {
    std::string head = stereo_text(c);
    if (!head.empty()) head += " ";
    head += c.name;
    std::string attrs;
    for (const auto& a : c.attributes) attrs += record_escape(a) + "\\l";
    std::string ops;
    for (const auto& op : c.operations)
      ops += record_escape(op.name + "(" + op.params + ")") + "\\l";
    out << "  " << dot_quote(c.name) << " [label=\"{" << record_escape(head)
        << "|" << attrs << "|" << ops << "}\"];\n";
  }
  for (const auto& r : d.relationships()) {
    const std::string& n1 = d.class_at(r.end1).name;
    const std::string& n2 = d.class_at(r.end2).name;
    switch (r.kind) {
      case RelKind::Association:
        out << "  " << dot_quote(n1) << " -> " << dot_quote(n2) << " [label="
            << dot_quote(r.name) << ", arrowhead=vee];\n";
        break;
      case RelKind::Generalization:
        // end1 is the parent; UML draws the hollow triangle at the parent.
        out << "  " << dot_quote(n2) << " -> " << dot_quote(n1)
            << " [arrowhead=empty];\n";
        break;
      case RelKind::Aggregation:
        // end1 is the whole; open diamond at the whole end.
        out << "  " << dot_quote(n1) << " -> " << dot_quote(n2)
            << " [dir=both, arrowtail=odiamond, arrowhead=none];\n";
        break;
    }
  }
  out << "}\n";
  return out.str();
}

std::string emit_xmi(const ClassDiagram& d) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<xmi:XMI xmi:version=\"2.1\" xmlns:xmi=\"http://schema.omg.org/spec/XMI/2.1\" "
         "xmlns:uml=\"http://schema.omg.org/spec/UML/2.1\">\n";
  out << "  <uml:Model xmi:id=\"" << xmi_id("model", "acd")
      << "\" name=\"AnalysisClassDiagram\">\n";

  // Child -> parent generalizations nest inside the child class element.
  for (size_t ci = 0; ci < d.classes().size(); ++ci) {
    const UmlClass& c = d.classes()[ci];
    std::string cid = xmi_id("class", to_lower_copy(c.name));
    out << "    <packagedElement xmi:type=\"uml:Class\" xmi:id=\"" << cid
        << "\" name=\"" << xml_escape(c.name) << "\">\n";
    for (const auto& s : c.stereotypes)
      out << "      <ownedComment xmi:id=\""
          << xmi_id("stereo", c.name + "/" + s) << "\" body=\"stereotype: "
          << xml_escape(s) << "\"/>\n";
    for (const auto& a : c.attributes)
      out << "      <ownedAttribute xmi:id=\""
          << xmi_id("attr", c.name + "/" + a) << "\" name=\"" << xml_escape(a)
          << "\"/>\n";
    for (const auto& op : c.operations)
      out << "      <ownedOperation xmi:id=\""
          << xmi_id("op", c.name + "/" + op.name + "(" + op.params + ")")
          << "\" name=\"" << xml_escape(op.name) << "\">\n"
          << "        <ownedComment xmi:id=\""
          << xmi_id("opdoc", c.name + "/" + op.name + "(" + op.params + ")")
          << "\" body=\"params: " << xml_escape(op.params) << "\"/>\n"
          << "      </ownedOperation>\n";
    for (const auto& r : d.relationships()) {
      if (r.kind != RelKind::Generalization ||
          r.end2 != static_cast<int>(ci))
        continue;
      const std::string& parent = d.class_at(r.end1).name;
      out << "      <generalization xmi:id=\""
          << xmi_id("gen", parent + "/" + c.name) << "\" general=\""
          << xmi_id("class", to_lower_copy(parent)) << "\"/>\n";
    }
    out << "    </packagedElement>\n";
  }

  for (const auto& r : d.relationships()) {
    if (r.kind == RelKind::Generalization) continue;
    const std::string& n1 = d.class_at(r.end1).name;
    const std::string& n2 = d.class_at(r.end2).name;
    std::string rid = xmi_id("rel", to_string(r.kind) + "/" + n1 + "/" + n2 +
                                        "/" + r.name);
    std::string e1 = xmi_id("end", rid + "/1");
    std::string e2 = xmi_id("end", rid + "/2");
    out << "    <packagedElement xmi:type=\"uml:Association\" xmi:id=\"" << rid
        << "\" name=\"" << xml_escape(r.name) << "\" memberEnd=\"" << e1 << " "
        << e2 << "\">\n";
    out << "      <ownedEnd xmi:id=\"" << e1 << "\" type=\""
        << xmi_id("class", to_lower_copy(n1)) << "\""
        << (r.kind == RelKind::Aggregation ? " aggregation=\"shared\"" : "")
        << "/>\n";
    out << "      <ownedEnd xmi:id=\"" << e2 << "\" type=\""
        << xmi_id("class", to_lower_copy(n2)) << "\""
        << (r.navigability == Navigability::End1ToEnd2 ? " isNavigable=\"true\""
                                                       : "")
        << "/>\n";
    out << "    </packagedElement>\n";
  }
  out << "  </uml:Model>\n";
  out << "</xmi:XMI>\n";
  return out.str();
}

}  // namespace acd

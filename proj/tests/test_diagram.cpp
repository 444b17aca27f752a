#include "acd/diagram.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"

using namespace acd;

namespace {

ClassDiagram small_diagram() {
  ClassDiagram d;
  int a = d.ensure_class("Order", {kEntityClass});
  int b = d.ensure_class("Customer", {kEntityClass});
  d.add_attribute(a, "orderNumber");
  d.add_operation(a, "place", "item");
  UmlRelationship r;
  r.end1 = b;
  r.end2 = a;
  r.name = "places";
  r.kind = RelKind::Association;
  r.navigability = Navigability::End1ToEnd2;
  d.add_relationship(r);
  return d;
}

// Independent union-find oracle for connected components.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

ClassDiagram random_diagram(std::mt19937& rng) {
  ClassDiagram d;
  std::uniform_int_distribution<int> ncls(1, 9);
  int n = ncls(rng);
  for (int i = 0; i < n; ++i) {
    int c = d.ensure_class("C" + std::to_string(i), {kEntityClass});
    std::uniform_int_distribution<int> nattr(0, 3);
    for (int a = nattr(rng); a > 0; --a)
      d.add_attribute(c, "a" + std::to_string(a));
  }
  std::uniform_int_distribution<int> nrel(0, 12);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 2);
  for (int r = nrel(rng); r > 0; --r) {
    UmlRelationship rel;
    rel.end1 = pick(rng);
    rel.end2 = pick(rng);
    rel.kind = static_cast<RelKind>(kind(rng));
    rel.navigability = rel.kind == RelKind::Association ? Navigability::End1ToEnd2
                                                        : Navigability::None;
    rel.name = rel.kind == RelKind::Association ? "op" + std::to_string(r) : "";
    d.add_relationship(rel);
  }
  return d;
}

}  // namespace

TEST_SUITE_BEGIN("diagram");

TEST_CASE("class names are unique case-insensitively") {
  ClassDiagram d;
  int a = d.ensure_class("Withdrawal", {kEntityClass});
  int b = d.ensure_class("withdrawal", {kEntityClass});
  CHECK(a == b);
  CHECK(d.classes().size() == 1);
  CHECK(d.classes()[0].name == "Withdrawal");  // first-seen casing kept
}

TEST_CASE("attributes and operations deduplicate") {
  ClassDiagram d;
  int a = d.ensure_class("Account", {kEntityClass});
  d.add_attribute(a, "balance");
  d.add_attribute(a, "Balance");
  CHECK(d.classes()[0].attributes.size() == 1);
  d.add_operation(a, "credit", "x");
  d.add_operation(a, "credit", "x");
  d.add_operation(a, "credit", "y");
  CHECK(d.classes()[0].operations.size() == 2);
}

TEST_CASE("prune removes exactly the unrelated classes") {
  ClassDiagram d = small_diagram();
  d.ensure_class("Noise", {kEntityClass});
  auto removed = d.prune_unrelated();
  CHECK(removed == std::vector<std::string>{"Noise"});
  CHECK(d.classes().size() == 2);
  for (size_t i = 0; i < d.classes().size(); ++i)
    CHECK(d.degree(static_cast<int>(i)) >= 1);
  // empty diagram stays empty
  ClassDiagram e;
  CHECK(e.prune_unrelated().empty());
}

TEST_CASE("DOT: empty, single class, determinism") {
  ClassDiagram empty;
  CHECK(emit_dot(empty) == "// analysis class diagram\ndigraph ACD {\n}\n");

  ClassDiagram one;
  one.ensure_class("Solo", {kEntityClass});
  std::string dot = emit_dot(one);
  CHECK(dot.find("\"Solo\"") != std::string::npos);
  CHECK(dot.find("->") == std::string::npos);

  ClassDiagram d = small_diagram();
  CHECK(emit_dot(d) == emit_dot(d));
  CHECK(emit_dot(d).find("\"Customer\" -> \"Order\"") != std::string::npos);
}

TEST_CASE("XMI: structure and determinism") {
  ClassDiagram d;
  int a = d.ensure_class("Account", {kEntityClass});
  d.add_attribute(a, "balance");
  d.add_attribute(a, "number");
  d.add_operation(a, "credit", "amount");
  int b = d.ensure_class("Bank", {kEntityClass});
  UmlRelationship r;
  r.end1 = b;
  r.end2 = a;
  r.kind = RelKind::Aggregation;
  r.navigability = Navigability::None;
  d.add_relationship(r);

  std::string xmi = emit_xmi(d);
  CHECK(xmi == emit_xmi(d));
  CHECK(std::count(xmi.begin(), xmi.end(), '<') > 0);
  size_t attrs = 0, pos = 0;
  while ((pos = xmi.find("<ownedAttribute", pos)) != std::string::npos) {
    ++attrs;
    pos += 1;
  }
  CHECK(attrs == 2);
  CHECK(xmi.find("<ownedOperation") != std::string::npos);
  CHECK(xmi.find("aggregation=\"shared\"") != std::string::npos);

  ClassDiagram empty;
  std::string exmi = emit_xmi(empty);
  CHECK(exmi.find("<uml:Model") != std::string::npos);
  CHECK(exmi.find("packagedElement") == std::string::npos);
}

TEST_CASE("DOT draws generalization triangles and aggregation diamonds") {
  ClassDiagram d;
  int parent = d.ensure_class("Transaction", {kEntityClass});
  int child = d.ensure_class("Withdrawal", {kEntityClass});
  int whole = d.ensure_class("ATM", {kEntityClass});
  UmlRelationship g;
  g.end1 = parent;
  g.end2 = child;
  g.kind = RelKind::Generalization;
  g.navigability = Navigability::None;
  d.add_relationship(g);
  UmlRelationship a;
  a.end1 = whole;
  a.end2 = child;
  a.kind = RelKind::Aggregation;
  a.navigability = Navigability::None;
  d.add_relationship(a);

  std::string dot = emit_dot(d);
  // child points at the parent with a hollow triangle
  CHECK(dot.find("\"Withdrawal\" -> \"Transaction\" [arrowhead=empty]") !=
        std::string::npos);
  // open diamond sits at the whole end
  CHECK(dot.find("\"ATM\" -> \"Withdrawal\" [dir=both, arrowtail=odiamond") !=
        std::string::npos);

  std::string xmi = emit_xmi(d);
  // the generalization nests inside the child and references the parent id
  size_t child_pos = xmi.find("name=\"Withdrawal\"");
  size_t gen_pos = xmi.find("<generalization");
  REQUIRE(child_pos != std::string::npos);
  REQUIRE(gen_pos != std::string::npos);
  CHECK(gen_pos > child_pos);
}

TEST_CASE("distinct diagrams emit distinct outputs") {
  ClassDiagram a = small_diagram();
  ClassDiagram b = small_diagram();
  b.add_attribute(0, "extra");
  CHECK(emit_dot(a) != emit_dot(b));
  CHECK(emit_xmi(a) != emit_xmi(b));
}

TEST_CASE("connected components: chain, isolated, oracle equivalence") {
  ClassDiagram chain;
  for (int i = 0; i < 10; ++i)
    chain.ensure_class("C" + std::to_string(i), {kEntityClass});
  for (int i = 0; i + 1 < 10; ++i) {
    UmlRelationship r;
    r.end1 = i;
    r.end2 = i + 1;
    r.kind = RelKind::Association;
    r.name = "n";
    chain.add_relationship(r);
  }
  CHECK(chain.connected_components().size() == 1);

  ClassDiagram loose;
  for (int i = 0; i < 4; ++i)
    loose.ensure_class("C" + std::to_string(i), {kEntityClass});
  CHECK(loose.connected_components().size() == 4);

  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    ClassDiagram d = random_diagram(rng);
    int n = static_cast<int>(d.classes().size());
    UnionFind uf(n);
    for (const auto& r : d.relationships()) uf.unite(r.end1, r.end2);
    std::set<int> roots;
    for (int i = 0; i < n; ++i) roots.insert(uf.find(i));
    auto comps = d.connected_components();
    CHECK(comps.size() == roots.size());
    size_t total = 0;
    for (const auto& c : comps) total += c.size();
    CHECK(total == d.classes().size());
  }
}

TEST_CASE("property: emitters are byte-identical across 1000 random diagrams") {
  std::mt19937 rng(20240818);
  for (int trial = 0; trial < 1000; ++trial) {
    ClassDiagram d = random_diagram(rng);
    CHECK(emit_dot(d) == emit_dot(d));
    CHECK(emit_xmi(d) == emit_xmi(d));
  }
}

TEST_SUITE_END();

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acd/errors.hpp"

namespace acd {

// Stereotype spellings used throughout (stored without guillemets).
inline constexpr const char* kControlClass = "control class";
inline constexpr const char* kEntityClass = "entity class";
inline constexpr const char* kBoundary = "boundary";
inline constexpr const char* kPrimary = "primary";
inline constexpr const char* kSecondary = "secondary";

struct UmlOperation {
  std::string name;
  std::string params;
};

bool operator==(const UmlOperation& a, const UmlOperation& b);

struct UmlClass {
  std::string name;
  std::vector<std::string> stereotypes;  // at least one
  std::vector<std::string> attributes;   // insertion-ordered, ci-unique
  std::vector<UmlOperation> operations;  // insertion-ordered, unique
  std::vector<std::string> provenance;   // step ids

  bool has_stereotype(const std::string& s) const;
  bool has_attribute_ci(const std::string& a) const;
  bool has_operation(const std::string& name, const std::string& params) const;
};

enum class RelKind { Association, Generalization, Aggregation };
enum class Navigability { End1ToEnd2, None };

std::string to_string(RelKind k);

struct UmlRelationship {
  int end1 = -1;  // index into ClassDiagram::classes()
  int end2 = -1;
  std::string name;  // empty for generalization/aggregation
  RelKind kind = RelKind::Association;
  Navigability navigability = Navigability::End1ToEnd2;
  std::vector<std::string> provenance;
};

class ClassDiagram {
 public:
  // Returns class index; matching is case-insensitive. The stereotypes
  // apply only when the class is created; an existing class keeps its own.
  int ensure_class(const std::string& name,
                   const std::vector<std::string>& stereotypes_if_new,
                   const std::string& provenance = "");
  int find_class(const std::string& name) const;  // -1 when absent

  void add_attribute(int class_index, const std::string& attribute,
                     const std::string& provenance = "");
  void add_operation(int class_index, const std::string& name,
                     const std::string& params, const std::string& provenance = "");

  // Appends without any dedup; the transform engine dedups at its level.
  int add_relationship(UmlRelationship r);

  // TR54: drops classes with no incident relationship; remaps indices.
  std::vector<std::string> prune_unrelated();

  const std::vector<UmlClass>& classes() const { return classes_; }
  const std::vector<UmlRelationship>& relationships() const { return rels_; }
  UmlClass& class_at(int i) { return classes_.at(static_cast<size_t>(i)); }
  const UmlClass& class_at(int i) const { return classes_.at(static_cast<size_t>(i)); }
  UmlRelationship& rel_at(int i) { return rels_.at(static_cast<size_t>(i)); }

  int degree(int class_index) const;

  // Undirected connectivity over all relationship kinds; components listed
  // in first-class order, each component in class order.
  std::vector<std::vector<int>> connected_components() const;

 private:
  std::vector<UmlClass> classes_;
  std::vector<UmlRelationship> rels_;
};

// Deterministic emitters; byte-identical across runs for equal diagrams.
std::string emit_dot(const ClassDiagram& d);
std::string emit_xmi(const ClassDiagram& d);

bool equal_ci(const std::string& a, const std::string& b);
std::string to_lower_copy(std::string s);

}  // namespace acd

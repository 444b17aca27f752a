#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "acd/diagram.hpp"

namespace acd {

struct QualityReport {
  int ns = 0;    // flow sentences
  int nsf = 0;   // flow sentences with a hosted operation
  int nc = 0;    // classes
  int nr = 0;    // relationships
  int nsg = 0;   // connected components
  int nrc = 0;   // structurally redundant classes (degree 0)
  int nrr = 0;   // structurally redundant relationships (duplicates)
  double co_cm = 0.0;
  double r_cm = 0.0;
  double cd_cm = 0.0;
  double c_rd_structural = 0.0;
  double r_rd_structural = 0.0;
};

// COcm = Nsf / Ns; Ns must be positive.
double operation_completeness(int hosted_sentences, int total_sentences);

// Rcm = 1 - (Nsg - 1) / (Nc - 1) when Nr > 0, else 0.
double relationship_completeness(const ClassDiagram& d);

// Structural lower bounds of the redundancy metrics: degree-0 classes and
// surplus relationships per (kind, direction, end pair).
struct StructuralRedundancy {
  int redundant_classes = 0;
  int redundant_relationships = 0;
  double c_rd = 0.0;
  double r_rd = 0.0;
};
StructuralRedundancy structural_redundancy(const ClassDiagram& d);

QualityReport quality_report(const ClassDiagram& d, int hosted_sentences,
                             int total_sentences);

// Human-readable section followed by line-delimited key=value pairs.
std::string format_report(const QualityReport& r);

// ---------------------------------------------------------------------------
// Questionnaires (blank judgment sheets, plus scoring of filled ones).

struct Questionnaires {
  std::string classes;        // class-correctness table
  std::string relationships;  // relationship-correctness table
  std::string summary;        // completeness/redundancy questions
};

Questionnaires emit_questionnaires(const ClassDiagram& d);

// Rendering of one class cell as the questionnaire prints it
// ("WithdrawFunds <<control class>>", entity stereotype suppressed).
std::string questionnaire_class_cell(const UmlClass& c);

struct QuestionnaireScores {
  double avg_c_cr = 0.0;
  double avg_r_cr = 0.0;
  double cd_cr = 0.0;
  double co_cm = 0.0;  // from the judged Nsf
  double r_cm = 0.0;   // from the judged Nsg
  double cd_cm = 0.0;
  double c_rd = 0.0;   // from the judged Nrc
  double r_rd = 0.0;   // from the judged Nrr
  double cd_rd = 0.0;
};

// Parses filled questionnaires; every judgment cell must hold a value in
// [0,1]; blanks or out-of-range values raise ValidationError naming the
// row and column. `summary` carries Nsf/Nsg/Nrc/Nrr answers.
QuestionnaireScores score_questionnaires(std::istream& classes,
                                         std::istream& relationships,
                                         std::istream& summary, int ns, int nc,
                                         int nr);

}  // namespace acd

#include "acd/metrics.hpp"

#include <iomanip>
#include <istream>
#include <map>
#include <sstream>

namespace acd {

double operation_completeness(int hosted_sentences, int total_sentences) {
  if (total_sentences <= 0)
    throw ValidationError("COcm undefined: the UCS has no flow sentences");
  return static_cast<double>(hosted_sentences) / total_sentences;
}

double relationship_completeness(const ClassDiagram& d) {
  int nr = static_cast<int>(d.relationships().size());
  if (nr == 0) return 0.0;
  int nc = static_cast<int>(d.classes().size());
  if (nc <= 1) return 1.0;  // degenerate; cannot occur post-prune
  int nsg = static_cast<int>(d.connected_components().size());
  return 1.0 - static_cast<double>(nsg - 1) / (nc - 1);
}

StructuralRedundancy structural_redundancy(const ClassDiagram& d) {
  StructuralRedundancy out;
  for (size_t i = 0; i < d.classes().size(); ++i)
    if (d.degree(static_cast<int>(i)) == 0) ++out.redundant_classes;

  std::map<std::string, int> seen;
  for (const auto& r : d.relationships()) {
    std::string key = to_string(r.kind) + "/" +
                      (r.navigability == Navigability::End1ToEnd2 ? "nav" : "none") +
                      "/" + std::to_string(r.end1) + "/" + std::to_string(r.end2);
    if (seen[key]++ > 0) ++out.redundant_relationships;
  }
  int nc = static_cast<int>(d.classes().size());
  int nr = static_cast<int>(d.relationships().size());
  out.c_rd = nc > 0 ? static_cast<double>(out.redundant_classes) / nc : 0.0;
  out.r_rd = nr > 0 ? static_cast<double>(out.redundant_relationships) / nr : 0.0;
  return out;
}

QualityReport quality_report(const ClassDiagram& d, int hosted_sentences,
                             int total_sentences) {
  QualityReport r;
  r.ns = total_sentences;
  r.nsf = hosted_sentences;
  r.nc = static_cast<int>(d.classes().size());
  r.nr = static_cast<int>(d.relationships().size());
  r.nsg = static_cast<int>(d.connected_components().size());
  // COcm is undefined without flow sentences; the report degrades to zero
  // instead of failing the whole run.
  r.co_cm = total_sentences > 0
                ? operation_completeness(hosted_sentences, total_sentences)
                : 0.0;
  r.r_cm = relationship_completeness(d);
  r.cd_cm = (r.co_cm + r.r_cm) / 2.0;
  auto sr = structural_redundancy(d);
  r.nrc = sr.redundant_classes;
  r.nrr = sr.redundant_relationships;
  r.c_rd_structural = sr.c_rd;
  r.r_rd_structural = sr.r_rd;
  return r;
}

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << v;
  return out.str();
}

}  // namespace

std::string format_report(const QualityReport& r) {
  std::ostringstream out;
  out << "Quality report (automatic metrics)\n";
  out << "  flow sentences (Ns): " << r.ns << "\n";
  out << "  sentences with hosted operations (Nsf): " << r.nsf << "\n";
  out << "  classes (Nc): " << r.nc << ", relationships (Nr): " << r.nr
      << ", separate groups (Nsg): " << r.nsg << "\n";
  out << "  class operation completeness COcm = " << fmt(r.co_cm) << "\n";
  out << "  relationship completeness Rcm = " << fmt(r.r_cm) << "\n";
  out << "  class diagram completeness CDcm = " << fmt(r.cd_cm) << "\n";
  out << "  structural class redundancy Crd = " << fmt(r.c_rd_structural)
      << " (lower bound; incorrect-class judgments require questionnaire)\n";
  out << "  structural relationship redundancy Rrd = " << fmt(r.r_rd_structural)
      << " (lower bound; incorrect-relationship judgments require questionnaire)\n";
  out << "  correctness CDcr: requires questionnaire\n";
  out << "---\n";
  out << "Ns=" << r.ns << "\n";
  out << "Nsf=" << r.nsf << "\n";
  out << "Nc=" << r.nc << "\n";
  out << "Nr=" << r.nr << "\n";
  out << "Nsg=" << r.nsg << "\n";
  out << "Nrc=" << r.nrc << "\n";
  out << "Nrr=" << r.nrr << "\n";
  out << "COcm=" << fmt(r.co_cm) << "\n";
  out << "Rcm=" << fmt(r.r_cm) << "\n";
  out << "CDcm=" << fmt(r.cd_cm) << "\n";
  out << "Crd_structural=" << fmt(r.c_rd_structural) << "\n";
  out << "Rrd_structural=" << fmt(r.r_rd_structural) << "\n";
  return out.str();
}

std::string questionnaire_class_cell(const UmlClass& c) {
  std::string stereo;
  for (const auto& s : c.stereotypes)
    if (s != kEntityClass) stereo += "<<" + s + ">>";
  return stereo.empty() ? c.name : c.name + " " + stereo;
}

namespace {

const char* kClassHeader =
    "S.No. | Class | Correctly identified as class (Ccr1) | Correctly named "
    "(Ccr2) | Correctly stereotyped (entity, boundary or control) (Ccr3) | "
    "Proportion of correctly identified attributes (Ccr4) | Proportion of "
    "correctly identified operations (Ccr5)";

const char* kRelHeader =
    "S.No. | End Class1 | End Class2 | Relationship Name | Correctly assigned "
    "End-Class1 (Rcr1) | Correctly assigned End-Class2 (Rcr2) | Correctly "
    "identified as relationship (Rcr3) | Correctly named (Rcr4) | Correctly "
    "identified relationship type (Rcr5) | Correctly assigned navigability "
    "(Rcr6)";

}  // namespace

Questionnaires emit_questionnaires(const ClassDiagram& d) {
  Questionnaires q;
  {
    std::ostringstream out;
    out << kClassHeader << "\n";
    for (size_t i = 0; i < d.classes().size(); ++i)
      out << (i + 1) << " | " << questionnaire_class_cell(d.classes()[i])
          << " |  |  |  |  | \n";
    q.classes = out.str();
  }
  {
    std::ostringstream out;
    out << kRelHeader << "\n";
    int n = 0;
    for (const auto& r : d.relationships()) {
      std::string name = r.name;
      if (name.empty()) name = to_string(r.kind);
      out << ++n << " | " << questionnaire_class_cell(d.class_at(r.end1)) << " | "
          << questionnaire_class_cell(d.class_at(r.end2)) << " | " << name
          << " |  |  |  |  |  | \n";
    }
    q.relationships = out.str();
  }
  {
    std::ostringstream out;
    out << "No. of sentences in the functional requirements whose functionalities "
           "are assigned as operations to some class (Nsf) = \n";
    out << "No. of separate groups of classes and relationships in the class "
           "diagram (Nsg) = \n";
    out << "No. of redundant or extra classes in the class diagram (Nrc) = \n";
    out << "No. of redundant or extra relationships in the class diagram (Nrr) = \n";
    q.summary = out.str();
  }
  return q;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t next = line.find('|', pos);
    if (next == std::string::npos) {
      out.push_back(trim(line.substr(pos)));
      break;
    }
    out.push_back(trim(line.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

double parse_cell(const std::string& cell, int row, int col) {
  if (cell.empty())
    throw ValidationError("questionnaire row " + std::to_string(row) + " column " +
                          std::to_string(col) + " is blank");
  double v;
  try {
    size_t used;
    v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
  } catch (const std::exception&) {
    throw ValidationError("questionnaire row " + std::to_string(row) + " column " +
                          std::to_string(col) + " is not a number: " + cell);
  }
  if (v < 0.0 || v > 1.0)
    throw ValidationError("questionnaire row " + std::to_string(row) + " column " +
                          std::to_string(col) + " out of [0,1]: " + cell);
  return v;
}

// Reads a filled table and returns the mean of per-row means over the last
// `cells` columns.
double score_table(std::istream& in, size_t fixed_cols, size_t cells) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("questionnaire is empty");
  double total = 0.0;
  int rows = 0;
  int rowno = 1;
  while (std::getline(in, line)) {
    ++rowno;
    if (trim(line).empty()) continue;
    auto cols = split_cells(line);
    if (cols.size() < fixed_cols + cells)
      throw ValidationError("questionnaire row " + std::to_string(rowno) +
                            " has too few columns");
    double sum = 0.0;
    for (size_t i = 0; i < cells; ++i)
      sum += parse_cell(cols[fixed_cols + i], rowno,
                        static_cast<int>(fixed_cols + i + 1));
    total += sum / static_cast<double>(cells);
    ++rows;
  }
  if (rows == 0) throw ValidationError("questionnaire has no rows");
  return total / rows;
}

int summary_value(const std::string& line, const std::string& key) {
  size_t eq = line.rfind('=');
  if (eq == std::string::npos)
    throw ValidationError("summary line for " + key + " has no '='");
  std::string v = trim(line.substr(eq + 1));
  if (v.empty()) throw ValidationError("summary value for " + key + " is blank");
  try {
    return std::stoi(v);
  } catch (const std::exception&) {
    throw ValidationError("summary value for " + key + " is not a number: " + v);
  }
}

}  // namespace

QuestionnaireScores score_questionnaires(std::istream& classes,
                                         std::istream& relationships,
                                         std::istream& summary, int ns, int nc,
                                         int nr) {
  QuestionnaireScores out;
  out.avg_c_cr = score_table(classes, 2, 5);
  out.avg_r_cr = score_table(relationships, 4, 6);
  out.cd_cr = (out.avg_c_cr + out.avg_r_cr) / 2.0;

  std::string line;
  std::vector<int> values;
  static const char* keys[] = {"Nsf", "Nsg", "Nrc", "Nrr"};
  size_t k = 0;
  while (std::getline(summary, line)) {
    if (trim(line).empty()) continue;
    if (k >= 4) break;
    values.push_back(summary_value(line, keys[k]));
    ++k;
  }
  if (values.size() != 4)
    throw ValidationError("summary must answer Nsf, Nsg, Nrc and Nrr");
  int nsf = values[0], nsg = values[1], nrc = values[2], nrr = values[3];

  out.co_cm = operation_completeness(nsf, ns);
  if (nr == 0) out.r_cm = 0.0;
  else if (nc <= 1) out.r_cm = 1.0;
  else out.r_cm = 1.0 - static_cast<double>(nsg - 1) / (nc - 1);
  out.cd_cm = (out.co_cm + out.r_cm) / 2.0;
  out.c_rd = nc > 0 ? static_cast<double>(nrc) / nc : 0.0;
  out.r_rd = nr > 0 ? static_cast<double>(nrr) / nr : 0.0;
  out.cd_rd = (out.c_rd + out.r_rd) / 2.0;
  return out;
}

}  // namespace acd

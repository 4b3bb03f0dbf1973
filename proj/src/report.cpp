#include "dihedral/report.hpp"

#include <sstream>

namespace dihedral {

void ValidationReport::record(const std::string& relation, const std::string& instance,
                              const SignedMap& expected, const SignedMap& actual) {
  ++counts_[relation];
  SignedMap diff = map_subtract(actual, expected);
  if (diff.is_zero()) return;
  failures_.push_back({relation, instance, expected.nnz(), actual.nnz(), diff.nnz(), {}});
}

void ValidationReport::record(const std::string& relation, const std::string& instance,
                              const SparseMatrix& expected, const SparseMatrix& actual) {
  ++counts_[relation];
  if (expected.rows() != actual.rows() || expected.cols() != actual.cols()) {
    failures_.push_back({relation, instance, expected.nnz(), actual.nnz(), 0, "shape mismatch"});
    return;
  }
  SparseMatrix diff = subtract(actual, expected);
  if (diff.is_zero()) return;
  failures_.push_back({relation, instance, expected.nnz(), actual.nnz(), diff.nnz(), {}});
}

void ValidationReport::record_bool(const std::string& relation, const std::string& instance,
                                   bool ok, const std::string& detail) {
  ++counts_[relation];
  if (!ok) failures_.push_back({relation, instance, 0, 0, 0, detail});
}

void ValidationReport::merge(const ValidationReport& o) {
  for (const auto& [k, v] : o.counts_) counts_[k] += v;
  failures_.insert(failures_.end(), o.failures_.begin(), o.failures_.end());
  notes_.insert(notes_.end(), o.notes_.begin(), o.notes_.end());
}

std::size_t ValidationReport::checked() const {
  std::size_t n = 0;
  for (const auto& [k, v] : counts_) n += v;
  return n;
}

std::string ValidationReport::to_text() const {
  std::ostringstream os;
  os << "report " << (name_.empty() ? "-" : name_) << ": " << (passed() ? "PASS" : "FAIL")
     << " (" << checked() << " checks, " << failures_.size() << " failures)\n";
  for (const auto& [k, v] : counts_) os << "  checked " << k << " x" << v << "\n";
  for (const auto& f : failures_) {
    os << "  FAIL " << f.relation << " at " << f.instance << ": expected nnz " << f.expected_nnz
       << ", actual nnz " << f.actual_nnz << ", difference nnz " << f.difference_nnz;
    if (!f.detail.empty()) os << " (" << f.detail << ")";
    os << "\n";
  }
  for (const auto& n : notes_) os << "  note " << n << "\n";
  return os.str();
}

}  // namespace dihedral

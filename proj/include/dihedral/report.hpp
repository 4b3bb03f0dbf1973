#pragma once

#include <map>
#include <string>
#include <vector>

#include "dihedral/graded.hpp"

namespace dihedral {

struct ValidationFailure {
  std::string relation;
  std::string instance;
  std::size_t expected_nnz = 0;
  std::size_t actual_nnz = 0;
  std::size_t difference_nnz = 0;
  std::string detail;
};

class ValidationReport {
 public:
  explicit ValidationReport(std::string name = {}) : name_(std::move(name)) {}

  void record(const std::string& relation, const std::string& instance,
              const SignedMap& expected, const SignedMap& actual);
  void record(const std::string& relation, const std::string& instance,
              const SparseMatrix& expected, const SparseMatrix& actual);
  void record_bool(const std::string& relation, const std::string& instance, bool ok,
                   const std::string& detail = {});
  void note(const std::string& text) { notes_.push_back(text); }
  void merge(const ValidationReport& other);

  const std::string& name() const { return name_; }
  bool passed() const { return failures_.empty(); }
  std::size_t checked() const;
  const std::vector<ValidationFailure>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }
  // relation -> number of instances asserted
  const std::map<std::string, std::size_t>& counts() const { return counts_; }
  std::string to_text() const;

 private:
  std::string name_;
  std::map<std::string, std::size_t> counts_;
  std::vector<ValidationFailure> failures_;
  std::vector<std::string> notes_;
};

}  // namespace dihedral

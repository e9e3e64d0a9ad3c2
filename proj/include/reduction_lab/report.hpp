#pragma once

#include <string>
#include <vector>

namespace rlab {

/// One verification result: which check, for which outcome ("" when the check
/// is not outcome-specific), how large the residual was, against what tolerance.
struct CheckRecord {
  std::string check;
  std::string outcome;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

class VerificationReport {
 public:
  /// Records a check; passes iff residual <= tolerance.
  void add(std::string check, std::string outcome, double residual, double tolerance);
  void merge(const VerificationReport& other);
  /// Orders records by outcome label, then check name.
  void sort();

  bool passed() const noexcept;
  /// Largest residual over all records with this check name (0 if none).
  double worst(const std::string& check) const noexcept;
  const std::vector<CheckRecord>& records() const noexcept { return records_; }

 private:
  std::vector<CheckRecord> records_;
};

/// Canonical text label for an outcome value (shortest round-trip decimal).
std::string outcome_label(double value);

}  // namespace rlab

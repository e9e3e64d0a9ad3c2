#include "reduction_lab/report.hpp"

#include <algorithm>
#include <charconv>
#include <tuple>

namespace rlab {

void VerificationReport::add(std::string check, std::string outcome, double residual, double tolerance) {
  const bool pass = residual <= tolerance;  // NaN fails
  records_.push_back({std::move(check), std::move(outcome), residual, tolerance, pass});
}

void VerificationReport::merge(const VerificationReport& other) {
  records_.insert(records_.end(), other.records_.begin(), other.records_.end());
}

void VerificationReport::sort() {
  std::stable_sort(records_.begin(), records_.end(), [](const CheckRecord& a, const CheckRecord& b) {
    return std::tie(a.outcome, a.check) < std::tie(b.outcome, b.check);
  });
}

bool VerificationReport::passed() const noexcept {
  return std::all_of(records_.begin(), records_.end(), [](const CheckRecord& r) { return r.pass; });
}

double VerificationReport::worst(const std::string& check) const noexcept {
  double w = 0.0;
  for (const CheckRecord& r : records_)
    if (r.check == check) w = std::max(w, r.residual);
  return w;
}

std::string outcome_label(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace rlab

#include "reduction_lab/errors.hpp"

#include <sstream>

namespace rlab {
namespace {

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os.precision(17);
  os << what << value;
  return os.str();
}

}  // namespace

NotCompletelyPositive::NotCompletelyPositive(double min_eigenvalue)
    : Error(describe("map is not completely positive: Choi matrix has eigenvalue ", min_eigenvalue)),
      min_eigenvalue_(min_eigenvalue) {}

ZeroProbabilityOutcome::ZeroProbabilityOutcome(double outcome, double probability)
    : Error(describe("outcome ", outcome) + describe(" has probability ", probability) +
            " at or below the probability floor; the reduced state is not defined"),
      outcome_(outcome),
      probability_(probability) {}

NotAMeasurement::NotAMeasurement(std::string detail, double residual)
    : Error(describe(("not a measurement of the observable: " + detail + ", residual ").c_str(), residual)),
      detail_(std::move(detail)),
      residual_(residual) {}

}  // namespace rlab

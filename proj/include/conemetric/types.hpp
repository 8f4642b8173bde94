#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace conemetric {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Tolerance knobs shared by the CLI and the verification suites.
struct Tolerances {
  double membership = 1e-9;     // slack for cone membership checks
  double gauge_rel = 1e-12;     // relative stopping width for gauge bisections
  double boundary_band = 1e-7;  // relative exclusion band around strict thresholds
};

inline void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
  }
}

// Internal consistency assertion: failures indicate a broken invariant, not
// bad user input.
inline void internal_check(bool cond, const char* msg) {
  if (!cond) throw std::logic_error(msg);
}

}  // namespace conemetric

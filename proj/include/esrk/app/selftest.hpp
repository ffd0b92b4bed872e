#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace esrk::app {

struct SuiteResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// phi_j(z) = int_0^1 e^{(1-t) z} t^{j-1} / (j-1)! dt by adaptive Gauss-Kronrod,
/// j <= 4, on z in [-50, 0].
SuiteResult phi_oracle_suite(double tol = 1e-13);
/// Theta D = I and recursive vs. general inverse for every certified method
/// at `samples` random z.
SuiteResult doc_identity_suite(int samples = 50, std::uint64_t seed = 7, double tol = 1e-12);
/// Native vs. differential vs. DOC single steps on random 32x32 data, SH and PFC.
SuiteResult dual_form_suite(int seeds = 10, double tol = 1e-10);
/// Spatially constant SH data: full-grid step vs. scalar arithmetic, all
/// methods including Lawson.
SuiteResult constant_field_suite(double tol = 1e-13);
/// Summation-by-parts identities of the pseudo-spectral operators.
SuiteResult green_identity_suite(double tol = 1e-11);

std::vector<SuiteResult> run_selftests();
std::string to_string(const SuiteResult& r);

/// Exit 0 iff every suite passes.
int cmd_selftest(std::ostream& out);

}  // namespace esrk::app

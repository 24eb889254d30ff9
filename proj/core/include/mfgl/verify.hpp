#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mfgl/boolfn.hpp"
#include "mfgl/gibbs.hpp"
#include "mfgl/hamiltonians.hpp"
#include "mfgl/transport.hpp"

namespace mfgl {

inline constexpr double kAuditSlack = 1e-9;
/// Bound used for the exact expectation-exchange rows.
inline constexpr double kExchangeTolerance = 1e-10;

struct AuditRow {
  std::string check_id;
  std::string instance;
  double measured = 0.0;
  double bound = 0.0;
  /// measured / bound; 0 when both are 0, +inf when only bound is 0.
  double ratio = 0.0;
  /// measured <= bound + kAuditSlack.
  bool pass = false;
  /// False when the row's hypothesis does not hold for this instance; such
  /// rows are reported but do not count as failures.
  bool applicable = true;
  /// Non-empty when the check could not be evaluated.
  std::string error;

  bool operator==(const AuditRow&) const = default;
};

AuditRow make_row(std::string check_id, std::string instance, double measured, double bound,
                  bool applicable = true);
AuditRow error_row(std::string check_id, std::string instance, std::string error);

/// True when no applicable row fails.
bool all_pass(std::span<const AuditRow> rows);

/// Uniform on [-1/4,1/4]^n conditioned on ||theta||_2 <= eps sqrt(n).
std::vector<TiltVector> sample_tilts(int n, int count, double eps, std::uint64_t seed,
                                     std::int64_t max_attempts = 1000000);

/// Uniform on [-1/4,1/4]^n.
std::vector<TiltVector> sample_box_tilts(int n, int count, std::uint64_t seed);

/// W1(tau_theta nu, xi_theta) against sqrt(n Tr H(tau_theta nu)) for nu =
/// gibbs(f) and each theta; the first row is theta = 0.
std::vector<AuditRow> audit_prop17(const FourierExpansion& f, std::span<const TiltVector> thetas,
                                   const std::string& instance = "f",
                                   std::int64_t max_states = kDefaultTransportStates);

/// Upper end of the admissible epsilon range, (1/4) sqrt(log(4n/D)).
double epsilon_upper(int n, double D);

/// Per-theta residual rows. Rows bounded by the approximate fixed point
/// propositions are applicable only when theta lies in the mixture support
/// and Tr H(tau_theta nu) <= 256 n^{1/3} D^{2/3} / eps^{2/3}.
std::vector<AuditRow> audit_main_residuals(const FourierExpansion& f,
                                           std::span<const TiltVector> thetas, double eps,
                                           const ComplexityParams& params,
                                           const std::string& instance = "f");

/// Worst case of |tanh(EZ) - E tanh Z| / (20 L E|tanh Z - E tanh Z|) over
/// random Z on at most max_atoms atoms in [-L, L], L uniform in [L_lo, L_hi].
AuditRow audit_tanh_lemma(int trials, double L_lo, double L_hi, std::uint64_t seed,
                          int max_atoms = 4);

/// Chain-rule defects on vertices and at the given interior points, the
/// product-law fluctuation bound, exact expectation exchange, and the
/// composition Lipschitz bounds.
std::vector<AuditRow> audit_appendix_misc(const FourierExpansion& f, const ScalarShape& h,
                                          std::span<const std::vector<double>> product_means,
                                          const std::string& instance = "f",
                                          int max_n = kDefaultDenseCap);

/// Smoothed-cutoff tail, total variation and coupling (2n TV) rows. Emits a single
/// "witness-missing" error row when max_v f(v) < t n.
std::vector<AuditRow> audit_large_deviations(const FourierExpansion& f, double t, double delta,
                                             const std::string& instance = "f",
                                             int max_n = kDefaultDenseCap);

struct TightnessResult {
  std::vector<AuditRow> rows;
  std::vector<double> norms;
  double slope = 0.0;
};

/// ||grad(h o f)(0)||_1 for f = sum_i x_i and the remark14 shape, from
/// binomial sums, with its least-squares log-log slope in n.
TightnessResult tightness_demo(std::span<const int> n_list);

}  // namespace mfgl

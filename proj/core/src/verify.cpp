#include "mfgl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfgl/meanfield.hpp"
#include "mfgl/rng.hpp"

namespace mfgl {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

void vertex_gradient(std::span<const double> table, Vertex v, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Vertex bit = Vertex{1} << i;
    out[i] = (table[v | bit] - table[v & ~bit]) / 2.0;
  }
}

std::string tag(const std::string& instance, const std::string& suffix) {
  return instance + ":" + suffix;
}

}  // namespace

AuditRow make_row(std::string check_id, std::string instance, double measured, double bound,
                  bool applicable) {
  AuditRow r;
  r.check_id = std::move(check_id);
  r.instance = std::move(instance);
  r.measured = measured;
  r.bound = bound;
  if (bound == 0.0) {
    r.ratio = measured == 0.0 ? 0.0 : kInfinity;
  } else if (std::isinf(bound) && std::isfinite(measured)) {
    r.ratio = 0.0;
  } else {
    r.ratio = measured / bound;
  }
  r.pass = measured <= bound + kAuditSlack;
  r.applicable = applicable;
  return r;
}

AuditRow error_row(std::string check_id, std::string instance, std::string error) {
  AuditRow r;
  r.check_id = std::move(check_id);
  r.instance = std::move(instance);
  r.measured = std::numeric_limits<double>::quiet_NaN();
  r.bound = std::numeric_limits<double>::quiet_NaN();
  r.ratio = std::numeric_limits<double>::quiet_NaN();
  r.pass = false;
  r.applicable = true;
  r.error = std::move(error);
  return r;
}

bool all_pass(std::span<const AuditRow> rows) {
  return std::all_of(rows.begin(), rows.end(),
                     [](const AuditRow& r) { return !r.applicable || r.pass; });
}

std::vector<TiltVector> sample_tilts(int n, int count, double eps, std::uint64_t seed,
                                     std::int64_t max_attempts) {
  if (n < 1 || count < 0) throw InvalidArgument("sample_tilts: bad n or count");
  if (!(eps > 0.0)) throw InvalidArgument("sample_tilts: eps must be > 0");
  Rng rng(seed);
  std::vector<TiltVector> out;
  const double radius2 = eps * eps * n;
  std::int64_t attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > max_attempts) throw NumericError("sample_tilts: rejection sampler exhausted");
    std::vector<double> theta(static_cast<std::size_t>(n));
    double s = 0.0;
    for (double& t : theta) {
      t = rng.uniform(-0.25, 0.25);
      s += t * t;
    }
    if (s <= radius2) out.emplace_back(std::move(theta));
  }
  return out;
}

std::vector<TiltVector> sample_box_tilts(int n, int count, std::uint64_t seed) {
  if (n < 1 || count < 0) throw InvalidArgument("sample_box_tilts: bad n or count");
  Rng rng(seed);
  std::vector<TiltVector> out;
  for (int k = 0; k < count; ++k) {
    std::vector<double> theta(static_cast<std::size_t>(n));
    for (double& t : theta) t = rng.uniform(-0.25, 0.25);
    out.emplace_back(std::move(theta));
  }
  return out;
}

std::vector<AuditRow> audit_prop17(const FourierExpansion& f, std::span<const TiltVector> thetas,
                                   const std::string& instance, std::int64_t max_states) {
  const int n = f.dim();
  const auto states = static_cast<std::int64_t>(vertex_count(n));
  if (states > max_states) throw CapExceeded("transport states", max_states, states);
  const DenseMeasure nu = gibbs_measure(f, n);
  std::vector<AuditRow> rows;
  auto audit_one = [&](const DenseMeasure& tau, std::span<const double> shift, const std::string& label) {
    const ProductMeasure xi = product_approx(tau, f, shift);
    const double w1 = w1_exact(tau, xi.densify(n), max_states);
    const double trace = h_matrix(tau, f, shift).trace;
    rows.push_back(make_row("w1_trace", tag(instance, label), w1, std::sqrt(n * std::max(0.0, trace))));
  };
  audit_one(nu, {}, "theta0");
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    audit_one(tilt(nu, thetas[k]), thetas[k].values(), "theta" + std::to_string(k + 1));
  }
  return rows;
}

double epsilon_upper(int n, double D) {
  if (!(D > 0.0)) return kInfinity;
  const double arg = std::log(4.0 * n / D);
  return arg > 0.0 ? 0.25 * std::sqrt(arg) : 0.0;
}

std::vector<AuditRow> audit_main_residuals(const FourierExpansion& f,
                                           std::span<const TiltVector> thetas, double eps,
                                           const ComplexityParams& params,
                                           const std::string& instance) {
  const int n = f.dim();
  const double upper = epsilon_upper(n, params.D);
  if (!(eps > 0.0 && eps < upper)) {
    throw InvalidArgument("audit_main_residuals: epsilon " + std::to_string(eps) +
                          " outside (0, " + std::to_string(upper) + ")");
  }
  const double nd = n;
  const double D = params.D;
  const double core = std::pow(nd, 2.0 / 3.0) * std::cbrt(D) / std::cbrt(eps);
  const double trace_cap = 256.0 * std::cbrt(nd) * std::pow(D, 2.0 / 3.0) / std::pow(eps, 2.0 / 3.0);
  const double centre_bound = 41.0 * params.L1 * (112.0 * params.L2 * core + eps * nd);
  const double spread_bound = 64.0 * params.L2 * core + eps * nd;
  const double threshold = xf_threshold(params, n);

  const DenseMeasure nu = gibbs_measure(f, n);
  const std::vector<double> table = f.truth_table(n);
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> grad(un);
  std::vector<AuditRow> rows;
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    const TiltVector& theta = thetas[k];
    if (theta.dim() != n) throw DimensionMismatch("audit_main_residuals: theta", n, theta.dim());
    const std::string label = tag(instance, "theta" + std::to_string(k + 1));
    const DenseMeasure tau = tilt(nu, theta);
    const double tr_shifted = h_matrix(tau, f, theta.values()).trace;
    const double tr_plain = h_matrix(tau, f).trace;
    const bool in_support = theta.in_mixture_support(eps);
    const bool in_theta = tr_shifted <= trace_cap;
    const bool applicable = in_support && in_theta;

    rows.push_back(make_row("trace_condition", label, tr_shifted, trace_cap, false));

    const double s = std::exp(4.0 * theta.norm_inf());
    rows.push_back(make_row("trace_tilt_lower", label, tr_shifted / s, tr_plain));
    rows.push_back(make_row("trace_tilt_upper", label, tr_plain, s * tr_shifted));

    const ProductMeasure xi = product_approx(tau, f, theta.values());
    const std::vector<double> centre(xi.mean().begin(), xi.mean().end());
    const ProductMeasure plain = product_approx(tau, f);
    rows.push_back(make_row("tilt_shift", label, l1_distance(centre, plain.mean()), theta.norm_1()));
    rows.push_back(make_row("theta_l1", label, theta.norm_1(), eps * nd, in_support));

    double spread = 0.0;
    for (Vertex v = 0; v < table.size(); ++v) {
      const double p = xi.prob(v);
      if (p == 0.0) continue;
      vertex_gradient(table, v, grad);
      double dist = 0.0;
      for (std::size_t i = 0; i < un; ++i) dist += std::abs(std::tanh(grad[i]) - centre[i]);
      spread += p * dist;
    }
    rows.push_back(make_row("tanh_gradient_spread", label, spread, spread_bound, applicable));
    rows.push_back(make_row("centre_residual", label, mf_residual(f, centre, 1.0), centre_bound, applicable));

    const std::vector<double> a = mean(tau);
    rows.push_back(make_row("mean_residual", label, mf_residual(f, a, 1.0), threshold, applicable));
  }
  return rows;
}

AuditRow audit_tanh_lemma(int trials, double L_lo, double L_hi, std::uint64_t seed, int max_atoms) {
  if (trials < 1) throw InvalidArgument("audit_tanh_lemma: trials must be >= 1");
  if (!(L_lo >= 1.0) || !(L_hi >= L_lo)) throw InvalidArgument("audit_tanh_lemma: need 1 <= L_lo <= L_hi");
  if (max_atoms < 1) throw InvalidArgument("audit_tanh_lemma: max_atoms must be >= 1");
  Rng rng(seed);
  const std::string instance = "trials=" + std::to_string(trials) + ",L=[" + std::to_string(L_lo) +
                               "," + std::to_string(L_hi) + "],atoms<=" + std::to_string(max_atoms) +
                               ",seed=" + std::to_string(seed);
  AuditRow worst = make_row("tanh_concentration", instance, 0.0, 0.0);
  std::vector<double> atoms, weights;
  for (int trial = 0; trial < trials; ++trial) {
    const double L = rng.uniform(L_lo, L_hi);
    const auto k = static_cast<std::size_t>(rng.uniform_int(1, max_atoms));
    atoms.resize(k);
    weights.resize(k);
    double total = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      atoms[a] = rng.uniform(-L, L);
      weights[a] = rng.uniform() + 1e-12;
      total += weights[a];
    }
    double ez = 0.0, etanh = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      weights[a] /= total;
      ez += weights[a] * atoms[a];
      etanh += weights[a] * std::tanh(atoms[a]);
    }
    double spread = 0.0;
    for (std::size_t a = 0; a < k; ++a) spread += weights[a] * std::abs(std::tanh(atoms[a]) - etanh);
    AuditRow row = make_row("tanh_concentration", instance, std::abs(std::tanh(ez) - etanh), 20.0 * L * spread);
    if (!row.pass || row.ratio > worst.ratio) worst = row;
    if (!worst.pass) break;
  }
  return worst;
}

std::vector<AuditRow> audit_appendix_misc(const FourierExpansion& f, const ScalarShape& h,
                                          std::span<const std::vector<double>> product_means,
                                          const std::string& instance, int max_n) {
  const int n = f.dim();
  const auto un = static_cast<std::size_t>(n);
  const double nd = n;
  const std::vector<double> tf = f.truth_table(max_n);
  const FourierExpansion hf = compose(f, h, max_n);
  const std::vector<double> thf = hf.truth_table(max_n);
  const double L = lipschitz_l1_from_table(n, tf);
  const double B = h.b2();
  const double BL2 = B == 0.0 ? 0.0 : B * L * L;

  std::vector<AuditRow> rows;
  std::vector<double> gf(un), ghf(un);
  double worst1 = 0.0, worst2 = 0.0;
  for (Vertex v = 0; v < tf.size(); ++v) {
    vertex_gradient(tf, v, gf);
    vertex_gradient(thf, v, ghf);
    const double d1 = h.eval(tf[v]).d1;
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < un; ++i) {
      const double d = ghf[i] - d1 * gf[i];
      s1 += std::abs(d);
      s2 += d * d;
    }
    worst1 = std::max(worst1, s1);
    worst2 = std::max(worst2, std::sqrt(s2));
  }
  rows.push_back(make_row("chain_rule_vertex_l1", tag(instance, "vertices"), worst1, BL2 * nd));
  rows.push_back(make_row("chain_rule_vertex_l2", tag(instance, "vertices"), worst2, BL2 * std::sqrt(nd)));

  for (std::size_t k = 0; k < product_means.size(); ++k) {
    const std::string label = tag(instance, "point" + std::to_string(k + 1));
    const ProductMeasure xi(product_means[k]);
    if (xi.dim() != n) throw DimensionMismatch("audit_appendix_misc: point", n, xi.dim());
    const std::span<const double> z = xi.mean();

    hf.gradient_into(z, ghf);
    f.gradient_into(z, gf);
    const double d1 = h.eval(f(z)).d1;
    double defect = 0.0;
    for (std::size_t i = 0; i < un; ++i) defect += std::abs(ghf[i] - d1 * gf[i]);
    rows.push_back(make_row("chain_rule_extension", label, defect, 2.0 * BL2 * std::pow(nd, 1.5)));

    const double fz = f(z);
    double ef = 0.0, eabs = 0.0;
    std::vector<double> egrad(un, 0.0);
    std::vector<double> gv(un);
    for (Vertex v = 0; v < tf.size(); ++v) {
      const double p = xi.prob(v);
      if (p == 0.0) continue;
      ef += p * tf[v];
      eabs += p * std::abs(tf[v] - fz);
      vertex_gradient(tf, v, gv);
      for (std::size_t i = 0; i < un; ++i) egrad[i] += p * gv[i];
    }
    rows.push_back(make_row("product_fluctuation", label, eabs, std::sqrt(nd) * L));
    rows.push_back(make_row("exchange_value", label, std::abs(ef - fz), kExchangeTolerance));
    rows.push_back(make_row("exchange_gradient", label, l1_distance(egrad, gf), kExchangeTolerance));
  }

  const double L1 = std::max(1.0, L);
  const double L2 = std::max(1.0, lipschitz_l2_from_table(n, tf));
  const double B1 = h.b1();
  const auto mul = [](double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : a * b; };
  rows.push_back(make_row("composed_lip", tag(instance, "composed"), lipschitz_l1_from_table(n, thf),
                          mul(B1, L1)));
  rows.push_back(make_row("composed_l2", tag(instance, "composed"), lipschitz_l2_from_table(n, thf),
                          mul(B1, L2) + 3.0 * mul(B, L1 * L1 * nd)));
  return rows;
}

std::vector<AuditRow> audit_large_deviations(const FourierExpansion& f, double t, double delta,
                                             const std::string& instance, int max_n) {
  const int n = f.dim();
  const double nd = n;
  const SmoothedCutoff sc = smoothed_cutoff_weights(f, t, delta, max_n);
  const double fmax = *std::max_element(sc.f_values.begin(), sc.f_values.end());
  if (fmax < t * nd) return {error_row("ld_witness", instance, "witness-missing")};

  const DenseMeasure nu = DenseMeasure::from_log_weights(n, sc.g_values);
  const DenseMeasure sigma = DenseMeasure::from_log_weights(n, sc.log_phi);
  const double lower = (t - sc.delta_prime) * nd;
  double tail = 0.0;
  for (std::size_t v = 0; v < sc.f_values.size(); ++v) {
    if (sc.f_values[v] <= lower) tail += nu.prob(v);
  }
  const double two_n = std::ldexp(1.0, -n);
  const double dist = tv(nu, sigma);
  std::vector<AuditRow> rows;
  rows.push_back(make_row("cutoff_tail", instance, tail, two_n));
  rows.push_back(make_row("cutoff_tv", instance, dist, 2.0 * two_n));
  rows.push_back(make_row("cutoff_coupling", instance, 2.0 * nd * dist, 2.0 * nd * two_n));
  return rows;
}

TightnessResult tightness_demo(std::span<const int> n_list) {
  const ScalarShape h = ScalarShape::remark14();
  const double B = h.b2();
  TightnessResult out;
  for (int n : n_list) {
    if (n < 8) throw InvalidArgument("tightness_demo: n must be >= 8");
    const int m = n - 1;
    const double log_norm = m * std::log(2.0);
    const double log_m_fact = std::lgamma(m + 1.0);
    double partial = 0.0;
    for (int k = 0; k <= m; ++k) {
      const double w = std::exp(log_m_fact - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0) - log_norm);
      const double s = 2.0 * k - m;
      partial += w * (h(s + 1.0) - h(s - 1.0)) / 2.0;
    }
    const double norm = n * std::abs(partial);
    out.norms.push_back(norm);
    // Comparison term h'(f(0)) grad f(0) vanishes, so the norm is the defect.
    out.rows.push_back(make_row("extension_defect", "sum_x:n=" + std::to_string(n), norm,
                                2.0 * B * std::pow(static_cast<double>(n), 1.5)));
  }
  if (n_list.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(n_list.size());
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      const double x = std::log(static_cast<double>(n_list[i]));
      const double y = std::log(out.norms[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    out.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  }
  return out;
}

}  // namespace mfgl

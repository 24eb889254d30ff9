#include "mfgl/scalar_shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mfgl {

ScalarShape ScalarShape::cutoff() {
  ScalarShape s;
  s.kind_ = Kind::cutoff;
  return s;
}

ScalarShape ScalarShape::remark14() {
  ScalarShape s;
  s.kind_ = Kind::remark14;
  return s;
}

ScalarShape ScalarShape::affine(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("affine shape: non-finite");
  ScalarShape s;
  s.kind_ = Kind::affine;
  s.a_ = a;
  s.b_ = b;
  return s;
}

ScalarShape ScalarShape::table(std::vector<double> xs, std::vector<double> ys,
                               std::vector<double> slopes) {
  if (xs.size() < 2 || ys.size() != xs.size() || slopes.size() != xs.size()) {
    throw InvalidArgument("table shape: need >= 2 knots with matching values and slopes");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw InvalidArgument("table shape: knots must increase");
  }
  ScalarShape s;
  s.kind_ = Kind::table;
  s.xs_ = std::move(xs);
  s.ys_ = std::move(ys);
  s.slopes_ = std::move(slopes);
  return s;
}

ScalarShape ScalarShape::rescaled(double out_scale, double in_shift, double in_scale) const {
  if (!(in_scale > 0.0) || !std::isfinite(in_scale) || !std::isfinite(out_scale) ||
      !std::isfinite(in_shift)) {
    throw InvalidArgument("rescaled: need finite parameters and in_scale > 0");
  }
  ScalarShape s = *this;
  s.out_scale_ = out_scale * out_scale_;
  s.in_shift_ = in_shift + in_scale * in_shift_;
  s.in_scale_ = in_scale * in_scale_;
  return s;
}

ShapeJet ScalarShape::eval_base(double y) const {
  switch (kind_) {
    case Kind::cutoff:
      if (y < -1.0) return {2.0 * y + 1.0, 2.0, 0.0};
      if (y < 0.0) return {-y * y, -2.0 * y, -2.0};
      return {0.0, 0.0, 0.0};
    case Kind::remark14: {
      if (y >= 1.0) return {0.5 * y * y, y, 1.0};
      if (y <= -1.0) return {-0.5 * y * y, -y, -1.0};
      const double y2 = y * y;
      return {0.75 * y * y2 - 0.25 * y * y2 * y2, 2.25 * y2 - 1.25 * y2 * y2,
              4.5 * y - 5.0 * y * y2};
    }
    case Kind::affine:
      return {a_ * y + b_, a_, 0.0};
    case Kind::table: {
      if (y <= xs_.front()) return {ys_.front() + slopes_.front() * (y - xs_.front()), slopes_.front(), 0.0};
      if (y >= xs_.back()) return {ys_.back() + slopes_.back() * (y - xs_.back()), slopes_.back(), 0.0};
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), y);
      const std::size_t k = static_cast<std::size_t>(it - xs_.begin()) - 1;
      const double w = xs_[k + 1] - xs_[k];
      const double s = (y - xs_[k]) / w;
      const double p0 = ys_[k], p1 = ys_[k + 1];
      const double m0 = slopes_[k] * w, m1 = slopes_[k + 1] * w;
      const double s2 = s * s, s3 = s2 * s;
      const double v = (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * m0 +
                       (-2 * s3 + 3 * s2) * p1 + (s3 - s2) * m1;
      const double d = (6 * s2 - 6 * s) * p0 + (3 * s2 - 4 * s + 1) * m0 +
                       (-6 * s2 + 6 * s) * p1 + (3 * s2 - 2 * s) * m1;
      const double dd = (12 * s - 6) * p0 + (6 * s - 4) * m0 + (-12 * s + 6) * p1 + (6 * s - 2) * m1;
      return {v, d / w, dd / (w * w)};
    }
  }
  return {};
}

ShapeJet ScalarShape::eval(double x) const {
  const ShapeJet j = eval_base((x - in_shift_) / in_scale_);
  return {out_scale_ * j.value, out_scale_ * j.d1 / in_scale_,
          out_scale_ * j.d2 / (in_scale_ * in_scale_)};
}

double ScalarShape::base_b1() const {
  switch (kind_) {
    case Kind::cutoff:
      return 2.0;
    case Kind::remark14:
      return std::numeric_limits<double>::infinity();
    case Kind::affine:
      return std::abs(a_);
    case Kind::table: {
      double best = std::max(std::abs(slopes_.front()), std::abs(slopes_.back()));
      for (std::size_t k = 0; k + 1 < xs_.size(); ++k) {
        // h' on a segment is quadratic in s; check the ends and the vertex.
        const double w = xs_[k + 1] - xs_[k];
        const double p0 = ys_[k], p1 = ys_[k + 1];
        const double m0 = slopes_[k] * w, m1 = slopes_[k + 1] * w;
        const double qa = 6 * p0 + 3 * m0 - 6 * p1 + 3 * m1;
        const double qb = -6 * p0 - 4 * m0 + 6 * p1 - 2 * m1;
        const double qc = m0;
        auto q = [&](double s) { return std::abs((qa * s * s + qb * s + qc) / w); };
        best = std::max({best, q(0.0), q(1.0)});
        if (qa != 0.0) {
          const double sv = -qb / (2 * qa);
          if (sv > 0.0 && sv < 1.0) best = std::max(best, q(sv));
        }
      }
      return best;
    }
  }
  return 0.0;
}

double ScalarShape::base_b2() const {
  switch (kind_) {
    case Kind::cutoff:
      return 2.0;
    case Kind::remark14:
      return 3.0 * std::sqrt(0.3);
    case Kind::affine:
      return 0.0;
    case Kind::table: {
      double best = 0.0;
      for (std::size_t k = 0; k + 1 < xs_.size(); ++k) {
        for (double s : {0.0, 1.0}) {
          const double w = xs_[k + 1] - xs_[k];
          const double p0 = ys_[k], p1 = ys_[k + 1];
          const double m0 = slopes_[k] * w, m1 = slopes_[k + 1] * w;
          const double dd = (12 * s - 6) * p0 + (6 * s - 4) * m0 + (-12 * s + 6) * p1 + (6 * s - 2) * m1;
          best = std::max(best, std::abs(dd) / (w * w));
        }
      }
      return best;
    }
  }
  return 0.0;
}

double ScalarShape::b1() const {
  const double base = base_b1();
  if (out_scale_ == 0.0) return 0.0;
  return base * std::abs(out_scale_) / in_scale_;
}

double ScalarShape::b2() const {
  const double base = base_b2();
  if (out_scale_ == 0.0) return 0.0;
  return base * std::abs(out_scale_) / (in_scale_ * in_scale_);
}

std::string ScalarShape::name() const {
  switch (kind_) {
    case Kind::cutoff:
      return "cutoff";
    case Kind::remark14:
      return "remark14";
    case Kind::affine:
      return "affine";
    case Kind::table:
      return "table";
  }
  return "unknown";
}

ShapeJet cutoff_shape_eval(const ScalarShape& h, double x) { return h.eval(x); }

ScalarShape cutoff_psi(int n, double t, double delta) {
  if (n < 1) throw InvalidArgument("cutoff_psi: n must be positive");
  if (!(delta > 0.0)) throw InvalidArgument("cutoff_psi: delta must be positive");
  const double nd = static_cast<double>(n);
  return ScalarShape::cutoff().rescaled(nd, t * nd, delta * nd);
}

FourierExpansion compose(const FourierExpansion& f, const ScalarShape& h, int max_n) {
  return compose(f, [&h](double x) { return h(x); }, max_n);
}

}  // namespace mfgl

#pragma once

#include <string>
#include <vector>

#include "mfgl/boolfn.hpp"

namespace mfgl {

struct ShapeJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// A twice-differentiable (almost everywhere) scalar function with analytic
/// first and second derivatives and bounds B1 = sup|h'|, B2 = sup|h''|.
///
/// Every shape is out_scale * base((x - in_shift) / in_scale) for one of the
/// base kinds below. At knots the one-sided derivative from the right is
/// reported.
class ScalarShape {
 public:
  enum class Kind { cutoff, remark14, affine, table };

  /// 2x+1 on (-inf,-1], -x^2 on [-1,0], 0 on [0,inf).
  static ScalarShape cutoff();
  /// (3/4)x^3 - (1/4)x^5 on (-1,1), x^2/2 on [1,inf), -x^2/2 on (-inf,-1].
  static ScalarShape remark14();
  /// a*x + b.
  static ScalarShape affine(double a, double b);
  /// Cubic Hermite interpolant through (xs, ys) with the given slopes,
  /// extended linearly outside [xs.front(), xs.back()].
  static ScalarShape table(std::vector<double> xs, std::vector<double> ys,
                           std::vector<double> slopes);

  /// x -> out_scale * h((x - in_shift) / in_scale); in_scale must be > 0.
  ScalarShape rescaled(double out_scale, double in_shift, double in_scale) const;

  ShapeJet eval(double x) const;
  double operator()(double x) const { return eval(x).value; }

  double b1() const;
  double b2() const;

  Kind kind() const { return kind_; }
  std::string name() const;

 private:
  ShapeJet eval_base(double y) const;
  double base_b1() const;
  double base_b2() const;

  Kind kind_ = Kind::affine;
  double a_ = 1.0;
  double b_ = 0.0;
  std::vector<double> xs_, ys_, slopes_;
  double out_scale_ = 1.0;
  double in_shift_ = 0.0;
  double in_scale_ = 1.0;
};

ShapeJet cutoff_shape_eval(const ScalarShape& h, double x);

/// psi(x) = n * h((x/n - t)/delta) with h the cutoff shape.
ScalarShape cutoff_psi(int n, double t, double delta);

FourierExpansion compose(const FourierExpansion& f, const ScalarShape& h,
                         int max_n = kDefaultDenseCap);

}  // namespace mfgl

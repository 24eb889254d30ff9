#pragma once

#include <cstddef>
#include <vector>

namespace mfgl {

// Small dense row-major matrix; only what the Ising and covariance code needs.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < rows && i < cols; ++i) t += (*this)(i, i);
    return t;
  }

  bool operator==(const Matrix&) const = default;
};

}  // namespace mfgl

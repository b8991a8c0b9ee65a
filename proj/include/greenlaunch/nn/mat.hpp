#pragma once

#include <cstddef>
#include <vector>

#include "greenlaunch/common/errors.hpp"

namespace greenlaunch::nn {

// Row-major batch-first matrix: rows index samples, cols index features.
template <typename S>
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<S> v;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), S(0)) {}

  S* row(int r) { return v.data() + static_cast<std::size_t>(r) * cols; }
  const S* row(int r) const { return v.data() + static_cast<std::size_t>(r) * cols; }

  S& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
  S at(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }

  std::size_t size() const { return v.size(); }
  void fill(S x) { std::fill(v.begin(), v.end(), x); }

  bool operator==(const Mat&) const = default;
};

template <typename S>
void require_shape(const Mat<S>& m, int rows, int cols, const char* where) {
  if (m.rows != rows || m.cols != cols) {
    throw ShapeError(std::string(where) + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                     ", got " + std::to_string(m.rows) + "x" + std::to_string(m.cols));
  }
}

template <typename S>
Mat<S> hconcat(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows != b.rows) throw ShapeError("hconcat: row mismatch");
  Mat<S> out(a.rows, a.cols + b.cols);
  for (int r = 0; r < a.rows; ++r) {
    S* dst = out.row(r);
    const S* pa = a.row(r);
    const S* pb = b.row(r);
    for (int c = 0; c < a.cols; ++c) dst[c] = pa[c];
    for (int c = 0; c < b.cols; ++c) dst[a.cols + c] = pb[c];
  }
  return out;
}

}  // namespace greenlaunch::nn

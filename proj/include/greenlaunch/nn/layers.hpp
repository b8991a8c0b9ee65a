#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "greenlaunch/common/rng.hpp"
#include "greenlaunch/nn/mat.hpp"

namespace greenlaunch::nn {

template <typename S>
struct ParamBlock {
  std::string name;
  std::vector<int> shape;
  std::vector<S> w;
  std::vector<S> g;

  ParamBlock() = default;
  ParamBlock(std::string n, std::vector<int> sh) : name(std::move(n)), shape(std::move(sh)) {
    std::size_t count = 1;
    for (int d : shape) count *= static_cast<std::size_t>(d);
    w.assign(count, S(0));
    g.assign(count, S(0));
  }

  void zero_grad() { std::fill(g.begin(), g.end(), S(0)); }
};

// Fully connected layer. Weights are stored input-major ([in][out]) so the
// inner loops run over contiguous output features.
template <typename S>
class Dense {
 public:
  Dense(std::string name, int in, int out)
      : in_(in), out_(out), weight_(name + ".weight", {in, out}), bias_(name + ".bias", {out}) {}

  int in_features() const { return in_; }
  int out_features() const { return out_; }

  void init_he(Rng& rng) { init_normal(rng, std::sqrt(S(2) / static_cast<S>(in_))); }

  void init_normal(Rng& rng, S sd) {
    for (S& x : weight_.w) x = static_cast<S>(rng.normal(0.0, static_cast<double>(sd)));
    std::fill(bias_.w.begin(), bias_.w.end(), S(0));
  }

  const Mat<S>& forward(const Mat<S>& x, bool cache = true) {
    require_shape(x, x.rows, in_, "Dense::forward");
    out_cache_.rows = x.rows;
    out_cache_.cols = out_;
    out_cache_.v.assign(static_cast<std::size_t>(x.rows) * out_, S(0));
    for (int b = 0; b < x.rows; ++b) {
      const S* xr = x.row(b);
      S* yr = out_cache_.row(b);
      for (int o = 0; o < out_; ++o) yr[o] = bias_.w[o];
      for (int i = 0; i < in_; ++i) {
        const S xi = xr[i];
        if (xi == S(0)) continue;
        const S* wr = weight_.w.data() + static_cast<std::size_t>(i) * out_;
        for (int o = 0; o < out_; ++o) yr[o] += xi * wr[o];
      }
    }
    if (cache) in_cache_ = x;
    return out_cache_;
  }

  // Accumulates parameter gradients and returns the input gradient.
  Mat<S> backward(const Mat<S>& dy) {
    require_shape(dy, in_cache_.rows, out_, "Dense::backward");
    Mat<S> dx(in_cache_.rows, in_);
    for (int b = 0; b < dy.rows; ++b) {
      const S* dyr = dy.row(b);
      const S* xr = in_cache_.row(b);
      S* dxr = dx.row(b);
      for (int o = 0; o < out_; ++o) bias_.g[o] += dyr[o];
      for (int i = 0; i < in_; ++i) {
        const S* wr = weight_.w.data() + static_cast<std::size_t>(i) * out_;
        S* gr = weight_.g.data() + static_cast<std::size_t>(i) * out_;
        const S xi = xr[i];
        S acc = S(0);
        for (int o = 0; o < out_; ++o) {
          acc += dyr[o] * wr[o];
          gr[o] += xi * dyr[o];
        }
        dxr[i] = acc;
      }
    }
    return dx;
  }

  ParamBlock<S>& weight() { return weight_; }
  ParamBlock<S>& bias() { return bias_; }
  const ParamBlock<S>& weight() const { return weight_; }
  const ParamBlock<S>& bias() const { return bias_; }
  std::vector<ParamBlock<S>*> params() { return {&weight_, &bias_}; }

  const Mat<S>& output() const { return out_cache_; }

 private:
  int in_;
  int out_;
  ParamBlock<S> weight_;
  ParamBlock<S> bias_;
  Mat<S> in_cache_;
  Mat<S> out_cache_;
};

// 3x3 convolution, stride 1, zero padding 1, so spatial dims are preserved.
// Tensors are packed row-major as [batch][channel][height][width].
template <typename S>
class Conv2d {
 public:
  Conv2d(std::string name, int in_ch, int out_ch, int h, int w)
      : in_ch_(in_ch),
        out_ch_(out_ch),
        h_(h),
        w_(w),
        weight_(name + ".weight", {out_ch, in_ch, 3, 3}),
        bias_(name + ".bias", {out_ch}) {}

  int in_features() const { return in_ch_ * h_ * w_; }
  int out_features() const { return out_ch_ * h_ * w_; }

  void init_he(Rng& rng) {
    const S sd = std::sqrt(S(2) / static_cast<S>(in_ch_ * 9));
    for (S& x : weight_.w) x = static_cast<S>(rng.normal(0.0, static_cast<double>(sd)));
    std::fill(bias_.w.begin(), bias_.w.end(), S(0));
  }

  const Mat<S>& forward(const Mat<S>& x, bool cache = true) {
    require_shape(x, x.rows, in_features(), "Conv2d::forward");
    const int plane = h_ * w_;
    out_cache_.rows = x.rows;
    out_cache_.cols = out_features();
    out_cache_.v.assign(static_cast<std::size_t>(x.rows) * out_features(), S(0));
    for (int b = 0; b < x.rows; ++b) {
      const S* xb = x.row(b);
      S* yb = out_cache_.row(b);
      for (int co = 0; co < out_ch_; ++co) {
        S* yp = yb + static_cast<std::size_t>(co) * plane;
        const S bias = bias_.w[co];
        for (int p = 0; p < plane; ++p) yp[p] = bias;
        for (int ci = 0; ci < in_ch_; ++ci) {
          const S* xp = xb + static_cast<std::size_t>(ci) * plane;
          const S* k = kernel(co, ci);
          for (int ky = 0; ky < 3; ++ky) {
            for (int kx = 0; kx < 3; ++kx) {
              const S wgt = k[ky * 3 + kx];
              if (wgt == S(0)) continue;
              accumulate_shifted(yp, xp, wgt, ky - 1, kx - 1);
            }
          }
        }
      }
    }
    if (cache) in_cache_ = x;
    return out_cache_;
  }

  Mat<S> backward(const Mat<S>& dy) {
    require_shape(dy, in_cache_.rows, out_features(), "Conv2d::backward");
    const int plane = h_ * w_;
    Mat<S> dx(in_cache_.rows, in_features());
    for (int b = 0; b < dy.rows; ++b) {
      const S* xb = in_cache_.row(b);
      const S* dyb = dy.row(b);
      S* dxb = dx.row(b);
      for (int co = 0; co < out_ch_; ++co) {
        const S* dyp = dyb + static_cast<std::size_t>(co) * plane;
        S acc = S(0);
        for (int p = 0; p < plane; ++p) acc += dyp[p];
        bias_.g[co] += acc;
        for (int ci = 0; ci < in_ch_; ++ci) {
          const S* xp = xb + static_cast<std::size_t>(ci) * plane;
          S* dxp = dxb + static_cast<std::size_t>(ci) * plane;
          const S* k = kernel(co, ci);
          S* kg = kernel_grad(co, ci);
          for (int ky = 0; ky < 3; ++ky) {
            for (int kx = 0; kx < 3; ++kx) {
              kg[ky * 3 + kx] += correlate_shifted(dyp, xp, ky - 1, kx - 1);
              const S wgt = k[ky * 3 + kx];
              if (wgt != S(0)) accumulate_shifted_transposed(dxp, dyp, wgt, ky - 1, kx - 1);
            }
          }
        }
      }
    }
    return dx;
  }

  ParamBlock<S>& weight() { return weight_; }
  ParamBlock<S>& bias() { return bias_; }
  std::vector<ParamBlock<S>*> params() { return {&weight_, &bias_}; }

  const Mat<S>& output() const { return out_cache_; }

 private:
  S* kernel_ptr(std::vector<S>& v, int co, int ci) const {
    return v.data() + (static_cast<std::size_t>(co) * in_ch_ + ci) * 9;
  }
  const S* kernel(int co, int ci) const {
    return weight_.w.data() + (static_cast<std::size_t>(co) * in_ch_ + ci) * 9;
  }
  S* kernel_grad(int co, int ci) { return kernel_ptr(weight_.g, co, ci); }

  // y[oy][ox] += wgt * x[oy+dy][ox+dx] over valid cells.
  void accumulate_shifted(S* y, const S* x, S wgt, int dy, int dx) const {
    const int oy_lo = std::max(0, -dy), oy_hi = std::min(h_ - 1, h_ - 1 - dy);
    const int ox_lo = std::max(0, -dx), ox_hi = std::min(w_ - 1, w_ - 1 - dx);
    for (int oy = oy_lo; oy <= oy_hi; ++oy) {
      S* yr = y + oy * w_;
      const S* xr = x + (oy + dy) * w_ + dx;
      for (int ox = ox_lo; ox <= ox_hi; ++ox) yr[ox] += wgt * xr[ox];
    }
  }

  // dx[oy+dy][ox+dx] += wgt * dy[oy][ox]; the transpose of accumulate_shifted.
  void accumulate_shifted_transposed(S* dxp, const S* dyp, S wgt, int dy, int dx) const {
    const int oy_lo = std::max(0, -dy), oy_hi = std::min(h_ - 1, h_ - 1 - dy);
    const int ox_lo = std::max(0, -dx), ox_hi = std::min(w_ - 1, w_ - 1 - dx);
    for (int oy = oy_lo; oy <= oy_hi; ++oy) {
      const S* dr = dyp + oy * w_;
      S* xr = dxp + (oy + dy) * w_ + dx;
      for (int ox = ox_lo; ox <= ox_hi; ++ox) xr[ox] += wgt * dr[ox];
    }
  }

  // sum over valid cells of dy[oy][ox] * x[oy+dy][ox+dx].
  S correlate_shifted(const S* dyp, const S* x, int dy, int dx) const {
    const int oy_lo = std::max(0, -dy), oy_hi = std::min(h_ - 1, h_ - 1 - dy);
    const int ox_lo = std::max(0, -dx), ox_hi = std::min(w_ - 1, w_ - 1 - dx);
    S acc = S(0);
    for (int oy = oy_lo; oy <= oy_hi; ++oy) {
      const S* dr = dyp + oy * w_;
      const S* xr = x + (oy + dy) * w_ + dx;
      for (int ox = ox_lo; ox <= ox_hi; ++ox) acc += dr[ox] * xr[ox];
    }
    return acc;
  }

  int in_ch_;
  int out_ch_;
  int h_;
  int w_;
  ParamBlock<S> weight_;
  ParamBlock<S> bias_;
  Mat<S> in_cache_;
  Mat<S> out_cache_;
};

template <typename S>
class ReLU {
 public:
  const Mat<S>& forward(const Mat<S>& x, bool cache = true) {
    out_cache_.rows = x.rows;
    out_cache_.cols = x.cols;
    out_cache_.v.resize(x.v.size());
    for (std::size_t i = 0; i < x.v.size(); ++i) out_cache_.v[i] = x.v[i] > S(0) ? x.v[i] : S(0);
    if (cache) mask_cache_ = out_cache_;
    return out_cache_;
  }

  Mat<S> backward(const Mat<S>& dy) {
    require_shape(dy, mask_cache_.rows, mask_cache_.cols, "ReLU::backward");
    Mat<S> dx(dy.rows, dy.cols);
    for (std::size_t i = 0; i < dy.v.size(); ++i) dx.v[i] = mask_cache_.v[i] > S(0) ? dy.v[i] : S(0);
    return dx;
  }

  const Mat<S>& output() const { return out_cache_; }

 private:
  Mat<S> out_cache_;
  Mat<S> mask_cache_;
};

}  // namespace greenlaunch::nn

#pragma once

// Equal-weight tensor trapezoid sums on an M^n torus grid with a fixed
// pairwise reduction order. Also returns the mean over the sub-grid of even
// nodes (M/2 per dimension) from the same pass, which serves as an error
// estimate.

#include <cmath>
#include <span>
#include <vector>

#include "parallel.hpp"
#include "polydisk/errors.hpp"
#include "polydisk/types.hpp"

namespace polydisk::detail {

struct TorusMeans {
  CVector full;
  CVector half;
};

// Pairwise sum of `count` rows of width w stored contiguously; result in row 0.
inline void pairwise_rows(std::vector<Complex>& rows, std::size_t count, std::size_t w) {
  for (std::size_t step = 1; step < count; step *= 2) {
    for (std::size_t i = 0; i + step < count; i += 2 * step) {
      Complex* dst = rows.data() + i * w;
      const Complex* src = rows.data() + (i + step) * w;
      for (std::size_t c = 0; c < w; ++c) dst[c] += src[c];
    }
  }
}

template <class Fn>
class TorusSummer {
 public:
  TorusSummer(std::size_t n, int m, std::size_t width, Fn& fn) : n_(n), m_(m), w_(width), fn_(fn) {}

  // Sums over dimensions >= d with idx[0..d) fixed. Writes full and even-subgrid sums.
  void sum(std::size_t d, std::vector<int>& idx, Complex* full, Complex* half) const {
    const std::size_t M = static_cast<std::size_t>(m_);
    std::vector<Complex> fr(M * w_), hr(M / 2 * w_ + w_);
    std::vector<Complex> buf_h(w_);
    for (std::size_t i = 0; i < M; ++i) {
      idx[d] = static_cast<int>(i);
      Complex* f = fr.data() + i * w_;
      Complex* h = (i % 2 == 0) ? hr.data() + (i / 2) * w_ : buf_h.data();
      if (d + 1 == n_) {
        fn_(std::span<const int>(idx), std::span<Complex>(f, w_));
        for (std::size_t c = 0; c < w_; ++c) {
          if (!std::isfinite(f[c].real()) || !std::isfinite(f[c].imag())) {
            throw NumericError("non-finite integrand value at a quadrature node");
          }
        }
        if (i % 2 == 0) std::copy(f, f + w_, h);
      } else {
        sum(d + 1, idx, f, h);
      }
    }
    pairwise_rows(fr, M, w_);
    pairwise_rows(hr, M / 2, w_);
    std::copy(fr.begin(), fr.begin() + w_, full);
    std::copy(hr.begin(), hr.begin() + w_, half);
  }

 private:
  std::size_t n_;
  int m_;
  std::size_t w_;
  Fn& fn_;
};

/// fn(indices, out) writes `width` values for the node with the given indices
/// (node j has angle 2 pi i_j / M). Returns grid means.
template <class Fn>
TorusMeans torus_means(std::size_t n, int nodes, std::size_t width, Fn&& fn) {
  const std::size_t M = static_cast<std::size_t>(nodes);
  TorusSummer<Fn> summer(n, nodes, width, fn);
  std::vector<Complex> fr(M * width), hr(M * width);
  std::vector<Complex> dummy(width);
  parallel_for(M, [&](std::size_t i) {
    std::vector<int> idx(n, 0);
    idx[0] = static_cast<int>(i);
    Complex* f = fr.data() + i * width;
    Complex* h = hr.data() + i * width;
    if (n == 1) {
      fn(std::span<const int>(idx), std::span<Complex>(f, width));
      for (std::size_t c = 0; c < width; ++c) {
        if (!std::isfinite(f[c].real()) || !std::isfinite(f[c].imag())) {
          throw NumericError("non-finite integrand value at a quadrature node");
        }
      }
      std::copy(f, f + width, h);
    } else {
      summer.sum(1, idx, f, h);
    }
  });
  // Keep only even top-level rows for the half grid, compacted.
  std::vector<Complex> hc(M / 2 * width);
  for (std::size_t i = 0; i < M / 2; ++i) {
    std::copy(hr.begin() + 2 * i * width, hr.begin() + (2 * i + 1) * width, hc.begin() + i * width);
  }
  pairwise_rows(fr, M, width);
  pairwise_rows(hc, M / 2, width);

  TorusMeans out{CVector(fr.begin(), fr.begin() + width), CVector(hc.begin(), hc.begin() + width)};
  const double full_scale = std::pow(static_cast<double>(M), -static_cast<double>(n));
  const double half_scale = std::pow(static_cast<double>(M / 2), -static_cast<double>(n));
  for (auto& v : out.full) v *= full_scale;
  for (auto& v : out.half) v *= half_scale;
  return out;
}

}  // namespace polydisk::detail

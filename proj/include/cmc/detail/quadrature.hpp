#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "cmc/errors.hpp"

namespace cmc::detail {

/// Nodes and weights of the 20-point Gauss-Legendre rule on [-1, 1].
std::span<const double> gauss_legendre_nodes();
std::span<const double> gauss_legendre_weights();

template <std::size_t M>
using Values = std::array<double, M>;

template <std::size_t M, class F>
Values<M> gauss_legendre(F&& f, double a, double b) {
  const auto nodes = gauss_legendre_nodes();
  const auto weights = gauss_legendre_weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Values<M> sum{};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Values<M> v = f(mid + half * nodes[i]);
    for (std::size_t k = 0; k < M; ++k) sum[k] += weights[i] * v[k];
  }
  for (auto& s : sum) s *= half;
  return sum;
}

template <std::size_t M>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  Values<M> value{};
};

struct AdaptiveOptions {
  double rel_tol = 1e-13;
  int initial_panels = 16;
  std::size_t max_panels = std::size_t{1} << 15;
};

/// Globally adaptive composite Gauss-Legendre: the panel whose one-rule and
/// two-half-rule estimates disagree most is bisected until the summed
/// disagreement of every component is below rel_tol times its L1 size.
/// Returns the panels ordered by position.
template <std::size_t M, class F>
std::vector<Panel<M>> adaptive_panels(F&& f, double a, double b,
                                      const AdaptiveOptions& opt = {}) {
  struct Work {
    double a, b;
    Values<M> left, right;
    double err[M];
    double priority;
  };
  auto less = [](const Work& x, const Work& y) { return x.priority < y.priority; };
  std::priority_queue<Work, std::vector<Work>, decltype(less)> heap(less);

  Values<M> scale{};
  Values<M> total_err{};

  auto make = [&](double lo, double hi, const Values<M>& coarse) {
    Work w;
    w.a = lo;
    w.b = hi;
    const double mid = 0.5 * (lo + hi);
    w.left = gauss_legendre<M>(f, lo, mid);
    w.right = gauss_legendre<M>(f, mid, hi);
    for (std::size_t k = 0; k < M; ++k) {
      const double fine = w.left[k] + w.right[k];
      const double noise = 32.0 * std::numeric_limits<double>::epsilon() *
                           (std::abs(w.left[k]) + std::abs(w.right[k]));
      w.err[k] = std::max(std::abs(fine - coarse[k]) - noise, 0.0);
    }
    return w;
  };
  auto prioritise = [&](Work& w) {
    double p = 0.0;
    for (std::size_t k = 0; k < M; ++k) {
      p = std::max(p, w.err[k] / std::max(scale[k], 1e-300));
    }
    w.priority = p;
  };

  std::vector<Work> initial;
  const int p0 = std::max(opt.initial_panels, 1);
  for (int i = 0; i < p0; ++i) {
    const double lo = a + (b - a) * i / p0;
    const double hi = i + 1 == p0 ? b : a + (b - a) * (i + 1) / p0;
    initial.push_back(make(lo, hi, gauss_legendre<M>(f, lo, hi)));
  }
  for (const auto& w : initial) {
    for (std::size_t k = 0; k < M; ++k) {
      scale[k] += std::abs(w.left[k]) + std::abs(w.right[k]);
      total_err[k] += w.err[k];
    }
  }
  for (auto& w : initial) {
    prioritise(w);
    heap.push(w);
  }

  auto converged = [&] {
    for (std::size_t k = 0; k < M; ++k) {
      if (total_err[k] > opt.rel_tol * scale[k]) return false;
    }
    return true;
  };

  while (!converged()) {
    if (heap.size() >= opt.max_panels) {
      throw CmcError(ErrorCode::QuadratureFailure,
                     "adaptive quadrature did not reach tolerance");
    }
    Work w = heap.top();
    heap.pop();
    const double mid = 0.5 * (w.a + w.b);
    if (!(mid > w.a && mid < w.b)) {
      throw CmcError(ErrorCode::QuadratureFailure,
                     "adaptive quadrature exhausted interval resolution");
    }
    Work l = make(w.a, mid, w.left);
    Work r = make(mid, w.b, w.right);
    for (std::size_t k = 0; k < M; ++k) {
      total_err[k] += l.err[k] + r.err[k] - w.err[k];
      scale[k] += std::abs(l.left[k]) + std::abs(l.right[k]) +
                  std::abs(r.left[k]) + std::abs(r.right[k]) -
                  std::abs(w.left[k]) - std::abs(w.right[k]);
    }
    prioritise(l);
    prioritise(r);
    heap.push(l);
    heap.push(r);
  }

  std::vector<Panel<M>> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    const Work& w = heap.top();
    Panel<M> p{w.a, w.b, {}};
    for (std::size_t k = 0; k < M; ++k) p.value[k] = w.left[k] + w.right[k];
    panels.push_back(p);
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel<M>& x, const Panel<M>& y) { return x.a < y.a; });
  return panels;
}

template <std::size_t M>
Values<M> panel_sum(const std::vector<Panel<M>>& panels) {
  Values<M> sum{};
  for (const auto& p : panels) {
    for (std::size_t k = 0; k < M; ++k) sum[k] += p.value[k];
  }
  return sum;
}

/// Scalar convenience wrapper.
template <class F>
double integrate(F&& f, double a, double b, const AdaptiveOptions& opt = {}) {
  auto wrapped = [&](double x) { return Values<1>{f(x)}; };
  return panel_sum<1>(adaptive_panels<1>(wrapped, a, b, opt))[0];
}

}  // namespace cmc::detail

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "exflat/complex.hpp"
#include "exflat/error.hpp"

namespace exflat {

struct QuadratureResult {
  cplx value{0.0};
  double error = 0.0;  // sum of |K15 - G7| over the final partition
  int intervals = 0;
  int evaluations = 0;
};

namespace detail {

// Kronrod abscissae (descending) with the 15-point Kronrod and embedded 7-point Gauss weights.
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  cplx value;
  double error;
  double abs_value;
};

template <class G>
Panel gk15(const G& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const cplx fc = g(center);
  cplx kronrod = kronrod_weights[7] * fc;
  cplx gauss = gauss_weights[3] * fc;
  double abs_sum = kronrod_weights[7] * std::abs(fc);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * gk_nodes[static_cast<std::size_t>(i)];
    const cplx f1 = g(center - dx);
    const cplx f2 = g(center + dx);
    kronrod += kronrod_weights[static_cast<std::size_t>(i)] * (f1 + f2);
    abs_sum += kronrod_weights[static_cast<std::size_t>(i)] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) gauss += gauss_weights[static_cast<std::size_t>(i / 2)] * (f1 + f2);
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * std::abs(half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of a complex-valued function
/// of a real parameter over [a, b].
///
/// The panel with the largest error estimate is bisected until the summed estimate
/// falls below max(tol, roundoff floor). Ties go to the leftmost panel and the final
/// sum runs left to right, so the result is a deterministic function of the inputs.
template <class G>
QuadratureResult integrate_real(const G& g, double a, double b, double tol, int max_intervals = 4000) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "quadrature tolerance must be positive");
  QuadratureResult out;
  if (a == b) return out;

  auto worse = [](const detail::Panel& x, const detail::Panel& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  };
  std::priority_queue<detail::Panel, std::vector<detail::Panel>, decltype(worse)> queue(worse);
  std::vector<detail::Panel> settled;

  detail::Panel first = detail::gk15(g, a, b);
  double total_error = first.error;
  double total_abs = first.abs_value;
  queue.push(first);
  int evaluations = 15;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  while (true) {
    const double floor = 50.0 * eps * total_abs;
    if (total_error <= std::max(tol, floor)) break;
    if (static_cast<int>(queue.size() + settled.size()) >= max_intervals)
    {
      char msg[128];
      std::snprintf(msg, sizeof msg, "subdivision budget exhausted with error estimate %.3g > %.3g", total_error, tol);
      throw Error(ErrorKind::ToleranceNotMet, msg);
    }
    const detail::Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      // Panel cannot be split further in floating point.
      settled.push_back(worst);
      if (queue.empty()) break;
      continue;
    }
    const detail::Panel left = detail::gk15(g, worst.a, mid);
    const detail::Panel right = detail::gk15(g, mid, worst.b);
    evaluations += 30;
    total_error += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    queue.push(left);
    queue.push(right);
  }

  std::vector<detail::Panel> panels = std::move(settled);
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  const bool forward = a < b;
  std::sort(panels.begin(), panels.end(),
            [forward](const detail::Panel& x, const detail::Panel& y) { return forward ? x.a < y.a : x.a > y.a; });
  for (const detail::Panel& p : panels) {
    out.value += p.value;
    out.error += p.error;
  }
  out.intervals = static_cast<int>(panels.size());
  out.evaluations = evaluations;
  return out;
}

/// Contour integral of f along the parametrized curve w(t), t in [t0, t1].
template <class F, class W, class DW>
QuadratureResult integrate_curve(const F& f, const W& w, const DW& dw, double t0, double t1, double tol,
                                 int max_intervals = 4000) {
  return integrate_real([&](double t) { return f(w(t)) * dw(t); }, t0, t1, tol, max_intervals);
}

/// Contour integral of f along the straight segment [a, b], with its error estimate.
template <class F>
QuadratureResult integrate_segment_detailed(const F& f, cplx a, cplx b, double tol, int max_intervals = 4000) {
  const cplx d = b - a;
  return integrate_real([&](double t) { return f(a + t * d) * d; }, 0.0, 1.0, tol, max_intervals);
}

template <class F>
cplx integrate_segment(const F& f, cplx a, cplx b, double tol) {
  return integrate_segment_detailed(f, a, b, tol).value;
}

}  // namespace exflat

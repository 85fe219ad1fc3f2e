#pragma once
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace spinreg::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;      // conservative absolute error estimate
  std::size_t evals = 0;
  bool converged = true;   // false if the segment budget ran out first
};

namespace detail {

// 15-point Kronrod nodes on [-1,1] and weights; rows 0,2,4,... embed Gauss-7.
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

struct Segment {
  double a, b, value, error;
};

template <class F>
Segment eval_gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k15 = kWgk[7] * fc;
  double g7 = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double f1 = f(c - h * kXgk[i]);
    const double f2 = f(c + h * kXgk[i]);
    k15 += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) g7 += kWg[i / 2] * (f1 + f2);
  }
  k15 *= h;
  g7 *= h;
  return {a, b, k15, std::abs(k15 - g7)};
}

inline bool worse(const Segment& x, const Segment& y) { return x.error < y.error; }

}  // namespace detail

// Adaptive integration of f over the finite interval [a,b] to absolute
// tolerance abs_tol.  The interval is pre-split into panels no wider than
// max_panel so oscillatory integrands are resolved before refinement starts;
// the worst panel is then bisected until the summed error estimate passes.
template <class F>
Result integrate(F&& f, double a, double b, double abs_tol, double max_panel,
                 std::size_t max_segments = 200000) {
  if (!(b >= a)) throw std::invalid_argument("integrate: requires b >= a");
  if (!(abs_tol > 0.0) || !(max_panel > 0.0))
    throw std::invalid_argument("integrate: tolerance and panel width must be positive");

  Result res;
  if (a == b) return res;

  const std::size_t n0 =
      std::min<std::size_t>(max_segments, std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / max_panel))));
  std::vector<detail::Segment> heap;
  heap.reserve(n0 + 64);
  double total_err = 0.0;
  for (std::size_t i = 0; i < n0; ++i) {
    const double lo = a + (b - a) * static_cast<double>(i) / static_cast<double>(n0);
    const double hi = (i + 1 == n0) ? b : a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(n0);
    heap.push_back(detail::eval_gk15(f, lo, hi));
    total_err += heap.back().error;
    res.evals += 15;
  }
  std::make_heap(heap.begin(), heap.end(), detail::worse);

  while (total_err > abs_tol && heap.size() < max_segments) {
    std::pop_heap(heap.begin(), heap.end(), detail::worse);
    const detail::Segment seg = heap.back();
    heap.pop_back();
    if (seg.b - seg.a <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(seg.a), 1.0)) {
      heap.push_back(seg);  // cannot split further; roundoff floor
      std::push_heap(heap.begin(), heap.end(), detail::worse);
      break;
    }
    const double mid = 0.5 * (seg.a + seg.b);
    const detail::Segment l = detail::eval_gk15(f, seg.a, mid);
    const detail::Segment r = detail::eval_gk15(f, mid, seg.b);
    res.evals += 30;
    total_err += l.error + r.error - seg.error;
    heap.push_back(l);
    std::push_heap(heap.begin(), heap.end(), detail::worse);
    heap.push_back(r);
    std::push_heap(heap.begin(), heap.end(), detail::worse);
  }

  // Final sums from the surviving segments keep the running totals honest.
  double value = 0.0, error = 0.0;
  std::sort(heap.begin(), heap.end(),
            [](const detail::Segment& x, const detail::Segment& y) { return x.a < y.a; });
  for (const auto& s : heap) {
    value += s.value;
    error += s.error;
  }
  res.value = value;
  res.error = error;
  res.converged = error <= abs_tol;
  return res;
}

}  // namespace spinreg::quad

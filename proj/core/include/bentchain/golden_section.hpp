#pragma once

#include <cmath>
#include <utility>

namespace bentchain {

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section maximization of a unimodal `f` on [lo, hi], stopping once
/// the bracket is narrower than `x_tol`. The returned point is the best
/// interior probe seen, so it is never worse than any evaluated point.
template <class F>
GoldenResult golden_section_maximize(F&& f, double lo, double hi, double x_tol,
                                     int max_iterations = 200) {
  constexpr double kInvPhi = 0.6180339887498948482;
  if (hi < lo) std::swap(lo, hi);

  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  GoldenResult out{f1 >= f2 ? x1 : x2, f1 >= f2 ? f1 : f2, 2};

  for (int it = 0; it < max_iterations && (hi - lo) > x_tol; ++it) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
      ++out.evaluations;
      if (f1 > out.value) out = {x1, f1, out.evaluations};
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
      ++out.evaluations;
      if (f2 > out.value) out = {x2, f2, out.evaluations};
    }
  }
  return out;
}

}  // namespace bentchain

/*
   Copyright 2026 The langevin-splitting Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "langevin/errors.hpp"

namespace langevin {

template <typename Scalar>
struct RootResult {
  Scalar root;
  Scalar residual;
  int iterations;
};

/// Root of a strictly increasing scalar function on [lo, hi] by Newton steps
/// that fall back to bisection whenever the Newton iterate leaves the current
/// bracket. Requires f(lo) <= 0 <= f(hi).
template <typename Scalar, typename F, typename DF>
RootResult<Scalar> solve_increasing(F&& f, DF&& df, Scalar lo, Scalar hi,
                                    Scalar x_tol = Scalar(1e-12),
                                    int max_iter = 200) {
  Scalar f_lo = f(lo);
  Scalar f_hi = f(hi);
  if (f_lo > 0 || f_hi < 0) {
    throw ConvergenceError("solve_increasing: root is not bracketed",
                           static_cast<double>(std::min(std::abs(f_lo),
                                                        std::abs(f_hi))));
  }
  if (f_lo == 0) return {lo, Scalar(0), 0};
  if (f_hi == 0) return {hi, Scalar(0), 0};

  Scalar x = lo + (hi - lo) / 2;
  for (int it = 1; it <= max_iter; ++it) {
    const Scalar fx = f(x);
    if (fx == 0) return {x, Scalar(0), it};
    if (fx < 0) {
      lo = x;
    } else {
      hi = x;
    }
    const Scalar slope = df(x);
    Scalar next = x - fx / slope;
    if (!(slope > 0) || !(next > lo && next < hi)) {
      next = lo + (hi - lo) / 2;
    }
    const Scalar scale = std::max(Scalar(1), std::abs(next));
    if (std::abs(next - x) <= x_tol * scale || hi - lo <= x_tol * scale) {
      return {next, std::abs(f(next)), it};
    }
    x = next;
  }
  throw ConvergenceError("solve_increasing: iteration cap reached",
                         static_cast<double>(std::abs(f(x))));
}

}  // namespace langevin

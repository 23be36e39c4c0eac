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

#include <cmath>
#include <stdexcept>
#include <vector>

#include "langevin/errors.hpp"

namespace langevin {

struct LineFit {
  double slope;
  double intercept;
};

/// Ordinary least squares y ~ slope * x + intercept.
inline LineFit least_squares_line(const std::vector<double>& x,
                                  const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InsufficientData("least_squares_line: need two or more points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0)) throw InsufficientData("least_squares_line: degenerate x");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace langevin

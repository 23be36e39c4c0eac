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

// Independent reference computations for the tests: quadrature, bisection and
// plain random sampling, deliberately sharing no code with the library.

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace oracle {

/// Adaptive Simpson quadrature on [a, b].
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, double tol = 1e-12, int depth = 50) {
  auto rule = [&](double lo, double hi, double flo, double fmid, double fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  };
  std::function<double(double, double, double, double, double, double, double,
                       int)>
      recurse = [&](double lo, double hi, double flo, double fmid, double fhi,
                    double whole, double eps, int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
    const double flm = f(lm), frm = f(rm);
    const double left = rule(lo, mid, flo, flm, fmid);
    const double right = rule(mid, hi, fmid, frm, fhi);
    if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
      return left + right + (left + right - whole) / 15.0;
    }
    return recurse(lo, mid, flo, flm, fmid, left, eps / 2, d - 1) +
           recurse(mid, hi, fmid, frm, fhi, right, eps / 2, d - 1);
  };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return recurse(a, b, fa, fm, fb, rule(a, b, fa, fm, fb), tol, depth);
}

/// Root of a monotone function on [lo, hi] by plain bisection.
inline double bisect(const std::function<double(double)>& f, double lo,
                     double hi, int iterations = 200) {
  double flo = f(lo);
  if (flo * f(hi) > 0) throw std::invalid_argument("bisect: no sign change");
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double normal_pdf(double x, double mean, double var) {
  return std::exp(-0.5 * (x - mean) * (x - mean) / var) /
         std::sqrt(2.0 * M_PI * var);
}

/// Standard normal quantile by bisection on the CDF.
inline double normal_quantile(double u) {
  return bisect([u](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)) - u; },
                -40.0, 40.0, 120);
}

/// Random symmetric positive-definite matrix with eigenvalues in [lo, hi].
inline Eigen::MatrixXd random_spd(std::mt19937_64& rng, int n, double lo,
                                  double hi) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(lo, hi);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  const Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = unif(rng);
  Eigen::MatrixXd m = q * d.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int n,
                                     double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

}  // namespace oracle

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

#include "langevin/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace langevin {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo,
                    std::uint32_t& hi) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(product);
  hi = static_cast<std::uint32_t>(product >> 32);
}

inline PhiloxCounter round(const PhiloxCounter& c, const PhiloxKey& k) {
  std::uint32_t lo0, hi0, lo1, hi1;
  mulhilo(kMul0, c[0], lo0, hi0);
  mulhilo(kMul1, c[2], lo1, hi1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    counter = round(counter, key);
  }
  return counter;
}

double uniform_open(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits =
      (static_cast<std::uint64_t>(hi) << 32) | static_cast<std::uint64_t>(lo);
  // 52 bits keep the largest value, 1 - 2^-53, exactly representable.
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

NoiseStream::NoiseStream(std::uint64_t seed, std::uint64_t stream_id,
                         std::uint64_t counter)
    : seed_(seed), stream_id_(stream_id), counter_(counter) {
  if (stream_id > 0xFFFFFFFFull) {
    throw std::invalid_argument("NoiseStream: stream id must fit in 32 bits");
  }
}

Vector NoiseStream::next_gaussian(Index n) {
  Vector z = gaussian_at(counter_, n);
  ++counter_;
  return z;
}

Vector NoiseStream::gaussian_at(std::uint64_t counter, Index n) const {
  const PhiloxKey key = {static_cast<std::uint32_t>(seed_),
                         static_cast<std::uint32_t>(seed_ >> 32)};
  Vector z(n);
  // Each Philox block yields two uniforms and, via Box-Muller, two normals.
  for (Index i = 0; i < n; i += 2) {
    const PhiloxCounter ctr = {static_cast<std::uint32_t>(i / 2),
                               static_cast<std::uint32_t>(counter),
                               static_cast<std::uint32_t>(counter >> 32),
                               static_cast<std::uint32_t>(stream_id_)};
    const PhiloxCounter bits = philox4x32_10(ctr, key);
    const double u1 = uniform_open(bits[0], bits[1]);
    const double u2 = uniform_open(bits[2], bits[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    z(i) = radius * std::cos(angle);
    if (i + 1 < n) z(i + 1) = radius * std::sin(angle);
  }
  return z;
}

}  // namespace langevin

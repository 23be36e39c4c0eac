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

// Counter-based Gaussian noise. Every draw is a pure function of
// (seed, stream id, counter), so particles can be advanced in any order or
// in parallel without changing results, and two chains can be driven by the
// identical draw (synchronous coupling).

#include <array>
#include <cstdint>

#include "langevin/linalg.hpp"

namespace langevin {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Maps the top 52 of 64 random bits to the open interval (0, 1).
double uniform_open(std::uint32_t hi, std::uint32_t lo);

class NoiseStream {
 public:
  /// `stream_id` must fit in 32 bits.
  NoiseStream(std::uint64_t seed, std::uint64_t stream_id,
              std::uint64_t counter = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t counter() const { return counter_; }

  /// Standard normal n-vector for the current counter; advances the counter.
  Vector next_gaussian(Index n);

  /// The draw a stream would produce at `counter`, without advancing.
  Vector gaussian_at(std::uint64_t counter, Index n) const;

  void skip(std::uint64_t steps) { counter_ += steps; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_;
};

}  // namespace langevin

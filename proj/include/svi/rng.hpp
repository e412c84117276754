// Copyright 2026 The svi Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SVI_RNG_HPP_
#define SVI_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>

namespace svi {

// SplitMix64 finalizer; used only to derive engine seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Random stream with platform-independent output. The engine is
// std::mt19937_64 (fully specified by the standard); the real-valued
// transforms are implemented here because the std:: distributions are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) { reseed(seed, 0); }

  // Independent stream for trial `trial` of an experiment seeded with
  // `master_seed`.
  static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial) {
    Rng r(0);
    r.reseed(master_seed, trial);
    return r;
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via the Marsaglia polar method.
  double normal() {
    if (spare_) {
      double v = *spare_;
      spare_.reset();
      return v;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    return u * f;
  }

 private:
  void reseed(std::uint64_t master, std::uint64_t trial) {
    const std::uint64_t a = splitmix64(master);
    const std::uint64_t b = splitmix64(a ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    engine_.seed(seq);
    spare_.reset();
  }

  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace svi

#endif  // SVI_RNG_HPP_

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

#ifndef SVI_COMMON_HPP_
#define SVI_COMMON_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace svi {

inline constexpr const char* kVersion = "0.1.0";

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  DimensionError(const std::string& what, Index expected, Index got)
      : Error(what + ": expected dimension " + std::to_string(expected) +
              ", got " + std::to_string(got)) {}
};

// Invalid argument or violated precondition that is not a dimension issue.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An iterative routine hit its iteration cap. Carries the best point found.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, Vector best, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"),
        best_(std::move(best)),
        residual_(residual) {}

  const Vector& best() const { return best_; }
  double residual() const { return residual_; }

 private:
  Vector best_;
  double residual_;
};

// The feasible set turned out to be empty.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// A solver iterate became non-finite or exploded.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, Vector snapshot, std::int64_t k)
      : Error(what + " at iteration " + std::to_string(k)),
        snapshot_(std::move(snapshot)),
        k_(k) {}

  const Vector& snapshot() const { return snapshot_; }
  std::int64_t iteration() const { return k_; }

 private:
  Vector snapshot_;
  std::int64_t k_;
};

// Malformed or inadmissible configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

inline void require_dim(const char* what, Index expected, Index got) {
  if (expected != got) throw DimensionError(what, expected, got);
}

inline bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace svi

#endif  // SVI_COMMON_HPP_

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

#ifndef SVI_TESTS_TEST_UTIL_HPP_
#define SVI_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "svi/svi.hpp"

namespace svi::testing {

inline Vector gaussian(Index n, Rng& rng, double scale = 1.0) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = scale * rng.normal();
  return v;
}

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

// Points of a set, obtained by projecting Gaussian points.
inline std::vector<Vector> points_in(const Projector& set, int count, Rng& rng,
                                     double scale = 3.0, const Vector* center = nullptr) {
  std::vector<Vector> out;
  for (int i = 0; i < count; ++i) {
    Vector z = gaussian(set.dim(), rng, scale);
    if (center) z += *center;
    out.push_back(set.project(z));
  }
  return out;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// One instance of every projector variant, each in a small dimension.
inline std::vector<std::pair<std::string, Projector>> projector_zoo() {
  std::vector<std::pair<std::string, Projector>> z;
  z.emplace_back("box", Projector(Box{vec({0, -1, -kInf}), vec({1, 2, 0.5})}));
  z.emplace_back("nonneg", Projector(Nonneg{3}));
  z.emplace_back("halfspace", Projector(Halfspace{vec({1, -2, 0.5}), 0.7}));
  z.emplace_back("hyperplane", Projector(Hyperplane{vec({1, 1, 1}), 1.0}));
  z.emplace_back("simplex", Projector(Simplex{4, 2.0}));
  z.emplace_back("halfspace-meet-hyperplane",
                 Projector(HalfspaceMeetHyperplane{Halfspace{vec({-1, 0, 0.3}), 0.0},
                                                   Hyperplane{vec({1, 1, 1}), 1.0}}));
  Product prod;
  prod.n = 5;
  prod.parts = {Projector(Simplex{2, 1.0}), Projector(Box{vec({0, 0}), vec({1, 1})})};
  prod.indices = {{0, 3}, {1, 4}};
  z.emplace_back("product", Projector(prod));
  // The output is within tol of the projection, so inner-product checks
  // against z far outside pick up an error of about tol * |z - p|.
  DykstraIntersection dyk;
  dyk.tol = 1e-11;
  dyk.sets = {Projector(Hyperplane{vec({1, -1, 1}), 0.5}),
              Projector(Box{vec({0, 0, 0}), vec({1, 1, 1})})};
  z.emplace_back("dykstra", Projector(dyk));
  Polyhedron poly;
  poly.a_in.resize(4, 3);
  poly.a_in << -1, 0, 0, 0, -1, 0, 0, 0, -1, 1, 2, 0;
  poly.b_in = vec({0, 0, 0, 2});
  poly.a_eq.resize(1, 3);
  poly.a_eq << 1, 1, 1;
  poly.b_eq = vec({1.5});
  z.emplace_back("polyhedron", Projector(poly));
  return z;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("svi_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace svi::testing

#endif  // SVI_TESTS_TEST_UTIL_HPP_

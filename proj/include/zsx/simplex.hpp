// Copyright 2026 The zsexplore Authors.
//
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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace zsx {

struct LpSolution {
  std::vector<double> x;
  // Shadow price of each inequality row.
  std::vector<double> duals;
  double objective = 0.0;
  std::size_t pivots = 0;
};

// Dense tableau simplex for
//
//   maximize c.x  subject to  A x <= b,  x >= 0
//
// with b >= 0, so the all-slack basis is feasible and no phase one is needed.
// `a` is row-major with b.size() rows and c.size() columns. Pricing is
// Dantzig's rule, switching permanently to Bland's rule after a run of
// degenerate pivots. Throws std::runtime_error if the problem is unbounded or
// the pivot limit is hit.
LpSolution solve_lp(std::span<const double> a, std::span<const double> b,
                    std::span<const double> c);

}  // namespace zsx

// Copyright 2026 The Polyvocab Authors
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

#include "polyvocab/apportion.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polyvocab/error.h"

namespace polyvocab {

std::vector<std::int64_t> LargestRemainder(std::span<const double> weights,
                                           std::int64_t total) {
  if (weights.empty()) throw InvalidArgumentError("no weights to apportion");
  if (total < 0) throw InvalidArgumentError("negative apportionment total");
  double sum = 0.0;
  for (const double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidArgumentError("apportionment weights must be finite and >= 0");
    }
    sum += w;
  }
  if (!(sum > 0.0)) throw InvalidArgumentError("apportionment weights sum to 0");

  const std::size_t n = weights.size();
  std::vector<std::int64_t> shares(n);
  std::vector<double> remainders(n);
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double exact = static_cast<double>(total) * (weights[i] / sum);
    // Snap values within rounding noise of an integer so that exact
    // proportions such as 99 * 2/3 do not lose a unit to floating error.
    const double nearest = std::round(exact);
    const double quota =
        std::abs(exact - nearest) < 1e-9 * std::max(1.0, exact) ? nearest : exact;
    shares[i] = static_cast<std::int64_t>(std::floor(quota));
    remainders[i] = quota - static_cast<double>(shares[i]);
    assigned += shares[i];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainders[a] > remainders[b];
  });
  std::int64_t left = total - assigned;
  for (std::size_t k = 0; left > 0; k = (k + 1) % n, --left) {
    ++shares[order[k]];
  }
  return shares;
}

}  // namespace polyvocab

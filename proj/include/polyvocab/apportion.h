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

#ifndef POLYVOCAB_APPORTION_H_
#define POLYVOCAB_APPORTION_H_

#include <cstdint>
#include <span>
#include <vector>

namespace polyvocab {

// Largest-remainder (Hamilton) apportionment of |total| units in proportion
// to |weights|. The result sums to |total| exactly. Equal remainders go to
// the lower index, so callers control tie-breaking through element order.
// Weights must be nonnegative with a positive sum.
std::vector<std::int64_t> LargestRemainder(std::span<const double> weights,
                                           std::int64_t total);

}  // namespace polyvocab

#endif  // POLYVOCAB_APPORTION_H_

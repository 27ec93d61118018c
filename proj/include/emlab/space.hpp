// Copyright 2026 The emlab developers
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

#include <string>
#include <vector>

#include "emlab/errors.hpp"

namespace emlab {

struct Factor {
  std::string label;
  int dim = 0;
  bool operator==(const Factor&) const = default;
};

/// An ordered list of labelled tensor factors. Flat indices use the
/// convention that the first factor varies slowest: for factors of dimension
/// (d0, d1, ...), index = ((i0 * d1 + i1) * d2 + i2) * ...
class FactoredSpace {
 public:
  FactoredSpace() = default;
  explicit FactoredSpace(std::vector<Factor> factors);

  int total_dim() const { return total_dim_; }
  int factor_count() const { return static_cast<int>(factors_.size()); }
  const std::vector<Factor>& factors() const { return factors_; }
  const Factor& factor(int i) const { return factors_.at(i); }

  bool has(const std::string& label) const;
  /// Position of a factor; unknown label throws ValidationError.
  int index_of(const std::string& label) const;
  std::vector<int> dims() const;
  std::vector<std::string> labels() const;

  bool operator==(const FactoredSpace&) const = default;

 private:
  std::vector<Factor> factors_;
  int total_dim_ = 1;
};

/// Two-sided partition of a space's factor labels.
struct BipartiteCut {
  std::vector<std::string> side_a;
  std::vector<std::string> side_b;
};

/// Throws ValidationError unless side_a and side_b are nonempty, disjoint,
/// and together cover exactly the factors of `space`.
void validate_cut(const FactoredSpace& space, const BipartiteCut& cut);

/// Strides for the slowest-first flattening convention.
std::vector<long> strides_of(const std::vector<int>& dims);

/// Append `suffix` to every factor label.
FactoredSpace relabeled(const FactoredSpace& space, const std::string& suffix);

/// Concatenate factor lists; duplicate labels throw ValidationError.
FactoredSpace concat(const FactoredSpace& a, const FactoredSpace& b);

}  // namespace emlab

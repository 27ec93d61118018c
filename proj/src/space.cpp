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

#include "emlab/space.hpp"

#include <algorithm>
#include <set>

namespace emlab {

FactoredSpace::FactoredSpace(std::vector<Factor> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) {
    throw ValidationError("FactoredSpace: at least one factor required");
  }
  std::set<std::string> seen;
  total_dim_ = 1;
  for (const auto& f : factors_) {
    if (f.dim < 1) {
      throw ValidationError("FactoredSpace: factor '" + f.label +
                            "' has dimension < 1");
    }
    if (!seen.insert(f.label).second) {
      throw ValidationError("FactoredSpace: duplicate label '" + f.label +
                            "'");
    }
    total_dim_ *= f.dim;
  }
}

bool FactoredSpace::has(const std::string& label) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const Factor& f) { return f.label == label; });
}

int FactoredSpace::index_of(const std::string& label) const {
  for (int i = 0; i < factor_count(); ++i) {
    if (factors_[i].label == label) return i;
  }
  throw ValidationError("FactoredSpace: unknown factor label '" + label +
                        "'");
}

std::vector<int> FactoredSpace::dims() const {
  std::vector<int> d(factors_.size());
  for (size_t i = 0; i < factors_.size(); ++i) d[i] = factors_[i].dim;
  return d;
}

std::vector<std::string> FactoredSpace::labels() const {
  std::vector<std::string> l(factors_.size());
  for (size_t i = 0; i < factors_.size(); ++i) l[i] = factors_[i].label;
  return l;
}

void validate_cut(const FactoredSpace& space, const BipartiteCut& cut) {
  if (cut.side_a.empty() || cut.side_b.empty()) {
    throw ValidationError("BipartiteCut: both sides must be nonempty");
  }
  std::set<std::string> seen;
  for (const auto& l : cut.side_a) {
    space.index_of(l);
    if (!seen.insert(l).second) {
      throw ValidationError("BipartiteCut: label '" + l +
                            "' appears more than once");
    }
  }
  for (const auto& l : cut.side_b) {
    space.index_of(l);
    if (!seen.insert(l).second) {
      throw ValidationError("BipartiteCut: label '" + l +
                            "' appears more than once");
    }
  }
  if (static_cast<int>(seen.size()) != space.factor_count()) {
    throw ValidationError("BipartiteCut: sides do not cover all factors");
  }
}

std::vector<long> strides_of(const std::vector<int>& dims) {
  std::vector<long> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) {
    s[i] = s[i + 1] * dims[i + 1];
  }
  return s;
}

FactoredSpace relabeled(const FactoredSpace& space, const std::string& suffix) {
  std::vector<Factor> fs = space.factors();
  for (auto& f : fs) f.label += suffix;
  return FactoredSpace(std::move(fs));
}

FactoredSpace concat(const FactoredSpace& a, const FactoredSpace& b) {
  std::vector<Factor> fs = a.factors();
  fs.insert(fs.end(), b.factors().begin(), b.factors().end());
  return FactoredSpace(std::move(fs));
}

}  // namespace emlab

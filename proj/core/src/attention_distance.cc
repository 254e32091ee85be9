// Copyright 2026 The attdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "attdist/attention_distance.h"

#include <cmath>

#include "attdist/error.h"

namespace attdist {

DistanceMap attention_distances(const DistanceMap& physical,
                                const BlockScoreTable& scores,
                                const AttentionConfig& config) {
  if (physical.kind != MetricKind::kPhysical) {
    throw PreconditionError(
        "attention_distances: input must be a physical distance map");
  }
  if (!std::isfinite(config.scale) || config.scale <= 1.0) {
    throw PreconditionError("attention_distances: scale must be > 1");
  }
  const Rational scale = from_double(config.scale);

  DistanceMap out;
  out.kind = MetricKind::kAttention;
  for (const auto& [ref, distance] : physical.values) {
    auto it = scores.normalized.find(ref);
    if (it == scores.normalized.end()) {
      throw ValidationError("missing attention score for block " +
                            to_string(ref));
    }
    out.values.emplace(ref, distance * (scale - from_double(it->second)));
  }
  return out;
}

}  // namespace attdist

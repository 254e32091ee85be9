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

#ifndef ATTDIST_ATTENTION_DISTANCE_H_
#define ATTDIST_ATTENTION_DISTANCE_H_

#include "attdist/attention_scoring.h"
#include "attdist/physical_distance.h"

namespace attdist {

struct AttentionConfig {
  // Must exceed 1 so that (scale - w) stays positive for w in [0, 1].
  double scale = 1.5;
};

// d_att(m) = d_phys(m) * (scale - w(m)), computed exactly. Undefined blocks
// stay undefined. Throws PreconditionError for a non-physical input or
// scale <= 1, and ValidationError when a block with a physical distance has
// no normalized score.
DistanceMap attention_distances(const DistanceMap& physical,
                                const BlockScoreTable& scores,
                                const AttentionConfig& config = {});

}  // namespace attdist

#endif  // ATTDIST_ATTENTION_DISTANCE_H_

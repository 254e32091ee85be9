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

#ifndef ATTDIST_DISTRIBUTION_H_
#define ATTDIST_DISTRIBUTION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "attdist/distance_io.h"
#include "attdist/physical_distance.h"
#include "attdist/rational.h"

namespace attdist {

// Values are compared at two-decimal resolution, the way a fuzzer reading
// the distance file sees them. Shares are percentages rounded to two
// decimals and kept as integer hundredths so that sums are exact.
struct ValueShare {
  std::int64_t value_hundredths = 0;
  std::size_t count = 0;
  std::int64_t share_hundredths = 0;

  double value() const { return static_cast<double>(value_hundredths) / 100; }
  double share() const { return static_cast<double>(share_hundredths) / 100; }
};

struct HistogramBucket {
  double lower = 0.0;
  std::size_t count = 0;
};

struct DistributionReport {
  std::size_t total = 0;
  std::size_t unique = 0;
  double mode_value = 0.0;
  std::vector<ValueShare> top_shares;  // up to 3, by count desc then value asc
  std::int64_t top1_3_share_hundredths = 0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double iqr = 0.0;
  double bucket_width = 1.0;
  std::vector<HistogramBucket> histogram;
  std::vector<ValueShare> frequencies;  // every distinct value, ascending

  double top1_3_share() const {
    return static_cast<double>(top1_3_share_hundredths) / 100;
  }
};

struct ComparisonReport {
  DistributionReport physical;
  DistributionReport attention;
  std::int64_t delta_unique = 0;  // attention - physical
  double delta_iqr = 0.0;         // attention - physical
  std::size_t equal_physical_pairs = 0;
  std::size_t separated_pairs = 0;
  double collision_resolution = 0.0;  // separated / equal, 0 if none
};

// Throws PreconditionError on empty input.
DistributionReport analyze(std::span<const Rational> values);
DistributionReport analyze(const DistanceMap& distances);
DistributionReport analyze(const std::vector<DistanceRow>& rows);

// Collision resolution counts unordered pairs of blocks whose physical
// distances are equal and > 0, and the fraction of those pairs the
// attention metric tells apart. Throws ValidationError when the two maps do
// not cover the same keys.
ComparisonReport compare(const DistanceMap& physical,
                         const DistanceMap& attention);
ComparisonReport compare(const std::vector<DistanceRow>& physical,
                         const std::vector<DistanceRow>& attention);

// Linear interpolation between closest ranks over sorted data: position
// (n - 1) * p. Exposed for tests.
double interpolated_quantile(std::span<const double> sorted, double p);

std::string report_table(const DistributionReport& report);
std::string report_json(const DistributionReport& report);
std::string comparison_table(const ComparisonReport& report);
std::string comparison_json(const ComparisonReport& report);
// "metric,value,count,share" rows for both metrics, ascending value.
std::string frequency_csv(const ComparisonReport& report);

}  // namespace attdist

#endif  // ATTDIST_DISTRIBUTION_H_

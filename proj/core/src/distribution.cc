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

#include "attdist/distribution.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "attdist/error.h"
#include "json.hpp"

namespace attdist {
namespace {

using json = nlohmann::json;

std::int64_t share_hundredths(std::size_t count, std::size_t total) {
  // round(100 * count / total, 2), half up, in integer arithmetic
  auto num = static_cast<std::int64_t>(count) * 10000;
  auto den = static_cast<std::int64_t>(total);
  return (2 * num + den) / (2 * den);
}

std::string fixed2(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

json shares_json(const std::vector<ValueShare>& shares) {
  json out = json::array();
  for (const auto& s : shares) {
    out.push_back({{"value", s.value()}, {"count", s.count},
                   {"share", s.share()}});
  }
  return out;
}

json report_to_json(const DistributionReport& r) {
  json hist = json::array();
  for (const auto& b : r.histogram) {
    hist.push_back({{"lower", b.lower}, {"count", b.count}});
  }
  return {{"total", r.total},
          {"unique", r.unique},
          {"mode_value", r.mode_value},
          {"top_shares", shares_json(r.top_shares)},
          {"top1_3_share", r.top1_3_share()},
          {"quartiles", {r.q1, r.median, r.q3}},
          {"iqr", r.iqr},
          {"bucket_width", r.bucket_width},
          {"histogram", hist}};
}

json comparison_to_json(const ComparisonReport& r) {
  return {{"physical", report_to_json(r.physical)},
          {"attention", report_to_json(r.attention)},
          {"delta_unique", r.delta_unique},
          {"delta_iqr", r.delta_iqr},
          {"equal_physical_pairs", r.equal_physical_pairs},
          {"separated_pairs", r.separated_pairs},
          {"collision_resolution", r.collision_resolution}};
}

std::size_t pairs(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

using Keyed = std::vector<std::pair<std::string, Rational>>;

ComparisonReport compare_keyed(Keyed physical, Keyed attention) {
  auto by_key = [](const auto& a, const auto& b) { return a.first < b.first; };
  std::stable_sort(physical.begin(), physical.end(), by_key);
  std::stable_sort(attention.begin(), attention.end(), by_key);
  if (physical.size() != attention.size()) {
    throw ValidationError("compare: maps cover different block sets (" +
                          std::to_string(physical.size()) + " vs " +
                          std::to_string(attention.size()) + " entries)");
  }
  std::vector<Rational> phys_values;
  std::vector<Rational> att_values;
  // physical bucket (hundredths) -> attention bucket -> count
  std::map<std::int64_t, std::map<std::int64_t, std::size_t>> groups;
  for (std::size_t i = 0; i < physical.size(); ++i) {
    if (physical[i].first != attention[i].first) {
      throw ValidationError("compare: block key '" + physical[i].first +
                            "' has no counterpart (found '" +
                            attention[i].first + "')");
    }
    phys_values.push_back(physical[i].second);
    att_values.push_back(attention[i].second);
    auto p = hundredths(physical[i].second).convert_to<std::int64_t>();
    auto a = hundredths(attention[i].second).convert_to<std::int64_t>();
    if (p > 0) ++groups[p][a];
  }

  ComparisonReport report;
  report.physical = analyze(phys_values);
  report.attention = analyze(att_values);
  report.delta_unique = static_cast<std::int64_t>(report.attention.unique) -
                        static_cast<std::int64_t>(report.physical.unique);
  report.delta_iqr = report.attention.iqr - report.physical.iqr;
  for (const auto& [p, split] : groups) {
    std::size_t n = 0;
    std::size_t same = 0;
    for (const auto& [a, count] : split) {
      n += count;
      same += pairs(count);
    }
    report.equal_physical_pairs += pairs(n);
    report.separated_pairs += pairs(n) - same;
  }
  if (report.equal_physical_pairs > 0) {
    report.collision_resolution =
        static_cast<double>(report.separated_pairs) /
        static_cast<double>(report.equal_physical_pairs);
  }
  return report;
}

}  // namespace

double interpolated_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) return 0.0;
  double pos = p * static_cast<double>(sorted.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

DistributionReport analyze(std::span<const Rational> values) {
  if (values.empty()) {
    throw PreconditionError("analyze: no defined distances");
  }
  std::map<std::int64_t, std::size_t> counts;
  std::vector<double> sorted;
  sorted.reserve(values.size());
  for (const auto& v : values) {
    auto h = hundredths(v).convert_to<std::int64_t>();
    ++counts[h];
    sorted.push_back(static_cast<double>(h) / 100);
  }
  std::sort(sorted.begin(), sorted.end());

  DistributionReport r;
  r.total = values.size();
  r.unique = counts.size();
  for (const auto& [h, count] : counts) {
    r.frequencies.push_back({h, count, share_hundredths(count, r.total)});
  }
  std::vector<ValueShare> ranked = r.frequencies;
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const ValueShare& a, const ValueShare& b) {
                     return a.count > b.count;  // ties stay value-ascending
                   });
  ranked.resize(std::min<std::size_t>(3, ranked.size()));
  r.top_shares = ranked;
  r.mode_value = ranked.front().value();
  for (const auto& s : ranked) r.top1_3_share_hundredths += s.share_hundredths;

  r.q1 = interpolated_quantile(sorted, 0.25);
  r.median = interpolated_quantile(sorted, 0.5);
  r.q3 = interpolated_quantile(sorted, 0.75);
  r.iqr = std::max(0.0, r.q3 - r.q1);

  double lo = sorted.front();
  double range = sorted.back() - lo;
  r.bucket_width = std::max(1.0, range / 20.0);
  std::size_t buckets =
      std::max<std::size_t>(1, static_cast<std::size_t>(
                                   std::ceil(range / r.bucket_width - 1e-12)));
  r.histogram.resize(buckets);
  for (std::size_t i = 0; i < buckets; ++i) {
    r.histogram[i].lower = lo + static_cast<double>(i) * r.bucket_width;
  }
  for (double v : sorted) {
    auto idx = static_cast<std::size_t>(std::floor((v - lo) / r.bucket_width));
    ++r.histogram[std::min(idx, buckets - 1)].count;
  }
  return r;
}

DistributionReport analyze(const DistanceMap& distances) {
  std::vector<Rational> values;
  values.reserve(distances.values.size());
  for (const auto& [ref, v] : distances.values) values.push_back(v);
  return analyze(values);
}

DistributionReport analyze(const std::vector<DistanceRow>& rows) {
  std::vector<Rational> values;
  values.reserve(rows.size());
  for (const auto& row : rows) values.push_back(row.value);
  return analyze(values);
}

ComparisonReport compare(const DistanceMap& physical,
                         const DistanceMap& attention) {
  Keyed p;
  Keyed a;
  for (const auto& [ref, v] : physical.values) p.emplace_back(to_string(ref), v);
  for (const auto& [ref, v] : attention.values) a.emplace_back(to_string(ref), v);
  return compare_keyed(std::move(p), std::move(a));
}

ComparisonReport compare(const std::vector<DistanceRow>& physical,
                         const std::vector<DistanceRow>& attention) {
  Keyed p;
  Keyed a;
  for (const auto& row : physical) p.emplace_back(row.key, row.value);
  for (const auto& row : attention) a.emplace_back(row.key, row.value);
  return compare_keyed(std::move(p), std::move(a));
}

std::string report_table(const DistributionReport& r) {
  std::string out;
  out += "total distances   " + std::to_string(r.total) + "\n";
  out += "unique distances  " + std::to_string(r.unique) + "\n";
  out += "mode              " + fixed2(r.mode_value) + "\n";
  const char* labels[] = {"top-1", "top-2", "top-3"};
  for (std::size_t i = 0; i < r.top_shares.size(); ++i) {
    const auto& s = r.top_shares[i];
    out += std::string(labels[i]) + "             " + fixed2(s.share()) +
           "%  (value " + fixed2(s.value()) + ", " + std::to_string(s.count) +
           ")\n";
  }
  out += "top 1-3           " + fixed2(r.top1_3_share()) + "%\n";
  out += "quartiles         " + fixed2(r.q1) + " / " + fixed2(r.median) +
         " / " + fixed2(r.q3) + "\n";
  out += "iqr               " + fixed2(r.iqr) + "\n";
  out += "histogram (width " + fixed2(r.bucket_width) + ")\n";
  for (const auto& b : r.histogram) {
    out += "  " + fixed2(b.lower) + "  " + std::to_string(b.count) + "\n";
  }
  return out;
}

std::string report_json(const DistributionReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

std::string comparison_table(const ComparisonReport& r) {
  std::string out = "== physical\n" + report_table(r.physical) +
                    "== attention\n" + report_table(r.attention);
  out += "== comparison\n";
  out += "delta unique          " + std::to_string(r.delta_unique) + "\n";
  out += "delta iqr             " + fixed2(r.delta_iqr) + "\n";
  out += "equal-physical pairs  " + std::to_string(r.equal_physical_pairs) +
         "\n";
  out += "separated pairs       " + std::to_string(r.separated_pairs) + "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", r.collision_resolution);
  out += "collision resolution  " + std::string(buf) + "\n";
  return out;
}

std::string comparison_json(const ComparisonReport& report) {
  return comparison_to_json(report).dump(2) + "\n";
}

std::string frequency_csv(const ComparisonReport& report) {
  std::string out = "metric,value,count,share\n";
  auto emit = [&out](const char* metric, const DistributionReport& r) {
    for (const auto& s : r.frequencies) {
      out += std::string(metric) + "," + fixed2(s.value()) + "," +
             std::to_string(s.count) + "," + fixed2(s.share()) + "\n";
    }
  };
  emit("physical", report.physical);
  emit("attention", report.attention);
  return out;
}

}  // namespace attdist

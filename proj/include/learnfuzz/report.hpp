// Copyright 2026 The learnfuzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEARNFUZZ_REPORT_HPP_
#define LEARNFUZZ_REPORT_HPP_

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "learnfuzz/campaign.hpp"
#include "learnfuzz/error.hpp"

namespace learnfuzz::campaign {

/// Rendered report contents, one string per output file.
struct Report {
  std::string summary_json;
  std::string table;
  std::string matrix;
  std::string crashes;
};

namespace detail {

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string pad(std::string s, std::size_t width, bool left = true) {
  if (s.size() >= width) return s;
  const std::string fill(width - s.size(), ' ');
  return left ? s + fill : fill + s;
}

inline std::string render_matrix(std::span<const CampaignResult> results,
                                 const std::vector<std::vector<std::size_t>>& m) {
  std::size_t w = 8;
  for (const auto& r : results) w = std::max(w, r.name.size() + 2);
  std::string out = pad("", w);
  for (const auto& r : results) out += pad(r.name, w, false);
  out += '\n';
  for (std::size_t i = 0; i < results.size(); ++i) {
    out += pad(results[i].name, w);
    for (std::size_t j = 0; j < results.size(); ++j) {
      out += pad(std::to_string(m[i][j]), w, false);
    }
    out += '\n';
  }
  return out;
}

}  // namespace detail

/// Renders the four report files. Deterministic for identical results.
inline Report render_report(std::span<const CampaignResult> results) {
  if (results.empty()) throw Error(Errc::invalid_config, "no campaign results to report");
  const auto m = overlap_matrix(results);
  Report rep;

  nlohmann::ordered_json j;
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json e;
    e["name"] = r.name;
    e["generator"] = r.generator;
    e["epoch"] = r.epoch ? nlohmann::ordered_json(*r.epoch) : nlohmann::ordered_json();
    e["mutated"] = r.mutated;
    e["hosts"] = r.hosts;
    e["inputs"] = r.inputs.size();
    e["tests"] = r.records.size();
    e["passes"] = r.passes();
    e["pass_rate"] = r.pass_rate;
    e["coverage"] = r.coverage.size();
    nlohmann::ordered_json by_host;
    for (int h : r.hosts) by_host["host" + std::to_string(h)] = r.host_coverage(h).size();
    e["coverage_by_host"] = by_host;
    std::map<std::string, std::size_t> errors;
    for (const auto& t : r.records) {
      if (!t.pass) ++errors[t.error_code];
    }
    e["errors"] = errors;
    e["crashes"] = r.crashes.size();
    j["results"].push_back(e);
  }
  nlohmann::ordered_json ov;
  ov["names"] = nlohmann::ordered_json::array();
  for (const auto& r : results) ov["names"].push_back(r.name);
  ov["matrix"] = m;
  j["overlap"] = ov;
  rep.summary_json = j.dump(2) + "\n";

  std::size_t w = 12;
  for (const auto& r : results) w = std::max(w, r.name.size() + 2);

  // Pass rate per epoch and mode, for unmutated model campaigns.
  std::vector<int> epochs;
  std::vector<std::string> modes;
  for (const auto& r : results) {
    if (!r.epoch || r.mutated) continue;
    if (std::find(epochs.begin(), epochs.end(), *r.epoch) == epochs.end())
      epochs.push_back(*r.epoch);
    if (std::find(modes.begin(), modes.end(), r.generator) == modes.end())
      modes.push_back(r.generator);
  }
  std::sort(epochs.begin(), epochs.end());
  std::string& t = rep.table;
  if (!epochs.empty()) {
    t += "pass rate (%) by epoch\n";
    t += detail::pad("mode", w);
    for (int e : epochs) t += detail::pad(std::to_string(e), 9, false);
    t += '\n';
    for (const auto& mode : modes) {
      t += detail::pad(mode, w);
      for (int e : epochs) {
        std::string cell = "-";
        for (const auto& r : results) {
          if (!r.mutated && r.epoch == e && r.generator == mode)
            cell = detail::fixed(100.0 * r.pass_rate, 1);
        }
        t += detail::pad(cell, 9, false);
      }
      t += '\n';
    }
    t += '\n';
  }

  t += "coverage by host\n";
  t += detail::pad("campaign", w);
  for (const char* h : {"host1", "host2", "host3", "host123"}) t += detail::pad(h, 9, false);
  t += '\n';
  for (const auto& r : results) {
    t += detail::pad(r.name, w);
    for (int h = 1; h <= 3; ++h) {
      const bool used = std::find(r.hosts.begin(), r.hosts.end(), h) != r.hosts.end();
      t += detail::pad(used ? std::to_string(r.host_coverage(h).size()) : "-", 9, false);
    }
    t += detail::pad(std::to_string(r.coverage.size()), 9, false);
    t += '\n';
  }
  t += '\n';

  t += "campaigns by increasing coverage\n";
  t += detail::pad("campaign", w) + detail::pad("coverage", 10, false) +
       detail::pad("pass %", 9, false) + detail::pad("crashes", 9, false) + '\n';
  std::vector<std::size_t> order(results.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return results[a].coverage.size() < results[b].coverage.size();
  });
  for (std::size_t i : order) {
    const auto& r = results[i];
    t += detail::pad(r.name, w) + detail::pad(std::to_string(r.coverage.size()), 10, false) +
         detail::pad(detail::fixed(100.0 * r.pass_rate, 1), 9, false) +
         detail::pad(std::to_string(r.crashes.size()), 9, false) + '\n';
  }
  t += '\n';
  t += "unique coverage (row minus column)\n";
  rep.matrix = detail::render_matrix(results, m);
  t += rep.matrix;

  for (const auto& r : results) {
    for (const auto& c : r.crashes) {
      rep.crashes += r.name + " test " + std::to_string(c.test_id) + ": " + c.diagnostic + "\n";
    }
  }
  return rep;
}

/// Writes summary.json, table.txt, matrix.txt and crashes.log into `dir`.
inline Report write_report(std::span<const CampaignResult> results,
                           const std::filesystem::path& dir) {
  Report rep = render_report(results);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::io, "cannot create " + dir.string() + ": " + ec.message());
  auto put = [&](const char* name, const std::string& body) {
    std::ofstream out(dir / name, std::ios::binary);
    out << body;
    if (!out) throw Error(Errc::io, "cannot write " + (dir / name).string());
  };
  put("summary.json", rep.summary_json);
  put("table.txt", rep.table);
  put("matrix.txt", rep.matrix);
  put("crashes.log", rep.crashes);
  return rep;
}

}  // namespace learnfuzz::campaign

#endif  // LEARNFUZZ_REPORT_HPP_

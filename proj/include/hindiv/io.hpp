// Copyright 2026 The hindiv Authors
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

// File formats: JSON schema files, CSV edge lists, JSON-lines reports and
// CSV summaries, plus the textual meta path syntax
//   users -consumed-> songs -tagged^T-> ...

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hindiv/hin.hpp"
#include "hindiv/netdiv.hpp"
#include "hindiv/sweep.hpp"
#include "hindiv/walk.hpp"

namespace hindiv {

/// Vertex names per vertex type, in interning order (index = VertexIndex).
class NetworkNames {
 public:
  NetworkNames() = default;
  explicit NetworkNames(std::size_t type_count) : names_(type_count), lookup_(type_count) {}

  /// Index of `name` in `type`, interning it when new.
  VertexIndex intern(VertexTypeId type, std::string_view name);
  std::optional<VertexIndex> find(VertexTypeId type, std::string_view name) const;
  const std::string& name(VertexId v) const;
  std::size_t size(VertexTypeId type) const { return names_.at(type.value).size(); }
  const std::vector<std::string>& names(VertexTypeId type) const { return names_.at(type.value); }

 private:
  std::vector<std::vector<std::string>> names_;
  std::vector<std::unordered_map<std::string, VertexIndex>> lookup_;
};

struct Network {
  Hin hin;
  NetworkNames names;
};

/// Parses a schema document and edge lists given as text. `edge_sources`
/// label the lists in error messages. Sinks are appended when `augment`.
Network parse_network(std::string_view schema_json, std::span<const std::string> edge_csvs,
                      std::span<const std::string> edge_sources, bool augment = true);

/// Throws IoError for unreadable files, ParseError / ValidationError with a
/// file and line locator otherwise.
Network load_network(const std::filesystem::path& schema_path,
                     std::span<const std::filesystem::path> edge_paths, bool augment = true);

/// Writes the non-sink part of `net`. The schema lists every vertex so that
/// reloading reproduces the interning order.
void write_network(const Network& net, const std::filesystem::path& schema_path,
                   const std::filesystem::path& edge_path);
std::string schema_json(const Network& net);
std::string edge_csv(const Network& net);

/// Parses `TYPE -edge-> TYPE -edge^T-> TYPE`. Whitespace between tokens is
/// optional. Errors carry the character offset in column().
MetaPath parse_metapath_expr(const Hin& h, std::string_view expr);
std::string format_metapath(const Hin& h, const MetaPath& path);

/// Name-level form of a DiversityReport, one JSON object per line.
struct ReportRecord {
  std::string kind;
  std::string metapath;  // "a || b" for relative collective reports
  std::string alpha;     // "0", "1", "2", "inf" or a decimal
  std::optional<std::string> conditioning;
  std::string start;  // "a || b" for relative collective reports
  std::optional<std::string> semantics;
  double value = 0.0;
  double sink_mass = 0.0;

  friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

ReportRecord to_record(const DiversityReport& report, const Network& net);
std::vector<ReportRecord> to_records(std::span<const DiversityReport> reports, const Network& net);

std::string to_json_line(const ReportRecord& r);
ReportRecord parse_json_line(std::string_view line);

void write_reports_jsonl(std::span<const ReportRecord> records, std::ostream& out);
void write_reports_csv(std::span<const ReportRecord> records, std::ostream& out);
/// Blank lines are skipped; ParseError carries the line number.
std::vector<ReportRecord> read_reports_jsonl(std::istream& in);

/// CSV `bin_low,bin_high,count`.
void write_histogram(std::span<const HistogramBin> bins, std::ostream& out);
/// CSV `volume_low,volume_high,count,mean,p05,p30,p70,p95`.
void write_volume_curve(std::span<const CurvePoint> curve, std::ostream& out);

/// Fixed 12-significant-digit rendering used by every text output.
std::string format_number(double x);

/// Start specification files: one vertex name per line (subset), or CSV
/// `vertex,weight` with an optional header (distribution).
std::vector<VertexIndex> read_vertex_subset(const std::filesystem::path& path,
                                            const NetworkNames& names, VertexTypeId type);
std::vector<double> read_start_weights(const std::filesystem::path& path, const Hin& h,
                                       const NetworkNames& names, VertexTypeId type);

/// Reads the whole file; IoError naming the path on failure.
std::string read_file(const std::filesystem::path& path);
/// IoError naming the path on failure.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace hindiv

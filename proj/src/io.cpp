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

#include "hindiv/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "hindiv/errors.hpp"

namespace hindiv {

namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

std::string locate(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line) + ": ";
}

// One CSV record. Fields may be quoted with "" as an escaped quote.
std::vector<std::string> split_csv(std::string_view line, std::string_view source,
                                   std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && trim(field).empty()) {
      field.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? field : std::string(trim(field)));
      field.clear();
      was_quoted = false;
    } else {
      field += c;
    }
  }
  if (quoted) {
    throw ParseError(locate(source, line_no) + "unterminated quoted field", line_no, line.size());
  }
  fields.push_back(was_quoted ? field : std::string(trim(field)));
  return fields;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    pos = end + 1;
  }
  return out;
}

const Json& require(const Json& obj, const char* key, std::string_view where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ValidationError(std::string(where) + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

std::string require_string(const Json& obj, const char* key, std::string_view where) {
  const Json& v = require(obj, key, where);
  if (!v.is_string()) {
    throw ValidationError(std::string(where) + ": field '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

double parse_double(std::string_view text, std::string_view what) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// NetworkNames

VertexIndex NetworkNames::intern(VertexTypeId type, std::string_view name) {
  auto& lookup = lookup_.at(type.value);
  const auto it = lookup.find(std::string(name));
  if (it != lookup.end()) return it->second;
  auto& names = names_[type.value];
  const auto index = static_cast<VertexIndex>(names.size());
  names.emplace_back(name);
  lookup.emplace(std::string(name), index);
  return index;
}

std::optional<VertexIndex> NetworkNames::find(VertexTypeId type, std::string_view name) const {
  const auto& lookup = lookup_.at(type.value);
  const auto it = lookup.find(std::string(name));
  if (it == lookup.end()) return std::nullopt;
  return it->second;
}

const std::string& NetworkNames::name(VertexId v) const {
  return names_.at(v.type.value).at(v.index);
}

// ---------------------------------------------------------------------------
// Loading

Network parse_network(std::string_view schema_text, std::span<const std::string> edge_csvs,
                      std::span<const std::string> edge_sources, bool augment) {
  Json doc;
  try {
    doc = Json::parse(schema_text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("schema: ") + e.what(), 0, e.byte);
  }
  const Json& vtypes = require(doc, "vertex_types", "schema");
  const Json& etypes = require(doc, "edge_types", "schema");
  if (!vtypes.is_array() || !etypes.is_array()) {
    throw ValidationError("schema: 'vertex_types' and 'edge_types' must be arrays");
  }

  std::vector<VertexTypeDecl> vdecls;
  std::unordered_map<std::string, VertexTypeId> vindex;
  for (std::size_t i = 0; i < vtypes.size(); ++i) {
    const std::string where = "schema: vertex_types[" + std::to_string(i) + "]";
    std::string name = require_string(vtypes[i], "name", where);
    if (!vindex.emplace(name, VertexTypeId{static_cast<std::uint32_t>(i)}).second) {
      throw ValidationError(where + ": duplicate vertex type '" + name + "'");
    }
    vdecls.push_back({std::move(name), 0});
  }
  std::vector<EdgeTypeDecl> edecls;
  std::unordered_map<std::string, EdgeTypeId> eindex;
  for (std::size_t i = 0; i < etypes.size(); ++i) {
    const std::string where = "schema: edge_types[" + std::to_string(i) + "]";
    std::string name = require_string(etypes[i], "name", where);
    const auto endpoint = [&](const char* key) {
      const std::string t = require_string(etypes[i], key, where);
      const auto it = vindex.find(t);
      if (it == vindex.end()) {
        throw ValidationError(where + ": unknown vertex type '" + t + "' in '" + key + "'");
      }
      return it->second;
    };
    const VertexTypeId src = endpoint("src");
    const VertexTypeId dst = endpoint("dst");
    const EdgeTypeId id{static_cast<std::uint32_t>(i)};
    if (!eindex.emplace(name, id).second) {
      throw ValidationError(where + ": duplicate edge type '" + name + "'");
    }
    edecls.push_back({id, std::move(name), src, dst});
  }

  Network net{Hin{}, NetworkNames(vdecls.size())};
  for (std::size_t i = 0; i < vtypes.size(); ++i) {
    if (!vtypes[i].contains("vertices")) continue;
    const std::string where = "schema: vertex_types[" + std::to_string(i) + "]";
    const Json& list = vtypes[i].at("vertices");
    if (!list.is_array()) throw ValidationError(where + ": 'vertices' must be an array");
    const VertexTypeId t{static_cast<std::uint32_t>(i)};
    for (const auto& v : list) {
      if (!v.is_string()) throw ValidationError(where + ": vertex names must be strings");
      const auto name = v.get<std::string>();
      if (name == kSinkName) throw ValidationError(where + ": vertex name is reserved for sinks");
      if (net.names.find(t, name)) {
        throw ValidationError(where + ": duplicate vertex '" + name + "'");
      }
      net.names.intern(t, name);
    }
  }

  std::vector<EdgeRecord> records;
  for (std::size_t f = 0; f < edge_csvs.size(); ++f) {
    const std::string source = f < edge_sources.size() ? edge_sources[f] : "edges";
    const auto lines = lines_of(edge_csvs[f]);
    bool header_seen = false;
    bool has_multiplicity = false;
    for (std::size_t l = 0; l < lines.size(); ++l) {
      const std::size_t line_no = l + 1;
      if (trim(lines[l]).empty()) continue;
      const auto fields = split_csv(lines[l], source, line_no);
      if (!header_seen) {
        const bool three = fields.size() == 3 && fields[0] == "edge_type" && fields[1] == "src" &&
                           fields[2] == "dst";
        const bool four = fields.size() == 4 && fields[0] == "edge_type" && fields[1] == "src" &&
                          fields[2] == "dst" && fields[3] == "multiplicity";
        if (!three && !four) {
          throw ParseError(locate(source, line_no) +
                               "expected header 'edge_type,src,dst[,multiplicity]'",
                           line_no, 1);
        }
        header_seen = true;
        has_multiplicity = four;
        continue;
      }
      const std::size_t expected = has_multiplicity ? 4 : 3;
      if (fields.size() != expected) {
        throw ParseError(locate(source, line_no) + "expected " + std::to_string(expected) +
                             " fields, found " + std::to_string(fields.size()),
                         line_no, 1);
      }
      const auto et = eindex.find(fields[0]);
      if (et == eindex.end()) {
        throw ValidationError(locate(source, line_no) + "unknown edge type '" + fields[0] + "'");
      }
      const EdgeTypeDecl& decl = edecls[et->second.value];
      for (std::size_t k = 1; k <= 2; ++k) {
        if (fields[k].empty()) {
          throw ValidationError(locate(source, line_no) + "empty vertex name");
        }
        if (fields[k] == kSinkName) {
          throw ValidationError(locate(source, line_no) + "vertex name is reserved for sinks");
        }
      }
      std::uint64_t mult = 1;
      if (has_multiplicity && !fields[3].empty()) {
        const std::string& m = fields[3];
        const auto [ptr, ec] = std::from_chars(m.data(), m.data() + m.size(), mult);
        if (ec != std::errc{} || ptr != m.data() + m.size()) {
          throw ParseError(locate(source, line_no) + "multiplicity '" + m +
                               "' is not a non-negative integer",
                           line_no, 1);
        }
        if (mult == 0) {
          throw ValidationError(locate(source, line_no) + "multiplicity must be positive in row '" +
                                std::string(lines[l]) + "'");
        }
      }
      const VertexIndex s = net.names.intern(decl.src, fields[1]);
      const VertexIndex d = net.names.intern(decl.dst, fields[2]);
      records.push_back({decl.id, {decl.src, s}, {decl.dst, d}, mult});
    }
    if (!header_seen) {
      throw ParseError(source + ": missing header 'edge_type,src,dst[,multiplicity]'", 1, 1);
    }
  }

  for (std::size_t i = 0; i < vdecls.size(); ++i) {
    vdecls[i].cardinality =
        static_cast<VertexIndex>(net.names.size(VertexTypeId{static_cast<std::uint32_t>(i)}));
  }
  net.hin = build_hin(std::move(vdecls), std::move(edecls), records);
  if (augment) {
    net.hin = add_sinks(net.hin);
    for (std::size_t i = 0; i < net.hin.vertex_type_count(); ++i) {
      net.names.intern(VertexTypeId{static_cast<std::uint32_t>(i)}, kSinkName);
    }
  }
  return net;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path.string() + "'");
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("cannot write '" + path.string() + "'");
}

Network load_network(const std::filesystem::path& schema_path,
                     std::span<const std::filesystem::path> edge_paths, bool augment) {
  const std::string schema = read_file(schema_path);
  std::vector<std::string> csvs;
  std::vector<std::string> sources;
  for (const auto& p : edge_paths) {
    csvs.push_back(read_file(p));
    sources.push_back(p.string());
  }
  return parse_network(schema, csvs, sources, augment);
}

std::string schema_json(const Network& net) {
  const Hin& h = net.hin;
  Json doc;
  doc["vertex_types"] = Json::array();
  for (std::size_t i = 0; i < h.vertex_type_count(); ++i) {
    const VertexTypeId t{static_cast<std::uint32_t>(i)};
    Json vt;
    vt["name"] = h.vertex_type(t).name;
    Json vertices = Json::array();
    for (const auto& name : net.names.names(t)) {
      if (name != kSinkName) vertices.push_back(name);
    }
    vt["vertices"] = std::move(vertices);
    doc["vertex_types"].push_back(std::move(vt));
  }
  doc["edge_types"] = Json::array();
  for (const auto& e : h.edge_types()) {
    doc["edge_types"].push_back({{"name", e.name},
                                 {"src", h.vertex_type(e.src).name},
                                 {"dst", h.vertex_type(e.dst).name}});
  }
  return doc.dump(2) + "\n";
}

std::string edge_csv(const Network& net) {
  const Hin& h = net.hin;
  std::string out = "edge_type,src,dst,multiplicity\n";
  for (const auto& r : h.records()) {
    if (h.is_sink(r.src) || h.is_sink(r.dst)) continue;
    out += csv_field(h.edge_type(r.type).name) + "," + csv_field(net.names.name(r.src)) + "," +
           csv_field(net.names.name(r.dst)) + "," + std::to_string(r.multiplicity) + "\n";
  }
  return out;
}

void write_network(const Network& net, const std::filesystem::path& schema_path,
                   const std::filesystem::path& edge_path) {
  write_file(schema_path, schema_json(net));
  write_file(edge_path, edge_csv(net));
}

// ---------------------------------------------------------------------------
// Meta path expressions

MetaPath parse_metapath_expr(const Hin& h, std::string_view expr) {
  std::size_t pos = 0;
  const auto skip_ws = [&] {
    while (pos < expr.size() && (expr[pos] == ' ' || expr[pos] == '\t' || expr[pos] == '\n' ||
                                 expr[pos] == '\r')) {
      ++pos;
    }
  };
  const auto fail = [&](const std::string& msg, std::size_t at) -> ParseError {
    return ParseError("meta path, offset " + std::to_string(at) + ": " + msg, 1, at);
  };
  struct Token {
    std::string name;
    std::size_t offset;
  };
  const auto read_type = [&]() -> Token {
    skip_ws();
    const std::size_t start = pos;
    while (pos < expr.size() && expr[pos] != '-' && expr[pos] != ' ' && expr[pos] != '\t' &&
           expr[pos] != '\n' && expr[pos] != '\r') {
      ++pos;
    }
    if (pos == start) throw fail("expected a vertex type name", start);
    return {std::string(expr.substr(start, pos - start)), start};
  };

  if (trim(expr).empty()) throw ParseError("meta path expression is empty", 1, 0);
  std::vector<Token> types{read_type()};
  std::vector<Token> edges;
  std::vector<Direction> directions;
  for (;;) {
    skip_ws();
    if (pos == expr.size()) break;
    if (expr[pos] != '-') throw fail("expected '-'", pos);
    ++pos;
    const std::size_t close = expr.find("->", pos);
    if (close == std::string_view::npos) throw fail("missing '->'", pos);
    std::string_view raw = expr.substr(pos, close - pos);
    const std::size_t lead = raw.find_first_not_of(" \t\r\n");
    const std::size_t start = pos + (lead == std::string_view::npos ? 0 : lead);
    raw = trim(raw);
    Direction dir = Direction::kForward;
    if (raw.size() >= 2 && raw.substr(raw.size() - 2) == "^T") {
      dir = Direction::kTransposed;
      raw = trim(raw.substr(0, raw.size() - 2));
    }
    if (raw.empty()) throw fail("expected an edge type name", start);
    edges.push_back({std::string(raw), start});
    directions.push_back(dir);
    pos = close + 2;
    types.push_back(read_type());
  }
  if (edges.empty()) throw fail("a meta path needs at least one step", pos);

  std::vector<MetaPathStep> steps;
  std::vector<VertexTypeId> resolved;
  for (const auto& t : types) {
    const auto id = h.find_vertex_type(t.name);
    if (!id) throw fail("unknown vertex type '" + t.name + "'", t.offset);
    resolved.push_back(*id);
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto id = h.find_edge_type(edges[i].name);
    if (!id) throw fail("unknown edge type '" + edges[i].name + "'", edges[i].offset);
    const OrientedEdge step{*id, directions[i]};
    const std::string shown = edges[i].name + (directions[i] == Direction::kTransposed ? "^T" : "");
    if (h.source_type(step) != resolved[i]) {
      throw ChainingError("meta path, offset " + std::to_string(edges[i].offset) + ": '" + shown +
                              "' starts at '" + h.vertex_type(h.source_type(step)).name +
                              "', not '" + types[i].name + "'",
                          i);
    }
    if (h.destination_type(step) != resolved[i + 1]) {
      throw ChainingError("meta path, offset " + std::to_string(types[i + 1].offset) + ": '" +
                              shown + "' ends at '" +
                              h.vertex_type(h.destination_type(step)).name + "', not '" +
                              types[i + 1].name + "'",
                          i);
    }
    steps.push_back(step);
  }
  return validate_metapath(h, std::move(steps));
}

std::string format_metapath(const Hin& h, const MetaPath& path) {
  std::string out = h.vertex_type(path.types.front()).name;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    out += " -" + h.edge_type(path.steps[i].edge).name;
    if (path.steps[i].direction == Direction::kTransposed) out += "^T";
    out += "-> " + h.vertex_type(path.types[i + 1]).name;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports

ReportRecord to_record(const DiversityReport& report, const Network& net) {
  ReportRecord r;
  r.kind = to_string(report.kind);
  r.metapath = format_metapath(net.hin, report.metapath);
  if (report.baseline_metapath) {
    r.metapath += " || " + format_metapath(net.hin, *report.baseline_metapath);
  }
  r.alpha = report.alpha.to_string();
  if (report.conditioning) r.conditioning = net.names.name(*report.conditioning);
  r.start = report.start.label;
  if (report.baseline_start) r.start += " || " + report.baseline_start->label;
  if (report.semantics) r.semantics = to_string(*report.semantics);
  r.value = report.value;
  r.sink_mass = report.sink_mass;
  return r;
}

std::vector<ReportRecord> to_records(std::span<const DiversityReport> reports, const Network& net) {
  std::vector<ReportRecord> out;
  out.reserve(reports.size());
  for (const auto& r : reports) out.push_back(to_record(r, net));
  return out;
}

std::string to_json_line(const ReportRecord& r) {
  Json j;
  j["kind"] = r.kind;
  j["metapath"] = r.metapath;
  j["alpha"] = r.alpha;
  j["conditioning"] = r.conditioning ? Json(*r.conditioning) : Json(nullptr);
  j["start"] = r.start;
  if (r.semantics) j["semantics"] = *r.semantics;
  j["value"] = r.value;
  j["sink_mass"] = r.sink_mass;
  return j.dump();
}

ReportRecord parse_json_line(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("report: ") + e.what(), 1, e.byte);
  }
  const auto str = [&](const char* key) {
    const Json& v = require(j, key, "report");
    if (!v.is_string()) throw ParseError(std::string("report: '") + key + "' must be a string");
    return v.get<std::string>();
  };
  const auto num = [&](const char* key) {
    const Json& v = require(j, key, "report");
    if (!v.is_number()) throw ParseError(std::string("report: '") + key + "' must be a number");
    return v.get<double>();
  };
  ReportRecord r;
  r.kind = str("kind");
  r.metapath = str("metapath");
  r.alpha = str("alpha");
  const Json& cond = require(j, "conditioning", "report");
  if (cond.is_string()) {
    r.conditioning = cond.get<std::string>();
  } else if (!cond.is_null()) {
    throw ParseError("report: 'conditioning' must be a string or null");
  }
  r.start = str("start");
  if (j.contains("semantics")) r.semantics = str("semantics");
  r.value = num("value");
  r.sink_mass = num("sink_mass");
  return r;
}

void write_reports_jsonl(std::span<const ReportRecord> records, std::ostream& out) {
  for (const auto& r : records) out << to_json_line(r) << '\n';
}

void write_reports_csv(std::span<const ReportRecord> records, std::ostream& out) {
  out << "kind,metapath,alpha,conditioning,start,semantics,value,sink_mass\n";
  for (const auto& r : records) {
    out << csv_field(r.kind) << ',' << csv_field(r.metapath) << ',' << csv_field(r.alpha) << ','
        << csv_field(r.conditioning.value_or("")) << ',' << csv_field(r.start) << ','
        << csv_field(r.semantics.value_or("")) << ',' << format_number(r.value) << ','
        << format_number(r.sink_mass) << '\n';
  }
}

std::vector<ReportRecord> read_reports_jsonl(std::istream& in) {
  std::vector<ReportRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(parse_json_line(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no, e.column());
    } catch (const ValidationError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no, 0);
    }
  }
  return out;
}

std::string format_number(double x) {
  if (x == 0.0) return "0";  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_histogram(std::span<const HistogramBin> bins, std::ostream& out) {
  out << "bin_low,bin_high,count\n";
  for (const auto& b : bins) {
    out << format_number(b.low) << ',' << format_number(b.high) << ',' << b.count << '\n';
  }
}

void write_volume_curve(std::span<const CurvePoint> curve, std::ostream& out) {
  out << "volume_low,volume_high,count,mean,p05,p30,p70,p95\n";
  for (const auto& p : curve) {
    out << format_number(p.volume_low) << ',' << format_number(p.volume_high) << ',' << p.count
        << ',' << format_number(p.mean) << ',' << format_number(p.p05) << ','
        << format_number(p.p30) << ',' << format_number(p.p70) << ',' << format_number(p.p95)
        << '\n';
  }
}

// ---------------------------------------------------------------------------
// Start files

std::vector<VertexIndex> read_vertex_subset(const std::filesystem::path& path,
                                            const NetworkNames& names, VertexTypeId type) {
  const std::string text = read_file(path);
  std::vector<VertexIndex> out;
  const auto lines = lines_of(text);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const auto name = trim(lines[l]);
    if (name.empty()) continue;
    const auto v = names.find(type, name);
    if (!v) {
      throw ValidationError(locate(path.string(), l + 1) + "unknown vertex '" + std::string(name) +
                            "'");
    }
    out.push_back(*v);
  }
  return out;
}

std::vector<double> read_start_weights(const std::filesystem::path& path, const Hin& h,
                                       const NetworkNames& names, VertexTypeId type) {
  const std::string text = read_file(path);
  const std::string source = path.string();
  std::vector<double> weights(h.cardinality(type), 0.0);
  const auto lines = lines_of(text);
  bool first = true;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const std::size_t line_no = l + 1;
    if (trim(lines[l]).empty()) continue;
    const auto fields = split_csv(lines[l], source, line_no);
    const bool header = first && fields.size() == 2 && fields[0] == "vertex" && fields[1] == "weight";
    first = false;
    if (header) continue;
    if (fields.size() != 2) {
      throw ParseError(locate(source, line_no) + "expected 'vertex,weight'", line_no, 1);
    }
    const auto v = names.find(type, fields[0]);
    if (!v) throw ValidationError(locate(source, line_no) + "unknown vertex '" + fields[0] + "'");
    double w = 0.0;
    try {
      w = parse_double(fields[1], "weight");
    } catch (const ParseError& e) {
      throw ParseError(locate(source, line_no) + e.what(), line_no, 1);
    }
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ValidationError(locate(source, line_no) + "weight must be finite and non-negative");
    }
    weights[*v] += w;
  }
  return weights;
}

}  // namespace hindiv

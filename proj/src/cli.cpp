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

#include "hindiv/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hindiv/errors.hpp"
#include "hindiv/io.hpp"
#include "hindiv/netdiv.hpp"
#include "hindiv/sweep.hpp"

namespace hindiv {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string schema;
  std::vector<std::string> edges;
  bool no_sinks = false;
  std::string metapath;
  std::string metapath2;
  std::vector<std::string> alphas;
  std::string measure;
  std::string semantics = "posterior";
  std::string start = "uniform";
  std::string start2 = "uniform";
  std::string vertex;
  std::string out;
  std::string format = "jsonl";
  bool include_sinks = false;
  int threads = 0;
  std::string volume_curve;
  std::string in;
  std::string bins = "log:20";
};

Network load(const Options& o) {
  std::vector<std::filesystem::path> edges(o.edges.begin(), o.edges.end());
  return load_network(o.schema, edges, !o.no_sinks);
}

std::vector<AlphaOrder> parse_alphas(const std::vector<std::string>& texts) {
  std::vector<AlphaOrder> out;
  for (const auto& t : texts) {
    try {
      out.push_back(AlphaOrder::parse(t));
    } catch (const Error& e) {
      throw UsageError("--alpha: " + std::string(e.what()));
    }
  }
  if (out.empty()) out.push_back(AlphaOrder::one());
  return out;
}

MeasureKind parse_measure(std::string text, MeasureKind fallback) {
  if (text.empty()) return fallback;
  std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) {
    return c == '-' ? '_' : static_cast<char>(std::tolower(c));
  });
  const auto kind = parse_measure_kind(text);
  if (!kind) throw UsageError("--measure: unknown measure '" + text + "'");
  return *kind;
}

StartSpec parse_start(const std::string& text, const Network& net, VertexTypeId type) {
  if (text == "uniform") return StartSpec::uniform();
  if (text.starts_with("uniform:")) {
    const std::filesystem::path file = text.substr(8);
    return StartSpec::uniform_over(read_vertex_subset(file, net.names, type), text);
  }
  if (text.starts_with("dist:")) {
    const std::filesystem::path file = text.substr(5);
    return StartSpec::explicit_weights(read_start_weights(file, net.hin, net.names, type), text);
  }
  throw UsageError("--start: expected 'uniform', 'uniform:<file>' or 'dist:<file>', got '" +
                   text + "'");
}

VertexIndex resolve_vertex(const Network& net, VertexTypeId type, const std::string& name) {
  const auto v = net.names.find(type, name);
  if (!v) {
    throw ValidationError("unknown vertex '" + name + "' in vertex type '" +
                          net.hin.vertex_type(type).name + "'");
  }
  return *v;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
  } else {
    write_file(o.out, text);
  }
}

std::string render_reports(const Options& o, const std::vector<ReportRecord>& records) {
  std::ostringstream ss;
  if (o.format == "csv") {
    write_reports_csv(records, ss);
  } else {
    write_reports_jsonl(records, ss);
  }
  return ss.str();
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_validate(const Options& o, std::ostream& out) {
  const Network net = load(o);
  std::uint64_t edges = 0;
  for (const auto& r : net.hin.records()) {
    if (!net.hin.is_sink(r.src) && !net.hin.is_sink(r.dst)) edges += r.multiplicity;
  }
  out << "ok: " << net.hin.vertex_type_count() << " vertex types, " << net.hin.edge_type_count()
      << " edge types, " << edges << " edges\n";
  return kExitOk;
}

int cmd_schema(const Options& o, std::ostream& out) {
  const Network net = load(o);
  const Hin& h = net.hin;
  std::ostringstream ss;
  for (std::size_t i = 0; i < h.vertex_type_count(); ++i) {
    const VertexTypeId t{static_cast<std::uint32_t>(i)};
    const std::size_t n = h.cardinality(t) - (h.sink(t) ? 1 : 0);
    ss << "vertex_type " << h.vertex_type(t).name << " " << n << "\n";
  }
  for (const auto& e : h.edge_types()) {
    ss << e.name << ": " << h.vertex_type(e.src).name << " -> " << h.vertex_type(e.dst).name
       << "\n";
  }
  emit(o, out, ss.str());
  return kExitOk;
}

int cmd_walk(const Options& o, std::ostream& out) {
  if (o.metapath.empty()) throw UsageError("walk needs --metapath");
  const Network net = load(o);
  const MetaPath path = parse_metapath_expr(net.hin, o.metapath);
  const StartSpec start = parse_start(o.start, net, path.source());
  const VertexDistribution s = start.resolve(net.hin, path.source());
  const VertexDistribution end = propagate(net.hin, path, s);
  auto entries = end.nonzeros();
  double sink_mass = 0.0;
  if (const auto sink = net.hin.sink(path.destination())) sink_mass = end.mass(*sink);
  std::erase_if(entries, [&](const SparseEntry& e) {
    return net.hin.is_sink({path.destination(), e.index});
  });
  std::stable_sort(entries.begin(), entries.end(),
                   [](const SparseEntry& a, const SparseEntry& b) { return a.mass > b.mass; });
  std::ostringstream ss;
  for (const auto& e : entries) {
    ss << net.names.name({path.destination(), e.index}) << " " << format_number(e.mass) << "\n";
  }
  ss << "sink_mass " << format_number(sink_mass) << "\n";
  emit(o, out, ss.str());
  return kExitOk;
}

int cmd_diversity(const Options& o, std::ostream& out) {
  if (o.metapath.empty()) throw UsageError("diversity needs --metapath");
  const MeasureKind kind = parse_measure(o.measure, MeasureKind::kCollective);
  const auto alphas = parse_alphas(o.alphas);
  const bool needs_vertex = is_per_vertex(kind);
  if (needs_vertex && o.vertex.empty()) {
    throw UsageError("--measure " + to_string(kind) + " needs --vertex");
  }
  if (!needs_vertex && !o.vertex.empty()) {
    throw UsageError("--measure " + to_string(kind) + " does not take --vertex");
  }
  if (kind == MeasureKind::kRelativeCollective && o.metapath2.empty()) {
    throw UsageError("relative_collective needs --metapath2");
  }
  const auto semantics = parse_backward_semantics(o.semantics);
  if (!semantics) throw UsageError("--semantics: expected 'transpose' or 'posterior'");

  const Network net = load(o);
  const Hin& h = net.hin;
  const MetaPath path = parse_metapath_expr(h, o.metapath);
  const StartSpec start = parse_start(o.start, net, path.source());
  const MeasureOptions opts{o.include_sinks ? SinkPolicy::kInclude : SinkPolicy::kExclude};
  const bool backward =
      kind == MeasureKind::kBackwardTranspose || kind == MeasureKind::kBackwardPosterior;
  const VertexIndex v =
      needs_vertex ? resolve_vertex(net, backward ? path.destination() : path.source(), o.vertex)
                   : 0;

  std::vector<DiversityReport> reports;
  switch (kind) {
    case MeasureKind::kCollective:
      reports = collective_diversity(h, path, start, alphas, opts);
      break;
    case MeasureKind::kIndividual:
      reports = individual_diversity(h, path, v, alphas, opts);
      break;
    case MeasureKind::kMeanIndividual:
      reports = mean_individual_diversity(h, path, start, alphas, opts);
      break;
    case MeasureKind::kRelativeIndividual:
      reports = relative_individual_diversity(h, path, v, start, alphas, opts);
      break;
    case MeasureKind::kRelativeCollective: {
      const MetaPath path2 = parse_metapath_expr(h, o.metapath2);
      const StartSpec start2 = parse_start(o.start2, net, path2.source());
      reports = relative_collective_diversity(h, path, path2, start, start2, alphas, opts);
      break;
    }
    case MeasureKind::kBackwardTranspose:
      reports = backward_diversity_transpose(h, path, v, alphas, opts);
      break;
    case MeasureKind::kBackwardPosterior:
      reports = backward_diversity_posterior(h, path, v, start, alphas, opts);
      break;
    case MeasureKind::kMeanBackward:
      reports = mean_backward_diversity(h, path, start, *semantics, alphas, opts);
      break;
    case MeasureKind::kProjected:
      reports = projected_diversity(h, path, v, alphas, opts);
      break;
  }
  emit(o, out, render_reports(o, to_records(reports, net)));
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.metapath.empty()) throw UsageError("sweep needs --metapath");
  const MeasureKind kind = parse_measure(o.measure, MeasureKind::kIndividual);
  if (!is_per_vertex(kind)) {
    throw UsageError("--measure " + to_string(kind) + " is not a per-vertex measure");
  }
  if (!o.vertex.empty()) throw UsageError("sweep does not take --vertex");
  const Network net = load(o);
  SweepRequest req;
  req.kind = kind;
  req.path = parse_metapath_expr(net.hin, o.metapath);
  req.alphas = parse_alphas(o.alphas);
  req.start = parse_start(o.start, net, req.path.source());
  req.options.sinks = o.include_sinks ? SinkPolicy::kInclude : SinkPolicy::kExclude;
  req.include_sinks = o.include_sinks;
  const SweepResult result = sweep_parallel(net.hin, req, o.threads);
  for (auto v : result.unreachable) {
    err << "note: skipped '" << net.names.name({result.type, v})
        << "': not reachable under the start distribution\n";
  }
  emit(o, out, render_reports(o, to_records(to_reports(req, result), net)));
  if (!o.volume_curve.empty()) {
    std::vector<std::uint64_t> volumes;
    std::vector<double> values;
    for (const auto& row : result.rows) {
      volumes.push_back(row.volume);
      values.push_back(row.values.front());
    }
    std::ostringstream ss;
    write_volume_curve(volume_curve(volumes, values), ss);
    write_file(o.volume_curve, ss.str());
  }
  return kExitOk;
}

BinSpec parse_bins(const std::string& text) {
  BinSpec spec;
  const auto colon = text.find(':');
  const std::string scale = text.substr(0, colon);
  if (scale == "log") {
    spec.scale = BinSpec::Scale::kLog;
  } else if (scale == "linear") {
    spec.scale = BinSpec::Scale::kLinear;
  } else {
    throw UsageError("--bins: expected 'log:N' or 'linear:N'");
  }
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      spec.bins = std::stoi(text.substr(colon + 1), &used);
      if (used != text.size() - colon - 1 || spec.bins <= 0) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw UsageError("--bins: bin count must be a positive integer");
    }
  }
  return spec;
}

int cmd_histogram(const Options& o, std::ostream& out) {
  if (o.in.empty()) throw UsageError("histogram needs --in");
  const BinSpec spec = parse_bins(o.bins);
  std::optional<std::string> alpha;
  if (o.alphas.size() > 1) throw UsageError("histogram takes at most one --alpha");
  if (!o.alphas.empty()) alpha = parse_alphas(o.alphas).front().to_string();
  std::ifstream in(o.in);
  if (!in) throw IoError("cannot open '" + o.in + "'");
  std::vector<double> values;
  for (const auto& r : read_reports_jsonl(in)) {
    if (!alpha || r.alpha == *alpha) values.push_back(r.value);
  }
  std::ostringstream ss;
  write_histogram(histogram(values, spec), ss);
  emit(o, out, ss.str());
  return kExitOk;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diversity measures on heterogeneous information networks", "hindiv"};
  app.require_subcommand(1);
  Options o;

  const auto network_flags = [&](CLI::App* c) {
    c->add_option("--schema", o.schema, "Schema JSON file")->required();
    c->add_option("--edges", o.edges, "Edge list CSV (repeatable)");
    c->add_flag("--no-sinks", o.no_sinks, "Do not append sink vertices");
  };
  const auto measure_flags = [&](CLI::App* c) {
    c->add_option("--metapath", o.metapath, "Meta path, e.g. 'users -chosen-> items'");
    c->add_option("--alpha", o.alphas, "Diversity order: 0, 1, 2, inf or a decimal");
    c->add_option("--measure", o.measure, "Measure kind");
    c->add_option("--semantics", o.semantics, "Backward semantics: transpose or posterior");
    c->add_option("--start", o.start, "uniform | uniform:<file> | dist:<file>");
    c->add_flag("--include-sinks", o.include_sinks, "Count sinks as vertices");
    c->add_option("--out", o.out, "Output file (default stdout)");
    c->add_option("--format", o.format, "jsonl or csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));
  };

  auto* validate = app.add_subcommand("validate", "Check that the network files are well formed");
  network_flags(validate);
  auto* schema = app.add_subcommand("schema", "Print vertex types and arcs");
  network_flags(schema);
  schema->add_option("--out", o.out, "Output file (default stdout)");
  auto* walk = app.add_subcommand("walk", "Print the walk distribution at the end of a meta path");
  network_flags(walk);
  walk->add_option("--metapath", o.metapath, "Meta path");
  walk->add_option("--start", o.start, "uniform | uniform:<file> | dist:<file>");
  walk->add_option("--out", o.out, "Output file (default stdout)");
  auto* diversity = app.add_subcommand("diversity", "Compute one diversity measure");
  network_flags(diversity);
  measure_flags(diversity);
  diversity->add_option("--vertex", o.vertex, "Conditioning vertex name");
  diversity->add_option("--metapath2", o.metapath2, "Baseline meta path (relative_collective)");
  diversity->add_option("--start2", o.start2, "Baseline start (relative_collective)");
  auto* sweep = app.add_subcommand("sweep", "Compute a per-vertex measure for every vertex");
  network_flags(sweep);
  measure_flags(sweep);
  sweep->add_option("--vertex", o.vertex, "Not accepted; present for a clear error");
  sweep->add_option("--threads", o.threads, "Worker threads (default: all)");
  sweep->add_option("--volume-curve", o.volume_curve, "Write a diversity-vs-volume CSV");
  auto* hist = app.add_subcommand("histogram", "Histogram of report values");
  hist->add_option("--in", o.in, "JSON-lines report file");
  hist->add_option("--bins", o.bins, "log:N (bins per decade) or linear:N");
  hist->add_option("--alpha", o.alphas, "Only reports of this order");
  hist->add_option("--out", o.out, "Output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    if (app.get_subcommands().empty()) err << app.help();
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (schema->parsed()) return cmd_schema(o, out);
    if (walk->parsed()) return cmd_walk(o, out);
    if (diversity->parsed()) return cmd_diversity(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out, err);
    if (hist->parsed()) return cmd_histogram(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace hindiv

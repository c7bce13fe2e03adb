#pragma once

// Parameter sweeps over (nodes x speed x model x seed), CSV results, model
// comparison, and table-shaped text views of the CSV.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "oagm/config.hpp"
#include "oagm/metrics.hpp"
#include "oagm/mobility.hpp"
#include "oagm/simcore.hpp"
#include "oagm/trace.hpp"

namespace oagm {

struct SweepSpec {
  std::vector<std::size_t> node_counts{50, 100, 150, 200, 250};
  std::vector<double> speeds{2, 4, 6, 8, 10};
  std::vector<MobilityModel> models{MobilityModel::kMcm, MobilityModel::kOagm};
  std::vector<std::uint64_t> seeds{1};

  void validate() const {
    if (node_counts.empty() || speeds.empty() || models.empty() || seeds.empty())
      throw ConfigError("sweep: every axis needs at least one value");
  }
};

struct ResultRow {
  std::size_t nodes = 0;
  double speed = 0.0;
  MobilityModel model = MobilityModel::kOagm;
  std::uint64_t seed = 0;
  MetricsReport metrics;
  std::string error;  // non-empty when the cell failed

  [[nodiscard]] auto key() const { return std::tuple(nodes, speed, model, seed); }

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

inline ScenarioConfig cell_config(const ScenarioConfig& base, std::size_t nodes, double speed,
                                  MobilityModel model, std::uint64_t seed) {
  ScenarioConfig c = base;
  c.node_count = nodes;
  c.speed = speed;
  c.speed_min.reset();
  c.speed_max.reset();
  c.model = model;
  c.seed = seed;
  return c;
}

struct CellRun {
  MovementSchedule schedule;
  SimCounters counters;
  MetricsReport metrics;
};

/// generate_mobility -> run_simulation -> aggregate for one scenario.
inline CellRun run_scenario(const ScenarioConfig& config, std::ostream* event_log = nullptr) {
  config.validate();
  const RandomStream rng(config.seed);
  CellRun run;
  run.schedule = generate_mobility(config, rng);
  run.counters = run_simulation(config, run.schedule, rng, event_log);
  run.metrics = aggregate(run.counters);
  return run;
}

inline std::string trace_file_name(const ResultRow& row) {
  char speed[32];
  std::snprintf(speed, sizeof speed, "%g", row.speed);
  return "trace_n" + std::to_string(row.nodes) + "_v" + speed + "_" + to_string(row.model) +
         "_s" + std::to_string(row.seed) + ".tcl";
}

struct SweepOptions {
  unsigned jobs = 1;
  std::optional<std::filesystem::path> trace_dir;  // write one NS-2 trace per cell
};

/// Rows come back sorted by (nodes, speed, model, seed) whatever the job
/// count. Failed cells carry their message in `error`.
inline std::vector<ResultRow> run_sweep(const SweepSpec& spec, const ScenarioConfig& base,
                                        const SweepOptions& options = {}) {
  spec.validate();
  std::vector<ResultRow> rows;
  for (auto n : spec.node_counts)
    for (auto v : spec.speeds)
      for (auto m : spec.models)
        for (auto s : spec.seeds) rows.push_back({n, v, m, s, {}, {}});
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [](const auto& a, const auto& b) { return a.key() == b.key(); }),
             rows.end());
  if (options.trace_dir) std::filesystem::create_directories(*options.trace_dir);

  auto work = [&](ResultRow& row) {
    try {
      const auto run = run_scenario(cell_config(base, row.nodes, row.speed, row.model, row.seed));
      row.metrics = run.metrics;
      if (options.trace_dir) {
        std::ofstream out(*options.trace_dir / trace_file_name(row), std::ios::binary);
        emit_ns2_trace(run.schedule, out);
      }
    } catch (const std::exception& e) {
      row.metrics = {};
      row.error = e.what();
    }
  };

  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    for (auto& row : rows) work(row);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < rows.size(); i = next++) work(rows[i]);
    });
  for (auto& t : pool) t.join();
  return rows;
}

// --- CSV --------------------------------------------------------------------

inline constexpr const char* kCsvHeader = "nodes,speed_mps,model,seed,gp,rp,dp,co,pdr_pct,ed_ms";

namespace detail {

// Shortest representation that reads back to the same double.
inline std::string format_real(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_real failed");
  return std::string(buf, end);
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out + "\"";
}

inline std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields{""};
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

template <typename T>
T parse_field(const std::string& s, const char* what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error(std::string("csv: bad ") + what + " '" + s + "'");
  return v;
}

}  // namespace detail

/// An `error` column is appended only when some row failed.
inline void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  using detail::format_real;
  const bool any_error =
      std::any_of(rows.begin(), rows.end(), [](const auto& r) { return !r.error.empty(); });
  out << kCsvHeader << (any_error ? ",error" : "") << '\n';
  for (const auto& r : rows) {
    out << r.nodes << ',' << format_real(r.speed) << ',' << to_string(r.model) << ',' << r.seed;
    if (r.error.empty()) {
      const auto& m = r.metrics;
      out << ',' << m.gp << ',' << m.rp << ',' << m.dp << ',' << m.co << ','
          << format_real(m.pdr) << ',' << (m.ed_ms ? format_real(*m.ed_ms) : "");
    } else {
      out << ",,,,,,";
    }
    if (any_error) out << ',' << detail::csv_quote(r.error);
    out << '\n';
  }
}

inline std::string to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  write_csv(rows, out);
  return out.str();
}

inline std::vector<ResultRow> parse_csv(std::istream& in) {
  using detail::parse_field;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: missing header");
  bool with_error = false;
  if (line == std::string(kCsvHeader) + ",error")
    with_error = true;
  else if (line != kCsvHeader)
    throw std::runtime_error("csv: unexpected header '" + line + "'");
  const std::size_t width = with_error ? 11 : 10;

  std::vector<ResultRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = detail::csv_split(line);
    if (f.size() != width)
      throw std::runtime_error("csv: line " + std::to_string(lineno) + " has " +
                               std::to_string(f.size()) + " fields");
    ResultRow r;
    r.nodes = parse_field<std::size_t>(f[0], "nodes");
    r.speed = parse_field<double>(f[1], "speed_mps");
    r.model = parse_model(f[2]);
    r.seed = parse_field<std::uint64_t>(f[3], "seed");
    if (with_error) r.error = f[10];
    if (r.error.empty()) {
      r.metrics.gp = parse_field<std::uint64_t>(f[4], "gp");
      r.metrics.rp = parse_field<std::uint64_t>(f[5], "rp");
      r.metrics.dp = parse_field<std::uint64_t>(f[6], "dp");
      r.metrics.co = parse_field<std::uint64_t>(f[7], "co");
      r.metrics.pdr = parse_field<double>(f[8], "pdr_pct");
      if (!f[9].empty()) r.metrics.ed_ms = parse_field<double>(f[9], "ed_ms");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<ResultRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in);
}

// --- comparison -------------------------------------------------------------

class ComparisonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CellComparison {
  std::size_t nodes = 0;
  double speed = 0.0;
  std::uint64_t seed = 0;
  double pdr_mcm = 0.0;
  double pdr_oagm = 0.0;
  double pdr_delta = 0.0;  // OAGM - MCM
  std::optional<double> ed_mcm;
  std::optional<double> ed_oagm;
  std::optional<double> ed_delta;  // MCM - OAGM
};

struct ComparisonReport {
  std::vector<CellComparison> cells;
  double mean_pdr_mcm = 0.0;
  double mean_pdr_oagm = 0.0;
  double mean_pdr_delta = 0.0;
  std::optional<double> mean_ed_mcm;
  std::optional<double> mean_ed_oagm;
  std::optional<double> mean_ed_delta;
};

namespace detail {

inline std::string cell_name(std::size_t nodes, double speed, std::uint64_t seed) {
  return "(nodes=" + std::to_string(nodes) + ", speed=" + format_real(speed) +
         ", seed=" + std::to_string(seed) + ")";
}

inline std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace detail

/// Pairs MCM and OAGM rows on (nodes, speed, seed). Every cell must have both
/// models and no errors; otherwise the offending cells are named.
inline ComparisonReport compare_models(const std::vector<ResultRow>& rows) {
  std::map<std::tuple<std::size_t, double, std::uint64_t>,
           std::pair<const ResultRow*, const ResultRow*>>
      cells;
  for (const auto& r : rows) {
    auto& slot = cells[{r.nodes, r.speed, r.seed}];
    (r.model == MobilityModel::kMcm ? slot.first : slot.second) = &r;
  }
  std::vector<std::string> problems;
  ComparisonReport rep;
  std::vector<double> pm, po, pd, em, eo, ed;
  for (const auto& [key, pair] : cells) {
    const auto& [n, v, s] = key;
    const std::string name = detail::cell_name(n, v, s);
    if (!pair.first) problems.push_back("missing MCM cell " + name);
    if (!pair.second) problems.push_back("missing OAGM cell " + name);
    if (!pair.first || !pair.second) continue;
    if (!pair.first->error.empty() || !pair.second->error.empty()) {
      problems.push_back("failed cell " + name);
      continue;
    }
    CellComparison c{n, v, s, pair.first->metrics.pdr, pair.second->metrics.pdr, 0.0, {}, {}, {}};
    c.pdr_delta = c.pdr_oagm - c.pdr_mcm;
    c.ed_mcm = pair.first->metrics.ed_ms;
    c.ed_oagm = pair.second->metrics.ed_ms;
    if (c.ed_mcm && c.ed_oagm) c.ed_delta = *c.ed_mcm - *c.ed_oagm;
    pm.push_back(c.pdr_mcm);
    po.push_back(c.pdr_oagm);
    pd.push_back(c.pdr_delta);
    if (c.ed_mcm) em.push_back(*c.ed_mcm);
    if (c.ed_oagm) eo.push_back(*c.ed_oagm);
    if (c.ed_delta) ed.push_back(*c.ed_delta);
    rep.cells.push_back(c);
  }
  if (!problems.empty()) {
    std::string msg = "compare_models: mismatched cells:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ComparisonError(msg);
  }
  if (rep.cells.empty()) throw ComparisonError("compare_models: no cells");
  rep.mean_pdr_mcm = *detail::mean_of(pm);
  rep.mean_pdr_oagm = *detail::mean_of(po);
  rep.mean_pdr_delta = *detail::mean_of(pd);
  rep.mean_ed_mcm = detail::mean_of(em);
  rep.mean_ed_oagm = detail::mean_of(eo);
  rep.mean_ed_delta = detail::mean_of(ed);
  return rep;
}

inline void write_comparison_csv(const ComparisonReport& rep, std::ostream& out) {
  using detail::format_real;
  auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  out << "nodes,speed_mps,seed,pdr_mcm,pdr_oagm,pdr_delta,ed_mcm_ms,ed_oagm_ms,ed_delta_ms\n";
  for (const auto& c : rep.cells)
    out << c.nodes << ',' << format_real(c.speed) << ',' << c.seed << ',' << format_real(c.pdr_mcm)
        << ',' << format_real(c.pdr_oagm) << ',' << format_real(c.pdr_delta) << ','
        << opt(c.ed_mcm) << ',' << opt(c.ed_oagm) << ',' << opt(c.ed_delta) << '\n';
}

namespace detail {

inline std::string fixed(std::optional<double> v, int digits) {
  if (!v) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, *v);
  return buf;
}

// Left-aligned first column, right-aligned rest.
inline std::string render_aligned(const std::vector<std::vector<std::string>>& table) {
  std::vector<std::size_t> width;
  for (const auto& row : table)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], row[i].size());
    }
  std::ostringstream out;
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i == 0)
        out << std::left << std::setw(static_cast<int>(width[i])) << row[i];
      else
        out << "  " << std::right << std::setw(static_cast<int>(width[i])) << row[i];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace detail

inline std::string render_comparison(const ComparisonReport& rep) {
  using detail::fixed;
  std::vector<std::vector<std::string>> t{
      {"cell", "PDR MCM", "PDR OAGM", "dPDR", "ED MCM", "ED OAGM", "dED"}};
  for (const auto& c : rep.cells)
    t.push_back({detail::cell_name(c.nodes, c.speed, c.seed), fixed(c.pdr_mcm, 4),
                 fixed(c.pdr_oagm, 4), fixed(c.pdr_delta, 4), fixed(c.ed_mcm, 4),
                 fixed(c.ed_oagm, 4), fixed(c.ed_delta, 4)});
  t.push_back({"mean", fixed(rep.mean_pdr_mcm, 4), fixed(rep.mean_pdr_oagm, 4),
               fixed(rep.mean_pdr_delta, 4), fixed(rep.mean_ed_mcm, 4), fixed(rep.mean_ed_oagm, 4),
               fixed(rep.mean_ed_delta, 4)});
  return detail::render_aligned(t);
}

enum class Metric { kGp, kRp, kDp, kCo, kPdr, kEd };

inline Metric parse_metric(const std::string& s) {
  if (s == "gp") return Metric::kGp;
  if (s == "rp") return Metric::kRp;
  if (s == "dp") return Metric::kDp;
  if (s == "co") return Metric::kCo;
  if (s == "pdr") return Metric::kPdr;
  if (s == "ed") return Metric::kEd;
  throw std::invalid_argument("unknown metric '" + s + "' (gp, rp, dp, co, pdr, ed)");
}

inline std::optional<double> metric_value(const MetricsReport& m, Metric which) {
  switch (which) {
    case Metric::kGp:
      return static_cast<double>(m.gp);
    case Metric::kRp:
      return static_cast<double>(m.rp);
    case Metric::kDp:
      return static_cast<double>(m.dp);
    case Metric::kCo:
      return static_cast<double>(m.co);
    case Metric::kPdr:
      return m.pdr;
    case Metric::kEd:
      return m.ed_ms;
  }
  return std::nullopt;
}

/// Models-by-speed view: one row per (model, node count), one column per
/// speed, each value the mean over seeds of successful cells.
inline std::string pivot_table(const std::vector<ResultRow>& rows, Metric which, int digits = 2) {
  std::vector<double> speeds;
  std::map<std::pair<std::size_t, MobilityModel>, std::map<double, std::vector<double>>> grid;
  for (const auto& r : rows) {
    if (std::find(speeds.begin(), speeds.end(), r.speed) == speeds.end()) speeds.push_back(r.speed);
    auto& cell = grid[{r.nodes, r.model}][r.speed];
    if (!r.error.empty()) continue;
    if (auto v = metric_value(r.metrics, which)) cell.push_back(*v);
  }
  std::sort(speeds.begin(), speeds.end());
  std::vector<std::vector<std::string>> t{{"Models/speed"}};
  for (double v : speeds) t[0].push_back(detail::format_real(v) + " m/s");
  std::vector<std::pair<std::size_t, MobilityModel>> order;
  for (const auto& [key, _] : grid) order.push_back(key);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return std::tie(a.second, a.first) < std::tie(b.second, b.first);
  });
  for (const auto& key : order) {
    std::vector<std::string> line{std::string(to_string(key.second)) + " (" +
                                  std::to_string(key.first) + " node)"};
    for (double v : speeds) {
      const auto& cells = grid[key];
      const auto it = cells.find(v);
      line.push_back(detail::fixed(it == cells.end() ? std::nullopt : detail::mean_of(it->second),
                                   digits));
    }
    t.push_back(std::move(line));
  }
  return detail::render_aligned(t);
}

}  // namespace oagm

// Command-line front end: NS-2 trace generation, single simulations, sweeps,
// and MCM/OAGM comparison.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oagm/oagm.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::string> model;
  std::optional<std::size_t> nodes;
  std::optional<double> speed;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool scalar_axes) {
  cmd->add_option("--config", f.config, "Scenario config file (key = value)");
  cmd->add_option("--out", f.out, "Output file (default: stdout)");
  if (scalar_axes) {
    cmd->add_option("--seed", f.seed, "Random seed");
    cmd->add_option("--model", f.model, "Mobility model: MCM or OAGM");
    cmd->add_option("--nodes", f.nodes, "Number of nodes");
    cmd->add_option("--speed", f.speed, "Nominal node speed (m/s)");
  }
}

oagm::ScenarioConfig resolve(const CommonFlags& f) {
  oagm::ScenarioConfig c = f.config.empty() ? oagm::ScenarioConfig{} : oagm::load_config(f.config);
  if (f.seed) c.seed = *f.seed;
  if (f.model) c.model = oagm::parse_model(*f.model);
  if (f.nodes) c.node_count = *f.nodes;
  if (f.speed) {
    c.speed = *f.speed;
    c.speed_min.reset();
    c.speed_max.reset();
  }
  c.validate();
  return c;
}

// Opens --out, or hands back stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Obstacle-aware MANET mobility and packet simulator"};
  app.require_subcommand(1);

  CommonFlags trace_flags;
  auto* trace_cmd = app.add_subcommand("generate-trace", "Write an NS-2 mobility scenario");
  add_common(trace_cmd, trace_flags, true);

  CommonFlags sim_flags;
  std::string event_log;
  auto* sim_cmd = app.add_subcommand("simulate", "Run one scenario and print its metrics row");
  add_common(sim_cmd, sim_flags, true);
  sim_cmd->add_option("--event-log", event_log, "Write one line per simulator event");

  CommonFlags sweep_flags;
  oagm::SweepSpec spec;
  std::vector<std::string> sweep_models;
  std::string trace_dir;
  std::string pivot;
  unsigned jobs = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a nodes x speed x model x seed sweep to CSV");
  add_common(sweep_cmd, sweep_flags, false);
  sweep_cmd->add_option("--nodes", spec.node_counts, "Node counts")->delimiter(',');
  sweep_cmd->add_option("--speed", spec.speeds, "Speeds (m/s)")->delimiter(',');
  sweep_cmd->add_option("--model", sweep_models, "Models (MCM, OAGM)")->delimiter(',');
  sweep_cmd->add_option("--seed,--seeds", spec.seeds, "Seeds")->delimiter(',');
  sweep_cmd->add_option("--trace-dir", trace_dir, "Also write one NS-2 trace per cell here");
  sweep_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--pivot", pivot, "Print a models-by-speed table of gp|rp|dp|co|pdr|ed");

  std::string compare_in;
  std::string compare_out;
  auto* cmp_cmd = app.add_subcommand("compare", "Pair MCM and OAGM rows of a sweep CSV");
  cmp_cmd->add_option("--in", compare_in, "Sweep CSV")->required();
  cmp_cmd->add_option("--out", compare_out, "Comparison CSV (default: aligned text on stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*trace_cmd) {
      const auto cfg = resolve(trace_flags);
      const auto schedule = oagm::generate_mobility(cfg, oagm::RandomStream(cfg.seed));
      Sink sink(trace_flags.out);
      oagm::emit_ns2_trace(schedule, sink.stream());
    } else if (*sim_cmd) {
      const auto cfg = resolve(sim_flags);
      std::unique_ptr<std::ofstream> log;
      if (!event_log.empty()) {
        log = std::make_unique<std::ofstream>(event_log, std::ios::binary);
        if (!*log) throw std::runtime_error("cannot open '" + event_log + "'");
      }
      const auto run = oagm::run_scenario(cfg, log.get());
      oagm::ResultRow row{cfg.node_count, cfg.speed, cfg.model, cfg.seed, run.metrics, {}};
      Sink sink(sim_flags.out);
      oagm::write_csv({row}, sink.stream());
    } else if (*sweep_cmd) {
      const auto base = resolve(sweep_flags);
      if (!sweep_models.empty()) {
        spec.models.clear();
        for (const auto& m : sweep_models) spec.models.push_back(oagm::parse_model(m));
      }
      oagm::SweepOptions opts;
      opts.jobs = jobs;
      if (!trace_dir.empty()) opts.trace_dir = trace_dir;
      const auto rows = oagm::run_sweep(spec, base, opts);
      Sink sink(sweep_flags.out);
      oagm::write_csv(rows, sink.stream());
      if (!pivot.empty()) std::cerr << oagm::pivot_table(rows, oagm::parse_metric(pivot), 4);
      for (const auto& r : rows)
        if (!r.error.empty()) std::cerr << "cell failed: " << r.error << '\n';
    } else if (*cmp_cmd) {
      std::ifstream in(compare_in);
      if (!in) throw std::runtime_error("cannot open '" + compare_in + "'");
      const auto report = oagm::compare_models(oagm::parse_csv(in));
      if (compare_out.empty()) {
        std::cout << oagm::render_comparison(report);
      } else {
        Sink sink(compare_out);
        oagm::write_comparison_csv(report, sink.stream());
        std::cout << oagm::render_comparison(report);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

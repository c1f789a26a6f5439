// hilbert_dyn: run, sweep, metric and validate subcommands.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hilbert/benchmarks.hpp"
#include "hilbert/config.hpp"
#include "hilbert/validation.hpp"

namespace fs = std::filesystem;
using namespace hilbert;

namespace {

enum Exit { kOk = 0, kConfigError = 1, kRuntimeError = 2, kValidationFailure = 3 };

int exit_code(const Error& e) { return e.code() == ErrorCode::ConfigInvalid ? kConfigError : kRuntimeError; }

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << contents;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

unsigned thread_cap(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HILBERT_DYN_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) n = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

LimitSetReport execute(const ExperimentConfig& config, const fs::path& out) {
  const auto report = conjecture_report(config.map, config.body, config.start, config.settings);
  fs::create_directories(out);
  if (config.emit.csv) write_file(out / "orbit.csv", orbit_csv(report.orbit));
  if (config.emit.json) write_file(out / "report.json", report_json(config, report));
  if (config.emit.svg && config.body.intrinsic_dim() == 2) {
    write_file(out / "orbit.svg", orbit_svg(config.body, report));
  }
  return report;
}

int cmd_run(const fs::path& config_path, const fs::path& out) {
  try {
    const auto config = load_config(config_path);
    const auto report = execute(config, out);
    std::cout << config.id << ": " << to_string(report.verdict) << "\n";
    return kOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  }
}

struct SweepJob {
  std::string name;
  std::optional<ExperimentConfig> config;
  std::string load_error;
};

struct SweepRow {
  std::string line;
  bool ok = false;
};

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

SweepRow sweep_one(const SweepJob& job, const fs::path& out) {
  if (!job.config) return {csv_field(job.name) + ",," + csv_field("error: " + job.load_error) + ",,,,,,", false};
  const auto& c = *job.config;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto r = execute(c, out / c.id);
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    char buf[256];
    const auto& e = r.estimates;
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%.17g,%s,%.3f", e ? e->tau_hat : NAN, e ? e->D_upper : NAN,
                  e ? e->delta_hat : NAN, r.gv ? r.gv->d_tau_gap : NAN, r.single_face ? "true" : "false", ms);
    return {csv_field(c.map.id()) + "," + csv_field(c.body.label()) + "," + std::string(to_string(r.verdict)) + buf,
            true};
  } catch (const Error& e) {
    std::cerr << c.id << ": " << e.what() << "\n";
    return {csv_field(c.map.id()) + "," + csv_field(c.body.label()) + "," + csv_field(std::string("error: ") + e.what()) +
                ",,,,,,",
            false};
  }
}

int cmd_sweep(const std::string& dir, const std::string& builtin, std::uint64_t seed, const fs::path& out) {
  std::vector<SweepJob> jobs;
  if (!builtin.empty()) {
    std::vector<Benchmark> benches;
    if (builtin == "planar") {
      benches = planar_benchmarks(seed);
    } else if (builtin == "cone") {
      benches = cone_benchmarks(seed);
    } else if (builtin == "all") {
      benches = benchmark_suite(seed);
    } else {
      std::cerr << "error: unknown benchmark set " << builtin << " (planar, cone, all)\n";
      return kConfigError;
    }
    for (const auto& b : benches) jobs.push_back({b.id, config_from_benchmark(b), {}});
  } else {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
      std::cerr << "error: " << dir << " is not a directory\n";
      return kConfigError;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      SweepJob job{f.stem().string(), std::nullopt, {}};
      try {
        job.config = load_config(f);
      } catch (const Error& e) {
        job.load_error = e.what();
      }
      jobs.push_back(std::move(job));
    }
  }
  if (jobs.empty()) {
    std::cerr << "error: no configs to sweep\n";
    return kConfigError;
  }

  std::vector<SweepRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) rows[i] = sweep_one(jobs[i], out);
  };
  std::vector<std::thread> pool;
  const unsigned threads = thread_cap(jobs.size());
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string summary = "map_id,body,verdict,tau_hat,D_upper,delta_hat,gv_gap,single_face,runtime_ms\n";
  bool any_ok = false;
  for (const auto& r : rows) {
    summary += r.line + "\n";
    any_ok = any_ok || r.ok;
  }
  fs::create_directories(out);
  write_file(out / "summary.csv", summary);
  std::cout << rows.size() << " runs, summary in " << (out / "summary.csv").string() << "\n";
  return any_ok ? kOk : kRuntimeError;
}

Point parse_point(const std::string& csv) {
  std::vector<double> values;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigInvalid, "not a number: \"" + item + "\"");
    }
  }
  if (values.empty()) throw Error(ErrorCode::ConfigInvalid, "empty point");
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

int cmd_metric(const std::string& body_arg, const std::string& x, const std::string& y, const std::string& scale) {
  try {
    const std::string text = body_arg.rfind('{', 0) == 0 ? body_arg : read_file(body_arg);
    const ConvexBody body = parse_body(text);
    const MetricConvention conv = scale == "half" ? MetricConvention::half() : MetricConvention::one();
    const Point px = parse_point(x);
    const Point py = parse_point(y);
    if (px.size() != body.dim() || py.size() != body.dim()) {
      throw Error(ErrorCode::DimensionMismatch, "points must have the body's dimension");
    }
    std::printf("%.12g\n", hilbert_distance(body, px, py, conv));
    return kOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  }
}

int cmd_validate(std::uint64_t seed, bool mismatch) {
  const auto results = run_validation({seed, mismatch});
  std::cout << format_results(results);
  const bool ok = std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.passed; });
  return ok ? kOk : kValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert metric dynamics: orbits, drift estimates and limit-set reports"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run one experiment config");
  run->add_option("--config", config_path, "Experiment JSON")->required();
  run->add_option("--out", out_dir, "Output directory")->required();

  std::string sweep_dir;
  std::string builtin;
  std::uint64_t sweep_seed = 2024;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Run every config in a directory or a built-in benchmark set");
  auto* dir_opt = sweep->add_option("--dir", sweep_dir, "Directory of *.json configs");
  auto* builtin_opt = sweep->add_option("--builtin", builtin, "Benchmark set: planar, cone or all");
  dir_opt->excludes(builtin_opt);
  sweep->add_option("--seed", sweep_seed, "Seed for built-in benchmark generation");
  sweep->add_option("--out", sweep_out, "Output directory")->required();

  std::string body_arg;
  std::string x;
  std::string y;
  std::string scale = "one";
  auto* metric = app.add_subcommand("metric", "Hilbert distance between two points");
  metric->add_option("--body", body_arg, "Body JSON file, experiment JSON, or inline JSON")->required();
  metric->add_option("--x", x, "Comma-separated coordinates")->required();
  metric->add_option("--y", y, "Comma-separated coordinates")->required();
  metric->add_option("--scale", scale, "half or one")->check(CLI::IsMember({"half", "one"}));

  std::uint64_t seed = 1;
  bool mismatch = false;
  auto* validate = app.add_subcommand("validate", "Run the built-in oracle suites");
  validate->add_option("--seed", seed, "Seed for sampled suites");
  validate->add_flag("--inject-scale-mismatch", mismatch, "Negative control: compare scale 1 with scale 1/2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  if (run->parsed()) return cmd_run(config_path, out_dir);
  if (sweep->parsed()) {
    if (sweep_dir.empty() && builtin.empty()) {
      std::cerr << "error: sweep needs --dir or --builtin\n";
      return kConfigError;
    }
    return cmd_sweep(sweep_dir, builtin, sweep_seed, sweep_out);
  }
  if (metric->parsed()) return cmd_metric(body_arg, x, y, scale);
  return cmd_validate(seed, mismatch);
}

// Command-line driver for the belyi library.
//
//   belyi sample     --n N [--d D] [--seed S] [--out FILE] [--dot FILE]
//   belyi trace      MAP [--format csv|json]
//   belyi expect     --n N [--d D] [--kmax K] [--format csv|json] [--out FILE]
//   belyi roots      MAP [--max-len L] [--format csv|json] [--out FILE]
//   belyi experiment [--n N,...] [--d D] [--trials T] [--seed S] [--kmax K]
//                    [--mode raw|simple] [--format csv|json] [--out FILE]
//                    [--svg FILE] [--workers W]
//   belyi verify     [--data DIR] [--seed S] [--out FILE]
//
// Exit status: 0 success, 1 verification or runtime failure, 2 bad flags.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "belyi/belyi.hpp"

#ifndef BELYI_DATA_DIR
#define BELYI_DATA_DIR "data"
#endif

namespace {

using namespace belyi;

struct Options {
  int n = 0;
  std::vector<int> n_values = {64, 256, 1024, 4096};
  int d = 3;
  int trials = 2000;
  std::uint64_t seed = 1;
  int k_max = 3;
  int max_len = 4;
  std::string mode = "raw";
  std::string format = "csv";
  std::string roots_format = "json";
  std::string out;
  std::string dot;
  std::string svg;
  std::string map_path;
  std::string data_dir = BELYI_DATA_DIR;
  unsigned workers = 1;
};

OutputFormat parse_format(const std::string& f) { return f == "json" ? OutputFormat::json : OutputFormat::csv; }

// Runs `body` with stdout or the --out file.
void with_output(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  auto out = open_output(path);
  body(out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

int cmd_sample(const Options& o) {
  Rng rng = make_stream(o.seed);
  const auto map = sample_map(o.n, o.d, rng);
  with_output(o.out, [&](std::ostream& os) { write_map(os, map); });
  if (!o.dot.empty()) {
    auto out = open_output(o.dot);
    write_dot(out, project_to_multigraph(map.pairing()));
  }
  return 0;
}

int cmd_trace(const Options& o) {
  const auto map = load_map(o.map_path);
  const auto faces = trace_faces(map);
  const auto stats = surface_stats(map, faces);
  if (o.format == "json") {
    nlohmann::json j = {{"F", stats.faces},
                        {"V", stats.vertices},
                        {"E", stats.edges},
                        {"chi", stats.euler_characteristic},
                        {"connected", stats.connected},
                        {"component_genera", stats.component_genera},
                        {"face_lengths", faces.lengths()}};
    j["genus"] = stats.genus ? nlohmann::json(*stats.genus) : nlohmann::json(nullptr);
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << "F=" << stats.faces << " genus=" << (stats.genus ? std::to_string(*stats.genus) : "NA") << '\n';
  std::cout << "V=" << stats.vertices << " E=" << stats.edges << " chi=" << stats.euler_characteristic
            << " connected=" << (stats.connected ? 1 : 0) << " components=" << stats.components << '\n';
  std::cout << "face_lengths=";
  const auto lengths = faces.lengths();
  for (std::size_t i = 0; i < lengths.size(); ++i) std::cout << (i ? " " : "") << lengths[i];
  std::cout << '\n';
  if (!stats.connected) {
    std::cout << "component_genera=";
    for (std::size_t i = 0; i < stats.component_genera.size(); ++i)
      std::cout << (i ? " " : "") << stats.component_genera[i];
    std::cout << '\n';
  }
  return 0;
}

int cmd_expect(const Options& o) {
  const auto table = expectation_table(o.n, o.d, o.k_max);
  with_output(o.out, [&](std::ostream& os) {
    if (o.format == "json")
      os << to_json(table).dump(2) << '\n';
    else
      write_expectation_csv(os, table);
  });
  return 0;
}

int cmd_roots(const Options& o) {
  const auto map = load_map(o.map_path);
  const auto roots = enumerate_roots(map, o.max_len);
  with_output(o.out, [&](std::ostream& os) {
    if (o.roots_format == "json") {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& r : roots) j.push_back(to_json(r));
      os << j.dump(2) << '\n';
      return;
    }
    os << "vertices,defect,length\n";
    for (const auto& r : roots) {
      for (std::size_t i = 0; i < r.vertices.size(); ++i) os << (i ? ";" : "") << r.vertices[i];
      os << ',' << (r.defect ? std::to_string(*r.defect) : "") << ',' << r.length() << '\n';
    }
  });
  return 0;
}

int cmd_experiment(const Options& o) {
  ExperimentSpec spec;
  spec.n_values = o.n_values;
  spec.d = o.d;
  spec.trials = o.trials;
  spec.master_seed = o.seed;
  spec.k_max = o.k_max;
  spec.mode = o.mode == "simple" ? SamplingMode::simple_only : SamplingMode::raw;
  const auto result = run_trials(spec, o.workers);
  const auto format = parse_format(o.format);

  if (o.out.empty()) {
    if (format == OutputFormat::csv)
      write_aggregate_csv(std::cout, result.aggregate);
    else
      std::cout << to_json(result.aggregate).dump(2) << '\n';
  } else {
    export_results(result.aggregate, result.records, format, o.out);
  }
  if (!o.svg.empty()) {
    auto out = open_output(o.svg);
    write_faces_svg(out, result.aggregate);
  }

  try {
    const auto rep = compare_bounds(result.aggregate);
    std::cerr << "n,mean_F,F/log(n),F/sqrt(n),genus/n\n";
    for (const auto& r : rep.rows)
      std::cerr << r.n << ',' << format_number(r.mean_faces) << ',' << format_number(r.faces_over_log_n) << ','
                << format_number(r.faces_over_sqrt_n) << ',' << format_number(r.genus_over_n) << '\n';
    std::cerr << "mean F increasing: " << rep.faces_increasing << '\n'
              << "F/sqrt(n) non-increasing: " << rep.sqrt_ratio_nonincreasing << '\n'
              << "F/log(n) window " << format_number(rep.log_ratio_window) << " <= 3: " << rep.log_ratio_within_window
              << '\n'
              << "genus/n converging: " << rep.genus_ratio_converging << '\n';
  } catch (const std::invalid_argument&) {
    // Sweep too narrow for a bound comparison; the aggregate is still written.
  }
  return 0;
}

// Bundled-fixture and oracle checks. Returns the number of failures.
int cmd_verify(const Options& o) {
  int failures = 0;
  nlohmann::json exported = nlohmann::json::object();
  auto report = [&](const std::string& name, bool ok, const std::string& detail = {}) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << (detail.empty() ? "" : ": " + detail) << '\n';
    if (!ok) ++failures;
  };

  for (auto [n, d] : {std::pair{2, 3}, std::pair{4, 3}}) {
    std::vector<BigInt> sums(n + 1, 0);
    BigInt count = 0;
    for_each_configuration(n, d, [&](const DartPairing& p) {
      const auto census = count_k_cycles(p, n);
      for (int k = 1; k <= n; ++k) sums[k] += census[k];
      ++count;
    });
    bool ok = true;
    std::ostringstream detail;
    for (int k = 1; k <= n; ++k) {
      const Rational mean(sums[k], count);
      if (mean != expected_k_cycles_rational(n, d, k)) {
        ok = false;
        detail << "k=" << k << " mean " << mean << " ";
      }
    }
    report("enumeration oracle E(X_k) n=" + std::to_string(n) + " d=" + std::to_string(d), ok, detail.str());
  }

  struct Fixture {
    std::string file;
    int faces;
    int genus;
  };
  for (const auto& f : {Fixture{"cube_standard.map", 6, 0}, Fixture{"cube_flipped.map", 4, 1},
                        Fixture{"theta_same.map", 1, 1}, Fixture{"theta_opposite.map", 3, 0}}) {
    try {
      const auto map = load_map(o.data_dir + "/" + f.file);
      const auto faces = trace_faces(map);
      const auto stats = surface_stats(map, faces);
      report(f.file, stats.faces == f.faces && stats.genus == f.genus,
             "F=" + std::to_string(stats.faces) + " genus=" + (stats.genus ? std::to_string(*stats.genus) : "NA"));
      nlohmann::json roots = nlohmann::json::array();
      bool all_valid = true;
      for (const auto& face : faces.faces) {
        const auto root = find_root_in_face(map, face);
        all_valid = all_valid && is_valid_root(map, root);
        roots.push_back(to_json(root));
      }
      report(f.file + " face roots", all_valid);
      exported[f.file] = roots;
    } catch (const std::exception& e) {
      report(f.file, false, e.what());
    }
  }

  int bad = 0;
  for (int t = 0; t < 100; ++t) {
    Rng rng = make_stream(o.seed, 100, static_cast<std::uint64_t>(t));
    const auto map = sample_map(100, 3, rng);
    for (const auto& face : trace_faces(map).faces)
      if (!is_valid_root(map, find_root_in_face(map, face))) ++bad;
  }
  report("every face contains a root (100 maps, n=100)", bad == 0, std::to_string(bad) + " invalid");

  if (!o.out.empty()) with_output(o.out, [&](std::ostream& os) { os << exported.dump(2) << '\n'; });
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random oriented regular multigraphs: faces, genus and configuration-model expectations"};
  app.require_subcommand(1);
  Options o;

  auto add_d = [&](CLI::App* c) { c->add_option("--d", o.d, "degree")->capture_default_str()->check(CLI::Range(3, 1000)); };
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "output format")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
  };

  auto* sample = app.add_subcommand("sample", "sample a configuration with a random orientation");
  sample->add_option("--n", o.n, "vertex count")->required()->check(CLI::PositiveNumber);
  add_d(sample);
  sample->add_option("--seed", o.seed, "random seed")->capture_default_str();
  sample->add_option("--out", o.out, "map file to write (default stdout)");
  sample->add_option("--dot", o.dot, "also write the multigraph as Graphviz DOT");

  auto* trace = app.add_subcommand("trace", "trace faces of a map file and report genus");
  trace->add_option("map", o.map_path, "map file")->required();
  add_format(trace);

  auto* expect = app.add_subcommand("expect", "print the expectation table");
  expect->add_option("--n", o.n, "vertex count")->required()->check(CLI::PositiveNumber);
  add_d(expect);
  expect->add_option("--kmax", o.k_max, "largest cycle length")->capture_default_str()->check(CLI::PositiveNumber);
  add_format(expect);
  expect->add_option("--out", o.out, "output file (default stdout)");

  auto* roots = app.add_subcommand("roots", "enumerate roots of a map file");
  roots->add_option("map", o.map_path, "map file")->required();
  roots->add_option("--max-len", o.max_len, "longest root")->capture_default_str()->check(CLI::PositiveNumber);
  roots->add_option("--format", o.roots_format, "output format")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
  roots->add_option("--out", o.out, "output file (default stdout)");

  auto* experiment = app.add_subcommand("experiment", "run a seeded Monte Carlo sweep");
  experiment->add_option("--n", o.n_values, "vertex counts")->delimiter(',')->capture_default_str();
  add_d(experiment);
  experiment->add_option("--trials", o.trials, "trials per n")->capture_default_str()->check(CLI::PositiveNumber);
  experiment->add_option("--seed", o.seed, "master seed")->capture_default_str();
  experiment->add_option("--kmax", o.k_max, "cycle census depth")->capture_default_str()->check(CLI::PositiveNumber);
  experiment->add_option("--mode", o.mode, "raw or simple")->capture_default_str()->check(CLI::IsMember({"raw", "simple"}));
  add_format(experiment);
  experiment->add_option("--out", o.out, "aggregate file; trial records go to <out>.trials.<ext>");
  experiment->add_option("--svg", o.svg, "plot of mean F against n");
  experiment->add_option("--workers", o.workers, "worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));

  auto* verify = app.add_subcommand("verify", "run the oracle and fixture checks");
  verify->add_option("--data", o.data_dir, "fixture directory")->capture_default_str();
  verify->add_option("--seed", o.seed, "seed for the random-map checks")->capture_default_str();
  verify->add_option("--out", o.out, "write the fixture roots as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sample) return cmd_sample(o);
    if (*trace) return cmd_trace(o);
    if (*expect) return cmd_expect(o);
    if (*roots) return cmd_roots(o);
    if (*experiment) return cmd_experiment(o);
    if (*verify) return cmd_verify(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

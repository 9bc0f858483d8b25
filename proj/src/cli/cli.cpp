#include "splitpoint/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <iostream>
#include <sstream>
#include <string>

#include "splitpoint/csv.hpp"
#include "splitpoint/inference.hpp"
#include "splitpoint/montecarlo.hpp"
#include "splitpoint/report.hpp"
#include "splitpoint/sample.hpp"
#include "splitpoint/theory.hpp"

namespace splitpoint {

using nlohmann::json;

int exit_code(ErrorCode code) { return 10 + static_cast<int>(code); }

namespace {

struct Options {
  std::string input;
  std::string column = "0";
  double a = 0.1;
  double b = 0.9;
  double level = 0.95;
  double null_split = 0.5;
  double alpha = 0.05;
  std::string output;

  std::string model = "normal";
  std::size_t n = 1000;
  std::size_t reps = 1000;
  std::uint64_t seed = 20130101;
  std::string p0;
  unsigned threads = 0;
};

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct LoadedColumn {
  NumericColumn column;
  SortedSample sample;
};

LoadedColumn load(const Options& opt) {
  NumericColumn col = opt.input == "-" ? read_numeric_column(std::cin, opt.column)
                                       : read_numeric_column_file(opt.input, opt.column);
  SortedSample sample(col.values);
  return {std::move(col), std::move(sample)};
}

json data_parameters(const Options& opt, const NumericColumn& col) {
  json p = {{"input", opt.input},
            {"column_index", col.index},
            {"column_name", col.name ? json(*col.name) : json(nullptr)},
            {"a", opt.a},
            {"b", opt.b}};
  return p;
}

void emit(const json& doc, const std::string& format, std::ostream& out) {
  if (format == "tsv") {
    out << to_tsv(doc);
  } else {
    out << doc.dump(2) << '\n';
  }
}

void cmd_ecf(const Options& opt, std::ostream& out) {
  const auto [col, sample] = load(opt);
  const EcfCurve curve = ecf_curve(sample);
  const std::size_t n = curve.size();
  if (opt.output == "json") {
    json doc = make_report("ecf", {{"input", opt.input},
                                   {"column_index", col.index},
                                   {"column_name", col.name ? json(*col.name) : json(nullptr)}});
    doc["n"] = n;
    doc["g"] = curve.g;
    emit(doc, "json", out);
    return;
  }
  out << "k\tp\tg\n";
  for (std::size_t k = 1; k <= n; ++k) {
    out << k << '\t' << shortest(static_cast<double>(k) / static_cast<double>(n)) << '\t'
        << shortest(curve.at(k)) << '\n';
  }
}

void cmd_split(const Options& opt, std::ostream& out) {
  const auto [col, sample] = load(opt);
  json doc = make_report("split", data_parameters(opt, col));
  doc["estimate"] = to_json(split_point(sample, opt.a, opt.b));
  doc["two_means"] = to_json(hartigan_split_oracle(sample));
  emit(doc, opt.output, out);
}

void cmd_ci(const Options& opt, std::ostream& out) {
  const auto [col, sample] = load(opt);
  json params = data_parameters(opt, col);
  params["level"] = opt.level;
  const SplitInference inf = confidence_interval(sample, opt.a, opt.b, opt.level);
  json doc = make_report("ci", std::move(params));
  doc["estimate"] = to_json(inf.estimate);
  doc["inference"] = to_json(inf);
  emit(doc, opt.output, out);
}

void cmd_test(const Options& opt, std::ostream& out) {
  const auto [col, sample] = load(opt);
  json params = data_parameters(opt, col);
  params["null"] = opt.null_split;
  params["alpha"] = opt.alpha;
  const ClusterTestResult res = no_cluster_test(sample, opt.a, opt.b, opt.null_split, opt.alpha);
  json doc = make_report("test", std::move(params));
  doc["estimate"] = to_json(res.estimate);
  doc["inference"] = res.inference ? to_json(*res.inference) : json(nullptr);
  doc["test"] = to_json(res);
  emit(doc, opt.output, out);
}

void cmd_simulate(const Options& opt, std::ostream& out) {
  SimulationConfig cfg;
  cfg.model = parse_model(opt.model);
  cfg.n = opt.n;
  cfg.reps = opt.reps;
  cfg.seed = opt.seed;
  cfg.a = opt.a;
  cfg.b = opt.b;
  cfg.level = opt.level;
  cfg.threads = opt.threads;
  if (opt.p0 == "auto") {
    cfg.p0 = cfg.model->declared_split_point();
    if (!cfg.p0) cfg.p0 = theoretical_split_point(*cfg.model, opt.a, opt.b);
  } else if (!opt.p0.empty()) {
    double v = 0.0;
    const auto res = std::from_chars(opt.p0.data(), opt.p0.data() + opt.p0.size(), v);
    if (res.ec != std::errc{} || res.ptr != opt.p0.data() + opt.p0.size() || !(v > 0 && v < 1)) {
      throw Error(ErrorCode::InvalidArgument, "--p0 must be 'auto' or a number in (0, 1)");
    }
    cfg.p0 = v;
  }
  const SimulationReport rep = run_simulation(cfg);
  // Thread count is left out of the parameters: it never changes the result.
  json params = {{"model", cfg.model->name()}, {"n", cfg.n},   {"reps", cfg.reps},
                 {"seed", cfg.seed},           {"a", cfg.a},   {"b", cfg.b},
                 {"level", cfg.level},         {"p0", rep.p0}};
  json doc = make_report("simulate", std::move(params));
  doc["simulation"] = to_json(rep);
  emit(doc, opt.output, out);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Split-point clustering: estimation and asymptotic inference", "splitpoint"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Options opt;

  auto add_data = [&](CLI::App* sub, bool with_range) {
    sub->add_option("--input", opt.input, "CSV file, or - for stdin")->required();
    sub->add_option("--column", opt.column, "column name or 0-based index")
        ->capture_default_str();
    if (with_range) {
      sub->add_option("--a", opt.a, "lower end of the split search range")->capture_default_str();
      sub->add_option("--b", opt.b, "upper end of the split search range")->capture_default_str();
    }
  };
  auto add_output = [&](CLI::App* sub, const std::string& def) {
    sub->add_option("--output", opt.output, "json or tsv (default " + def + ")")
        ->check(CLI::IsMember({"json", "tsv"}));
  };

  auto* ecf = app.add_subcommand("ecf", "empirical cross-over function at every split index");
  add_data(ecf, false);
  auto* split = app.add_subcommand("split", "empirical split point");
  add_data(split, true);
  auto* ci = app.add_subcommand("ci", "confidence interval for the split point");
  add_data(ci, true);
  ci->add_option("--level", opt.level, "confidence level")->capture_default_str();
  auto* test = app.add_subcommand("test", "test H0: split point equals --null");
  add_data(test, true);
  test->add_option("--null", opt.null_split, "split point under the null")->capture_default_str();
  test->add_option("--alpha", opt.alpha, "significance level")->capture_default_str();
  auto* sim = app.add_subcommand("simulate", "Monte Carlo study of the split point");
  sim->add_option("--model", opt.model,
                  "normal | uniform | normal(mu,sd) | uniform(lo,hi) | mixture(w,mu1,sd1,mu2,sd2)")
      ->capture_default_str();
  sim->add_option("--n", opt.n, "sample size")->capture_default_str();
  sim->add_option("--reps", opt.reps, "replications")->capture_default_str();
  sim->add_option("--seed", opt.seed, "64-bit seed")->capture_default_str();
  sim->add_option("--a", opt.a)->capture_default_str();
  sim->add_option("--b", opt.b)->capture_default_str();
  sim->add_option("--level", opt.level)->capture_default_str();
  sim->add_option("--p0", opt.p0, "true split point, or 'auto' to solve for it");
  sim->add_option("--threads", opt.threads, "worker threads (0 = all cores)")
      ->capture_default_str();

  for (auto* sub : {split, ci, test, sim}) add_output(sub, "json");
  add_output(ecf, "tsv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  if (opt.output.empty()) opt.output = ecf->parsed() ? "tsv" : "json";

  std::ostringstream buf;
  try {
    if (ecf->parsed()) cmd_ecf(opt, buf);
    if (split->parsed()) cmd_split(opt, buf);
    if (ci->parsed()) cmd_ci(opt, buf);
    if (test->parsed()) cmd_test(opt, buf);
    if (sim->parsed()) cmd_simulate(opt, buf);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.code());
  }
  out << buf.str();
  return 0;
}

}  // namespace splitpoint

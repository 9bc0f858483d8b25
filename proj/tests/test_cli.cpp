#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "splitpoint/cli.hpp"
#include "splitpoint/csv.hpp"
#include "splitpoint/error.hpp"
#include "splitpoint/report.hpp"

using namespace splitpoint;
using nlohmann::json;

namespace {

const std::string kFaithful = std::string(SPLITPOINT_DATA_DIR) + "/faithful.csv";

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "splitpoint");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("splitpoint_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("csv reader: header detection and column selection") {
  std::istringstream with_header("a,b\n1,2\n3,4\n");
  const auto by_name = read_numeric_column(with_header, "b");
  CHECK(by_name.values == std::vector<double>{2, 4});
  CHECK(by_name.index == 1);
  CHECK(by_name.name == std::optional<std::string>("b"));

  std::istringstream quoted("\"x\",\"y\"\n\n 1.5 , -2e3\r\n");
  CHECK(read_numeric_column(quoted, "y").values == std::vector<double>{-2000});

  std::istringstream bare("1,2\n3,4\n");
  const auto by_index = read_numeric_column(bare, "0");
  CHECK(by_index.values == std::vector<double>{1, 3});
  CHECK_FALSE(by_index.name.has_value());

  std::istringstream empty("");
  CHECK(read_numeric_column(empty, "0").values.empty());
}

TEST_CASE("csv reader errors") {
  auto code_of = [](const std::string& text, const std::string& sel) {
    std::istringstream in(text);
    try {
      read_numeric_column(in, sel);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  CHECK(code_of("a,b\n1,2\n", "c") == ErrorCode::ColumnNotFound);
  CHECK(code_of("1,2\n", "a") == ErrorCode::ColumnNotFound);
  CHECK(code_of("1,2\n", "5") == ErrorCode::ColumnNotFound);
  CHECK(code_of("a\n1\nx\n", "a") == ErrorCode::ParseError);
  CHECK(code_of("a,b\n1,2\n3\n", "b") == ErrorCode::ParseError);

  std::istringstream in("v\n1\n2\noops\n");
  try {
    read_numeric_column(in, "v");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("ecf subcommand on the faithful data") {
  const Run r = run({"ecf", "--input", kFaithful, "--column", "eruptions"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 273);
  CHECK(rows[0] == "k\tp\tg");

  std::vector<double> g;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::istringstream in(rows[i]);
    std::size_t k;
    double p, v;
    in >> k >> p >> v;
    CHECK(k == i);
    g.push_back(v);
  }
  CHECK(g.front() >= 0.0);
  CHECK(g.back() <= 0.0);
  // Sign changes between consecutive indices inside [0.1, 0.9] sit at k = 97.
  std::vector<std::size_t> changes;
  for (std::size_t k = 28; k < 245; ++k) {
    if (g[k - 1] * g[k] <= 0) changes.push_back(k);
  }
  CHECK(changes == std::vector<std::size_t>{97});
}

TEST_CASE("ecf subcommand on a toy file and json output") {
  const auto path = temp_file("toy.csv", "1\n2\n3\n10\n");
  const Run r = run({"ecf", "--input", path});
  REQUIRE(r.code == 0);
  CHECK(r.out == "k\tp\tg\n1\t0.25\t3\n2\t0.5\t3\n3\t0.75\t-1\n4\t1\t-6\n");

  const Run j = run({"ecf", "--input", path, "--output", "json"});
  REQUIRE(j.code == 0);
  const json doc = json::parse(j.out);
  CHECK(doc["g"] == json::array({3.0, 3.0, -1.0, -6.0}));
  CHECK(doc["n"] == 4);
}

TEST_CASE("errors map to exit codes and leave stdout empty") {
  const auto empty = temp_file("empty.csv", "");
  Run r = run({"ecf", "--input", empty});
  CHECK(r.code == exit_code(ErrorCode::SampleTooSmall));
  CHECK(r.out.empty());
  CHECK(r.err.find("SampleTooSmall") != std::string::npos);

  r = run({"split", "--input", kFaithful, "--column", "duration"});
  CHECK(r.code == exit_code(ErrorCode::ColumnNotFound));
  CHECK(r.out.empty());

  const auto bad = temp_file("bad.csv", "x\n1\n2\nthree\n");
  r = run({"ci", "--input", bad, "--column", "x"});
  CHECK(r.code == exit_code(ErrorCode::ParseError));
  CHECK(r.err.find("line 4") != std::string::npos);

  r = run({"ci", "--input", "/nonexistent/file.csv"});
  CHECK(r.code == exit_code(ErrorCode::IoError));

  r = run({"simulate", "--model", "cauchy", "--reps", "2"});
  CHECK(r.code == exit_code(ErrorCode::UnknownModel));

  r = run({"simulate", "--reps", "0"});
  CHECK(r.code == exit_code(ErrorCode::InvalidArgument));
  CHECK(r.out.empty());

  r = run({"simulate", "--model", "mixture(0.7,0,1,4,1)", "--reps", "2"});
  CHECK(r.code == exit_code(ErrorCode::MissingTruth));

  r = run({"split", "--input", kFaithful, "--output", "xml"});
  CHECK(r.code == 2);
  r = run({});
  CHECK(r.code == 2);

  // Distinct classes, distinct codes.
  CHECK(exit_code(ErrorCode::NoCrossing) != exit_code(ErrorCode::UnstableDerivative));
}

TEST_CASE("split, ci and test on the faithful data") {
  Run r = run({"split", "--input", kFaithful, "--column", "eruptions"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["tool"]["name"] == "splitpoint");
  CHECK(doc["tool"]["version"] == kToolVersion);
  CHECK(doc["command"] == "split");
  CHECK(doc["parameters"]["a"] == 0.1);
  CHECK(doc["parameters"]["b"] == 0.9);
  CHECK(doc["estimate"]["k"] == 97);
  CHECK(doc["estimate"]["p_n"].get<double>() == 97.0 / 272.0);
  CHECK(doc["estimate"]["status"] == "crossing");

  r = run({"ci", "--input", kFaithful, "--column", "eruptions"});
  REQUIRE(r.code == 0);
  doc = json::parse(r.out);
  CHECK(doc["parameters"]["level"] == 0.95);
  CHECK(std::abs(doc["inference"]["halfwidth"].get<double>() - 0.057) <= 0.010);
  CHECK(doc["inference"]["terms"]["m"] == 98);
  for (const char* key : {"q_hat", "f_hat", "ql_hat", "qu_hat", "bl_hat", "bu_hat"}) {
    CHECK(doc["inference"]["terms"].contains(key));
  }

  r = run({"test", "--input", kFaithful, "--column", "eruptions", "--alpha", "0.01"});
  REQUIRE(r.code == 0);
  doc = json::parse(r.out);
  CHECK(doc["test"]["reject"] == true);
  CHECK(doc["test"]["outcome"] == "tested");
  CHECK(doc["test"]["p_value"].get<double>() < 1e-5);
  CHECK(doc["parameters"]["null"] == 0.5);
}

TEST_CASE("column by name and by index give identical reports") {
  for (const char* cmd : {"split", "ci", "test"}) {
    const Run by_name = run({cmd, "--input", kFaithful, "--column", "eruptions"});
    const Run by_index = run({cmd, "--input", kFaithful, "--column", "0"});
    REQUIRE(by_name.code == 0);
    CHECK(by_name.out == by_index.out);
  }
}

TEST_CASE("headerless input matches the header version") {
  std::ifstream in(kFaithful);
  std::string line, body;
  std::getline(in, line);
  while (std::getline(in, line)) body += line + "\n";
  const auto bare = temp_file("faithful_bare.csv", body);
  const json a = json::parse(run({"ci", "--input", bare}).out);
  const json b = json::parse(run({"ci", "--input", kFaithful}).out);
  CHECK(a["inference"] == b["inference"]);
  CHECK(a["estimate"] == b["estimate"]);
}

TEST_CASE("reports round-trip through their serialization") {
  const Run r = run({"test", "--input", kFaithful});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(json::parse(doc.dump()) == doc);
  CHECK(json::parse(doc.dump(2)).dump(2) + "\n" == r.out);
}

TEST_CASE("tsv report output") {
  const Run r = run({"split", "--input", kFaithful, "--output", "tsv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("estimate.k\t97\n") != std::string::npos);
  CHECK(r.out.find("command\tsplit\n") != std::string::npos);
}

TEST_CASE("boundary outcome of the test subcommand") {
  const auto path = temp_file("toy2.csv", "1\n2\n3\n10\n");
  const Run r = run({"test", "--input", path, "--a", "0.6", "--b", "0.9", "--null", "0.7"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["test"]["outcome"] == "rejected_by_boundary");
  CHECK(doc["test"]["z"].is_null());
  CHECK(doc["inference"].is_null());
}

TEST_CASE("simulate subcommand") {
  Run r = run({"simulate", "--model", "normal", "--n", "100", "--reps", "1000", "--seed", "17"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  const double v = doc["simulation"]["var_scaled"].get<double>();
  CHECK(v >= 0.50);
  CHECK(v <= 0.75);
  CHECK(doc["parameters"]["model"] == "normal(0,1)");

  const Run again =
      run({"simulate", "--n", "100", "--reps", "1000", "--seed", "17", "--threads", "1"});
  CHECK(again.out == r.out);

  r = run({"simulate", "--model", "mixture(0.5,-2,1,2,1)", "--n", "1000", "--reps", "200"});
  REQUIRE(r.code == 0);
  doc = json::parse(r.out);
  CHECK(std::abs(doc["simulation"]["mean_pn"].get<double>() - 0.5) <= 0.01);

  r = run({"simulate", "--model", "mixture(0.7,0,1,4,1)", "--n", "500", "--reps", "50", "--p0",
           "auto"});
  REQUIRE(r.code == 0);
  doc = json::parse(r.out);
  CHECK(std::abs(doc["simulation"]["p0"].get<double>() - 0.68830566) <= 1e-6);
}

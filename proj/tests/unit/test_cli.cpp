#include <doctest.h>

#include "cli.hpp"
#include "tcpdist/csv.hpp"
#include "tcpdist/model.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace tcpdist;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "tcp-dist");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> parse_rows(const std::string& text, std::string* header = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    for (auto f : csv::split(line)) row.push_back(csv::parse_double(f));
    rows.push_back(row);
  }
  return rows;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tcp_dist_test_" + name);
}

}  // namespace

TEST_CASE("curves: defaults give 200 ordered rows") {
  const auto r = run({"curves", "--workers", "2"});
  REQUIRE(r.code == 0);
  std::string header;
  const auto rows = parse_rows(r.out, &header);
  CHECK(header == "r,contact,contact_bound,nn1,nn1_bound,nn2");
  REQUIRE(rows.size() == 200);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 6);
    CHECK(row[1] <= row[5]);
    CHECK(row[5] <= row[3]);
    CHECK(row[3] <= row[4]);
    CHECK(row[1] <= row[2]);
  }
  CHECK(rows.back()[0] == TcpParams{}.default_r_max());
}

TEST_CASE("curves: values round-trip at full precision") {
  const auto r = run({"curves", "--grid", "5", "--workers", "1"});
  REQUIRE(r.code == 0);
  const auto rows = parse_rows(r.out);
  const TcpParams p;
  const auto grid = model::uniform_grid(p.default_r_max(), 5);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i][0] == grid[i]);
    CHECK(rows[i][1] == model::contact_cdf(p, grid[i]).value());
  }
}

TEST_CASE("curves: r_max = 0 gives a single row of zeros") {
  const auto r = run({"curves", "--r-max", "0"});
  REQUIRE(r.code == 0);
  const auto rows = parse_rows(r.out);
  REQUIRE(rows.size() == 1);
  for (double v : rows[0]) CHECK(v == 0.0);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run({"curves", "--grid", "notanumber"}).code == 2);
  CHECK(run({"curves", "--no-such-flag"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"curves", "--sigma", "-1"}).code == 2);
  CHECK(run({"pgf-check", "--theta", "1.5"}).code == 2);
  CHECK(run({"validate", "--samples", "999"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("config file supplies values and flags win") {
  const auto path = temp_file("config.ini");
  {
    std::ofstream f(path);
    f << "sigma=120\ngrid=3\nm-bar=1.5\n";
  }
  const auto from_file = run({"curves", "--config", path.string()});
  REQUIRE(from_file.code == 0);
  const auto rows = parse_rows(from_file.out);
  REQUIRE(rows.size() == 3);
  const TcpParams p{5e-5, 1.5, 120.0};
  CHECK(rows[2][0] == p.default_r_max());
  CHECK(rows[1][1] == model::contact_cdf(p, rows[1][0]).value());

  const auto flag_wins = run({"curves", "--config", path.string(), "--grid", "4"});
  REQUIRE(flag_wins.code == 0);
  CHECK(parse_rows(flag_wins.out).size() == 4);
  std::filesystem::remove(path);
}

TEST_CASE("validate: reproducible report and CSV") {
  const auto csv_path = temp_file("validate.csv");
  const std::vector<std::string> args{"validate", "--samples", "2000", "--seed", "7", "--workers", "3",
                                      "--grid", "20", "--out", csv_path.string()};
  const auto a = run(args);
  std::string first_csv;
  {
    std::ifstream f(csv_path);
    first_csv.assign(std::istreambuf_iterator<char>(f), {});
  }
  const auto b = run(args);
  std::string second_csv;
  {
    std::ifstream f(csv_path);
    second_csv.assign(std::istreambuf_iterator<char>(f), {});
  }
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(first_csv == second_csv);
  CHECK(a.out.find("workers=3") != std::string::npos);
  CHECK(a.out.find("overall PASS") != std::string::npos);
  std::string header;
  CHECK(parse_rows(first_csv, &header).size() == 20);
  CHECK(header == "r,contact_empirical,contact,nn1_empirical,nn1,nn2_empirical,nn2");
  std::filesystem::remove(csv_path);
}

TEST_CASE("validate: case-2 samples checked against the case-1 CDF fail") {
  const TcpParams p;
  const auto w = sim::SimWindow::covering(p, p.default_r_max());
  const auto s = sim::draw_samples(sim::SampleKind::NNCase2, p, w, 42, 100000, 4);
  CHECK_FALSE(cli::check_samples(s, sim::SampleKind::NNCase1, 0.01, 4).pass);
  CHECK(cli::check_samples(s, sim::SampleKind::NNCase2, 0.01, 4).pass);
}

TEST_CASE("pgf-check on a single r = 0 grid point passes trivially") {
  const auto r = run({"pgf-check", "--r-max", "0", "--samples", "100"});
  CHECK(r.code == 0);
  CHECK(r.out.find("overall PASS") != std::string::npos);
}

TEST_CASE("pgf-check passes at defaults with a reduced sample count") {
  const auto r = run({"pgf-check", "--samples", "20000", "--grid", "10", "--workers", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("TCP_DIST_WORKERS sets the default worker count") {
  ::setenv("TCP_DIST_WORKERS", "5", 1);
  const auto r = run({"validate", "--samples", "1000", "--grid", "2"});
  ::unsetenv("TCP_DIST_WORKERS");
  CHECK(r.out.find("workers=5") != std::string::npos);
  const auto flag = run({"validate", "--samples", "1000", "--grid", "2", "--workers", "2"});
  CHECK(flag.out.find("workers=2") != std::string::npos);
}

#include "glkde/cli.hpp"
#include "glkde/sample_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace glkde;

namespace {

struct Run
{
  int code;
  std::string out;
  std::string err;
};

Run
run(const std::vector<std::string>& args)
{
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string
scratch(const std::string& name)
{
  const auto dir = std::filesystem::temp_directory_path() / "glkde_test_cli";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string
slurp(const std::string& path)
{
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string>
lines_of(const std::string& text)
{
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    out.push_back(line);
  }
  return out;
}

std::string
sample_file(const std::string& name, const std::string& density, const std::string& c, const std::string& n)
{
  const auto path = scratch(name);
  const auto r = run({"simulate", "--density", density, "--case", c, "--n", n, "--seed", "3", "--out", path});
  EXPECT_EQ(r.code, exit_ok) << r.err;
  return path;
}

} // namespace

TEST(CliSimulate, DeterministicRows)
{
  const auto a = run({"simulate", "--density", "f1", "--case", "1", "--n", "5", "--seed", "42"});
  const auto b = run({"simulate", "--density", "f1", "--case", "1", "--n", "5", "--seed", "42"});
  ASSERT_EQ(a.code, exit_ok) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto rows = lines_of(a.out);
  ASSERT_EQ(rows.size(), 5U);
  for (const auto& row : rows) {
    const double v = std::stod(row);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  const auto c = run({"simulate", "--density", "f1", "--case", "1", "--n", "5", "--seed", "43"});
  EXPECT_NE(a.out, c.out);
}

TEST(CliSimulate, FileOutputRoundTrips)
{
  for (const char* c : {"1", "2", "3"}) {
    const auto path = sample_file(std::string("sim") + c + ".csv", "f2", c, "200");
    const auto data = read_sample_csv(path);
    EXPECT_EQ(data.size(), 200U);
  }
}

TEST(CliSimulate, UsageErrors)
{
  EXPECT_EQ(run({"simulate", "--density", "f4", "--case", "1", "--n", "5"}).code, exit_usage);
  EXPECT_EQ(run({"simulate", "--density", "f1", "--case", "4", "--n", "5"}).code, exit_usage);
  EXPECT_EQ(run({"simulate", "--density", "f1", "--case", "1"}).code, exit_usage);
  EXPECT_EQ(run({"simulate", "--density", "f1", "--case", "1", "--n", "5", "--bogus"}).code, exit_usage);
  EXPECT_EQ(run({}).code, exit_usage);
  EXPECT_EQ(run({"fit"}).code, exit_usage);
}

TEST(CliSimulate, UnwritableOutput)
{
  const auto r = run({"simulate", "--density", "f1", "--case", "1", "--n", "5", "--out", "/nonexistent-dir/x.csv"});
  EXPECT_EQ(r.code, exit_runtime);
  EXPECT_NE(r.err.find("glkde: error:"), std::string::npos);
}

TEST(CliEstimate, DegenerateGridIsARuntimeError)
{
  const auto path = sample_file("tiny.csv", "f1", "1", "5");
  const auto r = run({"estimate", "--data", path, "--method", "gl", "--x0", "0.5"});
  EXPECT_EQ(r.code, exit_runtime);
  EXPECT_NE(r.err.find("degenerate grid"), std::string::npos);
  EXPECT_NE(r.err.find("n = 5"), std::string::npos);
}

TEST(CliEstimate, SinglePointAllMethods)
{
  const auto path = sample_file("f3.csv", "f3", "1", "1000");
  for (const char* m : {"gl", "cv", "rt", "GL"}) {
    const auto r = run({"estimate", "--data", path, "--method", m, "--x0", "0.3"});
    ASSERT_EQ(r.code, exit_ok) << m << ": " << r.err;
    const auto rows = lines_of(r.out);
    ASSERT_EQ(rows.size(), 2U);
    EXPECT_EQ(rows[0], "x,f_hat,h_hat");
    EXPECT_EQ(rows[1].rfind("0.29999999999999999,", 0), 0U);
  }
}

TEST(CliEstimate, GridAndDiagnostics)
{
  const auto path = sample_file("f1.csv", "f1", "2", "1000");
  const auto diag = scratch("diag.csv");
  const auto out = scratch("est.csv");
  const auto r = run({"estimate", "--data", path, "--grid", "11", "--out", out, "--diagnostics", diag,
                      "--kernel", "epanechnikov"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(lines_of(slurp(out)).size(), 12U);
  const auto d = lines_of(slurp(diag));
  EXPECT_EQ(d.front(), "x,h,f_hat_h,j_hat_n,m_hat_n,a_term");
  EXPECT_EQ(d.size(), 1U + 11U * 5U); // five bandwidths at n = 1000
}

TEST(CliEstimate, UsageErrors)
{
  const auto path = sample_file("u.csv", "f1", "1", "1000");
  EXPECT_EQ(run({"estimate", "--data", path, "--x0", "0.5", "--grid", "11"}).code, exit_usage);
  EXPECT_EQ(run({"estimate", "--data", path}).code, exit_usage);
  EXPECT_EQ(run({"estimate", "--data", path, "--x0", "0.5", "--method", "cv", "--diagnostics", scratch("d.csv")}).code,
            exit_usage);
  EXPECT_EQ(run({"estimate", "--data", path, "--x0", "0.5", "--method", "kde"}).code, exit_usage);
  EXPECT_EQ(run({"estimate", "--data", path, "--x0", "0.5", "--kernel", "gaussian"}).code, exit_usage);
  EXPECT_EQ(run({"estimate", "--data", "/nonexistent-dir/s.csv", "--x0", "0.5"}).code, exit_usage);
  EXPECT_EQ(run({"estimate", "--data", path, "--x0", "0.5", "--q", "-1"}).code, exit_usage);
}

TEST(CliEstimate, MalformedData)
{
  const auto path = scratch("bad.csv");
  std::ofstream(path) << "x\n0.1\nabc\n";
  const auto r = run({"estimate", "--data", path, "--x0", "0.5", "--method", "rt"});
  EXPECT_EQ(r.code, exit_runtime);
  EXPECT_NE(r.err.find("3"), std::string::npos);
}

TEST(CliBench, OneCellOneRow)
{
  const auto cfg = scratch("cfg.json");
  std::ofstream(cfg) << R"({"p": 2, "n": 300, "densities": ["f1"], "cases": [1], "methods": ["RT"]})";
  const auto r = run({"bench", "--config", cfg, "--no-timing"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  const auto rows = lines_of(r.out);
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_EQ(rows[0], "density,case,method,mean_ise,se_ise,mean_seconds,p,n,seed");
  EXPECT_EQ(rows[1].rfind("f1,1,RT,", 0), 0U);
}

TEST(CliBench, JsonByExtensionAndDump)
{
  const auto cfg = scratch("cfg2.json");
  std::ofstream(cfg) << R"({"p": 2, "n": 300, "densities": ["f2"], "cases": [2], "methods": ["GL", "CV"]})";
  const auto out = scratch("report.json");
  const auto dump = scratch("dump.csv");
  const auto r = run({"bench", "--config", cfg, "--out", out, "--dump", dump, "--no-timing", "--workers", "2"});
  ASSERT_EQ(r.code, exit_ok) << r.err;
  EXPECT_EQ(slurp(out).front(), '{');
  EXPECT_EQ(lines_of(slurp(dump)).size(), 5U);

  const auto again = scratch("report2.json");
  ASSERT_EQ(run({"bench", "--config", cfg, "--out", again, "--no-timing", "--workers", "1"}).code, exit_ok);
  EXPECT_EQ(slurp(out), slurp(again));

  const auto forced = run({"bench", "--config", cfg, "--format", "csv", "--replications", "1", "--n", "200"});
  ASSERT_EQ(forced.code, exit_ok) << forced.err;
  EXPECT_NE(forced.out.find(",1,200,20240601"), std::string::npos);
}

TEST(CliBench, Errors)
{
  const auto cfg = scratch("cfg3.json");
  std::ofstream(cfg) << R"({"p": 2, "unknown": true})";
  const auto r = run({"bench", "--config", cfg});
  EXPECT_EQ(r.code, exit_runtime);
  EXPECT_NE(r.err.find("unknown"), std::string::npos);
  EXPECT_EQ(run({"bench"}).code, exit_usage);
  EXPECT_EQ(run({"bench", "--config", cfg, "--format", "xml"}).code, exit_usage);
}

TEST(Cli, Help)
{
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, exit_ok);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
}

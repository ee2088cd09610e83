#include "glkde/bench.hpp"

#include "glkde/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace glkde {

using nlohmann::json;

namespace {

json
number_or_null(double v)
{
  return std::isnan(v) ? json(nullptr) : json(v);
}

double
number_from(const json& j)
{
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json
config_to_json(const BenchConfig& c)
{
  json methods = json::array();
  for (Method m : c.methods) {
    methods.push_back(std::string(method_name(m)));
  }
  json j{
    {"replications", c.replications},
    {"n", c.n},
    {"densities", c.densities},
    {"cases", c.cases},
    {"methods", methods},
    {"eval_grid_size", c.eval_grid_size},
    {"kernel", c.kernel},
    {"q", c.q},
    {"seed", c.seed},
    {"record_timing", c.record_timing},
  };
  if (c.delta_n_override) {
    j["delta_n"] = *c.delta_n_override;
  }
  return j;
}

BenchConfig
config_from_json(const json& j)
{
  if (!j.is_object()) {
    throw DomainError("bench config: expected a JSON object");
  }
  BenchConfig c;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "replications" || key == "p") {
        c.replications = value.get<std::size_t>();
      } else if (key == "n") {
        c.n = value.get<std::size_t>();
      } else if (key == "densities") {
        c.densities = value.get<std::vector<std::string>>();
      } else if (key == "cases") {
        c.cases = value.get<std::vector<int>>();
      } else if (key == "methods") {
        c.methods.clear();
        for (const auto& m : value) {
          c.methods.push_back(method_from_name(m.get<std::string>()));
        }
      } else if (key == "eval_grid_size") {
        c.eval_grid_size = value.get<std::size_t>();
      } else if (key == "kernel") {
        c.kernel = value.get<std::string>();
      } else if (key == "q") {
        c.q = value.get<double>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "delta_n") {
        if (!value.is_null()) {
          c.delta_n_override = value.get<double>();
        }
      } else if (key == "record_timing") {
        c.record_timing = value.get<bool>();
      } else {
        throw DomainError("bench config: unknown field '" + key + "'");
      }
    } catch (const json::exception& e) {
      throw DomainError("bench config: field '" + key + "' has the wrong type (" + e.what() + ")");
    }
  }
  c.validate();
  return c;
}

void
write_text(const std::string& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out << text;
  out.flush();
  if (!out) {
    throw IoError("failed writing '" + path + "'");
  }
}

std::string
read_text(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace

std::string
format_double(double value)
{
  if (std::isnan(value)) {
    return "nan";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string
report_csv(const BenchReport& report)
{
  std::string out = "density,case,method,mean_ise,se_ise,mean_seconds,p,n,seed\n";
  for (const auto& cell : report.cells) {
    out += cell.density + ',' + std::to_string(cell.dependence_case) + ',' +
           std::string(method_name(cell.method)) + ',' + format_double(cell.mean_ise) + ',' +
           format_double(cell.se_ise) + ',' + format_double(cell.mean_seconds) + ',' +
           std::to_string(report.config.replications) + ',' + std::to_string(report.config.n) +
           ',' + std::to_string(report.config.seed) + '\n';
  }
  return out;
}

std::string
report_json(const BenchReport& report)
{
  json cells = json::array();
  for (const auto& cell : report.cells) {
    json ise = json::array();
    for (double v : cell.ise) {
      ise.push_back(number_or_null(v));
    }
    cells.push_back({
      {"density", cell.density},
      {"case", cell.dependence_case},
      {"method", std::string(method_name(cell.method))},
      {"mean_ise", number_or_null(cell.mean_ise)},
      {"se_ise", number_or_null(cell.se_ise)},
      {"mean_seconds", number_or_null(cell.mean_seconds)},
      {"p", report.config.replications},
      {"n", report.config.n},
      {"seed", report.config.seed},
      {"failed", cell.failed},
      {"aborted", cell.aborted},
      {"first_error", cell.first_error},
      {"ise", ise},
    });
  }
  const json doc{{"config", config_to_json(report.config)}, {"cells", cells}};
  return doc.dump(2) + '\n';
}

std::string
replication_dump_csv(const BenchReport& report)
{
  std::string out = "density,case,method,replication,ise\n";
  for (const auto& cell : report.cells) {
    for (std::size_t r = 0; r < cell.ise.size(); ++r) {
      out += cell.density + ',' + std::to_string(cell.dependence_case) + ',' +
             std::string(method_name(cell.method)) + ',' + std::to_string(r) + ',' +
             format_double(cell.ise[r]) + '\n';
    }
  }
  return out;
}

void
write_report(const BenchReport& report, const std::string& path, ReportFormat format)
{
  write_text(path, format == ReportFormat::CSV ? report_csv(report) : report_json(report));
}

void
write_replication_dump(const BenchReport& report, const std::string& path)
{
  write_text(path, replication_dump_csv(report));
}

BenchReport
read_report_json(const std::string& path)
{
  json doc;
  try {
    doc = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw IoError("'" + path + "' is not valid JSON: " + e.what());
  }
  BenchReport report;
  try {
    report.config = config_from_json(doc.at("config"));
    for (const auto& c : doc.at("cells")) {
      CellResult cell;
      cell.density = c.at("density").get<std::string>();
      cell.dependence_case = c.at("case").get<int>();
      cell.method = method_from_name(c.at("method").get<std::string>());
      cell.mean_ise = number_from(c.at("mean_ise"));
      cell.se_ise = number_from(c.at("se_ise"));
      cell.mean_seconds = number_from(c.at("mean_seconds"));
      cell.failed = c.at("failed").get<std::size_t>();
      cell.aborted = c.at("aborted").get<bool>();
      cell.first_error = c.at("first_error").get<std::string>();
      for (const auto& v : c.at("ise")) {
        cell.ise.push_back(number_from(v));
      }
      report.cells.push_back(std::move(cell));
    }
  } catch (const json::exception& e) {
    throw IoError("'" + path + "' is not a bench report: " + e.what());
  }
  return report;
}

BenchConfig
bench_config_from_json_text(std::string_view text)
{
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("bench config is not valid JSON: ") + e.what());
  }
  return config_from_json(doc);
}

BenchConfig
read_bench_config(const std::string& path)
{
  try {
    return bench_config_from_json_text(read_text(path));
  } catch (const DomainError& e) {
    throw DomainError("'" + path + "': " + e.what());
  }
}

std::string
bench_config_to_json_text(const BenchConfig& config)
{
  return config_to_json(config).dump(2) + '\n';
}

} // namespace glkde

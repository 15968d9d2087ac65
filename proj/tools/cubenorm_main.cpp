#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cubenorm/bayes.hpp"
#include "cubenorm/density.hpp"
#include "cubenorm/format.hpp"
#include "cubenorm/khintchine.hpp"
#include "cubenorm/verify.hpp"
#include "json.hpp"

namespace {

using cubenorm::io::format_double;
using ordered_json = nlohmann::ordered_json;

constexpr const char* kToolName = "cubenorm";
constexpr const char* kToolVersion = "0.1.0";

struct OutputTarget {
  std::ofstream file;
  std::ostream& stream(const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file: " + path);
    return file;
  }
};

void parse_range(const std::string& text, double& lo, double& hi) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("range must have the form lo:hi");
  std::size_t used1 = 0;
  std::size_t used2 = 0;
  const std::string a = text.substr(0, colon);
  const std::string b = text.substr(colon + 1);
  try {
    lo = std::stod(a, &used1);
    hi = std::stod(b, &used2);
  } catch (const std::exception&) {
    throw std::invalid_argument("range endpoints must be real numbers");
  }
  if (used1 != a.size() || used2 != b.size() || a.empty() || b.empty())
    throw std::invalid_argument("range endpoints must be real numbers");
  if (!(lo < hi)) throw std::invalid_argument("range must satisfy lo < hi");
}

ordered_json base_meta(const char* command) {
  ordered_json meta;
  meta["tool"] = kToolName;
  meta["version"] = kToolVersion;
  meta["command"] = command;
  return meta;
}

double grid_coord(double lo, double hi, int i, int steps) {
  return (lo * (steps - 1 - i) + hi * i) / (steps - 1);
}

int run_grid(int p, const std::string& range, int steps, double tol, const std::string& format,
             const std::string& out) {
  double lo = 0.0;
  double hi = 0.0;
  parse_range(range, lo, hi);
  if (steps < 2) throw std::invalid_argument("steps must be >= 2");
  double cells = 1.0;
  for (int d = 0; d < p; ++d) cells *= steps;
  if (cells > 1e7) throw std::invalid_argument("grid too large: steps^p must be <= 1e7");
  const auto total = static_cast<std::int64_t>(cells);

  OutputTarget target;
  std::ostream& os = target.stream(out);

  std::vector<int> idx(p, 0);
  Eigen::VectorXd coords(p);
  ordered_json data = ordered_json::array();
  std::string csv;
  if (format == "csv") {
    for (int d = 0; d < p; ++d) csv += "x" + std::to_string(d + 1) + ",";
    csv += "density\n";
  }
  for (std::int64_t cell = 0; cell < total; ++cell) {
    for (int d = 0; d < p; ++d) coords[d] = grid_coord(lo, hi, idx[d], steps);
    cubenorm::DensityValue value = cubenorm::DensityValue::finite(0.0);
    try {
      value = cubenorm::density::density_p(cubenorm::Point(coords), tol);
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      std::string label;
      for (int d = 0; d < p; ++d) label += (d ? "," : "") + format_double(coords[d]);
      throw std::runtime_error("quadrature failed at grid cell (" + label + "): " + e.what());
    }
    if (format == "csv") {
      for (int d = 0; d < p; ++d) csv += format_double(coords[d]) + ",";
      csv += value.is_infinite() ? "inf" : format_double(value.value());
      csv += "\n";
    } else {
      ordered_json rec;
      rec["x"] = ordered_json::array();
      for (int d = 0; d < p; ++d) rec["x"].push_back(coords[d]);
      if (value.is_infinite()) rec["density"] = "inf";
      else rec["density"] = value.value();
      data.push_back(std::move(rec));
    }
    // mixed-radix increment, last axis fastest
    for (int d = p - 1; d >= 0; --d) {
      if (++idx[d] < steps) break;
      idx[d] = 0;
    }
  }

  if (format == "csv") {
    os << csv;
  } else {
    ordered_json doc;
    doc["meta"] = base_meta("grid");
    doc["meta"]["p"] = p;
    doc["meta"]["range"] = {lo, hi};
    doc["meta"]["steps"] = steps;
    doc["meta"]["tol"] = tol;
    doc["data"] = std::move(data);
    os << doc.dump(2) << "\n";
  }
  return 0;
}

int run_sample(int p, std::int64_t n, std::uint64_t seed, const std::string& format,
               const std::string& out) {
  const auto batch = cubenorm::khintchine::sample_joint(p, n, seed);
  OutputTarget target;
  std::ostream& os = target.stream(out);
  if (format == "csv") {
    std::string text;
    text += std::string("# tool: ") + kToolName + " " + kToolVersion + "\n";
    text += "# command: sample\n";
    text += "# generator_id: " + batch.generator_id + "\n";
    text += "# seed: " + std::to_string(seed) + "\n";
    text += "# p: " + std::to_string(p) + "\n";
    text += "# n: " + std::to_string(n) + "\n";
    for (int d = 0; d < p; ++d) text += (d ? ",x" : "x") + std::to_string(d + 1);
    text += "\n";
    for (std::int64_t i = 0; i < n; ++i) {
      for (int d = 0; d < p; ++d) {
        if (d) text += ",";
        text += format_double(batch.data(i, d));
      }
      text += "\n";
    }
    os << text;
  } else {
    ordered_json doc;
    doc["meta"] = base_meta("sample");
    doc["meta"]["generator_id"] = batch.generator_id;
    doc["meta"]["seed"] = seed;
    doc["meta"]["p"] = p;
    doc["meta"]["n"] = n;
    ordered_json data = ordered_json::array();
    for (std::int64_t i = 0; i < n; ++i) {
      ordered_json row = ordered_json::array();
      for (int d = 0; d < p; ++d) row.push_back(batch.data(i, d));
      data.push_back(std::move(row));
    }
    doc["data"] = std::move(data);
    os << doc.dump(2) << "\n";
  }
  return 0;
}

int run_posterior(double x1, double x2, int grid_size, const std::string& format,
                  const std::string& out) {
  const auto curve = cubenorm::bayes::posterior_curve(cubenorm::Point{x1, x2}, grid_size);
  OutputTarget target;
  std::ostream& os = target.stream(out);
  if (format == "csv") {
    std::string text;
    text += std::string("# tool: ") + kToolName + " " + kToolVersion + "\n";
    text += "# command: posterior\n";
    text += "# x1: " + format_double(x1) + "\n";
    text += "# x2: " + format_double(x2) + "\n";
    text += "# grid_size: " + std::to_string(grid_size) + "\n";
    text += "# normalization_residual: " + format_double(curve.normalization_residual) + "\n";
    text += "rho,density\n";
    for (int j = 0; j < curve.rho_grid.size(); ++j)
      text += format_double(curve.rho_grid[j]) + "," + format_double(curve.density_values[j]) +
              "\n";
    os << text;
  } else {
    ordered_json doc;
    doc["meta"] = base_meta("posterior");
    doc["meta"]["x"] = {x1, x2};
    doc["meta"]["grid_size"] = grid_size;
    doc["meta"]["normalization_residual"] = curve.normalization_residual;
    ordered_json data = ordered_json::array();
    for (int j = 0; j < curve.rho_grid.size(); ++j) {
      ordered_json rec;
      rec["rho"] = curve.rho_grid[j];
      rec["density"] = curve.density_values[j];
      data.push_back(std::move(rec));
    }
    doc["data"] = std::move(data);
    os << doc.dump(2) << "\n";
  }
  return 0;
}

int run_bf(double x1, double x2, const std::string& out) {
  const double bf = cubenorm::bayes::bayes_factor_rho0(cubenorm::Point{x1, x2});
  OutputTarget target;
  target.stream(out) << cubenorm::io::format_double_sig(bf, 15) << "\n";
  return 0;
}

// --- verify helpers ---------------------------------------------------------

cubenorm::khintchine::SampleBatch parse_sample_csv(const std::string& text) {
  cubenorm::khintchine::SampleBatch batch;
  batch.generator_id = "external";
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string key = line.substr(1, colon - 1);
      std::string val = line.substr(colon + 1);
      key.erase(0, key.find_first_not_of(' '));
      key.erase(key.find_last_not_of(' ') + 1);
      val.erase(0, val.find_first_not_of(' '));
      val.erase(val.find_last_not_of(' ') + 1);
      if (key == "seed") batch.seed = std::stoull(val);
      if (key == "generator_id") batch.generator_id = val;
      continue;
    }
    if (line[0] == 'x') continue;  // header row
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      std::size_t used = 0;
      const double v = std::stod(cell, &used);
      if (used != cell.size()) throw std::invalid_argument("malformed sample CSV cell: " + cell);
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("sample CSV rows have inconsistent widths");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("sample CSV contains no data rows");
  batch.data.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      batch.data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return batch;
}

cubenorm::khintchine::SampleBatch parse_sample_json(const std::string& text) {
  cubenorm::khintchine::SampleBatch batch;
  batch.generator_id = "external";
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("malformed sample JSON: ") + e.what());
  }
  if (doc.contains("meta")) {
    const auto& meta = doc["meta"];
    if (meta.contains("seed")) batch.seed = meta["seed"].get<std::uint64_t>();
    if (meta.contains("generator_id")) batch.generator_id = meta["generator_id"].get<std::string>();
  }
  if (!doc.contains("data") || !doc["data"].is_array() || doc["data"].empty())
    throw std::invalid_argument("sample JSON has no data rows");
  const auto& data = doc["data"];
  const auto n = static_cast<Eigen::Index>(data.size());
  const auto p = static_cast<Eigen::Index>(data.front().size());
  batch.data.resize(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = data[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != p)
      throw std::invalid_argument("sample JSON rows have inconsistent widths");
    for (Eigen::Index j = 0; j < p; ++j)
      batch.data(i, j) = row[static_cast<std::size_t>(j)].get<double>();
  }
  return batch;
}

int run_verify(const std::string& suites_arg, double tol, std::uint64_t seed,
               const std::string& out) {
  if (!(tol >= 1e-12)) throw std::invalid_argument("verify: tol must be >= 1e-12");
  std::vector<std::string> suites;
  {
    std::istringstream ss(suites_arg);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name.empty()) continue;
      if (name != "mixture" && name != "laplace" && name != "marginal" && name != "posterior" &&
          name != "sampler")
        throw std::invalid_argument("unknown suite: " + name);
      suites.push_back(name);
    }
  }
  if (suites.empty()) throw std::invalid_argument("no suites selected");

  const bool wants_sampler =
      std::find(suites.begin(), suites.end(), "sampler") != suites.end();
  std::string sample_source = "internal";
  cubenorm::khintchine::SampleBatch batch;
  if (wants_sampler) {
    std::string piped;
    if (!isatty(0)) {
      std::ostringstream buf;
      buf << std::cin.rdbuf();
      piped = buf.str();
    }
    const auto first = piped.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
      batch = cubenorm::verify::default_sampler_batch(seed);
    } else {
      sample_source = "stdin";
      batch = (piped[first] == '{') ? parse_sample_json(piped) : parse_sample_csv(piped);
    }
  }

  std::vector<cubenorm::verify::SuiteReport> reports;
  for (const auto& name : suites) {
    if (name == "mixture") reports.push_back(cubenorm::verify::run_mixture_suite(tol));
    else if (name == "laplace") reports.push_back(cubenorm::verify::run_laplace_suite());
    else if (name == "marginal") reports.push_back(cubenorm::verify::run_marginal_suite());
    else if (name == "posterior") reports.push_back(cubenorm::verify::run_posterior_suite());
    else reports.push_back(cubenorm::verify::run_sampler_suite(batch));
  }

  std::size_t total = 0;
  std::size_t failures = 0;
  ordered_json suites_json = ordered_json::array();
  for (const auto& rep : reports) {
    ordered_json sj;
    sj["suite"] = rep.suite;
    sj["passed"] = rep.all_passed();
    ordered_json checks = ordered_json::array();
    for (const auto& c : rep.checks) {
      ++total;
      if (!c.passed) ++failures;
      ordered_json cj;
      cj["name"] = c.name;
      cj["computed"] = c.computed;
      cj["reference"] = c.reference;
      cj["abs_error"] = c.abs_error;
      cj["threshold"] = c.threshold;
      cj["pass"] = c.passed;
      cj["trivial"] = c.trivially_passed;
      checks.push_back(std::move(cj));
    }
    sj["checks"] = std::move(checks);
    suites_json.push_back(std::move(sj));
  }

  ordered_json doc;
  doc["meta"] = base_meta("verify");
  doc["meta"]["suites"] = suites;
  doc["meta"]["tol"] = tol;
  doc["meta"]["seed"] = seed;
  doc["meta"]["sample_source"] = wants_sampler ? sample_source : "none";
  ordered_json summary;
  summary["checks"] = total;
  summary["failures"] = failures;
  summary["all_passed"] = failures == 0;
  doc["data"]["suites"] = std::move(suites_json);
  doc["data"]["summary"] = std::move(summary);

  OutputTarget target;
  target.stream(out) << doc.dump(2) << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypercubically-contoured densities with standard normal marginals"};
  app.require_subcommand(1);

  // grid
  auto* grid = app.add_subcommand("grid", "Evaluate the dimension-p density on a lattice");
  int grid_p = 2;
  std::string grid_range = "-3:3";
  int grid_steps = 61;
  double grid_tol = 1e-10;
  std::string grid_format = "csv";
  std::string grid_out;
  grid->add_option("-p,--dim", grid_p, "Dimension (1..6)")->check(CLI::Range(1, 6));
  grid->add_option("--range", grid_range, "Axis range lo:hi (default -3:3)");
  grid->add_option("--steps", grid_steps, "Lattice points per axis (default 61)");
  grid->add_option("--tol", grid_tol, "Quadrature tolerance for p >= 3 cells");
  grid->add_option("--format", grid_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  grid->add_option("--out", grid_out, "Output path (default stdout)");

  // sample
  auto* sample = app.add_subcommand("sample", "Draw joint samples X_i = Y*U_i");
  int sample_p = 2;
  std::int64_t sample_n = 0;
  std::uint64_t sample_seed = 1;
  std::string sample_format = "csv";
  std::string sample_out;
  sample->add_option("-p,--dim", sample_p, "Dimension (default 2)");
  sample->add_option("-n,--count", sample_n, "Number of rows")->required();
  sample->add_option("--seed", sample_seed, "Generator seed (default 1)");
  sample->add_option("--format", sample_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sample->add_option("--out", sample_out, "Output path (default stdout)");

  // posterior
  auto* posterior =
      app.add_subcommand("posterior", "Posterior density of the correlation on a Chebyshev grid");
  double post_x1 = 0.0;
  double post_x2 = 0.0;
  int post_grid = 64;
  std::string post_format = "csv";
  std::string post_out;
  posterior->add_option("x1", post_x1, "First coordinate")->required();
  posterior->add_option("x2", post_x2, "Second coordinate")->required();
  posterior->add_option("grid_size,--grid-size", post_grid, "Grid size (default 64, min 16)");
  posterior->add_option("--format", post_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  posterior->add_option("--out", post_out, "Output path (default stdout)");

  // bf
  auto* bf = app.add_subcommand("bf", "Bayes factor for zero correlation");
  double bf_x1 = 0.0;
  double bf_x2 = 0.0;
  std::string bf_out;
  bf->add_option("x1", bf_x1, "First coordinate")->required();
  bf->add_option("x2", bf_x2, "Second coordinate")->required();
  bf->add_option("--out", bf_out, "Output path (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run verification suites and emit a JSON report");
  std::string verify_suites = "mixture,laplace,marginal,posterior,sampler";
  double verify_tol = 1e-8;
  std::uint64_t verify_seed = 1;
  std::string verify_out;
  verify->add_option("--suites", verify_suites, "Comma-separated suite list");
  verify->add_option("--tol", verify_tol, "Mixture-suite comparison threshold (default 1e-8)");
  verify->add_option("--seed", verify_seed, "Seed for the internally generated sample");
  verify->add_option("--out", verify_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*grid) return run_grid(grid_p, grid_range, grid_steps, grid_tol, grid_format, grid_out);
    if (*sample) return run_sample(sample_p, sample_n, sample_seed, sample_format, sample_out);
    if (*posterior) return run_posterior(post_x1, post_x2, post_grid, post_format, post_out);
    if (*bf) return run_bf(bf_x1, bf_x2, bf_out);
    if (*verify) return run_verify(verify_suites, verify_tol, verify_seed, verify_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

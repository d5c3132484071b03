// vamoma: command-line driver for the radial vanishing-moment solver.
//
// Subcommands: solve, sweep, concave, exact. Exit codes: 0 success,
// 1 configuration error, 2 numerical failure.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "vamoma/io.hpp"
#include "vamoma/vamoma.hpp"

namespace fs = std::filesystem;
using namespace vamoma;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string benchmark = "paper-sec7";
  std::string f_samples;
  int n = 2;
  double R = 1.0;
  std::optional<double> gR;
  std::vector<double> eps;
  std::vector<std::size_t> elements;

  double tol = 1e-10;
  std::size_t max_iter = 200;
  std::string scheme = "picard";
  double damping = 1.0;
  double neg_clip = 1e-10;
  std::string unknown = "scaled-flux";

  std::string out = ".";
  std::string format = "csv";
  std::size_t samples = 1001;
  bool verbose = false;
  unsigned jobs = 1;

  std::string mode = "eps";
  std::size_t reference_elements = 1024;
  std::string branch = "convex";
};

std::mutex log_mutex;

void log_line(const std::string& s) {
  std::lock_guard<std::mutex> lock(log_mutex);
  std::cerr << s << '\n';
}

// ---------------------------------------------------------------------------
// Config to library objects

ProblemSpec make_problem(const RunConfig& c, double eps) {
  if (c.f_samples.empty()) return make_benchmark_problem(c.benchmark, c.n, c.R, eps, c.gR);
  auto [r, f] = io::read_samples_csv(c.f_samples);
  ProblemSpec spec;
  spec.n = c.n;
  spec.radius = c.R;
  spec.source = sampled_source(std::move(r), std::move(f));
  spec.boundary_value = c.gR.value_or(0.0);
  spec.epsilon = eps;
  spec.validate();
  return spec;
}

SolveConfig solver_config(const RunConfig& c, const std::string& tag) {
  SolveConfig s;
  s.tol = c.tol;
  s.max_iter = c.max_iter;
  s.damping = c.damping;
  s.neg_clip = c.neg_clip;
  if (c.scheme == "picard") {
    s.scheme = Scheme::picard;
  } else if (c.scheme == "newton") {
    s.scheme = Scheme::newton;
  } else {
    s.scheme = Scheme::picard_then_newton;
  }
  s.unknown = c.unknown == "flux" ? Unknown::flux : Unknown::scaled_flux;
  if (c.verbose) {
    s.observer = [tag](const IterationRecord& r) {
      char buf[256];
      std::snprintf(buf, sizeof buf, "%s iter %3zu %-6s update %.3e damping %.3g min ratio %.3e", tag.c_str(),
                    r.iteration, r.kind.c_str(), r.update_norm, r.damping, r.min_nodal_ratio);
      log_line(buf);
    };
  }
  s.validate();
  return s;
}

std::shared_ptr<const RadialMesh> make_mesh(double R, std::size_t elements) {
  return std::make_shared<const RadialMesh>(build_uniform_mesh(R, elements));
}

double single(const std::vector<double>& v, double fallback, const char* name) {
  if (v.empty()) return fallback;
  if (v.size() > 1) throw ConfigError(std::string("--") + name + " takes a single value for this subcommand");
  return v.front();
}

std::size_t single(const std::vector<std::size_t>& v, std::size_t fallback, const char* name) {
  if (v.empty()) return fallback;
  if (v.size() > 1) throw ConfigError(std::string("--") + name + " takes a single value for this subcommand");
  return v.front();
}

json problem_json(const RunConfig& c, const ProblemSpec& spec, std::optional<std::size_t> elements) {
  json j;
  if (c.f_samples.empty()) {
    j["benchmark"] = c.benchmark;
  } else {
    j["f_samples"] = c.f_samples;
  }
  j["n"] = spec.n;
  j["R"] = io::number(spec.radius);
  j["gR"] = io::number(spec.boundary_value);
  j["epsilon"] = io::number(spec.epsilon);
  if (elements) j["elements"] = *elements;
  return j;
}

json solver_json(const RunConfig& c) {
  json j;
  j["tol"] = io::number(c.tol);
  j["max_iter"] = c.max_iter;
  j["scheme"] = c.scheme;
  j["damping"] = io::number(c.damping);
  j["neg_clip"] = io::number(c.neg_clip);
  j["unknown"] = c.unknown;
  return j;
}

json errors_json(const ErrorReport& e) {
  json j;
  j["l2"] = io::number(e.l2);
  j["h1_weighted"] = io::number(e.h1_weighted);
  j["h1_theta"] = io::number(e.h1_theta);
  j["laplacian_l2"] = io::number(e.laplacian_l2);
  j["sup_interior"] = io::number(e.sup_interior);
  j["sup_window"] = json::array({io::number(e.sup_lo), io::number(e.sup_hi)});
  return j;
}

ErrorOptions interior_window(double R) {
  ErrorOptions o;
  o.sup_lo = 0.1 * R;
  o.sup_hi = 0.9 * R;
  return o;
}

template <RadialProfile Profile>
void write_profile(const RunConfig& c, const Profile& p) {
  const fs::path dir(c.out);
  if (c.format == "csv") {
    io::write_solution_csv((dir / "solution.csv").string(), p, c.samples);
    return;
  }
  if (c.samples < 2) throw InvalidArgument("need at least 2 samples");
  json cols;
  json r = json::array(), u = json::array(), ur = json::array(), urr = json::array(), lap = json::array();
  const double R = p.radius();
  for (std::size_t j = 0; j < c.samples; ++j) {
    const double x = (j + 1 == c.samples) ? R : R * static_cast<double>(j) / static_cast<double>(c.samples - 1);
    r.push_back(io::number(x));
    u.push_back(io::number(p.u(x)));
    ur.push_back(io::number(p.u_r(x)));
    urr.push_back(io::number(p.u_rr(x)));
    lap.push_back(io::number(p.laplacian(x)));
  }
  cols["r"] = std::move(r);
  cols["u"] = std::move(u);
  cols["u_r"] = std::move(ur);
  cols["u_rr"] = std::move(urr);
  cols["laplacian"] = std::move(lap);
  io::write_json((dir / "solution.json").string(), cols);
}

void prepare_output(const RunConfig& c) {
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec || !fs::is_directory(c.out)) throw ConfigError("cannot create output directory '" + c.out + "'");
}

void print_solve_summary(const char* what, const SolveReport& rep, const ConvexityReport& conv) {
  std::printf("%s: %s after %zu iterations (picard %zu, newton %zu), strong residual %.3e\n", what,
              rep.converged ? "converged" : "NOT converged", rep.iterations, rep.picard_iterations,
              rep.newton_iterations, rep.strong_residual);
  std::printf("Laplacian(R) = %.6e, min Laplacian = %.6e, layer width = %.3e\n", conv.boundary_laplacian,
              conv.min_laplacian, conv.layer_width);
}

// ---------------------------------------------------------------------------
// solve / concave

int run_branch(const RunConfig& c, Branch branch) {
  const double eps = single(c.eps, 0.1, "eps");
  const std::size_t ne = single(c.elements, 250, "elements");
  ProblemSpec spec = make_problem(c, eps);
  if (branch == Branch::concave && spec.n % 2 != 0) {
    throw UnsupportedBranch("concave: no concave solution exists in odd dimension n = " +
                            std::to_string(spec.n) +
                            "; a concave function has all Hessian eigenvalues <= 0, so for odd n "
                            "det D^2 u <= 0 and det D^2 u = f > 0 cannot hold");
  }
  prepare_output(c);
  auto mesh = make_mesh(spec.radius, ne);
  const char* name = branch == Branch::convex ? "solve" : "concave";
  json report;
  report["command"] = name;
  report["problem"] = problem_json(c, spec, ne);
  report["solver"] = solver_json(c);
  const fs::path dir(c.out);

  std::optional<RadialSolve> res;
  try {
    const SolveConfig cfg = solver_config(c, name);
    res = branch == Branch::convex ? solve_convex(spec, mesh, cfg) : solve_concave(spec, mesh, cfg);
  } catch (const PositivityViolation& e) {
    report["error"] = e.what();
  } catch (const SingularSystem& e) {
    report["error"] = e.what();
  }
  if (!res) {
    io::write_json((dir / "report.json").string(), report);
    std::cerr << "error: " << report["error"].get<std::string>() << '\n';
    return kExitNumerical;
  }

  const SolutionField& sf = res->solution;
  const ConvexityReport conv = convexity_report(sf, convexity_samples(*mesh, eps));
  report["report"] = io::to_json(res->report);
  report["boundary_laplacian"] = io::number(sf.laplacian(spec.radius));
  ExactSolution exact(spec, branch);
  report["exact_errors"] = errors_json(compute_errors(exact, sf, *mesh, interior_window(spec.radius)));
  if (branch == Branch::concave) {
    double max_ur = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < c.samples; ++j) {
      max_ur = std::max(max_ur, sf.u_r(spec.radius * static_cast<double>(j) / static_cast<double>(c.samples - 1)));
    }
    report["max_u_r"] = io::number(max_ur);
  }

  write_profile(c, sf);
  io::write_json((dir / "report.json").string(), report);
  io::write_json((dir / "convexity.json").string(), io::to_json(conv));
  print_solve_summary(name, res->report, conv);
  return res->report.converged ? kExitOk : kExitNumerical;
}

// ---------------------------------------------------------------------------
// sweep

struct PointResult {
  io::ErrorRow row;
  std::string error;
};

/// Runs task(i) for i in [0, count) on up to `jobs` threads. Each task
/// writes only its own slot.
std::vector<PointResult> run_points(std::size_t count, unsigned jobs,
                                    const std::function<PointResult(std::size_t)>& task) {
  std::vector<PointResult> results(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = task(i);
      } catch (const std::exception& e) {
        results[i].row.converged = false;
        results[i].error = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

io::ErrorRow failed_row(double eps, double h) {
  io::ErrorRow row;
  row.epsilon = eps;
  row.h = h;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  row.errors = {nan, nan, nan, nan, nan, nan, nan};
  row.converged = false;
  return row;
}

int run_sweep(const RunConfig& c) {
  const bool eps_mode = c.mode == "eps";
  std::vector<double> eps = c.eps;
  std::vector<std::size_t> elements = c.elements;
  if (eps_mode) {
    if (eps.empty()) eps = {1e-1, 1e-2, 1e-3, 1e-4};
    if (elements.empty()) elements = {512};
    if (eps.size() < 3) throw ConfigError("sweep: need at least 3 epsilon values, got " + std::to_string(eps.size()));
    for (std::size_t i = 1; i < eps.size(); ++i) {
      if (!(eps[i] < eps[i - 1])) throw ConfigError("sweep: epsilon list must be strictly decreasing");
    }
    if (elements.size() != 1) throw ConfigError("sweep: epsilon mode takes a single --elements value");
  } else {
    if (eps.empty()) eps = {1e-1};
    if (elements.empty()) elements = {32, 64, 128, 256};
    if (eps.size() != 1) throw ConfigError("sweep: h mode takes a single --eps value");
    if (elements.size() < 3) {
      throw ConfigError("sweep: h mode needs at least 3 element counts, got " + std::to_string(elements.size()));
    }
    for (std::size_t i = 1; i < elements.size(); ++i) {
      if (!(elements[i] > elements[i - 1])) throw ConfigError("sweep: element counts must be strictly increasing");
    }
    if (c.reference_elements <= elements.back()) {
      throw ConfigError("sweep: --reference-elements must exceed every element count");
    }
  }
  for (double e : eps) {
    if (!(e > 0.0)) throw ConfigError("sweep: epsilon values must be positive");
  }
  // validate the problem once on the main thread so config errors exit 1
  const ProblemSpec base = make_problem(c, eps.front());
  solver_config(c, "");
  prepare_output(c);

  std::vector<PointResult> results;
  json summary;
  summary["command"] = "sweep";
  summary["mode"] = c.mode;
  summary["problem"] = problem_json(c, base, std::nullopt);
  summary["solver"] = solver_json(c);

  if (eps_mode) {
    auto mesh = make_mesh(base.radius, elements.front());
    summary["elements"] = elements.front();
    results = run_points(eps.size(), c.jobs, [&](std::size_t i) {
      PointResult out;
      const ProblemSpec spec = make_problem(c, eps[i]);
      char tag[64];
      std::snprintf(tag, sizeof tag, "eps=%.3g", eps[i]);
      RadialSolve res = solve_convex(spec, mesh, solver_config(c, tag));
      ExactSolution exact(spec, Branch::convex);
      out.row = {eps[i], mesh->max_length(), compute_errors(exact, res.solution, *mesh, interior_window(spec.radius)),
                 res.report.iterations, res.report.converged};
      return out;
    });
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (!results[i].error.empty()) results[i].row = failed_row(eps[i], mesh->max_length());
    }
  } else {
    const ProblemSpec spec = base;
    auto ref_mesh = make_mesh(spec.radius, c.reference_elements);
    std::optional<RadialSolve> ref;
    try {
      ref = solve_convex(spec, ref_mesh, solver_config(c, "reference"));
    } catch (const PositivityViolation& e) {
      std::cerr << "error: reference solve failed: " << e.what() << '\n';
    } catch (const SingularSystem& e) {
      std::cerr << "error: reference solve failed: " << e.what() << '\n';
    }
    if (!ref || !ref->report.converged) {
      summary["error"] = "reference solve did not converge";
      io::write_json((fs::path(c.out) / "rates_summary.json").string(), summary);
      if (ref) std::cerr << "error: reference solve did not converge\n";
      return kExitNumerical;
    }
    summary["reference_elements"] = c.reference_elements;
    results = run_points(elements.size(), c.jobs, [&](std::size_t i) {
      PointResult out;
      auto mesh = make_mesh(spec.radius, elements[i]);
      RadialSolve res = solve_convex(spec, mesh, solver_config(c, "elements=" + std::to_string(elements[i])));
      out.row = {spec.epsilon, mesh->max_length(),
                 compute_errors(ref->solution, res.solution, *mesh, interior_window(spec.radius)),
                 res.report.iterations, res.report.converged};
      return out;
    });
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (!results[i].error.empty()) results[i].row = failed_row(spec.epsilon, spec.radius / elements[i]);
    }
  }

  std::vector<io::ErrorRow> rows;
  json flagged = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    rows.push_back(results[i].row);
    if (!results[i].row.converged) {
      json f;
      f["row"] = i;
      f["reason"] = results[i].error.empty() ? "did not converge" : results[i].error;
      flagged.push_back(std::move(f));
    }
  }

  using Getter = double (*)(const ErrorReport&);
  const std::vector<std::pair<const char*, Getter>> norms{
      {"l2", [](const ErrorReport& e) { return e.l2; }},
      {"h1_weighted", [](const ErrorReport& e) { return e.h1_weighted; }},
      {"h1_theta", [](const ErrorReport& e) { return e.h1_theta; }},
      {"laplacian_l2", [](const ErrorReport& e) { return e.laplacian_l2; }},
      {"sup_interior", [](const ErrorReport& e) { return e.sup_interior; }}};
  json fits;
  std::size_t usable = 0;
  for (const auto& r : rows) usable += r.converged ? 1 : 0;
  for (const auto& [name, get] : norms) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) {
      const double y = get(r.errors);
      if (r.converged && std::isfinite(y) && y > 0.0) pts.emplace_back(eps_mode ? r.epsilon : r.h, y);
    }
    fits[name] = pts.size() >= 3 ? io::to_json(fit_rate(pts)) : json(nullptr);
  }

  const fs::path dir(c.out);
  if (c.format == "csv") {
    io::write_rates_csv((dir / "rates.csv").string(), rows);
  } else {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(io::to_json(r));
    io::write_json((dir / "rates.json").string(), arr);
  }
  json table = json::array();
  for (const auto& r : rows) table.push_back(io::to_json(r));
  summary["rows"] = std::move(table);
  summary["flagged"] = std::move(flagged);
  summary["fit_variable"] = eps_mode ? "epsilon" : "h";
  summary["fits"] = fits;
  io::write_json((dir / "rates_summary.json").string(), summary);

  std::printf("%-12s %-12s %-12s %-12s %-12s %-12s %s\n", eps_mode ? "epsilon" : "h", "L2", "H1(theta)",
              "Laplacian", "sup", "iterations", "converged");
  for (const auto& r : rows) {
    std::printf("%-12.4e %-12.4e %-12.4e %-12.4e %-12.4e %-12zu %s\n", eps_mode ? r.epsilon : r.h, r.errors.l2,
                r.errors.h1_theta, r.errors.laplacian_l2, r.errors.sup_interior, r.iterations,
                r.converged ? "yes" : "no");
  }
  for (const auto& [name, get] : norms) {
    if (fits[name].is_null()) {
      std::printf("slope %-13s n/a (fewer than 3 usable rows)\n", name);
    } else {
      std::printf("slope %-13s %.4f\n", name, fits[name]["slope"].get<double>());
    }
  }
  if (usable < 3) {
    std::cerr << "error: only " << usable << " converged sweep points; at least 3 are needed for a rate fit\n";
    return kExitNumerical;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// exact

int run_exact(const RunConfig& c) {
  const Branch branch = c.branch == "concave" ? Branch::concave : Branch::convex;
  ProblemSpec spec = make_problem(c, single(c.eps, 0.1, "eps"));
  ExactSolution exact(spec, branch);
  prepare_output(c);
  json report;
  report["command"] = "exact";
  json problem = problem_json(c, spec, std::nullopt);
  problem.erase("epsilon");
  report["problem"] = std::move(problem);
  report["branch"] = c.branch;
  report["manufactured_residual"] = nullptr;
  if (c.f_samples.empty() && branch == Branch::convex) {
    report["manufactured_residual"] = io::number(validate_manufactured(spec, 1000));
    if (auto analytic = find_benchmark(c.benchmark).analytic(spec.n, spec.radius, spec.boundary_value)) {
      double diff = 0.0;
      for (std::size_t j = 0; j <= 1000; ++j) {
        const double r = spec.radius * static_cast<double>(j) / 1000.0;
        diff = std::max(diff, std::abs(exact.u(r) - analytic->u(r)));
      }
      report["max_abs_vs_closed_form"] = io::number(diff);
    }
  }
  write_profile(c, exact);
  io::write_json((fs::path(c.out) / "report.json").string(), report);
  std::printf("exact %s profile: u(0) = %.15g, u(R) = %.15g\n", c.branch.c_str(), exact.u(0.0),
              exact.u(spec.radius));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Radial Monge-Ampere solver by the vanishing moment method"};
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "Read options from a key=value file (flags take precedence)");
  app.allow_config_extras(CLI::config_extras_mode::error);

  app.add_option("--benchmark", c.benchmark, "Registered problem: " + benchmark_names())->capture_default_str();
  app.add_option("--f-samples", c.f_samples, "CSV file of (r, f) samples, linearly interpolated")
      ->check(CLI::ExistingFile);
  app.add_option("--n", c.n, "Space dimension")->check(CLI::Range(2, 64))->capture_default_str();
  app.add_option("--R", c.R, "Ball radius")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--gR", c.gR, "Boundary value g(R) (default: benchmark's)");
  app.add_option("--eps", c.eps, "Perturbation parameter(s) epsilon")->check(CLI::PositiveNumber)->delimiter(',');
  app.add_option("--elements", c.elements, "Number(s) of uniform elements")
      ->check(CLI::PositiveNumber)
      ->delimiter(',');
  app.add_option("--tol", c.tol, "Update-norm tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--max-iter", c.max_iter, "Iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--scheme", c.scheme, "Nonlinear scheme")
      ->check(CLI::IsMember({"picard", "newton", "picard-then-newton"}))
      ->capture_default_str();
  app.add_option("--damping", c.damping, "Initial Picard damping in (0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--neg-clip", c.neg_clip, "Relative negativity tolerance for iterates")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--unknown", c.unknown, "Discrete unknown")
      ->check(CLI::IsMember({"flux", "scaled-flux"}))
      ->capture_default_str();
  app.add_option("--out", c.out, "Output directory")->capture_default_str();
  app.add_option("--format", c.format, "Output format for profiles and tables")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--samples", c.samples, "Profile sample count")->check(CLI::Range(2, 100000000))->capture_default_str();
  app.add_flag("--verbose", c.verbose, "Print the iteration history to stderr");
  app.add_option("--jobs", c.jobs, "Concurrent sweep points")
      ->envname("VAMOMA_JOBS")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();

  auto* solve = app.add_subcommand("solve", "Solve the convex branch and write profile and reports");
  auto* sweep = app.add_subcommand("sweep", "Error table and rate fits over epsilon or h");
  sweep->add_option("--mode", c.mode, "Sweep variable")->check(CLI::IsMember({"eps", "h"}))->capture_default_str();
  sweep->add_option("--reference-elements", c.reference_elements, "Reference mesh for the h mode")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* concave = app.add_subcommand("concave", "Solve the concave branch (even n only)");
  auto* exact = app.add_subcommand("exact", "Sample the closed-form solution");
  exact->add_option("--branch", c.branch, "Exact branch")
      ->check(CLI::IsMember({"convex", "concave"}))
      ->capture_default_str();
  for (auto* sub : {solve, sweep, concave, exact}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (!c.f_samples.empty() && app.count("--benchmark") > 0) {
      throw ConfigError("--benchmark and --f-samples are mutually exclusive");
    }
    if (*solve) return run_branch(c, Branch::convex);
    if (*concave) return run_branch(c, Branch::concave);
    if (*sweep) return run_sweep(c);
    return run_exact(c);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UnsupportedBranch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const PreconditionViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

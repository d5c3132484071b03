#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vamoma/analysis.hpp"
#include "vamoma/errors.hpp"
#include "vamoma/reconstruction.hpp"
#include "vamoma/solver.hpp"

namespace vamoma::io {

using json = nlohmann::ordered_json;

/// 17 significant digits, '.' decimal point, independent of the locale.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Locale-free parse of a full token; throws InvalidArgument on junk.
inline double parse_double(const std::string& token) {
  std::size_t b = token.find_first_not_of(" \t\r");
  std::size_t e = token.find_last_not_of(" \t\r");
  if (b == std::string::npos) throw InvalidArgument("expected a number, got an empty field");
  const char* first = token.data() + b;
  const char* last = token.data() + e + 1;
  if (*first == '+') ++first;
  double value = 0.0;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw InvalidArgument("expected a number, got '" + token + "'");
  }
  return value;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw InvalidArgument("cannot open '" + path + "' for writing");
  }

  void header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << names[i];
    out_ << '\n';
  }

  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

/// Samples r_j = j R / (N - 1), j = 0..N-1, with columns r, u, u_r, u_rr, laplacian.
template <RadialProfile Profile>
void write_solution_csv(const std::string& path, const Profile& sf, std::size_t samples) {
  if (samples < 2) throw InvalidArgument("write_solution_csv: need at least 2 samples");
  CsvWriter csv(path);
  csv.header({"r", "u", "u_r", "u_rr", "laplacian"});
  const double R = sf.radius();
  for (std::size_t j = 0; j < samples; ++j) {
    const double r = (j + 1 == samples) ? R : R * static_cast<double>(j) / static_cast<double>(samples - 1);
    csv.row({r, sf.u(r), sf.u_r(r), sf.u_rr(r), sf.laplacian(r)});
  }
}

/// JSON numbers cannot hold inf/nan; those become strings.
inline json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

inline json to_json(const SolveReport& rep) {
  json j;
  j["converged"] = rep.converged;
  j["iterations"] = rep.iterations;
  j["picard_iterations"] = rep.picard_iterations;
  j["newton_iterations"] = rep.newton_iterations;
  j["final_update_norm"] = number(rep.update_norms.empty() ? 0.0 : rep.update_norms.back());
  j["strong_residual"] = number(rep.strong_residual);
  j["min_nodal_value"] = number(rep.min_nodal_value);
  j["min_nodal_ratio"] = number(rep.min_nodal_ratio);
  j["final_damping"] = number(rep.final_damping);
  json norms = json::array();
  for (double v : rep.update_norms) norms.push_back(number(v));
  j["update_norms"] = std::move(norms);
  return j;
}

inline json to_json(const ConvexityReport& rep) {
  json j;
  j["samples"] = rep.samples;
  j["min_laplacian"] = number(rep.min_laplacian);
  j["min_u_rr"] = number(rep.min_u_rr);
  j["min_u_rr_inside"] = number(rep.min_u_rr_inside);
  j["layer_width"] = number(rep.layer_width);
  j["boundary_laplacian"] = number(rep.boundary_laplacian);
  return j;
}

/// One row of an error table.
struct ErrorRow {
  double epsilon = 0.0;
  double h = 0.0;
  ErrorReport errors;
  std::size_t iterations = 0;
  bool converged = true;
};

inline json to_json(const ErrorRow& row) {
  json j;
  j["epsilon"] = number(row.epsilon);
  j["h"] = number(row.h);
  j["l2"] = number(row.errors.l2);
  j["h1_weighted"] = number(row.errors.h1_weighted);
  j["h1_theta"] = number(row.errors.h1_theta);
  j["laplacian_l2"] = number(row.errors.laplacian_l2);
  j["sup_interior"] = number(row.errors.sup_interior);
  j["iterations"] = row.iterations;
  j["converged"] = row.converged;
  return j;
}

inline json to_json(const RateFit& fit) {
  json j;
  j["slope"] = number(fit.slope);
  j["intercept"] = number(fit.intercept);
  j["residual"] = number(fit.residual);
  j["points"] = fit.points.size();
  return j;
}

inline void write_json(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
}

inline void write_rates_csv(const std::string& path, const std::vector<ErrorRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
  out << "epsilon,h,l2,h1_weighted,h1_theta,laplacian_l2,sup_interior,iterations,converged\n";
  for (const auto& r : rows) {
    out << format_double(r.epsilon) << ',' << format_double(r.h) << ',' << format_double(r.errors.l2)
        << ',' << format_double(r.errors.h1_weighted) << ',' << format_double(r.errors.h1_theta) << ','
        << format_double(r.errors.laplacian_l2) << ',' << format_double(r.errors.sup_interior) << ','
        << r.iterations << ',' << (r.converged ? 1 : 0) << '\n';
  }
}

/// Two-column (r, f) samples. Blank lines, '#' comments and a non-numeric
/// header line are skipped.
inline std::pair<std::vector<double>, std::vector<double>> read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open f-samples file '" + path + "'");
  std::vector<double> r, f;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected 'r,f'");
    }
    try {
      const double rv = parse_double(line.substr(0, comma));
      const double fv = parse_double(line.substr(comma + 1));
      r.push_back(rv);
      f.push_back(fv);
    } catch (const InvalidArgument&) {
      if (r.empty() && lineno == 1) continue;  // header
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": malformed sample '" + line + "'");
    }
  }
  return {std::move(r), std::move(f)};
}

}  // namespace vamoma::io

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trispec/operator.hpp"
#include "trispec/spectrum.hpp"
#include "trispec/substitution.hpp"

namespace trispec {

/// One command's output: a JSON summary plus named files (CSV, PPM).
struct Report {
  std::string json;
  std::vector<std::pair<std::string, std::string>> files;
};

/// Knobs shared by the report builders. Zero means "derive a default".
struct RunConfig {
  JacobiParams params{1.0, 2.0};
  int k = 10;
  std::optional<std::pair<double, double>> range;
  double tol_rel = 0.0;
  std::uint64_t seed = 1;
  std::size_t L = 0;
  std::size_t samples = 200;
  std::size_t grid = 1024;
  int windows = 8;
  std::size_t prefix = 64;
  long long m_max = 34;
  double label_tol = 0.0;
  std::optional<double> V;
  int resolution = 256;
  int max_steps = 40;
  double surface_lo = -2.0;
  double surface_hi = 2.0;
};

enum class ScanVariable { p, q };

/// 17 significant digits, the one float format used by every writer.
std::string format_real(double v);

/// RFC-4180 table: CRLF line ends, fields quoted when they contain , " CR or LF.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  CsvTable& row(std::vector<std::string> fields);
  std::string str() const;

 private:
  std::string text_;
  std::size_t width_;
};

std::string ppm_p6(int width, int height, const std::vector<std::uint8_t>& rgb);

/// Smallest |s^n(star)| that is at least `at_least`.
std::size_t natural_length(const Substitution& s, std::size_t at_least);

Report subst_report(const Substitution& s, std::size_t prefix);
Report spectrum_report(const Substitution& s, const RunConfig& c);
Report gaps_report(const Substitution& s, const RunConfig& c);
Report dims_report(const Substitution& s, const RunConfig& c);
Report dos_report(const Substitution& s, const RunConfig& c);
Report surface_report(const Substitution& s, const RunConfig& c);
Report scan_report(const Substitution& s, const RunConfig& c, ScanVariable var,
                   const std::vector<double>& values, std::optional<long long> label);

}  // namespace trispec

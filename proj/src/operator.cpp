#include "trispec/operator.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "trispec/error.hpp"
#include "lapack.hpp"

namespace trispec {

void validate(const JacobiParams& params) {
  if (!(params.p != 0.0) || !std::isfinite(params.p))
    fail(ErrorCode::invalid_argument, "hopping p must be finite and nonzero");
  if (!std::isfinite(params.q)) fail(ErrorCode::invalid_argument, "potential q must be finite");
}

Mat2 transfer_unimodular(const JacobiParams& params, Letter letter_n, Letter letter_np1, double E) {
  const double pn1 = params.hopping(letter_np1);
  const double qn = params.potential(letter_n);
  return {(E - qn) / pn1, -1.0 / pn1, pn1, 0.0};
}

Mat2 transfer_solution(const JacobiParams& params, Letter letter_n, Letter letter_np1, double E) {
  const double pn1 = params.hopping(letter_np1);
  const double pn = params.hopping(letter_n);
  const double qn = params.potential(letter_n);
  return {(E - qn) / pn1, -pn / pn1, 1.0, 0.0};
}

Mat2 word_transfer(const JacobiParams& params, const Word& word, double E) {
  validate(params);
  if (word.empty()) fail(ErrorCode::invalid_argument, "empty word");
  Mat2 m;
  const std::size_t n = word.size();
  for (std::size_t i = 0; i < n; ++i) m = transfer_unimodular(params, word[i], word[(i + 1) % n], E) * m;
  if (!std::isfinite(m.a) || !std::isfinite(m.b) || !std::isfinite(m.c) || !std::isfinite(m.d))
    fail(ErrorCode::overflow, "transfer matrix product overflowed");
  return m;
}

Point3 initial_conditions(const JacobiParams& params, double E) {
  validate(params);
  const double p = params.p, q = params.q;
  return {(E * E - q * E - p * p - 1) / (2 * p), (E - q) / (2 * p), E / 2};
}

Point3 trace_coordinates(const JacobiParams& params, double E) {
  validate(params);
  return trace_coordinates<double>(params.p, params.q, E);
}

double curve_invariant(const JacobiParams& params, double E) {
  validate(params);
  const double p2 = params.p * params.p;
  const double q = params.q;
  return (q * (p2 - 1) * E + q * q + (p2 - 1) * (p2 - 1)) / (4 * p2);
}

double invariant_slope(const JacobiParams& params) {
  validate(params);
  const double p2 = params.p * params.p;
  return params.q * (p2 - 1) / (4 * p2);
}

double TridiagonalSpec::gershgorin_radius() const noexcept {
  double r = 0;
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::fabs(diag[i]);
    if (i > 0) row += std::fabs(offdiag[i]);
    if (i + 1 < n) row += std::fabs(offdiag[i + 1]);
    r = std::max(r, row);
  }
  return r;
}

void TridiagonalSpec::write_csv(std::ostream& os) const {
  os << "site,diag,offdiag\r\n";
  char buf[96];
  for (std::size_t i = 0; i < diag.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\r\n", i, diag[i], offdiag[i]);
    os << buf;
  }
}

TridiagonalSpec dirichlet_restriction(const JacobiParams& params, const Word& word) {
  if (word.empty()) fail(ErrorCode::invalid_argument, "empty word");
  if (!std::isfinite(params.p) || !std::isfinite(params.q))
    fail(ErrorCode::invalid_argument, "parameters must be finite");
  TridiagonalSpec spec;
  spec.diag.resize(word.size());
  spec.offdiag.resize(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    spec.diag[i] = params.potential(word[i]);
    spec.offdiag[i] = i == 0 ? 0.0 : params.hopping(word[i]);
  }
  return spec;
}

std::size_t eigen_count_below(const TridiagonalSpec& spec, double E) {
  constexpr double guard = 1e-300;
  std::size_t count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < spec.diag.size(); ++i) {
    const double b = i == 0 ? 0.0 : spec.offdiag[i];
    d = (spec.diag[i] - E) - (b == 0.0 ? 0.0 : b * b / d);
    if (d == 0.0) d = -guard;
    if (d < 0) ++count;
  }
  return count;
}

std::vector<double> eigenvalues(const TridiagonalSpec& spec) {
  std::vector<double> d = spec.diag;
  std::vector<double> e;
  if (d.size() > 1) e.assign(spec.offdiag.begin() + 1, spec.offdiag.end());
  lapack::sterf(d, e);
  return d;
}

std::pair<double, double> gershgorin_hull(const JacobiParams& params) {
  const double r = 2 + std::fabs(params.q) + 2 * std::fabs(params.p);
  return {-r, r};
}

}  // namespace trispec

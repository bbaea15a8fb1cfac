#include "trispec/dos.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "trispec/error.hpp"
#include "trispec/parallel.hpp"

namespace trispec {

IdsCounter::IdsCounter(const Substitution& s, const JacobiParams& params, std::size_t L) {
  validate(params);
  if (L == 0) fail(ErrorCode::invalid_argument, "IDS needs L >= 1");
  spec_ = dirichlet_restriction(params, fixed_point_prefix(s, L));
}

IdsCounter::IdsCounter(TridiagonalSpec spec) : spec_(std::move(spec)) {
  if (spec_.length() == 0) fail(ErrorCode::invalid_argument, "IDS of an empty chain");
}

double IdsCounter::operator()(double E) const {
  return static_cast<double>(eigen_count_below(spec_, E)) / static_cast<double>(spec_.length());
}

double IdsCounter::mass(double E, double eps) const {
  const std::size_t hi = eigen_count_below(spec_, E + eps);
  const std::size_t lo = eigen_count_below(spec_, E - eps);
  return static_cast<double>(hi - lo) / static_cast<double>(spec_.length());
}

double IdsTable::value_at(double E) const {
  auto it = std::upper_bound(E_grid.begin(), E_grid.end(), E);
  if (it == E_grid.begin()) return 0.0;
  return N_values[static_cast<std::size_t>(it - E_grid.begin()) - 1];
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (n < 2 || !(hi > lo)) fail(ErrorCode::invalid_argument, "grid needs n >= 2 and hi > lo");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  g.back() = hi;
  return g;
}

IdsTable ids(const Substitution& s, const JacobiParams& params, std::size_t L,
             const std::vector<double>& E_grid) {
  if (!std::is_sorted(E_grid.begin(), E_grid.end()))
    fail(ErrorCode::invalid_argument, "energy grid must be increasing");
  const IdsCounter counter(s, params, L);
  IdsTable t;
  t.E_grid = E_grid;
  t.L = L;
  t.N_values.resize(E_grid.size());
  parallel_for(E_grid.size(), [&](std::size_t i) { t.N_values[i] = counter(E_grid[i]); });
  return t;
}

ScalingExponent ids_scaling_exponent(const IdsCounter& ids, double E, std::vector<double> eps_ladder) {
  const TridiagonalSpec& spec = ids.spec();
  const double L = static_cast<double>(ids.length());
  if (eps_ladder.empty()) {
    double lo = spec.diag[0], hi = spec.diag[0];
    const double r = spec.gershgorin_radius();
    for (double d : spec.diag) {
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    const double top = (hi - lo + 2 * r) / 16;
    for (int n = static_cast<int>(std::ceil(-std::log2(top))); n < 1000; ++n) {
      const double eps = std::ldexp(1.0, -n);
      if (!(ids.mass(E, eps) > 2 / L)) break;
      eps_ladder.push_back(eps);
    }
  }
  ScalingExponent out;
  for (double eps : eps_ladder) {
    if (!(eps > 0)) fail(ErrorCode::invalid_argument, "ladder entries must be positive");
    const double m = ids.mass(E, eps);
    if (m > 2 / L) {
      out.eps.push_back(eps);
      out.mass.push_back(m);
    }
  }
  const std::size_t n = out.eps.size();
  if (n < 5) fail(ErrorCode::insufficient_resolution, "fewer than 5 ladder scales carry IDS mass above 2/L");

  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(out.eps[i]);
    my += std::log(out.mass[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(out.eps[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(out.mass[i]) - my);
  }
  if (!(sxx > 0)) fail(ErrorCode::insufficient_resolution, "ladder has a single distinct scale");
  out.d = sxy / sxx;
  double ssr = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::log(out.mass[i]) - (my + out.d * (std::log(out.eps[i]) - mx));
    ssr += r * r;
  }
  out.stderr_ = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

DosSummary dos_dimension_summary(const Substitution& s, const JacobiParams& params,
                                 std::size_t sample_count, std::size_t L, std::uint64_t seed) {
  if (sample_count == 0) fail(ErrorCode::invalid_argument, "sample_count must be positive");
  const IdsCounter counter(s, params, L);
  const std::vector<double> ev = eigenvalues(counter.spec());

  // draws happen up front so the result does not depend on the thread count
  std::mt19937_64 rng(seed);
  std::vector<double> energies(sample_count);
  for (double& e : energies) e = ev[static_cast<std::size_t>(rng() % ev.size())];

  std::vector<double> d(sample_count);
  std::vector<char> ok(sample_count, 0);
  parallel_for(sample_count, [&](std::size_t i) {
    try {
      d[i] = ids_scaling_exponent(counter, energies[i]).d;
      ok[i] = 1;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::insufficient_resolution) throw;
    }
  });

  DosSummary out;
  for (std::size_t i = 0; i < sample_count; ++i) {
    if (!ok[i]) {
      ++out.skipped;
      continue;
    }
    out.energies.push_back(energies[i]);
    out.exponents.push_back(d[i]);
  }
  if (out.exponents.empty())
    fail(ErrorCode::insufficient_resolution, "no sampled energy has enough resolved scales");
  out.d_min = *std::min_element(out.exponents.begin(), out.exponents.end());
  out.d_max = *std::max_element(out.exponents.begin(), out.exponents.end());
  out.d_median = median(out.exponents);
  return out;
}

}  // namespace trispec

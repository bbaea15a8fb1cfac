#include "trispec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trispec/error.hpp"
#include "trispec/parallel.hpp"

namespace trispec {

BandSet BandSet::from_intervals(std::vector<Band> bands, double merge_tol) {
  std::sort(bands.begin(), bands.end(),
            [](const Band& l, const Band& r) { return l.a < r.a || (l.a == r.a && l.b < r.b); });
  BandSet out;
  for (const Band& b : bands) {
    if (!(b.a <= b.b)) fail(ErrorCode::invalid_argument, "band with a > b");
    if (!out.bands.empty() && b.a - out.bands.back().b <= merge_tol)
      out.bands.back().b = std::max(out.bands.back().b, b.b);
    else
      out.bands.push_back(b);
  }
  return out;
}

std::pair<double, double> BandSet::hull() const {
  if (bands.empty()) fail(ErrorCode::invalid_argument, "empty band set has no hull");
  return {bands.front().a, bands.back().b};
}

double BandSet::distance(double x) const {
  if (bands.empty()) return std::numeric_limits<double>::infinity();
  auto it = std::upper_bound(bands.begin(), bands.end(), x,
                             [](double v, const Band& b) { return v < b.a; });
  double d = std::numeric_limits<double>::infinity();
  if (it != bands.end()) d = it->a - x;
  if (it != bands.begin()) {
    const Band& prev = *(it - 1);
    if (x <= prev.b) return 0.0;
    d = std::min(d, x - prev.b);
  }
  return d;
}

long double floquet_half_trace(const Substitution& s, const JacobiParams& params, int k, double E) {
  validate(params);
  const LevelMap map(recipe_from_substitution(s));
  return map.half_trace(trace_coordinates<long double>(params.p, params.q, E), k);
}

namespace {

// Tridiagonal chain on sites 1..L-1 of the word (sites 0 and L are the Dirichlet walls).
TridiagonalSpec interior_chain(const JacobiParams& params, const Word& w) {
  TridiagonalSpec spec;
  for (std::size_t i = 1; i < w.size(); ++i) {
    spec.diag.push_back(params.potential(w[i]));
    spec.offdiag.push_back(i == 1 ? 0.0 : params.hopping(w[i]));
  }
  return spec;
}

}  // namespace

BandSet floquet_bands(const Substitution& s, const JacobiParams& params, int k,
                      const BandOptions& options) {
  validate(params);
  if (k < 0) fail(ErrorCode::invalid_argument, "level must be nonnegative");
  const TraceMapRecipe recipe = recipe_from_substitution(s);
  const LevelMap map(recipe);
  const Word w = periodic_word(s, k);
  const std::size_t L = w.size();

  const auto [glo, ghi] = gershgorin_hull(params);
  double lo = glo, hi = ghi;
  if (options.range) {
    lo = options.range->first;
    hi = options.range->second;
    if (!(hi > lo)) fail(ErrorCode::invalid_argument, "energy range is empty");
  }
  const double span = hi - lo;
  const double tol = options.tol_rel * span;
  const double merge_tol = options.merge_rel * span;

  std::vector<double> mu = eigenvalues(interior_chain(params, w));
  std::vector<double> brackets;
  brackets.reserve(L + 1);
  brackets.push_back(std::min(glo, lo));
  brackets.insert(brackets.end(), mu.begin(), mu.end());
  brackets.push_back(std::max(ghi, hi));

  const bool negative_lead = params.p < 0 && (w.count(Letter::one) % 2 == 1);
  auto half_trace = [&](double E) {
    return map.half_trace(trace_coordinates<long double>(params.p, params.q, E), k);
  };

  std::vector<Band> found(L);
  std::vector<char> keep(L, 0);
  parallel_for(L, [&](std::size_t idx) {
    const std::size_t j = idx + 1;  // band number from the left
    double left = brackets[idx];
    double right = brackets[idx + 1];
    if (right < lo || left > hi) return;
    const long double sign = (((L - j) % 2 == 1) != negative_lead) ? -1.0L : 1.0L;
    auto g = [&](double E) { return sign * half_trace(E) + 1; };
    auto h = [&](double E) { return sign * half_trace(E) - 1; };

    // g <= 0 up to the left edge and > 0 after it; h < 0 inside the band and >= 0 after it
    if (!(g(right) > 0))
      fail(ErrorCode::inconsistency, "Floquet discriminant has no band in its Dirichlet bracket");
    double x0 = left, x1 = right;
    while (x1 - x0 > tol) {
      double mid = 0.5 * (x0 + x1);
      if (mid <= x0 || mid >= x1) break;
      (g(mid) > 0 ? x1 : x0) = mid;
    }
    double a = 0.5 * (x0 + x1);
    x0 = a;
    x1 = right;
    while (x1 - x0 > tol) {
      double mid = 0.5 * (x0 + x1);
      if (mid <= x0 || mid >= x1) break;
      (h(mid) < 0 ? x0 : x1) = mid;
    }
    double b = 0.5 * (x0 + x1);
    if (!(a <= b)) fail(ErrorCode::inconsistency, "band edges out of order");
    a = std::max(a, lo);
    b = std::min(b, hi);
    if (a > b) return;
    found[idx] = {a, b};
    keep[idx] = 1;
  });

  // A tangency of x_k with +-1 leaves a spurious gap of width ~sqrt(eps); the
  // discriminant then barely exceeds 1 anywhere in it.
  auto gap_is_closed = [&](double gl, double gr, double mu) {
    long double excess = std::fabs(half_trace(0.5 * (gl + gr))) - 1;
    if (mu > gl && mu < gr) excess = std::max(excess, std::fabs(half_trace(mu)) - 1);
    return excess <= options.closure_tol;
  };

  BandSet out;
  for (std::size_t i = 0; i < L; ++i) {
    if (!keep[i]) continue;
    const Band& band = found[i];
    if (!out.bands.empty()) {
      Band& last = out.bands.back();
      if (band.a < last.a) fail(ErrorCode::inconsistency, "bands out of order");
      if (band.a - last.b <= merge_tol || gap_is_closed(last.b, band.a, brackets[i])) {
        last.b = std::max(last.b, band.b);
        out.cumulative.back() = i + 1;
        continue;
      }
    }
    out.bands.push_back(band);
    out.cumulative.push_back(i + 1);
  }
  if (out.bands.size() > L) fail(ErrorCode::inconsistency, "more bands than the period length");
  out.level = k;
  out.params = params;
  out.substitution = s.to_string();
  out.period = L;
  return out;
}

std::vector<OrbitVerdict> dynamical_spectrum_probe(const Substitution& s, const JacobiParams& params,
                                                   const std::vector<double>& energies, int max_steps,
                                                   double escape_norm) {
  validate(params);
  const TraceMapRecipe recipe = recipe_from_substitution(s);
  std::vector<OrbitVerdict> out(energies.size());
  parallel_for(energies.size(), [&](std::size_t i) {
    out[i] = classify(recipe, trace_coordinates(params, energies[i]), max_steps, escape_norm);
  });
  return out;
}

namespace {

// sup over x in A of dist(x, B)
double directed_hausdorff(const BandSet& A, const BandSet& B) {
  double worst = 0;
  for (const Band& band : A.bands) {
    worst = std::max(worst, B.distance(band.a));
    worst = std::max(worst, B.distance(band.b));
  }
  for (std::size_t i = 0; i + 1 < B.bands.size(); ++i) {
    const double mid = 0.5 * (B.bands[i].b + B.bands[i + 1].a);
    if (A.contains(mid)) worst = std::max(worst, B.distance(mid));
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const BandSet& A, const BandSet& B) {
  if (A.empty() && B.empty()) return 0.0;
  if (A.empty() || B.empty()) return std::numeric_limits<double>::infinity();
  return std::max(directed_hausdorff(A, B), directed_hausdorff(B, A));
}

double band_measure(const BandSet& bands) {
  double m = 0;
  for (const Band& b : bands.bands) m += b.length();
  return m;
}

BandSet band_sum(const BandSet& A, const BandSet& B) {
  std::vector<Band> sums;
  sums.reserve(A.size() * B.size());
  for (const Band& x : A.bands)
    for (const Band& y : B.bands) sums.push_back({x.a + y.a, x.b + y.b});
  BandSet out = BandSet::from_intervals(std::move(sums));
  out.level = A.level == B.level ? A.level : -1;
  out.params = A.params;
  out.substitution = A.substitution;
  return out;
}

std::pair<long long, double> nearest_label(double v, double alpha, long long m_max) {
  long long best_m = 0;
  double best = std::numeric_limits<double>::infinity();
  for (long long i = 0; i <= 2 * m_max; ++i) {
    const long long m = (i % 2 == 0) ? -(i / 2) : (i + 1) / 2;
    long double t = static_cast<long double>(m) * alpha;
    t -= std::floor(t);
    double d = std::fabs(static_cast<double>(t) - v);
    d = std::min(d, 1.0 - d);
    if (d < best) {
      best = d;
      best_m = m;
    }
  }
  return {best_m, best};
}

std::vector<Gap> gaps_with_labels(const BandSet& bands, const std::function<double(double)>& ids,
                                  double alpha, long long m_max, double tol) {
  std::vector<Gap> out;
  for (std::size_t i = 0; i + 1 < bands.bands.size(); ++i) {
    Gap g;
    g.lo = bands.bands[i].b;
    g.hi = bands.bands[i + 1].a;
    g.label_value = ids(0.5 * (g.lo + g.hi));
    auto [m, d] = nearest_label(g.label_value, alpha, m_max);
    if (d <= tol) g.label_m = m;
    out.push_back(g);
  }
  return out;
}

}  // namespace trispec

#include "trispec/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "trispec/error.hpp"
#include "trispec/parallel.hpp"

namespace trispec {

namespace {

std::pair<double, double> scale_window(const BandSet& bands) {
  const auto [lo, hi] = bands.hull();
  double smallest = std::numeric_limits<double>::infinity();
  for (const Band& b : bands.bands) smallest = std::min(smallest, b.length());
  const double extent = hi - lo;
  return {std::max(4 * smallest, extent * 1e-12), extent / 4};
}

}  // namespace

std::vector<double> dyadic_scales(const BandSet& bands) {
  if (bands.empty()) fail(ErrorCode::invalid_argument, "empty band set");
  const auto [smin, smax] = scale_window(bands);
  std::vector<double> out;
  if (!(smax > 0)) return out;
  for (int n = static_cast<int>(std::floor(-std::log2(smax))); n < 1100; ++n) {
    const double eps = std::ldexp(1.0, -n);
    if (eps > smax) continue;
    if (eps < smin) break;
    out.push_back(eps);
  }
  return out;
}

double box_count(const BandSet& bands, double eps) {
  if (!(eps > 0)) fail(ErrorCode::invalid_argument, "box size must be positive");
  double count = 0;
  long long last = std::numeric_limits<long long>::min();
  for (const Band& b : bands.bands) {
    long long first = static_cast<long long>(std::floor(static_cast<long double>(b.a) / eps));
    const long long end = static_cast<long long>(std::floor(static_cast<long double>(b.b) / eps));
    if (last != std::numeric_limits<long long>::min()) first = std::max(first, last + 1);
    if (end >= first) count += static_cast<double>(end - first + 1);
    last = std::max(last, end);
  }
  return count;
}

DimensionEstimate box_dimension(const BandSet& bands, const std::vector<double>& scales) {
  if (bands.empty()) fail(ErrorCode::invalid_argument, "box dimension of an empty set");
  const auto [smin, smax] = scale_window(bands);
  std::vector<double> use;
  for (double eps : scales.empty() ? dyadic_scales(bands) : scales)
    if (eps >= smin && eps <= smax) use.push_back(eps);
  std::sort(use.begin(), use.end());
  use.erase(std::unique(use.begin(), use.end()), use.end());
  if (use.size() < 5)
    fail(ErrorCode::insufficient_resolution,
         "box counting needs at least 5 scales between 4x the smallest band and hull/4");

  DimensionEstimate est;
  const std::size_t n = use.size();
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = box_count(bands, use[i]);
    xs[i] = -std::log(use[i]);
    ys[i] = std::log(c);
    est.scales.push_back(use[i]);
    est.counts.push_back(c);
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  est.slope = sxy / sxx;
  double ssr = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (my + est.slope * (xs[i] - mx));
    ssr += r * r;
  }
  est.stderr_ = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  est.value = std::clamp(est.slope, 0.0, 1.0);
  est.scale_min = use.front();
  est.scale_max = use.back();
  return est;
}

ThicknessEstimate thickness(const BandSet& bands) {
  ThicknessEstimate out;
  out.level = bands.level;
  if (bands.size() < 2) return out;
  struct G {
    double lo, hi;
  };
  std::vector<G> gaps;
  for (std::size_t i = 0; i + 1 < bands.size(); ++i) gaps.push_back({bands.bands[i].b, bands.bands[i + 1].a});
  std::stable_sort(gaps.begin(), gaps.end(),
                   [](const G& l, const G& r) { return (l.hi - l.lo) > (r.hi - r.lo); });
  const auto [hull_lo, hull_hi] = bands.hull();
  std::set<double> cuts = {hull_lo, hull_hi};
  double tau = std::numeric_limits<double>::infinity();
  for (const G& g : gaps) {
    const double width = g.hi - g.lo;
    // nearest cut at or left of lo, nearest at or right of hi
    auto right_it = cuts.lower_bound(g.hi);
    auto left_it = std::prev(cuts.upper_bound(g.lo));
    const double left_bridge = g.lo - *left_it;
    const double right_bridge = *right_it - g.hi;
    if (width > 0) tau = std::min(tau, std::min(left_bridge, right_bridge) / width);
    cuts.insert(g.lo);
    cuts.insert(g.hi);
  }
  out.value = tau;
  return out;
}

BandSet clip(const BandSet& bands, double lo, double hi) {
  BandSet out;
  out.level = bands.level;
  out.params = bands.params;
  out.substitution = bands.substitution;
  for (const Band& b : bands.bands) {
    const double a = std::max(b.a, lo);
    const double c = std::min(b.b, hi);
    if (a <= c) out.bands.push_back({a, c});
  }
  return out;
}

std::vector<LocalDimension> local_dimension_profile(const BandSet& bands, int window_count) {
  if (window_count < 1) fail(ErrorCode::invalid_argument, "window_count must be >= 1");
  const auto [lo, hi] = bands.hull();
  const double w = (hi - lo) / window_count;
  std::vector<LocalDimension> out(static_cast<std::size_t>(window_count));
  for (int i = 0; i < window_count; ++i) {
    LocalDimension& d = out[static_cast<std::size_t>(i)];
    d.lo = lo + w * i;
    d.hi = i + 1 == window_count ? hi : lo + w * (i + 1);
    d.center = 0.5 * (d.lo + d.hi);
    BandSet part = clip(bands, d.lo, d.hi);
    if (part.empty()) continue;
    try {
      d.estimate = box_dimension(part);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::insufficient_resolution) throw;
    }
  }
  return out;
}

std::vector<LocalDimension> local_dimension_profile(const Substitution& s, const JacobiParams& params,
                                                    int k, int window_count) {
  return local_dimension_profile(floquet_bands(s, params, k), window_count);
}

std::vector<CouplingRow> large_coupling_check(const std::vector<double>& V_list, int k) {
  const Substitution fib = Substitution::fibonacci();
  std::vector<CouplingRow> rows;
  for (double V : V_list) {
    CouplingRow row;
    row.V = V;
    row.asymptote = V > 1 ? std::log(1 + std::sqrt(2.0)) / std::log(V)
                          : std::numeric_limits<double>::quiet_NaN();
    if (V != 0) row.estimate = box_dimension(floquet_bands(fib, {1.0, V}, k));
    rows.push_back(row);
  }
  return rows;
}

std::optional<Gap> labelled_gap(const BandSet& bands, double alpha, long long m) {
  if (bands.period == 0 || bands.cumulative.size() != bands.size())
    fail(ErrorCode::invalid_argument, "labelled_gap needs a Floquet band set");
  long double target = static_cast<long double>(m) * alpha;
  target -= std::floor(target);
  const double L = static_cast<double>(bands.period);
  std::optional<Gap> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < bands.size(); ++i) {
    const double ids = static_cast<double>(bands.cumulative[i]) / L;
    double d = std::fabs(ids - static_cast<double>(target));
    d = std::min(d, 1 - d);
    if (d < best_d) {
      best_d = d;
      best = Gap{bands.bands[i].b, bands.bands[i + 1].a, ids, m};
    }
  }
  if (best && best_d > (static_cast<double>(std::llabs(m)) + 1) / L) return std::nullopt;
  return best;
}

GapOpeningRate gap_opening_rate(const Substitution& s, const ParameterPath& path,
                                const std::vector<double>& t_list, long long m, int k) {
  if (t_list.empty()) fail(ErrorCode::invalid_argument, "empty t list");
  const double alpha = rotation_number(s).alpha_value();
  GapOpeningRate out;
  out.rows.resize(t_list.size());
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    const JacobiParams params = path(t_list[i]);
    GapOpeningRow& row = out.rows[i];
    row.t = t_list[i];
    row.distance = std::hypot(params.p - 1, params.q);
    if (row.distance == 0) fail(ErrorCode::invalid_argument, "path point coincides with (1, 0)");
  }
  parallel_for(t_list.size(), [&](std::size_t i) {
    GapOpeningRow& row = out.rows[i];
    const BandSet bands = floquet_bands(s, path(row.t), k);
    if (auto g = labelled_gap(bands, alpha, m)) {
      row.width = g->width();
      row.ids = g->label_value;
    }
    row.ratio = row.width / row.distance;
  });
  const std::size_t n = out.rows.size();
  out.limit = out.rows.back().ratio;
  if (n >= 2) {
    const auto& r1 = out.rows[n - 2];
    const auto& r2 = out.rows[n - 1];
    if (r1.t != r2.t) out.limit = (r2.ratio * r1.t - r1.ratio * r2.t) / (r1.t - r2.t);
  }
  if (n >= 3) {
    double lo = out.rows[n - 3].ratio, hi = lo, sum = 0;
    for (std::size_t i = n - 3; i < n; ++i) {
      lo = std::min(lo, out.rows[i].ratio);
      hi = std::max(hi, out.rows[i].ratio);
      sum += out.rows[i].ratio;
    }
    const double mean = sum / 3;
    out.spread = mean > 0 ? (hi - lo) / mean : std::numeric_limits<double>::infinity();
    out.stable = out.spread <= 0.1;
  }
  return out;
}

BandSet decoupled_spectrum(const Substitution& s, double q, int k) {
  const Word w = periodic_word(s, k);
  const JacobiParams params{0.0, q};
  std::set<std::string> blocks;
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == Letter::one) starts.push_back(i);
  if (starts.empty()) {
    blocks.insert(w.to_string());
  } else {
    for (std::size_t j = 0; j < starts.size(); ++j) {
      std::string b = "1";
      for (std::size_t i = (starts[j] + 1) % w.size(); w[i] == Letter::zero; i = (i + 1) % w.size())
        b.push_back('0');
      blocks.insert(b);
    }
  }
  std::vector<Band> points;
  for (const std::string& b : blocks)
    for (double e : eigenvalues(dirichlet_restriction(params, Word::parse(b)))) points.push_back({e, e});
  BandSet out = BandSet::from_intervals(std::move(points));
  out.level = k;
  out.params = params;
  out.substitution = s.to_string();
  return out;
}

std::vector<PZeroRow> p_to_zero_scan(const Substitution& s, double q, const std::vector<double>& p_list,
                                     int k) {
  const BandSet reference = decoupled_spectrum(s, q, k);
  std::vector<PZeroRow> rows(p_list.size());
  parallel_for(p_list.size(), [&](std::size_t i) {
    PZeroRow& row = rows[i];
    row.p = p_list[i];
    const BandSet bands = floquet_bands(s, {row.p, q}, k);
    try {
      row.estimate = box_dimension(bands);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::insufficient_resolution) throw;
    }
    row.measure = band_measure(bands);
    std::tie(row.hull_lo, row.hull_hi) = bands.hull();
    row.distance_to_decoupled = hausdorff_distance(bands, reference);
  });
  return rows;
}

}  // namespace trispec

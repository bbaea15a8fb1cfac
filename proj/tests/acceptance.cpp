// Property checks against the acceptance tolerances. One PASS/FAIL line each;
// exits non-zero only if a check could not be carried out.
#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "trispec/dos.hpp"
#include "trispec/fractal.hpp"
#include "trispec/spectrum.hpp"
#include "trispec/tracemap.hpp"

using namespace trispec;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

const char* const invertible_set[] = {"0->01;1->0", "0->001;1->0", "0->011;1->01", "0->1;1->10",
                                      "0->10;1->0", "0->0001;1->0", "0->010;1->0"};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Verdict invariant_conservation() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2, 2);
  std::uniform_int_distribution<int> a(1, 3), len(1, 3), pre(0, 3);
  int bad = 0, exact_bad = 0, scaled_bad = 0;
  double worst = 0, worst_scaled = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    TraceMapRecipe r;
    const int m = len(rng);
    for (int j = 0; j < m; ++j) r.period.push_back(a(rng));
    const int pk = pre(rng);
    if (pk & 1) r.prefix.push_back({MapKind::swap, 1});
    if (pk & 2) r.prefix.push_back({MapKind::shift, a(rng)});
    const Point3 p{u(rng), u(rng), u(rng)};
    const Point3 q = apply_block(r, p);
    const double I0 = fricke_vogt(p), drift = std::fabs(fricke_vogt(q) - I0);
    const double ratio = drift / (1 + std::fabs(I0));
    worst = std::max(worst, ratio);
    bad += !(ratio <= 1e-9);
    // same drift measured against the size of the terms it is a difference of
    const double terms = q.x * q.x + q.y * q.y + q.z * q.z + 2 * std::fabs(q.x * q.y * q.z) + 1;
    worst_scaled = std::max(worst_scaled, drift / terms);
    scaled_bad += !(drift / terms <= 1e-9);
    if (i % 10 == 0) {
      const BasicPoint3<mpq_class> P{mpq_class(p.x), mpq_class(p.y), mpq_class(p.z)};
      exact_bad += fricke_vogt(apply_block(r, P)) != fricke_vogt(P);
    }
  }
  const double t = seconds_since(t0);
  return {bad == 0 && t < 1.0,
          fmt("%d/%d blocks drift > 1e-9 (1+|I|), worst %.2g; runtime %.2fs; term-scaled drift worst %.2g "
              "(%d over); exact rational arithmetic %d/%d non-conserving",
              bad, n, worst, t, worst_scaled, scaled_bad, exact_bad, n / 10)};
}

// cyclic product of one-site matrices in long double, rescaled as it goes;
// a result past the long double range comes back as +-inf with the right sign
long double brute_half_trace(const JacobiParams& j, const Word& w, double E) {
  long double a = 1, b = 0, c = 0, d = 1;
  long scale = 0;
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Mat2 t = transfer_unimodular(j, w[i], w[(i + 1) % n], E);
    const long double na = t.a * a + t.b * c, nb = t.a * b + t.b * d;
    const long double nc = t.c * a + t.d * c, nd = t.c * b + t.d * d;
    a = na, b = nb, c = nc, d = nd;
    int e = 0;
    std::frexp(std::max({std::fabs(a), std::fabs(b), std::fabs(c), std::fabs(d)}), &e);
    if (e > 64) {
      a = std::ldexp(a, -e), b = std::ldexp(b, -e), c = std::ldexp(c, -e), d = std::ldexp(d, -e);
      scale += e;
    }
  }
  return std::ldexp((a + d) / 2, static_cast<int>(std::min(scale, 100000L)));
}

Verdict oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3, 3), mag(0.3, 3);
  std::uniform_int_distribution<int> pick(0, std::size(invertible_set) - 1);
  int bad = 0, checked = 0, beyond = 0;
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const Substitution s = Substitution::parse(invertible_set[pick(rng)]);
    const JacobiParams j{(rng() & 1 ? 1 : -1) * mag(rng), u(rng)};
    const auto [lo, hi] = gershgorin_hull(j);
    const double E = lo + (hi - lo) * (u(rng) + 3) / 6;
    for (int k = 0; k <= 8; ++k) {
      const long double brute = brute_half_trace(j, periodic_word(s, k), E);
      const long double tm = floquet_half_trace(s, j, k, E);
      if (std::isinf(brute)) {
        ++beyond;
        bad += tm != brute;
        ++checked;
        continue;
      }
      const double rel = static_cast<double>(std::fabs(tm - brute) / std::max(1.0L, std::fabs(brute)));
      worst = std::max(worst, rel);
      bad += !(rel <= 1e-7);
      ++checked;
    }
  }
  const double t = seconds_since(t0);
  return {bad == 0 && t < 10, fmt("%d/%d mismatches, worst rel %.2g; %d values beyond long double range (sign compared); runtime %.2fs",
                                  bad, checked, worst, beyond, t)};
}

Verdict semiconjugacy() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> pick(0, std::size(invertible_set) - 1);
  auto F = [](double th, double ph) {
    const double tau = 2 * std::numbers::pi;
    return Point3{std::cos(tau * (th + ph)), std::cos(tau * th), std::cos(tau * ph)};
  };
  double worst = 0;
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const Substitution s = Substitution::parse(invertible_set[pick(rng)]);
    const IntMatrix2& a = s.abelianization();
    const double th = u(rng), ph = u(rng);
    const Point3 lhs = F(std::fmod(a[0][0] * th + a[0][1] * ph, 1.0), std::fmod(a[1][0] * th + a[1][1] * ph, 1.0));
    const Point3 rhs = apply_maps(substitution_block(recipe_from_substitution(s)), F(th, ph));
    const double d = std::max({std::fabs(lhs.x - rhs.x), std::fabs(lhs.y - rhs.y), std::fabs(lhs.z - rhs.z)});
    worst = std::max(worst, d);
    bad += !(d <= 1e-9);
  }
  return {bad == 0, fmt("%d/1000 points off by > 1e-9, worst %.2g", bad, worst)};
}

Verdict free_case() {
  double worst = 0;
  int bad = 0;
  const char* const subs[] = {"0->01;1->0", "0->10;1->0", "0->1;1->10", "0->001;1->0", "0->010;1->0"};
  for (const char* text : subs)
    for (int k = 0; k <= 10; ++k) {
      const BandSet b = floquet_bands(Substitution::parse(text), {1, 0}, k);
      const double d = b.size() == 1 ? std::max(std::fabs(b.bands[0].a + 2), std::fabs(b.bands[0].b - 2)) : INFINITY;
      worst = std::max(worst, d);
      bad += !(d <= 1e-10);
    }
  return {bad == 0, fmt("%d/%zu (substitution, k) pairs off [-2,2], worst edge error %.2g", bad, std::size(subs) * 11,
                        worst)};
}

Verdict curve_invariant_check() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 3), mag(0.2, 3);
  double worst = 0;
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const JacobiParams j{mag(rng), u(rng)};
    const double E = u(rng) * 2;
    const double closed = curve_invariant(j, E);
    const double d = std::fabs(fricke_vogt(initial_conditions(j, E)) - closed) / (1 + std::fabs(closed));
    worst = std::max(worst, d);
    bad += !(d <= 1e-12);
  }
  // the invariant is affine in E; its exact slope from rational arithmetic
  int slope_bad = 0;
  for (int i = 0; i < 3; ++i) {
    const double p = mag(rng), q = u(rng);
    auto I = [&](int E) {
      return fricke_vogt(trace_coordinates<mpq_class>(mpq_class(p), mpq_class(q), mpq_class(E)));
    };
    const mpq_class P(p), Q(q);
    const mpq_class want = Q * (P * P - 1) / (4 * P * P);
    slope_bad += !(I(1) - I(0) == want && I(2) - I(1) == want);
    slope_bad += !(mpq_class(invariant_slope({p, q})) - want == 0 ||
                   abs(mpq_class(invariant_slope({p, q})) - want) <= abs(want) * 1e-15);
  }
  return {bad == 0 && slope_bad == 0,
          fmt("%d/1000 above 1e-12, worst %.2g; exact slope mismatches %d/3", bad, worst, slope_bad)};
}

Verdict measure_trend() {
  const auto t0 = std::chrono::steady_clock::now();
  const Substitution fib = Substitution::fibonacci();
  std::vector<double> m;
  for (int k = 2; k <= 10; ++k) m.push_back(band_measure(floquet_bands(fib, {1, 2}, k)));
  bool dec = true;
  for (std::size_t i = 1; i < m.size(); ++i) dec = dec && m[i] < m[i - 1];
  const double t = seconds_since(t0);
  return {dec && m[8] < 0.5 * m[2] && t < 60,
          fmt("measure k=2..10 %s; |s10|=%.4g, |s4|=%.4g (ratio %.3f); runtime %.2fs",
              dec ? "strictly decreasing" : "NOT decreasing", m[8], m[2], m[8] / m[2], t)};
}

Verdict hausdorff_convergence() {
  bool ok = true;
  std::string d;
  for (const char* text : {"0->01;1->0", "0->001;1->0"})
    for (JacobiParams j : {JacobiParams{1, 2}, JacobiParams{1.5, 1}}) {
      const Substitution s = Substitution::parse(text);
      std::vector<double> h;
      BandSet prev = floquet_bands(s, j, 4);
      for (int k = 4; k <= 9; ++k) {
        BandSet next = floquet_bands(s, j, k + 1);
        h.push_back(hausdorff_distance(prev, next));
        prev = std::move(next);
      }
      bool dec = true;
      for (std::size_t i = 1; i < h.size(); ++i) dec = dec && h[i] < h[i - 1];
      ok = ok && dec;
      d += fmt("%s(%g,%g) %.3g->%.3g%s; ", text, j.p, j.q, h.front(), h.back(), dec ? "" : " NOT decreasing");
    }
  return {ok, d};
}

Verdict bounded_orbits() {
  const Substitution fib = Substitution::fibonacci();
  const JacobiParams j{1, 2};
  const int k = 10;
  const BandSet b = floquet_bands(fib, j, k);
  const auto [hl, hh] = b.hull();
  std::vector<Band> deep;
  for (std::size_t i = 0; i + 1 < b.size(); ++i)
    if (b.bands[i + 1].a - b.bands[i].b > 1e-3 * (hh - hl)) deep.push_back({b.bands[i].b, b.bands[i + 1].a});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mid(0.25, 0.75);
  std::vector<double> in, out;
  for (int i = 0; i < 100; ++i) {
    const Band& x = b.bands[rng() % b.size()];
    in.push_back(x.a + mid(rng) * x.length());
    const Band& g = deep[rng() % deep.size()];
    out.push_back(g.a + mid(rng) * g.length());
  }
  int bounded = 0, escaped = 0;
  for (const OrbitVerdict& v : dynamical_spectrum_probe(fib, j, in, k + 5)) bounded += v.kind == OrbitKind::bounded_so_far;
  for (const OrbitVerdict& v : dynamical_spectrum_probe(fib, j, out, k + 5)) escaped += v.kind == OrbitKind::escaped;
  return {bounded >= 98 && escaped == 100,
          fmt("band interiors bounded %d/100, deep-gap energies escaped %d/100 (%zu gaps wider than 1e-3 hull)",
              bounded, escaped, deep.size())};
}

Verdict gap_labels() {
  const Substitution fib = Substitution::fibonacci();
  const JacobiParams j{1.1, 0.3};
  const std::size_t L = 2584;
  const IdsCounter ids(fib, j, L);
  const double alpha = rotation_number(fib).alpha_value();
  auto count = [&](const BandSet& b, int& wide, double& worst) {
    int unmatched = 0;
    for (const Gap& g : gaps_with_labels(b, [&](double E) { return ids(E); }, alpha, 34, 2.0 / L)) {
      if (!(g.width() > 1e-4)) continue;
      ++wide;
      worst = std::max(worst, nearest_label(g.label_value, alpha, 34).second);
      unmatched += !g.label_m;
    }
    return unmatched;
  };
  const BandSet s8 = floquet_bands(fib, j, 8);
  int wide = 0;
  double worst = 0;
  const int un = count(s8, wide, worst);
  // gaps of sigma_8 u sigma_9 are gaps of the limit spectrum
  std::vector<Band> both = s8.bands;
  const BandSet s9 = floquet_bands(fib, j, 9);
  both.insert(both.end(), s9.bands.begin(), s9.bands.end());
  int wide_c = 0;
  double worst_c = 0;
  const int un_c = count(BandSet::from_intervals(both), wide_c, worst_c);
  return {un == 0, fmt("sigma_8: %d/%d gaps > 1e-4 unmatched (worst distance %.2g, tol %.2g); "
                       "gaps of sigma_8 u sigma_9: %d/%d unmatched, worst %.2g",
                       un, wide, worst, 2.0 / L, un_c, wide_c, worst_c)};
}

Verdict large_coupling() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string d;
  for (const CouplingRow& r : large_coupling_check({24, 32}, 12)) {
    const double rel = r.estimate->value / r.asymptote - 1;
    ok = ok && std::fabs(rel) <= 0.15;
    d += fmt("V=%g dim %.4f +- %.4f vs %.4f (%+.1f%%); ", r.V, r.estimate->value, r.estimate->stderr_, r.asymptote,
             100 * rel);
  }
  const double t = seconds_since(t0);
  return {ok && t < 300, d + fmt("runtime %.2fs", t)};
}

Verdict near_free_dimension() {
  const Substitution fib = Substitution::fibonacci();
  const std::vector<double> dist = {0.05, 0.1, 0.2};
  bool ok = true;
  std::string d;
  for (int path = 0; path < 2; ++path) {
    std::vector<double> dim;
    for (double r : dist)
      dim.push_back(box_dimension(floquet_bands(fib, path ? JacobiParams{1 + r, 0} : JacobiParams{1, r}, 12)).value);
    // smallest C with dim >= 1 - C r at every distance
    double C = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) C = std::max(C, (1 - dim[i]) / dist[i]);
    const bool mono = dim[0] > dim[1] && dim[1] > dim[2];
    ok = ok && mono && C > 0 && std::isfinite(C);
    d += fmt("%s: dims %.4f %.4f %.4f, C=%.3f%s; ", path ? "p=1+r,q=0" : "p=1,q=r", dim[0], dim[1], dim[2], C,
             mono ? "" : " NOT monotone");
  }
  return {ok, d};
}

Verdict gap_opening() {
  const GapOpeningRate g = gap_opening_rate(
      Substitution::fibonacci(), [](double t) { return JacobiParams{1, t}; }, {0.4, 0.2, 0.1, 0.05}, 1, 12);
  std::string d;
  for (const GapOpeningRow& r : g.rows) d += fmt("t=%g |U|/t=%.4f; ", r.t, r.ratio);
  return {g.spread <= 0.10, d + fmt("spread over last three %.2f%%", 100 * g.spread)};
}

Verdict p_to_zero() {
  const auto rows = p_to_zero_scan(Substitution::fibonacci(), 1.0, {0.5, 0.2, 0.05}, 12);
  bool dims = true, dists = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    dims = dims && rows[i].estimate && rows[i - 1].estimate && rows[i].estimate->value < rows[i - 1].estimate->value;
    dists = dists && rows[i].distance_to_decoupled < rows[i - 1].distance_to_decoupled;
  }
  std::string d;
  for (const PZeroRow& r : rows)
    d += fmt("p=%g dim %.4f d_H %.4g; ", r.p, r.estimate ? r.estimate->value : NAN, r.distance_to_decoupled);
  return {dims && dists && rows.back().distance_to_decoupled < 0.05, d};
}

Verdict thickness_sum() {
  const Substitution fib = Substitution::fibonacci();
  const BandSet weak = floquet_bands(fib, {1, 0.5}, 10);
  const BandSet mid = floquet_bands(fib, {1, 8}, 10);
  const BandSet strong = floquet_bands(fib, {1, 16}, 10);
  const double tw = thickness(weak).value, tm = thickness(mid).value;
  const std::size_t sw = band_sum(weak, weak).size(), ss = band_sum(strong, strong).size();
  return {tw >= 5 * tm && sw == 1 && ss > 1,
          fmt("tau(V=0.5)=%.4g, tau(V=8)=%.4g (ratio %.0f); sum at V=0.5 has %zu interval(s), at V=16 %zu", tw, tm,
              tw / tm, sw, ss)};
}

Verdict dos_scaling() {
  const Substitution fib = Substitution::fibonacci();
  std::vector<double> ids_med, box_med;
  for (double q : {0.5, 0.3, 0.1}) {
    const DosSummary s = dos_dimension_summary(fib, {1, q}, 200, 4181, 1);
    const auto prof = local_dimension_profile(fib, {1, q}, 14, 8);
    std::vector<double> box;
    for (double E : s.energies)
      for (const LocalDimension& w : prof)
        if (E >= w.lo && E <= w.hi) {
          if (w.estimate) box.push_back(w.estimate->value);
          break;
        }
    ids_med.push_back(s.d_median);
    box_med.push_back(median(box));
  }
  const bool below = ids_med[0] < box_med[0];
  const bool rise = ids_med[2] > ids_med[0] && box_med[2] > box_med[0];
  return {below && rise, fmt("q=0.5: IDS median %.4f %s box median %.4f; q=0.3: %.4f / %.4f; q=0.1: %.4f / %.4f "
                             "(trend toward 1 %s)",
                             ids_med[0], below ? "<" : ">=", box_med[0], ids_med[1], box_med[1], ids_med[2],
                             box_med[2], rise ? "holds" : "fails")};
}

Verdict determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no CLI path given"};
  const std::filesystem::path base = std::filesystem::temp_directory_path() / fmt("trispec-det-%u", std::random_device{}());
  std::filesystem::remove_all(base);
  const std::vector<std::string> runs = {"gaps --k 8 --L 1000", "dos --k 8 --L 1500 --samples 40 --grid 128 --seed 11",
                                         "dims --k 10", "surface --res 16 --steps 10"};
  int differ = 0, files = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (const char* tag : {"a", "b"}) {
      const std::string cmd = cli + " " + runs[i] + " --out " + (base / (std::to_string(i) + tag)).string() + " > /dev/null";
      if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + cmd};
    }
    for (const auto& e : std::filesystem::directory_iterator(base / (std::to_string(i) + "a"))) {
      auto slurp = [](const std::filesystem::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
      };
      ++files;
      differ += slurp(e.path()) != slurp(base / (std::to_string(i) + "b") / e.path().filename());
    }
  }
  std::filesystem::remove_all(base);
  return {differ == 0 && files > 0, fmt("%d/%d output files differ between repeated runs", differ, files)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<const char*, std::function<Verdict()>>> checks = {
      {"invariant-conservation", invariant_conservation},
      {"oracle-equivalence", oracle_equivalence},
      {"semiconjugacy", semiconjugacy},
      {"free-case", free_case},
      {"curve-invariant", curve_invariant_check},
      {"measure-trend", measure_trend},
      {"hausdorff-convergence", hausdorff_convergence},
      {"bounded-orbit-consistency", bounded_orbits},
      {"gap-labels", gap_labels},
      {"large-coupling", large_coupling},
      {"near-free-dimension", near_free_dimension},
      {"gap-opening", gap_opening},
      {"p-to-zero", p_to_zero},
      {"thickness-and-sums", thickness_sum},
      {"dos-scaling", dos_scaling},
      {"cli-determinism", [&] { return determinism(cli); }},
  };
  int passed = 0, errors = 0;
  for (const auto& [name, run] : checks) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
      ++errors;
    }
    passed += v.pass;
    std::printf("%s %-26s %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d/%zu passed\n", passed, checks.size());
  return errors ? 1 : 0;
}

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trispec/operator.hpp"
#include "trispec/substitution.hpp"
#include "trispec/tracemap.hpp"

namespace trispec {

struct Band {
  double a = 0;
  double b = 0;
  double length() const noexcept { return b - a; }
  friend bool operator==(const Band&, const Band&) = default;
};

/// Sorted disjoint closed intervals.
struct BandSet {
  std::vector<Band> bands;
  int level = -1;
  JacobiParams params;
  std::string substitution;
  /// For Floquet band sets: the period L and, per band, the number of Floquet
  /// bands at or left of it, so the IDS on the gap after band i is cumulative[i] / L.
  std::size_t period = 0;
  std::vector<std::size_t> cumulative;

  static BandSet from_intervals(std::vector<Band> bands, double merge_tol = 0.0);

  bool empty() const noexcept { return bands.empty(); }
  std::size_t size() const noexcept { return bands.size(); }
  std::pair<double, double> hull() const;
  /// Distance from x to the nearest point of the set; 0 inside.
  double distance(double x) const;
  bool contains(double x) const { return distance(x) == 0.0; }
};

struct BandOptions {
  double tol_rel = 0.0;      ///< bisection tolerance relative to the search range; 0 = to the last bit
  double merge_rel = 1e-15;  ///< bands closer than this (relative) are merged
  /// Gaps where |x_k| never exceeds 1 + closure_tol are treated as closed.
  double closure_tol = 1e-9;
  /// Search range; defaults to the Gershgorin hull. Bands are clipped to it.
  std::optional<std::pair<double, double>> range;
};

/// sigma_k = {E : |x_k(E)| <= 1}, x_k the half-trace over s^k(star).
///
/// Band j lies between consecutive eigenvalues of the Dirichlet chain on the
/// interior sites of s^k(star); each edge is one bisection on x_k = -+1 inside
/// that bracket, so no band can be missed however narrow it is.
BandSet floquet_bands(const Substitution& s, const JacobiParams& params, int k,
                      const BandOptions& options = {});

/// Half-trace x_k(E) via the trace map, in extended precision.
long double floquet_half_trace(const Substitution& s, const JacobiParams& params, int k, double E);

std::vector<OrbitVerdict> dynamical_spectrum_probe(const Substitution& s, const JacobiParams& params,
                                                   const std::vector<double>& energies,
                                                   int max_steps = default_point_steps,
                                                   double escape_norm = default_escape_norm);

double hausdorff_distance(const BandSet& A, const BandSet& B);

double band_measure(const BandSet& bands);

/// Minkowski sum, merged.
BandSet band_sum(const BandSet& A, const BandSet& B);

struct Gap {
  double lo = 0;
  double hi = 0;
  double label_value = 0;         ///< IDS on the gap
  std::optional<long long> label_m;

  double width() const noexcept { return hi - lo; }
};

/// Interior gaps of the band set; each gets the IDS at its midpoint and the
/// nearest frac(m alpha), |m| <= m_max (ties to smaller |m|), kept iff within tol.
std::vector<Gap> gaps_with_labels(const BandSet& bands, const std::function<double(double)>& ids,
                                  double alpha, long long m_max, double tol);

/// Circular distance on [0,1) between v and frac(m alpha), and the best m.
std::pair<long long, double> nearest_label(double v, double alpha, long long m_max);

}  // namespace trispec

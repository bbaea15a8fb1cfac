#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "trispec/spectrum.hpp"

namespace trispec {

struct DimensionEstimate {
  double value = 0;   ///< slope clamped to [0, 1]
  double slope = 0;   ///< raw least-squares slope
  double stderr_ = 0;
  double scale_min = 0;
  double scale_max = 0;
  std::vector<double> scales;
  std::vector<double> counts;
  std::string method = "box-counting";
};

/// Dyadic ladder 2^-n inside [4 * smallest band, hull / 4].
std::vector<double> dyadic_scales(const BandSet& bands);

/// Least-squares slope of log N(eps) against log(1/eps). Scales outside
/// [4 * smallest band, hull / 4] are dropped; an empty `scales` uses dyadic_scales.
/// Throws invalid_argument on an empty set and insufficient_resolution with fewer than 5 scales.
DimensionEstimate box_dimension(const BandSet& bands, const std::vector<double>& scales = {});

/// Number of eps-boxes [n eps, (n+1) eps) meeting the band union.
double box_count(const BandSet& bands, double eps);

struct ThicknessEstimate {
  double value = std::numeric_limits<double>::infinity();  ///< +inf when there are no gaps
  int level = -1;
};

/// Newhouse thickness with gaps taken in order of decreasing length.
ThicknessEstimate thickness(const BandSet& bands);

/// Bands restricted to [lo, hi].
BandSet clip(const BandSet& bands, double lo, double hi);

struct LocalDimension {
  double center = 0;
  double lo = 0;
  double hi = 0;
  std::optional<DimensionEstimate> estimate;  ///< absent when the window is under-resolved
};

/// Splits the hull of sigma_k into equal windows and estimates the box dimension in each.
std::vector<LocalDimension> local_dimension_profile(const BandSet& bands, int window_count);
std::vector<LocalDimension> local_dimension_profile(const Substitution& s, const JacobiParams& params,
                                                    int k, int window_count);

struct CouplingRow {
  double V = 0;
  std::optional<DimensionEstimate> estimate;  ///< absent for V = 0
  double asymptote = 0;                      ///< log(1 + sqrt 2) / log V
};

/// Fibonacci Schroedinger sigma_k at each V against the large-coupling asymptote.
std::vector<CouplingRow> large_coupling_check(const std::vector<double>& V_list, int k = 12);

using ParameterPath = std::function<JacobiParams(double)>;

struct GapOpeningRow {
  double t = 0;
  double distance = 0;  ///< |(p, q) - (1, 0)|
  double width = 0;     ///< width of the tracked gap, 0 if closed
  double ratio = 0;     ///< width / distance
  double ids = 0;       ///< IDS of the gap in the periodic approximation
};

struct GapOpeningRate {
  std::vector<GapOpeningRow> rows;
  double limit = 0;   ///< ratio at the smallest t
  double spread = 0;  ///< (max - min) / mean over the last three rows
  bool stable = false;
};

/// Tracks the gap labelled m (IDS = frac(m alpha)) of sigma_k along the path.
/// t values are processed in the given order; "last three" means the last three entries.
GapOpeningRate gap_opening_rate(const Substitution& s, const ParameterPath& path,
                                const std::vector<double>& t_list, long long m, int k = 12);

/// Width and IDS of the sigma_k gap whose periodic IDS is closest to frac(m alpha).
std::optional<Gap> labelled_gap(const BandSet& bands, double alpha, long long m);

struct PZeroRow {
  double p = 0;
  std::optional<DimensionEstimate> estimate;
  double measure = 0;
  double hull_lo = 0;
  double hull_hi = 0;
  double distance_to_decoupled = 0;
};

/// Eigenvalues of the finite blocks "1 0^r" the chain splits into at p = 0, as point bands.
BandSet decoupled_spectrum(const Substitution& s, double q, int k);

std::vector<PZeroRow> p_to_zero_scan(const Substitution& s, double q, const std::vector<double>& p_list,
                                     int k = 12);

}  // namespace trispec

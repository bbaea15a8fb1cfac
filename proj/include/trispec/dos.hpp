#pragma once

#include <cstdint>
#include <vector>

#include "trispec/operator.hpp"
#include "trispec/substitution.hpp"

namespace trispec {

/// N(E) = #{eigenvalues <= E} / L for the Dirichlet restriction to the first L
/// letters of the fixed point.
class IdsCounter {
 public:
  IdsCounter(const Substitution& s, const JacobiParams& params, std::size_t L);
  explicit IdsCounter(TridiagonalSpec spec);

  double operator()(double E) const;
  /// N(E + eps) - N(E - eps).
  double mass(double E, double eps) const;
  std::size_t length() const noexcept { return spec_.length(); }
  const TridiagonalSpec& spec() const noexcept { return spec_; }

 private:
  TridiagonalSpec spec_;
};

struct IdsTable {
  std::vector<double> E_grid;
  std::vector<double> N_values;
  std::size_t L = 0;

  /// Step interpolation: N at the largest grid point <= E (0 below the grid).
  double value_at(double E) const;
};

IdsTable ids(const Substitution& s, const JacobiParams& params, std::size_t L,
             const std::vector<double>& E_grid);

/// Uniform grid over [lo, hi] with n >= 2 points.
std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

struct ScalingExponent {
  double d = 0;
  double stderr_ = 0;
  std::vector<double> eps;
  std::vector<double> mass;
};

/// Least-squares slope of log N(E - eps, E + eps) against log eps. Ladder
/// entries whose window mass is <= 2/L are dropped; an empty ladder means the
/// dyadic ladder 2^-n below hull/16. Throws insufficient_resolution with
/// fewer than 5 usable entries.
ScalingExponent ids_scaling_exponent(const IdsCounter& ids, double E, std::vector<double> eps_ladder = {});

struct DosSummary {
  double d_min = 0;
  double d_median = 0;
  double d_max = 0;
  std::vector<double> energies;   ///< sampled energies with a usable exponent
  std::vector<double> exponents;  ///< matching exponents
  std::size_t skipped = 0;        ///< samples without enough resolved scales
};

/// Samples energies from dN by inverse transform (a uniformly chosen Dirichlet
/// eigenvalue) and summarizes their scaling exponents.
DosSummary dos_dimension_summary(const Substitution& s, const JacobiParams& params,
                                 std::size_t sample_count, std::size_t L, std::uint64_t seed);

double median(std::vector<double> v);

}  // namespace trispec

#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "trispec/substitution.hpp"
#include "trispec/tracemap.hpp"

namespace trispec {

/// Letter 0 carries hopping 1 and potential 0; letter 1 carries (p, q).
struct JacobiParams {
  double p = 1.0;
  double q = 0.0;

  double hopping(Letter l) const noexcept { return l == Letter::one ? p : 1.0; }
  double potential(Letter l) const noexcept { return l == Letter::one ? q : 0.0; }
};

void validate(const JacobiParams& params);

struct Mat2 {
  double a = 1, b = 0, c = 0, d = 1;  // [[a, b], [c, d]]

  double trace() const noexcept { return a + d; }
  double det() const noexcept { return a * d - b * c; }
  friend Mat2 operator*(const Mat2& l, const Mat2& r) noexcept {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
            l.c * r.b + l.d * r.d};
  }
};

/// (1/p_{n+1}) [[E - q_n, -1], [p_{n+1}^2, 0]].
Mat2 transfer_unimodular(const JacobiParams& params, Letter letter_n, Letter letter_np1, double E);

/// T^(L) ... T^(1) over the word, with the successor of the last site taken cyclically.
/// Throws overflow on a non-finite entry.
Mat2 word_transfer(const JacobiParams& params, const Word& word, double E);

/// Solution-recursion matrix [[(E - q_n)/p_{n+1}, -p_n/p_{n+1}], [1, 0]] mapping
/// (phi_n, phi_{n-1}) to (phi_{n+1}, phi_n).
Mat2 transfer_solution(const JacobiParams& params, Letter letter_n, Letter letter_np1, double E);

/// l(E) = ((E^2 - qE - p^2 - 1)/(2p), (E - q)/(2p), E/2).
Point3 initial_conditions(const JacobiParams& params, double E);

/// l(E) reordered to the trace-map coordinates (tr(01), tr(0), tr(1)) / 2.
Point3 trace_coordinates(const JacobiParams& params, double E);

template <class T>
BasicPoint3<T> trace_coordinates(const T& p, const T& q, const T& E) {
  BasicPoint3<T> r;
  r.x = (E * E - q * E - p * p - 1) / (2 * p);
  r.y = E / 2;
  r.z = (E - q) / (2 * p);
  return r;
}

/// Closed form of the Fricke-Vogt invariant along l(E).
double curve_invariant(const JacobiParams& params, double E);

/// d/dE of the invariant along l(E): q (p^2 - 1) / (4 p^2).
double invariant_slope(const JacobiParams& params);

/// Symmetric tridiagonal matrix; offdiag[n] couples sites n-1 and n, offdiag[0] is unused.
struct TridiagonalSpec {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t length() const noexcept { return diag.size(); }
  double gershgorin_radius() const noexcept;
  void write_csv(std::ostream& os) const;
};

/// Dirichlet restriction of the operator to the sites of the word.
/// p = 0 is accepted here: the chain decouples at every letter 1.
TridiagonalSpec dirichlet_restriction(const JacobiParams& params, const Word& word);

/// Number of eigenvalues <= E, by Sturm pivot counting.
std::size_t eigen_count_below(const TridiagonalSpec& spec, double E);

/// All eigenvalues in increasing order.
std::vector<double> eigenvalues(const TridiagonalSpec& spec);

/// [-2 - |q| - 2|p|, 2 + |q| + 2|p|].
std::pair<double, double> gershgorin_hull(const JacobiParams& params);

}  // namespace trispec

#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "trispec/substitution.hpp"

namespace trispec {

template <class T>
struct BasicPoint3 {
  T x{};
  T y{};
  T z{};
  friend bool operator==(const BasicPoint3&, const BasicPoint3&) = default;
};

/// Half-trace coordinates (tr(01), tr(0), tr(1)) / 2.
using Point3 = BasicPoint3<double>;

template <class T>
T fricke_vogt(const BasicPoint3<T>& p) {
  T v = p.x * p.x + p.y * p.y + p.z * p.z - 2 * p.x * p.y * p.z - 1;
  return v;
}

namespace maps {

// 2xz - y, guarding the inf - inf case so that escaping orbits keep their sign.
template <class T>
T u_lead(const T& x, const T& y, const T& z) {
  T prod = 2 * x * z;
  if constexpr (std::is_floating_point_v<T>) {
    if (std::isinf(prod)) return prod;
  }
  T r = prod - y;
  return r;
}

template <class T>
BasicPoint3<T> U(const BasicPoint3<T>& p) {
  return {u_lead(p.x, p.y, p.z), p.x, p.z};
}

template <class T>
BasicPoint3<T> U_inverse(const BasicPoint3<T>& p) {
  return {p.y, u_lead(p.y, p.x, p.z), p.z};
}

template <class T>
BasicPoint3<T> P(const BasicPoint3<T>& p) {
  return {p.x, p.z, p.y};
}

/// Classic Fibonacci map f(x,y,z) = (2xy - z, x, y).
template <class T>
BasicPoint3<T> f(const BasicPoint3<T>& p) {
  return {u_lead(p.x, p.z, p.y), p.x, p.y};
}

template <class T>
BasicPoint3<T> f_inverse(const BasicPoint3<T>& p) {
  return {p.z, p.y, u_lead(p.y, p.x, p.z)};
}

/// t_a = U^a o P.
template <class T>
BasicPoint3<T> t(int a, BasicPoint3<T> p) {
  p = P(p);
  for (int i = 0; i < a; ++i) p = U(p);
  return p;
}

template <class T>
BasicPoint3<T> t_inverse(int a, BasicPoint3<T> p) {
  for (int i = 0; i < a; ++i) p = U_inverse(p);
  return P(p);
}

}  // namespace maps

enum class MapKind { swap, shift };

/// P (swap) or U^power (shift; power may be negative).
struct ElementaryMap {
  MapKind kind;
  int power = 1;
  friend bool operator==(const ElementaryMap&, const ElementaryMap&) = default;
};

/// The trace map of s^n is exit o (t_{a_m} o ... o t_{a_1})^n o prefix, where
/// `prefix` changes into a frame in which the abelianization is a product of
/// the matrices M_a = [[a,1],[1,0]], and exit is its inverse.
struct TraceMapRecipe {
  std::vector<ElementaryMap> prefix;  ///< application order
  std::vector<int> period;            ///< t_a coefficients, application order
  Letter star = Letter::zero;         ///< letter whose half-trace is read out
  bool classic_fibonacci = false;     ///< period block uses f instead of t_1

  /// `prefix=[P,U3];period=[1]`
  std::string to_string() const;
  static TraceMapRecipe parse(std::string_view text);
  static TraceMapRecipe fibonacci_classic();

  friend bool operator==(const TraceMapRecipe&, const TraceMapRecipe&) = default;
};

void validate(const TraceMapRecipe& r);

/// Factorizes the abelianization. Throws invalid_argument unless s is primitive and invertible.
TraceMapRecipe recipe_from_substitution(const Substitution& s);

template <class T>
BasicPoint3<T> apply_map(const ElementaryMap& m, BasicPoint3<T> p) {
  if (m.kind == MapKind::swap) return maps::P(p);
  for (int i = 0; i < m.power; ++i) p = maps::U(p);
  for (int i = 0; i < -m.power; ++i) p = maps::U_inverse(p);
  return p;
}

template <class T>
BasicPoint3<T> apply_prefix(const TraceMapRecipe& r, BasicPoint3<T> p) {
  for (const auto& m : r.prefix) p = apply_map(m, p);
  return p;
}

template <class T>
BasicPoint3<T> apply_exit(const TraceMapRecipe& r, BasicPoint3<T> p) {
  for (auto it = r.prefix.rbegin(); it != r.prefix.rend(); ++it)
    p = apply_map(ElementaryMap{it->kind, it->kind == MapKind::swap ? 1 : -it->power}, p);
  return p;
}

template <class T>
BasicPoint3<T> apply_block(const TraceMapRecipe& r, BasicPoint3<T> p) {
  if (r.classic_fibonacci) {
    for (std::size_t i = 0; i < r.period.size(); ++i) p = maps::f(p);
    return p;
  }
  for (int a : r.period) p = maps::t(a, p);
  return p;
}

template <class T>
BasicPoint3<T> apply_block_inverse(const TraceMapRecipe& r, BasicPoint3<T> p) {
  if (r.classic_fibonacci) {
    for (std::size_t i = 0; i < r.period.size(); ++i) p = maps::f_inverse(p);
    return p;
  }
  for (auto it = r.period.rbegin(); it != r.period.rend(); ++it) p = maps::t_inverse(*it, p);
  return p;
}

/// Prefix once (if n >= 1), then the period block n times. Unchecked.
template <class T>
BasicPoint3<T> step_unchecked(const TraceMapRecipe& r, BasicPoint3<T> p, int n) {
  if (n <= 0) return p;
  p = apply_prefix(r, p);
  for (int i = 0; i < n; ++i) p = apply_block(r, p);
  return p;
}

/// Map of s itself in the original coordinates: prefix, one period block, then
/// the exit frame change, with adjacent factors merged. For recipes built from a
/// substitution every shift power is nonnegative, so no cancellation is
/// introduced by the frame change.
std::vector<ElementaryMap> substitution_block(const TraceMapRecipe& r);

template <class T>
BasicPoint3<T> apply_maps(const std::vector<ElementaryMap>& ms, BasicPoint3<T> p) {
  for (const auto& m : ms) p = apply_map(m, p);
  return p;
}

/// Evaluates s^k on trace coordinates.
class LevelMap {
 public:
  explicit LevelMap(const TraceMapRecipe& r) : block_(substitution_block(r)), star_(r.star) {}

  template <class T>
  BasicPoint3<T> point(BasicPoint3<T> p, int k) const {
    for (int i = 0; i < k; ++i) p = apply_maps(block_, p);
    return p;
  }

  /// Half-trace on s^k(star) given the half-traces p of the letters.
  template <class T>
  T half_trace(const BasicPoint3<T>& p, int k) const {
    BasicPoint3<T> q = point(p, k);
    return star_ == Letter::zero ? q.y : q.z;
  }

  const std::vector<ElementaryMap>& block() const noexcept { return block_; }

 private:
  std::vector<ElementaryMap> block_;
  Letter star_;
};

template <class T>
BasicPoint3<T> level_point(const TraceMapRecipe& r, const BasicPoint3<T>& p, int k) {
  return LevelMap(r).point(p, k);
}

template <class T>
T level_half_trace(const TraceMapRecipe& r, const BasicPoint3<T>& p, int k) {
  return LevelMap(r).half_trace(p, k);
}

/// Checked step; throws overflow on a non-finite result.
Point3 step(const TraceMapRecipe& r, const Point3& p, int n);

enum class OrbitKind { bounded_so_far, escaped };

struct OrbitVerdict {
  OrbitKind kind = OrbitKind::bounded_so_far;
  int steps_used = 0;
  Point3 last_point;
  double max_norm = 0.0;
};

inline constexpr double default_escape_norm = 1e3;
inline constexpr int default_band_steps = 60;
inline constexpr int default_point_steps = 200;

OrbitVerdict classify(const TraceMapRecipe& r, const Point3& p, int max_steps,
                      double escape_norm = default_escape_norm);

/// Escape-time raster over a chart of the level surface I = V.
struct SurfaceRaster {
  int resolution = 0;
  double lo = -2.0;
  double hi = 2.0;
  /// steps[sheet][row * resolution + col]; -1 where the chart has no real root,
  /// max_steps where the orbit stayed bounded, else the block index of escape.
  std::vector<int> steps[2];
  std::vector<bool> escaped[2];
  int max_steps = 0;

  double coordinate(int i) const {
    return resolution == 1 ? lo : lo + (hi - lo) * i / (resolution - 1);
  }
};

/// Chart z = xy +/- sqrt((x^2 - 1)(y^2 - 1) + V) over x, y in [lo, hi].
SurfaceRaster surface_section(double V, int resolution, const TraceMapRecipe& r,
                              int max_steps = 40, double lo = -2.0, double hi = 2.0);

}  // namespace trispec

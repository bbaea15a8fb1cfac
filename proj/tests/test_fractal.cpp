#include <doctest.h>

#include <cmath>

#include "trispec/error.hpp"
#include "trispec/fractal.hpp"

using namespace trispec;

namespace {

// middle-thirds Cantor set at depth n
BandSet cantor(int n) {
  std::vector<Band> b{{0, 1}};
  for (int i = 0; i < n; ++i) {
    std::vector<Band> next;
    for (const Band& x : b) {
      const double t = x.length() / 3;
      next.push_back({x.a, x.a + t});
      next.push_back({x.b - t, x.b});
    }
    b = std::move(next);
  }
  return BandSet::from_intervals(std::move(b));
}

}  // namespace

TEST_SUITE("fractal") {

TEST_CASE("box counts") {
  const BandSet unit = BandSet::from_intervals({{0, 1}});
  CHECK(box_count(unit, 0.25) == doctest::Approx(4).epsilon(0.26));
  CHECK(box_count(BandSet::from_intervals({{0.1, 0.2}, {5.1, 5.2}}), 1) == 2);
}

TEST_CASE("finely cut interval has dimension one") {
  std::vector<Band> b;
  for (int i = 0; i < 4096; ++i) b.push_back({i / 4096.0, (i + 0.9) / 4096.0});
  const DimensionEstimate e = box_dimension(BandSet::from_intervals(std::move(b)));
  CHECK(e.value == doctest::Approx(1).epsilon(0.02));
}

TEST_CASE("cantor set") {
  const DimensionEstimate e = box_dimension(cantor(12));
  CHECK(e.value == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(0.05));
  CHECK(e.scales.size() >= 5);
  // thickness of the middle-thirds set is 1
  CHECK(thickness(cantor(8)).value == doctest::Approx(1).epsilon(1e-9));
}

TEST_CASE("thickness edge cases") {
  CHECK(std::isinf(thickness(BandSet::from_intervals({{0, 1}})).value));
  CHECK(thickness(BandSet::from_intervals({{0, 1}, {2, 2.5}})).value == doctest::Approx(0.5));
}

TEST_CASE("insufficient resolution") {
  CHECK_THROWS_AS(box_dimension(BandSet::from_intervals({{0, 1}, {2, 3}})), Error);
  CHECK_THROWS_AS(box_dimension(BandSet{}), Error);
}

TEST_CASE("fibonacci dimension lies in (0, 1) and drops with coupling") {
  const Substitution fib = Substitution::fibonacci();
  const double d1 = box_dimension(floquet_bands(fib, {1, 1}, 14)).value;
  const double d8 = box_dimension(floquet_bands(fib, {1, 8}, 14)).value;
  CHECK(d1 > 0);
  CHECK(d1 < 1);
  CHECK(d8 < d1);
}

TEST_CASE("clip and local profile") {
  const BandSet b = BandSet::from_intervals({{0, 1}, {2, 3}});
  const BandSet c = clip(b, 0.5, 2.5);
  REQUIRE(c.size() == 2);
  CHECK(c.bands[0] == Band{0.5, 1});
  CHECK(c.bands[1] == Band{2, 2.5});

  const auto prof = local_dimension_profile(Substitution::fibonacci(), {1, 2}, 14, 4);
  REQUIRE(prof.size() == 4);
  for (const LocalDimension& w : prof) {
    CHECK(w.lo < w.hi);
    if (w.estimate) CHECK(w.estimate->value <= 1);
  }
  CHECK_THROWS_AS(local_dimension_profile(b, 0), Error);
}

TEST_CASE("decoupled spectrum") {
  // p = 0 leaves isolated blocks "1 0^r"; the Fibonacci word has r in {1, 2}
  const BandSet d = decoupled_spectrum(Substitution::fibonacci(), 0.5, 8);
  CHECK(d.size() >= 2);
  for (const Band& b : d.bands) CHECK(b.a == b.b);
}

TEST_CASE("labelled gap") {
  const Substitution fib = Substitution::fibonacci();
  const double alpha = rotation_number(fib).alpha_value();
  const BandSet b = floquet_bands(fib, {1, 0.5}, 10);
  const auto g = labelled_gap(b, alpha, 1);
  REQUIRE(g);
  CHECK(g->width() > 0);
  const double target = alpha - std::floor(alpha);
  CHECK(std::fabs(g->label_value - target) < 2.0 / b.period);
}

}  // TEST_SUITE

#include <doctest.h>
#include <json.hpp>

#include "trispec/report.hpp"

using namespace trispec;

TEST_SUITE("report") {

TEST_CASE("csv quoting and line ends") {
  CsvTable t({"a", "b"});
  t.row({"1", "x,y"}).row({"say \"hi\"", "two\nlines"});
  CHECK(t.str() == "a,b\r\n1,\"x,y\"\r\n\"say \"\"hi\"\"\",\"two\nlines\"\r\n");
}

TEST_CASE("real format") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(2) == "2");
  CHECK(std::stod(format_real(1.0 / 3)) == 1.0 / 3);
}

TEST_CASE("ppm header") {
  const std::string p = ppm_p6(2, 1, {1, 2, 3, 4, 5, 6});
  CHECK(p.rfind("P6\n2 1\n255\n", 0) == 0);
  CHECK(p.size() == 11 + 6);
}

TEST_CASE("natural length") {
  CHECK(natural_length(Substitution::fibonacci(), 2000) == 2584);
  CHECK(natural_length(Substitution::fibonacci(), 4000) == 4181);
}

TEST_CASE("subst report") {
  const Report r = subst_report(Substitution::fibonacci(), 8);
  const auto j = nlohmann::json::parse(r.json);
  CHECK(j.contains("abelianization"));
  CHECK(j.contains("rotation_number"));
  CHECK(j.dump().find("01001010") != std::string::npos);
}

TEST_CASE("spectrum report files") {
  RunConfig c;
  c.k = 4;
  const Report r = spectrum_report(Substitution::fibonacci(), c);
  REQUIRE(r.files.size() == 1);
  CHECK(r.files[0].first == "bands.csv");
  CHECK(r.files[0].second.rfind("level,a,b\r\n", 0) == 0);
}

TEST_CASE("reports are deterministic") {
  RunConfig c;
  c.k = 6;
  c.samples = 10;
  c.L = 1000;
  c.grid = 64;
  const Report a = dos_report(Substitution::fibonacci(), c);
  const Report b = dos_report(Substitution::fibonacci(), c);
  CHECK(a.json == b.json);
  CHECK(a.files == b.files);
}

TEST_CASE("surface report") {
  RunConfig c;
  c.resolution = 8;
  c.max_steps = 10;
  const Report r = surface_report(Substitution::fibonacci(), c);
  REQUIRE(r.files.size() == 2);
  CHECK(r.files[1].first == "surface.ppm");
  CHECK(r.files[1].second.rfind("P6\n16 8\n255\n", 0) == 0);
}

}  // TEST_SUITE

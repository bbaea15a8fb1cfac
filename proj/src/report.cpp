#include "trispec/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "trispec/dos.hpp"
#include "trispec/error.hpp"
#include "trispec/fractal.hpp"
#include "trispec/tracemap.hpp"

namespace trispec {

using nlohmann::json;

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string quote(const std::string& f) {
  if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
  std::string out = "\"";
  for (char c : f) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string num(double v) { return format_real(v); }
std::string num(long long v) { return std::to_string(v); }
std::string num(std::size_t v) { return std::to_string(v); }

// JSON has no inf/nan
json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json base_summary(const Substitution& s, const RunConfig& c) {
  return {{"substitution", s.to_string()}, {"p", c.params.p}, {"q", c.params.q}, {"k", c.k}};
}

BandSet compute_bands(const Substitution& s, const RunConfig& c, const JacobiParams& params) {
  BandOptions opt;
  opt.tol_rel = c.tol_rel;
  opt.range = c.range;
  return floquet_bands(s, params, c.k, opt);
}

std::string bands_csv(const BandSet& b) {
  CsvTable t({"level", "a", "b"});
  for (const Band& band : b.bands) t.row({std::to_string(b.level), num(band.a), num(band.b)});
  return t.str();
}

json fit_json(const DimensionEstimate& e) {
  return {{"dimension", e.value},  {"slope", e.slope},         {"stderr", e.stderr_},
          {"scale_min", e.scale_min}, {"scale_max", e.scale_max}, {"method", e.method}};
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> header) : width_(header.size()) { row(std::move(header)); }

CsvTable& CsvTable::row(std::vector<std::string> fields) {
  if (fields.size() != width_) fail(ErrorCode::inconsistency, "CSV row width differs from the header");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) text_ += ',';
    text_ += quote(fields[i]);
  }
  text_ += "\r\n";
  return *this;
}

std::string CsvTable::str() const { return text_; }

std::string ppm_p6(int width, int height, const std::vector<std::uint8_t>& rgb) {
  if (width <= 0 || height <= 0 || rgb.size() != static_cast<std::size_t>(width) * height * 3)
    fail(ErrorCode::invalid_argument, "pixel buffer does not match the image size");
  std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  out.append(rgb.begin(), rgb.end());
  return out;
}

std::size_t natural_length(const Substitution& s, std::size_t at_least) {
  for (int n = 0; n < 200; ++n) {
    const std::size_t len = periodic_word_length(s, n);
    if (len >= at_least) return len;
  }
  fail(ErrorCode::overflow, "substitution lengths do not grow");
}

Report subst_report(const Substitution& s, std::size_t prefix) {
  json j;
  j["substitution"] = s.to_string();
  j["image0"] = s.image(Letter::zero).to_string();
  j["image1"] = s.image(Letter::one).to_string();
  const IntMatrix2& m = s.abelianization();
  j["abelianization"] = {{m[0][0], m[0][1]}, {m[1][0], m[1][1]}};
  j["determinant"] = determinant(m);
  j["primitive"] = s.primitive();
  j["invertible"] = s.invertible();
  if (s.primitive()) {
    const StarChoice star = star_choice(s);
    j["star"] = std::string(1, star.star == Letter::zero ? '0' : '1');
    j["star_power"] = star.power;
    std::vector<std::size_t> lengths;
    for (int n = 0; n <= 10; ++n) lengths.push_back(periodic_word_length(s, n));
    j["periodic_lengths"] = lengths;
    j["fixed_point_prefix"] = fixed_point_prefix(s, prefix).to_string();
    const ContinuedFraction slope = frequency_slope(s);
    j["frequency_slope"] = {{"cf", slope.to_string()}, {"value", slope.value()}};
  }
  if (s.primitive() && s.invertible()) {
    const RotationParams r = rotation_number(s);
    j["rotation_number"] = {{"cf", r.alpha.to_string()}, {"value", r.alpha_value()}};
    j["trace_map"] = recipe_from_substitution(s).to_string();
  }
  return {j.dump(2), {}};
}

Report spectrum_report(const Substitution& s, const RunConfig& c) {
  const BandSet b = compute_bands(s, c, c.params);
  json j = base_summary(s, c);
  j["band_count"] = b.size();
  j["period"] = b.period;
  j["measure"] = band_measure(b);
  const auto [lo, hi] = b.hull();
  j["hull"] = {lo, hi};
  return {j.dump(2), {{"bands.csv", bands_csv(b)}}};
}

Report gaps_report(const Substitution& s, const RunConfig& c) {
  const BandSet b = compute_bands(s, c, c.params);
  const std::size_t L = c.L ? c.L : natural_length(s, 2000);
  const double tol = c.label_tol > 0 ? c.label_tol : 2.0 / static_cast<double>(L);
  const IdsCounter ids(s, c.params, L);
  const double alpha = rotation_number(s).alpha_value();
  const std::vector<Gap> gaps = gaps_with_labels(b, [&](double E) { return ids(E); }, alpha, c.m_max, tol);

  CsvTable t({"lo", "hi", "width", "ids", "label_m", "label_distance"});
  std::size_t matched = 0;
  for (const Gap& g : gaps) {
    const auto [m, d] = nearest_label(g.label_value, alpha, c.m_max);
    matched += g.label_m.has_value();
    t.row({num(g.lo), num(g.hi), num(g.width()), num(g.label_value), g.label_m ? num(m) : "", num(d)});
  }
  json j = base_summary(s, c);
  j["L"] = L;
  j["alpha"] = alpha;
  j["m_max"] = c.m_max;
  j["tol"] = tol;
  j["gap_count"] = gaps.size();
  j["matched"] = matched;
  j["unmatched"] = gaps.size() - matched;
  return {j.dump(2), {{"gaps.csv", t.str()}}};
}

Report dims_report(const Substitution& s, const RunConfig& c) {
  const BandSet b = compute_bands(s, c, c.params);
  json j = base_summary(s, c);
  j["band_count"] = b.size();
  j["thickness"] = jnum(thickness(b).value);
  Report r;
  try {
    const DimensionEstimate e = box_dimension(b);
    j["box"] = fit_json(e);
    CsvTable counts({"eps", "count"});
    for (std::size_t i = 0; i < e.scales.size(); ++i) counts.row({num(e.scales[i]), num(e.counts[i])});
    r.files.push_back({"box_counts.csv", counts.str()});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::insufficient_resolution) throw;
    j["box"] = nullptr;
  }
  CsvTable prof({"center", "lo", "hi", "dimension", "stderr", "scale_min", "scale_max"});
  for (const LocalDimension& d : local_dimension_profile(b, c.windows)) {
    if (d.estimate)
      prof.row({num(d.center), num(d.lo), num(d.hi), num(d.estimate->value), num(d.estimate->stderr_),
                num(d.estimate->scale_min), num(d.estimate->scale_max)});
    else
      prof.row({num(d.center), num(d.lo), num(d.hi), "", "", "", ""});
  }
  r.files.push_back({"profile.csv", prof.str()});
  j["windows"] = c.windows;
  r.json = j.dump(2);
  return r;
}

Report dos_report(const Substitution& s, const RunConfig& c) {
  const std::size_t L = c.L ? c.L : natural_length(s, 4000);
  auto [lo, hi] = gershgorin_hull(c.params);
  if (c.range) std::tie(lo, hi) = *c.range;
  // grid extremes sit just outside the hull so N runs from 0 to 1
  const double pad = 1e-9 * (hi - lo);
  const IdsTable table = ids(s, c.params, L, uniform_grid(lo - pad, hi + pad, std::max<std::size_t>(c.grid, 2)));
  CsvTable t({"E", "N"});
  for (std::size_t i = 0; i < table.E_grid.size(); ++i) t.row({num(table.E_grid[i]), num(table.N_values[i])});

  const DosSummary d = dos_dimension_summary(s, c.params, c.samples, L, c.seed);
  CsvTable e({"E", "d"});
  for (std::size_t i = 0; i < d.energies.size(); ++i) e.row({num(d.energies[i]), num(d.exponents[i])});

  json j = {{"substitution", s.to_string()}, {"p", c.params.p}, {"q", c.params.q}};
  j["L"] = L;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["skipped"] = d.skipped;
  j["d_min"] = d.d_min;
  j["d_median"] = d.d_median;
  j["d_max"] = d.d_max;
  return {j.dump(2), {{"ids.csv", t.str()}, {"exponents.csv", e.str()}}};
}

Report surface_report(const Substitution& s, const RunConfig& c) {
  const TraceMapRecipe recipe = recipe_from_substitution(s);
  const double V = c.V ? *c.V : curve_invariant(c.params, 0.0);
  const SurfaceRaster r = surface_section(V, c.resolution, recipe, c.max_steps, c.surface_lo, c.surface_hi);
  const int n = r.resolution;
  CsvTable t({"x", "y", "sheet", "steps"});
  // two sheets side by side: gray = no real point, black = bounded, escape time shaded
  std::vector<std::uint8_t> rgb(static_cast<std::size_t>(2 * n) * n * 3);
  for (int row = 0; row < n; ++row)
    for (int sheet = 0; sheet < 2; ++sheet)
      for (int col = 0; col < n; ++col) {
        const int steps = r.steps[sheet][static_cast<std::size_t>(row) * n + col];
        t.row({num(r.coordinate(col)), num(r.coordinate(row)), std::to_string(sheet), std::to_string(steps)});
        std::uint8_t px[3] = {128, 128, 128};
        if (steps >= 0 && !r.escaped[sheet][static_cast<std::size_t>(row) * n + col]) {
          px[0] = px[1] = px[2] = 0;
        } else if (steps >= 0) {
          const double f = 1.0 - static_cast<double>(steps) / std::max(1, r.max_steps);
          px[0] = static_cast<std::uint8_t>(255 * f);
          px[1] = static_cast<std::uint8_t>(200 * f * f);
          px[2] = static_cast<std::uint8_t>(60 + 120 * (1 - f));
        }
        // image row 0 is the top, y = hi
        const std::size_t at = (static_cast<std::size_t>(n - 1 - row) * 2 * n + sheet * n + col) * 3;
        std::copy(px, px + 3, rgb.begin() + static_cast<std::ptrdiff_t>(at));
      }
  std::size_t bounded = 0, absent = 0;
  for (int sheet = 0; sheet < 2; ++sheet)
    for (std::size_t i = 0; i < r.steps[sheet].size(); ++i) {
      if (r.steps[sheet][i] < 0) ++absent;
      else if (!r.escaped[sheet][i]) ++bounded;
    }
  json j = {{"substitution", s.to_string()}, {"V", V},         {"resolution", n},
            {"max_steps", r.max_steps},    {"lo", r.lo},       {"hi", r.hi},
            {"trace_map", recipe.to_string()}, {"bounded", bounded}, {"no_real_point", absent}};
  return {j.dump(2), {{"surface.csv", t.str()}, {"surface.ppm", ppm_p6(2 * n, n, rgb)}}};
}

Report scan_report(const Substitution& s, const RunConfig& c, ScanVariable var,
                   const std::vector<double>& values, std::optional<long long> label) {
  if (values.empty()) fail(ErrorCode::invalid_argument, "scan needs at least one value");
  const double alpha = label ? rotation_number(s).alpha_value() : 0.0;
  std::vector<std::string> header = {"p", "q", "k", "band_count", "measure", "hull_lo", "hull_hi",
                                     "dimension", "dimension_stderr", "thickness"};
  if (label) header.push_back("gap_width");
  if (var == ScanVariable::p) header.push_back("distance_to_decoupled");
  CsvTable t(header);
  std::optional<BandSet> decoupled;
  if (var == ScanVariable::p) decoupled = decoupled_spectrum(s, c.params.q, c.k);
  json rows = json::array();
  for (double v : values) {
    JacobiParams params = c.params;
    (var == ScanVariable::p ? params.p : params.q) = v;
    const BandSet b = compute_bands(s, c, params);
    const auto [lo, hi] = b.hull();
    std::string dim, dim_err;
    json jr = {{"p", params.p}, {"q", params.q}, {"band_count", b.size()}, {"measure", band_measure(b)}};
    try {
      const DimensionEstimate e = box_dimension(b);
      dim = num(e.value);
      dim_err = num(e.stderr_);
      jr["dimension"] = e.value;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::insufficient_resolution) throw;
      jr["dimension"] = nullptr;
    }
    const double tau = thickness(b).value;
    std::vector<std::string> fields = {num(params.p), num(params.q), std::to_string(c.k), num(b.size()),
                                       num(band_measure(b)), num(lo), num(hi), dim, dim_err, num(tau)};
    if (label) {
      const auto g = labelled_gap(b, alpha, *label);
      fields.push_back(num(g ? g->width() : 0.0));
      jr["gap_width"] = g ? g->width() : 0.0;
    }
    if (decoupled) {
      const double d = hausdorff_distance(b, *decoupled);
      fields.push_back(num(d));
      jr["distance_to_decoupled"] = jnum(d);
    }
    t.row(fields);
    rows.push_back(jr);
  }
  json j = {{"substitution", s.to_string()}, {"k", c.k}, {"vary", var == ScanVariable::p ? "p" : "q"},
            {"rows", rows}};
  if (label) j["label"] = *label;
  return {j.dump(2), {{"scan.csv", t.str()}}};
}

}  // namespace trispec

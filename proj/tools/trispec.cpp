// Command-line front end; talks to the library only through trispec.h.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "trispec/trispec.h"

namespace {

constexpr int exit_usage = 2;
constexpr int exit_failure = 1;

struct Options {
  std::string subst = "0->01;1->0";
  std::string spec_arg;
  ts_config config{};
  std::optional<double> emin, emax, V;
  std::string out;
  bool json = false;
  int threads = 0;
  std::string vary = "q";
  std::vector<double> values;
  std::optional<long long> label;
};

struct Failure {
  int code;
  std::string message;
};

void check(ts_status s) {
  if (s != TS_OK) throw Failure{exit_failure, std::string(ts_status_string(s)) + ": " + ts_last_error()};
}

std::string scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  return v.dump();
}

// "key: value" lines; nested objects get dotted keys, short arrays stay inline
void print_human(const nlohmann::json& j, const std::string& prefix, std::ostream& os) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      print_human(*it, key, os);
    } else if (it->is_array() && !it->empty() && it->front().is_object()) {
      for (std::size_t i = 0; i < it->size(); ++i) print_human((*it)[i], key + "[" + std::to_string(i) + "]", os);
    } else if (it->is_array()) {
      os << key << ":";
      for (const auto& e : *it) os << ' ' << (e.is_array() ? e.dump() : scalar(e));
      os << '\n';
    } else {
      os << key << ": " << scalar(*it) << '\n';
    }
  }
}

void emit(ts_report* r, const Options& o) {
  const std::string summary = ts_report_json(r);
  if (!o.out.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(o.out, ec);
    auto write = [&](const std::string& name, const char* data, std::size_t size) {
      const std::filesystem::path path = std::filesystem::path(o.out) / name;
      std::ofstream f(path, std::ios::binary);
      if (f) f.write(data, static_cast<std::streamsize>(size));
      if (!f) throw Failure{exit_failure, "i/o error: cannot write " + path.string()};
    };
    for (std::size_t i = 0; i < ts_report_file_count(r); ++i) {
      const char* data = nullptr;
      std::size_t size = 0;
      check(ts_report_file_data(r, i, &data, &size));
      write(ts_report_file_name(r, i), data, size);
    }
    const std::string js = summary + "\n";
    write("summary.json", js.data(), js.size());
  }
  if (o.json) {
    std::cout << summary << '\n';
  } else {
    print_human(nlohmann::json::parse(summary), "", std::cout);
    if (!o.out.empty())
      for (std::size_t i = 0; i < ts_report_file_count(r); ++i)
        std::cout << "wrote: " << (std::filesystem::path(o.out) / ts_report_file_name(r, i)).string() << '\n';
  }
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--subst", o.subst, "substitution, e.g. 0->01;1->0");
  cmd->add_option("--p", o.config.p, "hopping on letter 1");
  cmd->add_option("--q", o.config.q, "potential on letter 1");
  cmd->add_option("--k", o.config.k, "level of the periodic approximation")->check(CLI::NonNegativeNumber);
  cmd->add_option("--emin", o.emin, "lower end of the energy range");
  cmd->add_option("--emax", o.emax, "upper end of the energy range");
  cmd->add_option("--tol", o.config.tol, "relative bisection tolerance (0 = last bit)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", o.config.seed, "seed for sampling");
  cmd->add_option("--out", o.out, "directory for CSV/PPM/JSON files");
  cmd->add_flag("--json", o.json, "print the report as JSON");
  cmd->add_option("--threads", o.threads, "worker threads (0 = logical cores)")->check(CLI::NonNegativeNumber);
}

using Runner = ts_status (*)(const ts_substitution*, const ts_config*, ts_report**);

void run(const Options& o, const std::string& which) {
  ts_config c = o.config;
  if (o.emin.has_value() != o.emax.has_value()) throw Failure{exit_usage, "--emin and --emax go together"};
  if (o.emin) {
    if (!(*o.emax > *o.emin)) throw Failure{exit_usage, "--emax must exceed --emin"};
    c.has_range = 1;
    c.emin = *o.emin;
    c.emax = *o.emax;
  }
  if (o.V) {
    c.has_V = 1;
    c.V = *o.V;
  }
  check(ts_set_threads(o.threads));

  ts_substitution* s = nullptr;
  const std::string text = o.spec_arg.empty() ? o.subst : o.spec_arg;
  if (ts_substitution_parse(text.c_str(), &s) != TS_OK)
    throw Failure{exit_usage, std::string("bad substitution: ") + ts_last_error()};
  ts_report* r = nullptr;
  ts_status st = TS_OK;
  if (which == "subst") {
    st = ts_report_subst(s, c.prefix, &r);
  } else if (which == "scan") {
    if (o.vary != "p" && o.vary != "q") {
      ts_substitution_free(s);
      throw Failure{exit_usage, "--vary must be p or q"};
    }
    st = ts_report_scan(s, &c, o.vary == "p" ? TS_SCAN_P : TS_SCAN_Q, o.values.data(), o.values.size(),
                        o.label.has_value(), o.label.value_or(0), &r);
  } else {
    Runner f = which == "spectrum" ? ts_report_spectrum
             : which == "gaps"     ? ts_report_gaps
             : which == "dims"     ? ts_report_dims
             : which == "dos"      ? ts_report_dos
                                   : ts_report_surface;
    st = f(s, &c, &r);
  }
  ts_substitution_free(s);
  check(st);
  try {
    emit(r, o);
  } catch (...) {
    ts_report_free(r);
    throw;
  }
  ts_report_free(r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of substitution Jacobi operators via trace maps"};
  app.require_subcommand(1);
  Options o;
  ts_config_default(&o.config);

  auto* subst = app.add_subcommand("subst", "validity, abelianization, rotation number, fixed point");
  subst->add_option("spec", o.spec_arg, "substitution, e.g. 0->01;1->0");
  subst->add_option("--prefix", o.config.prefix, "letters of the fixed point to print");
  add_common(subst, o);

  auto* spectrum = app.add_subcommand("spectrum", "bands of sigma_k");
  add_common(spectrum, o);

  auto* gaps = app.add_subcommand("gaps", "gaps of sigma_k with IDS labels");
  add_common(gaps, o);
  gaps->add_option("--L", o.config.L, "truncation length for the IDS (default: first |s^n| >= 2000)");
  gaps->add_option("--m-max", o.config.m_max, "largest |m| tried as a label")->check(CLI::NonNegativeNumber);
  gaps->add_option("--label-tol", o.config.label_tol, "label tolerance (default 2/L)");

  auto* dims = app.add_subcommand("dims", "box dimension, thickness and local dimension profile");
  add_common(dims, o);
  dims->add_option("--windows", o.config.windows, "windows in the local profile")->check(CLI::PositiveNumber);

  auto* dos = app.add_subcommand("dos", "integrated density of states and its scaling exponents");
  add_common(dos, o);
  dos->add_option("--L", o.config.L, "truncation length (default: first |s^n| >= 4000)");
  dos->add_option("--samples", o.config.samples, "sampled energies")->check(CLI::PositiveNumber);
  dos->add_option("--grid", o.config.grid, "points in the IDS table")->check(CLI::Range(2, 1 << 24));

  auto* surface = app.add_subcommand("surface", "escape-time raster of an invariant surface");
  add_common(surface, o);
  surface->add_option("--V", o.V, "invariant value (default: value on the curve at E = 0)");
  surface->add_option("--res", o.config.resolution, "pixels per side")->check(CLI::Range(1, 8192));
  surface->add_option("--steps", o.config.max_steps, "block steps before an orbit counts as bounded")
      ->check(CLI::PositiveNumber);
  surface->add_option("--lo", o.config.surface_lo, "chart lower bound");
  surface->add_option("--hi", o.config.surface_hi, "chart upper bound");

  auto* scan = app.add_subcommand("scan", "band summary over a list of p or q values");
  add_common(scan, o);
  scan->add_option("--vary", o.vary, "p or q")->check(CLI::IsMember({"p", "q"}));
  scan->add_option("--values", o.values, "comma separated values")->delimiter(',')->required();
  scan->add_option("--label", o.label, "also report the width of the gap labelled m");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_usage;
  }
  try {
    run(o, app.get_subcommands().front()->get_name());
  } catch (const Failure& f) {
    std::cerr << "trispec: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "trispec: " << e.what() << '\n';
    return exit_failure;
  }
  return 0;
}

#include "trispec/tracemap.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "trispec/error.hpp"
#include "trispec/parallel.hpp"

namespace trispec {

std::string TraceMapRecipe::to_string() const {
  std::ostringstream os;
  os << "prefix=[";
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (i) os << ',';
    if (prefix[i].kind == MapKind::swap)
      os << 'P';
    else
      os << 'U' << prefix[i].power;
  }
  os << "];period=[";
  for (std::size_t i = 0; i < period.size(); ++i) os << (i ? "," : "") << period[i];
  os << ']';
  return os.str();
}

namespace {

std::vector<std::string> split_list(const std::string& body) {
  std::vector<std::string> items;
  std::string cur;
  for (char c : body) {
    if (c == ',') {
      items.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty() || !items.empty()) items.push_back(cur);
  return items;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) fail(ErrorCode::invalid_argument, "bad integer '" + s + "'");
  return v;
}

std::string field(const std::string& text, const std::string& key) {
  const std::string open = key + "=[";
  std::size_t at = text.find(open);
  if (at == std::string::npos) fail(ErrorCode::invalid_argument, "recipe lacks " + key);
  std::size_t close = text.find(']', at);
  if (close == std::string::npos) fail(ErrorCode::invalid_argument, "unterminated " + key);
  return text.substr(at + open.size(), close - at - open.size());
}

}  // namespace

TraceMapRecipe TraceMapRecipe::parse(std::string_view raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  TraceMapRecipe r;
  for (const auto& item : split_list(field(text, "prefix"))) {
    if (item == "P")
      r.prefix.push_back({MapKind::swap, 1});
    else if (item.size() >= 2 && item[0] == 'U')
      r.prefix.push_back({MapKind::shift, parse_int(item.substr(1))});
    else
      fail(ErrorCode::invalid_argument, "bad prefix factor '" + item + "'");
  }
  for (const auto& item : split_list(field(text, "period"))) r.period.push_back(parse_int(item));
  validate(r);
  return r;
}

TraceMapRecipe TraceMapRecipe::fibonacci_classic() {
  TraceMapRecipe r;
  r.period = {1};
  r.classic_fibonacci = true;
  return r;
}

void validate(const TraceMapRecipe& r) {
  if (r.period.empty()) fail(ErrorCode::invalid_argument, "recipe period is empty");
  for (int a : r.period)
    if (a < 1) fail(ErrorCode::invalid_argument, "period factors must be >= 1");
  if (r.classic_fibonacci && (r.period.size() != 1 || r.period[0] != 1 || !r.prefix.empty()))
    fail(ErrorCode::invalid_argument, "classic Fibonacci form requires period [1] and no prefix");
}

namespace {

// Token stream over {R^c, J}; R^c with c > 0, J the coordinate swap.
struct Token {
  bool swap;
  long long power;
};

void push_r(std::vector<Token>& out, long long c) {
  if (!out.empty() && !out.back().swap)
    out.back().power += c;
  else
    out.push_back({false, c});
}

void push_j(std::vector<Token>& out) {
  if (!out.empty() && out.back().swap)
    out.pop_back();
  else
    out.push_back({true, 0});
}

}  // namespace

TraceMapRecipe recipe_from_substitution(const Substitution& s) {
  if (!s.primitive()) fail(ErrorCode::invalid_argument, "substitution is not primitive");
  if (!s.invertible()) fail(ErrorCode::invalid_argument, "substitution is not invertible");

  IntMatrix2 x = s.abelianization();
  const long long det = determinant(x);
  if (det != 1 && det != -1) fail(ErrorCode::inconsistency, "abelianization is not unimodular");
  if (det == -1) {  // x * J
    for (auto& row : x) std::swap(row[0], row[1]);
  }

  // peel x = R x' or x = L x' until the identity; L = J R J
  std::vector<Token> tokens;
  for (int guard = 0; !(x[0][0] == 1 && x[0][1] == 0 && x[1][0] == 0 && x[1][1] == 1); ++guard) {
    if (guard > 100000) fail(ErrorCode::inconsistency, "abelianization factorization did not terminate");
    if (x[0][0] >= x[1][0] && x[0][1] >= x[1][1]) {
      x[0][0] -= x[1][0];
      x[0][1] -= x[1][1];
      push_r(tokens, 1);
    } else if (x[1][0] >= x[0][0] && x[1][1] >= x[0][1]) {
      x[1][0] -= x[0][0];
      x[1][1] -= x[0][1];
      push_j(tokens);
      push_r(tokens, 1);
      push_j(tokens);
    } else {
      fail(ErrorCode::inconsistency, "abelianization is not a nonnegative product");
    }
  }
  if (det == -1) push_j(tokens);
  if (!tokens.empty() && !tokens.back().swap) {  // R^c = R^c J J
    tokens.push_back({true, 0});
    tokens.push_back({true, 0});
  }

  // tokens = J^e1 (R^c1 J) ... (R^cm J) J^e2
  std::size_t i = 0;
  int e1 = 0, e2 = 0;
  if (i < tokens.size() && tokens[i].swap) {
    e1 = 1;
    ++i;
  }
  std::vector<long long> c;
  while (i + 1 < tokens.size() && !tokens[i].swap && tokens[i + 1].swap) {
    c.push_back(tokens[i].power);
    i += 2;
  }
  if (i < tokens.size() && tokens[i].swap) {
    e2 = 1;
    ++i;
  }
  if (i != tokens.size() || c.empty())
    fail(ErrorCode::inconsistency, "unexpected factorization of the abelianization");

  TraceMapRecipe r;
  r.star = star_choice(s).star;
  if (e1 == e2) {
    if (e1) r.prefix.push_back({MapKind::swap, 1});
  } else {
    // A = G D G^-1 with G = J^e1 R^-cm and D = M_{cm+c1} M_c2 ... M_c(m-1)
    if (c.size() < 2) fail(ErrorCode::inconsistency, "abelianization is not primitive");
    const long long cm = c.back();
    c.pop_back();
    c.front() += cm;
    if (e1) r.prefix.push_back({MapKind::swap, 1});
    r.prefix.push_back({MapKind::shift, static_cast<int>(cm)});
  }
  // T_{M_c1 ... M_cm} = t_c1 o ... o t_cm, so t_cm acts first
  for (auto it = c.rbegin(); it != c.rend(); ++it) r.period.push_back(static_cast<int>(*it));
  return r;
}

namespace {

void push_map(std::vector<ElementaryMap>& out, ElementaryMap m) {
  if (m.kind == MapKind::shift && m.power == 0) return;
  if (!out.empty() && out.back().kind == m.kind) {
    if (m.kind == MapKind::swap) {
      out.pop_back();
    } else {
      out.back().power += m.power;
      if (out.back().power == 0) out.pop_back();
    }
    return;
  }
  out.push_back(m);
}

}  // namespace

std::vector<ElementaryMap> substitution_block(const TraceMapRecipe& r) {
  validate(r);
  std::vector<ElementaryMap> out;
  for (const auto& m : r.prefix) push_map(out, m);
  for (int a : r.period) {
    push_map(out, {MapKind::swap, 1});
    push_map(out, {MapKind::shift, a});
  }
  for (auto it = r.prefix.rbegin(); it != r.prefix.rend(); ++it)
    push_map(out, {it->kind, it->kind == MapKind::swap ? 1 : -it->power});
  return out;
}

Point3 step(const TraceMapRecipe& r, const Point3& p, int n) {
  if (n < 0) fail(ErrorCode::invalid_argument, "step count must be nonnegative");
  Point3 q = step_unchecked(r, p, n);
  if (!std::isfinite(q.x) || !std::isfinite(q.y) || !std::isfinite(q.z))
    fail(ErrorCode::overflow, "trace map orbit left the double range");
  return q;
}

namespace {

double max_abs(const Point3& p) {
  return std::max({std::fabs(p.x), std::fabs(p.y), std::fabs(p.z)});
}

double min_abs(const Point3& p) {
  return std::min({std::fabs(p.x), std::fabs(p.y), std::fabs(p.z)});
}

}  // namespace

OrbitVerdict classify(const TraceMapRecipe& r, const Point3& p, int max_steps, double escape_norm) {
  if (max_steps < 1) fail(ErrorCode::invalid_argument, "max_steps must be >= 1");
  if (!(escape_norm > 1)) fail(ErrorCode::invalid_argument, "escape_norm must exceed 1");
  OrbitVerdict v;
  Point3 q = apply_prefix(r, p);
  double norms[4] = {max_abs(q), 0, 0, 0};
  v.max_norm = norms[0];
  v.last_point = q;
  for (int i = 1; i <= max_steps; ++i) {
    q = apply_block(r, q);
    v.steps_used = i;
    const double n = max_abs(q);
    if (std::isnan(n) || std::isinf(n)) {
      v.kind = OrbitKind::escaped;
      v.max_norm = HUGE_VAL;
      v.last_point = q;
      return v;
    }
    v.last_point = q;
    v.max_norm = std::max(v.max_norm, n);
    norms[0] = norms[1];
    norms[1] = norms[2];
    norms[2] = norms[3];
    norms[3] = n;
    if (i >= 3 && min_abs(q) > 1 && n > escape_norm && norms[0] < norms[1] && norms[1] < norms[2] &&
        norms[2] < norms[3]) {
      v.kind = OrbitKind::escaped;
      return v;
    }
  }
  v.kind = OrbitKind::bounded_so_far;
  return v;
}

SurfaceRaster surface_section(double V, int resolution, const TraceMapRecipe& r, int max_steps,
                              double lo, double hi) {
  if (resolution < 2) fail(ErrorCode::invalid_argument, "resolution must be >= 2");
  if (!(hi > lo)) fail(ErrorCode::invalid_argument, "chart range is empty");
  SurfaceRaster out;
  out.resolution = resolution;
  out.lo = lo;
  out.hi = hi;
  out.max_steps = max_steps;
  const std::size_t cells = static_cast<std::size_t>(resolution) * resolution;
  std::vector<char> esc[2];
  for (int s = 0; s < 2; ++s) {
    out.steps[s].assign(cells, -1);
    esc[s].assign(cells, 0);
  }
  parallel_for(static_cast<std::size_t>(resolution), [&](std::size_t row) {
    const double y = out.coordinate(static_cast<int>(row));
    for (int col = 0; col < resolution; ++col) {
      const double x = out.coordinate(col);
      const double disc = (x * x - 1) * (y * y - 1) + V;
      if (disc < 0) continue;
      const double root = std::sqrt(disc);
      for (int s = 0; s < 2; ++s) {
        const double z = x * y + (s == 0 ? root : -root);
        OrbitVerdict v = classify(r, Point3{x, y, z}, max_steps);
        const std::size_t idx = row * resolution + col;
        out.steps[s][idx] = v.kind == OrbitKind::escaped ? v.steps_used : max_steps;
        esc[s][idx] = v.kind == OrbitKind::escaped;
      }
    }
  });
  for (int s = 0; s < 2; ++s) out.escaped[s].assign(esc[s].begin(), esc[s].end());
  return out;
}

}  // namespace trispec

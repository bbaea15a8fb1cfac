#include "trispec/substitution.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "trispec/error.hpp"

namespace trispec {

Word Word::parse(std::string_view text) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    if (c == '0')
      letters.push_back(Letter::zero);
    else if (c == '1')
      letters.push_back(Letter::one);
    else
      fail(ErrorCode::invalid_argument, std::string("word contains '") + c + "'");
  }
  return Word(std::move(letters));
}

std::size_t Word::count(Letter l) const noexcept {
  return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), l));
}

bool Word::starts_with(const Word& prefix) const noexcept {
  return prefix.size() <= size() &&
         std::equal(prefix.letters_.begin(), prefix.letters_.end(), letters_.begin());
}

std::string Word::to_string() const {
  std::string out(letters_.size(), '0');
  for (std::size_t i = 0; i < letters_.size(); ++i)
    if (letters_[i] == Letter::one) out[i] = '1';
  return out;
}

// ---- free group ----

GroupWord::GroupWord(const Word& w) {
  for (Letter l : w.letters()) push(l, 1);
}

GroupWord GroupWord::generator(Letter l, long exponent) {
  GroupWord g;
  g.push(l, exponent);
  return g;
}

void GroupWord::push(Letter l, long exponent) {
  if (exponent == 0) return;
  if (!syllables_.empty() && syllables_.back().letter == l) {
    syllables_.back().exponent += exponent;
    if (syllables_.back().exponent == 0) syllables_.pop_back();
    return;
  }
  syllables_.push_back({l, exponent});
}

GroupWord GroupWord::inverse() const {
  GroupWord g;
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
    g.syllables_.push_back({it->letter, -it->exponent});
  return g;
}

GroupWord GroupWord::operator*(const GroupWord& rhs) const {
  GroupWord g = *this;
  for (const auto& s : rhs.syllables_) g.push(s.letter, s.exponent);
  return g;
}

GroupWord GroupWord::cyclically_reduced() const {
  std::vector<Syllable> s = syllables_;
  std::size_t lo = 0;
  std::size_t hi = s.size();
  while (hi - lo >= 2 && s[lo].letter == s[hi - 1].letter) {
    s[lo].exponent += s[hi - 1].exponent;
    --hi;
    if (s[lo].exponent == 0) ++lo;
  }
  GroupWord g;
  for (std::size_t i = lo; i < hi; ++i) g.push(s[i].letter, s[i].exponent);
  return g;
}

long GroupWord::length() const noexcept {
  long n = 0;
  for (const auto& s : syllables_) n += std::labs(s.exponent);
  return n;
}

namespace {

std::vector<int> signed_letters(const GroupWord& g) {
  std::vector<int> out;
  for (const auto& s : g.syllables()) {
    int v = index(s.letter) + 1;
    if (s.exponent < 0) v = -v;
    for (long i = 0; i < std::labs(s.exponent); ++i) out.push_back(v);
  }
  return out;
}

}  // namespace

bool GroupWord::is_cyclic_rotation_of(const GroupWord& other) const {
  if (length() != other.length()) return false;
  auto a = signed_letters(*this);
  auto b = signed_letters(other);
  if (a.empty()) return true;
  std::vector<int> aa(a);
  aa.insert(aa.end(), a.begin(), a.end());
  return std::search(aa.begin(), aa.end(), b.begin(), b.end()) != aa.end();
}

// ---- matrices ----

IntMatrix2 multiply(const IntMatrix2& a, const IntMatrix2& b) {
  IntMatrix2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

long long determinant(const IntMatrix2& m) noexcept {
  return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

// ---- substitution ----

Substitution::Substitution(Word image0, Word image1)
    : image0_(std::move(image0)), image1_(std::move(image1)) {
  if (image0_.empty() || image1_.empty())
    fail(ErrorCode::invalid_substitution, "substitution images must be nonempty");
  for (int i = 0; i < 2; ++i) {
    const Word& w = i == 0 ? image0_ : image1_;
    abelianization_[i][0] = static_cast<long long>(w.count(Letter::zero));
    abelianization_[i][1] = static_cast<long long>(w.count(Letter::one));
  }
  primitive_ = check_primitive(*this);
  invertible_ = check_invertible(*this);
}

Substitution Substitution::parse(std::string_view spec) {
  std::string text;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);

  std::string images[2];
  bool seen[2] = {false, false};
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string::npos) end = text.size();
    std::string rule = text.substr(pos, end - pos);
    pos = end + 1;
    if (rule.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (rule.size() < 4 || (rule[0] != '0' && rule[0] != '1') || rule.compare(1, 2, "->") != 0)
      fail(ErrorCode::invalid_substitution, "malformed rule '" + rule + "'");
    int i = rule[0] - '0';
    if (seen[i]) fail(ErrorCode::invalid_substitution, "letter defined twice");
    seen[i] = true;
    images[i] = rule.substr(3);
    if (images[i].find_first_not_of("01") != std::string::npos)
      fail(ErrorCode::invalid_substitution, "image '" + images[i] + "' is not a binary word");
  }
  if (!seen[0] || !seen[1])
    fail(ErrorCode::invalid_substitution, "expected rules for both letters, e.g. 0->01;1->0");
  return Substitution(Word::parse(images[0]), Word::parse(images[1]));
}

Substitution Substitution::fibonacci() {
  return Substitution(Word::parse("01"), Word::parse("0"));
}

Word Substitution::apply(const Word& w, std::size_t cap) const {
  std::size_t n = 0;
  const std::size_t c0 = w.count(Letter::zero);
  const std::size_t c1 = w.size() - c0;
  n = c0 * image0_.size() + c1 * image1_.size();
  if (n > cap) fail(ErrorCode::resource, "word length " + std::to_string(n) + " exceeds cap");
  std::vector<Letter> out;
  out.reserve(n);
  for (Letter l : w.letters()) {
    const auto& img = image(l).letters();
    out.insert(out.end(), img.begin(), img.end());
  }
  return Word(std::move(out));
}

GroupWord Substitution::apply(const GroupWord& w) const {
  const GroupWord g0(image0_);
  const GroupWord g1(image1_);
  GroupWord out;
  for (const auto& s : w.syllables()) {
    GroupWord base = s.letter == Letter::zero ? g0 : g1;
    if (s.exponent < 0) base = base.inverse();
    for (long i = 0; i < std::labs(s.exponent); ++i) out = out * base;
  }
  return out;
}

Substitution Substitution::squared() const {
  return Substitution(apply(image0_), apply(image1_));
}

std::string Substitution::to_string() const {
  return "0->" + image0_.to_string() + ";1->" + image1_.to_string();
}

bool check_primitive(const Substitution& s) {
  const IntMatrix2& a = s.abelianization();
  IntMatrix2 p = a;
  for (int k = 1; k <= 4; ++k) {
    if (p[0][0] > 0 && p[0][1] > 0 && p[1][0] > 0 && p[1][1] > 0) return true;
    p = multiply(p, a);
  }
  return false;
}

bool check_invertible(const Substitution& s) {
  const GroupWord a = GroupWord::generator(Letter::zero);
  const GroupWord b = GroupWord::generator(Letter::one);
  const GroupWord comm = a * b * a.inverse() * b.inverse();
  const GroupWord image = s.apply(comm).cyclically_reduced();
  if (image.length() != 4) return false;
  return image.is_cyclic_rotation_of(comm) || image.is_cyclic_rotation_of(comm.inverse());
}

StarChoice star_choice(const Substitution& s) {
  if (s.image(Letter::zero).front() == Letter::zero) return {Letter::zero, 1};
  if (s.image(Letter::one).front() == Letter::one) return {Letter::one, 1};
  // s(0) starts with 1 and s(1) starts with 0, so s^2(0) starts with 0
  return {Letter::zero, 2};
}

namespace {

// First n letters of s(w); enough when w is itself a prefix of a fixed point.
Word apply_prefix(const Substitution& s, const Word& w, std::size_t n) {
  std::vector<Letter> out;
  out.reserve(n);
  for (Letter l : w.letters()) {
    for (Letter x : s.image(l).letters()) {
      if (out.size() == n) return Word(std::move(out));
      out.push_back(x);
    }
  }
  return Word(std::move(out));
}

}  // namespace

Word fixed_point_prefix(const Substitution& s, std::size_t n, std::size_t cap) {
  if (n == 0) fail(ErrorCode::invalid_argument, "prefix length must be positive");
  if (n > cap) fail(ErrorCode::resource, "prefix length exceeds cap");
  const StarChoice star = star_choice(s);
  Word w({star.star});
  while (w.size() < n) {
    Word next = w;
    for (int i = 0; i < star.power; ++i) next = apply_prefix(s, next, n);
    if (next.size() <= w.size())
      fail(ErrorCode::unsupported, "substitution has no growing fixed point");
    w = std::move(next);
  }
  w.truncate(n);
  return w;
}

Word periodic_word(const Substitution& s, int k, std::size_t cap) {
  if (k < 0) fail(ErrorCode::invalid_argument, "level must be nonnegative");
  if (periodic_word_length(s, k) > cap)
    fail(ErrorCode::resource, "periodic word at level " + std::to_string(k) + " exceeds cap");
  Word w({star_choice(s).star});
  for (int i = 0; i < k; ++i) w = s.apply(w, cap);
  return w;
}

std::size_t periodic_word_length(const Substitution& s, int k) {
  const int star = index(star_choice(s).star);
  // counts of (0,1) in s^i(star)
  long double c0 = star == 0 ? 1 : 0;
  long double c1 = star == 1 ? 1 : 0;
  const auto& a = s.abelianization();
  for (int i = 0; i < k; ++i) {
    long double n0 = c0 * a[0][0] + c1 * a[1][0];
    long double n1 = c0 * a[0][1] + c1 * a[1][1];
    c0 = n0;
    c1 = n1;
    if (c0 + c1 > static_cast<long double>(std::numeric_limits<std::size_t>::max()) / 2)
      return std::numeric_limits<std::size_t>::max();
  }
  return static_cast<std::size_t>(c0 + c1);
}

// ---- continued fractions ----

long long ContinuedFraction::coefficient(std::size_t n) const {
  if (n == 0) return integer_part;
  if (n <= preperiod.size()) return preperiod[n - 1];
  if (period.empty()) fail(ErrorCode::invalid_argument, "continued fraction has no period");
  return period[(n - 1 - preperiod.size()) % period.size()];
}

double ContinuedFraction::value(std::size_t terms) const {
  long double x = 0;
  for (std::size_t n = terms; n >= 1; --n) x = 1.0L / (static_cast<long double>(coefficient(n)) + x);
  return static_cast<double>(static_cast<long double>(integer_part) + x);
}

std::string ContinuedFraction::to_string() const {
  std::ostringstream os;
  os << '[' << integer_part << ';';
  for (std::size_t i = 0; i < preperiod.size(); ++i) os << (i ? "," : "") << preperiod[i];
  if (!preperiod.empty()) os << ',';
  os << '(';
  for (std::size_t i = 0; i < period.size(); ++i) os << (i ? "," : "") << period[i];
  os << ")]";
  return os.str();
}

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long isqrt(long long d) {
  auto r = static_cast<long long>(std::sqrt(static_cast<long double>(d)));
  while (r * r > d) --r;
  while ((r + 1) * (r + 1) <= d) ++r;
  return r;
}

struct SurdExpansion {
  std::vector<long long> pre;  // includes the integer part
  std::vector<long long> per;
};

// Continued fraction of (p + sqrt(d)) / q, exact. Requires q | d - p^2.
SurdExpansion expand_surd(long long p, long long d, long long q) {
  const long long s = isqrt(d);
  if (s * s == d) fail(ErrorCode::invalid_argument, "value is rational");
  if (q == 0 || (d - p * p) % q != 0)
    fail(ErrorCode::invalid_argument, "surd is not in reduced form");
  std::map<std::pair<long long, long long>, std::size_t> seen;
  std::vector<long long> coeffs;
  while (true) {
    auto [it, inserted] = seen.emplace(std::make_pair(p, q), coeffs.size());
    if (!inserted) {
      SurdExpansion e;
      e.pre.assign(coeffs.begin(), coeffs.begin() + static_cast<long>(it->second));
      e.per.assign(coeffs.begin() + static_cast<long>(it->second), coeffs.end());
      return e;
    }
    long long a = q > 0 ? floor_div(p + s, q) : -(floor_div(p + s, -q) + 1);
    coeffs.push_back(a);
    p = a * q - p;
    q = (d - p * p) / q;
    if (coeffs.size() > 100000) fail(ErrorCode::resource, "continued fraction period too long");
  }
}

ContinuedFraction to_fraction(const SurdExpansion& e) {
  ContinuedFraction cf;
  if (!e.pre.empty()) {
    cf.integer_part = e.pre.front();
    cf.preperiod.assign(e.pre.begin() + 1, e.pre.end());
    cf.period = e.per;
  } else {
    cf.integer_part = e.per.front();
    cf.period.assign(e.per.begin() + 1, e.per.end());
    cf.period.push_back(e.per.front());
  }
  return cf;
}

void require_rotation_input(const Substitution& s) {
  if (!s.primitive()) fail(ErrorCode::invalid_argument, "substitution is not primitive");
  if (!s.invertible()) fail(ErrorCode::invalid_argument, "substitution is not invertible");
}

}  // namespace

ContinuedFraction frequency_slope(const Substitution& s) {
  require_rotation_input(s);
  const auto& m = s.abelianization();
  const long long a = m[0][0], b = m[0][1], c = m[1][0], d = m[1][1];
  // freq(1)/freq(0) solves c t^2 + (a - d) t - b = 0
  return to_fraction(expand_surd(d - a, (a - d) * (a - d) + 4 * b * c, 2 * c));
}

RotationParams rotation_number(const Substitution& s) {
  require_rotation_input(s);
  const auto& m = s.abelianization();
  const long long a = m[0][0], b = m[0][1], c = m[1][0], d = m[1][1];
  // 1/freq(1) = (2b + a - d + sqrt(delta)) / (2b)
  SurdExpansion e = expand_surd(2 * b + a - d, (a - d) * (a - d) + 4 * b * c, 2 * b);
  RotationParams r;
  r.alpha.integer_part = 0;
  r.alpha.preperiod = e.pre;
  r.alpha.period = e.per;
  return r;
}

Word rotation_sample(const RotationParams& r, long long n_from, long long n_to) {
  if (n_from > n_to) fail(ErrorCode::invalid_argument, "n_from must not exceed n_to");
  const long double alpha = r.alpha.value();
  const long double lo = 1.0L - alpha;
  std::vector<Letter> out;
  out.reserve(static_cast<std::size_t>(n_to - n_from + 1));
  for (long long n = n_from; n <= n_to; ++n) {
    long double x = static_cast<long double>(n) * alpha + static_cast<long double>(r.beta);
    x -= std::floor(x);
    bool one = r.interval == SamplingInterval::closed_open ? x >= lo : (x > lo || x == 0.0L);
    out.push_back(one ? Letter::one : Letter::zero);
  }
  return Word(std::move(out));
}

BetaScan scan_beta(const RotationParams& r, const Word& target, long long m_max) {
  if (target.empty()) fail(ErrorCode::invalid_argument, "empty target word");
  const long double alpha = r.alpha.value();
  BetaScan best{0.0, 0, 0};
  bool have = false;
  for (long long k = 0; k <= 2 * m_max; ++k) {
    const long long m = (k % 2 == 0) ? -(k / 2) : (k + 1) / 2;
    long double beta = static_cast<long double>(m) * alpha;
    beta -= std::floor(beta);
    RotationParams trial = r;
    trial.beta = static_cast<double>(beta);
    const Word w = rotation_sample(trial, 1, static_cast<long long>(target.size()));
    std::size_t agree = 0;
    while (agree < w.size() && w[agree] == target[agree]) ++agree;
    if (!have || agree > best.agreement) {
      best = {trial.beta, m, agree};
      have = true;
    }
  }
  return best;
}

}  // namespace trispec

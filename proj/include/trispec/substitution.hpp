#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace trispec {

/// Binary alphabet symbol.
enum class Letter : std::uint8_t { zero = 0, one = 1 };

constexpr int index(Letter l) noexcept { return static_cast<int>(l); }
constexpr Letter other(Letter l) noexcept {
  return l == Letter::zero ? Letter::one : Letter::zero;
}

/// Finite word over {0,1}.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  /// Parses an ASCII string of '0'/'1'. Throws invalid_argument on any other byte.
  static Word parse(std::string_view text);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  const std::vector<Letter>& letters() const noexcept { return letters_; }

  void push_back(Letter l) { letters_.push_back(l); }
  void append(const Word& w) {
    letters_.insert(letters_.end(), w.letters_.begin(), w.letters_.end());
  }
  void truncate(std::size_t n) {
    if (n < letters_.size()) letters_.resize(n);
  }

  std::size_t count(Letter l) const noexcept;
  bool starts_with(const Word& prefix) const noexcept;
  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Element of the free group on {0,1}, kept freely reduced as (letter, exponent)
/// syllables with adjacent syllables on distinct letters.
class GroupWord {
 public:
  struct Syllable {
    Letter letter;
    long exponent;
    friend bool operator==(const Syllable&, const Syllable&) = default;
  };

  GroupWord() = default;
  explicit GroupWord(const Word& w);

  static GroupWord generator(Letter l, long exponent = 1);

  GroupWord inverse() const;
  GroupWord operator*(const GroupWord& rhs) const;

  /// Conjugates away matching first/last syllables; result is cyclically reduced.
  GroupWord cyclically_reduced() const;

  /// Sum of |exponent| over syllables.
  long length() const noexcept;
  const std::vector<Syllable>& syllables() const noexcept { return syllables_; }

  /// True if `other` is a cyclic rotation of this word (both cyclically reduced).
  bool is_cyclic_rotation_of(const GroupWord& other) const;

  friend bool operator==(const GroupWord&, const GroupWord&) = default;

 private:
  void push(Letter l, long exponent);
  std::vector<Syllable> syllables_;
};

using IntMatrix2 = std::array<std::array<long long, 2>, 2>;

IntMatrix2 multiply(const IntMatrix2& a, const IntMatrix2& b);
long long determinant(const IntMatrix2& m) noexcept;

inline constexpr std::size_t default_word_cap = std::size_t{1} << 24;

/// Two-letter substitution 0 -> image0, 1 -> image1.
///
/// The abelianization row i holds the letter counts of the image of letter i,
/// so entry [i][j] is the number of j's in s(i).
class Substitution {
 public:
  Substitution(Word image0, Word image1);

  /// Parses the text form `0->01;1->0`. Whitespace is ignored.
  static Substitution parse(std::string_view spec);
  static Substitution fibonacci();

  const Word& image(Letter l) const noexcept {
    return l == Letter::zero ? image0_ : image1_;
  }
  const IntMatrix2& abelianization() const noexcept { return abelianization_; }
  bool primitive() const noexcept { return primitive_; }
  bool invertible() const noexcept { return invertible_; }

  /// Applies the substitution once; throws resource if the result exceeds `cap`.
  Word apply(const Word& w, std::size_t cap = default_word_cap) const;
  GroupWord apply(const GroupWord& w) const;

  /// s composed with itself.
  Substitution squared() const;

  std::string to_string() const;

 private:
  Word image0_;
  Word image1_;
  IntMatrix2 abelianization_{};
  bool primitive_ = false;
  bool invertible_ = false;
};

/// True iff some power k <= 4 of the abelianization is entrywise positive.
bool check_primitive(const Substitution& s);

/// Nielsen commutator test: s is an automorphism of the free group iff the
/// cyclic reduction of s([0,1]) is a rotation of [0,1] or its inverse.
bool check_invertible(const Substitution& s);

/// Letter whose orbit seeds the fixed point, plus the power l in {1,2} of s that fixes it.
struct StarChoice {
  Letter star;
  int power;
};

/// Prefers 0 (s(0) starts with 0), then 1 (s(1) starts with 1), then s^2 on 0.
StarChoice star_choice(const Substitution& s);

/// First n letters of the fixed point of s^l seeded by the star letter.
Word fixed_point_prefix(const Substitution& s, std::size_t n,
                        std::size_t cap = default_word_cap);

/// The word s^k(star).
Word periodic_word(const Substitution& s, int k, std::size_t cap = default_word_cap);

/// |s^k(star)| from the abelianization, without building the word. Saturates at SIZE_MAX.
std::size_t periodic_word_length(const Substitution& s, int k);

/// Eventually periodic continued fraction [a0; preperiod..., (period...)].
struct ContinuedFraction {
  long long integer_part = 0;
  std::vector<long long> preperiod;
  std::vector<long long> period;

  /// Coefficient n >= 1 of the expansion.
  long long coefficient(std::size_t n) const;
  /// Value evaluated from the first `terms` coefficients (backward recurrence).
  double value(std::size_t terms = 64) const;
  std::string to_string() const;
};

enum class SamplingInterval {
  closed_open,  ///< chi_[1-alpha, 1)
  open_closed,  ///< chi_(1-alpha, 1]
};

/// Rotation realization: letter n is 1 iff frac(n*alpha + beta) lies in the
/// sampling interval of length alpha ending at 1.
struct RotationParams {
  ContinuedFraction alpha;
  double beta = 0.0;
  SamplingInterval interval = SamplingInterval::closed_open;

  double alpha_value() const { return alpha.value(); }
};

Word rotation_sample(const RotationParams& r, long long n_from, long long n_to);

/// Rotation number of a primitive invertible substitution: alpha is the
/// frequency of letter 1 in the fixed point. beta is left at 0; see scan_beta.
RotationParams rotation_number(const Substitution& s);

/// Continued fraction of the letter-frequency ratio freq(1)/freq(0), i.e. the
/// slope of the Perron eigenvector of the transposed abelianization.
ContinuedFraction frequency_slope(const Substitution& s);

struct BetaScan {
  double beta;
  long long m;                ///< beta = frac(m*alpha)
  std::size_t agreement;      ///< length of the common prefix with the target
};

/// Searches beta over {frac(m*alpha) : |m| <= m_max} for the longest agreement
/// of rotation_sample(n = 1..) with `target`.
BetaScan scan_beta(const RotationParams& r, const Word& target, long long m_max);

}  // namespace trispec

#pragma once

// Free-group words, a small text grammar for them, the integral group ring,
// and Fox derivatives.
//
// Grammar (whitespace and '*' separate terms):
//   word := term+
//   term := atom ('^' exponent)?
//   atom := generator | '1' | '(' word ')' | '[' word ',' word ']'
//   exponent := integer | '{' integer '}'
// [a,b] is a b a^-1 b^-1. A top-level "lhs = rhs" is accepted by
// parse_relator and stored as lhs rhs^-1.

#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bendlab/rational.hpp"

namespace bendlab {

struct Letter {
  std::uint32_t generator = 0;
  int exponent = 1;  // +1 or -1

  Letter inverse() const { return {generator, -exponent}; }
  auto operator<=>(const Letter&) const = default;
};

/// Freely reduced word; the invariant is maintained by every constructor
/// path except `from_letters_unreduced`.
class Word {
 public:
  Word() = default;

  static Word generator(std::uint32_t g, int exponent = 1) {
    Word w;
    w.letters_.push_back({g, exponent >= 0 ? 1 : -1});
    return w;
  }

  static Word from_letters(const std::vector<Letter>& letters) {
    Word w;
    for (const Letter& l : letters) w.push(l);
    return w;
  }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
    return w;
  }

  /// Appends one letter, cancelling against the last letter if needed.
  void push(Letter l) {
    if (!letters_.empty() && letters_.back().generator == l.generator &&
        letters_.back().exponent == -l.exponent)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

  Word& operator*=(const Word& o) {
    for (const Letter& l : o.letters_) push(l);
    return *this;
  }
  friend Word operator*(Word a, const Word& b) { return a *= b; }

  Word power(long k) const {
    Word base = k >= 0 ? *this : inverse();
    Word out;
    for (long i = 0; i < (k >= 0 ? k : -k); ++i) out *= base;
    return out;
  }

  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

inline Word commutator(const Word& a, const Word& b) { return a * b * a.inverse() * b.inverse(); }

/// Reduces an arbitrary letter sequence; used by tests that compare
/// reduction orders.
inline Word reduce(const std::vector<Letter>& letters) { return Word::from_letters(letters); }

// ---------------------------------------------------------------------------
// Group ring Z[F]

class GroupRingElem {
 public:
  GroupRingElem() = default;
  explicit GroupRingElem(const Word& w, Integer c = 1) { add(w, std::move(c)); }
  static GroupRingElem one() { return GroupRingElem(Word{}); }

  const std::map<Word, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Word& w, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  GroupRingElem& operator+=(const GroupRingElem& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  GroupRingElem& operator-=(const GroupRingElem& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  friend GroupRingElem operator+(GroupRingElem a, const GroupRingElem& b) { return a += b; }
  friend GroupRingElem operator-(GroupRingElem a, const GroupRingElem& b) { return a -= b; }
  friend GroupRingElem operator-(const GroupRingElem& a) { return GroupRingElem{} - a; }

  friend GroupRingElem operator*(const GroupRingElem& a, const GroupRingElem& b) {
    GroupRingElem out;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) out.add(wa * wb, ca * cb);
    return out;
  }
  friend GroupRingElem operator*(const Word& w, const GroupRingElem& b) { return GroupRingElem(w) * b; }
  friend GroupRingElem operator*(const Integer& s, const GroupRingElem& b) {
    GroupRingElem out;
    for (const auto& [w, c] : b.terms_) out.add(w, s * c);
    return out;
  }

  bool operator==(const GroupRingElem&) const = default;

 private:
  std::map<Word, Integer> terms_;
};

// ---------------------------------------------------------------------------
// Presentations

struct Cusp {
  Word meridian;
  Word longitude;
};

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  std::vector<Cusp> cusps;

  std::size_t generator_count() const { return generators.size(); }

  std::uint32_t index_of(std::string_view name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == name) return static_cast<std::uint32_t>(i);
    throw Error("unknown generator '" + std::string(name) + "'");
  }

  /// Throws if names repeat or any word refers past the generator list.
  void validate() const {
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (generators[i].empty()) throw Error("empty generator name");
      for (std::size_t j = i + 1; j < generators.size(); ++j)
        if (generators[i] == generators[j]) throw Error("duplicate generator '" + generators[i] + "'");
    }
    auto check = [&](const Word& w) {
      for (const Letter& l : w.letters())
        if (l.generator >= generators.size()) throw Error("word uses an undeclared generator");
    };
    for (const Word& r : relators) check(r);
    for (const Cusp& c : cusps) {
      check(c.meridian);
      check(c.longitude);
    }
  }
};

// ---------------------------------------------------------------------------
// Parsing and printing

namespace detail {

class WordParser {
 public:
  WordParser(std::string_view text, const std::vector<std::string>& generators)
      : text_(text), gens_(generators) {}

  Word parse_all() {
    Word w = parse_word();
    skip_separators();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

  Word parse_relator() {
    Word lhs = parse_word();
    skip_separators();
    if (pos_ < text_.size() && text_[pos_] == '=') {
      ++pos_;
      Word rhs = parse_word();
      skip_separators();
      if (pos_ != text_.size()) fail("unexpected trailing input");
      return lhs * rhs.inverse();
    }
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return lhs;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("word syntax error at offset " + std::to_string(pos_) + " in '" + std::string(text_) +
                "': " + what);
  }

  void skip_separators() {
    while (pos_ < text_.size() && (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '*'))
      ++pos_;
  }

  bool at_term_start() {
    skip_separators();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || c == '[' || c == '1' || std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  Word parse_word() {
    if (!at_term_start()) fail("expected a generator, '(' or '['");
    Word w;
    while (at_term_start()) w *= parse_term();
    return w;
  }

  Word parse_term() {
    Word atom = parse_atom();
    skip_separators();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      return atom.power(parse_exponent());
    }
    return atom;
  }

  long parse_exponent() {
    skip_separators();
    bool braced = pos_ < text_.size() && text_[pos_] == '{';
    if (braced) ++pos_;
    skip_separators();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) negative = text_[pos_++] == '-';
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    if (pos_ - start > 9) fail("exponent too large");
    long value = std::stol(std::string(text_.substr(start, pos_ - start)));
    if (braced) {
      skip_separators();
      if (pos_ >= text_.size() || text_[pos_] != '}') fail("expected '}'");
      ++pos_;
    }
    return negative ? -value : value;
  }

  Word parse_atom() {
    skip_separators();
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Word w = parse_word();
      skip_separators();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word a = parse_word();
      skip_separators();
      if (pos_ >= text_.size() || text_[pos_] != ',') fail("expected ','");
      ++pos_;
      Word b = parse_word();
      skip_separators();
      if (pos_ >= text_.size() || text_[pos_] != ']') fail("expected ']'");
      ++pos_;
      return commutator(a, b);
    }
    if (c == '1') {
      ++pos_;
      return Word{};
    }
    return parse_identifier();
  }

  // A maximal identifier run is either a generator name or a concatenation
  // of generator names ("xyz"), split by longest-prefix matching.
  Word parse_identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string_view run = text_.substr(start, pos_ - start);
    Word w;
    std::size_t at = 0;
    while (at < run.size()) {
      std::size_t best = 0, best_index = 0;
      for (std::size_t g = 0; g < gens_.size(); ++g) {
        const std::string& name = gens_[g];
        if (name.size() > best && run.substr(at, name.size()) == name) {
          best = name.size();
          best_index = g;
        }
      }
      if (best == 0) throw Error("unknown generator '" + std::string(run) + "' in '" + std::string(text_) + "'");
      w *= Word::generator(static_cast<std::uint32_t>(best_index));
      at += best;
    }
    return w;
  }

  std::string_view text_;
  const std::vector<std::string>& gens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Word parse_word(std::string_view text, const std::vector<std::string>& generators) {
  return detail::WordParser(text, generators).parse_all();
}

/// Like parse_word, but also accepts "lhs = rhs" (stored as lhs rhs^-1).
inline Word parse_relator(std::string_view text, const std::vector<std::string>& generators) {
  return detail::WordParser(text, generators).parse_relator();
}

/// Space-separated letters, e.g. "x y^-1 z"; "1" for the empty word.
inline std::string format_word(const Word& w, const std::vector<std::string>& generators) {
  if (w.empty()) return "1";
  std::string out;
  for (const Letter& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += l.generator < generators.size() ? generators[l.generator] : "g" + std::to_string(l.generator);
    if (l.exponent < 0) out += "^-1";
  }
  return out;
}

inline std::string format_ring(const GroupRingElem& e, const std::vector<std::string>& generators) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : e.terms()) {
    if (!out.empty()) out += c > 0 ? " + " : " - ";
    else if (c < 0) out += "-";
    Integer mag = abs(c);
    if (mag != 1 || w.empty()) out += mag.get_str();
    if (!w.empty()) {
      if (mag != 1) out += "*";
      out += "(" + format_word(w, generators) + ")";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fox calculus

/// d w / d x_g by the product rule, walking the reduced word left to right.
inline GroupRingElem fox_derivative(const Word& w, std::uint32_t g) {
  GroupRingElem out;
  Word prefix;
  for (const Letter& l : w.letters()) {
    if (l.generator == g) {
      if (l.exponent > 0) {
        out.add(prefix, 1);
      } else {
        Word p = prefix;
        p.push(l);
        out.add(p, -1);
      }
    }
    prefix.push(l);
  }
  return out;
}

inline GroupRingElem fox_derivative(const Word& w, std::string_view generator,
                                    const std::vector<std::string>& generators) {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == generator) return fox_derivative(w, static_cast<std::uint32_t>(i));
  throw Error("unknown generator '" + std::string(generator) + "'");
}

}  // namespace bendlab

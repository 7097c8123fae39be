#pragma once

// Branched bending complexes: walls meeting at bindings, and the per-binding
// linear conditions on wall momenta.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bendlab/ratlin.hpp"

namespace bendlab {

/// An angle stored as its (cos, sin) pair, exact when both are rational.
class Angle {
 public:
  static Angle exact(Rational c, Rational s) {
    if (c * c + s * s != 1) throw Error("angle: cos^2 + sin^2 != 1 for (" + to_string(c) + ", " + to_string(s) + ")");
    Angle a;
    a.value_ = ExactPair{std::move(c), std::move(s)};
    return a;
  }

  static Angle approximate(double c, double s) {
    if (std::abs(c * c + s * s - 1.0) > 1e-12) throw Error("angle: cos^2 + sin^2 differs from 1");
    Angle a;
    a.value_ = FloatPair{c, s};
    return a;
  }

  static Angle from_radians(double theta) { return approximate(std::cos(theta), std::sin(theta)); }

  /// p*pi/q; exact when it is a multiple of pi/2.
  static Angle pi_fraction(long p, long q) {
    if (q == 0) throw Error("angle: zero denominator");
    if ((2 * p) % q == 0) {
      long quarter = (((2 * p) / q) % 4 + 4) % 4;
      static const long cs[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      return exact(cs[quarter][0], cs[quarter][1]);
    }
    return from_radians(std::numbers::pi * static_cast<double>(p) / static_cast<double>(q));
  }

  /// "0", "pi/2", "pi", "3pi/2", and generally "[p]pi[/q]".
  static Angle parse(const std::string& text) {
    std::string s;
    for (char ch : text)
      if (ch != ' ' && ch != '*') s += ch;
    if (s == "0") return exact(1, 0);
    auto at = s.find("pi");
    if (at == std::string::npos) throw Error("angle: cannot parse '" + text + "'");
    std::string head = s.substr(0, at), tail = s.substr(at + 2);
    long p = 1, q = 1;
    try {
      if (head == "-") p = -1;
      else if (!head.empty()) p = std::stol(head);
      if (!tail.empty()) {
        if (tail[0] != '/') throw Error("angle: cannot parse '" + text + "'");
        q = std::stol(tail.substr(1));
      }
    } catch (const std::logic_error&) {
      throw Error("angle: cannot parse '" + text + "'");
    }
    return pi_fraction(p, q);
  }

  bool is_exact() const { return std::holds_alternative<ExactPair>(value_); }
  const Rational& exact_cos() const { return std::get<ExactPair>(value_).c; }
  const Rational& exact_sin() const { return std::get<ExactPair>(value_).s; }
  double cos() const { return is_exact() ? exact_cos().get_d() : std::get<FloatPair>(value_).c; }
  double sin() const { return is_exact() ? exact_sin().get_d() : std::get<FloatPair>(value_).s; }
  bool is_zero_angle() const { return is_exact() ? exact_cos() == 1 : std::abs(cos() - 1.0) < 1e-12; }

 private:
  struct ExactPair {
    Rational c, s;
  };
  struct FloatPair {
    double c, s;
  };
  std::variant<ExactPair, FloatPair> value_ = ExactPair{1, 0};
};

struct Incidence {
  std::size_t wall = 0;
  Angle angle;
  int sign = 1;
};

struct Binding {
  std::string name;
  std::vector<Incidence> incidences;
};

struct BendingComplex {
  std::size_t dimension = 3;
  std::vector<std::string> walls;
  std::vector<Binding> bindings;

  std::size_t wall_index(const std::string& name) const {
    for (std::size_t i = 0; i < walls.size(); ++i)
      if (walls[i] == name) return i;
    throw Error("binding references undeclared wall '" + name + "'");
  }

  void validate() const {
    for (const Binding& b : bindings) {
      if (b.incidences.empty()) throw Error("binding '" + b.name + "' has no incidences");
      const Incidence& first = b.incidences.front();
      if (!first.angle.is_zero_angle() || first.sign != 1)
        throw Error("binding '" + b.name + "': first incidence must have angle 0 and sign +1");
      for (const Incidence& in : b.incidences) {
        if (in.wall >= walls.size()) throw Error("binding '" + b.name + "' references an undeclared wall");
        if (in.sign != 1 && in.sign != -1) throw Error("binding '" + b.name + "': sign must be +1 or -1");
      }
    }
  }

  bool all_exact() const {
    for (const Binding& b : bindings)
      for (const Incidence& in : b.incidences)
        if (!in.angle.is_exact()) return false;
    return true;
  }
};

enum class Geometry { so, sl };

inline Geometry parse_geometry(std::string_view s) {
  if (s == "so") return Geometry::so;
  if (s == "sl") return Geometry::sl;
  throw Error("unknown geometry '" + std::string(s) + "'");
}

/// Rows per binding: 2 for so (cos, sin; signs ignored), 3 for sl.
inline std::size_t rows_per_binding(Geometry g) { return g == Geometry::so ? 2 : 3; }

struct BendingSystem {
  std::variant<RationalMatrix, FloatMatrix> matrix;
  std::vector<std::string> warnings;

  bool exact() const { return std::holds_alternative<RationalMatrix>(matrix); }
  const RationalMatrix& exact_matrix() const { return std::get<RationalMatrix>(matrix); }
  const FloatMatrix& float_matrix() const { return std::get<FloatMatrix>(matrix); }
  std::size_t rows() const { return exact() ? exact_matrix().rows() : float_matrix().rows; }
  std::size_t cols() const { return exact() ? exact_matrix().cols() : float_matrix().cols; }
};

namespace detail {

// Coefficients contributed by one incidence, in the order of the binding's rows.
template <typename T>
std::vector<T> incidence_coefficients(Geometry g, const T& c, const T& s, int sign, std::size_t n) {
  if (g == Geometry::so) return {c, s};
  // alpha = (1 - n)/2, beta = (1 + n)/2; double-angle terms.
  T alpha = T(1 - static_cast<long>(n)) / T(2);
  T beta = T(1 + static_cast<long>(n)) / T(2);
  T cos2 = c * c - s * s;
  T sin2 = T(2) * s * c;
  T sg = T(sign);
  return {sg * (alpha + beta * cos2), sg * (alpha - beta * cos2), sg * (beta * sin2)};
}

}  // namespace detail

inline BendingSystem build_system(const BendingComplex& complex, Geometry geometry,
                                  double tolerance = kDefaultRankTolerance) {
  complex.validate();
  const std::size_t per = rows_per_binding(geometry);
  const std::size_t rows = per * complex.bindings.size(), cols = complex.walls.size();
  if (complex.all_exact()) {
    RationalMatrix m(rows, cols);
    for (std::size_t b = 0; b < complex.bindings.size(); ++b)
      for (const Incidence& in : complex.bindings[b].incidences) {
        auto coeff = detail::incidence_coefficients<Rational>(geometry, in.angle.exact_cos(), in.angle.exact_sin(),
                                                              in.sign, complex.dimension);
        for (std::size_t k = 0; k < per; ++k) m(b * per + k, in.wall) += coeff[k];
      }
    return {m, {}};
  }
  FloatMatrix m(rows, cols, tolerance);
  for (std::size_t b = 0; b < complex.bindings.size(); ++b)
    for (const Incidence& in : complex.bindings[b].incidences) {
      auto coeff = detail::incidence_coefficients<double>(geometry, in.angle.cos(), in.angle.sin(), in.sign,
                                                          complex.dimension);
      for (std::size_t k = 0; k < per; ++k) m(b * per + k, in.wall) += coeff[k];
    }
  BendingSystem out{m, {}};
  bool any_exact = false;
  for (const Binding& b : complex.bindings)
    for (const Incidence& in : b.incidences) any_exact = any_exact || in.angle.is_exact();
  if (any_exact) out.warnings.push_back("mixed exact and floating angles; using the floating backend");
  else out.warnings.push_back("floating angles; rank is approximate");
  return out;
}

struct BendingDimension {
  std::size_t nullity = 0;
  long naive_bound = 0;
  bool equal_weights_solve = false;
  bool exact = true;
  double tolerance = kDefaultRankTolerance;
  std::vector<std::string> warnings;
};

inline BendingDimension bending_dimension(const BendingComplex& complex, Geometry geometry,
                                          double tolerance = kDefaultRankTolerance) {
  BendingSystem sys = build_system(complex, geometry, tolerance);
  BendingDimension out;
  const long a = geometry == Geometry::so ? 2 : 3;
  out.naive_bound = static_cast<long>(complex.walls.size()) - a * static_cast<long>(complex.bindings.size());
  out.exact = sys.exact();
  out.tolerance = tolerance;
  out.warnings = sys.warnings;
  if (sys.exact()) {
    const RationalMatrix& m = sys.exact_matrix();
    out.nullity = m.cols() - rank(m);
    RationalVector ones(m.cols(), Rational(1));
    out.equal_weights_solve = is_zero_vector(m * ones);
  } else {
    const FloatMatrix& m = sys.float_matrix();
    out.nullity = m.cols - float_rank(m);
    double scale = 0, worst = 0;
    for (double v : m.entries) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < m.rows; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < m.cols; ++j) s += m(i, j);
      worst = std::max(worst, std::abs(s));
    }
    out.equal_weights_solve = worst <= tolerance * std::max(1.0, scale);
  }
  return out;
}

}  // namespace bendlab

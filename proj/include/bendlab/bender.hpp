#pragma once

// Bending along an embedded totally geodesic surface: the one-parameter
// centralizer of the surface group, the first-order HNN deformation it
// induces, its tangent cocycle, and first-order trace derivatives.

#include <optional>
#include <string>
#include <vector>

#include "bendlab/cohomo.hpp"

namespace bendlab {

enum class BenderGeometry { sl, so_ext };

inline BenderGeometry parse_bender_geometry(std::string_view s) {
  if (s == "sl") return BenderGeometry::sl;
  if (s == "so" || s == "so_ext") return BenderGeometry::so_ext;
  throw Error("unknown bending geometry '" + std::string(s) + "'");
}

inline std::string_view to_string(BenderGeometry g) { return g == BenderGeometry::sl ? "sl" : "so"; }

/// Which side of the stable letter's image the centralizer multiplies:
/// left gives rho_t(a) = c(t) rho(a), right gives rho(a) c(t). `automatic`
/// picks the side for which every relator stays trivial to first order.
enum class HnnSide { left, right, automatic };

inline std::string_view to_string(HnnSide s) {
  switch (s) {
    case HnnSide::left: return "left";
    case HnnSide::right: return "right";
    case HnnSide::automatic: return "auto";
  }
  return "?";
}

inline HnnSide parse_hnn_side(std::string_view s) {
  if (s == "left") return HnnSide::left;
  if (s == "right") return HnnSide::right;
  if (s == "auto") return HnnSide::automatic;
  throw Error("unknown HNN side '" + std::string(s) + "'");
}

struct BendingDatum {
  std::string name;
  std::vector<Word> surface_subgroup;
  Word stable_letter;
  HnnSide side = HnnSide::automatic;
};

struct BendingGenerator {
  RationalMatrix v;
  BenderGeometry geometry = BenderGeometry::sl;
};

/// Coefficients c_0..c_k of det(lambda I - M) = sum c_i lambda^i (c_k = 1),
/// by Faddeev-LeVerrier.
inline std::vector<Rational> characteristic_polynomial(const RationalMatrix& m) {
  if (!m.is_square()) throw Error("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Rational> coeff(n + 1);
  coeff[n] = 1;
  RationalMatrix mk(n, n);  // M_0 = 0
  const RationalMatrix id = RationalMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + id * coeff[n - k + 1];
    coeff[n - k] = -(m * mk).trace() / Rational(static_cast<long>(k));
  }
  return coeff;
}

/// Coefficients of prod (lambda - r) over the given roots.
inline std::vector<Rational> polynomial_from_roots(const std::vector<Rational>& roots) {
  std::vector<Rational> p{1};
  for (const Rational& r : roots) {
    std::vector<Rational> next(p.size() + 1);
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i + 1] += p[i];
      next[i] -= r * p[i];
    }
    p = std::move(next);
  }
  return p;
}

/// (lambda + n)(lambda - 1)^n.
inline std::vector<Rational> bulging_char_poly(std::size_t n) {
  std::vector<Rational> roots{Rational(-static_cast<long>(n))};
  for (std::size_t i = 0; i < n; ++i) roots.emplace_back(1);
  return polynomial_from_roots(roots);
}

namespace detail {

// Rows of the linear map vec(X) -> vec(X M - M X), row-major vec.
inline RationalMatrix commutator_constraints(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  RationalMatrix out(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      for (std::size_t k = 0; k < n; ++k) {
        out(row, i * n + k) += m(k, j);
        out(row, k * n + j) -= m(i, k);
      }
    }
  return out;
}

// Rows of vec(X) -> vec(X^T Q + Q X).
inline RationalMatrix skew_constraints(const RationalMatrix& q) {
  const std::size_t n = q.rows();
  RationalMatrix out(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      for (std::size_t k = 0; k < n; ++k) {
        out(row, k * n + i) += q(k, j);  // (X^T)_{ik} Q_{kj}
        out(row, k * n + j) += q(i, k);  // Q_{ik} X_{kj}
      }
    }
  return out;
}

inline RationalMatrix unflatten(const RationalVector& v, std::size_t n) {
  return RationalMatrix(n, n, std::vector<Rational>(v.begin(), v.end()));
}

}  // namespace detail

/// Solution space {X in ambient algebra : X commutes with every subgroup image}.
inline std::vector<RationalMatrix> centralizer_basis(const Representation& rep, const std::vector<Word>& subgroup,
                                                     BenderGeometry geometry) {
  const Representation base = geometry == BenderGeometry::sl ? rep : rep.embedded();
  const std::size_t n = base.matrix_size();
  std::vector<RationalMatrix> blocks;
  if (geometry == BenderGeometry::sl) {
    RationalMatrix tr(1, n * n);
    for (std::size_t i = 0; i < n; ++i) tr(0, i * n + i) = 1;
    blocks.push_back(tr);
  } else {
    blocks.push_back(detail::skew_constraints(base.form().matrix));
  }
  for (const Word& s : subgroup) blocks.push_back(detail::commutator_constraints(evaluate(base, s)));
  std::vector<RationalMatrix> out;
  for (const auto& v : nullspace(vstack(blocks))) out.push_back(detail::unflatten(v, n));
  return out;
}

/// Normalized generator of the one-dimensional centralizer.
///   sl:     eigenvalues (-n, 1, ..., 1), diagonalizable.
///   so_ext: v^3 = -v, first nonzero entry (row-major) positive.
inline BendingGenerator centralizer_generator(const Representation& rep, const BendingDatum& datum,
                                              BenderGeometry geometry) {
  auto basis = centralizer_basis(rep, datum.surface_subgroup, geometry);
  if (basis.size() != 1)
    throw Error("centralizer of '" + datum.name + "' has dimension " + std::to_string(basis.size()) + " != 1");
  RationalMatrix k = basis.front();
  const std::size_t size = k.rows();
  if (geometry == BenderGeometry::sl) {
    const long n = static_cast<long>(size) - 1;
    if (n < 2) throw Error("sl bending needs n >= 2");
    // k = s v with v of eigenvalues (-n, 1^n): tr k^2 = n(n+1) s^2, tr k^3 = n(1-n^2) s^3.
    RationalMatrix k2 = k * k;
    Rational s2 = k2.trace() / Rational(n * (n + 1));
    Rational s3 = (k2 * k).trace() / Rational(n * (1 - n * n));
    if (sgn(s2) == 0) throw Error("centralizer of '" + datum.name + "' is nilpotent");
    RationalMatrix v = k * (s2 / s3);
    if (!(characteristic_polynomial(v) == bulging_char_poly(static_cast<std::size_t>(n))))
      throw Error("centralizer of '" + datum.name + "' does not have eigenvalues (-n, 1, ..., 1)");
    const RationalMatrix id = RationalMatrix::identity(size);
    if (!((v + id * Rational(n)) * (v - id)).is_zero())
      throw Error("centralizer of '" + datum.name + "' is not diagonalizable");
    return {v, geometry};
  }
  RationalMatrix k3 = k * k * k;
  std::size_t idx = 0;
  while (sgn(k.entries()[idx]) == 0) ++idx;
  Rational ratio = k3.entries()[idx] / k.entries()[idx];
  if (!(k3 == k * ratio)) throw Error("centralizer of '" + datum.name + "' does not satisfy v^3 = r v");
  Rational s;
  if (!rational_sqrt(-ratio, s) || sgn(s) == 0)
    throw Error("centralizer of '" + datum.name + "' needs an irrational rescaling (v^3 = " + to_string(ratio) + " v)");
  RationalMatrix v = k * (1 / s);
  if (sgn(v.entries()[idx]) < 0) v = -v;
  return {v, geometry};
}

namespace detail {

inline FirstOrderRep make_hnn(const Representation& base, std::uint32_t stable, const RationalMatrix& v, HnnSide side) {
  const std::size_t n = base.matrix_size();
  std::vector<RationalMatrix> der(base.presentation().generator_count(), RationalMatrix(n, n));
  der[stable] = side == HnnSide::left ? v * base.image(stable) : base.image(stable) * v;
  return {base, std::move(der)};
}

inline bool relators_stay_trivial(const FirstOrderRep& fo) {
  for (const Word& r : fo.base.presentation().relators)
    if (!first_order_evaluate(fo, r).derivative.is_zero()) return false;
  return true;
}

}  // namespace detail

inline std::uint32_t stable_generator(const BendingDatum& datum) {
  const auto& l = datum.stable_letter.letters();
  if (l.size() != 1 || l.front().exponent != 1)
    throw Error("stable letter of '" + datum.name + "' must be a single generator");
  return l.front().generator;
}

struct HnnBending {
  FirstOrderRep first_order;
  HnnSide side = HnnSide::left;  // resolved
};

/// First-order HNN bending: only the stable letter moves, by v rho(a)
/// (left) or rho(a) v (right). Matrices are block-embedded for so_ext.
inline HnnBending hnn_first_order(const Representation& rep, const BendingDatum& datum, const BendingGenerator& gen) {
  const std::uint32_t stable = stable_generator(datum);
  if (stable >= rep.presentation().generator_count()) throw Error("stable letter is not a generator");
  const Representation base = gen.geometry == BenderGeometry::sl ? rep : rep.embedded();
  if (gen.v.rows() != base.matrix_size()) throw Error("bending generator has the wrong size");
  if (datum.side != HnnSide::automatic) return {detail::make_hnn(base, stable, gen.v, datum.side), datum.side};
  for (HnnSide side : {HnnSide::left, HnnSide::right}) {
    FirstOrderRep fo = detail::make_hnn(base, stable, gen.v, side);
    if (detail::relators_stay_trivial(fo)) return {std::move(fo), side};
  }
  throw Error("bending '" + datum.name + "': neither side keeps the relators trivial to first order");
}

/// c(g) = E(g) M(g)^-1 per generator, projected to the module's complement
/// component and stacked.
inline RationalVector tangent_cocycle(const FirstOrderRep& fo, const CoefficientModule& module) {
  const std::size_t size = fo.base.matrix_size();
  const bool sl = module.kind() == ModuleKind::nu;
  if (module.kind() == ModuleKind::adjoint) throw Error("tangent_cocycle: adjoint coefficients are not a bending target");
  const std::size_t expected = sl ? module.basis().front().rows() : module.dimension() + 1;
  if (size != expected) throw Error("tangent_cocycle: module does not match the deformation's geometry");
  RationalVector out;
  out.reserve(fo.derivative.size() * module.dimension());
  for (std::uint32_t g = 0; g < fo.derivative.size(); ++g) {
    RationalMatrix c = fo.derivative[g] * fo.base.image_inverse(g);
    if (sl) {
      SplitResult parts = split_components(c, fo.base.form(), SplitAmbient::sl);
      RationalVector x = module.coordinates().coordinates(parts.complement_matrix());
      out.insert(out.end(), x.begin(), x.end());
    } else {
      QuadraticForm inner{fo.base.form().matrix.block(0, 0, size - 1, size - 1)};
      SplitResult parts = split_components(c, inner, SplitAmbient::so_ext);
      const auto& x = parts.complement_vector();
      out.insert(out.end(), x.begin(), x.end());
    }
  }
  return out;
}

/// Entry (i, j): d/dt tr rho_t(words[i]) at t = 0 for the sl bending data[j].
inline RationalMatrix trace_derivative_matrix(const Representation& rep, const std::vector<BendingDatum>& data,
                                              const std::vector<Word>& words) {
  RationalMatrix f(words.size(), data.size());
  for (std::size_t j = 0; j < data.size(); ++j) {
    BendingGenerator gen = centralizer_generator(rep, data[j], BenderGeometry::sl);
    HnnBending b = hnn_first_order(rep, data[j], gen);
    for (std::size_t i = 0; i < words.size(); ++i) f(i, j) = first_order_evaluate(b.first_order, words[i]).derivative.trace();
  }
  return f;
}

}  // namespace bendlab

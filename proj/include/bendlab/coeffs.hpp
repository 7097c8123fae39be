#pragma once

// Coefficient modules for twisted cohomology: the standard module R^{n,1},
// the complement nu_{n+1} of so(n,1) in sl(n+1), and the adjoint so(n,1).

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bendlab/repcore.hpp"

namespace bendlab {

enum class ModuleKind { standard, nu, adjoint };

inline std::string_view to_string(ModuleKind k) {
  switch (k) {
    case ModuleKind::standard: return "r31";
    case ModuleKind::nu: return "nu";
    case ModuleKind::adjoint: return "adjoint";
  }
  return "?";
}

/// Accepts the CLI spellings r31 / standard, nu, adjoint / so.
inline ModuleKind parse_module_kind(std::string_view s) {
  if (s == "r31" || s == "standard") return ModuleKind::standard;
  if (s == "nu") return ModuleKind::nu;
  if (s == "adjoint" || s == "so") return ModuleKind::adjoint;
  throw Error("unknown coefficient module '" + std::string(s) + "'");
}

/// Basis of {V : V^T Q = Q V, tr V = 0}. Elements are Q^-1 S for the
/// standard symmetric basis S (pairs i <= j in order); the last element with
/// nonzero trace is dropped and used to make the others traceless.
inline std::vector<RationalMatrix> nu_basis(const QuadraticForm& form) {
  const std::size_t m = form.size();
  auto q_inv = inverse(form.matrix);
  if (!q_inv) throw Error("nu basis needs a nondegenerate form");
  std::vector<RationalMatrix> raw;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      RationalMatrix s(m, m);
      s(i, j) = 1;
      s(j, i) = 1;
      raw.push_back(*q_inv * s);
    }
  std::size_t pivot = raw.size();
  for (std::size_t k = raw.size(); k-- > 0;)
    if (sgn(raw[k].trace()) != 0) {
      pivot = k;
      break;
    }
  if (pivot == raw.size()) throw Error("nu basis: no element with nonzero trace");
  const Rational pivot_trace = raw[pivot].trace();
  std::vector<RationalMatrix> basis;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (k == pivot) continue;
    Rational t = raw[k].trace();
    if (sgn(t) == 0)
      basis.push_back(raw[k]);
    else
      basis.push_back(raw[k] - raw[pivot] * (t / pivot_trace));
  }
  return basis;
}

/// Basis of so(Q) = {V : V^T Q + Q V = 0}: Q^-1 (E_ij - E_ji), i < j.
inline std::vector<RationalMatrix> adjoint_basis(const QuadraticForm& form) {
  const std::size_t m = form.size();
  auto q_inv = inverse(form.matrix);
  if (!q_inv) throw Error("adjoint basis needs a nondegenerate form");
  std::vector<RationalMatrix> basis;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      RationalMatrix a(m, m);
      a(i, j) = 1;
      a(j, i) = -1;
      basis.push_back(*q_inv * a);
    }
  return basis;
}

inline bool in_nu(const RationalMatrix& v, const QuadraticForm& form) {
  return v.transpose() * form.matrix == form.matrix * v && sgn(v.trace()) == 0;
}

inline bool in_so(const RationalMatrix& v, const QuadraticForm& form) {
  return (v.transpose() * form.matrix + form.matrix * v).is_zero();
}

/// Exact coordinates with respect to a list of linearly independent matrices.
class MatrixCoordinates {
 public:
  MatrixCoordinates() = default;
  explicit MatrixCoordinates(const std::vector<RationalMatrix>& basis) : basis_(basis) {
    if (basis_.empty()) return;
    const std::size_t len = basis_.front().rows() * basis_.front().cols();
    std::vector<RationalVector> cols;
    for (const auto& b : basis_) cols.push_back(b.flatten());
    RationalMatrix a = from_columns(cols, len);
    // Independent rows of A give a square invertible subsystem.
    RrefResult rr = rref_rank(a.transpose());
    if (rr.rank != basis_.size()) throw Error("coordinate basis is linearly dependent");
    rows_ = rr.pivot_columns;
    RationalMatrix sub(rows_.size(), basis_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t j = 0; j < basis_.size(); ++j) sub(i, j) = a(rows_[i], j);
    solve_ = *inverse(sub);
  }

  std::size_t dimension() const { return basis_.size(); }
  const std::vector<RationalMatrix>& basis() const { return basis_; }

  /// Coordinates of v, or nullopt if v is outside the span.
  std::optional<RationalVector> try_coordinates(const RationalMatrix& v) const {
    RationalVector x = coordinates_unchecked(v);
    if (!(combine(x) == v)) return std::nullopt;
    return x;
  }

  RationalVector coordinates(const RationalMatrix& v) const {
    auto x = try_coordinates(v);
    if (!x) throw Error("matrix does not lie in the module");
    return *x;
  }

  RationalVector coordinates_unchecked(const RationalMatrix& v) const {
    RationalVector flat = v.flatten();
    RationalVector rhs(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) rhs[i] = flat[rows_[i]];
    return solve_ * rhs;
  }

  RationalMatrix combine(std::span<const Rational> x) const {
    RationalMatrix v(basis_.front().rows(), basis_.front().cols());
    for (std::size_t k = 0; k < basis_.size(); ++k)
      if (sgn(x[k]) != 0) v += basis_[k] * x[k];
    return v;
  }

 private:
  std::vector<RationalMatrix> basis_;
  std::vector<std::size_t> rows_;
  RationalMatrix solve_;
};

/// A dimension-d real representation of the presented group. Actions are
/// products of cached generator actions.
class CoefficientModule {
 public:
  CoefficientModule(ModuleKind kind, std::vector<RationalMatrix> generator_actions,
                    std::vector<RationalMatrix> generator_inverses, MatrixCoordinates coords)
      : kind_(kind),
        actions_(std::move(generator_actions)),
        inverses_(std::move(generator_inverses)),
        coords_(std::move(coords)) {}

  ModuleKind kind() const { return kind_; }
  std::size_t dimension() const { return actions_.empty() ? 0 : actions_.front().rows(); }
  std::size_t generator_count() const { return actions_.size(); }
  const std::vector<RationalMatrix>& basis() const { return coords_.basis(); }
  const MatrixCoordinates& coordinates() const { return coords_; }

  const RationalMatrix& generator_action(std::uint32_t g) const { return actions_.at(g); }

  RationalMatrix action(const Word& w) const {
    RationalMatrix m = RationalMatrix::identity(dimension());
    for (const Letter& l : w.letters()) {
      if (l.generator >= actions_.size()) throw Error("word uses an unknown generator");
      m = m * (l.exponent > 0 ? actions_[l.generator] : inverses_[l.generator]);
    }
    return m;
  }

  RationalMatrix action(const GroupRingElem& e) const {
    RationalMatrix m(dimension(), dimension());
    for (const auto& [w, c] : e.terms()) m += action(w) * Rational(c);
    return m;
  }

 private:
  ModuleKind kind_;
  std::vector<RationalMatrix> actions_;
  std::vector<RationalMatrix> inverses_;
  MatrixCoordinates coords_;
};

/// Matrix of V -> h V h^-1 on span(basis), in basis coordinates.
inline RationalMatrix adjoint_action_matrix(const RationalMatrix& h, const RationalMatrix& h_inv,
                                            const MatrixCoordinates& coords) {
  const std::size_t d = coords.dimension();
  RationalMatrix out(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    RationalVector col = coords.coordinates(h * coords.basis()[k] * h_inv);
    for (std::size_t i = 0; i < d; ++i) out(i, k) = col[i];
  }
  return out;
}

inline CoefficientModule build_module(const Representation& rep, ModuleKind kind) {
  const std::size_t gens = rep.presentation().generator_count();
  std::vector<RationalMatrix> acts, invs;
  if (kind == ModuleKind::standard) {
    for (std::uint32_t g = 0; g < gens; ++g) {
      acts.push_back(rep.image(g));
      invs.push_back(rep.image_inverse(g));
    }
    return CoefficientModule(kind, std::move(acts), std::move(invs), MatrixCoordinates{});
  }
  rep.form().validate();
  MatrixCoordinates coords(kind == ModuleKind::nu ? nu_basis(rep.form()) : adjoint_basis(rep.form()));
  for (std::uint32_t g = 0; g < gens; ++g) {
    acts.push_back(adjoint_action_matrix(rep.image(g), rep.image_inverse(g), coords));
    invs.push_back(adjoint_action_matrix(rep.image_inverse(g), rep.image(g), coords));
  }
  return CoefficientModule(kind, std::move(acts), std::move(invs), std::move(coords));
}

// ---------------------------------------------------------------------------
// Ad-invariant splittings

enum class SplitAmbient { sl, so_ext };

struct SplitResult {
  RationalMatrix so_part;
  /// nu component (sl ambient) or the R^{n,1} column (so_ext ambient).
  std::variant<RationalMatrix, RationalVector> complement;

  const RationalMatrix& complement_matrix() const { return std::get<RationalMatrix>(complement); }
  const RationalVector& complement_vector() const { return std::get<RationalVector>(complement); }
};

/// sl: X = (X - Q^-1 X^T Q)/2 + (X + Q^-1 X^T Q)/2 with parts in so(Q) and nu.
/// so_ext: X in so(Q + 1) is read as its top-left so(Q) block and its last
/// column (the translation part).
inline SplitResult split_components(const RationalMatrix& x, const QuadraticForm& form, SplitAmbient ambient) {
  if (!x.is_square()) throw Error("split_components: matrix is not square");
  if (ambient == SplitAmbient::sl) {
    if (x.rows() != form.size()) throw Error("split_components: size does not match form");
    if (sgn(x.trace()) != 0) throw Error("split_components: matrix is not traceless");
    auto q_inv = inverse(form.matrix);
    if (!q_inv) throw Error("split_components: degenerate form");
    RationalMatrix reflected = *q_inv * x.transpose() * form.matrix;
    const Rational half(1, 2);
    return {(x - reflected) * half, (x + reflected) * half};
  }
  const std::size_t n1 = form.size();
  if (x.rows() != n1 + 1) throw Error("split_components: so_ext matrix must be one larger than the form");
  if (!in_so(x, form.extended())) throw Error("split_components: matrix is not in so(Q + 1)");
  RationalVector col(n1);
  for (std::size_t i = 0; i < n1; ++i) col[i] = x(i, n1);
  return {x.block(0, 0, n1, n1), col};
}

}  // namespace bendlab

#pragma once

// First cohomology of a finitely presented group with coefficients in a
// CoefficientModule, computed from the Fox Jacobian with exact ranks.
//
// A cocycle is stored as the stacked vector (c(x_1), ..., c(x_g)) of length
// g*d; its value on any word is sum_i action(dw/dx_i) c(x_i).

#include <optional>
#include <string>
#include <vector>

#include "bendlab/coeffs.hpp"

namespace bendlab {

enum class ParabolicMode { none, per_element, per_subgroup };

inline std::string_view to_string(ParabolicMode m) {
  switch (m) {
    case ParabolicMode::none: return "none";
    case ParabolicMode::per_element: return "per-element";
    case ParabolicMode::per_subgroup: return "per-subgroup";
  }
  return "?";
}

inline ParabolicMode parse_parabolic_mode(std::string_view s) {
  if (s == "none") return ParabolicMode::none;
  if (s == "per-element" || s == "per_element") return ParabolicMode::per_element;
  if (s == "per-subgroup" || s == "per_subgroup") return ParabolicMode::per_subgroup;
  throw Error("unknown parabolic mode '" + std::string(s) + "'");
}

/// d x (g*d) matrix sending a stacked cocycle to its value on w; block i is
/// action(dw/dx_i), accumulated in one pass over the prefixes of w.
inline RationalMatrix cocycle_eval_matrix(const CoefficientModule& module, const Word& w) {
  const std::size_t d = module.dimension(), g = module.generator_count();
  std::vector<RationalMatrix> blocks(g, RationalMatrix(d, d));
  RationalMatrix prefix = RationalMatrix::identity(d);
  for (const Letter& l : w.letters()) {
    if (l.generator >= g) throw Error("word uses an unknown generator");
    RationalMatrix step = module.action(Word::generator(l.generator, l.exponent));
    if (l.exponent > 0) {
      blocks[l.generator] += prefix;
      prefix = prefix * step;
    } else {
      prefix = prefix * step;
      blocks[l.generator] -= prefix;
    }
  }
  RationalMatrix out(d, g * d);
  for (std::uint32_t i = 0; i < g; ++i) out.set_block(0, i * d, blocks[i]);
  return out;
}

class CocycleSpace {
 public:
  CocycleSpace(const Presentation& presentation, CoefficientModule module)
      : presentation_(presentation), module_(std::move(module)) {
    const std::size_t d = module_.dimension(), g = presentation_.generator_count();
    if (module_.generator_count() != g) throw Error("module and presentation disagree on generators");
    std::vector<RationalMatrix> blocks;
    for (const Word& r : presentation_.relators) blocks.push_back(cocycle_eval_matrix(module_, r));
    jacobian_ = blocks.empty() ? RationalMatrix(0, g * d) : vstack(blocks);
    z1_ = nullspace(jacobian_);

    // Coboundaries of the basis vectors e_k, reduced to an independent set.
    RationalMatrix del(g * d, d);
    for (std::uint32_t i = 0; i < g; ++i)
      del.set_block(i * d, 0, RationalMatrix::identity(d) - module_.generator_action(i));
    coboundary_map_ = del;
    RrefResult rr = rref_rank(del);
    for (std::size_t c : rr.pivot_columns) b1_.push_back(del.column_vector(c));
  }

  const Presentation& presentation() const { return presentation_; }
  const CoefficientModule& module() const { return module_; }
  const RationalMatrix& jacobian() const { return jacobian_; }
  const std::vector<RationalVector>& z1_basis() const { return z1_; }
  const std::vector<RationalVector>& b1_basis() const { return b1_; }
  /// alpha -> ((I - action(x_i)) alpha)_i.
  const RationalMatrix& coboundary_map() const { return coboundary_map_; }
  std::size_t cochain_length() const { return presentation_.generator_count() * module_.dimension(); }

  bool is_cocycle(std::span<const Rational> c) const {
    if (c.size() != cochain_length()) throw Error("cochain has the wrong length");
    return is_zero_vector(jacobian_ * c);
  }

  RationalVector coboundary(std::span<const Rational> alpha) const { return coboundary_map_ * alpha; }

 private:
  Presentation presentation_;
  CoefficientModule module_;
  RationalMatrix jacobian_;
  RationalMatrix coboundary_map_;
  std::vector<RationalVector> z1_;
  std::vector<RationalVector> b1_;
};

/// Unique cocycle extension of the generator values c, evaluated at w.
inline RationalVector cocycle_eval(const CocycleSpace& space, std::span<const Rational> c, const Word& w) {
  if (c.size() != space.cochain_length()) throw Error("cochain has the wrong length");
  for (const Letter& l : w.letters())
    if (l.generator >= space.presentation().generator_count()) throw Error("word uses an unknown generator");
  return cocycle_eval_matrix(space.module(), w) * c;
}

/// Dimension of the span of the classes of `cocycles` in H^1.
inline std::size_t class_span_dim(const CocycleSpace& space, const std::vector<RationalVector>& cocycles) {
  for (const auto& c : cocycles)
    if (!space.is_cocycle(c)) throw Error("class_span_dim: vector is not a cocycle");
  return added_rank(cocycles, space.b1_basis(), space.cochain_length());
}

/// Joint fixed space of the listed actions: dim of the kernel of the stacked (A - I).
inline std::size_t joint_invariant_dim(const CoefficientModule& module, const std::vector<Word>& words) {
  const std::size_t d = module.dimension();
  if (words.empty()) return d;
  std::vector<RationalMatrix> blocks;
  for (const Word& w : words) blocks.push_back(module.action(w) - RationalMatrix::identity(d));
  return d - rank(vstack(blocks));
}

/// Groups of words that must share one auxiliary alpha: c(w) = (I - action(w)) alpha
/// for every w in the group.
using ParabolicConstraint = std::vector<Word>;

/// Basis of the subspace of Z^1 satisfying the constraints, in cocycle
/// coordinates (spanning set reduced to independent vectors).
inline std::vector<RationalVector> constrained_cocycles(const CocycleSpace& space,
                                                        const std::vector<ParabolicConstraint>& groups) {
  const std::size_t d = space.module().dimension();
  const std::size_t n = space.cochain_length();
  const std::size_t total = n + groups.size() * d;
  std::size_t constraint_rows = 0;
  for (const auto& grp : groups) constraint_rows += grp.size() * d;
  RationalMatrix sys(space.jacobian().rows() + constraint_rows, total);
  sys.set_block(0, 0, space.jacobian());
  std::size_t row = space.jacobian().rows();
  for (std::size_t k = 0; k < groups.size(); ++k)
    for (const Word& w : groups[k]) {
      sys.set_block(row, 0, cocycle_eval_matrix(space.module(), w));
      sys.set_block(row, n + k * d, space.module().action(w) - RationalMatrix::identity(d));
      row += d;
    }
  std::vector<RationalVector> projected;
  for (const auto& v : nullspace(sys)) projected.emplace_back(v.begin(), v.begin() + static_cast<long>(n));
  if (projected.empty()) return {};
  RationalMatrix m = from_columns(projected, n);
  RrefResult rr = rref_rank(m);
  std::vector<RationalVector> basis;
  for (std::size_t c : rr.pivot_columns) basis.push_back(projected[c]);
  return basis;
}

/// Default parabolic words: meridian, longitude, and their product per cusp.
inline std::vector<Word> default_parabolic_words(const Presentation& p) {
  std::vector<Word> words;
  for (const Cusp& c : p.cusps) {
    words.push_back(c.meridian);
    words.push_back(c.longitude);
    words.push_back(c.meridian * c.longitude);
  }
  return words;
}

/// True when c restricted to the cusp subgroup <mu, lambda> is a coboundary.
inline bool restricts_to_coboundary(const CocycleSpace& space, std::span<const Rational> c, const Cusp& cusp) {
  const std::size_t d = space.module().dimension();
  const RationalMatrix id = RationalMatrix::identity(d);
  std::vector<RationalMatrix> lhs{id - space.module().action(cusp.meridian), id - space.module().action(cusp.longitude)};
  RationalVector rhs = cocycle_eval(space, c, cusp.meridian);
  RationalVector rl = cocycle_eval(space, c, cusp.longitude);
  rhs.insert(rhs.end(), rl.begin(), rl.end());
  return in_column_space(vstack(lhs), rhs).has_value();
}

struct CohomologyReport {
  std::size_t dimZ1 = 0, dimB1 = 0, dimH1 = 0, dimH0 = 0;
  std::optional<std::size_t> dimPZ1, dimPH1;
  ParabolicMode mode = ParabolicMode::none;
  std::vector<std::size_t> peripheral_h0;  // per cusp
  std::vector<std::string> warnings;

  std::size_t peripheral_h0_total() const {
    std::size_t s = 0;
    for (auto v : peripheral_h0) s += v;
    return s;
  }

  /// dimH1 = dimZ1 - dimB1, dimB1 = d - dimH0, dimPH1 = dimPZ1 - dimB1.
  bool identities_hold(std::size_t module_dimension) const {
    bool ok = dimH1 + dimB1 == dimZ1 && dimB1 + dimH0 == module_dimension;
    if (dimPZ1 && dimPH1) ok = ok && *dimPH1 + dimB1 == *dimPZ1 && *dimPZ1 <= dimZ1 && dimB1 <= *dimPZ1;
    return ok;
  }
};

/// Cohomology dimensions of `space`. `rep` is used only to flag listed
/// parabolic words whose images are not unipotent. For per_element, an empty
/// `parabolic_words` falls back to default_parabolic_words.
inline CohomologyReport h1_report(const CocycleSpace& space, const Representation& rep, ParabolicMode mode,
                                  std::vector<Word> parabolic_words = {}) {
  CohomologyReport report;
  const auto& pres = space.presentation();
  const std::size_t d = space.module().dimension();
  report.mode = mode;
  report.dimZ1 = space.z1_basis().size();
  report.dimB1 = space.b1_basis().size();
  report.dimH1 = report.dimZ1 - report.dimB1;
  std::vector<Word> gens;
  for (std::uint32_t g = 0; g < pres.generator_count(); ++g) gens.push_back(Word::generator(g));
  report.dimH0 = joint_invariant_dim(space.module(), gens);
  for (const Cusp& c : pres.cusps) report.peripheral_h0.push_back(joint_invariant_dim(space.module(), {c.meridian, c.longitude}));

  std::vector<ParabolicConstraint> groups;
  std::vector<Word> checked;
  if (mode == ParabolicMode::per_element) {
    if (parabolic_words.empty()) parabolic_words = default_parabolic_words(pres);
    for (const Word& w : parabolic_words) groups.push_back({w});
    checked = parabolic_words;
  } else if (mode == ParabolicMode::per_subgroup) {
    if (pres.cusps.empty()) report.warnings.push_back("per-subgroup mode with no cusps: PZ1 = Z1");
    for (const Cusp& c : pres.cusps) {
      groups.push_back({c.meridian, c.longitude});
      checked.push_back(c.meridian);
      checked.push_back(c.longitude);
    }
  }
  for (const Word& w : checked)
    if (!is_parabolic(evaluate(rep, w)))
      report.warnings.push_back("word '" + format_word(w, pres.generators) + "' is not parabolic");
  if (mode != ParabolicMode::none) {
    report.dimPZ1 = constrained_cocycles(space, groups).size();
    report.dimPH1 = *report.dimPZ1 - report.dimB1;
  }
  if (d == 0) report.warnings.push_back("zero-dimensional module");
  return report;
}

/// dim H^1 - dim PH^1 equals the summed peripheral invariants.
inline bool scannell_check(const CohomologyReport& report, std::size_t peripheral_h0) {
  if (!report.dimPH1) return false;
  return report.dimH1 - *report.dimPH1 == peripheral_h0;
}

}  // namespace bendlab

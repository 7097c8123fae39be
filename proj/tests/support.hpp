#pragma once

// Random generators and property checks shared by the unit tests and the
// acceptance binary.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bendlab/fixture.hpp"

namespace bendlab::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Word random_word(Rng& rng, std::uint32_t generators, std::size_t max_length) {
  std::vector<Letter> letters;
  const std::size_t len = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_length)));
  for (std::size_t i = 0; i < len; ++i)
    letters.push_back({static_cast<std::uint32_t>(uniform(rng, 0, generators - 1)), uniform(rng, 0, 1) ? 1 : -1});
  return Word::from_letters(letters);
}

inline Rational random_rational(Rng& rng, long range) {
  return make_rational(uniform(rng, -range, range), uniform(rng, 1, 3));
}

inline RationalMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long range, int zero_percent = 0) {
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (uniform(rng, 0, 99) >= zero_percent) m(i, j) = random_rational(rng, range);
  return m;
}

inline RationalVector random_vector(Rng& rng, std::size_t n, long range) {
  RationalVector v(n);
  for (auto& q : v) q = random_rational(rng, range);
  return v;
}

/// Cayley transform (I - A)^-1 (I + A) of a random A in so(Q); preserves Q.
inline RationalMatrix random_isometry(Rng& rng, const QuadraticForm& form, long range = 1) {
  const std::size_t n = form.size();
  for (;;) {
    RationalMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        s(i, j) = make_rational(uniform(rng, -range, range), uniform(rng, 1, 2));
        s(j, i) = -s(i, j);
      }
    RationalMatrix a = *inverse(form.matrix) * s;
    const RationalMatrix id = RationalMatrix::identity(n);
    if (auto inv = inverse(id - a)) return *inv * (id + a);
  }
}

/// Outcome of a randomized property: number of cases and the first failure.
struct PropertyResult {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0; }
  void fail(std::string what) {
    if (failures++ == 0) first_failure = std::move(what);
  }
};

/// sum_i (dw/dx_i)(x_i - 1) = w - 1.
inline PropertyResult fox_identity_property(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed);
  PropertyResult out;
  const std::uint32_t gens = 3;
  for (std::size_t k = 0; k < cases; ++k, ++out.cases) {
    Word w = random_word(rng, gens, 30);
    GroupRingElem lhs;
    for (std::uint32_t g = 0; g < gens; ++g)
      lhs += fox_derivative(w, g) * (GroupRingElem(Word::generator(g)) - GroupRingElem::one());
    if (!(lhs == GroupRingElem(w) - GroupRingElem::one())) out.fail("fundamental identity, word length " + std::to_string(w.length()));
  }
  return out;
}

/// The cocycle extension of a coboundary ((I - g) alpha)_g evaluates to (I - w) alpha.
inline PropertyResult coboundary_property(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed);
  PropertyResult out;
  FixtureBundle b = borromean_fixture();
  const ModuleKind kinds[] = {ModuleKind::standard, ModuleKind::nu, ModuleKind::adjoint};
  std::vector<CocycleSpace> spaces;
  for (ModuleKind k : kinds) spaces.emplace_back(b.presentation, build_module(b.representation, k));
  for (std::size_t k = 0; k < cases; ++k, ++out.cases) {
    const CocycleSpace& space = spaces[k % 3];
    const std::size_t d = space.module().dimension();
    RationalVector alpha = random_vector(rng, d, 5);
    Word w = random_word(rng, 3, 12);
    RationalVector lhs = cocycle_eval(space, space.coboundary(alpha), w);
    RationalVector rhs = (RationalMatrix::identity(d) - space.module().action(w)) * alpha;
    if (lhs != rhs) out.fail("coboundary identity, module " + std::string(to_string(space.module().kind())));
  }
  return out;
}

/// rank + nullity = cols, kernel vectors are killed, rref is idempotent.
inline PropertyResult rank_nullity_property(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed);
  PropertyResult out;
  for (std::size_t k = 0; k < cases; ++k, ++out.cases) {
    const auto rows = static_cast<std::size_t>(uniform(rng, 0, 7));
    const auto cols = static_cast<std::size_t>(uniform(rng, 0, 7));
    RationalMatrix m = random_matrix(rng, rows, cols, 4, static_cast<int>(uniform(rng, 0, 80)));
    if (rows > 1 && uniform(rng, 0, 2) == 0)  // force a dependent row
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = m(0, j) * Rational(2) - m(1, j);
    RrefResult rr = rref_rank(m);
    auto ns = nullspace(m);
    bool ok = rr.rank + ns.size() == cols;
    for (const auto& v : ns) ok = ok && is_zero_vector(m * v);
    ok = ok && rref_rank(rr.reduced).reduced == rr.reduced;
    if (!ok) out.fail("rank-nullity on a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  }
  return out;
}

/// Random products of conjugated relators have zero first-order part under
/// every fixture bending, in both geometries and at random speeds.
inline PropertyResult relator_first_order_property(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed);
  PropertyResult out;
  FixtureBundle b = borromean_fixture();
  std::vector<std::pair<std::string, FirstOrderRep>> bendings;
  for (const BendingDatum& d : b.pants)
    for (BenderGeometry g : {BenderGeometry::sl, BenderGeometry::so_ext}) {
      BendingGenerator gen = centralizer_generator(b.representation, d, g);
      gen.v = gen.v * random_rational(rng, 5);
      bendings.emplace_back(d.name + "/" + std::string(to_string(g)),
                            hnn_first_order(b.representation, d, gen).first_order);
    }
  for (std::size_t k = 0; k < cases; ++k, ++out.cases) {
    const auto& [name, fo] = bendings[k % bendings.size()];
    Word w;
    const long factors = uniform(rng, 1, 3);
    for (long f = 0; f < factors; ++f) {
      Word conj = random_word(rng, 3, 6);
      Word r = b.presentation.relators[static_cast<std::size_t>(uniform(rng, 0, 1))];
      if (uniform(rng, 0, 1)) r = r.inverse();
      w *= conj * r * conj.inverse();
    }
    DualMatrix m = first_order_evaluate(fo, w);
    if (!m.derivative.is_zero() || !(m.value == RationalMatrix::identity(m.value.rows())))
      out.fail("relator consequence " + format_word(w, b.presentation.generators) + " under " + name);
  }
  return out;
}

/// Cohomology dimensions of the fixture do not change under conjugation by
/// random form-preserving matrices.
inline PropertyResult conjugation_invariance_property(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed);
  PropertyResult out;
  FixtureBundle b = borromean_fixture();
  struct Expected {
    ModuleKind kind;
    std::size_t h1, ph1, h0;
  };
  const Expected expected[] = {{ModuleKind::standard, 3, 0, 0}, {ModuleKind::nu, 6, 3, 0}, {ModuleKind::adjoint, 6, 0, 0}};
  for (std::size_t k = 0; k < cases; ++k, ++out.cases) {
    const Expected& e = expected[k % 3];
    Representation conj = b.representation.conjugated(random_isometry(rng, b.representation.form()));
    CocycleSpace space(conj.presentation(), build_module(conj, e.kind));
    CohomologyReport r = h1_report(space, conj, ParabolicMode::per_subgroup);
    if (r.dimH1 != e.h1 || r.dimPH1 != e.ph1 || r.dimH0 != e.h0)
      out.fail("module " + std::string(to_string(e.kind)) + ": H1 " + std::to_string(r.dimH1));
  }
  return out;
}

}  // namespace bendlab::testing

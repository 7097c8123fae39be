#pragma once

// The bundled Borromean-rings fixture and the one-shot verification suite
// that runs every fixture check and reports expected against computed values.

#include <optional>
#include <string>
#include <vector>

#include "bendlab/io.hpp"

namespace bendlab {

namespace fixture_data {

inline constexpr const char* kPresentation = R"({
  "generators": ["x", "y", "z"],
  "relators": ["[x,[y^-1,z]]", "[y,[z^-1,x]]"],
  "cusps": [
    {"meridian": "x", "longitude": "[y^-1,z]"},
    {"meridian": "y", "longitude": "[z^-1,x]"},
    {"meridian": "z", "longitude": "[x^-1,y]"}
  ]
})";

inline constexpr const char* kRepresentation = R"({
  "form": {"diagonal": [-1, 1, 1, 1]},
  "images": {
    "x": [[3, 0, 2, 2], [0, 1, 0, 0], [-2, 0, -1, -2], [2, 0, 2, 1]],
    "y": [[3, 2, 0, -2], [2, 1, 0, -2], [0, 0, 1, 0], [2, 2, 0, -1]],
    "z": [[3, -2, -2, 0], [2, -1, -2, 0], [-2, 2, 1, 0], [0, 0, 0, 1]]
  }
})";

// Thrice-punctured spheres: surface group and stable letter. The side records
// whether the centralizer multiplies the stable letter's image on the left
// or the right; only that side keeps the relators.
inline constexpr const char* kPants = R"([
  {"name": "P_RG", "subgroup": ["y^-1 z y", "z^-1"], "stable": "x", "side": "right"},
  {"name": "P_RB", "subgroup": ["y^-1", "z y z^-1"], "stable": "x", "side": "left"},
  {"name": "P_BR", "subgroup": ["z^-1 x z", "x^-1"], "stable": "y", "side": "right"},
  {"name": "P_BG", "subgroup": ["z^-1", "x z x^-1"], "stable": "y", "side": "left"},
  {"name": "P_GR", "subgroup": ["x^-1", "y x y^-1"], "stable": "z", "side": "left"},
  {"name": "P_GB", "subgroup": ["x^-1 y x", "y^-1"], "stable": "z", "side": "right"}
])";

inline constexpr const char* kComplex = R"({
  "dimension": 3,
  "walls": ["w1", "w2", "w3", "w4"],
  "bindings": [
    {"name": "A", "incidences": [
      {"wall": "w1", "angle": "0", "sign": 1}, {"wall": "w3", "angle": "pi/2", "sign": 1},
      {"wall": "w1", "angle": "pi", "sign": 1}, {"wall": "w2", "angle": "3pi/2", "sign": 1}]},
    {"name": "B", "incidences": [
      {"wall": "w4", "angle": "0", "sign": 1}, {"wall": "w2", "angle": "pi/2", "sign": 1},
      {"wall": "w4", "angle": "pi", "sign": 1}, {"wall": "w2", "angle": "3pi/2", "sign": 1}]},
    {"name": "C", "incidences": [
      {"wall": "w4", "angle": "0", "sign": 1}, {"wall": "w3", "angle": "pi/2", "sign": 1},
      {"wall": "w4", "angle": "pi", "sign": 1}, {"wall": "w3", "angle": "3pi/2", "sign": 1}]}
  ]
})";

inline constexpr const char* kTraceWords = "x^-1 y\nx z\ny z\nx y z\nx z y\ny z x^-1\n";

// Published trace-derivative matrix (rows follow kTraceWords).
inline constexpr const char* kReferenceTraceMatrix = R"([
  ["4/3", "-4/3", "-4/3", "-28/3", "0", "0"],
  ["-28/3", "-4/3", "0", "0", "-4/3", "4/3"],
  ["0", "0", "4/3", "-4/3", "-28/3", "-4/3"],
  ["-100/3", "20", "20", "-100/3", "-100/3", "20"],
  ["-12", "-4/3", "-4/3", "-12", "-12", "-4/3"],
  ["164/3", "4/3", "-4/3", "-12", "-12", "-4/3"]
])";

}  // namespace fixture_data

struct FixtureBundle {
  Presentation presentation;
  Representation representation;
  std::vector<BendingDatum> pants;
  BendingComplex complex;
  std::vector<Word> trace_words;
  RationalMatrix reference_trace_matrix;
};

/// Rebuilds the words and representation of `base` against another presentation.
inline FixtureBundle with_presentation(const FixtureBundle& base, Presentation p) {
  FixtureBundle out = base;
  out.presentation = p;
  out.representation = Representation(p, base.representation.images(), base.representation.form());
  return out;
}

inline FixtureBundle borromean_fixture() {
  FixtureBundle b;
  b.presentation = presentation_from_json(json::parse(fixture_data::kPresentation));
  b.representation = representation_from_json(json::parse(fixture_data::kRepresentation), b.presentation);
  b.pants = pants_from_json(json::parse(fixture_data::kPants), b.presentation);
  b.complex = complex_from_json(json::parse(fixture_data::kComplex));
  b.trace_words = words_from_text(fixture_data::kTraceWords, b.presentation);
  b.reference_trace_matrix = matrix_from_json(json::parse(fixture_data::kReferenceTraceMatrix));
  return b;
}

// ---------------------------------------------------------------------------
// Building blocks shared by the suite, the CLI and the tests

struct ModuleCohomology {
  CohomologyReport per_subgroup;
  CohomologyReport per_element;
};

inline ModuleCohomology module_cohomology(const Representation& rep, ModuleKind kind) {
  CocycleSpace space(rep.presentation(), build_module(rep, kind));
  return {h1_report(space, rep, ParabolicMode::per_subgroup), h1_report(space, rep, ParabolicMode::per_element)};
}

/// Tangent cocycles of the listed bendings: nu coordinates for sl, R^{n,1}
/// translation parts for so.
inline std::vector<RationalVector> bending_cocycles(const Representation& rep, const std::vector<BendingDatum>& pants,
                                                    BenderGeometry geometry) {
  CoefficientModule module = build_module(rep, geometry == BenderGeometry::sl ? ModuleKind::nu : ModuleKind::standard);
  std::vector<RationalVector> out;
  for (const BendingDatum& d : pants) {
    BendingGenerator gen = centralizer_generator(rep, d, geometry);
    out.push_back(tangent_cocycle(hnn_first_order(rep, d, gen).first_order, module));
  }
  return out;
}

/// Differences of consecutive pairs (0,1), (2,3), ... of cocycles.
inline std::vector<RationalVector> paired_differences(const std::vector<RationalVector>& cocycles) {
  std::vector<RationalVector> out;
  for (std::size_t k = 0; k + 1 < cocycles.size(); k += 2) {
    RationalVector d = cocycles[k];
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= cocycles[k + 1][i];
    out.push_back(std::move(d));
  }
  return out;
}

/// reference = scale * computed * diag(signs), if such scale and signs exist.
struct SignScaleMatch {
  bool matched = false;
  std::optional<Rational> scale;
  std::vector<std::optional<Rational>> column_ratios;  // reference / computed per column
  std::string residual;
};

inline SignScaleMatch match_up_to_signs_and_scale(const RationalMatrix& computed, const RationalMatrix& reference) {
  SignScaleMatch out;
  if (computed.rows() != reference.rows() || computed.cols() != reference.cols()) {
    out.residual = "shape mismatch";
    return out;
  }
  for (std::size_t j = 0; j < computed.cols(); ++j) {
    std::optional<Rational> ratio;
    bool proportional = true;
    for (std::size_t i = 0; i < computed.rows() && proportional; ++i) {
      const Rational& c = computed(i, j);
      const Rational& r = reference(i, j);
      if (sgn(c) == 0) {
        proportional = sgn(r) == 0;
      } else if (!ratio) {
        ratio = r / c;
      } else {
        proportional = r == *ratio * c;
      }
    }
    if (!proportional) ratio.reset();
    out.column_ratios.push_back(ratio);
    if (!ratio) {
      if (out.residual.empty()) out.residual = "column " + std::to_string(j) + " is not proportional to the reference";
      continue;
    }
    if (!out.scale) out.scale = *ratio;
    else if (abs(*ratio) != abs(*out.scale) && out.residual.empty())
      out.residual = "column " + std::to_string(j) + " ratio " + to_string(*ratio) + " differs in magnitude from " +
                     to_string(*out.scale);
  }
  out.matched = out.residual.empty() && out.scale && sgn(*out.scale) != 0;
  if (!out.matched) out.scale.reset();
  return out;
}

// ---------------------------------------------------------------------------
// Suite

struct FixtureCheck {
  std::string id;
  int criterion = 0;  // 0 when not tied to a numbered criterion
  std::string description;
  json expected;
  json computed;
  bool passed = false;
  bool informational = false;
};

struct FixtureReport {
  std::vector<FixtureCheck> checks;
  bool aborted = false;
  std::string diagnostic;

  bool passed() const {
    if (aborted) return false;
    for (const auto& c : checks)
      if (!c.informational && !c.passed) return false;
    return true;
  }

  const FixtureCheck* find(std::string_view id) const {
    for (const auto& c : checks)
      if (c.id == id) return &c;
    return nullptr;
  }

  json to_json() const {
    json checks_json = json::array();
    for (const auto& c : checks)
      checks_json.push_back({{"id", c.id},
                             {"criterion", c.criterion},
                             {"description", c.description},
                             {"expected", c.expected},
                             {"computed", c.computed},
                             {"passed", c.passed},
                             {"informational", c.informational}});
    json out{{"checks", checks_json}, {"aborted", aborted}, {"passed", passed()}};
    if (!diagnostic.empty()) out["diagnostic"] = diagnostic;
    return out;
  }
};

struct FixtureOptions {
  /// Restrict the run to cohomology and bending checks for one module.
  std::optional<ModuleKind> module;
  double float_tolerance = kDefaultRankTolerance;
};

namespace detail {

inline json report_json(const CohomologyReport& r) {
  json out{{"dimZ1", r.dimZ1}, {"dimB1", r.dimB1}, {"dimH1", r.dimH1}, {"dimH0", r.dimH0},
           {"peripheral_h0", r.peripheral_h0}, {"mode", std::string(to_string(r.mode))}};
  if (r.dimPZ1) out["dimPZ1"] = *r.dimPZ1;
  if (r.dimPH1) out["dimPH1"] = *r.dimPH1;
  if (!r.warnings.empty()) out["warnings"] = r.warnings;
  return out;
}

inline BendingComplex single_binding(const std::vector<Angle>& angles, std::vector<int> signs = {}) {
  BendingComplex c;
  Binding b{"b", {}};
  for (std::size_t i = 0; i < angles.size(); ++i) {
    c.walls.push_back("w" + std::to_string(i + 1));
    b.incidences.push_back({i, angles[i], signs.empty() ? 1 : signs[i]});
  }
  c.bindings.push_back(std::move(b));
  return c;
}

}  // namespace detail

/// Exact Pythagorean angles, the first one 0.
inline std::vector<Angle> pythagorean_angles() {
  const long table[][3] = {{1, 0, 1},   {3, 4, 5},    {-4, 3, 5},    {-3, -4, 5},
                           {4, -3, 5},  {5, 12, 13},  {-12, 5, 13},  {8, 15, 17}};
  std::vector<Angle> out;
  for (const auto& t : table) out.push_back(Angle::exact(make_rational(t[0], t[2]), make_rational(t[1], t[2])));
  return out;
}

/// Single binding with k walls at 2 pi j / k.
inline BendingComplex roots_of_unity_binding(long k) {
  std::vector<Angle> angles;
  for (long j = 0; j < k; ++j) angles.push_back(Angle::pi_fraction(2 * j, k));
  return detail::single_binding(angles);
}

inline BendingComplex pythagorean_binding(std::size_t k) {
  auto all = pythagorean_angles();
  if (k > all.size()) throw Error("at most " + std::to_string(all.size()) + " Pythagorean walls available");
  return detail::single_binding(std::vector<Angle>(all.begin(), all.begin() + static_cast<long>(k)));
}

/// Relations cut out by an exact system: nonzero rows of its reduced echelon form.
inline std::vector<std::string> reduced_relations(const RationalMatrix& m, const std::vector<std::string>& walls) {
  RrefResult rr = rref_rank(m);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < rr.rank; ++i) {
    std::string lhs = walls[rr.pivot_columns[i]], rhs;
    for (std::size_t j = rr.pivot_columns[i] + 1; j < m.cols(); ++j) {
      const Rational c = -rr.reduced(i, j);
      if (sgn(c) == 0) continue;
      if (!rhs.empty()) rhs += sgn(c) > 0 ? " + " : " - ";
      else if (sgn(c) < 0) rhs += "-";
      if (abs(c) != 1) rhs += to_string(abs(c)) + "*";
      rhs += walls[j];
    }
    out.push_back(lhs + " = " + (rhs.empty() ? "0" : rhs));
  }
  return out;
}

inline FixtureReport run_fixture_suite(const FixtureBundle& bundle, const FixtureOptions& options = {}) {
  FixtureReport report;
  const Representation& rep = bundle.representation;
  const Presentation& pres = bundle.presentation;
  auto add = [&](std::string id, int criterion, std::string description, json expected, json computed, bool passed,
                 bool informational = false) {
    report.checks.push_back(
        {std::move(id), criterion, std::move(description), std::move(expected), std::move(computed), passed, informational});
  };
  auto wants = [&](ModuleKind k) { return !options.module || *options.module == k; };

  ValidationReport validation = validate_representation(rep);
  add("representation_valid", 0, "generators preserve the form; relators map to the identity", true, validation.passed,
      validation.passed);
  if (!validation.passed) {
    report.aborted = true;
    report.diagnostic = validation.diagnostic();
    return report;
  }

  try {
    {
      json computed = json::array();
      bool ok = true;
      for (const Cusp& c : pres.cusps) {
        RationalMatrix mu = evaluate(rep, c.meridian), la = evaluate(rep, c.longitude);
        bool good = is_parabolic(mu) && is_parabolic(la) && mu * la == la * mu;
        ok = ok && good;
        computed.push_back(good);
      }
      add("peripheral_parabolic", 0, "each cusp's meridian and longitude are commuting parabolics",
          json::array({true, true, true}), computed, ok && pres.cusps.size() == 3);
    }

    std::optional<ModuleCohomology> coh_std, coh_nu, coh_adj;
    if (wants(ModuleKind::standard)) {
      coh_std = module_cohomology(rep, ModuleKind::standard);
      const auto& r = coh_std->per_subgroup;
      add("r31_cohomology", 1, "H1 and cuspidal PH1 with R^{3,1} coefficients", {{"dimH1", 3}, {"dimPH1", 0}},
          detail::report_json(r), r.dimH1 == 3 && r.dimPH1 == 0u && r.identities_hold(4));
    }
    if (wants(ModuleKind::nu)) {
      coh_nu = module_cohomology(rep, ModuleKind::nu);
      const auto& r = coh_nu->per_subgroup;
      add("nu_cohomology", 2, "H1 and cuspidal PH1 with nu_4 coefficients", {{"dimH1", 6}, {"dimPH1", 3}},
          detail::report_json(r), r.dimH1 == 6 && r.dimPH1 == 3u && r.identities_hold(9));
    }
    if (wants(ModuleKind::adjoint)) {
      coh_adj = module_cohomology(rep, ModuleKind::adjoint);
      const auto& r = coh_adj->per_subgroup;
      add("adjoint_cuspidal", 3, "cuspidal PH1 with so(3,1) coefficients", {{"dimPH1", 0}}, detail::report_json(r),
          r.dimPH1 == 0u && r.identities_hold(6));
    }
    for (auto [coh, name] : {std::pair{&coh_std, "r31"}, std::pair{&coh_nu, "nu"}}) {
      if (!*coh) continue;
      const auto& r = (*coh)->per_subgroup;
      bool each_one = r.peripheral_h0 == std::vector<std::size_t>{1, 1, 1};
      add(std::string("boundary_restriction_") + name, 4,
          "dim H1 - dim PH1 equals the summed per-cusp invariants, each 1",
          {{"difference", 3}, {"peripheral_h0", {1, 1, 1}}},
          {{"difference", r.dimPH1 ? json(r.dimH1 - *r.dimPH1) : json(nullptr)}, {"peripheral_h0", r.peripheral_h0}},
          each_one && scannell_check(r, r.peripheral_h0_total()) && r.peripheral_h0_total() == 3);
    }
    for (auto [coh, name] : {std::pair{&coh_std, "r31"}, std::pair{&coh_nu, "nu"}, std::pair{&coh_adj, "adjoint"}}) {
      if (!*coh) continue;
      const auto& a = (*coh)->per_element;
      const auto& b = (*coh)->per_subgroup;
      add(std::string("parabolic_modes_agree_") + name, 5, "per-element parabolic and per-subgroup cuspidal PH1 agree",
          {{"per_subgroup", *b.dimPH1}}, {{"per_element", *a.dimPH1}, {"per_subgroup", *b.dimPH1}},
          a.dimPH1 == b.dimPH1);
    }

    if (!options.module) {
      BendingDimension dim = bending_dimension(bundle.complex, Geometry::so, options.float_tolerance);
      BendingSystem sys = build_system(bundle.complex, Geometry::so, options.float_tolerance);
      std::vector<std::string> relations =
          sys.exact() ? reduced_relations(sys.exact_matrix(), bundle.complex.walls) : std::vector<std::string>{};
      add("branched_complex_so", 6, "right-angled complex: one relation, nullity 3, naive bound -2",
          {{"relations", {"w2 = w3"}}, {"nullity", 3}, {"naive_bound", -2}},
          {{"relations", relations}, {"nullity", dim.nullity}, {"naive_bound", dim.naive_bound}, {"exact", dim.exact}},
          relations == std::vector<std::string>{"w2 = w3"} && dim.nullity == 3 && dim.naive_bound == -2);

      json per_k = json::object();
      bool all = true;
      for (long k = 3; k <= 12; ++k) {
        BendingDimension d = bending_dimension(roots_of_unity_binding(k), Geometry::so, options.float_tolerance);
        per_k[std::to_string(k)] = d.equal_weights_solve;
        all = all && d.equal_weights_solve;
      }
      add("equal_weights_roots_of_unity", 7, "equal weights solve k-valent bindings at 2 pi j / k, k = 3..12",
          "all true", per_k, all);

      json exp = json::object(), got = json::object();
      bool ok = true;
      for (std::size_t k = 4; k <= 8; ++k) {
        BendingComplex c = pythagorean_binding(k);
        BendingDimension so = bending_dimension(c, Geometry::so, options.float_tolerance);
        BendingDimension sl = bending_dimension(c, Geometry::sl, options.float_tolerance);
        exp[std::to_string(k)] = {{"so", k - 2}, {"sl", k - 3}};
        got[std::to_string(k)] = {{"so", so.nullity}, {"sl", sl.nullity}};
        ok = ok && so.exact && sl.exact && so.nullity == k - 2 && sl.nullity == k - 3;
      }
      add("generic_angle_nullity", 8, "single binding at Pythagorean angles: nullity k-2 (so), k-3 (sl)", exp, got, ok);
    }

    const bool bending = !options.module || *options.module != ModuleKind::adjoint;
    if (bending) {
      // Relators stay trivial to first order under every bending.
      json computed = json::object();
      bool ok = true;
      for (const BendingDatum& d : bundle.pants) {
        bool pants_ok = true;
        for (BenderGeometry g : {BenderGeometry::sl, BenderGeometry::so_ext}) {
          BendingGenerator gen = centralizer_generator(rep, d, g);
          HnnBending b = hnn_first_order(rep, d, gen);
          for (const Word& r : pres.relators) pants_ok = pants_ok && first_order_evaluate(b.first_order, r).derivative.is_zero();
        }
        computed[d.name] = pants_ok;
        ok = ok && pants_ok;
      }
      add("bending_relators_first_order", 13, "relator E-parts vanish for all six bendings", "all true", computed, ok);
    }

    if (!options.module) {
      RationalMatrix f = trace_derivative_matrix(rep, bundle.pants, bundle.trace_words);
      const std::size_t r = rank(f);
      add("trace_matrix_rank", 9, "trace-derivative matrix has full rank", 6, {{"rank", r}, {"matrix", to_json(f)}}, r == 6);

      SignScaleMatch m = match_up_to_signs_and_scale(f, bundle.reference_trace_matrix);
      json ratios = json::array();
      for (const auto& q : m.column_ratios) ratios.push_back(q ? json(to_string(*q)) : json(nullptr));
      add("trace_matrix_reference", 10, "matches the reference matrix up to column signs and one scale",
          {{"reference", to_json(bundle.reference_trace_matrix)}},
          {{"matched", m.matched}, {"scale", m.scale ? json(to_string(*m.scale)) : json(nullptr)},
           {"column_ratios", ratios}, {"residual", m.residual}},
          m.matched);

      // The reference matrix is reproduced by right-multiplying every stable
      // letter and listing each RB/RG-style pair in swapped order.
      std::vector<BendingDatum> right = bundle.pants;
      for (auto& d : right) d.side = HnnSide::right;
      if (right.size() == 6) {
        std::vector<BendingDatum> swapped{right[1], right[0], right[2], right[3], right[4], right[5]};
        RationalMatrix g = trace_derivative_matrix(rep, swapped, bundle.trace_words);
        SignScaleMatch mr = match_up_to_signs_and_scale(g, bundle.reference_trace_matrix);
        json broken = json::array();
        for (const BendingDatum& d : swapped) {
          BendingGenerator gen = centralizer_generator(rep, d, BenderGeometry::sl);
          HnnBending b = hnn_first_order(rep, d, gen);
          if (!detail::relators_stay_trivial(b.first_order)) broken.push_back(d.name);
        }
        add("trace_matrix_right_convention", 0,
            "reference matrix against uniform right multiplication, columns RB, RG, BR, BG, GR, GB",
            nullptr,
            {{"matched", mr.matched}, {"scale", mr.scale ? json(to_string(*mr.scale)) : json(nullptr)},
             {"rank", rank(g)}, {"columns_breaking_relators", broken}},
            mr.matched, true);
      }
    }

    if (!options.module || *options.module == ModuleKind::nu) {
      CocycleSpace space(pres, build_module(rep, ModuleKind::nu));
      auto cocycles = bending_cocycles(rep, bundle.pants, BenderGeometry::sl);
      const std::size_t span = class_span_dim(space, cocycles);
      add("bending_span_nu", 11, "nu_4 bending cocycles span H1", 6, span, span == 6);

      auto betas = paired_differences(cocycles);
      json cusp_ok = json::array();
      bool all = true;
      for (const auto& b : betas) {
        json per = json::array();
        for (const Cusp& c : pres.cusps) {
          bool ok = restricts_to_coboundary(space, b, c);
          per.push_back(ok);
          all = all && ok;
        }
        cusp_ok.push_back(per);
      }
      const std::size_t bspan = class_span_dim(space, betas);
      add("cancelling_pairs_cuspidal", 12, "paired differences are cuspidal and span a 3-dimensional subspace",
          {{"cuspidal", true}, {"span", 3}}, {{"cusp_restrictions", cusp_ok}, {"span", bspan}},
          all && bspan == 3 && betas.size() == 3);
    }
    if (!options.module || *options.module == ModuleKind::standard) {
      CocycleSpace space(pres, build_module(rep, ModuleKind::standard));
      auto cocycles = bending_cocycles(rep, bundle.pants, BenderGeometry::so_ext);
      const std::size_t span = class_span_dim(space, cocycles);
      add("bending_span_r31", 11, "R^{3,1} bending cocycles span H1", 3, span, span == 3);
    }
  } catch (const Error& e) {
    report.aborted = true;
    report.diagnostic = e.what();
  }
  return report;
}

}  // namespace bendlab

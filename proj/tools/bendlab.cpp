// bendlab: twisted cohomology, branched bending systems and bending
// deformations from the command line. Every command prints one JSON document
// (also written to --output when given).
//
// Exit status: 0 success, 1 a check failed, 2 bad input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bendlab/fixture.hpp"

namespace {

using namespace bendlab;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

double float_tolerance() {
  const char* env = std::getenv("BENDLAB_FLOAT_TOL");
  if (!env || !*env) return kDefaultRankTolerance;
  char* end = nullptr;
  double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0)) throw InputError(std::string("BENDLAB_FLOAT_TOL is not a positive number: ") + env);
  return v;
}

void emit(const json& doc, const std::string& output) {
  const std::string text = doc.dump(2) + "\n";
  if (!output.empty()) {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw InputError("cannot write '" + output + "'");
    out << text;
  }
  std::cout << text;
}

struct RepInputs {
  std::string presentation;
  std::string rep;
};

Representation load_rep(const RepInputs& in) {
  Presentation p = presentation_from_json(read_json_file(in.presentation));
  return representation_from_json(read_json_file(in.rep), p);
}

int run_validate(const RepInputs& in, const std::string& output) {
  Representation rep = load_rep(in);
  ValidationReport v = validate_representation(rep);
  json gens = json::array(), rels = json::array();
  for (const auto& g : v.generators)
    gens.push_back({{"name", g.name}, {"preserves_form", g.preserves_form}, {"determinant", to_string(g.determinant)}});
  for (const auto& r : v.relators) rels.push_back({{"index", r.index}, {"word", r.word}, {"is_identity", r.is_identity}});
  json cusps = json::array();
  for (const Cusp& c : rep.presentation().cusps) {
    RationalMatrix mu = evaluate(rep, c.meridian), la = evaluate(rep, c.longitude);
    cusps.push_back({{"meridian_parabolic", is_parabolic(mu)},
                     {"longitude_parabolic", is_parabolic(la)},
                     {"commute", mu * la == la * mu}});
  }
  json doc{{"generators", gens}, {"relators", rels}, {"cusps", cusps}, {"passed", v.passed}};
  if (!v.passed) doc["diagnostic"] = v.diagnostic();
  emit(doc, output);
  return v.passed ? kOk : kCheckFailed;
}

int run_cohomology(const RepInputs& in, const std::string& coefficients, const std::string& parabolic,
                   const std::string& words_file, const std::string& output) {
  Representation rep = load_rep(in);
  ModuleKind kind = parse_module_kind(coefficients);
  ParabolicMode mode = parse_parabolic_mode(parabolic);
  std::vector<Word> words;
  if (!words_file.empty()) words = words_from_text(read_file(words_file), rep.presentation());
  ValidationReport v = validate_representation(rep);
  if (!v.passed) throw InputError("representation is invalid: " + v.diagnostic());

  CocycleSpace space(rep.presentation(), build_module(rep, kind));
  CohomologyReport r = h1_report(space, rep, mode, words);
  json doc = detail::report_json(r);
  doc["coefficients"] = std::string(to_string(kind));
  doc["module_dimension"] = space.module().dimension();
  doc["jacobian_rank"] = rank(space.jacobian());
  const bool identities = r.identities_hold(space.module().dimension());
  doc["identities_hold"] = identities;
  bool passed = identities;
  if (r.dimPH1) {
    const bool scannell = scannell_check(r, r.peripheral_h0_total());
    doc["boundary_restriction"] = {{"difference", r.dimH1 - *r.dimPH1},
                                   {"peripheral_h0_total", r.peripheral_h0_total()},
                                   {"holds", scannell}};
    // Informational outside per-subgroup mode, where the identity need not hold.
    if (mode == ParabolicMode::per_subgroup && !scannell) doc["warnings"].push_back("boundary restriction identity fails");
  }
  doc["passed"] = passed;
  emit(doc, output);
  return passed ? kOk : kCheckFailed;
}

int run_branched(const std::string& complex_file, const std::string& geometry_name, const std::string& output) {
  BendingComplex c = complex_from_json(read_json_file(complex_file));
  Geometry g = parse_geometry(geometry_name);
  const double tol = float_tolerance();
  BendingDimension d = bending_dimension(c, g, tol);
  BendingSystem sys = build_system(c, g, tol);
  json doc{{"geometry", geometry_name},
           {"walls", c.walls.size()},
           {"bindings", c.bindings.size()},
           {"rows", sys.rows()},
           {"nullity", d.nullity},
           {"naive_bound", d.naive_bound},
           {"equal_weights_solve", d.equal_weights_solve},
           {"exact", d.exact}};
  if (sys.exact()) {
    doc["system"] = to_json(sys.exact_matrix());
    doc["relations"] = reduced_relations(sys.exact_matrix(), c.walls);
  } else {
    doc["tolerance"] = d.tolerance;
    json rows = json::array();
    const FloatMatrix& m = sys.float_matrix();
    for (std::size_t i = 0; i < m.rows; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m(i, j));
      rows.push_back(row);
    }
    doc["system"] = rows;
  }
  if (!d.warnings.empty()) doc["warnings"] = d.warnings;
  const bool consistent = !d.exact || d.naive_bound <= static_cast<long>(d.nullity);
  doc["passed"] = consistent;
  emit(doc, output);
  return consistent ? kOk : kCheckFailed;
}

int run_bend(const RepInputs& in, const std::string& pants_file, const std::string& words_file,
             const std::string& geometry_name, const std::string& output) {
  Representation rep = load_rep(in);
  const Presentation& pres = rep.presentation();
  std::vector<BendingDatum> pants = pants_from_json(read_json_file(pants_file), pres);
  std::vector<Word> words;
  if (!words_file.empty()) words = words_from_text(read_file(words_file), pres);
  BenderGeometry geometry = parse_bender_geometry(geometry_name);
  ValidationReport v = validate_representation(rep);
  if (!v.passed) throw InputError("representation is invalid: " + v.diagnostic());

  const ModuleKind kind = geometry == BenderGeometry::sl ? ModuleKind::nu : ModuleKind::standard;
  CocycleSpace space(pres, build_module(rep, kind));
  json entries = json::array();
  std::vector<RationalVector> cocycles;
  bool passed = true;
  for (const BendingDatum& d : pants) {
    BendingGenerator gen = centralizer_generator(rep, d, geometry);
    HnnBending b = hnn_first_order(rep, d, gen);
    bool relators_ok = detail::relators_stay_trivial(b.first_order);
    RationalVector c = tangent_cocycle(b.first_order, space.module());
    bool is_cocycle = space.is_cocycle(c);
    passed = passed && relators_ok && is_cocycle;
    if (is_cocycle) cocycles.push_back(c);
    entries.push_back({{"name", d.name},
                       {"side", std::string(to_string(b.side))},
                       {"v", to_json(gen.v)},
                       {"relators_first_order_trivial", relators_ok},
                       {"cocycle", to_json(c)},
                       {"is_cocycle", is_cocycle}});
  }
  json doc{{"geometry", std::string(to_string(geometry))},
           {"coefficients", std::string(to_string(kind))},
           {"pants", entries},
           {"dimH1", space.z1_basis().size() - space.b1_basis().size()},
           {"class_span", class_span_dim(space, cocycles)}};
  if (pants.size() % 2 == 0 && cocycles.size() == pants.size()) {
    auto diffs = paired_differences(cocycles);
    json cusp = json::array();
    for (const auto& dv : diffs) {
      json per = json::array();
      for (const Cusp& cu : pres.cusps) per.push_back(restricts_to_coboundary(space, dv, cu));
      cusp.push_back(per);
    }
    doc["paired_differences"] = {{"class_span", class_span_dim(space, diffs)}, {"cusp_restrictions", cusp}};
  }
  if (!words.empty() && geometry == BenderGeometry::sl) {
    RationalMatrix f = trace_derivative_matrix(rep, pants, words);
    json labels = json::array();
    for (const Word& w : words) labels.push_back(format_word(w, pres.generators));
    doc["trace_derivative"] = {{"words", labels}, {"matrix", to_json(f)}, {"rank", rank(f)}};
  }
  doc["passed"] = passed;
  emit(doc, output);
  return passed ? kOk : kCheckFailed;
}

void write_fixture_files(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto put = [&](const char* name, const std::string& text) {
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    if (!out) throw InputError("cannot write into '" + dir + "'");
    out << text;
  };
  put("borromean_presentation.json", json::parse(fixture_data::kPresentation).dump(2) + "\n");
  put("borromean_rep.json", json::parse(fixture_data::kRepresentation).dump(2) + "\n");
  put("borromean_pants.json", json::parse(fixture_data::kPants).dump(2) + "\n");
  put("borromean_complex.json", json::parse(fixture_data::kComplex).dump(2) + "\n");
  put("borromean_words.txt", fixture_data::kTraceWords);
}

int run_borromean(const std::string& coefficients, const RepInputs& overrides, const std::string& write_dir,
                  const std::string& output) {
  if (!write_dir.empty()) write_fixture_files(write_dir);
  FixtureBundle bundle = borromean_fixture();
  if (!overrides.presentation.empty()) {
    Presentation p = presentation_from_json(read_json_file(overrides.presentation));
    if (p.generator_count() != bundle.presentation.generator_count())
      throw InputError("override presentation must keep the fixture's generators");
    bundle = with_presentation(bundle, std::move(p));
  }
  if (!overrides.rep.empty()) bundle.representation = representation_from_json(read_json_file(overrides.rep), bundle.presentation);
  FixtureOptions options;
  options.float_tolerance = float_tolerance();
  if (!coefficients.empty()) options.module = parse_module_kind(coefficients);
  FixtureReport report = run_fixture_suite(bundle, options);
  emit(report.to_json(), output);
  return report.passed() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted cohomology and bending deformations with exact arithmetic"};
  app.require_subcommand(1);
  std::string output;
  app.add_option("-o,--output", output, "Also write the JSON result to this file");

  RepInputs rep_in;
  std::string coefficients = "r31", parabolic = "per-subgroup", words_file, geometry, complex_file, pants_file,
              write_dir;

  auto* validate = app.add_subcommand("validate", "Check a representation against its presentation and form");
  validate->add_option("--presentation", rep_in.presentation)->required()->check(CLI::ExistingFile);
  validate->add_option("--rep", rep_in.rep)->required()->check(CLI::ExistingFile);

  auto* coh = app.add_subcommand("cohomology", "H1, cuspidal/parabolic PH1 and H0 dimensions");
  coh->add_option("--presentation", rep_in.presentation)->required()->check(CLI::ExistingFile);
  coh->add_option("--rep", rep_in.rep)->required()->check(CLI::ExistingFile);
  coh->add_option("--coefficients", coefficients)->check(CLI::IsMember({"r31", "nu", "adjoint"}));
  coh->add_option("--parabolic", parabolic)->check(CLI::IsMember({"per-element", "per-subgroup", "none"}));
  coh->add_option("--words", words_file, "Parabolic words for per-element mode, one per line")->check(CLI::ExistingFile);

  auto* branched = app.add_subcommand("branched-system", "Nullity of a branched bending system");
  branched->add_option("complex", complex_file)->required()->check(CLI::ExistingFile);
  branched->add_option("--geometry", geometry)->required()->check(CLI::IsMember({"so", "sl"}));

  auto* bend = app.add_subcommand("bend", "Bending generators, tangent cocycles and trace derivatives");
  bend->add_option("--presentation", rep_in.presentation)->required()->check(CLI::ExistingFile);
  bend->add_option("--rep", rep_in.rep)->required()->check(CLI::ExistingFile);
  bend->add_option("--pants", pants_file)->required()->check(CLI::ExistingFile);
  bend->add_option("--words", words_file)->check(CLI::ExistingFile);
  bend->add_option("--geometry", geometry)->required()->check(CLI::IsMember({"sl", "so"}));

  std::string fixture_coefficients;
  RepInputs overrides;
  auto* borromean = app.add_subcommand("borromean", "Run the bundled Borromean rings verification suite");
  borromean->add_option("--coefficients", fixture_coefficients)->check(CLI::IsMember({"r31", "nu", "adjoint"}));
  borromean->add_option("--presentation", overrides.presentation, "Replace the fixture presentation")
      ->check(CLI::ExistingFile);
  borromean->add_option("--rep", overrides.rep, "Replace the fixture representation")->check(CLI::ExistingFile);
  borromean->add_option("--write-fixtures", write_dir, "Write the fixture files into this directory");

  for (auto* sub : {validate, coh, branched, bend, borromean})
    sub->add_option("-o,--output", output, "Also write the JSON result to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*validate) return run_validate(rep_in, output);
    if (*coh) return run_cohomology(rep_in, coefficients, parabolic, words_file, output);
    if (*branched) return run_branched(complex_file, geometry, output);
    if (*bend) return run_bend(rep_in, pants_file, words_file, geometry, output);
    if (*borromean) return run_borromean(fixture_coefficients, overrides, write_dir, output);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

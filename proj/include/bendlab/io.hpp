#pragma once

// JSON file formats for presentations, representations, bending complexes
// and pants tables, plus a plain-text word list.
//
// Rationals are written as strings "p/q" (or "p"); readers also accept
// JSON integers.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bendlab/bender.hpp"
#include "bendlab/branchbend.hpp"

namespace bendlab {

using json = nlohmann::json;

/// Malformed or inconsistent input (as opposed to a failed check).
class InputError : public Error {
 public:
  using Error::Error;
};

namespace detail {

template <typename F>
auto wrap_input(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const json::exception& e) {
    throw InputError(what + ": " + e.what());
  } catch (const Error& e) {
    throw InputError(what + ": " + e.what());
  }
}

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace detail

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("expected a rational (string \"p/q\" or integer), got " + j.dump());
}

inline json to_json(const Rational& r) { return to_string(r); }

inline json to_json(std::span<const Rational> v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

inline json to_json(const RationalMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

inline RationalMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a nonempty array of rows");
  const std::size_t rows = j.size(), cols = j.front().size();
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw InputError("matrix rows have unequal lengths");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = rational_from_json(j[i][k]);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Presentation: {"generators": [...], "relators": [...], "cusps": [{"meridian", "longitude"}]}

inline Presentation presentation_from_json(const json& j) {
  return detail::wrap_input("presentation", [&] {
    Presentation p;
    p.generators = detail::require(j, "generators").get<std::vector<std::string>>();
    for (const auto& r : detail::require(j, "relators")) p.relators.push_back(parse_relator(r.get<std::string>(), p.generators));
    if (j.contains("cusps"))
      for (const auto& c : j.at("cusps"))
        p.cusps.push_back({parse_word(detail::require(c, "meridian").get<std::string>(), p.generators),
                           parse_word(detail::require(c, "longitude").get<std::string>(), p.generators)});
    p.validate();
    return p;
  });
}

inline json to_json(const Presentation& p) {
  json out;
  out["generators"] = p.generators;
  out["relators"] = json::array();
  for (const Word& r : p.relators) out["relators"].push_back(format_word(r, p.generators));
  out["cusps"] = json::array();
  for (const Cusp& c : p.cusps)
    out["cusps"].push_back({{"meridian", format_word(c.meridian, p.generators)},
                            {"longitude", format_word(c.longitude, p.generators)}});
  return out;
}

// ---------------------------------------------------------------------------
// Representation: {"form": [[...]] or {"diagonal": [...]}, "images": {"x": [[...]], ...}}

inline QuadraticForm form_from_json(const json& j) {
  if (j.is_object() && j.contains("diagonal")) {
    const auto& d = j.at("diagonal");
    RationalMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = rational_from_json(d[i]);
    return {m};
  }
  return {matrix_from_json(j)};
}

inline Representation representation_from_json(const json& j, const Presentation& p) {
  return detail::wrap_input("representation", [&] {
    QuadraticForm form = form_from_json(detail::require(j, "form"));
    form.validate();
    const json& imgs = detail::require(j, "images");
    if (!imgs.is_object()) throw InputError("'images' must map generator names to matrices");
    std::vector<RationalMatrix> images;
    for (const std::string& g : p.generators) {
      if (!imgs.contains(g)) throw InputError("no image for generator '" + g + "'");
      images.push_back(matrix_from_json(imgs.at(g)));
    }
    for (const auto& [name, _] : imgs.items()) p.index_of(name);
    return Representation(p, std::move(images), std::move(form));
  });
}

inline json to_json(const Representation& rep) {
  json out;
  out["form"] = to_json(rep.form().matrix);
  json imgs = json::object();
  const auto& gens = rep.presentation().generators;
  for (std::uint32_t g = 0; g < gens.size(); ++g) imgs[gens[g]] = to_json(rep.image(g));
  out["images"] = imgs;
  return out;
}

// ---------------------------------------------------------------------------
// Bending complex

inline Angle angle_from_json(const json& j) {
  if (j.is_string()) return Angle::parse(j.get<std::string>());
  if (j.is_object() && j.contains("cos") && j.contains("sin")) {
    const json& c = j.at("cos");
    const json& s = j.at("sin");
    if (c.is_number_float() || s.is_number_float()) return Angle::approximate(c.get<double>(), s.get<double>());
    return Angle::exact(rational_from_json(c), rational_from_json(s));
  }
  if (j.is_object() && j.contains("radians")) return Angle::from_radians(j.at("radians").get<double>());
  throw InputError("cannot read angle " + j.dump());
}

inline BendingComplex complex_from_json(const json& j) {
  return detail::wrap_input("complex", [&] {
    BendingComplex c;
    c.dimension = j.value("dimension", std::size_t{3});
    c.walls = detail::require(j, "walls").get<std::vector<std::string>>();
    for (std::size_t a = 0; a < c.walls.size(); ++a)
      for (std::size_t b = a + 1; b < c.walls.size(); ++b)
        if (c.walls[a] == c.walls[b]) throw InputError("duplicate wall '" + c.walls[a] + "'");
    for (const auto& bj : detail::require(j, "bindings")) {
      Binding b;
      b.name = bj.value("name", std::string("binding") + std::to_string(c.bindings.size()));
      for (const auto& ij : detail::require(bj, "incidences")) {
        Incidence in;
        in.wall = c.wall_index(detail::require(ij, "wall").get<std::string>());
        in.angle = angle_from_json(detail::require(ij, "angle"));
        in.sign = ij.value("sign", 1);
        b.incidences.push_back(std::move(in));
      }
      c.bindings.push_back(std::move(b));
    }
    c.validate();
    return c;
  });
}

// ---------------------------------------------------------------------------
// Pants table: [{"name", "subgroup": [...], "stable", "side"?}]

inline std::vector<BendingDatum> pants_from_json(const json& j, const Presentation& p) {
  return detail::wrap_input("pants", [&] {
    if (!j.is_array()) throw InputError("pants file must be an array");
    std::vector<BendingDatum> out;
    for (const auto& e : j) {
      BendingDatum d;
      d.name = e.value("name", std::string("pants") + std::to_string(out.size()));
      for (const auto& w : detail::require(e, "subgroup")) d.surface_subgroup.push_back(parse_word(w.get<std::string>(), p.generators));
      d.stable_letter = parse_word(detail::require(e, "stable").get<std::string>(), p.generators);
      d.side = parse_hnn_side(e.value("side", std::string("auto")));
      stable_generator(d);
      out.push_back(std::move(d));
    }
    return out;
  });
}

inline json to_json(const BendingDatum& d, const Presentation& p) {
  json sub = json::array();
  for (const Word& w : d.surface_subgroup) sub.push_back(format_word(w, p.generators));
  return {{"name", d.name},
          {"subgroup", sub},
          {"stable", format_word(d.stable_letter, p.generators)},
          {"side", std::string(to_string(d.side))}};
}

// ---------------------------------------------------------------------------
// Word list: one word per line; blank lines and '#' comments ignored.

inline std::vector<Word> words_from_text(const std::string& text, const Presentation& p) {
  return detail::wrap_input("words", [&] {
    std::vector<Word> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      out.push_back(parse_word(line, p.generators));
    }
    return out;
  });
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json read_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace bendlab

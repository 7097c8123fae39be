#pragma once

// Matrix representations of presented groups.

#include <string>
#include <utility>
#include <vector>

#include "bendlab/freewords.hpp"
#include "bendlab/ratlin.hpp"

namespace bendlab {

struct QuadraticForm {
  RationalMatrix matrix;

  std::size_t size() const { return matrix.rows(); }

  /// Throws unless the form is square, symmetric and invertible.
  void validate() const {
    if (!matrix.is_square() || matrix.rows() == 0) throw Error("quadratic form must be a nonempty square matrix");
    if (!(matrix.transpose() == matrix)) throw Error("quadratic form is not symmetric");
    if (sgn(determinant(matrix)) == 0) throw Error("quadratic form is degenerate");
  }

  static QuadraticForm diagonal(const std::vector<long>& entries) {
    RationalMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return {m};
  }

  /// Q extended by a trailing +1.
  QuadraticForm extended() const {
    RationalMatrix m(size() + 1, size() + 1);
    m.set_block(0, 0, matrix);
    m(size(), size()) = 1;
    return {m};
  }
};

class Representation {
 public:
  Representation() = default;
  Representation(Presentation presentation, std::vector<RationalMatrix> images, QuadraticForm form)
      : presentation_(std::move(presentation)), images_(std::move(images)), form_(std::move(form)) {
    presentation_.validate();
    if (images_.size() != presentation_.generator_count())
      throw Error("representation needs one image per generator");
    const std::size_t n = form_.size();
    inverses_.reserve(images_.size());
    for (std::size_t g = 0; g < images_.size(); ++g) {
      if (images_[g].rows() != n || images_[g].cols() != n)
        throw Error("image of '" + presentation_.generators[g] + "' has the wrong size");
      auto inv = inverse(images_[g]);
      if (!inv) throw Error("image of '" + presentation_.generators[g] + "' is singular");
      inverses_.push_back(std::move(*inv));
    }
  }

  const Presentation& presentation() const { return presentation_; }
  const QuadraticForm& form() const { return form_; }
  const std::vector<RationalMatrix>& images() const { return images_; }
  const RationalMatrix& image(std::uint32_t g) const { return images_.at(g); }
  const RationalMatrix& image_inverse(std::uint32_t g) const { return inverses_.at(g); }
  std::size_t matrix_size() const { return form_.size(); }
  /// n for a representation into O(n,1) or SL(n+1).
  std::size_t ambient_dimension() const { return matrix_size() - 1; }

  const RationalMatrix& letter_matrix(const Letter& l) const {
    if (l.generator >= images_.size()) throw Error("word uses an unknown generator");
    return l.exponent > 0 ? images_[l.generator] : inverses_[l.generator];
  }

  /// Same presentation and form, every image replaced by h M h^-1.
  Representation conjugated(const RationalMatrix& h) const {
    auto h_inv = inverse(h);
    if (!h_inv) throw Error("conjugating matrix is singular");
    std::vector<RationalMatrix> imgs;
    for (const auto& m : images_) imgs.push_back(h * m * *h_inv);
    return Representation(presentation_, std::move(imgs), form_);
  }

  /// Block embedding g -> diag(rho(g), 1) with form Q + 1.
  Representation embedded() const {
    std::vector<RationalMatrix> imgs;
    for (const auto& m : images_) {
      RationalMatrix e(m.rows() + 1, m.cols() + 1);
      e.set_block(0, 0, m);
      e(m.rows(), m.cols()) = 1;
      imgs.push_back(std::move(e));
    }
    return Representation(presentation_, std::move(imgs), form_.extended());
  }

 private:
  Presentation presentation_;
  std::vector<RationalMatrix> images_;
  std::vector<RationalMatrix> inverses_;
  QuadraticForm form_;
};

inline RationalMatrix evaluate(const Representation& rep, const Word& w) {
  RationalMatrix m = RationalMatrix::identity(rep.matrix_size());
  for (const Letter& l : w.letters()) m = m * rep.letter_matrix(l);
  return m;
}

inline RationalMatrix evaluate(const Representation& rep, const GroupRingElem& e) {
  RationalMatrix m(rep.matrix_size(), rep.matrix_size());
  for (const auto& [w, c] : e.terms()) m += evaluate(rep, w) * Rational(c);
  return m;
}

struct GeneratorCheck {
  std::string name;
  bool preserves_form = false;
  Rational determinant;
};

struct RelatorCheck {
  std::size_t index = 0;
  std::string word;
  bool is_identity = false;
};

struct ValidationReport {
  std::vector<GeneratorCheck> generators;
  std::vector<RelatorCheck> relators;
  bool passed = false;

  /// First failing item, human readable; empty when passed.
  std::string diagnostic() const {
    for (const auto& g : generators) {
      if (!g.preserves_form) return "generator '" + g.name + "' does not preserve the quadratic form";
      if (abs(g.determinant) != 1) return "generator '" + g.name + "' has determinant " + to_string(g.determinant);
    }
    for (const auto& r : relators)
      if (!r.is_identity) return "relator " + std::to_string(r.index) + " (" + r.word + ") does not map to the identity";
    return {};
  }
};

inline ValidationReport validate_representation(const Representation& rep) {
  ValidationReport report;
  const auto& pres = rep.presentation();
  const RationalMatrix& q = rep.form().matrix;
  bool ok = true;
  for (std::size_t g = 0; g < pres.generator_count(); ++g) {
    const RationalMatrix& m = rep.image(static_cast<std::uint32_t>(g));
    GeneratorCheck check{pres.generators[g], m.transpose() * q * m == q, determinant(m)};
    ok = ok && check.preserves_form && abs(check.determinant) == 1;
    report.generators.push_back(std::move(check));
  }
  const RationalMatrix id = RationalMatrix::identity(rep.matrix_size());
  for (std::size_t r = 0; r < pres.relators.size(); ++r) {
    RelatorCheck check{r, format_word(pres.relators[r], pres.generators), evaluate(rep, pres.relators[r]) == id};
    ok = ok && check.is_identity;
    report.relators.push_back(std::move(check));
  }
  report.passed = ok;
  return report;
}

/// Unipotent and not the identity: (M - I)^k = 0 for k = size.
inline bool is_parabolic(const RationalMatrix& m) {
  if (!m.is_square()) throw Error("is_parabolic: matrix is not square");
  RationalMatrix n = m - RationalMatrix::identity(m.rows());
  if (n.is_zero()) return false;
  return power(n, static_cast<unsigned>(m.rows())).is_zero();
}

/// g -> M_g + t E_g modulo t^2.
struct FirstOrderRep {
  Representation base;
  std::vector<RationalMatrix> derivative;
};

struct DualMatrix {
  RationalMatrix value;
  RationalMatrix derivative;
};

inline DualMatrix first_order_evaluate(const FirstOrderRep& fo, const Word& w) {
  const std::size_t n = fo.base.matrix_size();
  DualMatrix acc{RationalMatrix::identity(n), RationalMatrix(n, n)};
  for (const Letter& l : w.letters()) {
    if (l.generator >= fo.derivative.size()) throw Error("word uses an unknown generator");
    const RationalMatrix& m = fo.base.letter_matrix(l);
    const RationalMatrix& e = fo.derivative[l.generator];
    RationalMatrix de = l.exponent > 0 ? e : -(m * e * m);  // m is already the inverse here
    RationalMatrix next_e = acc.value * de + acc.derivative * m;
    acc.value = acc.value * m;
    acc.derivative = std::move(next_e);
  }
  return acc;
}

}  // namespace bendlab

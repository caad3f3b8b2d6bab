#pragma once

// Hyperplane and plane sections, Gauss-map data and line configurations on
// extremal hypersurfaces.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frob/frobform.hpp"

namespace frob {

struct Section {
  MultiPoly polynomial;
  std::optional<FrobeniusForm> form;
};

/// f restricted to L = 0, in n - 1 variables. For a Frobenius form the section is
/// re-extracted with the same e and must succeed.
Section hyperplane_section(const FrobeniusForm& form, const std::vector<Elem>& l);
/// The same for an arbitrary form; the section is tested with every e.
Section hyperplane_section(const MultiPoly& f, const std::vector<Elem>& l);

/// Linear forms over the field up to scaling: last nonzero coefficient 1.
std::vector<std::vector<Elem>> projective_linear_forms(const Field& f, std::size_t n);

struct SectionSweep {
  std::size_t sections = 0;
  std::size_t frobenius = 0;
  bool all_frobenius() const { return sections == frobenius; }
};

/// Tests every hyperplane section defined over the field of f. Only a finite sample
/// of the sections over the algebraic closure, so a positive answer is heuristic.
SectionSweep sweep_sections(const MultiPoly& f, std::uint64_t e);

/// The form pulled back along x = G y for an n x m matrix G of full column rank.
FrobeniusForm restrict_form(const FrobeniusForm& form, const Matrix& g);

struct GaussData {
  std::optional<std::uint64_t> insep_degree;
  Matrix dual_matrix;
  bool dual_is_frobenius = true;
  std::string note;
};

GaussData gauss_data(const FrobeniusForm& form);

enum class StarVerdict { PerfectStar, QFoldLinePlusLine, PlaneContained };
std::string to_string(StarVerdict v);

struct LinearFactor {
  std::vector<Elem> coeffs;  // over StarReport::field
  std::size_t multiplicity = 1;
};

struct StarReport {
  StarVerdict verdict = StarVerdict::PlaneContained;
  Elem a;  // coefficient of x^q y
  Elem b;  // coefficient of x y^q
  Field field;
  std::vector<LinearFactor> factors;
};

/// A form in 3 variables whose curve contains the lines x0 = 0 and x1 = 0.
StarReport star_classify(const FrobeniusForm& form, std::uint32_t ext_cap = 8);

/// Binary form projectively equivalent to x^d - y^d with d = degree, d >= 3 and p not dividing d.
bool verify_perfect_star(const MultiPoly& binary, std::uint32_t ext_cap = 8);

}  // namespace frob

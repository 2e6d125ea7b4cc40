#pragma once
// Derived cotensor product and Cotor over a simply connected cocommutative
// coalgebra, computed through Postnikov fibrant replacement, with an
// independent reduced-cobar oracle and the Dold-Kan comparison.

#include <string>
#include <vector>

#include "homalg/postnikov.hpp"

namespace homalg {

struct CotorTable {
  DGCoalgebra coalgebra;
  DGComodule x, y;
  int max_degree = 0;
  std::string method;       // "postnikov" | "cobar"
  std::vector<Dims> dims;   // homology dimensions in degrees 0..max_degree
};
bool same_dims(const CotorTable& a, const CotorTable& b);

struct DerivedCotensor {
  ChainComplex complex;  // cotensor of the two fibrant replacements
  int valid_to = 0;      // homology trustworthy in degrees 0..valid_to
};

// Fibrant-replace both inputs to n_max = max_degree + 2 and cotensor the
// replacements. Throws NotSimplyConnected / NotCocommutative.
DerivedCotensor derived_cotensor(const DGComodule& X, const DGComodule& Y, int max_degree);

// method "postnikov" tabulates homology of derived_cotensor; method "cobar"
// delegates to the oracle. Throws UnknownMethod for anything else.
CotorTable cotor_table(const DGComodule& X, const DGComodule& Y, int max_degree,
                       const std::string& method);

// Total complex of the reduced two-sided cobar construction
//   ⊕_{s>=0} X ⊗ (s⁻¹C̄)^{⊗s} ⊗ Y,   C̄ = the coaugmentation coideal,
// assembled over total degrees 0..max_degree+1 (finite in each degree because
// C̄ sits in degrees >= 2). The differential combines the internal
// differentials with the reduced coaction, comultiplication, and (twisted)
// left coaction terms, all with Koszul signs.
ChainComplex cobar_complex(const DGComodule& X, const DGComodule& Y, int max_degree);

// homology table of cobar_complex; an independent oracle for Cotor
CotorTable cobar_oracle(const DGComodule& X, const DGComodule& Y, int max_degree);

// Cotor computed in the dg world (towers + cotensor) and in the simplicial
// world (gamma transport, levelwise towers, homotopy of the levelwise
// cotensor), with the comparison map checked to be a quasi-isomorphism.
struct DoldKanCotorReport {
  CotorTable dg_table, simplicial_table;
  bool tables_equal = false;
  bool comparison_quasi_iso = false;
  bool ok() const { return tables_equal && comparison_quasi_iso; }
};
DoldKanCotorReport dold_kan_cotor_compare(const DGComodule& X, const DGComodule& Y,
                                          int max_degree);

}  // namespace homalg

#pragma once
// Differential graded and simplicial coalgebras: axioms checked by exact
// matrix identities, built-in test fixtures, and the transport along Γ whose
// comultiplication is the mate of the Eilenberg-Zilber map.

#include <string>

#include "homalg/simplicial.hpp"

namespace homalg {

struct DGCoalgebra {
  ChainComplex carrier;
  ChainMap delta;    // carrier -> tensor(carrier, carrier)
  ChainMap epsilon;  // carrier -> unit complex
};

struct CoalgebraReport {
  bool coassociative = false;
  bool counital = false;
  bool cocommutative = false;
  bool simply_connected = false;
  bool ok() const { return coassociative && counital; }
};

CoalgebraReport validate_coalgebra(const DGCoalgebra& C);

// name ∈ {unit, C2, C2x4, product-demo}; throws UnknownFixture
DGCoalgebra coalgebra_fixture(const std::string& name);

struct SimplicialCoalgebra {
  SimplicialModule carrier;
  std::map<int, Mat> delta;    // level n -> level n ⊗ level n (Kronecker basis)
  std::map<int, Mat> epsilon;  // level n -> 𝕜
};

CoalgebraReport validate_simplicial_coalgebra(const SimplicialCoalgebra& D);

SimplicialCoalgebra gamma_coalgebra(const DGCoalgebra& C, int level_bound = 8);

// Γ applied to a chain map, as the level-n block matrix
Mat gamma_map_level(const SimplicialModule& A, const SimplicialModule& B, const ChainMap& f,
                    int n);

// swap of a Kronecker level space A_n⊗B_n -> B_n⊗A_n (no signs levelwise)
Mat level_swap(const FieldSpec& F, const Dims& a, const Dims& b);

}  // namespace homalg

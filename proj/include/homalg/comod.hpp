#pragma once
// Right comodules over a fixed coalgebra, in the dg and simplicial worlds:
// validation, cofree comodules, the cotensor equalizer with its unit and
// cofree isomorphisms, and the Dold-Kan functors lifted to comodules.

#include "homalg/coalg.hpp"

namespace homalg {

// --- dg comodules ------------------------------------------------------------
struct DGComodule {
  DGCoalgebra coalgebra;
  ChainComplex carrier;
  ChainMap rho;  // carrier -> tensor(carrier, coalgebra.carrier)
};

struct ComoduleReport {
  bool coassociative = false;
  bool counital = false;
  bool chain_map = false;
  bool ok() const { return coassociative && counital && chain_map; }
};
ComoduleReport validate_comodule(const DGComodule& X);

struct DGComoduleMap {
  DGComodule src, dst;
  ChainMap map;
};
// validates the coaction square (f⊗id)∘ρ_src = ρ_dst∘f; throws NotComoduleMap
DGComoduleMap make_comodule_map(DGComodule src, DGComodule dst, ChainMap f);

// M with the coaction m ↦ m⊗1 through the canonical grouplike of the fixture
DGComodule trivial_comodule(const DGCoalgebra& C, const ChainComplex& M);
// M⊗C with coaction id_M⊗Δ
DGComodule cofree_comodule(const DGCoalgebra& C, const ChainComplex& M);
// the counit M⊗C -> M of the cofree adjunction, (id⊗ε) through the unitor
ChainMap cofree_counit(const DGCoalgebra& C, const ChainComplex& M);
// cofree extension of g: W.carrier -> M to a comodule map W -> M⊗C
DGComoduleMap cofree_extend(const DGComodule& W, const ChainMap& g);
DGComodule coalgebra_as_comodule(const DGCoalgebra& C);
DGComodule comodule_direct_sum(const DGComodule& X, const DGComodule& Y);
DGComodule zero_comodule(const DGCoalgebra& C);

// degreewise kernel of a comodule map, with the corestricted structure
struct ComoduleKernel {
  DGComodule comodule;
  ChainMap inclusion;
};
ComoduleKernel comodule_kernel(const DGComoduleMap& g);

// --- the cotensor product ------------------------------------------------
// Degreewise kernel of ρ_X⊗id_Y − id_X⊗(twist∘ρ_Y) inside X⊗Y; requires a
// cocommutative coalgebra (NotCocommutative) over the same C
// (CoalgebraMismatch). The coaction is inherited from the right factor.
struct Cotensor {
  DGComodule comodule;
  ChainMap inclusion;  // carrier -> tensor(X.carrier, Y.carrier)
};
Cotensor cotensor(const DGComodule& X, const DGComodule& Y);
// the induced map X□g : X□Y -> X□Z of a comodule map g: Y -> Z
DGComoduleMap cotensor_map(const DGComodule& X, const DGComoduleMap& g, const Cotensor& XY,
                           const Cotensor& XZ);
// X □_C C ≅ X with explicit mutually inverse comodule maps
struct CotensorUnit {
  Cotensor ct;
  DGComoduleMap to_x, from_x;
};
CotensorUnit cotensor_unit(const DGComodule& X);
// (M⊗C) □_C Y ≅ M⊗Y with explicit mutually inverse chain maps
struct CofreeCotensor {
  Cotensor ct;
  ChainMap to_tensor, from_tensor;  // between the cotensor carrier and M⊗Y
};
CofreeCotensor cofree_cotensor(const ChainComplex& M, const DGComodule& Y);

// --- simplicial comodules --------------------------------------------------
struct SimplicialComodule {
  SimplicialCoalgebra coalgebra;
  SimplicialModule carrier;
  std::map<int, Mat> rho;  // level n: X_n -> X_n ⊗ D_n (Kronecker)
};
ComoduleReport validate_simplicial_comodule(const SimplicialComodule& X);

struct SimplicialComoduleMap {
  SimplicialComodule src, dst;
  std::map<int, Mat> levels;
};
bool is_simplicial_comodule_map(const SimplicialComoduleMap& f);

SimplicialComodule simplicial_coalgebra_as_comodule(const SimplicialCoalgebra& D);
// M ⊗_level D with the coaction id⊗Δ transported through the level isos
struct SimplicialCofree {
  SimplicialComodule comodule;
  LevelTensor T;
  std::vector<Mat> iso, iso_inv;  // carrier level n <-> M_n ⊗ D_n
};
SimplicialCofree simplicial_cofree(const SimplicialCoalgebra& D, const SimplicialModule& M);

// Γ lifted to comodules: the coaction is the comonoidal mate of ρ
SimplicialComodule gamma_comodule(const DGComodule& X, int level_bound = 8);

// N lifted to comodules: the equalizer of the two coaction-induced maps
// N(X)⊗C ⇉ N(X ⊗_level ΓC)⊗C, as a sub-comodule of the cofree on N(X)
struct NComodule {
  DGComodule comodule;
  ChainMap inclusion;  // carrier -> tensor(N(X), C)
  ChainMap nrho;       // N(ρ): N(X) -> N(X ⊗_level ΓC)
};
// With truncate_at_bound the equalizer is forced to zero above the level
// bound: for bound-saturated inputs the ambient comparison maps are only chain
// maps inside the trustworthy window, and the higher degrees carry no meaning.
NComodule n_comodule(const SimplicialComodule& X, const DGCoalgebra& C,
                     bool truncate_at_bound = false);

// the unit X -> N^C(Γ(X)) of the lifted adjunction (an isomorphism)
DGComoduleMap dk_unit(const DGComodule& X, const NComodule& N);
// the counit Γ(N^C(X)) -> X
SimplicialComoduleMap counit_map(const SimplicialComodule& X, const DGCoalgebra& C);

// levelwise cotensor of simplicial comodules, renormalized to Dold-Kan form
struct SimplicialCotensor {
  SimplicialComodule comodule;
  std::vector<Mat> inclusion;  // carrier level n -> X_n ⊗ Y_n (Kronecker)
};
SimplicialCotensor simplicial_cotensor(const SimplicialComodule& X, const SimplicialComodule& Y);

// the comparison N^C(X) □_C N^C(Y) -> N^C(X □_{ΓC} Y) induced on equalizers
// by the Eilenberg-Zilber lax monoidal structure
DGComoduleMap comonoidal_map(const SimplicialComodule& X, const SimplicialComodule& Y,
                             const DGCoalgebra& C);

}  // namespace homalg

#pragma once
// Postnikov towers of comodules over a simply connected coalgebra: stagewise
// pullbacks along generator maps, stabilized limits, and fibrant replacement,
// in both the dg world and the levelwise simplicial world.

#include <string>
#include <vector>

#include "homalg/comod.hpp"

namespace homalg {

// --- dg towers ---------------------------------------------------------------
// stages[0] = 0, stages[1] = cofree on the underlying complex of X, and each
// stages[n+1] is the pullback of
//     stages[n] --attach[n]--> S^n(vdim[n])⊗C <--d2s⊗id-- D^n(vdim[n])⊗C,
// where vdim[n] = coker(H_n(j[n])). structure[n] and disk_proj[n] are the two
// pullback projections of stages[n+1]; j[n] : X -> stages[n] compares with X.
struct PostnikovTower {
  DGCoalgebra coalgebra;
  std::vector<DGComodule> stages;        // X(0) .. X(n_max)
  std::vector<DGComoduleMap> structure;  // structure[n] : X(n+1) -> X(n)
  std::vector<DGComoduleMap> disk_proj;  // disk_proj[n] : X(n+1) -> D^n(V_n)⊗C
  std::vector<Dims> vdim;                // V_n for 1 <= n < n_max; vdim[0] unused
  std::vector<DGComoduleMap> attach;     // attach[n] : X(n) -> S^n(V_n)⊗C
  std::vector<DGComoduleMap> j;          // j[n] : X -> X(n)
  int n_max() const { return static_cast<int>(stages.size()) - 1; }
};

// throws NotSimplyConnected / NegativeSupport; requires n_max >= 1
PostnikovTower build_tower(const DGComodule& X, int n_max);

// The stabilized limit: the transition into stage n only changes degrees
// >= n-1, so degree i is frozen from stage i+2 on (witnessed by identity
// structure maps). Degree i of the limit is read off stage i+2; degrees
// 0..n_max-2 are trustworthy. Degree n_max-1 is carried as an unresolved
// buffer (its incoming boundaries are already final), so homology is exact in
// the whole trustworthy window; degrees above are omitted. Throws
// NotStabilized (with the offending degree) when a witness fails.
DGComodule limit_of_tower(const PostnikovTower& t);

struct FibrantReplacement {
  PostnikovTower tower;
  DGComodule replacement;  // the full top stage; agrees with limit_of_tower
                           // in every trustworthy degree
  DGComoduleMap j;         // X -> replacement: levelwise injective, an
                           // H_i-isomorphism for i <= n_max - 2
};
FibrantReplacement fibrant_replace(const DGComodule& X, int n_max);

struct TowerReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
// Checks, per stage: comodule axioms; H_i(j[n]) iso for i <= n-1; j[n] mono;
// j[n] = structure[n] ∘ j[n+1]; structure maps surjective in positive degrees;
// ker(structure[n]) ≅ S^{n-1}(V_n)⊗C by an explicit isomorphism; stabilization
// witnesses (identity structure maps in frozen degrees).
TowerReport verify_tower(const PostnikovTower& t, const DGComodule& X);

// The retraction stage1 -> X exhibiting a cofree comodule X = M⊗C as a retract
// of the first stage of its own tower (cofree applied to the counit M⊗C -> M);
// composed with j[1] it is the identity of X.
DGComoduleMap cofree_stage1_retraction(const DGCoalgebra& C, const ChainComplex& M);

// --- simplicial towers -------------------------------------------------------
// Built directly from levelwise pullbacks: stage n+1 is the levelwise kernel of
//     stages[n] ⊕ PK(V_n,n)⊗ΓC  -->  K(V_n,n)⊗ΓC   (attach minus projection),
// renormalized to Dold-Kan form through its levelwise presentation.
struct SimplicialTower {
  SimplicialCoalgebra coalgebra;
  std::vector<SimplicialComodule> stages;
  std::vector<SimplicialComoduleMap> structure;  // X(n+1) -> X(n)
  std::vector<SimplicialComoduleMap> disk_proj;  // X(n+1) -> PK(V_n,n)⊗ΓC
  std::vector<Dims> vdim;
  std::vector<SimplicialComoduleMap> attach;     // X(n) -> K(V_n,n)⊗ΓC
  std::vector<SimplicialComoduleMap> j;
  int n_max() const { return static_cast<int>(stages.size()) - 1; }
};

// requires 1 <= n_max <= level bound of X; throws NotSimplyConnected
SimplicialTower build_simplicial_tower(const SimplicialComodule& X, int n_max);

struct SimplicialFibrantReplacement {
  SimplicialTower tower;
  SimplicialComodule replacement;  // the top stage
  SimplicialComoduleMap j;
};
SimplicialFibrantReplacement simplicial_fibrant_replace(const SimplicialComodule& X,
                                                        int n_max);

// Simplicial analogue of verify_tower: π_i(j[n]) iso for i <= n-1, levelwise
// injectivity and factorization, level surjectivity of the structure maps in
// positive levels, the SES kernel compared with K(V_n,n-1)⊗ΓC (level
// dimensions, normalized dimensions, and homotopy groups), and stabilization
// of frozen levels (witnessed by invertible structure-map levels; the
// renormalization to Dold-Kan form makes them isos rather than identities).
TowerReport verify_simplicial_tower(const SimplicialTower& t, const SimplicialComodule& X);

}  // namespace homalg

#pragma once
// Factorizations of chain maps through towers of generator pullbacks:
// mono-followed-by-acyclic-tower, acyclic-cofibration-followed-by-tower,
// and an exact solver for lifting problems against generator-shaped maps.

#include "homalg/chain.hpp"

namespace homalg {

enum class StageKind {
  InitialProduct,  // X⊕Y → Y, the pullback of X → 0
  SphereAttach,    // pullback along disk_to_sphere(V, degree) of a recorded attach map
  DiskCollapse,    // dropping an acyclic disk(V, degree) summand
};

struct TowerStage {
  StageKind kind;
  int degree = 0;
  Dims vdim;
  ChainMap attach;  // SphereAttach only: proj.dst -> sphere(vdim, degree)
  ChainMap proj;    // one step of the tower; composing all projs gives `second`
};

struct Factorization {
  ChainComplex middle;
  ChainMap first;   // X -> middle
  ChainMap second;  // middle -> Y; second ∘ first = the factored map
  std::vector<TowerStage> stages;  // stages[0].proj starts at middle
};

// Factor f : X -> Y as a monomorphism X ↪ Z⊕Y followed by the projection,
// where Z is a direct sum of disks built from the splitting of X (each sphere
// summand S^n(V) is swallowed by a disk D^{n+1}(V)).
Factorization factor_cofib_qtower(const ChainMap& f);

// One tower step: given j : X -> Y levelwise injective and injective on
// homology, attach disks along V = coker(H_n(j)) so that H_n becomes an
// isomorphism while every other homology group of Y is untouched.
struct FnStep {
  ChainComplex fy;  // differs from Y only in degree n-1
  ChainMap fj;      // X -> fy, still mono and mono on homology
  ChainMap fp;      // fy -> Y, the pullback projection
  ChainMap attach;  // Y -> sphere(vdim, n)
  Dims vdim;
};
FnStep fn_step(const ChainMap& j, int n);  // throws PreconditionViolated

// Factor f : X -> Y as an acyclic cofibration followed by a tower of
// generator pullbacks, sweeping fn_step upward through the support window.
Factorization factor_acyclic_cofib_postnikov(const ChainMap& f);

// Exact lift for the commuting square p∘l = bottom, l∘i = top: one linear
// system over all degrees (chain-map condition included). nullopt = no lift.
std::optional<ChainMap> solve_lift(const ChainMap& i, const ChainMap& p, const ChainMap& top,
                                   const ChainMap& bottom);

}  // namespace homalg

#pragma once
// Simplicial modules in Dold-Kan normal form. Levels are expanded on demand
// over monotone surjection tags; Eilenberg-Zilber and Alexander-Whitney are
// realized as level-space matrices so that normalized composites never
// materialize the full tensor level basis.

#include "homalg/chain.hpp"

namespace homalg {

// A monotone surjection [n] ↠ [k] stored as its value sequence (length n+1,
// starts at 0, steps 0 or 1). Global ordering: lexicographic on values.
using Tag = std::vector<int>;
std::vector<Tag> surjection_tags(int n);  // all 2^n tags at level n, lex order

struct SimplicialModule {
  ChainComplex normal;  // non-negative normalized chains
  int level_bound = 8;
};

struct TagBlock {
  Tag tag;
  int k = 0;    // tag target degree
  Dims offset;  // block start inside the level, per factor
};

struct LevelData {
  int n = 0;
  Dims dim;
  std::vector<TagBlock> blocks;
  std::vector<Mat> d;  // faces d_0..d_n : level n -> level n-1
  std::vector<Mat> s;  // degeneracies s_0..s_n : level n -> n+1 (empty at bound)
};

SimplicialModule gamma(const ChainComplex& X, int level_bound = 8);  // NegativeSupport
ChainComplex normalize(const SimplicialModule& A);
Dims level_dim(const SimplicialModule& A, int n);
LevelData structure_maps(const SimplicialModule& A, int n);  // LevelBoundExceeded

// inclusion of the normalized part (the identity-tag block) and its projection
Mat normal_inclusion(const SimplicialModule& A, int p);  // N_p -> A_p
Mat normal_projection(const SimplicialModule& A, int p); // A_p -> N_p

// degeneracy action realizing an epi tag rho: [n] ↠ [j] on materialized levels
Mat epi_action(const SimplicialModule& A, const Tag& rho);  // A_j -> A_n

HomologyData homotopy_group(const SimplicialModule& A, int n);

// --- levelwise tensor ----------------------------------------------------
// The product in Dold-Kan normal form plus the coordinate maps between the
// level space A_m ⊗ B_m (Kronecker basis) and the normalized part N_m (the
// jointly injective tag pairs).
struct LevelTensor {
  SimplicialModule product;
  std::map<int, Mat> proj;  // A_m⊗B_m -> N_m
  std::map<int, Mat> incl;  // N_m -> A_m⊗B_m, coordinate section
  // the face-natural section: lands in ∩_{i≥1} ker(d_i⊗d_i), proj∘sect = id
  std::map<int, Mat> sect;
};
LevelTensor levelwise_tensor(const SimplicialModule& A, const SimplicialModule& B);

// level-n matrix of the canonical iso Γ(N(A⊗B))_n ≅ A_n ⊗ B_n
Mat tensor_level_iso(const SimplicialModule& A, const SimplicialModule& B,
                     const LevelTensor& T, int n);

// shuffle map into the level space: ⊕_{p+q=n} N(A)_p⊗N(B)_q -> A_n⊗B_n
// (source columns follow the chain-level tensor basis contract)
Mat ez_level(const SimplicialModule& A, const SimplicialModule& B, int n);
// front/back-face map out of the level space: A_n⊗B_n -> ⊕ N(A)_p⊗N(B)_q
Mat aw_level(const SimplicialModule& A, const SimplicialModule& B, int n);

// normalized chain maps between tensor(normalize A, normalize B) and the
// normal form of the levelwise tensor
ChainMap eilenberg_zilber(const SimplicialModule& A, const SimplicialModule& B,
                          const LevelTensor& T);
ChainMap alexander_whitney(const SimplicialModule& A, const SimplicialModule& B,
                           const LevelTensor& T);

// --- explicit levelwise presentations ---------------------------------------
// A simplicial module given by raw levels with explicit faces and degeneracies
// (the shape produced by levelwise kernels and pullbacks). normalize_levelwise
// recovers the Dold-Kan normal form together with the invertible level
// identifications Γ(N(E))_n ≅ E_n realized by degeneracy composites.
struct LevelwiseObject {
  FieldSpec F;
  int bound = 8;
  std::vector<Dims> dim;            // levels 0..bound
  std::vector<std::vector<Mat>> d;  // faces d_0..d_n per level (empty at level 0)
  std::vector<std::vector<Mat>> s;  // degeneracies s_0..s_n per level (absent at bound)
};
struct NormalizedPresentation {
  SimplicialModule module;
  std::vector<Mat> basis;       // columns of N_p inside level p of E
  std::vector<Mat> to_level;    // Γ(N(E))_n -> E_n, invertible
  std::vector<Mat> from_level;  // inverse of to_level
};
NormalizedPresentation normalize_levelwise(const LevelwiseObject& E);  // BadLevelwise

// the normalized chain map of a levelwise simplicial map A -> B
ChainMap normalize_map(const SimplicialModule& A, const SimplicialModule& B,
                       const std::map<int, Mat>& levels);

// Eilenberg-Mac Lane object K(V,n) and its path object PK(V,n) -> K(V,n)
SimplicialModule eilenberg_maclane(const FieldSpec& F, const Dims& V, int n,
                                   int level_bound = 8);
struct PathObject {
  SimplicialModule total;   // PK(V,n)
  ChainMap projection;      // normal form of PK(V,n) -> K(V,n)
};
PathObject path_object(const FieldSpec& F, const Dims& V, int n, int level_bound = 8);

}  // namespace homalg

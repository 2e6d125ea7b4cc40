#pragma once
// Chain complexes with finite support windows: spheres/disks, homology with
// canonical representatives, graded tensor with Koszul signs, pullbacks, the
// splitting into spheres and disks, and truncation.

#include <map>

#include "homalg/matrix.hpp"

namespace homalg {

struct ChainComplex {
  FieldSpec F;
  int lo = 0, hi = -1;  // support window; empty when hi < lo
  std::map<int, Dims> dims_;
  std::map<int, Mat> d_;  // d_[n]: degree n -> n-1, stored for lo < n <= hi

  Dims dim(int n) const {
    auto it = dims_.find(n);
    return it == dims_.end() ? Dims::zero(F) : it->second;
  }
  Mat diff(int n) const {
    auto it = d_.find(n);
    return it == d_.end() ? Mat(F, dim(n - 1), dim(n)) : it->second;
  }
  Dims total_dim() const {
    Dims t = Dims::zero(F);
    for (auto& [n, d] : dims_) t = t + d;
    return t;
  }
  bool is_zero_object() const { return total_dim().is_zero(); }
  bool operator==(const ChainComplex& o) const;
};

// Validates shapes and d∘d = 0; throws ShapeMismatch / NotAComplex.
ChainComplex make_complex(const FieldSpec& F, int lo, int hi, std::map<int, Dims> dims,
                          std::map<int, Mat> d);
ChainComplex make_complex_uniform(const FieldSpec& F, std::map<int, int> dims,
                                  std::map<int, Mat> d);
ChainComplex zero_complex(const FieldSpec& F);
ChainComplex unit_complex(const FieldSpec& F);  // 𝕜 in degree 0

struct ChainMap {
  ChainComplex src, dst;
  std::map<int, Mat> levels;

  Mat level(int n) const {
    auto it = levels.find(n);
    return it == levels.end() ? Mat(src.F, dst.dim(n), src.dim(n)) : it->second;
  }
  void set_level(int n, Mat m) { levels[n] = std::move(m); }
  bool operator==(const ChainMap& o) const;
};

ChainMap make_chain_map(ChainComplex src, ChainComplex dst, std::map<int, Mat> levels);
void validate_chain_map(const ChainMap& f);  // throws NotChainMap / ShapeMismatch
ChainMap identity_map(const ChainComplex& X);
ChainMap zero_map(ChainComplex src, ChainComplex dst);
ChainMap compose(const ChainMap& g, const ChainMap& f);  // g ∘ f
ChainMap map_add(const ChainMap& f, const ChainMap& g);
ChainMap map_sub(const ChainMap& f, const ChainMap& g);
bool is_mono(const ChainMap& f);
bool is_epi(const ChainMap& f);
bool is_epi_positive_degrees(const ChainMap& f);

// --- spheres and disks -------------------------------------------------------
ChainComplex sphere(const FieldSpec& F, const Dims& V, int n);
ChainComplex disk(const FieldSpec& F, const Dims& V, int n);
ChainMap disk_to_sphere(const FieldSpec& F, const Dims& V, int n);

// --- direct sums -------------------------------------------------------------
ChainComplex direct_sum(const ChainComplex& X, const ChainComplex& Y);
ChainMap incl_first(const ChainComplex& X, const ChainComplex& Y);
ChainMap incl_second(const ChainComplex& X, const ChainComplex& Y);
ChainMap proj_first(const ChainComplex& X, const ChainComplex& Y);
ChainMap proj_second(const ChainComplex& X, const ChainComplex& Y);
ChainMap map_direct_sum(const ChainMap& f, const ChainMap& g);

// --- homology ----------------------------------------------------------------
struct HomologyData {
  int degree = 0;
  Dims dim;
  Mat cycle_reps;  // columns: chosen representatives in X_n
  Mat classify;    // H-coordinates of a cycle; classify · cycle_reps = id
  Mat boundaries;  // canonical basis of B_n = im d_{n+1}
  Mat sigma;       // section X_n <- B_{n-1}-coordinates of the non-cycle part
};
HomologyData homology(const ChainComplex& X, int n);
// Matrix of H_n(f) on the canonical homology bases.
Mat homology_map(const ChainMap& f, int n);
struct DegreeVerdict {
  int degree;
  bool iso;
  Dims dim_src, dim_dst;
};
struct QuasiIsoReport {
  bool quasi_iso = true;
  std::vector<DegreeVerdict> degrees;
};
QuasiIsoReport is_quasi_iso(const ChainMap& f);
bool is_simply_connected(const ChainComplex& X);
bool is_acyclic(const ChainComplex& X);

// --- tensor ------------------------------------------------------------------
// Basis contract at degree n: ascending left degree i, then left basis index,
// then right basis index.
ChainComplex tensor(const ChainComplex& X, const ChainComplex& Y);
ChainMap tensor_map(const ChainMap& f, const ChainMap& g);  // degree-0 maps
// tensor(tensor(X,Y),Z) -> tensor(X,tensor(Y,Z)), a permutation chain map.
ChainMap associator(const ChainComplex& X, const ChainComplex& Y, const ChainComplex& Z);
// tensor(X,Y) -> tensor(Y,X) with Koszul sign (-1)^{|x||y|}.
ChainMap twist(const ChainComplex& X, const ChainComplex& Y);
// tensor(unit,X) -> X and tensor(X,unit) -> X (identity relabellings).
ChainMap left_unitor(const ChainComplex& X);
ChainMap right_unitor(const ChainComplex& X);

// --- pullback ----------------------------------------------------------------
struct Pullback {
  ChainComplex P;
  ChainMap p1, p2;  // to src(f) and src(g)
  // the universal map from a cone (u: W -> src(f), v: W -> src(g))
  ChainMap mediate(const ChainMap& u, const ChainMap& v) const;
  ChainMap f, g;
};
Pullback pullback(const ChainMap& f, const ChainMap& g);

// --- splitting ---------------------------------------------------------------
struct Summand {
  bool is_disk;
  int degree;
  Dims dim;
};
struct SplitDecomposition {
  std::vector<Summand> summands;
  ChainComplex model;   // the assembled direct sum of spheres and disks
  ChainMap to_x;        // model -> X
  ChainMap from_x;      // X -> model, mutually inverse with to_x
};
SplitDecomposition split_decompose(const ChainComplex& X);

ChainComplex truncate_nonneg(const ChainComplex& X);

// Levelwise inverse of an isomorphism; throws NotInvertible.
ChainMap inverse_map(const ChainMap& f);
// The unique g with incl ∘ g = f for a mono incl; throws NotCorestrictable
// when f does not factor through incl.
ChainMap corestrict(const ChainMap& incl, const ChainMap& f);

// Helper used throughout: add src into dst at per-factor offsets.
void add_block(Mat& dst, const Dims& roff, const Dims& coff, const Mat& src);

}  // namespace homalg

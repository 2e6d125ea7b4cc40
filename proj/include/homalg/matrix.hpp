#pragma once
// Dense exact matrices over a finite product of fields. A matrix is a tuple of
// per-factor blocks whose shapes may differ (kernels/homology have per-factor
// dimensions). All reductions use canonical echelon pivoting, so every basis
// choice in the library is deterministic.

#include <functional>
#include <optional>
#include <vector>

#include "homalg/field.hpp"

namespace homalg {

template <class T>
struct Block {
  int r = 0, c = 0;
  std::vector<T> a;  // row-major

  Block() = default;
  Block(int r_, int c_) : r(r_), c(c_), a(static_cast<size_t>(r_) * c_) {}
  T& at(int i, int j) { return a[static_cast<size_t>(i) * c + j]; }
  const T& at(int i, int j) const { return a[static_cast<size_t>(i) * c + j]; }
};

using FBlock = std::variant<Block<long long>, Block<mpq_class>>;

class Mat {
 public:
  Mat() = default;
  // Zero matrix with per-factor shapes.
  Mat(const FieldSpec& F, const Dims& rows, const Dims& cols);
  // Zero matrix with the same shape in every factor.
  Mat(const FieldSpec& F, int rows, int cols);
  static Mat identity(const FieldSpec& F, const Dims& n);
  static Mat identity(const FieldSpec& F, int n);

  const FieldSpec& field() const { return F_; }
  Dims rows() const;
  Dims cols() const;
  bool shape_uniform() const;  // same shape in every factor

  Comp get(int f, int i, int j) const;
  void set(int f, int i, int j, const Comp& v);
  void set_int(int i, int j, long long v);        // all factors
  void set_scalar(int i, int j, const Scalar& s); // all factors
  Scalar get_scalar(int i, int j) const;          // requires uniform shape

  Mat mul(const Mat& o) const;
  Mat add(const Mat& o) const;
  Mat sub(const Mat& o) const;
  Mat neg() const;
  Mat transpose() const;
  Mat hstack(const Mat& o) const;
  Mat vstack(const Mat& o) const;
  Mat direct_sum(const Mat& o) const;  // block diagonal
  Mat kron(const Mat& o) const;        // Kronecker product, per factor
  Mat row_slice(const Dims& off, const Dims& len) const;
  Mat col_slice(const Dims& off, const Dims& len) const;
  Mat scale_int(long long k) const;

  bool is_zero() const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }

  const FBlock& block(int f) const { return b_.at(f); }
  FBlock& block(int f) { return b_.at(f); }

 private:
  FieldSpec F_;
  std::vector<FBlock> b_;
  void check_same_field(const Mat& o) const;
};

struct RKI {
  Dims rank;
  Mat kernel_basis;  // cols per factor = nullity
  Mat image_basis;   // cols per factor = rank; canonical column-space basis
  Mat rref;
  std::vector<std::vector<int>> pivots;  // per factor, pivot column indices
};

// Canonical reduced row echelon data: rank, kernel basis from the free-variable
// construction, image basis = nonzero rows of rref(Mᵀ) transposed.
RKI rref_kernel_image(const Mat& M);

// Columnwise exact solve M·x = b with free variables set to zero; nullopt when
// some factor/column has no solution.
std::optional<Mat> solve(const Mat& M, const Mat& B);

// Right inverse (requires surjectivity per factor; throws NotSurjective).
Mat section(const Mat& M);
// Left inverse (requires injectivity per factor; throws NotInjective).
Mat retraction(const Mat& M);

struct Cokernel {
  Mat projection;  // surjective, kernel = im(M)
  Dims dim;
};
Cokernel cokernel(const Mat& M);

}  // namespace homalg

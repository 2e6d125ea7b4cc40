#include "homalg/matrix.hpp"

namespace homalg {

namespace {

struct ModP {
  long long p;
  using T = long long;
  T zero() const { return 0; }
  T one() const { return 1 % p; }
  bool is_zero(const T& a) const { return a == 0; }
  T add(const T& a, const T& b) const { return (a + b) % p; }
  T sub(const T& a, const T& b) const { return ((a - b) % p + p) % p; }
  T mul(const T& a, const T& b) const { return static_cast<long long>((__int128)a * b % p); }
  T neg(const T& a) const { return a == 0 ? 0 : p - a; }
  T inv(const T& a) const { return mod_inv(a, p); }
};

struct RatF {
  using T = mpq_class;
  T zero() const { return T(0); }
  T one() const { return T(1); }
  bool is_zero(const T& a) const { return a == 0; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  T inv(const T& a) const {
    if (a == 0) throw Error("DivisionByZero", "inverse of 0");
    return 1 / a;
  }
};

template <class Fn>
decltype(auto) with_ring(const FieldSpec& F, int f, FBlock& blk, Fn&& fn) {
  if (F.is_rational(f)) return fn(RatF{}, std::get<Block<mpq_class>>(blk));
  return fn(ModP{F.prime(f)}, std::get<Block<long long>>(blk));
}
template <class Fn>
decltype(auto) with_ring(const FieldSpec& F, int f, const FBlock& blk, Fn&& fn) {
  if (F.is_rational(f)) return fn(RatF{}, std::get<Block<mpq_class>>(blk));
  return fn(ModP{F.prime(f)}, std::get<Block<long long>>(blk));
}

FBlock make_block(const FieldSpec& F, int f, int r, int c) {
  if (F.is_rational(f)) return Block<mpq_class>(r, c);
  return Block<long long>(r, c);
}

template <class T>
void swap_rows(Block<T>& A, int i, int j) {
  if (i == j) return;
  for (int k = 0; k < A.c; ++k) std::swap(A.at(i, k), A.at(j, k));
}

// In-place reduced row echelon form; returns pivot column list.
template <class R, class T>
std::vector<int> rref_block(R ring, Block<T>& A, Block<T>* aug) {
  std::vector<int> piv;
  int rank = 0;
  for (int col = 0; col < A.c && rank < A.r; ++col) {
    int sel = -1;
    for (int i = rank; i < A.r; ++i)
      if (!ring.is_zero(A.at(i, col))) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    swap_rows(A, sel, rank);
    if (aug) swap_rows(*aug, sel, rank);
    T s = ring.inv(A.at(rank, col));
    for (int k = col; k < A.c; ++k) A.at(rank, k) = ring.mul(A.at(rank, k), s);
    if (aug)
      for (int k = 0; k < aug->c; ++k) aug->at(rank, k) = ring.mul(aug->at(rank, k), s);
    for (int i = 0; i < A.r; ++i) {
      if (i == rank || ring.is_zero(A.at(i, col))) continue;
      T m = A.at(i, col);
      for (int k = col; k < A.c; ++k)
        A.at(i, k) = ring.sub(A.at(i, k), ring.mul(m, A.at(rank, k)));
      if (aug)
        for (int k = 0; k < aug->c; ++k)
          aug->at(i, k) = ring.sub(aug->at(i, k), ring.mul(m, aug->at(rank, k)));
    }
    piv.push_back(col);
    ++rank;
  }
  return piv;
}

}  // namespace

Mat::Mat(const FieldSpec& F, const Dims& rows, const Dims& cols) : F_(F) {
  if (static_cast<int>(rows.v.size()) != F.nf() || static_cast<int>(cols.v.size()) != F.nf())
    throw Error("ShapeMismatch", "Dims arity does not match field factors");
  for (int f = 0; f < F.nf(); ++f) b_.push_back(make_block(F, f, rows.at(f), cols.at(f)));
}

Mat::Mat(const FieldSpec& F, int rows, int cols)
    : Mat(F, Dims::uniform(F, rows), Dims::uniform(F, cols)) {}

Mat Mat::identity(const FieldSpec& F, const Dims& n) {
  Mat m(F, n, n);
  for (int f = 0; f < F.nf(); ++f)
    with_ring(F, f, m.b_[f], [&](auto ring, auto& blk) {
      for (int i = 0; i < blk.r; ++i) blk.at(i, i) = ring.one();
    });
  return m;
}
Mat Mat::identity(const FieldSpec& F, int n) { return identity(F, Dims::uniform(F, n)); }

Dims Mat::rows() const {
  Dims d;
  for (const FBlock& blk : b_)
    d.v.push_back(std::visit([](const auto& b) { return b.r; }, blk));
  return d;
}
Dims Mat::cols() const {
  Dims d;
  for (const FBlock& blk : b_)
    d.v.push_back(std::visit([](const auto& b) { return b.c; }, blk));
  return d;
}
bool Mat::shape_uniform() const {
  int r, c;
  return rows().uniform_value(&r) && cols().uniform_value(&c);
}

Comp Mat::get(int f, int i, int j) const {
  return with_ring(F_, f, b_.at(f), [&](auto, const auto& blk) -> Comp { return blk.at(i, j); });
}
void Mat::set(int f, int i, int j, const Comp& v) {
  if (F_.is_rational(f)) {
    mpq_class q = std::holds_alternative<mpq_class>(v) ? std::get<mpq_class>(v)
                                                       : mpq_class(static_cast<long>(std::get<long long>(v)));
    q.canonicalize();
    std::get<Block<mpq_class>>(b_[f]).at(i, j) = q;
  } else {
    long long p = F_.prime(f);
    long long x;
    if (std::holds_alternative<long long>(v)) {
      x = std::get<long long>(v) % p;
    } else {
      const mpq_class& q = std::get<mpq_class>(v);
      if (q.get_den() != 1) throw Error("BadScalar", "non-integer residue");
      x = mpz_class(q.get_num() % static_cast<long>(p)).get_si();
    }
    if (x < 0) x += p;
    std::get<Block<long long>>(b_[f]).at(i, j) = x;
  }
}
void Mat::set_int(int i, int j, long long v) {
  for (int f = 0; f < F_.nf(); ++f) set(f, i, j, Comp(v));
}
void Mat::set_scalar(int i, int j, const Scalar& s) {
  for (int f = 0; f < F_.nf(); ++f) set(f, i, j, s.c.at(f));
}
Scalar Mat::get_scalar(int i, int j) const {
  Scalar s;
  for (int f = 0; f < F_.nf(); ++f) s.c.push_back(get(f, i, j));
  return s;
}

void Mat::check_same_field(const Mat& o) const {
  if (F_ != o.F_) throw Error("FieldMismatch", "matrices over different fields");
}

Mat Mat::mul(const Mat& o) const {
  check_same_field(o);
  Mat r(F_, rows(), o.cols());
  for (int f = 0; f < F_.nf(); ++f)
    with_ring(F_, f, r.b_[f], [&](auto ring, auto& R) {
      using TB = std::decay_t<decltype(R)>;
      const TB& A = std::get<TB>(b_[f]);
      const TB& B = std::get<TB>(o.b_[f]);
      if (A.c != B.r) throw Error("ShapeMismatch", "matrix product shapes");
      for (int i = 0; i < A.r; ++i)
        for (int k = 0; k < A.c; ++k) {
          const auto& a = A.at(i, k);
          if (ring.is_zero(a)) continue;
          for (int j = 0; j < B.c; ++j)
            if (!ring.is_zero(B.at(k, j))) R.at(i, j) = ring.add(R.at(i, j), ring.mul(a, B.at(k, j)));
        }
    });
  return r;
}

Mat Mat::add(const Mat& o) const {
  check_same_field(o);
  Mat r(F_, rows(), cols());
  if (rows() != o.rows() || cols() != o.cols()) throw Error("ShapeMismatch", "matrix sum shapes");
  for (int f = 0; f < F_.nf(); ++f)
    with_ring(F_, f, r.b_[f], [&](auto ring, auto& R) {
      using TB = std::decay_t<decltype(R)>;
      const TB& A = std::get<TB>(b_[f]);
      const TB& B = std::get<TB>(o.b_[f]);
      for (size_t i = 0; i < R.a.size(); ++i) R.a[i] = ring.add(A.a[i], B.a[i]);
    });
  return r;
}

Mat Mat::sub(const Mat& o) const { return add(o.neg()); }

Mat Mat::neg() const {
  Mat r(F_, rows(), cols());
  for (int f = 0; f < F_.nf(); ++f)
    with_ring(F_, f, r.b_[f], [&](auto ring, auto& R) {
      using TB = std::decay_t<decltype(R)>;
      const TB& A = std::get<TB>(b_[f]);
      for (size_t i = 0; i < R.a.size(); ++i) R.a[i] = ring.neg(A.a[i]);
    });
  return r;
}

Mat Mat::scale_int(long long k) const {
  Mat r(F_, rows(), cols());
  for (int f = 0; f < F_.nf(); ++f)
    with_ring(F_, f, r.b_[f], [&](auto ring, auto& R) {
      using TT = typename std::decay_t<decltype(ring)>::T;
      TT kk;
      if constexpr (std::is_same_v<TT, long long>) {
        kk = ((k % F_.prime(f)) + F_.prime(f)) % F_.prime(f);
      } else {
        kk = static_cast<long>(k);
      }
      using TB = std::decay_t<decltype(R)>;
      const TB& A = std::get<TB>(b_[f]);
      for (size_t i = 0; i < R.a.size(); ++i) R.a[i] = ring.mul(A.a[i], kk);
    });
  return r;
}

Mat Mat::transpose() const {
  Mat r(F_, cols(), rows());
  for (int f = 0; f < F_.nf(); ++f)
    with_ring(F_, f, r.b_[f], [&](auto, auto& R) {
      using TB = std::decay_t<decltype(R)>;
      const TB& A = std::get<TB>(b_[f]);
      for (int i = 0; i < A.r; ++i)
        for (int j = 0; j < A.c; ++j) R.at(j, i) = A.at(i, j);
    });
  return r;
}

Mat Mat::hstack(const Mat& o) const {
  check_same_field(o);
  if (rows() != o.rows()) throw Error("ShapeMismatch", "hstack rows");
  Mat r(F_, rows(), cols() + o.cols());
  for (int f = 0; f < F_.nf(); ++f)
    with_ring(F_, f, r.b_[f], [&](auto, auto& R) {
      using TB = std::decay_t<decltype(R)>;
      const TB& A = std::get<TB>(b_[f]);
      const TB& B = std::get<TB>(o.b_[f]);
      for (int i = 0; i < R.r; ++i) {
        for (int j = 0; j < A.c; ++j) R.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.c; ++j) R.at(i, A.c + j) = B.at(i, j);
      }
    });
  return r;
}

Mat Mat::vstack(const Mat& o) const { return transpose().hstack(o.transpose()).transpose(); }

Mat Mat::direct_sum(const Mat& o) const {
  check_same_field(o);
  Mat r(F_, rows() + o.rows(), cols() + o.cols());
  for (int f = 0; f < F_.nf(); ++f)
    with_ring(F_, f, r.b_[f], [&](auto, auto& R) {
      using TB = std::decay_t<decltype(R)>;
      const TB& A = std::get<TB>(b_[f]);
      const TB& B = std::get<TB>(o.b_[f]);
      for (int i = 0; i < A.r; ++i)
        for (int j = 0; j < A.c; ++j) R.at(i, j) = A.at(i, j);
      for (int i = 0; i < B.r; ++i)
        for (int j = 0; j < B.c; ++j) R.at(A.r + i, A.c + j) = B.at(i, j);
    });
  return r;
}

Mat Mat::kron(const Mat& o) const {
  check_same_field(o);
  Dims rr, cc;
  for (int f = 0; f < F_.nf(); ++f) {
    rr.v.push_back(rows().at(f) * o.rows().at(f));
    cc.v.push_back(cols().at(f) * o.cols().at(f));
  }
  Mat r(F_, rr, cc);
  for (int f = 0; f < F_.nf(); ++f)
    with_ring(F_, f, r.b_[f], [&](auto ring, auto& R) {
      using TB = std::decay_t<decltype(R)>;
      const TB& A = std::get<TB>(b_[f]);
      const TB& B = std::get<TB>(o.b_[f]);
      for (int i1 = 0; i1 < A.r; ++i1)
        for (int j1 = 0; j1 < A.c; ++j1) {
          if (ring.is_zero(A.at(i1, j1))) continue;
          for (int i2 = 0; i2 < B.r; ++i2)
            for (int j2 = 0; j2 < B.c; ++j2)
              R.at(i1 * B.r + i2, j1 * B.c + j2) = ring.mul(A.at(i1, j1), B.at(i2, j2));
        }
    });
  return r;
}

Mat Mat::row_slice(const Dims& off, const Dims& len) const {
  Mat r(F_, len, cols());
  for (int f = 0; f < F_.nf(); ++f)
    with_ring(F_, f, r.b_[f], [&](auto, auto& R) {
      using TB = std::decay_t<decltype(R)>;
      const TB& A = std::get<TB>(b_[f]);
      for (int i = 0; i < R.r; ++i)
        for (int j = 0; j < R.c; ++j) R.at(i, j) = A.at(off.at(f) + i, j);
    });
  return r;
}

Mat Mat::col_slice(const Dims& off, const Dims& len) const {
  return transpose().row_slice(off, len).transpose();
}

bool Mat::is_zero() const {
  for (int f = 0; f < F_.nf(); ++f) {
    bool z = with_ring(F_, f, b_.at(f), [&](auto ring, const auto& A) {
      for (const auto& x : A.a)
        if (!ring.is_zero(x)) return false;
      return true;
    });
    if (!z) return false;
  }
  return true;
}

bool Mat::operator==(const Mat& o) const {
  if (F_ != o.F_ || rows() != o.rows() || cols() != o.cols()) return false;
  return sub(o).is_zero();
}

RKI rref_kernel_image(const Mat& M) {
  const FieldSpec& F = M.field();
  RKI out;
  out.rref = M;
  out.pivots.resize(F.nf());
  Dims rank, nullity;
  for (int f = 0; f < F.nf(); ++f) {
    out.pivots[f] = with_ring(F, f, out.rref.block(f), [&](auto ring, auto& A) {
      return rref_block(ring, A, static_cast<std::decay_t<decltype(A)>*>(nullptr));
    });
    rank.v.push_back(static_cast<int>(out.pivots[f].size()));
    nullity.v.push_back(M.cols().at(f) - rank.v.back());
  }
  out.rank = rank;
  // Kernel basis: free-variable construction from the RREF, free columns ascending.
  out.kernel_basis = Mat(F, M.cols(), nullity);
  for (int f = 0; f < F.nf(); ++f) {
    const std::vector<int>& piv = out.pivots[f];
    std::vector<bool> is_piv(M.cols().at(f), false);
    for (int c : piv) is_piv[c] = true;
    int k = 0;
    for (int j = 0; j < M.cols().at(f); ++j) {
      if (is_piv[j]) continue;
      out.kernel_basis.set(f, j, k, Comp(1LL));
      with_ring(F, f, out.kernel_basis.block(f), [&](auto ring, auto& K) {
        using TB = std::decay_t<decltype(K)>;
        const TB& R = std::get<TB>(out.rref.block(f));
        for (size_t r = 0; r < piv.size(); ++r) K.at(piv[r], k) = ring.neg(R.at(static_cast<int>(r), j));
      });
      ++k;
    }
  }
  // Image basis: nonzero rows of rref(Mᵀ), transposed back to columns.
  Mat T = M.transpose();
  Dims rk2;
  std::vector<std::vector<int>> piv2(F.nf());
  for (int f = 0; f < F.nf(); ++f) {
    piv2[f] = with_ring(F, f, T.block(f), [&](auto ring, auto& A) {
      return rref_block(ring, A, static_cast<std::decay_t<decltype(A)>*>(nullptr));
    });
    rk2.v.push_back(static_cast<int>(piv2[f].size()));
  }
  out.image_basis = T.row_slice(Dims::zero(F), rk2).transpose();
  return out;
}

std::optional<Mat> solve(const Mat& M, const Mat& B) {
  const FieldSpec& F = M.field();
  if (M.rows() != B.rows()) throw Error("ShapeMismatch", "solve rhs rows");
  Mat A = M, Bb = B;
  Mat X(F, M.cols(), B.cols());
  for (int f = 0; f < F.nf(); ++f) {
    bool ok = with_ring(F, f, A.block(f), [&](auto ring, auto& Ab) {
      using TB = std::decay_t<decltype(Ab)>;
      TB& Bf = std::get<TB>(Bb.block(f));
      TB& Xf = std::get<TB>(X.block(f));
      std::vector<int> piv = rref_block(ring, Ab, &Bf);
      for (int i = static_cast<int>(piv.size()); i < Bf.r; ++i)
        for (int j = 0; j < Bf.c; ++j)
          if (!ring.is_zero(Bf.at(i, j))) return false;
      for (size_t r = 0; r < piv.size(); ++r)
        for (int j = 0; j < Bf.c; ++j) Xf.at(piv[r], j) = Bf.at(static_cast<int>(r), j);
      return true;
    });
    if (!ok) return std::nullopt;
  }
  return X;
}

Mat section(const Mat& M) {
  RKI r = rref_kernel_image(M);
  if (r.rank != M.rows()) throw Error("NotSurjective", "section of a non-surjective map");
  return *solve(M, Mat::identity(M.field(), M.rows()));
}

Mat retraction(const Mat& M) {
  RKI r = rref_kernel_image(M);
  if (r.rank != M.cols()) throw Error("NotInjective", "retraction of a non-injective map");
  return solve(M.transpose(), Mat::identity(M.field(), M.cols()))->transpose();
}

Cokernel cokernel(const Mat& M) {
  const FieldSpec& F = M.field();
  RKI r = rref_kernel_image(M);
  Dims n = M.rows();
  Dims codim;
  for (int f = 0; f < F.nf(); ++f) codim.v.push_back(n.at(f) - r.rank.at(f));
  // Complete the image basis by standard basis vectors chosen by echelon pivoting.
  Mat W = r.image_basis.hstack(Mat::identity(F, n));
  RKI w = rref_kernel_image(W);
  Mat E(F, n, codim);
  for (int f = 0; f < F.nf(); ++f) {
    int k = 0;
    for (int c : w.pivots[f])
      if (c >= r.rank.at(f)) E.set(f, c - r.rank.at(f), k++, Comp(1LL));
  }
  Mat basis = r.image_basis.hstack(E);
  Mat inv = *solve(basis, Mat::identity(F, n));
  Cokernel out;
  out.projection = inv.row_slice(r.rank, codim);
  out.dim = codim;
  return out;
}

}  // namespace homalg

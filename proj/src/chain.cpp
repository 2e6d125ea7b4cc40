#include "homalg/chain.hpp"

#include <algorithm>

namespace homalg {

void add_block(Mat& dst, const Dims& roff, const Dims& coff, const Mat& src) {
  const FieldSpec& F = dst.field();
  for (int f = 0; f < F.nf(); ++f)
    for (int i = 0; i < src.rows().at(f); ++i)
      for (int j = 0; j < src.cols().at(f); ++j) {
        Comp a = dst.get(f, roff.at(f) + i, coff.at(f) + j);
        Comp b = src.get(f, i, j);
        if (F.is_rational(f)) {
          dst.set(f, roff.at(f) + i, coff.at(f) + j,
                  Comp(std::get<mpq_class>(a) + std::get<mpq_class>(b)));
        } else {
          dst.set(f, roff.at(f) + i, coff.at(f) + j,
                  Comp((std::get<long long>(a) + std::get<long long>(b)) % F.prime(f)));
        }
      }
}

bool ChainComplex::operator==(const ChainComplex& o) const {
  if (F != o.F) return false;
  int a = std::min(lo, o.lo), b = std::max(hi, o.hi);
  for (int n = a; n <= b; ++n) {
    if (dim(n) != o.dim(n)) return false;
    if (diff(n) != o.diff(n)) return false;
  }
  return true;
}

bool ChainMap::operator==(const ChainMap& o) const {
  if (!(src == o.src) || !(dst == o.dst)) return false;
  int a = std::min(src.lo, o.src.lo), b = std::max(src.hi, o.src.hi);
  for (int n = a; n <= b; ++n)
    if (level(n) != o.level(n)) return false;
  return true;
}

ChainComplex make_complex(const FieldSpec& F, int lo, int hi, std::map<int, Dims> dims,
                          std::map<int, Mat> d) {
  ChainComplex X;
  X.F = F;
  X.lo = lo;
  X.hi = hi;
  X.dims_ = std::move(dims);
  X.d_ = std::move(d);
  for (auto& [n, dm] : X.dims_) {
    if (static_cast<int>(dm.v.size()) != F.nf()) throw Error("ShapeMismatch", "dims arity");
    if ((n < lo || n > hi) && !dm.is_zero())
      throw Error("ShapeMismatch", "nonzero dims outside the support window");
  }
  for (auto& [n, m] : X.d_) {
    if (m.rows() != X.dim(n - 1) || m.cols() != X.dim(n))
      throw Error("ShapeMismatch", "differential shape at degree " + std::to_string(n));
  }
  for (int n = lo + 2; n <= hi; ++n)
    if (!X.diff(n - 1).mul(X.diff(n)).is_zero())
      throw Error("NotAComplex", "d∘d ≠ 0 at degree " + std::to_string(n));
  return X;
}

ChainComplex make_complex_uniform(const FieldSpec& F, std::map<int, int> dims,
                                  std::map<int, Mat> d) {
  std::map<int, Dims> dd;
  int lo = 0, hi = -1;
  bool first = true;
  for (auto& [n, k] : dims) {
    dd[n] = Dims::uniform(F, k);
    if (first || n < lo) lo = n;
    if (first || n > hi) hi = n;
    first = false;
  }
  if (first) return zero_complex(F);
  return make_complex(F, lo, hi, std::move(dd), std::move(d));
}

ChainComplex zero_complex(const FieldSpec& F) {
  ChainComplex X;
  X.F = F;
  X.lo = 0;
  X.hi = -1;
  return X;
}

ChainComplex unit_complex(const FieldSpec& F) {
  return sphere(F, Dims::uniform(F, 1), 0);
}

ChainMap make_chain_map(ChainComplex src, ChainComplex dst, std::map<int, Mat> levels) {
  ChainMap f;
  f.src = std::move(src);
  f.dst = std::move(dst);
  f.levels = std::move(levels);
  validate_chain_map(f);
  return f;
}

void validate_chain_map(const ChainMap& f) {
  if (f.src.F != f.dst.F) throw Error("FieldMismatch", "chain map between different fields");
  int lo = std::min(f.src.lo, f.dst.lo), hi = std::max(f.src.hi, f.dst.hi);
  for (int n = lo; n <= hi; ++n) {
    Mat fn = f.level(n);
    if (fn.rows() != f.dst.dim(n) || fn.cols() != f.src.dim(n))
      throw Error("ShapeMismatch", "chain map level shape at degree " + std::to_string(n));
    if (f.dst.diff(n).mul(fn) != f.level(n - 1).mul(f.src.diff(n)))
      throw Error("NotChainMap", "does not commute with d at degree " + std::to_string(n));
  }
}

ChainMap identity_map(const ChainComplex& X) {
  ChainMap f;
  f.src = X;
  f.dst = X;
  for (auto& [n, d] : X.dims_) f.levels.emplace(n, Mat::identity(X.F, d));
  return f;
}

ChainMap zero_map(ChainComplex src, ChainComplex dst) {
  ChainMap f;
  f.src = std::move(src);
  f.dst = std::move(dst);
  return f;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  ChainMap h;
  h.src = f.src;
  h.dst = g.dst;
  int lo = f.src.lo, hi = f.src.hi;
  for (int n = lo; n <= hi; ++n) h.levels.emplace(n, g.level(n).mul(f.level(n)));
  return h;
}

ChainMap map_add(const ChainMap& f, const ChainMap& g) {
  ChainMap h = f;
  int lo = std::min(f.src.lo, g.src.lo), hi = std::max(f.src.hi, g.src.hi);
  h.levels.clear();
  for (int n = lo; n <= hi; ++n) h.levels.emplace(n, f.level(n).add(g.level(n)));
  return h;
}
ChainMap map_sub(const ChainMap& f, const ChainMap& g) {
  ChainMap h = f;
  int lo = std::min(f.src.lo, g.src.lo), hi = std::max(f.src.hi, g.src.hi);
  h.levels.clear();
  for (int n = lo; n <= hi; ++n) h.levels.emplace(n, f.level(n).sub(g.level(n)));
  return h;
}

bool is_mono(const ChainMap& f) {
  for (int n = f.src.lo; n <= f.src.hi; ++n)
    if (rref_kernel_image(f.level(n)).rank != f.src.dim(n)) return false;
  return true;
}
bool is_epi(const ChainMap& f) {
  for (int n = f.dst.lo; n <= f.dst.hi; ++n)
    if (rref_kernel_image(f.level(n)).rank != f.dst.dim(n)) return false;
  return true;
}
bool is_epi_positive_degrees(const ChainMap& f) {
  for (int n = std::max(1, f.dst.lo); n <= f.dst.hi; ++n)
    if (rref_kernel_image(f.level(n)).rank != f.dst.dim(n)) return false;
  return true;
}

ChainComplex sphere(const FieldSpec& F, const Dims& V, int n) {
  ChainComplex X;
  X.F = F;
  X.lo = n;
  X.hi = n;
  X.dims_[n] = V;
  if (V.is_zero()) {
    X.lo = 0;
    X.hi = -1;
    X.dims_.clear();
  }
  return X;
}

ChainComplex disk(const FieldSpec& F, const Dims& V, int n) {
  ChainComplex X;
  X.F = F;
  if (V.is_zero()) return zero_complex(F);
  X.lo = n - 1;
  X.hi = n;
  X.dims_[n] = V;
  X.dims_[n - 1] = V;
  X.d_.emplace(n, Mat::identity(F, V));
  return X;
}

ChainMap disk_to_sphere(const FieldSpec& F, const Dims& V, int n) {
  ChainMap f;
  f.src = disk(F, V, n);
  f.dst = sphere(F, V, n);
  if (!V.is_zero()) f.levels.emplace(n, Mat::identity(F, V));
  return f;
}

ChainComplex direct_sum(const ChainComplex& X, const ChainComplex& Y) {
  if (X.F != Y.F) throw Error("FieldMismatch", "direct sum");
  ChainComplex Z;
  Z.F = X.F;
  if (X.is_zero_object()) return Y;
  if (Y.is_zero_object()) return X;
  Z.lo = std::min(X.lo, Y.lo);
  Z.hi = std::max(X.hi, Y.hi);
  for (int n = Z.lo; n <= Z.hi; ++n) Z.dims_[n] = X.dim(n) + Y.dim(n);
  for (int n = Z.lo + 1; n <= Z.hi; ++n) Z.d_.emplace(n, X.diff(n).direct_sum(Y.diff(n)));
  return Z;
}

ChainMap incl_first(const ChainComplex& X, const ChainComplex& Y) {
  ChainComplex Z = direct_sum(X, Y);
  ChainMap f;
  f.src = X;
  f.dst = Z;
  for (int n = X.lo; n <= X.hi; ++n) {
    Mat m(X.F, Z.dim(n), X.dim(n));
    add_block(m, Dims::zero(X.F), Dims::zero(X.F), Mat::identity(X.F, X.dim(n)));
    f.levels.emplace(n, std::move(m));
  }
  return f;
}
ChainMap incl_second(const ChainComplex& X, const ChainComplex& Y) {
  ChainComplex Z = direct_sum(X, Y);
  ChainMap f;
  f.src = Y;
  f.dst = Z;
  for (int n = Y.lo; n <= Y.hi; ++n) {
    Mat m(X.F, Z.dim(n), Y.dim(n));
    add_block(m, X.dim(n), Dims::zero(X.F), Mat::identity(X.F, Y.dim(n)));
    f.levels.emplace(n, std::move(m));
  }
  return f;
}
ChainMap proj_first(const ChainComplex& X, const ChainComplex& Y) {
  ChainComplex Z = direct_sum(X, Y);
  ChainMap f;
  f.src = Z;
  f.dst = X;
  for (int n = X.lo; n <= X.hi; ++n) {
    Mat m(X.F, X.dim(n), Z.dim(n));
    add_block(m, Dims::zero(X.F), Dims::zero(X.F), Mat::identity(X.F, X.dim(n)));
    f.levels.emplace(n, std::move(m));
  }
  return f;
}
ChainMap proj_second(const ChainComplex& X, const ChainComplex& Y) {
  ChainComplex Z = direct_sum(X, Y);
  ChainMap f;
  f.src = Z;
  f.dst = Y;
  for (int n = Y.lo; n <= Y.hi; ++n) {
    Mat m(X.F, Y.dim(n), Z.dim(n));
    add_block(m, Dims::zero(X.F), X.dim(n), Mat::identity(X.F, Y.dim(n)));
    f.levels.emplace(n, std::move(m));
  }
  return f;
}

ChainMap map_direct_sum(const ChainMap& f, const ChainMap& g) {
  ChainMap h;
  h.src = direct_sum(f.src, g.src);
  h.dst = direct_sum(f.dst, g.dst);
  for (int n = h.src.lo; n <= h.src.hi; ++n) {
    Mat m(h.src.F, h.dst.dim(n), h.src.dim(n));
    add_block(m, Dims::zero(h.src.F), Dims::zero(h.src.F), f.level(n));
    add_block(m, f.dst.dim(n), f.src.dim(n), g.level(n));
    h.levels.emplace(n, std::move(m));
  }
  return h;
}

HomologyData homology(const ChainComplex& X, int n) {
  const FieldSpec& F = X.F;
  HomologyData H;
  H.degree = n;
  Mat dn = X.diff(n);
  Mat dnp1 = X.diff(n + 1);
  RKI kn = rref_kernel_image(dn);
  Mat Z = kn.kernel_basis;                       // cycles
  Mat Bnd = rref_kernel_image(dnp1).image_basis; // boundaries
  H.boundaries = Bnd;
  // complete the boundary basis inside the cycle space by echelon pivoting
  Mat W = Bnd.hstack(Z);
  RKI w = rref_kernel_image(W);
  Dims h;
  for (int f = 0; f < F.nf(); ++f) h.v.push_back(0);
  std::vector<std::vector<int>> chosen(F.nf());
  for (int f = 0; f < F.nf(); ++f)
    for (int c : w.pivots[f])
      if (c >= Bnd.cols().at(f)) {
        chosen[f].push_back(c - Bnd.cols().at(f));
        ++h.v[f];
      }
  H.dim = h;
  H.cycle_reps = Mat(F, X.dim(n), h);
  for (int f = 0; f < F.nf(); ++f)
    for (size_t k = 0; k < chosen[f].size(); ++k)
      for (int i = 0; i < X.dim(n).at(f); ++i)
        H.cycle_reps.set(f, i, static_cast<int>(k), Z.get(f, i, chosen[f][k]));
  // classify: H-rows of a left inverse of [Bnd | reps]
  Mat BR = Bnd.hstack(H.cycle_reps);
  if (BR.cols().is_zero()) {
    H.classify = Mat(F, h, X.dim(n));
  } else {
    Mat L = retraction(BR);
    H.classify = L.row_slice(Bnd.cols(), h);
  }
  // sigma: section of the corestricted differential onto its image
  Mat Bm1 = kn.image_basis;  // basis of B_{n-1} inside X_{n-1}
  if (Bm1.cols().is_zero()) {
    H.sigma = Mat(F, X.dim(n), Dims::zero(F));
  } else {
    Mat co = *solve(Bm1, dn);  // X_n -> B_{n-1} coordinates, surjective
    H.sigma = section(co);
  }
  return H;
}

Mat homology_map(const ChainMap& f, int n) {
  HomologyData hs = homology(f.src, n), hd = homology(f.dst, n);
  return hd.classify.mul(f.level(n)).mul(hs.cycle_reps);
}

QuasiIsoReport is_quasi_iso(const ChainMap& f) {
  QuasiIsoReport rep;
  int lo = std::min(f.src.lo, f.dst.lo), hi = std::max(f.src.hi, f.dst.hi);
  for (int n = lo; n <= hi; ++n) {
    HomologyData hs = homology(f.src, n), hd = homology(f.dst, n);
    Mat m = hd.classify.mul(f.level(n)).mul(hs.cycle_reps);
    bool iso = hs.dim == hd.dim && rref_kernel_image(m).rank == hs.dim;
    rep.degrees.push_back({n, iso, hs.dim, hd.dim});
    if (!iso) rep.quasi_iso = false;
  }
  return rep;
}

bool is_simply_connected(const ChainComplex& X) {
  if (X.lo < 0)
    for (int n = X.lo; n < 0; ++n)
      if (!X.dim(n).is_zero()) return false;
  return X.dim(0) == Dims::uniform(X.F, 1) && X.dim(1).is_zero();
}

bool is_acyclic(const ChainComplex& X) {
  for (int n = X.lo; n <= X.hi; ++n)
    if (!homology(X, n).dim.is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// tensor

namespace {
struct TBlock {
  int i;  // left degree; right degree = n - i
};
std::vector<int> tensor_blocks(const ChainComplex& X, const ChainComplex& Y, int n) {
  std::vector<int> out;
  for (int i = std::max(X.lo, n - Y.hi); i <= std::min(X.hi, n - Y.lo); ++i) out.push_back(i);
  return out;
}
Dims tensor_dim(const ChainComplex& X, const ChainComplex& Y, int n) {
  Dims t = Dims::zero(X.F);
  for (int i : tensor_blocks(X, Y, n)) {
    Dims p;
    for (int f = 0; f < X.F.nf(); ++f) p.v.push_back(X.dim(i).at(f) * Y.dim(n - i).at(f));
    t = t + p;
  }
  return t;
}
Dims tensor_offset(const ChainComplex& X, const ChainComplex& Y, int n, int i) {
  Dims t = Dims::zero(X.F);
  for (int k : tensor_blocks(X, Y, n)) {
    if (k >= i) break;
    for (int f = 0; f < X.F.nf(); ++f) t.v[f] += X.dim(k).at(f) * Y.dim(n - k).at(f);
  }
  return t;
}
}  // namespace

ChainComplex tensor(const ChainComplex& X, const ChainComplex& Y) {
  if (X.F != Y.F) throw Error("FieldMismatch", "tensor");
  ChainComplex Z;
  Z.F = X.F;
  if (X.is_zero_object() || Y.is_zero_object()) return zero_complex(X.F);
  Z.lo = X.lo + Y.lo;
  Z.hi = X.hi + Y.hi;
  for (int n = Z.lo; n <= Z.hi; ++n) Z.dims_[n] = tensor_dim(X, Y, n);
  for (int n = Z.lo + 1; n <= Z.hi; ++n) {
    Mat D(Z.F, Z.dim(n - 1), Z.dim(n));
    for (int i : tensor_blocks(X, Y, n)) {
      int j = n - i;
      Dims coff = tensor_offset(X, Y, n, i);
      // d_X ⊗ id : block (i,j) -> block (i-1, j)
      if (i - 1 >= X.lo && !X.dim(i - 1).is_zero() && !Y.dim(j).is_zero())
        add_block(D, tensor_offset(X, Y, n - 1, i - 1), coff,
                  X.diff(i).kron(Mat::identity(Z.F, Y.dim(j))));
      // (-1)^i id ⊗ d_Y : block (i,j) -> block (i, j-1)
      if (j - 1 >= Y.lo && !X.dim(i).is_zero() && !Y.dim(j - 1).is_zero()) {
        Mat blk = Mat::identity(Z.F, X.dim(i)).kron(Y.diff(j));
        if (i % 2 != 0) blk = blk.neg();
        add_block(D, tensor_offset(X, Y, n - 1, i), coff, blk);
      }
    }
    Z.d_.emplace(n, std::move(D));
  }
  return Z;
}

ChainMap tensor_map(const ChainMap& f, const ChainMap& g) {
  ChainMap h;
  h.src = tensor(f.src, g.src);
  h.dst = tensor(f.dst, g.dst);
  for (int n = h.src.lo; n <= h.src.hi; ++n) {
    Mat M(h.src.F, h.dst.dim(n), h.src.dim(n));
    for (int i : tensor_blocks(f.src, g.src, n)) {
      int j = n - i;
      if (f.src.dim(i).is_zero() || g.src.dim(j).is_zero()) continue;
      if (f.dst.dim(i).is_zero() || g.dst.dim(j).is_zero()) continue;
      add_block(M, tensor_offset(f.dst, g.dst, n, i), tensor_offset(f.src, g.src, n, i),
                f.level(i).kron(g.level(j)));
    }
    h.levels.emplace(n, std::move(M));
  }
  return h;
}

ChainMap associator(const ChainComplex& X, const ChainComplex& Y, const ChainComplex& Z) {
  ChainComplex XY = tensor(X, Y), YZ = tensor(Y, Z);
  ChainMap a;
  a.src = tensor(XY, Z);
  a.dst = tensor(X, YZ);
  const FieldSpec& F = X.F;
  for (int n = a.src.lo; n <= a.src.hi; ++n) {
    Mat M(F, a.dst.dim(n), a.src.dim(n));
    // source block: (m = i+j of XY, k of Z); inner block of XY_m: (i, j)
    for (int m : tensor_blocks(XY, Z, n)) {
      int k = n - m;
      Dims moff = tensor_offset(XY, Z, n, m);
      for (int i : tensor_blocks(X, Y, m)) {
        int j = m - i;
        Dims ioff = tensor_offset(X, Y, m, i);
        // target: block (i, j+k of YZ); inner block of YZ_{j+k}: (j, k)
        Dims toff = tensor_offset(X, YZ, n, i);
        Dims tinner = tensor_offset(Y, Z, j + k, j);
        for (int f = 0; f < F.nf(); ++f) {
          int dx = X.dim(i).at(f), dy = Y.dim(j).at(f), dz = Z.dim(k).at(f);
          int yzdim = YZ.dim(j + k).at(f), zdim = Z.dim(k).at(f);
          for (int xa = 0; xa < dx; ++xa)
            for (int yb = 0; yb < dy; ++yb)
              for (int zc = 0; zc < dz; ++zc) {
                int srow = moff.at(f) + (ioff.at(f) + xa * dy + yb) * zdim + zc;
                int trow = toff.at(f) + xa * yzdim + tinner.at(f) + yb * dz + zc;
                M.set(f, trow, srow, Comp(1LL));
              }
        }
      }
    }
    a.levels.emplace(n, std::move(M));
  }
  return a;
}

ChainMap twist(const ChainComplex& X, const ChainComplex& Y) {
  ChainMap t;
  t.src = tensor(X, Y);
  t.dst = tensor(Y, X);
  const FieldSpec& F = X.F;
  for (int n = t.src.lo; n <= t.src.hi; ++n) {
    Mat M(F, t.dst.dim(n), t.src.dim(n));
    for (int i : tensor_blocks(X, Y, n)) {
      int j = n - i;
      Dims soff = tensor_offset(X, Y, n, i);
      Dims toff = tensor_offset(Y, X, n, j);
      long long sgn = (i % 2 != 0 && j % 2 != 0) ? -1 : 1;
      for (int f = 0; f < F.nf(); ++f) {
        int dx = X.dim(i).at(f), dy = Y.dim(j).at(f);
        for (int a = 0; a < dx; ++a)
          for (int b = 0; b < dy; ++b)
            M.set(f, toff.at(f) + b * dx + a, soff.at(f) + a * dy + b, Comp(sgn));
      }
    }
    t.levels.emplace(n, std::move(M));
  }
  return t;
}

ChainMap left_unitor(const ChainComplex& X) {
  ChainComplex U = unit_complex(X.F);
  ChainMap f;
  f.src = tensor(U, X);
  f.dst = X;
  for (int n = X.lo; n <= X.hi; ++n) f.levels.emplace(n, Mat::identity(X.F, X.dim(n)));
  return f;
}
ChainMap right_unitor(const ChainComplex& X) {
  ChainComplex U = unit_complex(X.F);
  ChainMap f;
  f.src = tensor(X, U);
  f.dst = X;
  for (int n = X.lo; n <= X.hi; ++n) f.levels.emplace(n, Mat::identity(X.F, X.dim(n)));
  return f;
}

// ---------------------------------------------------------------------------
// pullback

Pullback pullback(const ChainMap& f, const ChainMap& g) {
  if (!(f.dst == g.dst)) throw Error("TargetMismatch", "pullback legs have different targets");
  const ChainComplex &X = f.src, &Y = g.src, &Z = f.dst;
  const FieldSpec& F = X.F;
  Pullback out;
  out.f = f;
  out.g = g;
  ChainComplex S = direct_sum(X, Y);
  ChainComplex P;
  P.F = F;
  P.lo = S.lo;
  P.hi = S.hi;
  std::map<int, Mat> kernel;  // inclusion P_n -> X_n ⊕ Y_n
  for (int n = S.lo; n <= S.hi; ++n) {
    Mat stacked(F, Z.dim(n), S.dim(n));
    add_block(stacked, Dims::zero(F), Dims::zero(F), f.level(n));
    add_block(stacked, Dims::zero(F), X.dim(n), g.level(n).neg());
    Mat K = rref_kernel_image(stacked).kernel_basis;
    P.dims_[n] = K.cols();
    kernel.emplace(n, std::move(K));
  }
  for (int n = S.lo + 1; n <= S.hi; ++n) {
    Mat img = S.diff(n).mul(kernel.at(n));
    auto dn = solve(kernel.at(n - 1), img);
    if (!dn) throw Error("Internal", "pullback differential does not restrict");
    P.d_.emplace(n, std::move(*dn));
  }
  out.P = P;
  out.p1.src = P;
  out.p1.dst = X;
  out.p2.src = P;
  out.p2.dst = Y;
  for (int n = S.lo; n <= S.hi; ++n) {
    out.p1.levels.emplace(n, kernel.at(n).row_slice(Dims::zero(F), X.dim(n)));
    out.p2.levels.emplace(n, kernel.at(n).row_slice(X.dim(n), Y.dim(n)));
  }
  return out;
}

ChainMap Pullback::mediate(const ChainMap& u, const ChainMap& v) const {
  const ChainComplex& W = u.src;
  ChainMap m;
  m.src = W;
  m.dst = P;
  for (int n = W.lo; n <= W.hi; ++n) {
    Mat stacked = u.level(n).vstack(v.level(n));
    Mat K = p1.level(n).vstack(p2.level(n));
    auto x = solve(K, stacked);
    if (!x) throw Error("NotACone", "mediating map does not exist at degree " + std::to_string(n));
    m.levels.emplace(n, std::move(*x));
  }
  return m;
}

// ---------------------------------------------------------------------------
// splitting

SplitDecomposition split_decompose(const ChainComplex& X) {
  const FieldSpec& F = X.F;
  SplitDecomposition out;
  std::map<int, HomologyData> H;
  for (int n = X.lo; n <= X.hi + 1; ++n) H.emplace(n, homology(X, n));
  // model: at degree n the blocks are [H_n | B_{n-1} (disk top) | B_n (disk bottom)]
  ChainComplex M;
  M.F = F;
  M.lo = X.lo;
  M.hi = X.hi;
  auto bdim = [&](int n) { return n >= X.lo && n <= X.hi ? H.at(n).boundaries.cols() : Dims::zero(F); };
  for (int n = X.lo; n <= X.hi; ++n) M.dims_[n] = H.at(n).dim + bdim(n - 1) + bdim(n);
  for (int n = X.lo + 1; n <= X.hi; ++n) {
    Mat D(F, M.dim(n - 1), M.dims_[n]);
    // disk top at degree n maps identically onto disk bottom at degree n-1
    add_block(D, H.at(n - 1).dim + bdim(n - 2), H.at(n).dim, Mat::identity(F, bdim(n - 1)));
    M.d_.emplace(n, std::move(D));
  }
  for (int n = X.lo; n <= X.hi; ++n) {
    if (!H.at(n).dim.is_zero()) out.summands.push_back({false, n, H.at(n).dim});
    if (!bdim(n - 1).is_zero()) out.summands.push_back({true, n, bdim(n - 1)});
  }
  // iso model -> X : [cycle_reps | sigma | boundaries]
  ChainMap phi;
  phi.src = M;
  phi.dst = X;
  for (int n = X.lo; n <= X.hi; ++n) {
    Mat m(F, X.dim(n), M.dim(n));
    add_block(m, Dims::zero(F), Dims::zero(F), H.at(n).cycle_reps);
    add_block(m, Dims::zero(F), H.at(n).dim, H.at(n).sigma);
    add_block(m, Dims::zero(F), H.at(n).dim + bdim(n - 1), H.at(n).boundaries);
    phi.levels.emplace(n, std::move(m));
  }
  ChainMap psi;
  psi.src = X;
  psi.dst = M;
  for (int n = X.lo; n <= X.hi; ++n) {
    auto inv = solve(phi.levels.at(n), Mat::identity(F, X.dim(n)));
    if (!inv) throw Error("Internal", "splitting is not an isomorphism");
    psi.levels.emplace(n, std::move(*inv));
  }
  out.model = M;
  out.to_x = phi;
  out.from_x = psi;
  return out;
}

ChainComplex truncate_nonneg(const ChainComplex& X) {
  const FieldSpec& F = X.F;
  if (X.lo >= 0) return X;
  ChainComplex T;
  T.F = F;
  T.lo = 0;
  T.hi = std::max(X.hi, 0);
  Mat Z0 = rref_kernel_image(X.diff(0)).kernel_basis;  // Z_0 = ker d_0
  T.dims_[0] = Z0.cols();
  for (int n = 1; n <= T.hi; ++n) T.dims_[n] = X.dim(n);
  for (int n = 2; n <= T.hi; ++n) T.d_.emplace(n, X.diff(n));
  if (T.hi >= 1) {
    auto d1 = solve(Z0, X.diff(1));  // d_1 lands in cycles
    if (!d1) throw Error("Internal", "truncation corestriction failed");
    T.d_.emplace(1, std::move(*d1));
  }
  return T;
}

ChainMap inverse_map(const ChainMap& f) {
  ChainMap g;
  g.src = f.dst;
  g.dst = f.src;
  int lo = std::min(f.src.lo, f.dst.lo), hi = std::max(f.src.hi, f.dst.hi);
  for (int n = lo; n <= hi; ++n) {
    if (f.src.dim(n) != f.dst.dim(n))
      throw Error("NotInvertible", "dimension mismatch at degree " + std::to_string(n));
    if (f.src.dim(n).is_zero()) continue;
    auto inv = solve(f.level(n), Mat::identity(f.src.F, f.src.dim(n)));
    if (!inv || !(f.level(n).mul(*inv) == Mat::identity(f.src.F, f.src.dim(n))) ||
        !(inv->mul(f.level(n)) == Mat::identity(f.src.F, f.src.dim(n))))
      throw Error("NotInvertible", "singular level at degree " + std::to_string(n));
    g.levels.emplace(n, std::move(*inv));
  }
  return g;
}

ChainMap corestrict(const ChainMap& incl, const ChainMap& f) {
  ChainMap g;
  g.src = f.src;
  g.dst = incl.src;
  int lo = std::min(f.src.lo, incl.src.lo), hi = std::max(f.src.hi, incl.src.hi);
  for (int n = lo; n <= hi; ++n) {
    if (f.src.dim(n).is_zero()) continue;
    auto s = solve(incl.level(n), f.level(n));
    if (!s || !(incl.level(n).mul(*s) == f.level(n)))
      throw Error("NotCorestrictable",
                  "map does not factor through the inclusion at degree " + std::to_string(n));
    g.levels.emplace(n, std::move(*s));
  }
  return g;
}

}  // namespace homalg

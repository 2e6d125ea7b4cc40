#include "homalg/factor.hpp"

#include <algorithm>

namespace homalg {

namespace {

Dims entrywise_product(const Dims& a, const Dims& b) {
  Dims p;
  for (size_t f = 0; f < a.v.size(); ++f) p.v.push_back(a.v[f] * b.v[f]);
  return p;
}

// Column-major vectorization, per factor: entry (i,j) lands at row j·r + i.
Mat vec_of(const Mat& m) {
  const FieldSpec& F = m.field();
  Mat v(F, entrywise_product(m.rows(), m.cols()), Dims::uniform(F, 1));
  for (int f = 0; f < F.nf(); ++f)
    for (int j = 0; j < m.cols().at(f); ++j)
      for (int i = 0; i < m.rows().at(f); ++i)
        v.set(f, j * m.rows().at(f) + i, 0, m.get(f, i, j));
  return v;
}

Mat unvec(const Mat& v, const Dims& r, const Dims& c) {
  const FieldSpec& F = v.field();
  Mat m(F, r, c);
  for (int f = 0; f < F.nf(); ++f)
    for (int j = 0; j < c.at(f); ++j)
      for (int i = 0; i < r.at(f); ++i) m.set(f, i, j, v.get(f, j * r.at(f) + i, 0));
  return m;
}

}  // namespace

Factorization factor_cofib_qtower(const ChainMap& f) {
  const ChainComplex &X = f.src, &Y = f.dst;
  const FieldSpec& F = X.F;
  SplitDecomposition sd = split_decompose(X);

  // per-degree block widths of the splitting model, reconstructed from the table
  std::map<int, Dims> hdim, bdim;  // sphere width at n; disk width at n (= B_{n-1})
  for (const Summand& s : sd.summands) (s.is_disk ? bdim : hdim)[s.degree] = s.dim;
  auto h = [&](int n) { return hdim.count(n) ? hdim[n] : Dims::zero(F); };
  auto bd = [&](int n) { return bdim.count(n) ? bdim[n] : Dims::zero(F); };

  // Z = one disk per summand; track each disk's row offsets inside Z
  ChainComplex Z = zero_complex(F);
  struct DiskRec {
    int degree;
    Dims dim;
    std::map<int, Dims> off;  // offsets of this disk's degrees inside Z
  };
  std::vector<DiskRec> disks;
  for (const Summand& s : sd.summands) {
    int dg = s.is_disk ? s.degree : s.degree + 1;
    DiskRec rec{dg, s.dim, {}};
    rec.off[dg] = Z.dim(dg);
    rec.off[dg - 1] = Z.dim(dg - 1);
    disks.push_back(rec);
    Z = direct_sum(Z, disk(F, s.dim, dg));
  }

  // model -> Z: sphere block at degree n sits at model columns [0, h(n)) and
  // goes to the bottom of its D^{n+1}; disk blocks map identically.
  ChainMap m2z;
  m2z.src = sd.model;
  m2z.dst = Z;
  for (int n = sd.model.lo; n <= sd.model.hi; ++n)
    m2z.levels.emplace(n, Mat(F, Z.dim(n), sd.model.dim(n)));
  size_t di = 0;
  for (const Summand& s : sd.summands) {
    const DiskRec& rec = disks[di++];
    int n = s.degree;
    if (!s.is_disk) {
      add_block(m2z.levels.at(n), rec.off.at(n), Dims::zero(F), Mat::identity(F, s.dim));
    } else {
      add_block(m2z.levels.at(n), rec.off.at(n), h(n), Mat::identity(F, s.dim));
      Dims coff = h(n - 1) + bd(n - 1);  // the model's bottom block at degree n-1
      add_block(m2z.levels.at(n - 1), rec.off.at(n - 1), coff, Mat::identity(F, s.dim));
    }
  }
  validate_chain_map(m2z);
  ChainMap iota = compose(m2z, sd.from_x);

  Factorization out;
  out.middle = direct_sum(Z, Y);
  out.first.src = X;
  out.first.dst = out.middle;
  for (int n = std::min(X.lo, out.middle.lo); n <= std::max(X.hi, out.middle.hi); ++n)
    out.first.levels.emplace(n, iota.level(n).vstack(f.level(n)));
  validate_chain_map(out.first);
  out.second = proj_second(Z, Y);

  // tower: drop disks one at a time, last added first
  ChainComplex cur = Z;
  for (size_t k = disks.size(); k-- > 0;) {
    ChainComplex prevZ = zero_complex(F);
    for (size_t t = 0; t < k; ++t) prevZ = direct_sum(prevZ, disk(F, disks[t].dim, disks[t].degree));
    TowerStage st;
    st.kind = StageKind::DiskCollapse;
    st.degree = disks[k].degree;
    st.vdim = disks[k].dim;
    ChainMap dropZ = proj_first(prevZ, disk(F, disks[k].dim, disks[k].degree));
    st.proj = map_direct_sum(dropZ, identity_map(Y));
    out.stages.push_back(st);
    cur = prevZ;
  }
  return out;
}

FnStep fn_step(const ChainMap& j, int n) {
  const ChainComplex &X = j.src, &Y = j.dst;
  const FieldSpec& F = X.F;
  int lo = std::min(X.lo, Y.lo), hi = std::max(X.hi, Y.hi);
  for (int i = lo; i <= hi; ++i) {
    if (rref_kernel_image(j.level(i)).rank != X.dim(i))
      throw Error("PreconditionViolated", "not levelwise injective at degree " + std::to_string(i));
    Mat hm = homology_map(j, i);
    if (rref_kernel_image(hm).rank != hm.cols())
      throw Error("PreconditionViolated",
                  "not injective on homology at degree " + std::to_string(i));
  }

  HomologyData HY = homology(Y, n);
  Cokernel ck = cokernel(homology_map(j, n));

  FnStep out;
  out.vdim = ck.dim;
  if (ck.dim.is_zero()) {
    out.fy = Y;
    out.fj = j;
    out.fp = identity_map(Y);
    out.attach = zero_map(Y, sphere(F, ck.dim, n));
    return out;
  }

  // homology coordinates that kill boundaries and the non-cycle complement
  Mat phi = HY.cycle_reps.hstack(HY.sigma).hstack(HY.boundaries);
  Mat hcoord = solve(phi, Mat::identity(F, Y.dim(n)))->row_slice(Dims::zero(F), HY.dim);
  Mat gn = ck.projection.mul(hcoord);  // Y_n -> V, vanishes on boundaries

  out.attach.src = Y;
  out.attach.dst = sphere(F, ck.dim, n);
  out.attach.levels.emplace(n, gn);
  validate_chain_map(out.attach);

  Pullback P = pullback(out.attach, disk_to_sphere(F, ck.dim, n));
  out.fy = P.P;
  out.fp = P.p1;

  // the cone map into the disk: level n is g∘j, level n-1 solves κ∘d = g∘j
  Mat gj = gn.mul(j.level(n));
  auto kt = solve(X.diff(n).transpose(), gj.transpose());
  if (!kt) throw Error("Internal", "attaching composite does not kill cycles");
  ChainMap v;
  v.src = X;
  v.dst = P.g.src;  // disk(V, n)
  v.levels.emplace(n, gj);
  v.levels.emplace(n - 1, kt->transpose());
  validate_chain_map(v);
  out.fj = P.mediate(j, v);
  return out;
}

Factorization factor_acyclic_cofib_postnikov(const ChainMap& f) {
  const ChainComplex &X = f.src, &Y = f.dst;
  const FieldSpec& F = X.F;

  Factorization out;
  ChainComplex M0 = direct_sum(X, Y);
  ChainMap j;
  j.src = X;
  j.dst = M0;
  for (int n = std::min(X.lo, M0.lo); n <= std::max(X.hi, M0.hi); ++n)
    j.levels.emplace(n, Mat::identity(F, X.dim(n)).vstack(f.level(n)));
  validate_chain_map(j);

  TowerStage st0;
  st0.kind = StageKind::InitialProduct;
  st0.vdim = Dims::zero(F);
  st0.proj = proj_second(X, Y);
  out.stages.push_back(st0);

  int lo = std::min(X.lo, Y.lo), hi = std::max(X.hi, Y.hi);
  for (int n = lo; n <= hi; ++n) {
    FnStep step = fn_step(j, n);
    if (step.vdim.is_zero()) continue;
    TowerStage st;
    st.kind = StageKind::SphereAttach;
    st.degree = n;
    st.vdim = step.vdim;
    st.attach = step.attach;
    st.proj = step.fp;
    out.stages.insert(out.stages.begin(), st);
    j = step.fj;
  }

  out.middle = j.dst;
  out.first = j;
  ChainMap second = out.stages.front().proj;
  for (size_t t = 1; t < out.stages.size(); ++t) second = compose(out.stages[t].proj, second);
  out.second = second;
  return out;
}

std::optional<ChainMap> solve_lift(const ChainMap& i, const ChainMap& p, const ChainMap& top,
                                   const ChainMap& bottom) {
  if (!(compose(p, top) == compose(bottom, i)))
    throw Error("BadSquare", "lifting square does not commute");
  const ChainComplex &A = i.src, &B = i.dst, &E = p.src, &T = p.dst;
  const FieldSpec& F = A.F;
  int lo = std::min(B.lo, E.lo), hi = std::max(B.hi, E.hi);

  // unknowns: vec(L_n) for each degree, column offsets per factor
  std::map<int, Dims> coff;
  Dims total_cols = Dims::zero(F);
  for (int n = lo; n <= hi; ++n) {
    coff[n] = total_cols;
    total_cols = total_cols + entrywise_product(E.dim(n), B.dim(n));
  }

  // count equation rows: L·i = top, p·L = bottom, d·L = L·d
  Dims total_rows = Dims::zero(F);
  for (int n = lo; n <= hi; ++n) {
    total_rows = total_rows + entrywise_product(E.dim(n), A.dim(n));
    total_rows = total_rows + entrywise_product(T.dim(n), B.dim(n));
    if (n > lo) total_rows = total_rows + entrywise_product(E.dim(n - 1), B.dim(n));
  }

  Mat M(F, total_rows, total_cols);
  Mat rhs(F, total_rows, Dims::uniform(F, 1));
  Dims roff = Dims::zero(F);
  auto emit = [&](const Dims& height, const Mat& lhs_block, const Dims& col,
                  const Mat* rhs_block) {
    add_block(M, roff, col, lhs_block);
    if (rhs_block) add_block(rhs, roff, Dims::zero(F), vec_of(*rhs_block));
    roff = roff + height;
  };
  for (int n = lo; n <= hi; ++n) {
    Dims hgt = entrywise_product(E.dim(n), A.dim(n));
    Mat topn = top.level(n);
    emit(hgt, i.level(n).transpose().kron(Mat::identity(F, E.dim(n))), coff[n], &topn);

    hgt = entrywise_product(T.dim(n), B.dim(n));
    Mat botn = bottom.level(n);
    emit(hgt, Mat::identity(F, B.dim(n)).kron(p.level(n)), coff[n], &botn);

    if (n > lo) {
      hgt = entrywise_product(E.dim(n - 1), B.dim(n));
      Dims save = roff;
      add_block(M, roff, coff[n], Mat::identity(F, B.dim(n)).kron(E.diff(n)));
      add_block(M, roff, coff[n - 1], B.diff(n).transpose().kron(Mat::identity(F, E.dim(n - 1))).neg());
      roff = save + hgt;
    }
  }

  auto x = solve(M, rhs);
  if (!x) return std::nullopt;
  ChainMap l;
  l.src = B;
  l.dst = E;
  for (int n = lo; n <= hi; ++n) {
    Mat xn = x->row_slice(coff[n], entrywise_product(E.dim(n), B.dim(n)));
    l.levels.emplace(n, unvec(xn, E.dim(n), B.dim(n)));
  }
  validate_chain_map(l);
  return l;
}

}  // namespace homalg

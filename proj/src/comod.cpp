#include "homalg/comod.hpp"

#include <climits>

namespace homalg {

namespace {

void check_same_coalgebra(const DGCoalgebra& a, const DGCoalgebra& b) {
  if (!(a.carrier == b.carrier) || !(a.delta == b.delta) || !(a.epsilon == b.epsilon))
    throw Error("CoalgebraMismatch", "comodules live over different coalgebras");
}

// degreewise kernel of a chain map, with the corestricted differential and the
// corestricted cofree-side coaction pulled back through the inclusion
struct DegreewiseKernel {
  ChainComplex E;
  ChainMap inclusion;
};
// Degrees above hi_cut are forced to zero: callers pass the level bound when
// the ambient map is only a chain map inside the trustworthy window.
DegreewiseKernel degreewise_kernel(const ChainMap& f, int hi_cut = INT_MAX) {
  const ChainComplex& X = f.src;
  const FieldSpec& F = X.F;
  std::map<int, Mat> K;
  std::map<int, Dims> dims;
  std::map<int, Mat> diffs;
  for (int n = X.lo; n <= X.hi; ++n) {
    K.emplace(n, n <= hi_cut ? rref_kernel_image(f.level(n)).kernel_basis
                             : Mat(F, X.dim(n), Dims::zero(F)));
    dims[n] = K.at(n).cols();
  }
  for (int n = X.lo + 1; n <= X.hi; ++n) {
    auto d = solve(K.at(n - 1), X.diff(n).mul(K.at(n)));
    if (!d) throw Error("Internal", "kernel is not a subcomplex");
    diffs.emplace(n, std::move(*d));
  }
  DegreewiseKernel out;
  out.E = make_complex(F, X.lo, X.hi, dims, diffs);
  out.inclusion.src = out.E;
  out.inclusion.dst = X;
  for (int n = X.lo; n <= X.hi; ++n) out.inclusion.levels.emplace(n, K.at(n));
  return out;
}

}  // namespace

ComoduleReport validate_comodule(const DGComodule& X) {
  const ChainComplex& M = X.carrier;
  const DGCoalgebra& C = X.coalgebra;
  ComoduleReport r;
  try {
    validate_chain_map(X.rho);
    r.chain_map = X.rho.src == M && X.rho.dst == tensor(M, C.carrier);
  } catch (const Error&) {
    r.chain_map = false;
  }
  if (!r.chain_map) return r;
  ChainMap id = identity_map(M);
  ChainMap lhs = compose(associator(M, C.carrier, C.carrier),
                         compose(tensor_map(X.rho, identity_map(C.carrier)), X.rho));
  ChainMap rhs = compose(tensor_map(id, C.delta), X.rho);
  r.coassociative = lhs == rhs;
  r.counital = compose(right_unitor(M), compose(tensor_map(id, C.epsilon), X.rho)) == id;
  return r;
}

DGComoduleMap make_comodule_map(DGComodule src, DGComodule dst, ChainMap f) {
  check_same_coalgebra(src.coalgebra, dst.coalgebra);
  validate_chain_map(f);
  if (!(f.src == src.carrier) || !(f.dst == dst.carrier))
    throw Error("ShapeMismatch", "map endpoints do not match the comodule carriers");
  ChainMap lhs = compose(tensor_map(f, identity_map(src.coalgebra.carrier)), src.rho);
  ChainMap rhs = compose(dst.rho, f);
  if (!(lhs == rhs)) throw Error("NotComoduleMap", "coaction square does not commute");
  DGComoduleMap m;
  m.src = std::move(src);
  m.dst = std::move(dst);
  m.map = std::move(f);
  return m;
}

DGComodule trivial_comodule(const DGCoalgebra& C, const ChainComplex& M) {
  const FieldSpec& F = M.F;
  ChainMap eta;  // the grouplike 𝕜 -> C
  eta.src = unit_complex(F);
  eta.dst = C.carrier;
  Mat e(F, C.carrier.dim(0), Dims::uniform(F, 1));
  e.set_int(0, 0, 1);
  eta.levels.emplace(0, std::move(e));
  DGComodule X;
  X.coalgebra = C;
  X.carrier = M;
  X.rho = compose(tensor_map(identity_map(M), eta), inverse_map(right_unitor(M)));
  return X;
}

DGComodule cofree_comodule(const DGCoalgebra& C, const ChainComplex& M) {
  DGComodule X;
  X.coalgebra = C;
  X.carrier = tensor(M, C.carrier);
  X.rho = compose(inverse_map(associator(M, C.carrier, C.carrier)),
                  tensor_map(identity_map(M), C.delta));
  return X;
}

ChainMap cofree_counit(const DGCoalgebra& C, const ChainComplex& M) {
  return compose(right_unitor(M), tensor_map(identity_map(M), C.epsilon));
}

DGComoduleMap cofree_extend(const DGComodule& W, const ChainMap& g) {
  ChainMap ext = compose(tensor_map(g, identity_map(W.coalgebra.carrier)), W.rho);
  return make_comodule_map(W, cofree_comodule(W.coalgebra, g.dst), ext);
}

DGComodule coalgebra_as_comodule(const DGCoalgebra& C) {
  DGComodule X;
  X.coalgebra = C;
  X.carrier = C.carrier;
  X.rho = C.delta;
  return X;
}

DGComodule comodule_direct_sum(const DGComodule& X, const DGComodule& Y) {
  check_same_coalgebra(X.coalgebra, Y.coalgebra);
  const ChainComplex& Cc = X.coalgebra.carrier;
  ChainMap idc = identity_map(Cc);
  DGComodule Z;
  Z.coalgebra = X.coalgebra;
  Z.carrier = direct_sum(X.carrier, Y.carrier);
  ChainMap left = compose(tensor_map(incl_first(X.carrier, Y.carrier), idc),
                          compose(X.rho, proj_first(X.carrier, Y.carrier)));
  ChainMap right = compose(tensor_map(incl_second(X.carrier, Y.carrier), idc),
                           compose(Y.rho, proj_second(X.carrier, Y.carrier)));
  Z.rho = map_add(left, right);
  return Z;
}

DGComodule zero_comodule(const DGCoalgebra& C) {
  DGComodule X;
  X.coalgebra = C;
  X.carrier = zero_complex(C.carrier.F);
  X.rho = zero_map(X.carrier, tensor(X.carrier, C.carrier));
  return X;
}

ComoduleKernel comodule_kernel(const DGComoduleMap& g) {
  DegreewiseKernel k = degreewise_kernel(g.map);
  ComoduleKernel out;
  out.inclusion = k.inclusion;
  out.comodule.coalgebra = g.src.coalgebra;
  out.comodule.carrier = k.E;
  ChainMap idc = identity_map(g.src.coalgebra.carrier);
  out.comodule.rho =
      corestrict(tensor_map(k.inclusion, idc), compose(g.src.rho, k.inclusion));
  return out;
}

Cotensor cotensor(const DGComodule& X, const DGComodule& Y) {
  check_same_coalgebra(X.coalgebra, Y.coalgebra);
  const DGCoalgebra& C = X.coalgebra;
  if (!validate_coalgebra(C).cocommutative)
    throw Error("NotCocommutative", "the cotensor product needs a cocommutative coalgebra");
  const ChainComplex &Xc = X.carrier, &Yc = Y.carrier, &Cc = C.carrier;
  ChainMap a = compose(associator(Xc, Cc, Yc), tensor_map(X.rho, identity_map(Yc)));
  ChainMap b = tensor_map(identity_map(Xc), compose(twist(Yc, Cc), Y.rho));
  DegreewiseKernel k = degreewise_kernel(map_sub(a, b));
  Cotensor out;
  out.inclusion = k.inclusion;
  out.comodule.coalgebra = C;
  out.comodule.carrier = k.E;
  ChainMap amb = compose(inverse_map(associator(Xc, Yc, Cc)),
                         compose(tensor_map(identity_map(Xc), Y.rho), k.inclusion));
  out.comodule.rho = corestrict(tensor_map(k.inclusion, identity_map(Cc)), amb);
  return out;
}

DGComoduleMap cotensor_map(const DGComodule& X, const DGComoduleMap& g, const Cotensor& XY,
                           const Cotensor& XZ) {
  ChainMap m = corestrict(XZ.inclusion,
                          compose(tensor_map(identity_map(X.carrier), g.map), XY.inclusion));
  return make_comodule_map(XY.comodule, XZ.comodule, m);
}

CotensorUnit cotensor_unit(const DGComodule& X) {
  const DGCoalgebra& C = X.coalgebra;
  CotensorUnit u;
  u.ct = cotensor(X, coalgebra_as_comodule(C));
  ChainMap to = compose(cofree_counit(C, X.carrier), u.ct.inclusion);
  ChainMap from = corestrict(u.ct.inclusion, X.rho);
  u.to_x = make_comodule_map(u.ct.comodule, X, to);
  u.from_x = make_comodule_map(X, u.ct.comodule, from);
  return u;
}

CofreeCotensor cofree_cotensor(const ChainComplex& M, const DGComodule& Y) {
  const DGCoalgebra& C = Y.coalgebra;
  const ChainComplex &Cc = C.carrier, &Yc = Y.carrier;
  CofreeCotensor r;
  r.ct = cotensor(cofree_comodule(C, M), Y);
  r.to_tensor = compose(tensor_map(cofree_counit(C, M), identity_map(Yc)), r.ct.inclusion);
  ChainMap w =
      compose(inverse_map(associator(M, Cc, Yc)),
              tensor_map(identity_map(M), compose(twist(Yc, Cc), Y.rho)));
  r.from_tensor = corestrict(r.ct.inclusion, w);
  return r;
}

// --- simplicial comodules ----------------------------------------------------

ComoduleReport validate_simplicial_comodule(const SimplicialComodule& X) {
  const FieldSpec& F = X.carrier.normal.F;
  int bound = X.carrier.level_bound;
  ComoduleReport r;
  r.coassociative = r.counital = r.chain_map = true;
  for (int n = 0; n <= bound; ++n) {
    LevelData lx = structure_maps(X.carrier, n);
    LevelData ld = structure_maps(X.coalgebra.carrier, n);
    const Mat& rho = X.rho.at(n);
    Mat idx = Mat::identity(F, lx.dim), idd = Mat::identity(F, ld.dim);
    if (!(rho.kron(idd).mul(rho) == idx.kron(X.coalgebra.delta.at(n)).mul(rho)))
      r.coassociative = false;
    if (!(idx.kron(X.coalgebra.epsilon.at(n)).mul(rho) == idx)) r.counital = false;
    if (n >= 1) {
      const Mat& prev = X.rho.at(n - 1);
      for (int i = 0; i <= n; ++i)
        if (!(lx.d[i].kron(ld.d[i]).mul(rho) == prev.mul(lx.d[i]))) r.chain_map = false;
    }
    if (n < bound) {
      const Mat& next = X.rho.at(n + 1);
      for (int i = 0; i <= n; ++i)
        if (!(lx.s[i].kron(ld.s[i]).mul(rho) == next.mul(lx.s[i]))) r.chain_map = false;
    }
  }
  return r;
}

bool is_simplicial_comodule_map(const SimplicialComoduleMap& f) {
  int bound = std::min(f.src.carrier.level_bound, f.dst.carrier.level_bound);
  for (int n = 0; n <= bound; ++n) {
    LevelData la = structure_maps(f.src.carrier, n);
    LevelData lb = structure_maps(f.dst.carrier, n);
    LevelData ld = structure_maps(f.src.coalgebra.carrier, n);
    const Mat& fn = f.levels.at(n);
    if (n >= 1)
      for (int i = 0; i <= n; ++i)
        if (!(lb.d[i].mul(fn) == f.levels.at(n - 1).mul(la.d[i]))) return false;
    if (n < bound)
      for (int i = 0; i <= n; ++i)
        if (!(lb.s[i].mul(fn) == f.levels.at(n + 1).mul(la.s[i]))) return false;
    Mat idd = Mat::identity(fn.field(), ld.dim);
    if (!(fn.kron(idd).mul(f.src.rho.at(n)) == f.dst.rho.at(n).mul(fn))) return false;
  }
  return true;
}

SimplicialComodule simplicial_coalgebra_as_comodule(const SimplicialCoalgebra& D) {
  SimplicialComodule X;
  X.coalgebra = D;
  X.carrier = D.carrier;
  X.rho = D.delta;
  return X;
}

SimplicialCofree simplicial_cofree(const SimplicialCoalgebra& D, const SimplicialModule& M) {
  const FieldSpec& F = M.normal.F;
  SimplicialCofree r;
  r.T = levelwise_tensor(M, D.carrier);
  r.comodule.coalgebra = D;
  r.comodule.carrier = r.T.product;
  int bound = r.T.product.level_bound;
  for (int n = 0; n <= bound; ++n) {
    Mat iso = tensor_level_iso(M, D.carrier, r.T, n);
    auto inv = solve(iso, Mat::identity(F, iso.rows()));
    if (!inv) throw Error("Internal", "tensor level identification is not invertible");
    Mat idm = Mat::identity(F, level_dim(M, n));
    Mat idd = Mat::identity(F, level_dim(D.carrier, n));
    r.comodule.rho.emplace(n, inv->kron(idd).mul(idm.kron(D.delta.at(n))).mul(iso));
    r.iso.push_back(iso);
    r.iso_inv.push_back(std::move(*inv));
  }
  return r;
}

SimplicialComodule gamma_comodule(const DGComodule& X, int level_bound) {
  SimplicialComodule G;
  G.coalgebra = gamma_coalgebra(X.coalgebra, level_bound);
  G.carrier = gamma(X.carrier, level_bound);
  LevelTensor T = levelwise_tensor(G.carrier, G.coalgebra.carrier);
  ChainMap g = compose(eilenberg_zilber(G.carrier, G.coalgebra.carrier, T), X.rho);
  for (int n = 0; n <= level_bound; ++n) {
    Mat iso = tensor_level_iso(G.carrier, G.coalgebra.carrier, T, n);
    G.rho.emplace(n, iso.mul(gamma_map_level(G.carrier, T.product, g, n)));
  }
  return G;
}

NComodule n_comodule(const SimplicialComodule& X, const DGCoalgebra& C,
                     bool truncate_at_bound) {
  if (!(normalize(X.coalgebra.carrier) == C.carrier))
    throw Error("CoalgebraMismatch", "the simplicial coalgebra is not Γ of the given one");
  const ChainComplex& NX = X.carrier.normal;
  const ChainComplex& Cc = C.carrier;
  const SimplicialModule& GC = X.coalgebra.carrier;
  LevelTensor T = levelwise_tensor(X.carrier, GC);
  NComodule out;
  out.nrho.src = NX;
  out.nrho.dst = T.product.normal;
  for (int p = 0; p <= std::min(X.carrier.level_bound, NX.hi); ++p) {
    if (NX.dim(p).is_zero()) continue;
    out.nrho.levels.emplace(
        p, T.proj.at(p).mul(X.rho.at(p)).mul(normal_inclusion(X.carrier, p)));
  }
  validate_chain_map(out.nrho);
  ChainMap idc = identity_map(Cc);
  ChainMap a = tensor_map(out.nrho, idc);
  ChainMap ez = eilenberg_zilber(X.carrier, GC, T);
  ChainMap b = compose(tensor_map(ez, idc),
                       compose(inverse_map(associator(NX, Cc, Cc)),
                               tensor_map(identity_map(NX), C.delta)));
  DegreewiseKernel k = degreewise_kernel(
      map_sub(a, b), truncate_at_bound ? X.carrier.level_bound : INT_MAX);
  out.inclusion = k.inclusion;
  out.comodule.coalgebra = C;
  out.comodule.carrier = k.E;
  out.comodule.rho = corestrict(tensor_map(k.inclusion, idc),
                                compose(cofree_comodule(C, NX).rho, k.inclusion));
  return out;
}

DGComoduleMap dk_unit(const DGComodule& X, const NComodule& N) {
  ChainMap u = corestrict(N.inclusion, X.rho);
  return make_comodule_map(X, N.comodule, u);
}

SimplicialComoduleMap counit_map(const SimplicialComodule& X, const DGCoalgebra& C) {
  const FieldSpec& F = X.carrier.normal.F;
  int bound = X.carrier.level_bound;
  // Truncate the equalizer above the level bound: for bound-saturated carriers
  // the ambient comparison maps are only chain maps inside the trustworthy
  // window, and the counit below only reads degrees <= bound anyway.
  NComodule n = n_comodule(X, C, true);
  const SimplicialModule& GC = X.coalgebra.carrier;
  LevelTensor T = levelwise_tensor(X.carrier, GC);
  ChainMap ez = eilenberg_zilber(X.carrier, GC, T);
  SimplicialModule gE = gamma(n.comodule.carrier, bound);
  SimplicialModule gNXC = gamma(tensor(X.carrier.normal, C.carrier), bound);
  SimplicialComoduleMap eps;
  eps.src = gamma_comodule(n.comodule, bound);
  eps.dst = X;
  for (int m = 0; m <= bound; ++m) {
    Mat idx = Mat::identity(F, level_dim(X.carrier, m));
    Mat level = idx.kron(X.coalgebra.epsilon.at(m))
                    .mul(tensor_level_iso(X.carrier, GC, T, m))
                    .mul(gamma_map_level(gNXC, T.product, ez, m))
                    .mul(gamma_map_level(gE, gNXC, n.inclusion, m));
    eps.levels.emplace(m, std::move(level));
  }
  return eps;
}

SimplicialCotensor simplicial_cotensor(const SimplicialComodule& X,
                                       const SimplicialComodule& Y) {
  const FieldSpec& F = X.carrier.normal.F;
  if (!(X.coalgebra.delta == Y.coalgebra.delta) ||
      !(X.coalgebra.carrier.normal == Y.coalgebra.carrier.normal))
    throw Error("CoalgebraMismatch", "comodules live over different coalgebras");
  if (!validate_simplicial_coalgebra(X.coalgebra).cocommutative)
    throw Error("NotCocommutative", "the cotensor product needs a cocommutative coalgebra");
  int bound = std::min(X.carrier.level_bound, Y.carrier.level_bound);
  LevelwiseObject E;
  E.F = F;
  E.bound = bound;
  E.dim.resize(bound + 1);
  E.d.resize(bound + 1);
  E.s.resize(bound + 1);
  std::vector<Mat> K(bound + 1);
  std::vector<LevelData> lx(bound + 1), ly(bound + 1), ld(bound + 1);
  for (int n = 0; n <= bound; ++n) {
    lx[n] = structure_maps(X.carrier, n);
    ly[n] = structure_maps(Y.carrier, n);
    ld[n] = structure_maps(X.coalgebra.carrier, n);
    Mat idx = Mat::identity(F, lx[n].dim), idy = Mat::identity(F, ly[n].dim);
    Mat left = X.rho.at(n).kron(idy);
    Mat right = idx.kron(level_swap(F, ly[n].dim, ld[n].dim).mul(Y.rho.at(n)));
    K[n] = rref_kernel_image(left.sub(right)).kernel_basis;
    E.dim[n] = K[n].cols();
  }
  for (int n = 1; n <= bound; ++n)
    for (int i = 0; i <= n; ++i) {
      auto f = solve(K[n - 1], lx[n].d[i].kron(ly[n].d[i]).mul(K[n]));
      if (!f) throw Error("Internal", "cotensor face does not corestrict");
      E.d[n].push_back(std::move(*f));
    }
  for (int n = 0; n < bound; ++n)
    for (int i = 0; i <= n; ++i) {
      auto f = solve(K[n + 1], lx[n].s[i].kron(ly[n].s[i]).mul(K[n]));
      if (!f) throw Error("Internal", "cotensor degeneracy does not corestrict");
      E.s[n].push_back(std::move(*f));
    }
  NormalizedPresentation NP = normalize_levelwise(E);
  SimplicialCotensor out;
  out.comodule.coalgebra = X.coalgebra;
  out.comodule.carrier = NP.module;
  for (int n = 0; n <= bound; ++n) {
    Mat idx = Mat::identity(F, lx[n].dim);
    Mat idd = Mat::identity(F, ld[n].dim);
    auto rhoK = solve(K[n].kron(idd), idx.kron(Y.rho.at(n)).mul(K[n]));
    if (!rhoK) throw Error("Internal", "cotensor coaction does not corestrict");
    out.comodule.rho.emplace(
        n, NP.from_level[n].kron(idd).mul(*rhoK).mul(NP.to_level[n]));
    out.inclusion.push_back(K[n].mul(NP.to_level[n]));
  }
  return out;
}

DGComoduleMap comonoidal_map(const SimplicialComodule& X, const SimplicialComodule& Y,
                             const DGCoalgebra& C) {
  const ChainComplex& Cc = C.carrier;
  const int bound = X.carrier.level_bound;
  NComodule nX = n_comodule(X, C, true);
  NComodule nY = n_comodule(Y, C, true);
  Cotensor D = cotensor(nX.comodule, nY.comodule);
  // truncate the dg cotensor to the trustworthy window as well, so that both
  // sides of the comparison are zero above the level bound
  if (D.comodule.carrier.hi > bound) {
    const ChainComplex& Dc = D.comodule.carrier;
    std::map<int, Dims> tdims;
    std::map<int, Mat> tdiffs;
    for (int n = Dc.lo; n <= bound; ++n) {
      tdims[n] = Dc.dim(n);
      if (n > Dc.lo) tdiffs.emplace(n, Dc.diff(n));
    }
    ChainComplex Dt = make_complex(Dc.F, Dc.lo, bound, std::move(tdims), std::move(tdiffs));
    std::map<int, Mat> incl, rl;
    for (int n = Dt.lo; n <= bound; ++n) {
      incl.emplace(n, D.inclusion.level(n));
      rl.emplace(n, D.comodule.rho.level(n));
    }
    D.inclusion = make_chain_map(Dt, D.inclusion.dst, std::move(incl));
    ChainComplex Tt = tensor(Dt, C.carrier);
    D.comodule.carrier = Dt;
    D.comodule.rho = make_chain_map(Dt, Tt, std::move(rl));
  }
  SimplicialCotensor sc = simplicial_cotensor(X, Y);
  NComodule nT = n_comodule(sc.comodule, C, true);
  const ChainComplex& NXc = X.carrier.normal;
  const ChainComplex& NYc = Y.carrier.normal;
  LevelTensor TXY = levelwise_tensor(X.carrier, Y.carrier);
  ChainMap ez = eilenberg_zilber(X.carrier, Y.carrier, TXY);
  // the normalized inclusion of the levelwise cotensor into X ⊗_level Y
  ChainMap nu;
  nu.src = sc.comodule.carrier.normal;
  nu.dst = TXY.product.normal;
  for (int p = 0; p <= sc.comodule.carrier.level_bound; ++p) {
    if (nu.src.dim(p).is_zero()) continue;
    nu.levels.emplace(
        p, TXY.proj.at(p).mul(sc.inclusion[p]).mul(normal_inclusion(sc.comodule.carrier, p)));
  }
  validate_chain_map(nu);
  ChainMap phi_y = compose(cofree_counit(C, NYc), nY.inclusion);
  ChainMap h = compose(
      tensor_map(ez, identity_map(Cc)),
      compose(inverse_map(associator(NXc, NYc, Cc)),
              compose(tensor_map(identity_map(NXc), twist(Cc, NYc)),
                      compose(associator(NXc, Cc, NYc),
                              compose(tensor_map(nX.inclusion, phi_y), D.inclusion)))));
  ChainMap target_incl = compose(tensor_map(nu, identity_map(Cc)), nT.inclusion);
  ChainMap m = corestrict(target_incl, h);
  return make_comodule_map(D.comodule, nT.comodule, m);
}

}  // namespace homalg

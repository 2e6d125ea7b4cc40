#include "homalg/coalg.hpp"

namespace homalg {

namespace {
Dims entrywise_product(const Dims& a, const Dims& b) {
  Dims p;
  for (size_t f = 0; f < a.v.size(); ++f) p.v.push_back(a.v[f] * b.v[f]);
  return p;
}
}  // namespace

CoalgebraReport validate_coalgebra(const DGCoalgebra& C) {
  const ChainComplex& X = C.carrier;
  CoalgebraReport r;
  ChainMap id = identity_map(X);
  ChainMap dd_left = compose(tensor_map(C.delta, id), C.delta);   // -> (C⊗C)⊗C
  ChainMap dd_right = compose(tensor_map(id, C.delta), C.delta);  // -> C⊗(C⊗C)
  r.coassociative = compose(associator(X, X, X), dd_left) == dd_right;
  ChainMap left = compose(left_unitor(X), compose(tensor_map(C.epsilon, id), C.delta));
  ChainMap right = compose(right_unitor(X), compose(tensor_map(id, C.epsilon), C.delta));
  r.counital = left == id && right == id;
  r.cocommutative = compose(twist(X, X), C.delta) == C.delta;
  r.simply_connected = is_simply_connected(X);
  return r;
}

DGCoalgebra coalgebra_fixture(const std::string& name) {
  FieldSpec F = FieldSpec::rationals();
  if (name == "product-demo") F = FieldSpec({2, 3});
  if (name == "unit" || name == "C2" || name == "C2x4" || name == "product-demo") {
    DGCoalgebra C;
    std::map<int, Dims> dims{{0, Dims::uniform(F, 1)}};
    bool has2 = name != "unit", has4 = name == "C2x4";
    if (has2) dims[2] = Dims::uniform(F, 1);
    if (has4) dims[4] = Dims::uniform(F, 1);
    C.carrier = make_complex(F, 0, has4 ? 4 : (has2 ? 2 : 0), dims, {});
    ChainComplex T = tensor(C.carrier, C.carrier);
    C.delta.src = C.carrier;
    C.delta.dst = T;
    Mat d0(F, 1, 1);
    d0.set_int(0, 0, 1);
    C.delta.levels.emplace(0, d0);  // Δ(1) = 1⊗1
    if (has2) {
      // degree 2 of C⊗C: blocks 1⊗c then c⊗1
      Mat d2(F, T.dim(2), C.carrier.dim(2));
      d2.set_int(0, 0, 1);
      d2.set_int(1, 0, 1);
      C.delta.levels.emplace(2, d2);
    }
    if (has4) {
      // degree 4 of C⊗C: blocks 1⊗y, c⊗c, y⊗1
      Mat d4(F, T.dim(4), C.carrier.dim(4));
      d4.set_int(0, 0, 1);
      d4.set_int(1, 0, 1);
      d4.set_int(2, 0, 1);
      C.delta.levels.emplace(4, d4);
    }
    validate_chain_map(C.delta);
    C.epsilon.src = C.carrier;
    C.epsilon.dst = unit_complex(F);
    C.epsilon.levels.emplace(0, d0);
    return C;
  }
  throw Error("UnknownFixture", "no coalgebra fixture named " + name);
}

Mat gamma_map_level(const SimplicialModule& A, const SimplicialModule& B, const ChainMap& f,
                    int n) {
  const FieldSpec& F = A.normal.F;
  LevelData la = structure_maps(A, n), lb = structure_maps(B, n);
  Mat m(F, lb.dim, la.dim);
  for (size_t t = 0; t < la.blocks.size(); ++t) {
    int k = la.blocks[t].k;
    if (A.normal.dim(k).is_zero() || B.normal.dim(k).is_zero()) continue;
    add_block(m, lb.blocks[t].offset, la.blocks[t].offset, f.level(k));
  }
  return m;
}

Mat level_swap(const FieldSpec& F, const Dims& a, const Dims& b) {
  Mat s(F, entrywise_product(b, a), entrywise_product(a, b));
  for (int f = 0; f < F.nf(); ++f)
    for (int i = 0; i < a.at(f); ++i)
      for (int j = 0; j < b.at(f); ++j)
        s.set(f, j * a.at(f) + i, i * b.at(f) + j, Comp(1LL));
  return s;
}

SimplicialCoalgebra gamma_coalgebra(const DGCoalgebra& C, int level_bound) {
  const FieldSpec& F = C.carrier.F;
  SimplicialCoalgebra D;
  D.carrier = gamma(C.carrier, level_bound);
  LevelTensor T = levelwise_tensor(D.carrier, D.carrier);
  // the comonoidal mate: C --Δ--> C⊗C --EZ--> N(ΓC ⊗ ΓC), then Γ and the
  // canonical level identification Γ(N(ΓC⊗ΓC))_n ≅ ΓC_n ⊗ ΓC_n
  ChainMap g = compose(eilenberg_zilber(D.carrier, D.carrier, T), C.delta);
  SimplicialModule GNT = T.product;
  ChainMap eps_chain = C.epsilon;
  SimplicialModule unitS = gamma(unit_complex(F), level_bound);
  for (int n = 0; n <= level_bound; ++n) {
    Mat iso = tensor_level_iso(D.carrier, D.carrier, T, n);
    D.delta.emplace(n, iso.mul(gamma_map_level(D.carrier, GNT, g, n)));
    D.epsilon.emplace(n, gamma_map_level(D.carrier, unitS, eps_chain, n));
  }
  return D;
}

CoalgebraReport validate_simplicial_coalgebra(const SimplicialCoalgebra& D) {
  const FieldSpec& F = D.carrier.normal.F;
  CoalgebraReport r;
  r.coassociative = r.counital = r.cocommutative = true;
  for (auto& [n, dl] : D.delta) {
    Dims a = dl.cols();  // level dimension
    Mat lhs = dl.kron(Mat::identity(F, a)).mul(dl);
    Mat rhs = Mat::identity(F, a).kron(dl).mul(dl);
    if (!(lhs == rhs)) r.coassociative = false;
    const Mat& eps = D.epsilon.at(n);
    Mat lc = eps.kron(Mat::identity(F, a)).mul(dl);
    Mat rc = Mat::identity(F, a).kron(eps).mul(dl);
    if (!(lc == Mat::identity(F, a)) || !(rc == Mat::identity(F, a))) r.counital = false;
    if (!(level_swap(F, a, a).mul(dl) == dl)) r.cocommutative = false;
  }
  r.simply_connected = is_simply_connected(D.carrier.normal);
  return r;
}

}  // namespace homalg

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "homalg/chain.hpp"

using namespace homalg;

namespace {

const FieldSpec F2 = FieldSpec::fp(2);
const FieldSpec F3 = FieldSpec::fp(3);
const FieldSpec F5 = FieldSpec::fp(5);
const FieldSpec QQ = FieldSpec::rationals();
const FieldSpec F2x3 = FieldSpec({2, 3});

Mat random_mat(const FieldSpec& F, const Dims& r, const Dims& c, std::mt19937_64& rng) {
  Mat m(F, r, c);
  std::uniform_int_distribution<long long> d(-4, 4);
  for (int f = 0; f < F.nf(); ++f)
    for (int i = 0; i < r.at(f); ++i)
      for (int j = 0; j < c.at(f); ++j) m.set(f, i, j, Comp(d(rng)));
  return m;
}

// Random complex on window [lo,hi]: random dims, differentials built so that
// d∘d = 0 by composing a random map through a random middle stage is not
// guaranteed; instead pick d_{n} as B_n · C_n where the B/C split forces
// squares to vanish: choose subspace ranks and route through them.
ChainComplex random_complex(const FieldSpec& F, int lo, int hi, int maxdim,
                            std::mt19937_64& rng) {
  std::map<int, Dims> dims;
  for (int n = lo; n <= hi; ++n) {
    Dims d;
    for (int f = 0; f < F.nf(); ++f) d.v.push_back(static_cast<int>(rng() % (maxdim + 1)));
    dims[n] = d;
  }
  // d_n = s_{n-1} · t_n with t_n : X_n -> W_n and s_{n-1} : W_n -> X_{n-1},
  // where consecutive W's are hit through kernels: enforce d_{n-1} d_n = 0 by
  // projecting t onto ker(previous d).
  std::map<int, Mat> d;
  Mat prev_kernel;  // basis of ker d_{n-1} in X_{n-1}, built as we go up
  for (int n = lo; n <= hi; ++n) {
    if (n == lo) {
      prev_kernel = Mat::identity(F, dims[lo]);
      continue;
    }
    // target of d_n must land inside ker d_{n-1} = columns of prev_kernel
    Dims w = prev_kernel.cols();
    Mat coeff = random_mat(F, w, dims[n], rng);
    Mat dn = prev_kernel.mul(coeff);
    d.emplace(n, dn);
    prev_kernel = rref_kernel_image(dn).kernel_basis;
  }
  return make_complex(F, lo, hi, std::move(dims), std::move(d));
}

}  // namespace

TEST_CASE("make_complex: unit, D^1, and a non-complex is rejected") {
  ChainComplex U = unit_complex(QQ);
  CHECK(U.dim(0) == Dims::uniform(QQ, 1));
  CHECK(U.dim(1).is_zero());

  Mat one(QQ, 1, 1);
  one.set_int(0, 0, 1);
  ChainComplex D1 = make_complex_uniform(QQ, {{0, 1}, {1, 1}}, {{1, one}});
  CHECK(D1 == disk(QQ, Dims::uniform(QQ, 1), 1));

  CHECK_THROWS_WITH_AS(
      (void)make_complex_uniform(QQ, {{0, 1}, {1, 1}, {2, 1}}, {{1, one}, {2, one}}),
      doctest::Contains("degree 2"), Error);
}

TEST_CASE("sphere/disk homology and the kernel of disk_to_sphere") {
  for (const FieldSpec& F : {F2, QQ, F2x3}) {
    ChainComplex S2 = sphere(F, Dims::uniform(F, 1), 2);
    CHECK(homology(S2, 2).dim == Dims::uniform(F, 1));
    for (int i : {0, 1, 3}) CHECK(homology(S2, i).dim.is_zero());

    ChainComplex D3 = disk(F, Dims::uniform(F, 1), 3);
    CHECK(is_acyclic(D3));

    // kernel of disk_to_sphere(𝕜,3) is 𝕜 in degree 2
    ChainMap q = disk_to_sphere(F, Dims::uniform(F, 1), 3);
    Mat k3 = rref_kernel_image(q.level(3)).kernel_basis;
    Mat k2 = rref_kernel_image(q.level(2)).kernel_basis;
    CHECK(k3.cols().is_zero());
    CHECK(k2.cols() == Dims::uniform(F, 1));
  }
}

TEST_CASE("homology dims obey the rank formula on random complexes") {
  std::mt19937_64 rng(42);
  for (const FieldSpec& F : {F3, QQ, F2x3}) {
    for (int t = 0; t < 10; ++t) {
      ChainComplex X = random_complex(F, -1, 4, 4, rng);
      for (int n = -1; n <= 4; ++n) {
        HomologyData H = homology(X, n);
        Dims rn = rref_kernel_image(X.diff(n)).rank;
        Dims rn1 = rref_kernel_image(X.diff(n + 1)).rank;
        for (int f = 0; f < F.nf(); ++f)
          CHECK(H.dim.at(f) == X.dim(n).at(f) - rn.at(f) - rn1.at(f));
        // representatives are cycles and classify is a left inverse
        CHECK(X.diff(n).mul(H.cycle_reps).is_zero());
        CHECK(H.classify.mul(H.cycle_reps) == Mat::identity(F, H.dim));
        // classify kills boundaries
        CHECK(H.classify.mul(H.boundaries).is_zero());
        // sigma maps onto a complement of cycles: d ∘ sigma has full rank
        CHECK(rref_kernel_image(X.diff(n).mul(H.sigma)).rank == H.sigma.cols());
      }
    }
  }
}

TEST_CASE("chain map validation and homology functoriality") {
  std::mt19937_64 rng(7);
  ChainComplex S1 = sphere(F5, Dims::uniform(F5, 1), 1);
  ChainComplex D1 = disk(F5, Dims::uniform(F5, 1), 1);
  // a non-commuting square is rejected
  Mat one(F5, 1, 1);
  one.set_int(0, 0, 1);
  CHECK_THROWS_AS((void)make_chain_map(D1, S1, {{1, one}, {0, one}}), Error);
  // the legitimate quotient map passes
  ChainMap q = make_chain_map(D1, S1, {{1, one}});
  validate_chain_map(q);
  // H_1 of the quotient map is zero (disk is acyclic)
  CHECK(homology_map(q, 1).is_zero());

  // identity is a quasi-iso; quotient disk -> sphere is not
  ChainComplex X = random_complex(QQ, 0, 3, 3, rng);
  CHECK(is_quasi_iso(identity_map(X)).quasi_iso);
  CHECK(!is_quasi_iso(q).quasi_iso);
}

TEST_CASE("direct sums: inclusions/projections and homology additivity") {
  std::mt19937_64 rng(99);
  ChainComplex X = random_complex(F2, 0, 3, 3, rng);
  ChainComplex Y = random_complex(F2, 1, 4, 3, rng);
  ChainComplex S = direct_sum(X, Y);
  validate_chain_map(incl_first(X, Y));
  validate_chain_map(incl_second(X, Y));
  CHECK(compose(proj_first(X, Y), incl_first(X, Y)) == identity_map(X));
  CHECK(compose(proj_second(X, Y), incl_second(X, Y)) == identity_map(Y));
  CHECK(compose(proj_first(X, Y), incl_second(X, Y)).level(2).is_zero());
  for (int n = 0; n <= 4; ++n) {
    Dims hs = homology(S, n).dim;
    Dims hx = homology(X, n).dim, hy = homology(Y, n).dim;
    CHECK(hs == hx + hy);
  }
}

TEST_CASE("tensor: spheres multiply, Koszul sign, disks stay acyclic") {
  for (const FieldSpec& F : {F3, QQ}) {
    ChainComplex S2 = sphere(F, Dims::uniform(F, 1), 2);
    ChainComplex S3 = sphere(F, Dims::uniform(F, 1), 3);
    ChainComplex T = tensor(S2, S3);
    CHECK(T.dim(5) == Dims::uniform(F, 1));
    CHECK(homology(T, 5).dim == Dims::uniform(F, 1));
    CHECK(T.total_dim() == Dims::uniform(F, 1));

    // x, y both in degree 1: d(x⊗y) = dx⊗y − x⊗dy
    ChainComplex D = disk(F, Dims::uniform(F, 1), 1);  // x in degree 1, dx in 0
    ChainComplex TT = tensor(D, D);
    // degree 2 = x⊗y; degree 1 basis = (dx⊗y, x⊗dy) in ascending left degree
    Mat d2 = TT.diff(2);
    Scalar a = d2.get_scalar(0, 0), b = d2.get_scalar(1, 0);
    CHECK(a == Scalar::one(F));
    CHECK(b == Scalar::from_int(F, -1));

    CHECK(is_acyclic(TT));  // disk ⊗ disk is acyclic
  }
}

TEST_CASE("tensor_map, associator, twist, unitors are chain maps with expected inverses") {
  std::mt19937_64 rng(2024);
  for (const FieldSpec& F : {F5, F2x3}) {
    ChainComplex X = random_complex(F, 0, 2, 2, rng);
    ChainComplex Y = random_complex(F, 0, 2, 2, rng);
    ChainComplex Z = random_complex(F, 0, 1, 2, rng);

    ChainMap a = associator(X, Y, Z);
    validate_chain_map(a);
    CHECK(is_mono(a));
    CHECK(is_epi(a));

    ChainMap t = twist(X, Y), t2 = twist(Y, X);
    validate_chain_map(t);
    CHECK(compose(t2, t) == identity_map(tensor(X, Y)));

    validate_chain_map(left_unitor(X));
    validate_chain_map(right_unitor(X));
    CHECK(left_unitor(X).src == X);
    CHECK(right_unitor(X).src == X);

    ChainMap idX = identity_map(X), idY = identity_map(Y);
    CHECK(tensor_map(idX, idY) == identity_map(tensor(X, Y)));
  }
}

TEST_CASE("twist sign on odd-odd degrees") {
  ChainComplex S1 = sphere(QQ, Dims::uniform(QQ, 1), 1);
  ChainMap t = twist(S1, S1);
  CHECK(t.level(2).get_scalar(0, 0) == Scalar::from_int(QQ, -1));
  ChainComplex S2 = sphere(QQ, Dims::uniform(QQ, 1), 2);
  CHECK(twist(S1, S2).level(3).get_scalar(0, 0) == Scalar::one(QQ));
}

TEST_CASE("pullback: identity legs, disk attachment, zero attachment") {
  std::mt19937_64 rng(11);
  ChainComplex X = random_complex(QQ, 0, 3, 3, rng);
  // pullback of X -> X <- X along identities is X (up to canonical iso)
  Pullback P = pullback(identity_map(X), identity_map(X));
  CHECK(is_quasi_iso(P.p1).quasi_iso);
  for (int n = 0; n <= 3; ++n) CHECK(P.P.dim(n) == X.dim(n));

  // sphere along disk_to_sphere gives the disk
  ChainComplex S2 = sphere(F3, Dims::uniform(F3, 1), 2);
  Pullback Q = pullback(identity_map(S2), disk_to_sphere(F3, Dims::uniform(F3, 1), 2));
  CHECK(Q.P.dim(2) == Dims::uniform(F3, 1));
  CHECK(Q.P.dim(1) == Dims::uniform(F3, 1));
  CHECK(is_acyclic(Q.P));

  // trivial attaching module: P ≅ X
  ChainComplex Z0 = zero_complex(QQ);
  Pullback R = pullback(zero_map(X, Z0), zero_map(Z0, Z0));
  for (int n = 0; n <= 3; ++n) CHECK(R.P.dim(n) == X.dim(n));
}

TEST_CASE("pullback along a disk attachment kills H_n by ker(H_n(f))") {
  // X with H_2 = 𝕜², f: X -> S²(𝕜) picking out one homology coordinate;
  // pulling back along D²->S² leaves H_i unchanged for i ≠ 2 and
  // H_2(P) = ker H_2(f), which has dim 1.
  const FieldSpec& F = QQ;
  ChainComplex X = sphere(F, Dims::uniform(F, 2), 2);
  ChainComplex S = sphere(F, Dims::uniform(F, 1), 2);
  Mat f2(F, 1, 2);
  f2.set_int(0, 0, 1);
  ChainMap f = make_chain_map(X, S, {{2, f2}});
  Pullback P = pullback(f, disk_to_sphere(F, Dims::uniform(F, 1), 2));
  CHECK(homology(P.P, 2).dim == Dims::uniform(F, 1));
  CHECK(homology(P.P, 1).dim.is_zero());

  // universal property: the cone (id restricted to the kernel line, zero) mediates
  ChainComplex W = sphere(F, Dims::uniform(F, 1), 2);
  Mat u2(F, 2, 1);
  u2.set_int(1, 0, 1);  // lands in ker f
  ChainMap u = make_chain_map(W, X, {{2, u2}});
  ChainMap v = zero_map(W, P.g.src);
  ChainMap m = P.mediate(u, v);
  CHECK(compose(P.p1, m) == u);
  CHECK(compose(P.p2, m) == v);
}

TEST_CASE("split_decompose: spheres, disks, and random complexes") {
  ChainComplex S2 = sphere(F2, Dims::uniform(F2, 1), 2);
  SplitDecomposition s = split_decompose(S2);
  REQUIRE(s.summands.size() == 1);
  CHECK(!s.summands[0].is_disk);
  CHECK(s.summands[0].degree == 2);
  CHECK(s.model == S2);

  ChainComplex D3 = disk(QQ, Dims::uniform(QQ, 1), 3);
  SplitDecomposition sd = split_decompose(D3);
  REQUIRE(sd.summands.size() == 1);
  CHECK(sd.summands[0].is_disk);
  CHECK(sd.summands[0].degree == 3);

  std::mt19937_64 rng(31337);
  for (const FieldSpec& F : {F2, F3, F5, QQ, F2x3}) {
    for (int t = 0; t < 8; ++t) {
      ChainComplex X = random_complex(F, 0, 4, 4, rng);
      SplitDecomposition d = split_decompose(X);
      validate_chain_map(d.to_x);
      validate_chain_map(d.from_x);
      CHECK(compose(d.from_x, d.to_x) == identity_map(d.model));
      CHECK(compose(d.to_x, d.from_x) == identity_map(X));
      // summand table matches homology / boundary ranks
      for (const Summand& sm : d.summands) {
        if (sm.is_disk) {
          Dims b = rref_kernel_image(X.diff(sm.degree)).rank;
          CHECK(sm.dim == b);
        } else {
          CHECK(sm.dim == homology(X, sm.degree).dim);
        }
      }
    }
  }
}

TEST_CASE("truncate_nonneg") {
  std::mt19937_64 rng(606);
  // non-negative input is unchanged
  ChainComplex X = random_complex(F3, 0, 3, 3, rng);
  CHECK(truncate_nonneg(X) == X);

  // disk(𝕜,0) truncates to the zero complex
  ChainComplex D0 = disk(QQ, Dims::uniform(QQ, 1), 0);
  CHECK(truncate_nonneg(D0).is_zero_object());

  // H_i preserved for i ≥ 0 on random windows [-3,3]
  for (const FieldSpec& F : {F2, QQ, F2x3}) {
    for (int t = 0; t < 6; ++t) {
      ChainComplex Y = random_complex(F, -3, 3, 3, rng);
      ChainComplex T = truncate_nonneg(Y);
      for (int n = -2; n < 0; ++n) CHECK(T.dim(n).is_zero());
      for (int n = 0; n <= 3; ++n) CHECK(homology(T, n).dim == homology(Y, n).dim);
    }
  }
}

TEST_CASE("product-field coherence: homology over F_2xF_3 matches per-factor runs") {
  std::mt19937_64 rng(808);
  for (int t = 0; t < 6; ++t) {
    auto seed = rng();
    std::mt19937_64 r1(seed), r2(seed), r3(seed);
    ChainComplex X = random_complex(F2x3, 0, 4, 3, r1);
    // rebuild each factor complex from the product's blocks
    for (int fi = 0; fi < 2; ++fi) {
      FieldSpec Ff = FieldSpec::fp(fi == 0 ? 2 : 3);
      std::map<int, Dims> dims;
      std::map<int, Mat> d;
      for (int n = X.lo; n <= X.hi; ++n) {
        dims[n] = Dims::uniform(Ff, X.dim(n).at(fi));
        if (n > X.lo) {
          Mat m(Ff, X.dim(n - 1).at(fi), X.dim(n).at(fi));
          for (int i = 0; i < X.dim(n - 1).at(fi); ++i)
            for (int j = 0; j < X.dim(n).at(fi); ++j) m.set(0, i, j, X.diff(n).get(fi, i, j));
          d.emplace(n, std::move(m));
        }
      }
      ChainComplex Xi = make_complex(Ff, X.lo, X.hi, std::move(dims), std::move(d));
      for (int n = 0; n <= 4; ++n)
        CHECK(homology(X, n).dim.at(fi) == homology(Xi, n).dim.at(0));
    }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "homalg/simplicial.hpp"

using namespace homalg;

namespace {

const FieldSpec F2 = FieldSpec::fp(2);
const FieldSpec F3 = FieldSpec::fp(3);
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

ChainComplex random_complex(const FieldSpec& F, int lo, int hi, int maxdim,
                            std::mt19937_64& rng) {
  std::map<int, Dims> dims;
  for (int n = lo; n <= hi; ++n) {
    Dims d;
    for (int f = 0; f < F.nf(); ++f) d.v.push_back(static_cast<int>(rng() % (maxdim + 1)));
    dims[n] = d;
  }
  std::map<int, Mat> d;
  Mat prev_kernel;
  for (int n = lo; n <= hi; ++n) {
    if (n == lo) {
      prev_kernel = Mat::identity(F, dims[lo]);
      continue;
    }
    Mat dn = prev_kernel.mul(random_mat(F, prev_kernel.cols(), dims[n], rng));
    d.emplace(n, dn);
    prev_kernel = rref_kernel_image(dn).kernel_basis;
  }
  return make_complex(F, lo, hi, std::move(dims), std::move(d));
}

void check_simplicial_identities(const SimplicialModule& A, int maxlevel) {
  for (int n = 1; n <= maxlevel; ++n) {
    LevelData L = structure_maps(A, n);
    LevelData below = structure_maps(A, n - 1);
    // d_i d_j = d_{j-1} d_i for i < j (lands two levels down)
    if (n >= 2)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j <= n; ++j)
          CHECK(below.d.at(i).mul(L.d.at(j)) == below.d.at(j - 1).mul(L.d.at(i)));
    if (n >= 1 && !below.s.empty()) {
      // d_i s_j relations
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n - 1; ++j) {
          Mat lhs = L.d.at(i).mul(below.s.at(j));
          if (i == j || i == j + 1) {
            CHECK(lhs == Mat::identity(A.normal.F, below.dim));
          } else if (i < j) {
            Mat rhs = structure_maps(A, n - 2).s.at(j - 1).mul(below.d.at(i));
            CHECK(lhs == rhs);
          } else {
            Mat rhs = structure_maps(A, n - 2).s.at(j).mul(below.d.at(i - 1));
            CHECK(lhs == rhs);
          }
        }
    }
    // s_i s_j = s_{j+1} s_i for i <= j
    if (!L.s.empty() && n + 2 <= A.level_bound) {
      LevelData up = structure_maps(A, n + 1);
      for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
          CHECK(up.s.at(j + 1).mul(L.s.at(i)) == up.s.at(i).mul(L.s.at(j)));
    }
  }
}

}  // namespace

TEST_CASE("gamma of a degree-0 sphere is the constant module") {
  SimplicialModule A = gamma(sphere(QQ, Dims::uniform(QQ, 2), 0), 4);
  for (int n = 0; n <= 4; ++n) CHECK(level_dim(A, n) == Dims::uniform(QQ, 2));
  LevelData L = structure_maps(A, 2);
  for (const Mat& di : L.d) CHECK(di == Mat::identity(QQ, 2));
  for (const Mat& si : L.s) CHECK(si == Mat::identity(QQ, 2));
}

TEST_CASE("level dimension formula: dim K(k,1)_n = n; negative support rejected") {
  SimplicialModule K1 = eilenberg_maclane(F3, Dims::uniform(F3, 1), 1, 6);
  for (int n = 0; n <= 6; ++n) CHECK(level_dim(K1, n) == Dims::uniform(F3, n));
  CHECK_THROWS_AS((void)gamma(disk(QQ, Dims::uniform(QQ, 1), 0)), Error);
  CHECK_THROWS_AS((void)structure_maps(K1, 7), Error);
}

TEST_CASE("simplicial identities hold on K(k,n) and random gammas") {
  check_simplicial_identities(eilenberg_maclane(QQ, Dims::uniform(QQ, 1), 1, 4), 3);
  check_simplicial_identities(eilenberg_maclane(F2, Dims::uniform(F2, 1), 2, 4), 3);
  std::mt19937_64 rng(5);
  for (const FieldSpec& F : {F3, QQ, F2x3}) {
    for (int t = 0; t < 3; ++t) {
      SimplicialModule A = gamma(truncate_nonneg(random_complex(F, 0, 3, 2, rng)), 4);
      check_simplicial_identities(A, 3);
    }
  }
}

TEST_CASE("Moore complex recovers the normal differential; higher faces vanish on N") {
  std::mt19937_64 rng(6);
  SimplicialModule K1 = eilenberg_maclane(QQ, Dims::uniform(QQ, 1), 1, 4);
  // K(k,1) level 2: alternating face sum restricted to the normalized part is 0
  {
    LevelData L = structure_maps(K1, 2);
    Mat alt = L.d.at(0).sub(L.d.at(1)).add(L.d.at(2));
    Mat onN = normal_projection(K1, 1).mul(alt).mul(normal_inclusion(K1, 2));
    CHECK(onN.is_zero());
  }
  for (const FieldSpec& F : {F2, QQ, F2x3}) {
    for (int t = 0; t < 3; ++t) {
      SimplicialModule A = gamma(random_complex(F, 0, 3, 2, rng), 4);
      for (int n = 1; n <= 4; ++n) {
        LevelData L = structure_maps(A, n);
        Mat incl = normal_inclusion(A, n);
        for (int i = 1; i <= n; ++i) CHECK(L.d.at(i).mul(incl).is_zero());
        // d_0 restricted to N is the normal differential
        Mat d0 = normal_projection(A, n - 1).mul(L.d.at(0)).mul(incl);
        CHECK(d0 == A.normal.diff(n));
      }
    }
  }
}

TEST_CASE("homotopy groups") {
  SimplicialModule K2 = eilenberg_maclane(F2x3, Dims::uniform(F2x3, 2), 2, 5);
  CHECK(homotopy_group(K2, 2).dim == Dims::uniform(F2x3, 2));
  for (int i : {0, 1, 3, 4}) CHECK(homotopy_group(K2, i).dim.is_zero());
  std::mt19937_64 rng(7);
  ChainComplex X = random_complex(QQ, 0, 4, 3, rng);
  SimplicialModule A = gamma(X, 5);
  for (int n = 0; n <= 4; ++n) CHECK(homotopy_group(A, n).dim == homology(X, n).dim);
}

TEST_CASE("levelwise tensor: unit, K(k,1)^{⊗2}, homotopy invariance") {
  std::mt19937_64 rng(8);
  // constant k ⊗ A = A on the nose
  ChainComplex X = random_complex(F3, 0, 3, 2, rng);
  SimplicialModule unitS = gamma(unit_complex(F3), 5);
  SimplicialModule A = gamma(X, 5);
  LevelTensor T = levelwise_tensor(unitS, A);
  CHECK(T.product.normal == X);
  LevelTensor T2 = levelwise_tensor(A, unitS);
  for (int n = 0; n <= 3; ++n)
    CHECK(homotopy_group(T2.product, n).dim == homotopy_group(A, n).dim);

  // K(k,1) ⊗ K(k,1): normalized dims 0,1,2 in degrees 0,1,2; H_2 = k
  SimplicialModule K1 = eilenberg_maclane(QQ, Dims::uniform(QQ, 1), 1, 5);
  LevelTensor KK = levelwise_tensor(K1, K1);
  CHECK(KK.product.normal.dim(0).is_zero());
  CHECK(KK.product.normal.dim(1) == Dims::uniform(QQ, 1));
  CHECK(KK.product.normal.dim(2) == Dims::uniform(QQ, 2));
  CHECK(KK.product.normal.dim(3).is_zero());
  CHECK(homotopy_group(KK.product, 2).dim == Dims::uniform(QQ, 1));
  CHECK(homotopy_group(KK.product, 1).dim.is_zero());
  // level dimension of the product is the square
  for (int n = 0; n <= 4; ++n)
    CHECK(level_dim(KK.product, n) == Dims::uniform(QQ, n * n));
}

TEST_CASE("tensor level iso is invertible (Dold-Kan level decomposition)") {
  SimplicialModule K1 = eilenberg_maclane(F2, Dims::uniform(F2, 1), 1, 4);
  LevelTensor KK = levelwise_tensor(K1, K1);
  for (int n = 0; n <= 4; ++n) {
    Mat iso = tensor_level_iso(K1, K1, KK, n);
    CHECK(iso.rows() == iso.cols());
    CHECK(rref_kernel_image(iso).rank == iso.rows());
  }
}

TEST_CASE("Eilenberg-Zilber: explicit degree-2 shuffles on K(k,1)") {
  SimplicialModule K1 = eilenberg_maclane(QQ, Dims::uniform(QQ, 1), 1, 4);
  Mat ez0 = ez_level(K1, K1, 0);
  CHECK(ez0.rows().is_zero());  // K(k,1) is trivial at level 0
  Mat ez2 = ez_level(K1, K1, 2);
  // level 2 of K(k,1) has basis tags (0,0,1) then (0,1,1); the two (1,1)-
  // shuffles give s_1x⊗s_0y − s_0x⊗s_1y = e_{(0,1,1)}⊗e_{(0,0,1)} − e_{(0,0,1)}⊗e_{(0,1,1)}
  CHECK(ez2.rows() == Dims::uniform(QQ, 4));
  CHECK(ez2.cols() == Dims::uniform(QQ, 1));
  CHECK(ez2.get_scalar(2, 0) == Scalar::one(QQ));
  CHECK(ez2.get_scalar(1, 0) == Scalar::from_int(QQ, -1));
  CHECK(ez2.get_scalar(0, 0) == Scalar::zero(QQ));
  CHECK(ez2.get_scalar(3, 0) == Scalar::zero(QQ));
}

TEST_CASE("EZ and AW are chain maps with AW∘EZ = id") {
  std::mt19937_64 rng(9);
  for (const FieldSpec& F : {F2, QQ, F2x3}) {
    for (int t = 0; t < 2; ++t) {
      SimplicialModule A = gamma(random_complex(F, 0, 2, 2, rng), 5);
      SimplicialModule B = gamma(random_complex(F, 0, 2, 2, rng), 5);
      LevelTensor T = levelwise_tensor(A, B);
      ChainMap ez = eilenberg_zilber(A, B, T);
      ChainMap aw = alexander_whitney(A, B, T);
      validate_chain_map(ez);
      validate_chain_map(aw);
      CHECK(compose(aw, ez) == identity_map(tensor(A.normal, B.normal)));
      // both are quasi-isomorphisms on these bounded examples
      CHECK(is_quasi_iso(ez).quasi_iso);
    }
  }
}

TEST_CASE("EZ is symmetric up to the signed twist (small bidegrees)") {
  std::mt19937_64 rng(10);
  SimplicialModule A = gamma(random_complex(QQ, 0, 2, 2, rng), 4);
  SimplicialModule B = gamma(random_complex(QQ, 0, 2, 2, rng), 4);
  for (int n = 0; n <= 3; ++n) {
    // swap of the level space A_n⊗B_n -> B_n⊗A_n
    const FieldSpec& F = QQ;
    Dims da = level_dim(A, n), db = level_dim(B, n);
    Mat swap(F, da.at(0) * db.at(0), da.at(0) * db.at(0));
    for (int a = 0; a < da.at(0); ++a)
      for (int b = 0; b < db.at(0); ++b) swap.set(0, b * da.at(0) + a, a * db.at(0) + b, Comp(1LL));
    Mat lhs = swap.mul(ez_level(A, B, n));
    Mat rhs = ez_level(B, A, n).mul(twist(A.normal, B.normal).level(n));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("path object projects onto the Eilenberg-Mac Lane object") {
  PathObject P = path_object(F3, Dims::uniform(F3, 2), 2, 5);
  validate_chain_map(P.projection);
  // level dims: #surjections to [2] plus #surjections to [1], times 2
  for (int m = 0; m <= 4; ++m) {
    int s2 = 0, s1 = 0;
    for (const Tag& t : surjection_tags(m)) {
      if (t.back() == 2) ++s2;
      if (t.back() == 1) ++s1;
    }
    CHECK(level_dim(P.total, m) == Dims::uniform(F3, 2 * (s1 + s2)));
  }
  CHECK_THROWS_AS((void)path_object(F3, Dims::uniform(F3, 1), 0), Error);
  CHECK_THROWS_AS((void)eilenberg_maclane(F3, Dims::uniform(F3, 1), -1), Error);
}

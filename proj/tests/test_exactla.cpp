#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "homalg/matrix.hpp"

using namespace homalg;

namespace {

Mat random_mat(const FieldSpec& F, int r, int c, std::mt19937_64& rng) {
  Mat m(F, r, c);
  std::uniform_int_distribution<long long> d(-6, 6);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.set_int(i, j, d(rng));
  return m;
}

const FieldSpec F2 = FieldSpec::fp(2);
const FieldSpec F3 = FieldSpec::fp(3);
const FieldSpec F5 = FieldSpec::fp(5);
const FieldSpec QQ = FieldSpec::rationals();
const FieldSpec F2x3 = FieldSpec({2, 3});

}  // namespace

TEST_CASE("identity over F_5 has rank 3, kernel dim 0") {
  Mat I = Mat::identity(F5, 3);
  RKI r = rref_kernel_image(I);
  CHECK(r.rank == Dims::uniform(F5, 3));
  CHECK(r.kernel_basis.cols() == Dims::uniform(F5, 0));
  CHECK(r.image_basis == I);
}

TEST_CASE("2x3 zero matrix: rank 0, kernel dim 3") {
  Mat Z(QQ, 2, 3);
  RKI r = rref_kernel_image(Z);
  CHECK(r.rank == Dims::uniform(QQ, 0));
  CHECK(r.kernel_basis == Mat::identity(QQ, 3));
}

TEST_CASE("[[1,1],[1,1]] over F_2: rank 1, kernel {(1,1)}") {
  // Oracle: of the four vectors of F_2^2, exactly (0,0) and (1,1) are killed.
  Mat m(F2, 2, 2);
  m.set_int(0, 0, 1);
  m.set_int(0, 1, 1);
  m.set_int(1, 0, 1);
  m.set_int(1, 1, 1);
  RKI r = rref_kernel_image(m);
  CHECK(r.rank == Dims::uniform(F2, 1));
  Mat k(F2, 2, 1);
  k.set_int(0, 0, 1);
  k.set_int(1, 0, 1);
  CHECK(r.kernel_basis == k);
  CHECK(m.mul(r.kernel_basis).is_zero());
}

TEST_CASE("solve: identity returns b; [[1,1]] over F_3 gives x=(1,0); [[0]] over Q no solution") {
  Mat b(QQ, 3, 1);
  b.set_int(0, 0, 4);
  b.set_int(2, 0, -7);
  CHECK(*solve(Mat::identity(QQ, 3), b) == b);

  Mat m(F3, 1, 2);
  m.set_int(0, 0, 1);
  m.set_int(0, 1, 1);
  Mat rhs(F3, 1, 1);
  rhs.set_int(0, 0, 1);
  Mat x = *solve(m, rhs);
  Mat want(F3, 2, 1);
  want.set_int(0, 0, 1);
  CHECK(x == want);
  CHECK(m.mul(x) == rhs);

  Mat z(QQ, 1, 1);
  Mat one(QQ, 1, 1);
  one.set_int(0, 0, 1);
  CHECK(!solve(z, one).has_value());
}

TEST_CASE("section: projection F_2^3 -> F_2^2 and [1 1] over F_3") {
  Mat p(F2, 2, 3);
  p.set_int(0, 0, 1);
  p.set_int(1, 1, 1);
  Mat s = section(p);
  CHECK(p.mul(s) == Mat::identity(F2, 2));

  Mat m(F3, 1, 2);
  m.set_int(0, 0, 1);
  m.set_int(0, 1, 1);
  Mat s2 = section(m);
  CHECK(m.mul(s2) == Mat::identity(F3, 1));
  CHECK(std::get<long long>(s2.get(0, 0, 0)) == 1);
  CHECK(std::get<long long>(s2.get(0, 1, 0)) == 0);

  Mat notsur(F2, 2, 1);
  notsur.set_int(0, 0, 1);
  CHECK_THROWS_AS(section(notsur), Error);
}

TEST_CASE("retraction mirrors section") {
  Mat i(F3, 3, 2);  // coordinate inclusion
  i.set_int(0, 0, 1);
  i.set_int(1, 1, 1);
  Mat r = retraction(i);
  CHECK(r.mul(i) == Mat::identity(F3, 2));
  Mat notinj(F3, 1, 2);
  notinj.set_int(0, 0, 1);
  notinj.set_int(0, 1, 1);
  CHECK_THROWS_AS(retraction(notinj), Error);
}

TEST_CASE("cokernel: surjective, zero map, and [[1],[1]] over F_2") {
  CHECK(cokernel(Mat::identity(F5, 2)).dim == Dims::uniform(F5, 0));

  Cokernel c0 = cokernel(Mat(QQ, 2, 1));  // zero map k -> k^2
  CHECK(c0.dim == Dims::uniform(QQ, 2));
  CHECK(c0.projection == Mat::identity(QQ, 2));

  Mat m(F2, 2, 1);
  m.set_int(0, 0, 1);
  m.set_int(1, 0, 1);
  Cokernel c = cokernel(m);
  CHECK(c.dim == Dims::uniform(F2, 1));  // rank-nullity cross-check: 2 - 1
  CHECK(c.projection.mul(m).is_zero());
  RKI r = rref_kernel_image(c.projection);
  CHECK(r.rank == c.dim);
}

TEST_CASE("rank-nullity and section/retraction identities on random matrices") {
  std::mt19937_64 rng(12345);
  for (const FieldSpec& F : {F2, F3, F5, QQ, F2x3}) {
    for (int t = 0; t < 40; ++t) {
      int r = static_cast<int>(rng() % 5), c = static_cast<int>(rng() % 5);
      Mat m = random_mat(F, r, c, rng);
      RKI k = rref_kernel_image(m);
      for (int f = 0; f < F.nf(); ++f)
        CHECK(k.rank.at(f) + k.kernel_basis.cols().at(f) == c);
      CHECK(m.mul(k.kernel_basis).is_zero());
      // every column of m solves against the image basis
      CHECK(solve(k.image_basis, m).has_value());
      Cokernel ck = cokernel(m);
      CHECK(ck.projection.mul(m).is_zero());
      for (int f = 0; f < F.nf(); ++f) CHECK(ck.dim.at(f) == r - k.rank.at(f));
    }
  }
}

TEST_CASE("product field F_2xF_3 equals componentwise F_2 and F_3 runs") {
  std::mt19937_64 rng(777);
  for (int t = 0; t < 30; ++t) {
    int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
    Mat m(F2x3, r, c), m2(F2, r, c), m3(F3, r, c);
    std::uniform_int_distribution<long long> d(0, 29);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        long long v = d(rng);
        m.set_int(i, j, v);
        m2.set_int(i, j, v);
        m3.set_int(i, j, v);
      }
    RKI k = rref_kernel_image(m), k2 = rref_kernel_image(m2), k3 = rref_kernel_image(m3);
    CHECK(k.rank.at(0) == k2.rank.at(0));
    CHECK(k.rank.at(1) == k3.rank.at(0));
    CHECK(k.pivots[0] == k2.pivots[0]);
    CHECK(k.pivots[1] == k3.pivots[0]);
    // entrywise agreement of kernel bases
    for (int j = 0; j < k2.kernel_basis.cols().at(0); ++j)
      for (int i = 0; i < c; ++i)
        CHECK(std::get<long long>(k.kernel_basis.get(0, i, j)) ==
              std::get<long long>(k2.kernel_basis.get(0, i, j)));
    for (int j = 0; j < k3.kernel_basis.cols().at(0); ++j)
      for (int i = 0; i < c; ++i)
        CHECK(std::get<long long>(k.kernel_basis.get(1, i, j)) ==
              std::get<long long>(k3.kernel_basis.get(0, i, j)));
  }
}

TEST_CASE("determinism: repeated calls give identical output") {
  std::mt19937_64 rng(5);
  Mat m = random_mat(QQ, 4, 5, rng);
  RKI a = rref_kernel_image(m), b = rref_kernel_image(m);
  CHECK(a.kernel_basis == b.kernel_basis);
  CHECK(a.image_basis == b.image_basis);
  CHECK(a.rref == b.rref);
}

TEST_CASE("kron and slicing basics") {
  Mat a = Mat::identity(F3, 2);
  Mat b(F3, 1, 2);
  b.set_int(0, 0, 1);
  b.set_int(0, 1, 2);
  Mat k = a.kron(b);
  CHECK(k.rows() == Dims::uniform(F3, 2));
  CHECK(k.cols() == Dims::uniform(F3, 4));
  CHECK(std::get<long long>(k.get(0, 0, 1)) == 2);
  CHECK(std::get<long long>(k.get(0, 1, 3)) == 2);
  Mat top = k.row_slice(Dims::uniform(F3, 0), Dims::uniform(F3, 1));
  CHECK(std::get<long long>(top.get(0, 0, 0)) == 1);
}

#pragma once
// Scalars over a finite product of fields (prime fields F_p and the rationals).
// Every module over such a ring is a tuple of vector spaces, one per factor;
// all arithmetic is exact.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace homalg {

// Error with a stable machine-readable code ("NotAComplex", "NoSolution", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// A finite ordered product of base fields. factor == 0 encodes the rationals,
// otherwise the prime characteristic p.
struct FieldSpec {
  std::vector<long long> factors;

  FieldSpec() = default;
  explicit FieldSpec(std::vector<long long> f) : factors(std::move(f)) { validate(); }
  static FieldSpec fp(long long p) { return FieldSpec({p}); }
  static FieldSpec rationals() { return FieldSpec({0}); }

  int nf() const { return static_cast<int>(factors.size()); }
  bool is_rational(int i) const { return factors.at(i) == 0; }
  long long prime(int i) const { return factors.at(i); }

  void validate() const;
  bool operator==(const FieldSpec& o) const { return factors == o.factors; }
  bool operator!=(const FieldSpec& o) const { return !(*this == o); }
  std::string describe() const;
};

// One component of a scalar: a residue in [0,p) or an exact rational.
using Comp = std::variant<long long, mpq_class>;

// A scalar of a product field: one component per factor.
struct Scalar {
  std::vector<Comp> c;

  static Scalar zero(const FieldSpec& F);
  static Scalar one(const FieldSpec& F);
  static Scalar from_int(const FieldSpec& F, long long v);
  bool is_zero() const;
  bool operator==(const Scalar& o) const;
};

// Per-factor module dimensions (a 𝕜-module over a product is a tuple of spaces).
struct Dims {
  std::vector<int> v;  // one entry per factor

  Dims() = default;
  explicit Dims(std::vector<int> d) : v(std::move(d)) {}
  static Dims uniform(const FieldSpec& F, int n) {
    return Dims(std::vector<int>(F.nf(), n));
  }
  static Dims zero(const FieldSpec& F) { return uniform(F, 0); }
  int at(int f) const { return v.at(f); }
  bool is_zero() const {
    for (int d : v)
      if (d != 0) return false;
    return true;
  }
  bool uniform_value(int* out) const {
    if (v.empty()) return false;
    for (int d : v)
      if (d != v[0]) return false;
    if (out) *out = v[0];
    return true;
  }
  int max() const {
    int m = 0;
    for (int d : v) m = d > m ? d : m;
    return m;
  }
  Dims operator+(const Dims& o) const {
    Dims r = *this;
    for (size_t i = 0; i < v.size(); ++i) r.v[i] += o.v[i];
    return r;
  }
  bool operator==(const Dims& o) const { return v == o.v; }
  bool operator!=(const Dims& o) const { return v != o.v; }
};

long long mod_pow(long long b, long long e, long long p);
long long mod_inv(long long a, long long p);

}  // namespace homalg

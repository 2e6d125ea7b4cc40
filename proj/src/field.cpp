#include "homalg/field.hpp"

namespace homalg {

namespace {
bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}
}  // namespace

void FieldSpec::validate() const {
  if (factors.empty()) throw Error("BadField", "a field spec needs at least one factor");
  for (long long p : factors) {
    if (p == 0) continue;  // rationals
    if (!is_prime(p)) throw Error("BadField", "characteristic " + std::to_string(p) + " is not prime");
    if (p > (1LL << 31)) throw Error("BadField", "prime too large");
  }
}

std::string FieldSpec::describe() const {
  std::string s;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) s += " x ";
    s += factors[i] == 0 ? "Q" : "F_" + std::to_string(factors[i]);
  }
  return s;
}

Scalar Scalar::zero(const FieldSpec& F) { return from_int(F, 0); }
Scalar Scalar::one(const FieldSpec& F) { return from_int(F, 1); }

Scalar Scalar::from_int(const FieldSpec& F, long long v) {
  Scalar s;
  s.c.reserve(F.nf());
  for (int i = 0; i < F.nf(); ++i) {
    if (F.is_rational(i))
      s.c.emplace_back(mpq_class(static_cast<long>(v)));
    else
      s.c.emplace_back(((v % F.prime(i)) + F.prime(i)) % F.prime(i));
  }
  return s;
}

bool Scalar::is_zero() const {
  for (const Comp& x : c) {
    if (std::holds_alternative<long long>(x)) {
      if (std::get<long long>(x) != 0) return false;
    } else if (std::get<mpq_class>(x) != 0) {
      return false;
    }
  }
  return true;
}

bool Scalar::operator==(const Scalar& o) const {
  if (c.size() != o.c.size()) return false;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i].index() != o.c[i].index()) return false;
    if (std::holds_alternative<long long>(c[i])) {
      if (std::get<long long>(c[i]) != std::get<long long>(o.c[i])) return false;
    } else if (std::get<mpq_class>(c[i]) != std::get<mpq_class>(o.c[i])) {
      return false;
    }
  }
  return true;
}

long long mod_pow(long long b, long long e, long long p) {
  long long r = 1 % p;
  b %= p;
  if (b < 0) b += p;
  while (e > 0) {
    if (e & 1) r = (__int128)r * b % p;
    b = (__int128)b * b % p;
    e >>= 1;
  }
  return r;
}

long long mod_inv(long long a, long long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) throw Error("DivisionByZero", "inverse of 0 mod " + std::to_string(p));
  return mod_pow(a, p - 2, p);
}

}  // namespace homalg

#include "bfly/gf2k.hpp"

#include <bit>
#include <numeric>

namespace bfly {

namespace {

constexpr unsigned kMinDegree = 2;
constexpr unsigned kMaxDegree = 16;

unsigned poly_degree(std::uint64_t p) { return 63u - std::countl_zero(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  const unsigned dm = poly_degree(m);
  while (a != 0 && poly_degree(a) >= dm) a ^= m << (poly_degree(a) - dm);
  return a;
}

}  // namespace

bool Field::is_irreducible(std::uint32_t poly, unsigned degree) {
  if (degree == 0 || (poly >> degree) != 1u) return false;
  // Trial division by every polynomial of degree 1..degree/2.
  for (std::uint64_t d = 2; d < (1ull << (degree / 2 + 1)); ++d)
    if (poly_mod(poly, d) == 0) return false;
  return true;
}

std::uint32_t Field::default_modulus(unsigned k) {
  if (k < kMinDegree || k > kMaxDegree)
    fail(errc::unsupported_degree, "field degree must be in [2,16], got " + std::to_string(k));
  // Constant term must be 1, so only odd candidates can be irreducible.
  for (std::uint32_t m = (1u << k) + 1;; m += 2)
    if (is_irreducible(m, k)) return m;
}

Field::Field(unsigned k, std::uint32_t modulus) : k_(k), modulus_(modulus) {
  if (k < kMinDegree || k > kMaxDegree)
    fail(errc::unsupported_degree, "field degree must be in [2,16], got " + std::to_string(k));
  if ((modulus >> k) != 1u)
    fail(errc::degree_mismatch, "modulus degree != k");
  if (!is_irreducible(modulus, k))
    fail(errc::reducible_modulus, "modulus is reducible");
  mask_ = (1u << k) - 1;
}

felem Field::mul(felem a, felem b) const {
  felem r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if ((a >> k_) & 1) a ^= modulus_;
  }
  return r;
}

felem Field::pow(felem a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  e %= order();
  felem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

felem Field::inv(felem a) const {
  if (a == 0) fail(errc::zero_inverse, "inverse of zero");
  return pow(a, order() - 1);
}

felem Field::frobenius(felem a, int j) const {
  unsigned r = static_cast<unsigned>(((j % static_cast<int>(k_)) + static_cast<int>(k_)) %
                                     static_cast<int>(k_));
  for (unsigned s = 0; s < r; ++s) a = mul(a, a);
  return a;
}

unsigned Field::trace(felem a) const {
  felem t = 0, x = a;
  for (unsigned j = 0; j < k_; ++j) {
    t ^= x;
    x = mul(x, x);
  }
  return t;  // always 0 or 1: trace lands in the prime subfield
}

std::uint64_t inverse_exponent(unsigned i, unsigned k) {
  if (k < 2 || k % 2 == 0 || i == 0 || std::gcd<std::uint64_t>(i, k) != 1)
    fail(errc::bad_parameters, "inverse_exponent requires k odd and gcd(i,k)=1");
  const std::uint64_t m = (1ull << k) - 1;
  std::uint64_t t = 0;
  for (unsigned j = 0; j <= (k - 1) / 2; ++j) t = (t + (1ull << (2ull * j * i % k))) % m;
  return t;
}

std::uint64_t mod_inverse(std::uint64_t e, std::uint64_t m) {
  // Extended Euclid on (e mod m, m), tracking only the coefficient of e.
  std::int64_t r0 = static_cast<std::int64_t>(m), r1 = static_cast<std::int64_t>(e % m);
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  if (r0 != 1) fail(errc::bad_parameters, "exponent not invertible modulo " + std::to_string(m));
  return static_cast<std::uint64_t>(((s0 % static_cast<std::int64_t>(m)) +
                                     static_cast<std::int64_t>(m)) %
                                    static_cast<std::int64_t>(m));
}

}  // namespace bfly

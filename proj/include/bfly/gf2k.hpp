#pragma once

#include <cstdint>

#include "bfly/errors.hpp"

namespace bfly {

// A k-bit pattern in polynomial basis: bit j is the coefficient of X^j.
using felem = std::uint32_t;

// GF(2^k) arithmetic, 2 <= k <= 16. Addition is XOR; multiplication is
// schoolbook carry-less with reduce-as-you-go against the modulus.
class Field {
public:
  explicit Field(unsigned k) : Field(k, default_modulus(k)) {}
  Field(unsigned k, std::uint32_t modulus);

  unsigned k() const { return k_; }
  std::uint32_t modulus() const { return modulus_; }
  felem mask() const { return mask_; }
  std::uint64_t order() const { return mask_; }  // |GF(2^k)*| = 2^k - 1
  std::uint32_t size() const { return mask_ + 1; }

  felem add(felem a, felem b) const { return a ^ b; }
  felem mul(felem a, felem b) const;
  // pow(0,0) = 1 by convention; exponents reduce mod 2^k-1 for nonzero bases.
  felem pow(felem a, std::uint64_t e) const;
  felem inv(felem a) const;
  felem frobenius(felem a, int j) const;  // a^(2^j), j taken mod k
  unsigned trace(felem a) const;

  // Lexicographically smallest irreducible polynomial of degree k.
  static std::uint32_t default_modulus(unsigned k);
  static bool is_irreducible(std::uint32_t poly, unsigned degree);

private:
  unsigned k_;
  std::uint32_t modulus_;
  felem mask_;
};

// Multiplicative inverse of 2^i + 1 mod 2^k - 1 via the closed form
// sum_{j=0}^{(k-1)/2} 2^{2ji mod k}; requires k odd and gcd(i, k) = 1.
std::uint64_t inverse_exponent(unsigned i, unsigned k);

// Extended-Euclid inverse of e mod m; BadParameters when gcd(e, m) != 1.
std::uint64_t mod_inverse(std::uint64_t e, std::uint64_t m);

}  // namespace bfly

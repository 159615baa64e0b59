#include <doctest.h>

#include <numeric>
#include <random>

#include "bfly/gf2k.hpp"
#include "oracles.hpp"

using namespace bfly;

TEST_CASE("default moduli are the expected irreducibles") {
  const std::pair<unsigned, std::uint32_t> expected[] = {
      {2, 0x7},  {3, 0xB},  {4, 0x13},  {5, 0x25},
      {6, 0x43}, {7, 0x83}, {8, 0x11B}, {9, 0x203},
  };
  for (const auto& [k, mod] : expected) {
    CHECK(Field::default_modulus(k) == mod);
    CHECK(Field::is_irreducible(mod, k));
    CHECK(Field(k).modulus() == mod);
    // nothing smaller of the same degree is irreducible
    for (std::uint32_t p = 1u << k; p < mod; ++p) CHECK_FALSE(Field::is_irreducible(p, k));
  }
}

TEST_CASE("irreducibility screens out factorable polynomials") {
  CHECK_FALSE(Field::is_irreducible(0x9, 3));   // x^3+1 = (x+1)(x^2+x+1)
  CHECK_FALSE(Field::is_irreducible(0xF, 3));   // x^3+x^2+x+1 = (x+1)^3
  CHECK_FALSE(Field::is_irreducible(0x11, 4));  // x^4+1 = (x+1)^4
  CHECK(Field::is_irreducible(0x19, 4));        // x^4+x^3+1
}

TEST_CASE("GF(8) worked examples") {
  const Field f(3);
  CHECK(f.mul(0b010, 0b010) == 0b100);
  CHECK(f.mul(0b011, 0b011) == 0b101);
  CHECK(f.pow(0b010, 3) == 0b011);
  CHECK(f.add(0b110, 0b011) == 0b101);
}

TEST_CASE("GF(4) inverse") {
  const Field f(2);
  CHECK(f.inv(0b10) == 0b11);
  CHECK(f.inv(0b11) == 0b10);
  CHECK(f.inv(1) == 1);
}

TEST_CASE("multiplication matches the long-division oracle") {
  for (unsigned k = 2; k <= 9; ++k) {
    const Field f(k);
    if (k <= 4) {
      for (felem a = 0; a <= f.mask(); ++a)
        for (felem b = 0; b <= f.mask(); ++b)
          CHECK(f.mul(a, b) == oracle::gf_mul(a, b, f.modulus(), k));
    } else {
      std::mt19937_64 rng(0xC0FFEE + k);
      for (int trial = 0; trial < 2000; ++trial) {
        const felem a = static_cast<felem>(rng() & f.mask());
        const felem b = static_cast<felem>(rng() & f.mask());
        CHECK(f.mul(a, b) == oracle::gf_mul(a, b, f.modulus(), k));
      }
    }
  }
}

TEST_CASE("field axioms hold on random triples") {
  for (unsigned k : {3u, 5u, 8u}) {
    const Field f(k);
    std::mt19937_64 rng(0xABCD + k);
    for (int trial = 0; trial < 500; ++trial) {
      const felem a = static_cast<felem>(rng() & f.mask());
      const felem b = static_cast<felem>(rng() & f.mask());
      const felem c = static_cast<felem>(rng() & f.mask());
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.mul(a, 1) == a);
      CHECK(f.mul(a, 0) == 0);
    }
  }
}

TEST_CASE("pow, inv, frobenius laws") {
  for (unsigned k = 2; k <= 9; ++k) {
    const Field f(k);
    for (felem a = 1; a <= f.mask(); ++a) {
      CHECK(f.mul(a, f.inv(a)) == 1);
      CHECK(f.pow(a, f.order()) == 1);       // Lagrange
      CHECK(f.pow(a, f.order() + 1) == a);   // exponent wraps mod 2^k-1
      CHECK(f.frobenius(a, 1) == f.mul(a, a));
      CHECK(f.frobenius(a, static_cast<int>(k)) == a);  // Frobenius order k
    }
    CHECK(f.pow(0, 0) == 1);
    CHECK(f.pow(0, 5) == 0);
    CHECK_THROWS_AS((void)f.inv(0), Error);
  }
}

TEST_CASE("pow matches repeated multiplication") {
  const Field f(5);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const felem a = static_cast<felem>(rng() & f.mask());
    const std::uint64_t e = rng() % 200;
    CHECK(f.pow(a, e) == oracle::gf_pow(a, e, f.modulus(), 5));
  }
}

TEST_CASE("frobenius is additive and fixes the prime subfield") {
  for (unsigned k : {3u, 7u}) {
    const Field f(k);
    for (felem a = 0; a <= f.mask(); ++a)
      for (felem b = 0; b <= f.mask(); ++b)
        CHECK(f.frobenius(f.add(a, b), 1) == f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
    CHECK(f.frobenius(0, 1) == 0);
    CHECK(f.frobenius(1, 1) == 1);
  }
}

TEST_CASE("trace is a balanced F2-linear functional invariant under frobenius") {
  for (unsigned k = 2; k <= 9; ++k) {
    const Field f(k);
    std::uint64_t zeros = 0;
    for (felem a = 0; a <= f.mask(); ++a) {
      const unsigned tr = f.trace(a);
      CHECK(tr <= 1);
      CHECK(f.trace(f.frobenius(a, 1)) == tr);
      if (tr == 0) ++zeros;
    }
    CHECK(zeros == (1ull << (k - 1)));
    if (k <= 5)
      for (felem a = 0; a <= f.mask(); ++a)
        for (felem b = 0; b <= f.mask(); ++b)
          CHECK(f.trace(f.add(a, b)) == (f.trace(a) ^ f.trace(b)));
  }
}

TEST_CASE("constructor rejects bad degrees and moduli") {
  CHECK_THROWS_AS(Field(1), Error);
  CHECK_THROWS_AS(Field(17), Error);
  CHECK_THROWS_AS(Field(3, 0x13), Error);  // degree-4 modulus for k=3
  CHECK_THROWS_AS(Field(3, 0x9), Error);   // reducible
  try {
    Field(3, 0x9);
  } catch (const Error& e) {
    CHECK(e.code() == errc::reducible_modulus);
  }
  try {
    Field(3, 0x13);
  } catch (const Error& e) {
    CHECK(e.code() == errc::degree_mismatch);
  }
}

TEST_CASE("alternate irreducible modulus yields a consistent field") {
  const Field f(4, 0x19);
  for (felem a = 1; a <= f.mask(); ++a) {
    CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.pow(a, 15) == 1);
  }
}

TEST_CASE("inverse_exponent pinned values and defining identity") {
  CHECK(inverse_exponent(1, 3) == 5);
  CHECK(inverse_exponent(1, 5) == 21);
  CHECK(inverse_exponent(2, 5) == 25);
  for (unsigned k : {3u, 5u, 7u, 9u}) {
    const std::uint64_t order = (1ull << k) - 1;
    for (unsigned i = 1; i < k; ++i) {
      if (std::gcd(i, k) != 1) continue;
      const std::uint64_t d = inverse_exponent(i, k);
      CHECK(((1ull << i) + 1) * d % order == 1);
      CHECK(d == mod_inverse((1ull << i) + 1, order));
    }
  }
}

TEST_CASE("inverse_exponent rejects broken hypotheses") {
  CHECK_THROWS_AS((void)inverse_exponent(1, 4), Error);  // even k
  CHECK_THROWS_AS((void)inverse_exponent(0, 5), Error);
  CHECK_THROWS_AS((void)inverse_exponent(3, 9), Error);  // gcd(3,9)=3
}

TEST_CASE("mod_inverse agrees with Euclid and rejects non-coprime input") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint64_t m = 3 + rng() % 100000;
    const std::uint64_t e = 1 + rng() % (m - 1);
    if (std::gcd(e, m) != 1) {
      CHECK_THROWS_AS((void)mod_inverse(e, m), Error);
    } else {
      CHECK(e * mod_inverse(e, m) % m == 1);
    }
  }
}

#pragma once

// Independent reference implementations the unit tests check the library
// against. Deliberately written with different algorithms than the library:
// wide carry-less multiply + long division instead of reduce-as-you-go,
// recursive Walsh transform instead of the iterative butterfly, and a
// full-table DDT instead of the rolling row histogram.

#include <cstdint>
#include <map>
#include <vector>

#include "bfly/vbf.hpp"

namespace oracle {

inline std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t acc = 0;
  for (unsigned j = 0; j < 32; ++j)
    if ((b >> j) & 1) acc ^= a << j;
  return acc;
}

inline std::uint32_t poly_reduce(std::uint64_t v, std::uint32_t modulus, unsigned k) {
  for (int d = 62; d >= static_cast<int>(k); --d)
    if ((v >> d) & 1) v ^= static_cast<std::uint64_t>(modulus) << (d - k);
  return static_cast<std::uint32_t>(v);
}

inline std::uint32_t gf_mul(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, unsigned k) {
  return poly_reduce(clmul(a, b), modulus, k);
}

inline std::uint32_t gf_pow(std::uint32_t a, std::uint64_t e, std::uint32_t modulus, unsigned k) {
  std::uint32_t acc = 1;
  for (std::uint64_t j = 0; j < e; ++j) acc = gf_mul(acc, a, modulus, k);
  return acc;
}

struct DdtResult {
  unsigned delta = 0;
  std::map<std::uint64_t, std::uint64_t> spectrum;
};

// Materializes the entire 2^n x 2^m table.
inline DdtResult ddt_brute(const bfly::Vbf& F) {
  const std::uint64_t N = F.size(), M = 1ull << F.m();
  std::vector<std::uint64_t> table(N * M, 0);
  for (std::uint64_t a = 1; a < N; ++a)
    for (std::uint64_t x = 0; x < N; ++x)
      ++table[a * M + (F[static_cast<std::uint32_t>(x)] ^
                       F[static_cast<std::uint32_t>(x ^ a)])];
  DdtResult r;
  for (std::uint64_t a = 1; a < N; ++a)
    for (std::uint64_t b = 0; b < M; ++b) {
      const std::uint64_t c = table[a * M + b];
      ++r.spectrum[c];
      if (c > r.delta) r.delta = static_cast<unsigned>(c);
    }
  return r;
}

inline int parity(std::uint32_t x) { return __builtin_parity(x); }

inline std::int64_t walsh_naive(const bfly::Vbf& F, std::uint32_t a, std::uint32_t b) {
  std::int64_t s = 0;
  for (std::uint32_t x = 0; x < F.size(); ++x)
    s += parity((a & x) ^ (b & F[x])) ? -1 : 1;
  return s;
}

// Recursive in-place Walsh-Hadamard transform.
inline void fwht_recursive(std::vector<std::int64_t>& v, std::size_t lo, std::size_t n) {
  if (n == 1) return;
  const std::size_t h = n / 2;
  fwht_recursive(v, lo, h);
  fwht_recursive(v, lo + h, h);
  for (std::size_t j = 0; j < h; ++j) {
    const std::int64_t a = v[lo + j], b = v[lo + h + j];
    v[lo + j] = a + b;
    v[lo + h + j] = a - b;
  }
}

// Walsh row W(., b) for one component mask b.
inline std::vector<std::int64_t> walsh_row(const bfly::Vbf& F, std::uint32_t b) {
  std::vector<std::int64_t> v(F.size());
  for (std::uint32_t x = 0; x < F.size(); ++x) v[x] = parity(b & F[x]) ? -1 : 1;
  fwht_recursive(v, 0, v.size());
  return v;
}

// Evaluates a claimed ANF (list of monomial masks per output bit) at x.
inline std::uint32_t eval_anf(const std::vector<std::vector<std::uint32_t>>& monomials,
                              std::uint32_t x) {
  std::uint32_t y = 0;
  for (std::size_t bit = 0; bit < monomials.size(); ++bit) {
    unsigned acc = 0;
    for (std::uint32_t mono : monomials[bit])
      acc ^= ((x & mono) == mono) ? 1u : 0u;
    y |= acc << bit;
  }
  return y;
}

}  // namespace oracle

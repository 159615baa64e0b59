#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "bfly/errors.hpp"

namespace bfly {

// A vectorial Boolean function F: F2^n -> F2^m as a lookup table of 2^n
// entries, each an m-bit pattern.
class Vbf {
public:
  Vbf(unsigned n, unsigned m, std::vector<std::uint32_t> lut);

  unsigned n() const { return n_; }
  unsigned m() const { return m_; }
  std::uint32_t size() const { return 1u << n_; }
  std::uint32_t operator[](std::uint32_t x) const { return lut_[x]; }
  const std::vector<std::uint32_t>& lut() const { return lut_; }

private:
  unsigned n_, m_;
  std::vector<std::uint32_t> lut_;
};

struct DiffProfile {
  unsigned delta = 0;
  // DDT cell value -> multiplicity over all (a != 0, b), zero cells included.
  std::map<std::uint64_t, std::uint64_t> spectrum;
};

// Row-by-row DDT walk: one 2^m-bin histogram per row, O(2^{2n}) time total.
DiffProfile differential_uniformity(const Vbf& F, unsigned workers = 1);

// Naive O(2^n) correlation sum with the F2 dot-product pairing.
std::int64_t walsh_value(const Vbf& F, std::uint32_t a, std::uint32_t b);

struct WalshProfile {
  // Walsh value -> multiplicity over all a and all b != 0.
  std::map<std::int64_t, std::uint64_t> spectrum;
  std::int64_t max_abs = 0;
  std::uint64_t nonlinearity = 0;  // 2^{n-1} - max|W|/2
};

// Fast Walsh-Hadamard per component b != 0.
WalshProfile walsh_spectrum(const Vbf& F, unsigned workers = 1);

// Per output bit, the monomial masks with nonzero ANF coefficient (ascending).
std::vector<std::vector<std::uint32_t>> anf(const Vbf& F);
std::vector<unsigned> coordinate_degrees(const Vbf& F);
unsigned algebraic_degree(const Vbf& F);
// Max degree over output bits lo..hi inclusive.
unsigned degree_of_output_slice(const Vbf& F, unsigned hi, unsigned lo);

bool is_permutation(const Vbf& F);
bool is_involution(const Vbf& F);
std::uint64_t fixed_points(const Vbf& F);

// Degree bound n - l + 1 where 2^l divides every Walsh value over b != 0.
unsigned walsh_divisibility_degree_bound(const Vbf& F);
unsigned walsh_divisibility_degree_bound(unsigned n,
                                         const std::map<std::int64_t, std::uint64_t>& spectrum);

// n_out x n_in bit matrix as row words plus an n_out-bit constant; output bit
// r of apply(x) is parity(rows[r] & x) xor bit r of the constant.
struct AffineMap {
  unsigned n_in = 0, n_out = 0;
  std::vector<std::uint32_t> rows;
  std::uint32_t constant = 0;

  std::uint32_t apply(std::uint32_t x) const;
  bool invertible() const;
  static AffineMap identity(unsigned n);
};

// outer(F(inner(x))) ^ add(x); outer and inner must be invertible.
Vbf compose_affine(const Vbf& F, const AffineMap& outer, const AffineMap& inner,
                   const AffineMap& add);

}  // namespace bfly

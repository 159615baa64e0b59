#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>

#include "bfly/gf2k.hpp"
#include "bfly/vbf.hpp"

namespace bfly {

enum class Variant { open, closed };

const char* variant_name(Variant v);

// Butterfly structure over GF(2^k)^2 built from the keyed permutation
// R_z(x) = (x + alpha*z)^e + z^e. Gold construction derives e = (2^i+1)*2^t;
// the raw constructor takes any e with gcd(e, 2^k-1) = 1 for exploration.
class Butterfly {
public:
  static Butterfly gold(const Field& f, unsigned i, unsigned t, felem alpha, Variant v);
  static Butterfly raw(const Field& f, std::uint64_t e, felem alpha, Variant v);

  const Field& field() const { return field_; }
  std::uint64_t e() const { return e_; }
  std::uint64_t e_reduced() const { return e_red_; }
  std::uint64_t e_inverse() const { return e_inv_; }
  std::optional<unsigned> gold_i() const { return i_; }
  std::optional<unsigned> gold_t() const { return t_; }
  felem alpha() const { return alpha_; }
  Variant variant() const { return variant_; }
  // True when the usual theorem hypotheses hold: k odd, gcd(i,k)=1, alpha
  // not in {0,1}. Raw-exponent butterflies are never strict.
  bool strict() const { return strict_; }

  felem keyed_perm(felem z, felem x) const;
  felem keyed_perm_inv(felem z, felem y) const;
  // Open butterfly H(x,y) = (R_w(y), w) with w = R_y^{-1}(x); an involution.
  std::pair<felem, felem> open_eval(felem x, felem y) const;
  // Closed butterfly V(x,y) = (R_x(y), R_y(x)); quadratic for Gold e.
  std::pair<felem, felem> closed_eval(felem x, felem y) const;

  // n = m = 2k table; index and entry packing are left-high: idx = x*2^k + y.
  Vbf materialize_lut(unsigned workers = 1) const;

private:
  Butterfly(const Field& f, std::uint64_t e, felem alpha, Variant v,
            std::optional<unsigned> i, std::optional<unsigned> t);

  Field field_;
  std::uint64_t e_, e_red_, e_inv_;
  felem alpha_;
  Variant variant_;
  std::optional<unsigned> i_, t_;
  bool strict_;
};

// Text format: header line then one decimal entry per line in index order.
void export_lut_text(const Butterfly& b, const Vbf& lut, std::ostream& os);
// Binary format: 16-bit unsigned little-endian words in index order.
void export_lut_binary(const Vbf& lut, std::ostream& os);

}  // namespace bfly

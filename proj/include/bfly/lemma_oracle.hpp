#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bfly/gf2k.hpp"

namespace bfly {

// Sum of terms coeff * x^(2^frob); the root set of such a polynomial is an
// F2-subspace, so counts are powers of two.
struct LinearizedPoly {
  struct Term {
    felem coeff;
    unsigned frob;
  };
  std::vector<Term> terms;

  felem eval(const Field& f, felem x) const;
};

struct RootCount {
  std::uint64_t count = 0;
  unsigned dimension = 0;
  std::vector<felem> roots;
};

// Exhaustive root scan over GF(2^k).
RootCount count_roots(const Field& f, const LinearizedPoly& P);

// Two homogeneous linearized equations in (u, v):
//   eq1_u(u) + eq1_v(v) = 0 and eq2_u(u) + eq2_v(v) = 0.
struct PairSystem {
  LinearizedPoly eq1_u, eq1_v, eq2_u, eq2_v;
};

struct PairSolutions {
  std::vector<std::pair<felem, felem>> solutions;
  unsigned dimension = 0;
};

// Exhaustive 2^{2k} scan (component values hoisted per variable); k <= 9.
PairSolutions solve_pair_system(const Field& f, const PairSystem& S);

// Named coefficient evaluators for the closed-butterfly derivative and Walsh
// support systems. Transcribed once; unit tests pin hand-expanded special
// cases (u=0, v=0, c=d). char1/char2 are the linear forms whose simultaneous
// vanishing characterizes when a4..a6 all vanish:
//   char1 = alpha*v + u, char2 = alpha^{2^i}*(alpha*u + v) + u.
struct UvCoeffs {
  felem a4, a5, a6;
  felem char1, char2;
};
UvCoeffs uv_coeffs(const Field& f, unsigned i, felem alpha, felem u, felem v);

// p = alpha^{2^i+1}c + c + d     q = alpha^{2^i}c + alpha*d
// s = alpha*c + alpha^{2^i}d     t = alpha^{2^i+1}d + c + d
// b4 = p*q^{2^i} + p^{2^i}*s     b5 = s^{2^i}q^{2^i} + p^{2^i}t^{2^i}
// b6 = q*q^{2^i} + p^{2^i}*t
struct CdCoeffs {
  felem p, q, s, t;
  felem b4, b5, b6;
};
CdCoeffs cd_coeffs(const Field& f, unsigned i, felem alpha, felem c, felem d);
// b7 = q^{2^i}*b6^{2^{2i}} + t^{2^i}*b4^{2^{2i}}
felem b7_coeff(const Field& f, unsigned i, const CdCoeffs& c);

// The (u,v) system whose solution count determines the Walsh value at (c,d):
//   p^{2^i}u^{2^{2i}} + p*u + s^{2^i}v^{2^{2i}} + q*v = 0
//   q^{2^i}u^{2^{2i}} + s*u + t^{2^i}v^{2^{2i}} + t*v = 0
PairSystem walsh_support_system(const Field& f, unsigned i, felem alpha, felem c, felem d);
// alpha = 1 systems (in (x,y) and in (u,v) respectively):
//   d^{2^i}x + (dx)^{2^{k-i}} + (c+d)^{2^i}y + ((c+d)y)^{2^{k-i}} = 0
//   c^{2^i}x + (cx)^{2^{k-i}} + d^{2^i}y + (dy)^{2^{k-i}} = 0
PairSystem unit_xy_system(const Field& f, unsigned i, felem c, felem d);
//   d*u^{2^i} + (du)^{2^{k-i}} + (c+d)v^{2^i} + ((c+d)v)^{2^{k-i}} = 0
//   (c+d)u^{2^i} + ((c+d)u)^{2^{k-i}} + c*v^{2^i} + (cv)^{2^{k-i}} = 0
PairSystem unit_uv_system(const Field& f, unsigned i, felem c, felem d);

struct CheckResult {
  bool passed = true;
  std::uint64_t cases = 0;
  std::map<std::string, std::uint64_t> branches;  // proof-branch coverage tallies
  std::string failure;                            // first mismatch, empty if none
};

// Exhaustive for k <= 7; k = 9 samples with the given seed (default recorded
// constant) plus a targeted walk of the characterized set.
CheckResult verify_characterization_uv(const Field& f, unsigned i, felem alpha,
                                       std::optional<std::uint64_t> seed = {});
CheckResult verify_characterization_cd(const Field& f, unsigned i, felem alpha,
                                       std::optional<std::uint64_t> seed = {});
// Solution count of the Walsh support system is 1 or 4 for every
// (alpha not in {0,1}, (c,d) != (0,0)).
CheckResult verify_pair_counts(const Field& f, unsigned i, std::optional<std::uint64_t> seed = {});
// In the case b4 != 0, b5 = 0, b6 != 0, the coefficient b7 never vanishes.
CheckResult verify_b7_nonzero(const Field& f, unsigned i, std::optional<std::uint64_t> seed = {});
// The alpha=1 (x,y) system has exactly 4 solutions for every (c,d) != (0,0),
// with the three nonzero solutions forming the orbit {(x,y),(y,x+y),(x+y,x)}.
CheckResult verify_cdxy(const Field& f, unsigned i, std::optional<std::uint64_t> seed = {});
// The alpha=1 (u,v) system has exactly 4 solutions for every (c,d) != (0,0).
CheckResult verify_uv_unit(const Field& f, unsigned i, std::optional<std::uint64_t> seed = {});

struct LemmaSuite {
  unsigned k = 0, i = 0;
  std::uint32_t modulus = 0;
  std::optional<std::uint64_t> seed;  // set when sampling was used (k = 9)
  std::vector<std::pair<std::string, CheckResult>> checks;
  bool all_passed = true;
  double timing_ms = 0;
};

LemmaSuite run_lemma_suite(const Field& f, unsigned i, std::optional<std::uint64_t> seed = {});
nlohmann::ordered_json lemma_suite_json(const LemmaSuite& s);

}  // namespace bfly

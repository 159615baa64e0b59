#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "bfly/report.hpp"

namespace bfly {

struct SweepSpec {
  enum class Exponents { gold, all };
  enum class Alphas { strict, all, list };

  std::vector<unsigned> ks;
  Exponents exponents = Exponents::gold;
  Alphas alphas = Alphas::strict;
  std::vector<felem> alpha_list;  // used when alphas == list
  std::vector<Variant> variants = {Variant::open, Variant::closed};
  unsigned analyses = kAnalyzeAll;
  // Elementary-operation budget; the sweep refuses up front when the
  // estimated work exceeds it.
  std::uint64_t budget = 1ull << 34;
  unsigned workers = 1;
};

// One report per (k, e, alpha, variant) in deterministic order: k ascending,
// reduced exponent ascending, alpha as integer, open before closed. Gold
// pairs (i, t) that reduce to the same exponent are emitted once.
std::vector<AnalysisReport> sweep(const SweepSpec& spec);

void write_sweep_jsonl(const std::vector<AnalysisReport>& rows, std::ostream& os);
// Columns: k, e, alpha_hex, variant, delta, nl, deg_total, is_perm.
void write_sweep_csv(const std::vector<AnalysisReport>& rows, std::ostream& os);

struct ApnHit {
  std::uint64_t e;
  felem alpha;
  unsigned delta;  // always 2 for a hit
};

// Scans (e, alpha) over all alpha (0 and 1 included) for open-butterfly
// delta = 2; k odd, k <= 7.
std::vector<ApnHit> apn_search(unsigned k, SweepSpec::Exponents source = SweepSpec::Exponents::all,
                               unsigned workers = 1);

// All alpha for which the closed butterfly with exponent e is a permutation.
std::vector<felem> permutation_scan(unsigned k, std::uint64_t e, unsigned workers = 1);

}  // namespace bfly

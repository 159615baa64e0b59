#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bfly/butterfly.hpp"
#include "bfly/vbf.hpp"

namespace bfly {

enum : unsigned {
  kAnalyzeDelta = 1u,
  kAnalyzeWalsh = 2u,
  kAnalyzeDegree = 4u,
  kAnalyzeBijectivity = 8u,
  kAnalyzeAll = 15u,
};

struct AnalysisReport {
  // Construction echo; present when the report came from a butterfly.
  bool has_params = false;
  unsigned k = 0;
  std::optional<unsigned> i, t;
  std::uint64_t e = 0;
  felem alpha = 0;
  std::uint32_t modulus = 0;
  Variant variant = Variant::closed;
  bool strict = false;

  unsigned n = 0, m = 0;
  unsigned analyses = 0;
  std::optional<unsigned> delta;
  std::map<std::uint64_t, std::uint64_t> diff_spectrum;
  std::map<std::int64_t, std::uint64_t> walsh_spectrum;
  std::optional<std::uint64_t> nonlinearity;
  std::optional<unsigned> degree_total, degree_left, degree_right;
  std::optional<bool> perm, invol;
  std::optional<std::uint64_t> fixed_point_count;
  double timing_ms = 0;
};

AnalysisReport analyze(const Vbf& F, unsigned analyses = kAnalyzeAll, unsigned workers = 1);
AnalysisReport analyze(const Butterfly& b, unsigned analyses = kAnalyzeAll, unsigned workers = 1);

nlohmann::ordered_json report_json(const AnalysisReport& r);

// Checks the theorem-mandated values for a strict-mode butterfly report
// (delta <= 4; NL = 2^{2k-1}-2^k with value set {0, +-2^k, +-2^{k+1}};
// closed degree 2 / open slice degrees k+1 and k; open involution).
// Returns human-readable violations; empty means all applicable checks pass.
std::vector<std::string> strict_theorem_violations(const AnalysisReport& r);

}  // namespace bfly

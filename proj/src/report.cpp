#include "bfly/report.hpp"

#include <chrono>
#include <set>

#include "bfly/util.hpp"

namespace bfly {

namespace {

AnalysisReport analyze_table(const Vbf& F, unsigned analyses, unsigned workers,
                             std::optional<unsigned> branch_k) {
  const auto start = std::chrono::steady_clock::now();
  AnalysisReport r;
  r.n = F.n();
  r.m = F.m();
  r.analyses = analyses;
  if (analyses & kAnalyzeDelta) {
    DiffProfile d = differential_uniformity(F, workers);
    r.delta = d.delta;
    r.diff_spectrum = std::move(d.spectrum);
  }
  if (analyses & kAnalyzeWalsh) {
    WalshProfile w = walsh_spectrum(F, workers);
    r.nonlinearity = w.nonlinearity;
    r.walsh_spectrum = std::move(w.spectrum);
  }
  if (analyses & kAnalyzeDegree) {
    r.degree_total = algebraic_degree(F);
    if (branch_k) {
      r.degree_left = degree_of_output_slice(F, 2 * *branch_k - 1, *branch_k);
      r.degree_right = degree_of_output_slice(F, *branch_k - 1, 0);
    }
  }
  if ((analyses & kAnalyzeBijectivity) && F.n() == F.m()) {
    r.perm = is_permutation(F);
    r.invol = is_involution(F);
    r.fixed_point_count = fixed_points(F);
  }
  r.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

AnalysisReport analyze(const Vbf& F, unsigned analyses, unsigned workers) {
  return analyze_table(F, analyses, workers, std::nullopt);
}

AnalysisReport analyze(const Butterfly& b, unsigned analyses, unsigned workers) {
  const Vbf lut = b.materialize_lut(workers);
  AnalysisReport r = analyze_table(lut, analyses, workers, b.field().k());
  r.has_params = true;
  r.k = b.field().k();
  r.i = b.gold_i();
  r.t = b.gold_t();
  r.e = b.e();
  r.alpha = b.alpha();
  r.modulus = b.field().modulus();
  r.variant = b.variant();
  r.strict = b.strict();
  return r;
}

nlohmann::ordered_json report_json(const AnalysisReport& r) {
  using json = nlohmann::ordered_json;
  json j;
  if (r.has_params) {
    json p;
    p["k"] = r.k;
    p["i"] = r.i ? json(*r.i) : json(nullptr);
    p["t"] = r.t ? json(*r.t) : json(nullptr);
    p["e"] = r.e;
    p["alpha_hex"] = hex_string(r.alpha);
    p["modulus_hex"] = hex_string(r.modulus);
    p["variant"] = variant_name(r.variant);
    p["packing"] = "left-high";
    p["strict"] = r.strict;
    j["params"] = p;
  } else {
    j["params"] = nullptr;
  }
  if (r.delta) {
    j["delta"] = *r.delta;
    json ds = json::object();
    for (const auto& [v, c] : r.diff_spectrum) ds[std::to_string(v)] = c;
    j["diff_spectrum"] = ds;
  } else {
    j["delta"] = nullptr;
    j["diff_spectrum"] = nullptr;
  }
  if (r.nonlinearity) {
    json ws = json::object();
    for (const auto& [v, c] : r.walsh_spectrum) ws[std::to_string(v)] = c;
    j["walsh_spectrum"] = ws;
    j["nonlinearity"] = *r.nonlinearity;
  } else {
    j["walsh_spectrum"] = nullptr;
    j["nonlinearity"] = nullptr;
  }
  json deg;
  deg["total"] = r.degree_total ? json(*r.degree_total) : json(nullptr);
  deg["left"] = r.degree_left ? json(*r.degree_left) : json(nullptr);
  deg["right"] = r.degree_right ? json(*r.degree_right) : json(nullptr);
  j["degree"] = deg;
  j["is_permutation"] = r.perm ? json(*r.perm) : json(nullptr);
  j["is_involution"] = r.invol ? json(*r.invol) : json(nullptr);
  j["fixed_points"] = r.fixed_point_count ? json(*r.fixed_point_count) : json(nullptr);
  j["timing_ms"] = r.timing_ms;
  return j;
}

std::vector<std::string> strict_theorem_violations(const AnalysisReport& r) {
  std::vector<std::string> out;
  if (!r.has_params || !r.strict) return out;
  const unsigned k = r.k;
  const std::string where = "k=" + std::to_string(k) + " e=" + std::to_string(r.e) +
                            " alpha=" + hex_string(r.alpha) + " " + variant_name(r.variant);
  if (r.delta && *r.delta > 4)
    out.push_back(where + ": delta " + std::to_string(*r.delta) + " > 4");
  if (r.nonlinearity) {
    const std::uint64_t want = (1ull << (2 * k - 1)) - (1ull << k);
    if (*r.nonlinearity != want)
      out.push_back(where + ": NL " + std::to_string(*r.nonlinearity) + " != " +
                    std::to_string(want));
    const std::set<std::int64_t> expect = {0, 1ll << k, -(1ll << k), 1ll << (k + 1),
                                           -(1ll << (k + 1))};
    std::set<std::int64_t> got;
    for (const auto& [v, c] : r.walsh_spectrum)
      if (c > 0) got.insert(v);
    if (got != expect) out.push_back(where + ": Walsh value set != {0, +-2^k, +-2^(k+1)}");
  }
  if (r.degree_total) {
    if (r.variant == Variant::closed && *r.degree_total != 2)
      out.push_back(where + ": closed degree " + std::to_string(*r.degree_total) + " != 2");
    if (r.variant == Variant::open) {
      if (*r.degree_total != k + 1)
        out.push_back(where + ": open degree " + std::to_string(*r.degree_total) + " != k+1");
      if (r.degree_left && *r.degree_left != k + 1)
        out.push_back(where + ": open left-slice degree != k+1");
      if (r.degree_right && *r.degree_right != k)
        out.push_back(where + ": open right-slice degree != k");
    }
  }
  if (r.variant == Variant::open && r.perm && (!*r.perm || !r.invol || !*r.invol))
    out.push_back(where + ": open butterfly is not an involution");
  return out;
}

}  // namespace bfly

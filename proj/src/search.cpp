#include "bfly/search.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "bfly/util.hpp"

namespace bfly {

namespace {

struct ExponentRow {
  std::uint64_t e;  // as constructed (Gold rows keep the unreduced product)
  std::uint64_t e_red;
  std::optional<unsigned> i, t;
};

std::vector<ExponentRow> enumerate_exponents(unsigned k, SweepSpec::Exponents source) {
  const std::uint64_t order = (1ull << k) - 1;
  std::vector<ExponentRow> rows;
  if (source == SweepSpec::Exponents::all) {
    for (std::uint64_t e = 1; e < order; ++e)
      if (std::gcd(e, order) == 1) rows.push_back({e, e, {}, {}});
    return rows;
  }
  std::set<std::uint64_t> seen;
  for (unsigned i = 1; i < k; ++i)
    for (unsigned t = 0; t < k; ++t) {
      const std::uint64_t e = ((1ull << i) + 1) << t;
      const std::uint64_t e_red = e % order;
      if (e_red == 0 || std::gcd(e_red, order) != 1) continue;
      if (!seen.insert(e_red).second) continue;
      rows.push_back({e, e_red, i, t});
    }
  std::sort(rows.begin(), rows.end(),
            [](const ExponentRow& a, const ExponentRow& b) { return a.e_red < b.e_red; });
  return rows;
}

std::vector<felem> enumerate_alphas(unsigned k, const SweepSpec& spec) {
  std::vector<felem> out;
  const felem mask = static_cast<felem>((1u << k) - 1);
  switch (spec.alphas) {
    case SweepSpec::Alphas::strict:
      for (felem a = 2; a <= mask; ++a) out.push_back(a);
      break;
    case SweepSpec::Alphas::all:
      for (felem a = 0; a <= mask; ++a) out.push_back(a);
      break;
    case SweepSpec::Alphas::list:
      out = spec.alpha_list;
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      for (felem a : out)
        if (a > mask) fail(errc::bad_parameters, "alpha " + hex_string(a) + " exceeds k bits");
      break;
  }
  return out;
}

// Estimated elementary table operations for one report row.
std::uint64_t row_cost(unsigned k, unsigned analyses) {
  const unsigned n = 2 * k;
  std::uint64_t cost = 1ull << n;  // materialization
  if (analyses & kAnalyzeDelta) cost += 1ull << (2 * n);
  if (analyses & kAnalyzeWalsh) cost += 1ull << (2 * n);
  if (analyses & kAnalyzeDegree) cost += static_cast<std::uint64_t>(n) * n * (1ull << n);
  if (analyses & kAnalyzeBijectivity) cost += 2ull << n;
  return cost;
}

}  // namespace

std::vector<AnalysisReport> sweep(const SweepSpec& spec) {
  std::vector<unsigned> ks = spec.ks;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  // Lay out every row first so the budget check happens before any work.
  struct Job {
    unsigned k;
    ExponentRow er;
    felem alpha;
    Variant variant;
  };
  std::vector<Job> jobs;
  std::uint64_t cost = 0;
  for (unsigned k : ks) {
    if (2 * k > 18) fail(errc::too_large, "sweep: 2k > 18 at k=" + std::to_string(k));
    const auto exps = enumerate_exponents(k, spec.exponents);
    const auto alphas = enumerate_alphas(k, spec);
    std::vector<Variant> variants = spec.variants;
    std::sort(variants.begin(), variants.end());
    variants.erase(std::unique(variants.begin(), variants.end()), variants.end());
    for (const ExponentRow& er : exps)
      for (felem a : alphas)
        for (Variant v : variants) {
          jobs.push_back({k, er, a, v});
          cost += row_cost(k, spec.analyses);
        }
  }
  if (cost > spec.budget)
    fail(errc::budget_exceeded, "sweep needs ~" + std::to_string(cost) +
                                    " elementary ops, budget is " + std::to_string(spec.budget));

  std::vector<AnalysisReport> out;
  out.reserve(jobs.size());
  for (const Job& j : jobs) {
    const Field f(j.k);
    const Butterfly b = j.er.i ? Butterfly::gold(f, *j.er.i, *j.er.t, j.alpha, j.variant)
                               : Butterfly::raw(f, j.er.e, j.alpha, j.variant);
    out.push_back(analyze(b, spec.analyses, spec.workers));
  }
  return out;
}

void write_sweep_jsonl(const std::vector<AnalysisReport>& rows, std::ostream& os) {
  for (const AnalysisReport& r : rows) os << report_json(r).dump() << '\n';
}

void write_sweep_csv(const std::vector<AnalysisReport>& rows, std::ostream& os) {
  os << "k,e,alpha_hex,variant,delta,nl,deg_total,is_perm\n";
  const auto cell = [](const auto& opt) {
    return opt ? std::to_string(*opt) : std::string();
  };
  for (const AnalysisReport& r : rows) {
    os << r.k << ',' << r.e << ',' << hex_string(r.alpha) << ',' << variant_name(r.variant) << ','
       << cell(r.delta) << ',' << cell(r.nonlinearity) << ',' << cell(r.degree_total) << ','
       << (r.perm ? (*r.perm ? "true" : "false") : "") << '\n';
  }
}

std::vector<ApnHit> apn_search(unsigned k, SweepSpec::Exponents source, unsigned workers) {
  if (k % 2 == 0) fail(errc::bad_hypotheses, "apn_search: k must be odd");
  if (k > 7) fail(errc::too_large, "apn_search: k > 7");
  const Field f(k);
  std::vector<ApnHit> hits;
  for (const ExponentRow& er : enumerate_exponents(k, source)) {
    for (felem a = 0; a <= f.mask(); ++a) {
      const Butterfly b = er.i ? Butterfly::gold(f, *er.i, *er.t, a, Variant::open)
                               : Butterfly::raw(f, er.e, a, Variant::open);
      const DiffProfile d = differential_uniformity(b.materialize_lut(workers), workers);
      if (d.delta == 2) hits.push_back({er.e, a, d.delta});
    }
  }
  return hits;
}

std::vector<felem> permutation_scan(unsigned k, std::uint64_t e, unsigned workers) {
  if (k > 7) fail(errc::too_large, "permutation_scan: k > 7");
  const Field f(k);
  std::vector<felem> out;
  for (felem a = 0; a <= f.mask(); ++a) {
    const Butterfly b = Butterfly::raw(f, e, a, Variant::closed);
    if (is_permutation(b.materialize_lut(workers))) out.push_back(a);
  }
  return out;
}

}  // namespace bfly

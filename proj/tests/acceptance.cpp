#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <exception>
#include <random>
#include <set>
#include <sstream>

#include "bfly/butterfly.hpp"
#include "bfly/cli.hpp"
#include "bfly/gf2k.hpp"
#include "bfly/lemma_oracle.hpp"
#include "bfly/parallel.hpp"
#include "bfly/report.hpp"
#include "bfly/search.hpp"
#include "bfly/vbf.hpp"
#include "oracles.hpp"

using namespace bfly;

namespace {

// Prints exactly one [PASS]/[FAIL] line per criterion; REQUIRE failures
// unwind through the destructor, so only throwing assertions are used here.
struct Banner {
  std::string label;
  int live = std::uncaught_exceptions();
  explicit Banner(std::string l) : label(std::move(l)) {}
  ~Banner() {
    std::printf("[%s] %s\n", std::uncaught_exceptions() > live ? "FAIL" : "PASS", label.c_str());
    std::fflush(stdout);
  }
};

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

std::set<std::int64_t> value_set(const std::map<std::int64_t, std::uint64_t>& spectrum) {
  std::set<std::int64_t> s;
  for (const auto& [v, c] : spectrum)
    if (c > 0) s.insert(v);
  return s;
}

nlohmann::json strip_timing_lines(const std::string& text) {
  // works for single reports and JSONL alike
  nlohmann::json rows = nlohmann::json::array();
  std::istringstream is(text);
  std::string line, buffer;
  while (std::getline(is, line)) buffer += line;
  nlohmann::json j = nlohmann::json::parse(buffer, nullptr, false);
  if (!j.is_discarded()) {
    j.erase("timing_ms");
    rows.push_back(j);
    return rows;
  }
  std::istringstream again(text);
  while (std::getline(again, line)) {
    nlohmann::json row = nlohmann::json::parse(line);
    row.erase("timing_ms");
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("criterion 1: k=3 strict family invariants") {
  Banner banner("criterion 1: k=3 strict family invariants");
  Timer timer;
  const Field f(3);
  const std::set<std::int64_t> expected_walsh = {0, 8, -8, 16, -16};
  for (felem alpha = 2; alpha <= f.mask(); ++alpha) {
    const AnalysisReport closed = analyze(Butterfly::gold(f, 1, 0, alpha, Variant::closed));
    REQUIRE(*closed.delta <= 4);
    REQUIRE(*closed.nonlinearity == 24);
    REQUIRE(value_set(closed.walsh_spectrum) == expected_walsh);
    REQUIRE(*closed.degree_total == 2);

    const AnalysisReport open = analyze(Butterfly::gold(f, 1, 0, alpha, Variant::open));
    REQUIRE(*open.perm);
    REQUIRE(*open.invol);
    REQUIRE(*open.degree_left == 4);
    REQUIRE(*open.degree_right == 3);
    REQUIRE(strict_theorem_violations(closed).empty());
    REQUIRE(strict_theorem_violations(open).empty());
  }
  REQUIRE(timer.ms() < 1000);
}

TEST_CASE("criterion 2: k=5 nonlinearity and spectrum") {
  Banner banner("criterion 2: k=5 nonlinearity and spectrum");
  const Field f(5);
  const std::set<std::int64_t> expected_walsh = {0, 32, -32, 64, -64};
  const felem alphas[] = {2, 3, 7, 19, 30};
  for (felem alpha : alphas) {
    Timer per_alpha;
    const AnalysisReport r = analyze(Butterfly::gold(f, 1, 0, alpha, Variant::closed));
    REQUIRE(*r.delta <= 4);
    REQUIRE(*r.nonlinearity == 480);
    REQUIRE(value_set(r.walsh_spectrum) == expected_walsh);
    REQUIRE(per_alpha.ms() < 5000);
  }
}

TEST_CASE("criterion 3: k=7 nonlinearity and spectrum") {
  Banner banner("criterion 3: k=7 nonlinearity and spectrum");
  Timer timer;
  const Field f(7);
  const unsigned workers = resolve_workers(0);
  const std::set<std::int64_t> expected_walsh = {0, 128, -128, 256, -256};
  for (felem alpha : {felem(2), felem(93)}) {
    const Butterfly b = Butterfly::gold(f, 1, 0, alpha, Variant::closed);
    const AnalysisReport r = analyze(b, kAnalyzeWalsh, workers);
    REQUIRE(*r.nonlinearity == 8064);
    REQUIRE(value_set(r.walsh_spectrum) == expected_walsh);
  }
  REQUIRE(timer.ms() < 300000);
}

TEST_CASE("criterion 4: unit alpha permutation family") {
  Banner banner("criterion 4: unit alpha permutation family");
  Timer timer;
  for (unsigned k : {3u, 5u}) {
    const Field f(k);
    const AnalysisReport closed = analyze(Butterfly::gold(f, 1, 0, 1, Variant::closed));
    REQUIRE(*closed.perm);
    REQUIRE(*closed.delta == 4);
    for (const auto& [value, count] : closed.diff_spectrum)
      REQUIRE((value == 0 || value == 4));
    const std::set<std::int64_t> expected_walsh = {0, 1ll << (k + 1), -(1ll << (k + 1))};
    REQUIRE(value_set(closed.walsh_spectrum) == expected_walsh);

    const AnalysisReport open = analyze(Butterfly::gold(f, 1, 0, 1, Variant::open));
    REQUIRE(*open.degree_total == k);
  }
  REQUIRE(timer.ms() < 10000);
}

TEST_CASE("criterion 5: k=3 delta-2 hits re-verified") {
  Banner banner("criterion 5: k=3 delta-2 hits re-verified");
  Timer timer;
  const std::vector<ApnHit> hits = apn_search(3, SweepSpec::Exponents::all);
  REQUIRE(!hits.empty());
  const Field f(3);
  for (const ApnHit& hit : hits) {
    const Vbf F = Butterfly::raw(f, hit.e, hit.alpha, Variant::open).materialize_lut();
    REQUIRE(oracle::ddt_brute(F).delta == 2);
  }
  REQUIRE(timer.ms() < 10000);
}

TEST_CASE("criterion 6: lemma oracle suite") {
  Banner banner("criterion 6: lemma oracle suite");
  Timer timer;
  const std::pair<unsigned, unsigned> runs[] = {{3, 1}, {3, 2}, {5, 1}, {5, 2}};
  for (const auto& [k, i] : runs) {
    const Field f(k);
    const LemmaSuite suite = run_lemma_suite(f, i);
    REQUIRE(suite.all_passed);

    std::map<std::string, CheckResult> by_name(suite.checks.begin(), suite.checks.end());
    const std::uint64_t strict_alphas = f.mask() - 1;  // alpha not in {0,1}
    const std::uint64_t nonzero_pairs = (f.size() * f.size()) - 1;

    // characterizations covered every strict alpha exhaustively
    REQUIRE(by_name.at("uv_characterization").cases == strict_alphas * f.size() * f.size());
    REQUIRE(by_name.at("cd_characterization").cases == strict_alphas * f.size() * f.size());

    // every pair system solves to 1 or 4 points
    const CheckResult& pairs = by_name.at("pair_system_counts");
    REQUIRE(pairs.cases == strict_alphas * nonzero_pairs);
    REQUIRE(pairs.branches.at("count_1") + pairs.branches.at("count_4") == pairs.cases);

    // exactly 4 solutions with the 3-orbit structure for every (c,d) != 0
    const CheckResult& orbit = by_name.at("xy_unit_exact4");
    REQUIRE(orbit.branches.at("solutions_4") == nonzero_pairs);
    REQUIRE(orbit.branches.at("orbit_ok") == nonzero_pairs);
    REQUIRE(by_name.at("uv_unit_exact4").branches.at("solutions_4") == nonzero_pairs);

    // the report always distinguishes vacuous from exercised b7 cases; the
    // case is genuinely vacuous at (k=3, i=2) and nonvacuous everywhere else
    const std::uint64_t b7_hits = by_name.at("b7_nonzero").branches.at("b7_case");
    if (k == 3 && i == 2)
      REQUIRE(b7_hits == 0);
    else
      REQUIRE(b7_hits > 0);
  }
  REQUIRE(timer.ms() < 120000);
}

TEST_CASE("criterion 7: property suite") {
  Banner banner("criterion 7: property suite");

  // the LUT population: k=3 all alphas both variants, k=5 closed sample
  std::vector<Vbf> tables;
  const Field f3(3);
  for (felem alpha = 1; alpha <= f3.mask(); ++alpha) {
    tables.push_back(Butterfly::gold(f3, 1, 0, alpha, Variant::open).materialize_lut());
    tables.push_back(Butterfly::gold(f3, 1, 0, alpha, Variant::closed).materialize_lut());
  }
  const Field f5(5);
  tables.push_back(Butterfly::gold(f5, 1, 0, 2, Variant::closed).materialize_lut());

  // Parseval per component, exact, on every analyzed LUT
  for (const Vbf& F : tables) {
    for (std::uint32_t b = 1; b < (1u << F.m()); ++b) {
      const auto row = oracle::walsh_row(F, b);
      std::uint64_t sum = 0;
      for (std::int64_t w : row) sum += static_cast<std::uint64_t>(w * w);
      REQUIRE(sum == 1ull << (2 * F.n()));
    }
  }

  // fast transform vs naive correlation sums on 100 random coordinates
  std::mt19937_64 rng(0xACCE97);
  const Vbf& probe = tables.front();
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t a = static_cast<std::uint32_t>(rng()) & (probe.size() - 1);
    std::uint32_t b = 0;
    while (!b) b = static_cast<std::uint32_t>(rng()) & ((1u << probe.m()) - 1);
    REQUIRE(oracle::walsh_row(probe, b)[a] == walsh_value(probe, a, b));
  }

  // DDT fast path vs brute oracle at n <= 10
  {
    const Vbf big = Butterfly::gold(f5, 1, 0, 11, Variant::open).materialize_lut();
    const DiffProfile fast = differential_uniformity(big);
    const oracle::DdtResult brute = oracle::ddt_brute(big);
    REQUIRE(fast.delta == brute.delta);
    REQUIRE(fast.spectrum == brute.spectrum);

    std::vector<std::uint32_t> lut(1u << 9);
    for (auto& v : lut) v = static_cast<std::uint32_t>(rng()) & 0x1FF;
    const Vbf rnd(9, 9, std::move(lut));
    const DiffProfile fast_r = differential_uniformity(rnd);
    const oracle::DdtResult brute_r = oracle::ddt_brute(rnd);
    REQUIRE(fast_r.delta == brute_r.delta);
    REQUIRE(fast_r.spectrum == brute_r.spectrum);
  }

  // extended-affine invariance on 10 random transforms at k=3
  {
    const Vbf F = Butterfly::gold(f3, 1, 0, 2, Variant::open).materialize_lut();
    const DiffProfile d0 = differential_uniformity(F);
    const WalshProfile w0 = walsh_spectrum(F);
    const unsigned deg0 = algebraic_degree(F);
    auto abs_of = [](const std::map<std::int64_t, std::uint64_t>& s) {
      std::map<std::int64_t, std::uint64_t> a;
      for (const auto& [v, c] : s) a[v < 0 ? -v : v] += c;
      return a;
    };
    const auto abs0 = abs_of(w0.spectrum);
    for (int trial = 0; trial < 10; ++trial) {
      AffineMap outer, inner, add;
      outer.n_in = outer.n_out = inner.n_in = inner.n_out = add.n_in = add.n_out = 6;
      do {
        outer.rows.assign(6, 0);
        for (auto& r : outer.rows) r = static_cast<std::uint32_t>(rng()) & 63;
      } while (!outer.invertible());
      do {
        inner.rows.assign(6, 0);
        for (auto& r : inner.rows) r = static_cast<std::uint32_t>(rng()) & 63;
      } while (!inner.invertible());
      add.rows.assign(6, 0);
      for (auto& r : add.rows) r = static_cast<std::uint32_t>(rng()) & 63;
      outer.constant = static_cast<std::uint32_t>(rng()) & 63;
      inner.constant = static_cast<std::uint32_t>(rng()) & 63;
      add.constant = static_cast<std::uint32_t>(rng()) & 63;

      const Vbf G = compose_affine(F, outer, inner, add);
      const DiffProfile d1 = differential_uniformity(G);
      REQUIRE(d1.delta == d0.delta);
      REQUIRE(d1.spectrum == d0.spectrum);
      REQUIRE(abs_of(walsh_spectrum(G).spectrum) == abs0);
      REQUIRE(algebraic_degree(G) == deg0);
    }
  }

  // divisibility bound dominates the measured degree on every LUT
  for (const Vbf& F : tables)
    REQUIRE(walsh_divisibility_degree_bound(F) >= algebraic_degree(F));
}

TEST_CASE("criterion 8: determinism") {
  Banner banner("criterion 8: determinism");

  const std::vector<std::string> analyze_args = {"analyze", "--k", "5", "--i",
                                                 "1",       "--alpha", "0x13"};
  std::ostringstream out_a, out_b, err;
  REQUIRE(cli::run(analyze_args, out_a, err) == 0);
  REQUIRE(cli::run(analyze_args, out_b, err) == 0);
  REQUIRE(strip_timing_lines(out_a.str()) == strip_timing_lines(out_b.str()));

  const std::vector<std::string> sweep_base = {"sweep", "--k", "3", "--alpha", "0x2",
                                               "--alpha", "0x6"};
  std::ostringstream sweep_one, sweep_two, sweep_many;
  std::vector<std::string> w1 = sweep_base;
  w1.insert(w1.end(), {"--workers", "1"});
  std::vector<std::string> w4 = sweep_base;
  w4.insert(w4.end(), {"--workers", "4"});
  REQUIRE(cli::run(w1, sweep_one, err) == 0);
  REQUIRE(cli::run(w1, sweep_two, err) == 0);
  REQUIRE(cli::run(w4, sweep_many, err) == 0);
  REQUIRE(sweep_one.str() != "");
  // identical runs agree byte-for-byte once the timing field is dropped,
  // and the worker count never changes report contents
  REQUIRE(strip_timing_lines(sweep_one.str()) == strip_timing_lines(sweep_two.str()));
  REQUIRE(strip_timing_lines(sweep_one.str()) == strip_timing_lines(sweep_many.str()));
}

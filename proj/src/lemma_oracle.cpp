#include "bfly/lemma_oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "bfly/util.hpp"

namespace bfly {

namespace {

constexpr std::uint64_t kDefaultSeed = 0xB7F1E5;
constexpr unsigned kExhaustiveMaxK = 7;
constexpr std::size_t kSampleAlphas = 24;
constexpr std::size_t kSamplePairs = 384;
constexpr std::size_t kSampleUv = 4096;

void require_hypotheses(const Field& f, unsigned i) {
  if (f.k() % 2 == 0 || i == 0 || std::gcd<std::uint64_t>(i, f.k()) != 1)
    fail(errc::bad_hypotheses, "verifier requires k odd and gcd(i,k)=1");
}

bool exhaustive(const Field& f) { return f.k() <= kExhaustiveMaxK; }

// Sampled (c,d) pairs for k = 9 runs; deterministic for a given seed.
std::vector<std::pair<felem, felem>> sample_pairs(const Field& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<std::pair<felem, felem>> out;
  while (out.size() < kSamplePairs) {
    const felem c = static_cast<felem>(rng() & f.mask());
    const felem d = static_cast<felem>(rng() & f.mask());
    if (c || d) out.insert({c, d});
  }
  return {out.begin(), out.end()};
}

std::vector<felem> sample_alphas(const Field& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xA1FA);
  std::set<felem> out;
  while (out.size() < kSampleAlphas) {
    const felem a = static_cast<felem>(rng() & f.mask());
    if (a > 1) out.insert(a);
  }
  return {out.begin(), out.end()};
}

void note_failure(CheckResult& r, const std::string& msg) {
  r.passed = false;
  if (r.failure.empty()) r.failure = msg;
}

}  // namespace

felem LinearizedPoly::eval(const Field& f, felem x) const {
  felem acc = 0;
  for (const Term& t : terms) acc ^= f.mul(t.coeff, f.frobenius(x, static_cast<int>(t.frob)));
  return acc;
}

RootCount count_roots(const Field& f, const LinearizedPoly& P) {
  RootCount rc;
  for (felem x = 0; x <= f.mask(); ++x)
    if (P.eval(f, x) == 0) rc.roots.push_back(x);
  rc.count = rc.roots.size();
  rc.dimension = static_cast<unsigned>(std::countr_zero(rc.count));
  return rc;
}

PairSolutions solve_pair_system(const Field& f, const PairSystem& S) {
  if (f.k() > 9) fail(errc::too_large, "solve_pair_system: k > 9");
  const std::uint32_t N = f.size();
  // Both equations are componentwise additive, so hoist per-variable values:
  // (u,v) solves the system iff cu[u] == cv[v] for the packed pair values.
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_value;
  for (std::uint32_t v = 0; v < N; ++v) {
    const std::uint64_t cv =
        (static_cast<std::uint64_t>(S.eq1_v.eval(f, v)) << 32) | S.eq2_v.eval(f, v);
    by_value[cv].push_back(v);
  }
  PairSolutions out;
  for (std::uint32_t u = 0; u < N; ++u) {
    const std::uint64_t cu =
        (static_cast<std::uint64_t>(S.eq1_u.eval(f, u)) << 32) | S.eq2_u.eval(f, u);
    const auto it = by_value.find(cu);
    if (it == by_value.end()) continue;
    for (std::uint32_t v : it->second) out.solutions.emplace_back(u, v);
  }
  out.dimension = static_cast<unsigned>(std::countr_zero(out.solutions.size()));
  return out;
}

UvCoeffs uv_coeffs(const Field& f, unsigned i, felem alpha, felem u, felem v) {
  const auto p = [&](felem a) { return f.frobenius(a, static_cast<int>(i)); };
  const felem av_u = f.mul(alpha, v) ^ u;
  const felem au_v = f.mul(alpha, u) ^ v;
  const felem a2i = p(alpha);
  const felem t1 = f.mul(alpha, p(au_v)) ^ p(u);
  const felem t2 = f.mul(a2i, au_v) ^ u;
  const felem t3 = f.mul(a2i, av_u) ^ v;
  const felem t4 = f.mul(alpha, p(av_u)) ^ p(v);
  UvCoeffs c;
  c.a4 = f.mul(av_u, t1) ^ f.mul(p(av_u), t2);
  c.a5 = f.mul(av_u, au_v) ^ f.mul(t2, t3);
  c.a6 = f.mul(av_u, p(au_v)) ^ f.mul(t2, t4);
  c.char1 = av_u;
  c.char2 = t2;
  return c;
}

CdCoeffs cd_coeffs(const Field& f, unsigned i, felem alpha, felem c, felem d) {
  const auto p = [&](felem a) { return f.frobenius(a, static_cast<int>(i)); };
  const felem a2i = p(alpha);
  const felem a2i1 = f.mul(a2i, alpha);
  CdCoeffs r;
  r.p = f.mul(a2i1, c) ^ c ^ d;
  r.q = f.mul(a2i, c) ^ f.mul(alpha, d);
  r.s = f.mul(alpha, c) ^ f.mul(a2i, d);
  r.t = f.mul(a2i1, d) ^ c ^ d;
  r.b4 = f.mul(r.p, p(r.q)) ^ f.mul(p(r.p), r.s);
  r.b5 = f.mul(p(r.s), p(r.q)) ^ f.mul(p(r.p), p(r.t));
  r.b6 = f.mul(r.q, p(r.q)) ^ f.mul(p(r.p), r.t);
  return r;
}

felem b7_coeff(const Field& f, unsigned i, const CdCoeffs& c) {
  const int i2 = static_cast<int>(2 * i);
  return f.mul(f.frobenius(c.q, static_cast<int>(i)), f.frobenius(c.b6, i2)) ^
         f.mul(f.frobenius(c.t, static_cast<int>(i)), f.frobenius(c.b4, i2));
}

PairSystem walsh_support_system(const Field& f, unsigned i, felem alpha, felem c, felem d) {
  const CdCoeffs cc = cd_coeffs(f, i, alpha, c, d);
  const unsigned j2 = (2 * i) % f.k();
  PairSystem S;
  S.eq1_u.terms = {{f.frobenius(cc.p, static_cast<int>(i)), j2}, {cc.p, 0}};
  S.eq1_v.terms = {{f.frobenius(cc.s, static_cast<int>(i)), j2}, {cc.q, 0}};
  S.eq2_u.terms = {{f.frobenius(cc.q, static_cast<int>(i)), j2}, {cc.s, 0}};
  S.eq2_v.terms = {{f.frobenius(cc.t, static_cast<int>(i)), j2}, {cc.t, 0}};
  return S;
}

PairSystem unit_xy_system(const Field& f, unsigned i, felem c, felem d) {
  const unsigned ki = f.k() - i % f.k();
  const auto pair_terms = [&](felem coef) {
    return std::vector<LinearizedPoly::Term>{
        {f.frobenius(coef, static_cast<int>(i)), 0},
        {f.frobenius(coef, static_cast<int>(ki)), ki}};
  };
  PairSystem S;
  S.eq1_u.terms = pair_terms(d);
  S.eq1_v.terms = pair_terms(c ^ d);
  S.eq2_u.terms = pair_terms(c);
  S.eq2_v.terms = pair_terms(d);
  return S;
}

PairSystem unit_uv_system(const Field& f, unsigned i, felem c, felem d) {
  const unsigned ki = f.k() - i % f.k();
  const auto pair_terms = [&](felem coef) {
    return std::vector<LinearizedPoly::Term>{
        {coef, i % f.k()}, {f.frobenius(coef, static_cast<int>(ki)), ki}};
  };
  PairSystem S;
  S.eq1_u.terms = pair_terms(d);
  S.eq1_v.terms = pair_terms(c ^ d);
  S.eq2_u.terms = pair_terms(c ^ d);
  S.eq2_v.terms = pair_terms(c);
  return S;
}

CheckResult verify_characterization_uv(const Field& f, unsigned i, felem alpha,
                                       std::optional<std::uint64_t> seed) {
  require_hypotheses(f, i);
  if (alpha < 2) fail(errc::bad_hypotheses, "characterization requires alpha not in {0,1}");
  CheckResult r;
  const auto check_one = [&](felem u, felem v) {
    const UvCoeffs c = uv_coeffs(f, i, alpha, u, v);
    const bool vanishing = c.a4 == 0 && c.a5 == 0 && c.a6 == 0;
    const bool in_set = c.char1 == 0 && c.char2 == 0;
    ++r.cases;
    if (vanishing) ++r.branches["vanishing"];
    if (in_set) ++r.branches["characterized_set"];
    if (vanishing != in_set)
      note_failure(r, "uv characterization mismatch at alpha=" + hex_string(alpha) +
                          " u=" + hex_string(u) + " v=" + hex_string(v));
  };
  if (exhaustive(f)) {
    for (felem u = 0; u <= f.mask(); ++u)
      for (felem v = 0; v <= f.mask(); ++v) check_one(u, v);
  } else {
    r.branches["sampled"] = 1;
    std::mt19937_64 rng(seed.value_or(kDefaultSeed));
    for (std::size_t s = 0; s < kSampleUv; ++s)
      check_one(static_cast<felem>(rng() & f.mask()), static_cast<felem>(rng() & f.mask()));
    // Walk the u = alpha*v line so the characterized set itself is exercised.
    for (felem v = 0; v <= f.mask(); ++v) check_one(f.mul(alpha, v), v);
  }
  return r;
}

CheckResult verify_characterization_cd(const Field& f, unsigned i, felem alpha,
                                       std::optional<std::uint64_t> seed) {
  require_hypotheses(f, i);
  if (alpha < 2) fail(errc::bad_hypotheses, "characterization requires alpha not in {0,1}");
  CheckResult r;
  const auto check_one = [&](felem c, felem d) {
    const CdCoeffs cc = cd_coeffs(f, i, alpha, c, d);
    const bool vanishing = cc.b4 == 0 && cc.b5 == 0 && cc.b6 == 0;
    const bool in_set = cc.p == 0 && cc.q == 0;
    ++r.cases;
    if (vanishing) ++r.branches["vanishing"];
    if (in_set) ++r.branches["characterized_set"];
    if (vanishing != in_set)
      note_failure(r, "cd characterization mismatch at alpha=" + hex_string(alpha) +
                          " c=" + hex_string(c) + " d=" + hex_string(d));
  };
  if (exhaustive(f)) {
    for (felem c = 0; c <= f.mask(); ++c)
      for (felem d = 0; d <= f.mask(); ++d) check_one(c, d);
  } else {
    r.branches["sampled"] = 1;
    std::mt19937_64 rng(seed.value_or(kDefaultSeed));
    for (std::size_t s = 0; s < kSampleUv; ++s)
      check_one(static_cast<felem>(rng() & f.mask()), static_cast<felem>(rng() & f.mask()));
    // Walk the p = 0 line (d = alpha^{2^i+1}c + c) to exercise the set side.
    const felem a2i1 = f.mul(f.frobenius(alpha, static_cast<int>(i)), alpha);
    for (felem c = 0; c <= f.mask(); ++c) check_one(c, f.mul(a2i1, c) ^ c);
  }
  return r;
}

namespace {

// Solution count of a PairSystem via hoisted component tables; shared by the
// bulk verifiers below. Optionally collects the solutions.
std::uint64_t pair_count(const Field& f, const PairSystem& S,
                         std::vector<std::pair<felem, felem>>* sols = nullptr) {
  if (!sols) {
    const std::uint32_t N = f.size();
    std::unordered_map<std::uint64_t, std::uint32_t> tally;
    for (std::uint32_t v = 0; v < N; ++v)
      ++tally[(static_cast<std::uint64_t>(S.eq1_v.eval(f, v)) << 32) | S.eq2_v.eval(f, v)];
    std::uint64_t count = 0;
    for (std::uint32_t u = 0; u < N; ++u) {
      const auto it = tally.find((static_cast<std::uint64_t>(S.eq1_u.eval(f, u)) << 32) |
                                 S.eq2_u.eval(f, u));
      if (it != tally.end()) count += it->second;
    }
    return count;
  }
  const PairSolutions all = solve_pair_system(f, S);
  sols->insert(sols->end(), all.solutions.begin(), all.solutions.end());
  return all.solutions.size();
}

const char* cd_case_label(const CdCoeffs& c) {
  if (c.b4 == 0) return "case_b4_zero";
  if (c.b5 != 0) return "case_b5_nonzero";
  return c.b6 == 0 ? "case_b5_b6_zero" : "case_b7";
}

}  // namespace

CheckResult verify_pair_counts(const Field& f, unsigned i, std::optional<std::uint64_t> seed) {
  require_hypotheses(f, i);
  CheckResult r;
  const bool full = exhaustive(f);
  const std::uint64_t sd = seed.value_or(kDefaultSeed);
  std::vector<felem> alphas;
  if (full)
    for (felem a = 2; a <= f.mask(); ++a) alphas.push_back(a);
  else
    alphas = sample_alphas(f, sd);
  std::vector<std::pair<felem, felem>> pairs;
  if (!full) {
    pairs = sample_pairs(f, sd);
    r.branches["sampled"] = 1;
  }
  for (felem alpha : alphas) {
    const auto scan_one = [&](felem c, felem d) {
      const PairSystem S = walsh_support_system(f, i, alpha, c, d);
      const std::uint64_t n = pair_count(f, S);
      ++r.cases;
      ++r.branches[cd_case_label(cd_coeffs(f, i, alpha, c, d))];
      if (n == 1)
        ++r.branches["count_1"];
      else if (n == 4)
        ++r.branches["count_4"];
      else
        note_failure(r, "pair system count " + std::to_string(n) + " at alpha=" +
                            hex_string(alpha) + " c=" + hex_string(c) + " d=" + hex_string(d));
    };
    if (full) {
      for (felem c = 0; c <= f.mask(); ++c)
        for (felem d = 0; d <= f.mask(); ++d)
          if (c || d) scan_one(c, d);
    } else {
      for (const auto& [c, d] : pairs) scan_one(c, d);
    }
  }
  return r;
}

CheckResult verify_b7_nonzero(const Field& f, unsigned i, std::optional<std::uint64_t> seed) {
  require_hypotheses(f, i);
  CheckResult r;
  r.branches["b7_case"] = 0;  // stays 0 when the case is vacuous for this (k, i)
  const bool full = exhaustive(f);
  const std::uint64_t sd = seed.value_or(kDefaultSeed);
  std::vector<felem> alphas;
  if (full)
    for (felem a = 2; a <= f.mask(); ++a) alphas.push_back(a);
  else {
    alphas = sample_alphas(f, sd);
    r.branches["sampled"] = 1;
  }
  for (felem alpha : alphas) {
    const auto scan_one = [&](felem c, felem d) {
      const CdCoeffs cc = cd_coeffs(f, i, alpha, c, d);
      ++r.cases;
      if (cc.b4 != 0 && cc.b5 == 0 && cc.b6 != 0) {
        ++r.branches["b7_case"];
        if (b7_coeff(f, i, cc) == 0)
          note_failure(r, "b7 vanished at alpha=" + hex_string(alpha) + " c=" + hex_string(c) +
                              " d=" + hex_string(d));
      }
    };
    if (full) {
      for (felem c = 0; c <= f.mask(); ++c)
        for (felem d = 0; d <= f.mask(); ++d)
          if (c || d) scan_one(c, d);
    } else {
      for (const auto& [c, d] : sample_pairs(f, sd)) scan_one(c, d);
    }
  }
  return r;
}

CheckResult verify_cdxy(const Field& f, unsigned i, std::optional<std::uint64_t> seed) {
  require_hypotheses(f, i);
  CheckResult r;
  const auto scan_one = [&](felem c, felem d) {
    std::vector<std::pair<felem, felem>> sols;
    pair_count(f, unit_xy_system(f, i, c, d), &sols);
    ++r.cases;
    if (sols.size() != 4) {
      note_failure(r, "xy system has " + std::to_string(sols.size()) + " solutions at c=" +
                          hex_string(c) + " d=" + hex_string(d));
      return;
    }
    ++r.branches["solutions_4"];
    std::set<std::pair<felem, felem>> nz(sols.begin(), sols.end());
    nz.erase({0, 0});
    const auto [x, y] = *nz.begin();
    const std::set<std::pair<felem, felem>> orbit = {
        {x, y}, {y, static_cast<felem>(x ^ y)}, {static_cast<felem>(x ^ y), x}};
    if (nz == orbit)
      ++r.branches["orbit_ok"];
    else
      note_failure(r, "orbit structure broken at c=" + hex_string(c) + " d=" + hex_string(d));
  };
  if (exhaustive(f)) {
    for (felem c = 0; c <= f.mask(); ++c)
      for (felem d = 0; d <= f.mask(); ++d)
        if (c || d) scan_one(c, d);
  } else {
    r.branches["sampled"] = 1;
    for (const auto& [c, d] : sample_pairs(f, seed.value_or(kDefaultSeed))) scan_one(c, d);
  }
  return r;
}

CheckResult verify_uv_unit(const Field& f, unsigned i, std::optional<std::uint64_t> seed) {
  require_hypotheses(f, i);
  CheckResult r;
  const auto scan_one = [&](felem c, felem d) {
    const std::uint64_t n = pair_count(f, unit_uv_system(f, i, c, d));
    ++r.cases;
    if (n == 4)
      ++r.branches["solutions_4"];
    else
      note_failure(r, "uv unit system has " + std::to_string(n) + " solutions at c=" +
                          hex_string(c) + " d=" + hex_string(d));
  };
  if (exhaustive(f)) {
    for (felem c = 0; c <= f.mask(); ++c)
      for (felem d = 0; d <= f.mask(); ++d)
        if (c || d) scan_one(c, d);
  } else {
    r.branches["sampled"] = 1;
    for (const auto& [c, d] : sample_pairs(f, seed.value_or(kDefaultSeed))) scan_one(c, d);
  }
  return r;
}

namespace {

void merge_into(CheckResult& into, const CheckResult& from) {
  into.passed = into.passed && from.passed;
  into.cases += from.cases;
  for (const auto& [k, v] : from.branches) into.branches[k] += v;
  if (into.failure.empty()) into.failure = from.failure;
}

}  // namespace

LemmaSuite run_lemma_suite(const Field& f, unsigned i, std::optional<std::uint64_t> seed) {
  require_hypotheses(f, i);
  const auto start = std::chrono::steady_clock::now();
  LemmaSuite s;
  s.k = f.k();
  s.i = i;
  s.modulus = f.modulus();
  if (!exhaustive(f)) s.seed = seed.value_or(kDefaultSeed);

  CheckResult uv, cd;
  if (exhaustive(f)) {
    for (felem a = 2; a <= f.mask(); ++a) {
      merge_into(uv, verify_characterization_uv(f, i, a, seed));
      merge_into(cd, verify_characterization_cd(f, i, a, seed));
    }
  } else {
    for (felem a : sample_alphas(f, seed.value_or(kDefaultSeed))) {
      merge_into(uv, verify_characterization_uv(f, i, a, seed));
      merge_into(cd, verify_characterization_cd(f, i, a, seed));
    }
  }
  s.checks.emplace_back("uv_characterization", uv);
  s.checks.emplace_back("cd_characterization", cd);
  s.checks.emplace_back("pair_system_counts", verify_pair_counts(f, i, seed));
  s.checks.emplace_back("b7_nonzero", verify_b7_nonzero(f, i, seed));
  s.checks.emplace_back("xy_unit_exact4", verify_cdxy(f, i, seed));
  s.checks.emplace_back("uv_unit_exact4", verify_uv_unit(f, i, seed));

  for (const auto& [name, res] : s.checks) s.all_passed = s.all_passed && res.passed;
  s.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return s;
}

nlohmann::ordered_json lemma_suite_json(const LemmaSuite& s) {
  using json = nlohmann::ordered_json;
  json j;
  json p;
  p["k"] = s.k;
  p["i"] = s.i;
  p["modulus_hex"] = hex_string(s.modulus);
  p["seed"] = s.seed ? json(*s.seed) : json(nullptr);
  j["params"] = p;
  json checks = json::object();
  for (const auto& [name, res] : s.checks) {
    json c;
    c["passed"] = res.passed;
    c["cases"] = res.cases;
    c["branches"] = json::object();
    for (const auto& [b, n] : res.branches) c["branches"][b] = n;
    if (!res.failure.empty()) c["failure"] = res.failure;
    checks[name] = c;
  }
  j["checks"] = checks;
  j["all_passed"] = s.all_passed;
  j["timing_ms"] = s.timing_ms;
  return j;
}

}  // namespace bfly

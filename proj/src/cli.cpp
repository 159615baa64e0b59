#include "bfly/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numeric>
#include <optional>
#include <sstream>

#include "bfly/butterfly.hpp"
#include "bfly/lemma_oracle.hpp"
#include "bfly/parallel.hpp"
#include "bfly/report.hpp"
#include "bfly/search.hpp"
#include "bfly/util.hpp"

namespace bfly::cli {
namespace {

constexpr int kOk = 0;
constexpr int kTheoremFailure = 1;
constexpr int kUsage = 2;

struct ParamOpts {
  unsigned k = 0;
  int i = -1;  // -1 means "not given" (defaults to 1 unless --e is used)
  unsigned t = 0;
  std::uint64_t e = 0;  // 0 means "not given"
  std::string alpha_hex = "0x2";
  std::string modulus_hex;
  std::string variant = "open";
  bool allow_nonstrict = false;
};

void add_param_options(CLI::App* cmd, ParamOpts& o) {
  cmd->add_option("--k", o.k, "field degree k (branch width)")->required();
  cmd->add_option("--i", o.i, "Gold exponent parameter i, e = (2^i + 1) * 2^t (default 1)");
  cmd->add_option("--t", o.t, "Gold twist t (default 0)");
  auto* e_opt = cmd->add_option("--e", o.e, "raw exponent instead of a Gold pair");
  e_opt->excludes("--i");
  e_opt->excludes("--t");
  cmd->add_option("--alpha", o.alpha_hex, "branch coefficient alpha, hex (default 0x2)");
  cmd->add_option("--modulus", o.modulus_hex, "field modulus, hex (default: built-in per k)");
  cmd->add_option("--variant", o.variant, "open | closed (default open)")
      ->check(CLI::IsMember({"open", "closed"}));
  cmd->add_flag("--allow-nonstrict", o.allow_nonstrict,
                "permit even k, gcd(i,k) > 1, raw exponents, or alpha in {0,1}");
}

Field make_field(const ParamOpts& o) {
  if (o.modulus_hex.empty()) return Field(o.k);
  return Field(o.k, static_cast<std::uint32_t>(parse_hex(o.modulus_hex)));
}

Butterfly make_butterfly(const ParamOpts& o) {
  const Field f = make_field(o);
  const felem alpha = static_cast<felem>(parse_hex(o.alpha_hex));
  const Variant v = o.variant == "closed" ? Variant::closed : Variant::open;
  if (o.e != 0) return Butterfly::raw(f, o.e, alpha, v);
  const unsigned i = o.i >= 0 ? static_cast<unsigned>(o.i) : 1;
  return Butterfly::gold(f, i, o.t, alpha, v);
}

std::string nonstrict_reason(const Butterfly& b) {
  std::vector<std::string> parts;
  const unsigned k = b.field().k();
  if (k % 2 == 0) parts.push_back("k is even");
  if (!b.gold_i())
    parts.push_back("raw exponent (no Gold pair)");
  else if (std::gcd(static_cast<unsigned long long>(*b.gold_i()), static_cast<unsigned long long>(k)) != 1)
    parts.push_back("gcd(i,k) != 1");
  if (b.alpha() <= 1) parts.push_back("alpha in {0,1}");
  std::string msg;
  for (const std::string& p : parts) msg += (msg.empty() ? "" : "; ") + p;
  return msg.empty() ? "unknown" : msg;
}

unsigned parse_analyses(const std::vector<std::string>& names) {
  if (names.empty()) return kAnalyzeAll;
  unsigned flags = 0;
  for (const std::string& nm : names) {
    if (nm == "all")
      flags |= kAnalyzeAll;
    else if (nm == "delta")
      flags |= kAnalyzeDelta;
    else if (nm == "walsh")
      flags |= kAnalyzeWalsh;
    else if (nm == "degree")
      flags |= kAnalyzeDegree;
    else if (nm == "bijectivity")
      flags |= kAnalyzeBijectivity;
    else
      fail(errc::bad_parameters, "unknown analysis '" + nm + "'");
  }
  return flags;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(errc::bad_parameters, "cannot open output file: " + path);
  f << text;
  if (!f) fail(errc::bad_parameters, "write failed: " + path);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_text_file(path, text);
}

int report_violations(const std::vector<AnalysisReport>& rows, std::ostream& err) {
  unsigned n = 0;
  for (const AnalysisReport& r : rows)
    for (const std::string& v : strict_theorem_violations(r)) {
      err << "theorem violation: " << v << '\n';
      ++n;
    }
  return n == 0 ? kOk : kTheoremFailure;
}

int do_analyze(const ParamOpts& p, const std::vector<std::string>& analyses, unsigned workers,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
  const Butterfly b = make_butterfly(p);
  if (!b.strict() && !p.allow_nonstrict) {
    err << "error: parameters violate the strict hypotheses (" << nonstrict_reason(b)
        << "); pass --allow-nonstrict to analyze anyway\n";
    return kUsage;
  }
  const AnalysisReport r = analyze(b, parse_analyses(analyses), resolve_workers(workers));
  emit(report_json(r).dump(2) + "\n", out_path, out);
  return report_violations({r}, err);
}

int do_sweep(const std::vector<unsigned>& ks, const std::string& exponents,
             const std::string& alphas, const std::vector<std::string>& alpha_list,
             const std::string& variant, const std::vector<std::string>& analyses,
             std::uint64_t budget, unsigned workers, const std::string& out_path,
             const std::string& csv_path, std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  spec.ks = ks;
  spec.exponents =
      exponents == "all" ? SweepSpec::Exponents::all : SweepSpec::Exponents::gold;
  if (!alpha_list.empty() || alphas == "list") {
    if (alpha_list.empty()) fail(errc::bad_parameters, "--alphas list requires --alpha values");
    spec.alphas = SweepSpec::Alphas::list;
    for (const std::string& a : alpha_list)
      spec.alpha_list.push_back(static_cast<felem>(parse_hex(a)));
  } else {
    spec.alphas = alphas == "all" ? SweepSpec::Alphas::all : SweepSpec::Alphas::strict;
  }
  if (variant == "open")
    spec.variants = {Variant::open};
  else if (variant == "closed")
    spec.variants = {Variant::closed};
  else
    spec.variants = {Variant::open, Variant::closed};
  spec.analyses = parse_analyses(analyses);
  spec.budget = budget;
  spec.workers = resolve_workers(workers);

  const std::vector<AnalysisReport> rows = sweep(spec);
  std::ostringstream jsonl;
  write_sweep_jsonl(rows, jsonl);
  emit(jsonl.str(), out_path, out);
  if (!csv_path.empty()) {
    std::ostringstream csv;
    write_sweep_csv(rows, csv);
    write_text_file(csv_path, csv.str());
  }
  return report_violations(rows, err);
}

int do_apn_search(unsigned k, const std::string& exponents, unsigned workers,
                  const std::string& out_path, std::ostream& out) {
  const auto source =
      exponents == "gold" ? SweepSpec::Exponents::gold : SweepSpec::Exponents::all;
  const std::vector<ApnHit> hits = apn_search(k, source, resolve_workers(workers));
  nlohmann::ordered_json j;
  j["k"] = k;
  j["exponents"] = exponents;
  j["hits"] = nlohmann::ordered_json::array();
  for (const ApnHit& h : hits)
    j["hits"].push_back({{"e", h.e}, {"alpha_hex", hex_string(h.alpha)}, {"delta", h.delta}});
  emit(j.dump(2) + "\n", out_path, out);
  return kOk;
}

int do_perm_scan(unsigned k, std::uint64_t e, unsigned workers, const std::string& out_path,
                 std::ostream& out) {
  const std::vector<felem> alphas = permutation_scan(k, e, resolve_workers(workers));
  nlohmann::ordered_json j;
  j["k"] = k;
  j["e"] = e;
  j["alphas_hex"] = nlohmann::ordered_json::array();
  for (felem a : alphas) j["alphas_hex"].push_back(hex_string(a));
  emit(j.dump(2) + "\n", out_path, out);
  return kOk;
}

int do_export_lut(const ParamOpts& p, const std::string& format, unsigned workers,
                  const std::string& out_path, std::ostream& err) {
  const Butterfly b = make_butterfly(p);
  if (!b.strict() && !p.allow_nonstrict) {
    err << "error: parameters violate the strict hypotheses (" << nonstrict_reason(b)
        << "); pass --allow-nonstrict to export anyway\n";
    return kUsage;
  }
  const Vbf lut = b.materialize_lut(resolve_workers(workers));
  std::ofstream f(out_path, std::ios::binary);
  if (!f) fail(errc::bad_parameters, "cannot open output file: " + out_path);
  if (format == "binary")
    export_lut_binary(lut, f);
  else
    export_lut_text(b, lut, f);
  if (!f) fail(errc::bad_parameters, "write failed: " + out_path);
  return kOk;
}

int do_verify_lemmas(unsigned k, unsigned i, const std::string& modulus_hex,
                     std::optional<std::uint64_t> seed, const std::string& out_path,
                     std::ostream& out, std::ostream& err) {
  const Field f = modulus_hex.empty()
                      ? Field(k)
                      : Field(k, static_cast<std::uint32_t>(parse_hex(modulus_hex)));
  const LemmaSuite suite = run_lemma_suite(f, i, seed);
  emit(lemma_suite_json(suite).dump(2) + "\n", out_path, out);
  if (!suite.all_passed) {
    for (const auto& [name, res] : suite.checks)
      if (!res.passed) err << "lemma check failed: " << name << ": " << res.failure << '\n';
    return kTheoremFailure;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"butterfly S-box construction and analysis over GF(2^k)^2"};
  app.require_subcommand(1);

  ParamOpts an_params;
  std::vector<std::string> an_analyses;
  unsigned an_workers = 0;
  std::string an_out;
  CLI::App* an = app.add_subcommand("analyze", "analyze one butterfly and emit a JSON report");
  add_param_options(an, an_params);
  an->add_option("--analyses", an_analyses,
                 "comma list of delta,walsh,degree,bijectivity or all (default all)")
      ->delimiter(',');
  an->add_option("--workers", an_workers, "worker threads (default: BUTTERFLY_WORKERS or cores)");
  an->add_option("--out", an_out, "write the JSON report here instead of stdout");

  std::vector<unsigned> sw_ks;
  std::string sw_exponents = "gold", sw_alphas = "strict", sw_variant = "both";
  std::vector<std::string> sw_alpha_list, sw_analyses;
  std::uint64_t sw_budget = 1ull << 34;
  unsigned sw_workers = 0;
  std::string sw_out, sw_csv;
  CLI::App* sw = app.add_subcommand("sweep", "analyze a family of butterflies, one JSON line each");
  sw->add_option("--k", sw_ks, "field degrees to sweep (repeatable)")->required();
  sw->add_option("--exponents", sw_exponents, "gold | all (default gold)")
      ->check(CLI::IsMember({"gold", "all"}));
  sw->add_option("--alphas", sw_alphas, "strict | all | list (default strict)")
      ->check(CLI::IsMember({"strict", "all", "list"}));
  sw->add_option("--alpha", sw_alpha_list, "explicit alpha values, hex (implies --alphas list)");
  sw->add_option("--variant", sw_variant, "open | closed | both (default both)")
      ->check(CLI::IsMember({"open", "closed", "both"}));
  sw->add_option("--analyses", sw_analyses,
                 "comma list of delta,walsh,degree,bijectivity or all (default all)")
      ->delimiter(',');
  sw->add_option("--budget", sw_budget, "elementary-operation budget (default 2^34)");
  sw->add_option("--workers", sw_workers, "worker threads");
  sw->add_option("--out", sw_out, "JSONL output path (default stdout)");
  sw->add_option("--csv", sw_csv, "also write a CSV summary here");

  unsigned ap_k = 0, ap_workers = 0;
  std::string ap_exponents = "all", ap_out;
  CLI::App* ap = app.add_subcommand("apn-search", "hunt for delta=2 open butterflies");
  ap->add_option("--k", ap_k, "field degree (odd, <= 7)")->required();
  ap->add_option("--exponents", ap_exponents, "gold | all (default all)")
      ->check(CLI::IsMember({"gold", "all"}));
  ap->add_option("--workers", ap_workers, "worker threads");
  ap->add_option("--out", ap_out, "JSON output path (default stdout)");

  unsigned ps_k = 0, ps_workers = 0;
  std::uint64_t ps_e = 3;
  std::string ps_out;
  CLI::App* ps = app.add_subcommand("perm-scan", "list alphas whose closed butterfly is bijective");
  ps->add_option("--k", ps_k, "field degree (<= 7)")->required();
  ps->add_option("--e", ps_e, "exponent (default 3)");
  ps->add_option("--workers", ps_workers, "worker threads");
  ps->add_option("--out", ps_out, "JSON output path (default stdout)");

  ParamOpts ex_params;
  std::string ex_format = "text", ex_out;
  unsigned ex_workers = 0;
  CLI::App* ex = app.add_subcommand("export-lut", "materialize a butterfly lookup table to a file");
  add_param_options(ex, ex_params);
  ex->add_option("--format", ex_format, "text | binary (default text)")
      ->check(CLI::IsMember({"text", "binary"}));
  ex->add_option("--workers", ex_workers, "worker threads");
  ex->add_option("--out", ex_out, "output path")->required();

  unsigned vl_k = 0, vl_i = 1;
  std::string vl_modulus, vl_out;
  std::uint64_t vl_seed = 0;
  CLI::App* vl = app.add_subcommand("verify-lemmas", "run the equation-counting lemma suite");
  vl->add_option("--k", vl_k, "field degree (odd)")->required();
  vl->add_option("--i", vl_i, "Frobenius parameter i, coprime to k (default 1)");
  vl->add_option("--modulus", vl_modulus, "field modulus, hex (default: built-in per k)");
  CLI::Option* vl_seed_opt =
      vl->add_option("--seed", vl_seed, "seed for sampled verifiers at large k");
  vl->add_option("--out", vl_out, "JSON output path (default stdout)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*an) return do_analyze(an_params, an_analyses, an_workers, an_out, out, err);
    if (*sw)
      return do_sweep(sw_ks, sw_exponents, sw_alphas, sw_alpha_list, sw_variant, sw_analyses,
                      sw_budget, sw_workers, sw_out, sw_csv, out, err);
    if (*ap) return do_apn_search(ap_k, ap_exponents, ap_workers, ap_out, out);
    if (*ps) return do_perm_scan(ps_k, ps_e, ps_workers, ps_out, out);
    if (*ex) return do_export_lut(ex_params, ex_format, ex_workers, ex_out, err);
    if (*vl) {
      std::optional<std::uint64_t> seed;
      if (vl_seed_opt->count() > 0) seed = vl_seed;
      return do_verify_lemmas(vl_k, vl_i, vl_modulus, seed, vl_out, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace bfly::cli

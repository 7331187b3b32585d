#pragma once

// Command-line front end. run() returns 0 when every check passes, 1 when a
// mismatch was found and 2 on usage errors.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loopwalk/identities.hpp"
#include "loopwalk/io.hpp"
#include "loopwalk/loop_engine.hpp"
#include "loopwalk/models.hpp"
#include "loopwalk/montecarlo.hpp"
#include "loopwalk/special_polys.hpp"
#include "loopwalk/umbral.hpp"

namespace loopwalk::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

enum class OutputFormat { Text, Json, Csv };

struct RunConfig {
  std::string subcommand;
  std::size_t order = kDefaultOrder;
  OutputFormat output = OutputFormat::Text;
  std::uint64_t seed = 1;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Default truncation order: LOOPWALK_ORDER if set, else 30.
inline std::size_t default_order() {
  const char* env = std::getenv("LOOPWALK_ORDER");
  if (env == nullptr || *env == '\0') return kDefaultOrder;
  const std::string text(env);
  if (text.find_first_not_of("0123456789") != std::string::npos || text.size() > 6) {
    throw UsageError("LOOPWALK_ORDER must be a natural number, got '" + text + "'");
  }
  return std::stoul(text);
}

namespace detail {

inline std::vector<Rational> parse_rational_array(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
  return rationals_from_json(j);
}

inline void print_report(std::ostream& out, const RunConfig& cfg, const std::string& identity, std::size_t m,
                         const VerificationReport& r) {
  if (cfg.output == OutputFormat::Json) {
    out << report_to_json(r, identity, m).dump() << '\n';
    return;
  }
  out << (r.equal ? "PASS " : "FAIL ") << identity << " m=" << m << " order=" << r.order();
  if (r.first_mismatch) {
    out << " first_mismatch=" << *r.first_mismatch << " diff=" << to_string(r.diffs[*r.first_mismatch]);
  }
  out << '\n';
}

}  // namespace detail

/// Parses argv and runs one subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig cfg;
  try {
    cfg.order = default_order();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Exact loop decompositions of hitting times and the Bernoulli/Euler identities they imply"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output_name = "text";
  app.add_option("--order", cfg.order, "Truncation order (default 30, or LOOPWALK_ORDER)");
  app.add_option("--output", output_name, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));

  // poly
  auto* poly = app.add_subcommand("poly", "Bernoulli/Euler polynomial values B_n^{(p)}(x), E_n^{(p)}(x)");
  std::string poly_kind;
  std::size_t poly_n = 0, poly_p = 1;
  std::string poly_x = "0";
  poly->add_option("--kind", poly_kind, "bernoulli | euler | euler-number | bernoulli-number")
      ->required()
      ->check(CLI::IsMember({"bernoulli", "euler", "euler-number", "bernoulli-number"}));
  poly->add_option("--n", poly_n, "Index n")->required();
  poly->add_option("--p", poly_p, "Order p >= 1");
  poly->add_option("--x", poly_x, "Rational argument (for bernoulli-number: 0 or 1)");

  // umbral
  auto* umbral = app.add_subcommand("umbral", "Moments of symbol combos, or EGF equality of two combos");
  std::string combo_text, lhs_text, rhs_text, umbral_x = "0";
  std::optional<std::size_t> umbral_n;
  umbral->add_option("--combo", combo_text, "Combo for a moment, e.g. \"x + 2*B^1 + E^3\"");
  umbral->add_option("--n", umbral_n, "Moment index");
  umbral->add_option("--lhs", lhs_text, "Left combo of an identity");
  umbral->add_option("--rhs", rhs_text, "Right combo of an identity");
  umbral->add_option("--x", umbral_x, "Value substituted for 'x'");

  // count
  auto* count = app.add_subcommand("count", "Nonadjacent subset counts N(l,n) and n(a,l,n)");
  std::size_t count_n = 0, count_l = 0;
  std::optional<std::size_t> count_initial;
  bool count_list = false;
  count->add_option("--n", count_n, "Ambient size n")->required();
  count->add_option("--l", count_l, "Subset size l")->required();
  count->add_option("--initial", count_initial, "Restrict to subsets with smallest index a");
  count->add_flag("--list", count_list, "Also list the subsets");

  // denominator
  auto* denom = app.add_subcommand("denominator", "Signed nonadjacent loop products of the denominator");
  std::size_t denom_n = 0;
  denom->add_option("--n", denom_n, "Number of loops")->required()->check(CLI::PositiveNumber);

  // verify-loop
  auto* vloop = app.add_subcommand("verify-loop", "Verify the loop decomposition for one model");
  std::string loop_model;
  std::optional<std::size_t> loop_count;
  std::string sites_text, chain_text;
  vloop->add_option("--model", loop_model, "bm | bessel | bd")->required()->check(CLI::IsMember({"bm", "bessel", "bd"}));
  vloop->add_option("--loops", loop_count, "Equally spaced sites with this many loops");
  vloop->add_option("--sites", sites_text, "JSON array of rational sites, first 0");
  vloop->add_option("--chain", chain_text, "JSON array of rational up-probabilities of interior sites");

  // verify-identity
  auto* vid = app.add_subcommand("verify-identity", "Exact generating-function checks of the polynomial identities");
  std::string id_model;
  std::size_t id_m = 1;
  std::vector<std::string> id_x;
  vid->add_option("--model", id_model, "bm | bessel | egf")->required()->check(CLI::IsMember({"bm", "bessel", "egf"}));
  vid->add_option("--m", id_m, "Number of loops m >= 1");
  vid->add_option("--x", id_x, "Rational x points (egf only)");

  // tail
  auto* tail = app.add_subcommand("tail", "Truncation error of the geometric bracket sum");
  std::string tail_model = "bm";
  std::size_t tail_m = 1, tail_k = 0;
  tail->add_option("--model", tail_model, "bm | bessel")->check(CLI::IsMember({"bm", "bessel"}));
  tail->add_option("--m", tail_m, "Number of loops")->required();
  tail->add_option("--K", tail_k, "Number of geometric terms")->required();

  // partial
  auto* partial = app.add_subcommand("partial", "Partial sums of the rearranged identities (diagnostic)");
  std::string partial_model = "bm";
  std::size_t partial_m = 3, partial_n = 0, partial_k = 20;
  std::string partial_x = "0";
  partial->add_option("--model", partial_model, "bm | bessel")->check(CLI::IsMember({"bm", "bessel"}));
  partial->add_option("--m", partial_m, "Number of loops")->required();
  partial->add_option("--n", partial_n, "Polynomial index n")->required();
  partial->add_option("--x", partial_x, "Rational x");
  partial->add_option("--K", partial_k, "Last k of the partial sums");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate of a hitting-time transform");
  std::string sim_model, sim_level = "1", sim_chain;
  double sim_w = 0.5, sim_dt = 1e-3, sim_z = 0.5;
  std::uint64_t sim_paths = 100000;
  std::size_t sim_from = 0;
  std::optional<std::size_t> sim_to, sim_taboo;
  unsigned sim_workers = 0;
  SimOptions sim_options;
  sim->add_option("--model", sim_model, "bm | bessel | bd")->required()->check(CLI::IsMember({"bm", "bessel", "bd"}));
  sim->add_option("--level", sim_level, "Rational target level (bm, bessel)");
  sim->add_option("--w", sim_w, "Transform variable w >= 0 (bm, bessel)");
  sim->add_option("--dt", sim_dt, "Time step (bm, bessel)");
  sim->add_option("--z", sim_z, "PGF variable in (0, 1] (bd)");
  sim->add_option("--paths", sim_paths, "Number of paths");
  sim->add_option("--seed", cfg.seed, "RNG seed");
  sim->add_option("--chain", sim_chain, "JSON array of up-probabilities (bd)");
  sim->add_option("--from", sim_from, "Start site (bd)");
  sim->add_option("--to", sim_to, "Target site (bd, default top site)");
  sim->add_option("--taboo", sim_taboo, "Taboo site (bd)");
  sim->add_option("--workers", sim_workers, "Worker threads (0: all cores)");
  sim->add_option("--abs-floor", sim_options.abs_floor, "Absolute tolerance floor (bm, bessel)");
  sim->add_option("--step-cap", sim_options.step_cap, "Maximum steps per path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }
  cfg.output = output_name == "json" ? OutputFormat::Json
               : output_name == "csv" ? OutputFormat::Csv
                                      : OutputFormat::Text;
  cfg.subcommand = app.get_subcommands().front()->get_name();
  const bool as_json = cfg.output == OutputFormat::Json;

  try {
    if (cfg.subcommand == "poly") {
      Rational value;
      Rational x = parse_rational(poly_x);
      if (poly_kind == "bernoulli") {
        value = bernoulli_poly(poly_n, poly_p, x);
      } else if (poly_kind == "euler") {
        value = euler_poly(poly_n, poly_p, x);
      } else if (poly_kind == "euler-number") {
        value = euler_number(poly_n);
      } else {
        if (x != 0 && x != 1) throw UsageError("bernoulli-number needs --x 0 or --x 1");
        value = bernoulli_number_at(poly_n, x == 0 ? 0 : 1);
      }
      if (as_json) {
        out << json{{"kind", poly_kind}, {"n", poly_n}, {"p", poly_p}, {"x", to_string(x)}, {"value", to_string(value)}}.dump()
            << '\n';
      } else {
        out << to_string(value) << '\n';
      }
      return kExitPass;
    }

    if (cfg.subcommand == "umbral") {
      const Rational x = parse_rational(umbral_x);
      if (!combo_text.empty()) {
        if (!umbral_n) throw UsageError("--combo needs --n");
        const SymbolCombo combo = parse_combo(combo_text, x);
        const Rational moment = combo_moment(combo, *umbral_n);
        if (as_json) {
          out << json{{"combo", to_string(combo)}, {"n", *umbral_n}, {"moment", to_string(moment)}}.dump() << '\n';
        } else {
          out << to_string(moment) << '\n';
        }
        return kExitPass;
      }
      if (lhs_text.empty() || rhs_text.empty()) throw UsageError("umbral needs --combo and --n, or --lhs and --rhs");
      const SymbolCombo lhs = parse_combo(lhs_text, x);
      const SymbolCombo rhs = parse_combo(rhs_text, x);
      const auto report = verify_symbol_identity(lhs, rhs, cfg.order);
      detail::print_report(out, cfg, to_string(lhs) + " = " + to_string(rhs), 0, report);
      return report.equal ? kExitPass : kExitMismatch;
    }

    if (cfg.subcommand == "count") {
      const std::size_t value = count_initial ? count_with_initial(*count_initial, count_l, count_n)
                                              : count_nonadjacent(count_l, count_n);
      std::vector<NonadjacentSubset> listed;
      if (count_list) {
        for (auto& s : nonadjacent_subsets(count_n, count_l)) {
          if (!count_initial || s.initial() == *count_initial) listed.push_back(std::move(s));
        }
      }
      if (as_json) {
        json j{{"n", count_n}, {"l", count_l}, {"count", value}};
        if (count_initial) j["initial"] = *count_initial;
        if (count_list) {
          j["subsets"] = json::array();
          for (const auto& s : listed) j["subsets"].push_back(s.indices);
        }
        out << j.dump() << '\n';
      } else {
        out << value << '\n';
        for (const auto& s : listed) {
          out << '{';
          for (std::size_t i = 0; i < s.indices.size(); ++i) out << (i ? "," : "") << s.indices[i];
          out << "}\n";
        }
      }
      return kExitPass;
    }

    if (cfg.subcommand == "denominator") {
      const auto terms = denominator_terms(denom_n);
      if (as_json) {
        json list = json::array();
        for (const auto& t : terms) list.push_back({{"sign", t.sign}, {"indices", t.subset.indices}});
        out << json{{"n", denom_n}, {"terms", list}, {"rendered", render_terms(terms)}}.dump() << '\n';
      } else {
        out << render_terms(terms) << '\n';
      }
      return kExitPass;
    }

    if (cfg.subcommand == "verify-loop") {
      LoopSystem system;
      std::string label = loop_model;
      std::size_t loops = 0;
      if (loop_model == "bd") {
        if (chain_text.empty()) throw UsageError("--model bd needs --chain");
        BirthDeathChain chain(detail::parse_rational_array(chain_text));
        system = bd_system(chain, cfg.order);
      } else {
        std::optional<SiteConfig> sites;
        if (!sites_text.empty()) {
          sites.emplace(detail::parse_rational_array(sites_text));
        } else if (loop_count) {
          // BM: n loops need sites 0..n+1; Bessel: m interior loops need sites 0..m+2.
          sites.emplace(SiteConfig::equally_spaced(*loop_count + (loop_model == "bm" ? 2 : 3)));
        } else {
          throw UsageError("verify-loop needs --loops or --sites");
        }
        system = loop_model == "bm" ? bm_system(*sites, cfg.order) : bessel_system(*sites, cfg.order);
      }
      loops = system.loops.size();
      const auto report = verify_loop(system);
      detail::print_report(out, cfg, "loop_" + label, loops, report);
      return report.equal ? kExitPass : kExitMismatch;
    }

    if (cfg.subcommand == "verify-identity") {
      std::vector<std::pair<std::string, VerificationReport>> reports;
      if (id_model == "egf") {
        if (id_x.empty()) id_x.push_back("0");
        for (const auto& x : id_x) reports.emplace_back("egf_proof x=" + x, egf_proof_check(parse_rational(x), cfg.order));
      } else {
        IdentitySpec spec{id_model == "bm" ? IdentityModel::BM : IdentityModel::Bessel, id_m, cfg.order, {}};
        for (const auto& x : id_x) spec.x_points.push_back(parse_rational(x));
        reports = verify_identity(spec);
      }
      bool all = true;
      for (const auto& [name, report] : reports) {
        detail::print_report(out, cfg, name, id_model == "egf" ? 3 : id_m, report);
        all = all && report.equal;
      }
      return all ? kExitPass : kExitMismatch;
    }

    if (cfg.subcommand == "tail") {
      const BracketPoly bracket = tail_model == "bm" ? bm_bracket_poly(tail_m) : bessel_bracket_poly(tail_m);
      const TailReport report = geometric_tail_report(bracket, cfg.order, tail_k);
      if (as_json) {
        json errors = json::array();
        for (const auto& e : report.errors) errors.push_back(to_string(e));
        out << json{{"model", tail_model}, {"m", tail_m}, {"K", tail_k}, {"order", cfg.order}, {"errors", errors}}.dump()
            << '\n';
      } else {
        out << "j,error\n";
        for (std::size_t j = 0; j < report.errors.size(); ++j) out << j << ',' << format_double(report.errors[j].get_d()) << '\n';
      }
      return kExitPass;
    }

    if (cfg.subcommand == "partial") {
      const Rational x = parse_rational(partial_x);
      const PartialSums sums = partial_model == "bm" ? euler_identity_partial(partial_m, partial_n, x, partial_k)
                                                     : bessel_identity_partial(partial_m, partial_n, x, partial_k);
      if (as_json) {
        json rows = json::array();
        for (const auto& s : sums.partial) rows.push_back(to_string(s));
        json j{{"model", partial_model}, {"m", partial_m}, {"n", partial_n}, {"x", to_string(x)},
               {"target", to_string(sums.target)}, {"partial_sums", rows}};
        if (!sums.partial_alt.empty()) {
          json alt = json::array();
          for (const auto& s : sums.partial_alt) alt.push_back(to_string(s));
          j["partial_sums_alt"] = alt;
        }
        out << j.dump() << '\n';
      } else {
        write_partial_csv(out, sums);
      }
      return kExitPass;
    }

    if (cfg.subcommand == "simulate") {
      sim_options.workers = sim_workers;
      SimReport report;
      if (sim_model == "bd") {
        if (sim_chain.empty()) throw UsageError("--model bd needs --chain");
        BirthDeathChain chain(detail::parse_rational_array(sim_chain));
        report = simulate_bd(chain, sim_from, sim_to.value_or(chain.top()), sim_taboo, sim_z, sim_paths, cfg.seed,
                             sim_options);
      } else if (sim_model == "bm") {
        report = simulate_bm_hit(parse_rational(sim_level), sim_w, sim_paths, sim_dt, cfg.seed, sim_options);
      } else {
        report = simulate_bessel_hit(parse_rational(sim_level), sim_w, sim_paths, sim_dt, cfg.seed, sim_options);
      }
      if (as_json) {
        out << sim_to_json(report).dump() << '\n';
      } else {
        out << (report.pass ? "PASS " : "FAIL ") << report.model << " estimate=" << format_double(report.estimate)
            << " se=" << format_double(report.std_error) << " target=" << format_double(report.target) << '\n';
      }
      return report.pass ? kExitPass : kExitMismatch;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << app.get_subcommands().front()->help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace loopwalk::cli

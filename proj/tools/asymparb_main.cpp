// asymparb: batch front-end for the consistent-price-system laboratory.
//
// Exit codes: 0 success, 2 input/validation failure (details on stderr),
// 1 internal or LP failure. Outputs are pure functions of (flags, inputs,
// seed); rerunning a command reproduces the files byte for byte.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "asymparb/cps_lp.hpp"
#include "asymparb/example_six.hpp"
#include "asymparb/halmos_savage.hpp"
#include "asymparb/market_io.hpp"
#include "asymparb/sequence_lab.hpp"
#include "asymparb/subset_scan.hpp"

namespace {

using asymparb::io::fmt_g9;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;

class ValidationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

asymparb::FiniteMarket load_market_checked(const std::string& path,
                                           std::optional<double> lambda_override) {
  asymparb::FiniteMarket market = asymparb::io::load_market(path);
  if (lambda_override) market.lambda = *lambda_override;
  auto violations = asymparb::validate_market(market);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << path << " failed validation:";
    for (const auto& v : violations) msg << "\n  " << asymparb::to_string(v);
    throw ValidationFailure(msg.str());
  }
  return market;
}

json cps_to_json(const asymparb::ConsistentPriceSystem& cps,
                 const asymparb::EventTree& tree) {
  json j;
  json weights = json::object();
  for (int l = 0; l < tree.leaf_count(); ++l)
    weights[std::to_string(tree.leaf_node(l))] = cps.measure.leaf_weight(l);
  j["leaf_weights"] = std::move(weights);
  j["shadow"] = cps.shadow;
  return j;
}

json strategy_to_json(const asymparb::TradingStrategy& s) {
  json j;
  j["phi0"] = s.phi0;
  j["phi1"] = s.phi1;
  j["buy1"] = s.buy1;
  j["sell1"] = s.sell1;
  j["delta0"] = s.delta0;
  return j;
}

int run_cps(const std::string& market_path, std::optional<double> lambda,
            const std::string& out) {
  asymparb::FiniteMarket market = load_market_checked(market_path, std::nullopt);
  double lam = lambda.value_or(market.lambda);
  auto cps = asymparb::find_cps(market, lam);
  json j;
  j["lambda"] = lam;
  j["exists"] = cps.has_value();
  if (cps) j["cps"] = cps_to_json(*cps, market.tree);
  write_output(out, j.dump(2) + "\n");
  return kExitOk;
}

int run_arb(const std::string& market_path, std::optional<double> lambda,
            const std::string& out) {
  asymparb::FiniteMarket market = load_market_checked(market_path, std::nullopt);
  double lam = lambda.value_or(market.lambda);
  auto strategy = asymparb::find_arbitrage(market, lam);
  json j;
  j["lambda"] = lam;
  j["exists"] = strategy.has_value();
  if (strategy) {
    j["strategy"] = strategy_to_json(*strategy);
    market.lambda = lam;
    j["terminal_values"] = asymparb::liquidation_value(*strategy, market);
  }
  write_output(out, j.dump(2) + "\n");
  return kExitOk;
}

int run_superrep(const std::string& market_path, const std::string& claim_path,
                 std::optional<double> lambda, const std::string& out) {
  asymparb::FiniteMarket market = load_market_checked(market_path, std::nullopt);
  double lam = lambda.value_or(market.lambda);
  std::vector<double> claim = asymparb::io::load_claim(claim_path, market.tree);
  asymparb::SuperrepResult rep = asymparb::superreplicate(market, lam, claim);
  json j;
  j["lambda"] = lam;
  j["solvable"] = rep.solvable;
  if (rep.solvable) {
    j["dual_value"] = rep.dual_value;
    j["primal_value"] = rep.primal_value;
    j["witness_strategy"] = strategy_to_json(rep.witness_strategy);
    if (rep.witness_cps) j["witness_cps"] = cps_to_json(*rep.witness_cps, market.tree);
  }
  write_output(out, j.dump(2) + "\n");
  return kExitOk;
}

json certificate_to_json(const asymparb::hs::HsCertificate& cert) {
  json j;
  j["weights"] = cert.weights;
  j["vacuous"] = cert.vacuous;
  if (cert.vacuous)
    j["value"] = nullptr;
  else
    j["value"] = cert.value;
  j["threshold"] = cert.threshold;
  j["witness"] = asymparb::subset_to_string(cert.witness);
  j["pass"] = cert.pass;
  return j;
}

int run_hs(bool first_kind, const std::string& family_path, double epsilon,
           double delta, const std::string& out) {
  asymparb::hs::FiniteMeasureFamily family = asymparb::io::load_family(family_path);
  try {
    asymparb::hs::require_valid(family);
  } catch (const std::invalid_argument& e) {
    throw ValidationFailure(e.what());
  }
  json j;
  auto check = first_kind ? asymparb::hs::verify_hs1(family, epsilon, delta)
                          : asymparb::hs::verify_hs2(family, epsilon, delta);
  j["hypothesis_holds"] = check.holds;
  if (!check.holds)
    j["hypothesis_counterexample"] = asymparb::subset_to_string(check.counterexample);
  auto cert = first_kind ? asymparb::hs::hs1_find_q0(family, epsilon, delta)
                         : asymparb::hs::hs2_find_q0(family, epsilon, delta);
  j["certificate"] = certificate_to_json(cert);
  write_output(out, j.dump(2) + "\n");
  return kExitOk;
}

int run_lemma_l(const std::string& sequence_path, double epsilon,
                const std::string& direction, double eta, const std::string& out,
                const std::string& summary) {
  asymparb::seq::MarketSequence sequence = asymparb::io::load_sequence(sequence_path);
  try {
    asymparb::seq::require_valid(sequence);
  } catch (const std::invalid_argument& e) {
    throw ValidationFailure(e.what());
  }

  std::ostringstream csv;
  json sum;
  if (direction == "sep") {
    csv << "n,eta,p_mass,sup_q,subset\n";
    auto rows = asymparb::seq::separability_scan(sequence, eta);
    for (const auto& r : rows)
      csv << r.n << ',' << fmt_g9(eta) << ',' << fmt_g9(r.p_mass) << ','
          << fmt_g9(r.sup_q) << ',' << asymparb::subset_to_string(r.subset) << '\n';
    sum["eta"] = eta;
    sum["direction"] = "sep";
  } else {
    auto profile = direction == "inf" ? asymparb::seq::inf_profile(sequence, epsilon)
                                      : asymparb::seq::sup_profile(sequence, epsilon);
    csv << "n,epsilon,delta_n\n";
    for (const auto& r : profile.rows)
      csv << r.n << ',' << fmt_g9(r.epsilon) << ',' << fmt_g9(r.delta_n) << '\n';
    sum["epsilon"] = epsilon;
    sum["direction"] = direction;
    sum["delta_star"] = profile.delta_star;
  }
  write_output(out, csv.str());
  if (!summary.empty()) write_output(summary, sum.dump(2) + "\n");
  return kExitOk;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  if (out.empty()) throw ValidationFailure("empty numeric list '" + text + "'");
  return out;
}

int run_example6(const std::string& t_list, double eps, double gamma,
                 const std::string& rule_text, long long n_paths,
                 unsigned long long seed, int grid_points,
                 const std::string& out) {
  std::vector<asymparb::ex6::ExampleSixParams> params;
  for (double T : parse_list(t_list))
    params.push_back(asymparb::ex6::ExampleSixParams::make(T, eps, gamma, 0.0));
  asymparb::seq::LambdaRule rule = asymparb::seq::LambdaRule::parse(rule_text);
  asymparb::seq::McConfig mc{n_paths, seed, grid_points};
  asymparb::seq::SequenceReport report =
      asymparb::seq::section6_report(params, rule, mc);

  std::ostringstream csv;
  csv << "n,T,eps,gamma,log_alpha,novikov,gamma_n,lambda_threshold,lambda_used,"
         "c_lambda,zeta_n,zeta_gap,pA_closed,pA_mc,pA_se,qA_closed,qA_mc,qA_se,"
         "qA_bound,containment_margin\n";
  const double limit = asymparb::ex6::zeta_limit();
  for (const auto& row : report.rows) {
    csv << row.n << ',' << fmt_g9(row.params.T) << ',' << fmt_g9(row.params.eps)
        << ',' << fmt_g9(row.params.gamma) << ',' << fmt_g9(row.params.log_alpha)
        << ',' << fmt_g9(row.closed.novikov) << ',' << fmt_g9(row.closed.gamma_n)
        << ',' << fmt_g9(row.closed.lambda_threshold) << ',' << fmt_g9(row.lambda_used)
        << ',' << fmt_g9(row.closed.c_lambda) << ',' << fmt_g9(row.closed.zeta_n)
        << ',' << fmt_g9(std::abs(row.closed.zeta_n - limit)) << ','
        << fmt_g9(row.closed.p_a) << ',' << fmt_g9(row.mc.p_a.value) << ','
        << fmt_g9(row.mc.p_a.standard_error) << ',' << fmt_g9(row.closed.q_a) << ','
        << fmt_g9(row.mc.q_a.value) << ',' << fmt_g9(row.mc.q_a.standard_error)
        << ',' << fmt_g9(row.closed.q_a_bound) << ','
        << fmt_g9(row.closed.containment_margin) << '\n';
  }
  write_output(out, csv.str());
  std::cerr << "separability_trend=" << (report.separability_trend ? "yes" : "no")
            << " contiguity_trend=" << (report.contiguity_trend ? "yes" : "no")
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-market laboratory for consistent price systems under "
               "proportional transaction costs"};
  app.require_subcommand(1);

  std::string market_path, claim_path, family_path, sequence_path;
  std::string out, summary, direction = "sup", rule = "zero", t_list;
  double epsilon = 0.0, delta = 0.0, eta = 0.0, eps_exponent = 0.5, gamma = 0.4;
  std::optional<double> lambda;
  long long n_paths = 100000;
  unsigned long long seed = 42;
  int grid_points = 10000;

  auto* cps = app.add_subcommand("cps", "find a consistent price system");
  cps->add_option("--market", market_path)->required();
  cps->add_option("--lambda", lambda, "override the market's cost level");
  cps->add_option("--out", out);

  auto* arb = app.add_subcommand("arb", "search for an arbitrage strategy");
  arb->add_option("--market", market_path)->required();
  arb->add_option("--lambda", lambda);
  arb->add_option("--out", out);

  auto* superrep = app.add_subcommand("superrep", "superreplication price of a claim");
  superrep->add_option("--market", market_path)->required();
  superrep->add_option("--claim", claim_path)->required();
  superrep->add_option("--lambda", lambda);
  superrep->add_option("--out", out);

  auto* hs1 = app.add_subcommand("hs1", "quantitative Halmos-Savage certificate");
  hs1->add_option("--family", family_path)->required();
  hs1->add_option("--epsilon", epsilon)->required();
  hs1->add_option("--delta", delta)->required();
  hs1->add_option("--out", out);

  auto* hs2 = app.add_subcommand("hs2", "dual quantitative Halmos-Savage certificate");
  hs2->add_option("--family", family_path)->required();
  hs2->add_option("--epsilon", epsilon)->required();
  hs2->add_option("--delta", delta)->required();
  hs2->add_option("--out", out);

  auto* lemma = app.add_subcommand("lemma-l", "epsilon-delta profiles over a sequence");
  lemma->add_option("--sequence", sequence_path)->required();
  lemma->add_option("--epsilon", epsilon);
  lemma->add_option("--direction", direction)
      ->check(CLI::IsMember({"sup", "inf", "sep"}));
  lemma->add_option("--eta", eta, "mass cap for --direction sep");
  lemma->add_option("--out", out);
  lemma->add_option("--summary", summary, "summary JSON path");

  auto* ex6 = app.add_subcommand("example6", "closed-form and Monte Carlo report");
  ex6->add_option("--T", t_list, "comma-separated horizons")->required();
  ex6->add_option("--eps", eps_exponent)->required();
  ex6->add_option("--gamma", gamma)->required();
  ex6->add_option("--rule", rule, "zero | threshold_multiple:K | fixed:L");
  ex6->add_option("--n-paths", n_paths);
  ex6->add_option("--seed", seed);
  ex6->add_option("--grid-points", grid_points);
  ex6->add_option("--out", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cps->parsed()) return run_cps(market_path, lambda, out);
    if (arb->parsed()) return run_arb(market_path, lambda, out);
    if (superrep->parsed()) return run_superrep(market_path, claim_path, lambda, out);
    if (hs1->parsed()) return run_hs(true, family_path, epsilon, delta, out);
    if (hs2->parsed()) return run_hs(false, family_path, epsilon, delta, out);
    if (lemma->parsed())
      return run_lemma_l(sequence_path, epsilon, direction, eta, out, summary);
    if (ex6->parsed())
      return run_example6(t_list, eps_exponent, gamma, rule, n_paths, seed,
                          grid_points, out);
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const asymparb::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

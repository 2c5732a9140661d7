// Copyright 2026 The dpcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// dpcalc: exact privacy audits and budget calculators for finite mechanisms.
//
// Output is line-delimited JSON on stdout (one record per result) so runs
// can be diffed and piped; --pretty switches to indented JSON for reading.
// Exit codes: 0 success, 1 a verification check failed, 2 usage or input
// error.  Timing goes to stderr only, never into the records.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpcalc/audit.h"
#include "dpcalc/converters.h"
#include "dpcalc/dist.h"
#include "dpcalc/ldp.h"
#include "dpcalc/mechanism.h"
#include "dpcalc/mechanism_io.h"
#include "dpcalc/sampling.h"
#include "dpcalc/shuffle.h"
#include "dpcalc/subsample.h"
#include "dpcalc/verify.h"
#include "json.hpp"

namespace {

using nlohmann::json;

bool g_pretty = false;

void Emit(const json& record, std::ostream* copy = nullptr) {
  const std::string text = g_pretty ? record.dump(2) : record.dump();
  std::cout << text << "\n";
  if (copy != nullptr) *copy << text << "\n";
}

// Resolves a deletion reference spec: "uniform", "average", "row:<label>",
// or "file:<path>" (a {"outputs", "mass"} JSON file).
dpcalc::Dist ResolveReference(const dpcalc::Mechanism& m, const std::string& spec) {
  if (spec == "uniform") return dpcalc::Dist::uniform(m.num_outputs());
  if (spec == "average") {
    std::vector<double> acc(m.num_outputs(), 0.0);
    for (std::size_t x = 0; x < m.num_inputs(); ++x) {
      for (std::size_t y = 0; y < m.num_outputs(); ++y) {
        acc[y] += m.row(x)[y] / static_cast<double>(m.num_inputs());
      }
    }
    return dpcalc::Dist(std::move(acc));
  }
  if (spec.rfind("row:", 0) == 0) {
    const std::string label = spec.substr(4);
    const auto x = m.input_index(label);
    if (!x.has_value()) {
      throw std::runtime_error("--reference row: unknown input label '" + label + "'");
    }
    return m.row(*x);
  }
  if (spec.rfind("file:", 0) == 0) {
    dpcalc::Dist d = dpcalc::load_dist(spec.substr(5));
    if (d.size() != m.num_outputs()) {
      throw std::runtime_error("--reference file: expected " +
                               std::to_string(m.num_outputs()) + " outputs, got " +
                               std::to_string(d.size()));
    }
    return d;
  }
  throw std::runtime_error(
      "--reference must be uniform, average, row:<label>, or file:<path>");
}

std::vector<dpcalc::NeighborPair> ResolvePairs(const dpcalc::Mechanism& m,
                                               const std::vector<std::string>& labels) {
  if (labels.size() % 2 != 0) {
    throw std::runtime_error("--pair expects label pairs");
  }
  std::vector<dpcalc::NeighborPair> pairs;
  for (std::size_t i = 0; i + 1 < labels.size(); i += 2) {
    const auto a = m.input_index(labels[i]);
    const auto b = m.input_index(labels[i + 1]);
    if (!a.has_value() || !b.has_value()) {
      throw std::runtime_error("--pair: unknown input label '" +
                               (a.has_value() ? labels[i + 1] : labels[i]) + "'");
    }
    pairs.push_back({*a, *b});
  }
  return pairs;
}

json DistToJson(const dpcalc::Dist& d) {
  json mass = json::array();
  for (std::size_t i = 0; i < d.size(); ++i) mass.push_back(d[i]);
  return mass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dpcalc: exact privacy audits and budget calculators for finite "
      "mechanisms"};
  app.require_subcommand(1);
  app.add_flag("--pretty", g_pretty, "Indent JSON output");
  int exit_code = 0;

  // ----------------------------------------------------------------- audit
  auto* audit = app.add_subcommand(
      "audit", "Exact smallest delta (or eps) for a mechanism file");
  std::string audit_model = "replacement";
  std::string audit_mech;
  std::vector<double> audit_eps;
  std::string audit_reference = "uniform";
  std::vector<std::string> audit_pairs;
  int64_t audit_n = 2;
  audit->add_option("--model", audit_model, "replacement|deletion|central|pure|shuffle")
      ->check(CLI::IsMember({"replacement", "deletion", "central", "pure", "shuffle"}));
  audit->add_option("--mechanism", audit_mech, "Mechanism JSON file")->required();
  audit->add_option("--eps", audit_eps, "eps value (repeatable)");
  audit->add_option("--reference", audit_reference,
                    "Deletion reference: uniform|average|row:<label>|file:<path>");
  audit->add_option("--pair", audit_pairs,
                    "Neighboring input labels for central audits (repeatable)")
      ->type_size(2);
  audit->add_option("--n", audit_n, "Number of users for shuffle audits");
  audit->callback([&] {
    const dpcalc::Mechanism m = dpcalc::load_mechanism(audit_mech);
    if (audit_model == "pure") {
      const double eps = audit_pairs.empty()
                             ? dpcalc::audit_pure(m)
                             : dpcalc::audit_pure(m, ResolvePairs(m, audit_pairs));
      Emit({{"model", "pure"}, {"mechanism", audit_mech}, {"eps", eps}});
      return;
    }
    if (audit_eps.empty()) {
      throw std::runtime_error("audit: at least one --eps is required for model " +
                               audit_model);
    }
    for (double eps : audit_eps) {
      json record = {{"model", audit_model}, {"mechanism", audit_mech}, {"eps", eps}};
      if (audit_model == "replacement") {
        record["delta"] = dpcalc::audit_replacement_ldp(m, eps);
      } else if (audit_model == "deletion") {
        const dpcalc::Dist reference = ResolveReference(m, audit_reference);
        record["reference"] = audit_reference;
        record["delta"] = dpcalc::audit_deletion_ldp(m, reference, eps);
      } else if (audit_model == "central") {
        if (audit_pairs.empty()) {
          throw std::runtime_error("audit: central model needs --pair");
        }
        record["delta"] = dpcalc::audit_central(m, ResolvePairs(m, audit_pairs), eps);
      } else {  // shuffle
        record["n"] = audit_n;
        record["delta"] = dpcalc::audit_shuffle(m, audit_n, eps);
      }
      Emit(record);
    }
  });

  // ----------------------------------------------------------------- bound
  auto* bound = app.add_subcommand("bound", "Closed-form budget calculators");
  bound->require_subcommand(1);

  auto* b_del = bound->add_subcommand("deletion-to-replacement",
                                      "Replacement budget implied by a deletion one");
  double bd_eps = 0.0, bd_delta = 0.0;
  b_del->add_option("--eps", bd_eps)->required();
  b_del->add_option("--delta", bd_delta)->required();
  b_del->callback([&] {
    const dpcalc::PrivacyBudget b = dpcalc::deletion_to_replacement_budget(bd_eps, bd_delta);
    Emit({{"bound", "deletion-to-replacement"},
          {"input", {{"eps", bd_eps}, {"delta", bd_delta}}},
          {"eps", b.eps},
          {"delta", b.delta}});
  });

  auto* b_grp = bound->add_subcommand("grouposition",
                                      "Budget for k mechanisms run on one input");
  int64_t bg_k = 1;
  double bg_eps = 0.0, bg_delta_prime = 0.0, bg_delta = 0.0;
  b_grp->add_option("--k", bg_k)->required();
  b_grp->add_option("--eps", bg_eps)->required();
  b_grp->add_option("--delta-prime", bg_delta_prime)->required();
  b_grp->add_option("--delta", bg_delta, "Per-mechanism additive delta (default 0)");
  b_grp->callback([&] {
    const dpcalc::GroupositionParams params{bg_k, bg_eps, bg_delta_prime, bg_delta};
    const dpcalc::PrivacyBudget b = dpcalc::grouposition_budget(params);
    Emit({{"bound", "grouposition"},
          {"input",
           {{"k", bg_k}, {"eps", bg_eps}, {"delta_prime", bg_delta_prime}, {"delta", bg_delta}}},
          {"eps", b.eps},
          {"delta", b.delta}});
  });

  auto* b_cmp = bound->add_subcommand("compose",
                                      "Exact pure level of two local stages in sequence");
  double bc_eps1 = 0.0, bc_eps2 = 0.0;
  int bc_grid = 0;
  b_cmp->add_option("--eps1", bc_eps1)->required();
  b_cmp->add_option("--eps2", bc_eps2)->required();
  b_cmp->add_option("--search-grid", bc_grid,
                    "Also run the tightness grid search at this resolution");
  b_cmp->callback([&] {
    json record = {{"bound", "compose"},
                   {"input", {{"eps1", bc_eps1}, {"eps2", bc_eps2}}},
                   {"eps", dpcalc::compose_eps(bc_eps1, bc_eps2)}};
    if (bc_grid >= 2) {
      record["achieved"] = dpcalc::compose_tightness_search(bc_eps1, bc_eps2, bc_grid);
    }
    Emit(record);
  });

  auto* b_pur = bound->add_subcommand(
      "purification", "Cost of making approximate local randomizers pure");
  double bp_eps = 0.0, bp_delta = 0.0;
  int64_t bp_n = 1, bp_t = 1;
  std::vector<int64_t> bp_bits;
  b_pur->add_option("--eps", bp_eps)->required();
  b_pur->add_option("--delta", bp_delta)->required();
  b_pur->add_option("--n", bp_n)->required();
  b_pur->add_option("--t", bp_t)->required();
  b_pur->add_option("--bits", bp_bits, "Public-coin bits per randomizer");
  b_pur->callback([&] {
    const dpcalc::PurificationBounds out = dpcalc::purification_bounds(
        {bp_eps, bp_delta, bp_n, bp_t}, bp_bits.empty() ? nullptr : &bp_bits);
    json record = {{"bound", "purification"},
                   {"input", {{"eps", bp_eps}, {"delta", bp_delta}, {"n", bp_n}, {"t", bp_t}}},
                   {"ldp_eps", out.ldp_eps},
                   {"tv_bound", out.tv_bound},
                   {"comm_bits", out.comm_bits}};
    if (out.public_random_bits.has_value()) {
      record["public_random_bits"] = *out.public_random_bits;
    }
    Emit(record);
  });

  auto* b_cpn = bound->add_subcommand("coupon",
                                      "Rounds to hit all n values with uniform draws");
  int64_t bn_n = 1;
  double bn_fail = 1.0 / 6.0;
  b_cpn->add_option("--n", bn_n)->required();
  b_cpn->add_option("--fail-prob", bn_fail);
  b_cpn->callback([&] {
    Emit({{"bound", "coupon"},
          {"input", {{"n", bn_n}, {"fail_prob", bn_fail}}},
          {"rounds", dpcalc::coupon_rounds(bn_n, bn_fail)}});
  });

  auto* b_sub = bound->add_subcommand("subsample",
                                      "Budget after running on an m-of-n subsample");
  double bs_eps = 0.0, bs_delta = 0.0, bs_rate = 0.0;
  b_sub->add_option("--eps", bs_eps)->required();
  b_sub->add_option("--delta", bs_delta)->required();
  b_sub->add_option("--rate,--p", bs_rate, "Sampling rate m/n in (0, 1]")->required();
  b_sub->callback([&] {
    const dpcalc::PrivacyBudget b = dpcalc::subsample_budget(bs_eps, bs_delta, bs_rate);
    Emit({{"bound", "subsample"},
          {"input", {{"eps", bs_eps}, {"delta", bs_delta}, {"rate", bs_rate}}},
          {"eps", b.eps},
          {"delta", b.delta}});
  });

  auto* b_stl = bound->add_subcommand(
      "shuffle-to-local", "Local budget implied by a shuffled protocol's budget");
  double bstl_eps = 0.0, bstl_delta = 0.0;
  int64_t bstl_n = 1;
  b_stl->add_option("--eps", bstl_eps)->required();
  b_stl->add_option("--delta", bstl_delta)->required();
  b_stl->add_option("--n", bstl_n)->required();
  b_stl->callback([&] {
    const dpcalc::PrivacyBudget b =
        dpcalc::shuffle_to_ldp_budget(bstl_eps, bstl_delta, bstl_n);
    Emit({{"bound", "shuffle-to-local"},
          {"input", {{"eps", bstl_eps}, {"delta", bstl_delta}, {"n", bstl_n}}},
          {"eps", b.eps},
          {"delta", b.delta}});
  });

  auto* b_amp = bound->add_subcommand(
      "amplification", "Shuffle amplification bound for a pure local level");
  double ba_eps_l = 0.0, ba_delta = 0.0, ba_gamma = 1.0;
  int64_t ba_n = 1;
  b_amp->add_option("--eps-l", ba_eps_l)->required();
  b_amp->add_option("--delta", ba_delta)->required();
  b_amp->add_option("--n", ba_n)->required();
  b_amp->add_option("--gamma", ba_gamma, "Honest fraction in (0, 1]");
  b_amp->callback([&] {
    const double eps =
        dpcalc::amplification_eps({ba_eps_l, ba_delta, ba_n, ba_gamma});
    Emit({{"bound", "amplification"},
          {"input",
           {{"eps_l", ba_eps_l}, {"delta", ba_delta}, {"n", ba_n}, {"gamma", ba_gamma}}},
          {"eps", eps},
          {"delta", ba_delta}});
  });

  // --------------------------------------------------------------- convert
  auto* convert = app.add_subcommand("convert", "Mechanism and budget transforms");
  convert->require_subcommand(1);

  auto* c_p2a = convert->add_subcommand("pure-to-approx",
                                        "Split a pure budget into (eps-delta, delta)");
  double cp_eps = 0.0, cp_delta = 0.0;
  c_p2a->add_option("--eps", cp_eps, "Total pure budget")->required();
  c_p2a->add_option("--delta", cp_delta)->required();
  c_p2a->callback([&] {
    const dpcalc::PrivacyBudget b = dpcalc::pure_to_approx(cp_eps, cp_delta);
    Emit({{"convert", "pure-to-approx"},
          {"input", {{"eps", cp_eps}, {"delta", cp_delta}}},
          {"eps", b.eps},
          {"delta", b.delta}});
  });

  auto* c_a2p = convert->add_subcommand(
      "approx-to-pure", "Mix in uniform noise for a finite pure level");
  std::string ca_mech, ca_out;
  double ca_eps = 0.0, ca_delta = 0.0, ca_eta = 0.0;
  c_a2p->add_option("--mechanism", ca_mech)->required();
  c_a2p->add_option("--eps", ca_eps)->required();
  c_a2p->add_option("--delta", ca_delta)->required();
  c_a2p->add_option("--eta", ca_eta, "Uniform mixing weight in (0, 1]")->required();
  c_a2p->add_option("--out", ca_out, "Write the mixed mechanism here");
  c_a2p->callback([&] {
    const dpcalc::Mechanism m = dpcalc::load_mechanism(ca_mech);
    const dpcalc::ApproxToPureResult res =
        dpcalc::approx_to_pure_finite(m, ca_eps, ca_delta, ca_eta);
    if (!ca_out.empty()) dpcalc::save_mechanism(res.mechanism, ca_out);
    Emit({{"convert", "approx-to-pure"},
          {"input", {{"eps", ca_eps}, {"delta", ca_delta}, {"eta", ca_eta}}},
          {"eps_prime", res.eps_prime},
          {"out", ca_out}});
  });

  auto* c_rr = convert->add_subcommand(
      "rr-decompose", "Factor a pure pair through binary randomized response");
  std::string cr_mech, cr_x, cr_xp, cr_out;
  double cr_eps = -1.0;
  c_rr->add_option("--mechanism", cr_mech)->required();
  c_rr->add_option("--x", cr_x, "First input label")->required();
  c_rr->add_option("--x-prime", cr_xp, "Second input label")->required();
  c_rr->add_option("--eps", cr_eps, "Decompose at this level instead of the audited one");
  c_rr->add_option("--out", cr_out, "Write the extracted channel here");
  c_rr->callback([&] {
    const dpcalc::Mechanism m = dpcalc::load_mechanism(cr_mech);
    const auto x = m.input_index(cr_x);
    const auto xp = m.input_index(cr_xp);
    if (!x.has_value() || !xp.has_value()) {
      throw std::runtime_error("rr-decompose: unknown input label '" +
                               (x.has_value() ? cr_xp : cr_x) + "'");
    }
    const dpcalc::RRDecomposition dec = dpcalc::rr_decompose_pure(
        m, *x, *xp,
        cr_eps < 0.0 ? std::optional<double>() : std::optional<double>(cr_eps));
    if (!cr_out.empty()) dpcalc::save_mechanism(dec.q, cr_out);
    Emit({{"convert", "rr-decompose"},
          {"input", {{"x", cr_x}, {"x_prime", cr_xp}}},
          {"eps", dec.eps},
          {"out", cr_out}});
  });

  auto* c_r2d = convert->add_subcommand(
      "replacement-to-deletion", "View a replacement guarantee in the deletion model");
  std::string cd_mech, cd_anchor;
  double cd_eps = 0.0, cd_delta = 0.0;
  c_r2d->add_option("--mechanism", cd_mech)->required();
  c_r2d->add_option("--anchor", cd_anchor, "Input label whose row becomes the reference")
      ->required();
  c_r2d->add_option("--eps", cd_eps)->required();
  c_r2d->add_option("--delta", cd_delta)->required();
  c_r2d->callback([&] {
    const dpcalc::Mechanism m = dpcalc::load_mechanism(cd_mech);
    const auto x0 = m.input_index(cd_anchor);
    if (!x0.has_value()) {
      throw std::runtime_error("replacement-to-deletion: unknown input label '" +
                               cd_anchor + "'");
    }
    const dpcalc::DeletionView view =
        dpcalc::replacement_to_deletion(m, *x0, cd_eps, cd_delta);
    Emit({{"convert", "replacement-to-deletion"},
          {"input", {{"anchor", cd_anchor}, {"eps", cd_eps}, {"delta", cd_delta}}},
          {"eps", view.budget.eps},
          {"delta", view.budget.delta},
          {"reference", DistToJson(view.reference)}});
  });

  auto* c_trim = convert->add_subcommand(
      "trim", "Round an approximate deletion guarantee to a pure one");
  std::string ct_mech, ct_reference = "uniform", ct_out;
  double ct_eps = 0.0, ct_delta = -1.0;
  c_trim->add_option("--mechanism", ct_mech)->required();
  c_trim->add_option("--reference", ct_reference,
                     "uniform|average|row:<label>|file:<path>");
  c_trim->add_option("--eps", ct_eps)->required();
  c_trim->add_option("--delta", ct_delta,
                     "Deletion delta to honor (default: audit it)");
  c_trim->add_option("--out", ct_out, "Write the trimmed mechanism here");
  c_trim->callback([&] {
    const dpcalc::Mechanism m = dpcalc::load_mechanism(ct_mech);
    const dpcalc::Dist reference = ResolveReference(m, ct_reference);
    const double delta =
        ct_delta < 0.0 ? dpcalc::audit_deletion_ldp(m, reference, ct_eps) : ct_delta;
    const dpcalc::Mechanism trimmed =
        dpcalc::trim_to_pure_deletion(m, reference, ct_eps, delta);
    if (!ct_out.empty()) dpcalc::save_mechanism(trimmed, ct_out);
    double moved = 0.0;
    for (std::size_t x = 0; x < m.num_inputs(); ++x) {
      moved = std::max(moved, dpcalc::tv_distance(m.row(x), trimmed.row(x)));
    }
    Emit({{"convert", "trim"},
          {"input", {{"reference", ct_reference}, {"eps", ct_eps}, {"delta", delta}}},
          {"max_row_movement", moved},
          {"out", ct_out}});
  });

  auto* c_sym = convert->add_subcommand(
      "symmetrize", "Compile per-user randomizers into one symmetric protocol");
  std::vector<std::string> cs_mechs;
  std::string cs_coin = "private", cs_out;
  c_sym->add_option("--mechanisms", cs_mechs, "Mechanism files, one per user")
      ->required()
      ->expected(-1);
  c_sym->add_option("--coin", cs_coin, "private|public")
      ->check(CLI::IsMember({"private", "public"}));
  c_sym->add_option("--out", cs_out, "Write the combined mechanism (private coins)");
  c_sym->callback([&] {
    std::vector<dpcalc::Mechanism> family;
    family.reserve(cs_mechs.size());
    for (const std::string& path : cs_mechs) {
      family.push_back(dpcalc::load_mechanism(path));
    }
    const dpcalc::CoinModel coin = cs_coin == "private" ? dpcalc::CoinModel::kPrivate
                                                        : dpcalc::CoinModel::kPublic;
    const dpcalc::SymmetricCompilation comp = dpcalc::symmetrize(family, coin);
    json record = {{"convert", "symmetrize"},
                   {"input", {{"members", cs_mechs.size()}, {"coin", cs_coin}}},
                   {"n_prime", comp.n_prime}};
    if (comp.combined.has_value()) {
      record["pure_eps"] = dpcalc::audit_pure(*comp.combined);
      if (!cs_out.empty()) dpcalc::save_mechanism(*comp.combined, cs_out);
      record["out"] = cs_out;
    }
    Emit(record);
  });

  auto* c_cx = convert->add_subcommand(
      "counterexample",
      "Witness that deletion (eps, delta) needs more than replacement (2eps, 2delta)");
  double cc_eps = 0.0, cc_delta = 0.0;
  std::string cc_out;
  c_cx->add_option("--eps", cc_eps)->required();
  c_cx->add_option("--delta", cc_delta)->required();
  c_cx->add_option("--out", cc_out, "Write the witness mechanism here");
  c_cx->callback([&] {
    const dpcalc::Mechanism witness = dpcalc::build_counterexample(cc_eps, cc_delta);
    if (!cc_out.empty()) dpcalc::save_mechanism(witness, cc_out);
    Emit({{"convert", "counterexample"},
          {"input", {{"eps", cc_eps}, {"delta", cc_delta}}},
          {"deletion_delta",
           dpcalc::audit_deletion_ldp(witness, dpcalc::Dist::uniform(3), cc_eps)},
          {"replacement_delta_at_2eps",
           dpcalc::audit_replacement_ldp(witness, 2.0 * cc_eps)},
          {"naive_2delta", 2.0 * cc_delta},
          {"out", cc_out}});
  });

  // -------------------------------------------------------------- simulate
  auto* simulate = app.add_subcommand("simulate", "Protocol-level computations");
  simulate->require_subcommand(1);
  auto* s_shuffle = simulate->add_subcommand(
      "shuffle", "Exact shuffled tradeoff points for a randomizer");
  std::string ss_mech;
  int64_t ss_n = 2;
  double ss_gamma = 1.0;
  std::vector<double> ss_eps;
  double ss_delta = -1.0;
  s_shuffle->add_option("--mechanism", ss_mech)->required();
  s_shuffle->add_option("--n", ss_n, "Number of users")->required();
  s_shuffle->add_option("--gamma", ss_gamma, "Honest fraction in (0, 1]");
  s_shuffle->add_option("--eps", ss_eps, "Audit the exact delta here (repeatable)");
  s_shuffle->add_option("--delta", ss_delta,
                        "Also evaluate the amplification bound at this delta");
  s_shuffle->callback([&] {
    const dpcalc::Mechanism m = dpcalc::load_mechanism(ss_mech);
    const int64_t n_eff = static_cast<int64_t>(ss_gamma * static_cast<double>(ss_n));
    for (double eps : ss_eps) {
      Emit({{"simulate", "shuffle"},
            {"n", ss_n},
            {"n_eff", n_eff},
            {"eps", eps},
            {"delta", dpcalc::audit_shuffle(m, n_eff, eps)}});
    }
    if (ss_delta >= 0.0) {
      try {
        const dpcalc::AmplificationReport report =
            dpcalc::check_amplification_vs_exact(m, ss_n, ss_delta, ss_gamma);
        Emit({{"simulate", "shuffle"},
              {"amplification",
               {{"eps_l", report.eps_l},
                {"bound_eps", report.bound_eps},
                {"exact_delta", report.exact_delta},
                {"target_delta", report.target_delta},
                {"margin", report.margin},
                {"ok", report.ok}}}});
      } catch (const std::invalid_argument& e) {
        Emit({{"simulate", "shuffle"},
              {"amplification", {{"feasible", false}, {"detail", e.what()}}}});
      }
    }
  });

  // ---------------------------------------------------------------- verify
  auto* verify = app.add_subcommand(
      "verify", "Run the built-in property suites and report each check");
  std::string v_suite = "all";
  uint64_t v_seed = 0;
  std::string v_out;
  verify->add_option("--suite", v_suite,
                     "all|dp|ldp|counterexample|shuffle|subsample|appendix");
  verify->add_option("--seed", v_seed, "Seed for the deterministic random streams");
  verify->add_option("--out", v_out, "Also write the records to this file");

  auto* v_sub = verify->add_subcommand(
      "subsample", "Tightness probe: audited subsampled level vs the bound");
  double vs_eps = 0.0;
  int64_t vs_n = 2, vs_m = 1;
  v_sub->add_option("--eps", vs_eps)->required();
  v_sub->add_option("--n", vs_n)->required();
  v_sub->add_option("--m", vs_m)->required();
  v_sub->callback([&] {
    const dpcalc::SubsampleTightness t =
        dpcalc::verify_subsample_tightness(vs_eps, vs_n, vs_m);
    const bool ok = std::abs(t.gap) <= 1e-9;
    Emit({{"verify", "subsample"},
          {"input", {{"eps", vs_eps}, {"n", vs_n}, {"m", vs_m}}},
          {"bound_eps", t.bound_eps},
          {"audited_eps", t.audited_eps},
          {"gap", t.gap},
          {"pass", ok}});
    if (!ok) exit_code = 1;
  });

  verify->callback([&] {
    if (verify->got_subcommand(v_sub)) return;
    const auto start = std::chrono::steady_clock::now();
    const std::vector<dpcalc::CheckResult> results = dpcalc::run_suite(v_suite, v_seed);
    std::ofstream out_file;
    std::ostream* copy = nullptr;
    if (!v_out.empty()) {
      out_file.open(v_out);
      if (!out_file) {
        throw std::runtime_error("verify: cannot open --out file " + v_out);
      }
      copy = &out_file;
    }
    int64_t failures = 0;
    for (const dpcalc::CheckResult& r : results) {
      if (!r.pass) ++failures;
      const std::string line = dpcalc::to_json_line(r);
      std::cout << line << "\n";
      if (copy != nullptr) *copy << line << "\n";
    }
    const json summary = {{"suite", v_suite},
                          {"seed", v_seed},
                          {"checks", results.size()},
                          {"failures", failures}};
    Emit(summary, copy);
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    std::cerr << "verify: " << results.size() << " checks, " << failures
              << " failures, " << elapsed.count() << " ms\n";
    if (failures > 0) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

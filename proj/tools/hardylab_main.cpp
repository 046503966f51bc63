// Copyright 2026 The hardylab authors
// SPDX-License-Identifier: Apache-2.0
//
// hardylab: numerical verification of sharp Hardy-inequality constants.
//
//   hardylab constants  --dim 3 --volume 4.18879 [--p 1.0]
//   hardylab verify     --case sobolev_disk --grid 8192
//   hardylab minimize   --case thm2 --p 1.0 --grid 4096
//   hardylab symmetrize --input field.json --dim 3 --q 1.5 --output out.json
//
// Reports are JSON lines (one per check) or CSV with --format csv.
// Exit codes: 0 all checks passed, 1 verification failure, 2 usage/IO error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardylab/hardylab.hpp"

namespace {

using hardylab::VerificationReport;
using json = nlohmann::ordered_json;

struct Options {
  int dim = 3;
  double volume = -1.0;  // default: unit ball of dim
  double p = std::numeric_limits<double>::quiet_NaN();
  double q = 1.0;
  int grid = 8192;
  double tol = -1.0;  // <0: per-case defaults
  unsigned seed = 0;
  std::string format = "jsonl";
  std::string verify_case = "all";
  std::string input_path;
  std::string output_path;
};

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<std::pair<std::string, std::string>> base_params(const Options& o) {
  return {{"dim", std::to_string(o.dim)},
          {"volume", fmt_num(o.volume)},
          {"grid", std::to_string(o.grid)},
          {"seed", std::to_string(o.seed)}};
}

VerificationReport deviation_report(std::string case_id, double deviation, double tol,
                                    std::string notes,
                                    std::vector<std::pair<std::string, std::string>> params) {
  VerificationReport r;
  r.case_id = std::move(case_id);
  r.params = std::move(params);
  r.computed = deviation;
  r.reference = 0.0;
  r.rel_err = std::fmax(deviation, 0.0);
  r.pass = deviation <= tol;
  r.notes = std::move(notes);
  return r;
}

double case_tol(const Options& o, double fallback) { return o.tol > 0.0 ? o.tol : fallback; }

// 4-point Gauss-Legendre per panel; used where trapezoid accuracy is not
// enough for a 1e-6 identity check at the default grid.
double panel_gauss4(const std::function<double(double)>& f, const std::vector<double>& grid) {
  static const double xs[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                               0.8611363115940526};
  static const double ws[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                               0.3478548451374538};
  double acc = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double mid = 0.5 * (grid[i] + grid[i - 1]);
    const double half = 0.5 * (grid[i] - grid[i - 1]);
    for (int k = 0; k < 4; ++k) acc += ws[k] * f(mid + half * xs[k]) * half;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// verify cases
// ---------------------------------------------------------------------------

std::vector<VerificationReport> run_sobolev_disk(const Options& o) {
  std::vector<VerificationReport> out;
  const auto sc = hardylab::special::spectral_constants();
  const double tol = case_tol(o, 1e-3);
  auto eig = hardylab::varmin::min_weighted_rayleigh(sc.v0, o.grid);
  out.push_back(hardylab::make_report("sobolev_disk.0_mu_at_V0", eig.eigenvalue, 1.0, tol,
                                      "min Rayleigh quotient at R = V0", base_params(o)));
  int k = 1;
  for (double R : {0.5, 1.0, 2.0, 4.0}) {
    auto e = hardylab::varmin::min_weighted_rayleigh(R, o.grid);
    auto params = base_params(o);
    params.push_back({"R", fmt_num(R)});
    out.push_back(hardylab::make_report("sobolev_disk." + std::to_string(k++) + "_scaling",
                                        e.eigenvalue * R, sc.v0, tol,
                                        "scaling law mu(R) * R = V0", std::move(params)));
  }
  return out;
}

std::vector<VerificationReport> run_bv(const Options& o) {
  std::vector<VerificationReport> out;
  const auto sc = hardylab::special::spectral_constants();
  const auto dom = hardylab::make_domain(o.dim, o.volume);
  auto disk = hardylab::varmin::disk_dirichlet_eigenvalue(o.grid);
  out.push_back(hardylab::make_report("bv.0_disk_eigenvalue", disk.eigenvalue, sc.lambda2,
                                      case_tol(o, 1e-3), "first Dirichlet eigenvalue, unit disk",
                                      base_params(o)));
  auto bc = hardylab::varmin::best_constant_search(hardylab::varmin::InequalityId::brezis_vazquez,
                                                   dom, o.grid, 0.0, o.seed);
  out.push_back(hardylab::make_report("bv.1_search_vs_closed", bc.value, bc.closed_form,
                                      case_tol(o, 1e-2),
                                      "variational search vs Lambda_2 / R_Omega^2",
                                      base_params(o)));
  return out;
}

std::vector<VerificationReport> run_thm1(const Options& o) {
  std::vector<VerificationReport> out;
  const auto dom = hardylab::make_domain(o.dim, o.volume);
  auto bc = hardylab::varmin::best_constant_search(hardylab::varmin::InequalityId::thm1, dom,
                                                   o.grid, 0.0, o.seed);
  out.push_back(hardylab::make_report("thm1.0_search_vs_closed", bc.value, bc.closed_form,
                                      case_tol(o, 1e-2),
                                      "variational infimum vs omega_N^{2/N}|Omega|^{-1/N} V0",
                                      base_params(o)));
  const double alt = hardylab::constants::thm1_intermediate_constant(dom);
  const double err_main = hardylab::relative_error(bc.value, bc.closed_form);
  const double err_alt = hardylab::relative_error(bc.value, alt);
  VerificationReport adj;
  adj.case_id = "thm1.1_variant_adjudication";
  adj.params = base_params(o);
  adj.computed = bc.value;
  adj.reference = err_main <= err_alt ? bc.closed_form : alt;
  adj.rel_err = std::fmin(err_main, err_alt);
  adj.pass = err_main <= case_tol(o, 1e-2) &&
             (err_alt > 3.0 * case_tol(o, 1e-2) || std::fabs(alt - bc.closed_form) < 1e-12);
  adj.notes = err_main <= err_alt
                  ? "winner: omega_N^{2/N}|Omega|^{-1/N} V0 (Lorentz-remainder constant); the "
                    "(omega_N/|Omega|)^{1/N} V0 variant is the intermediate u^2/|x| inequality"
                  : "winner: (omega_N/|Omega|)^{1/N} V0";
  out.push_back(std::move(adj));
  return out;
}

std::vector<VerificationReport> run_thm2(const Options& o) {
  std::vector<VerificationReport> out;
  const auto dom = hardylab::make_domain(o.dim, o.volume);
  const double p = std::isnan(o.p) ? 1.0 : o.p;
  auto params = base_params(o);
  params.push_back({"p", fmt_num(p)});

  auto cm = hardylab::varmin::min_linear_constraint(o.dim, p, o.grid);
  // closed-form minimizer V(r) = (N omega_N / 2 pi) a^{-2} (R^a - r^a)
  const double a = hardylab::constants::thm2_exponent(dom, p);
  const auto& prof = cm.minimizer;
  const double R = prof.grid.back();
  double max_dev = 0.0;
  const double peak_num = prof.values.front();
  const double peak_ref = std::pow(R, a);
  for (std::size_t i = 0; i < prof.size(); ++i) {
    const double ref = (std::pow(R, a) - std::pow(prof.grid[i], a)) / peak_ref;
    max_dev = std::fmax(max_dev, std::fabs(prof.values[i] / peak_num - ref));
  }
  out.push_back(deviation_report("thm2.0_minimizer_pointwise", max_dev, case_tol(o, 1e-4),
                                 "max |discrete - closed form| after peak normalization", params));
  out.push_back(hardylab::make_report("thm2.1_normalization", cm.constraint_value, 1.0,
                                      case_tol(o, 1e-8), "constraint integral", params));
  const double target = dom.dim * dom.omega_n / (2.0 * 3.14159265358979323846);
  out.push_back(hardylab::make_report("thm2.2_energy_identity",
                                      cm.objective + 2.0 * target, target, case_tol(o, 1e-4),
                                      "I(V) = -N omega_N / (2 pi)", params));
  auto bc = hardylab::varmin::best_constant_search(hardylab::varmin::InequalityId::thm2, dom,
                                                   o.grid, p, o.seed);
  out.push_back(hardylab::make_report("thm2.3_search_vs_closed", bc.value, bc.closed_form,
                                      case_tol(o, 1e-2), "variational infimum vs (migcost2)",
                                      params));
  return out;
}

std::vector<VerificationReport> run_thm4(const Options& o) {
  std::vector<VerificationReport> out;
  const auto dom = hardylab::make_domain(o.dim, o.volume);
  auto bc = hardylab::varmin::best_constant_search(hardylab::varmin::InequalityId::thm4, dom,
                                                   o.grid, 0.0, o.seed);
  const auto [text, stmt] = hardylab::constants::thm4_constants(dom);
  const double err_text = hardylab::relative_error(bc.value, text);
  const double err_stmt = hardylab::relative_error(bc.value, stmt);
  const bool text_wins = err_text <= err_stmt;
  VerificationReport adj;
  adj.case_id = "thm4.0_adjudication";
  adj.params = base_params(o);
  adj.computed = bc.value;
  adj.reference = text_wins ? text : stmt;
  adj.rel_err = std::fmin(err_text, err_stmt);
  const double tol = case_tol(o, 1e-2);
  adj.pass = adj.rel_err <= tol && std::fmax(err_text, err_stmt) > 3.0 * tol;
  adj.notes = text_wins ? "winner: (N/(N-1))^2 / (4 |Omega|)  [no omega_N factor]"
                        : "winner: (N/(N-1))^2 / (4 omega_N |Omega|)  [with omega_N factor]";
  out.push_back(std::move(adj));
  return out;
}

std::vector<VerificationReport> run_thm5(const Options& o) {
  std::vector<VerificationReport> out;
  const auto dom = hardylab::make_domain(o.dim, o.volume);
  const double p = std::isnan(o.p) ? 0.9 : o.p;
  const double closed = hardylab::constants::thm5_constant(dom, p);  // validates range
  auto params = base_params(o);
  params.push_back({"p", fmt_num(p)});
  params.push_back({"alpha", fmt_num(hardylab::constants::thm5_alpha(o.dim, p))});
  auto bc = hardylab::varmin::best_constant_search(hardylab::varmin::InequalityId::thm5, dom,
                                                   o.grid, p, o.seed);
  out.push_back(hardylab::make_report("thm5.0_search_vs_closed", bc.value, closed,
                                      case_tol(o, 1e-2), "variational infimum vs theorem constant",
                                      params));
  // p -> 1 continuity: the thm5 constant meets the q = 1 gradient
  // constant at p = 1.
  const double near_one = hardylab::constants::thm5_constant(dom, 1.0 - 1e-6);
  const double q1_text = hardylab::constants::thm4_constants(dom).first;
  out.push_back(hardylab::make_report("thm5.1_p_to_1_continuity", near_one, q1_text,
                                      case_tol(o, 1e-4),
                                      "thm5 constant at p = 1 - 1e-6 vs q = 1 constant",
                                      base_params(o)));
  return out;
}

std::vector<VerificationReport> run_hardy(const Options& o) {
  const auto dom = hardylab::make_domain(o.dim, o.volume);
  const double R = dom.radius;
  std::mt19937 rng(o.seed == 0 ? 7 : o.seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> eps_dist(0.1, 0.8);
  double worst = std::numeric_limits<double>::infinity();
  const auto grid = hardylab::radial::make_graded_grid(1e-6 * R, R, o.grid);
  for (int t = 0; t < 50; ++t) {
    const double c1 = coef(rng);
    const double c2 = coef(rng);
    const double c3 = coef(rng);
    hardylab::radial::RadialProfile u;
    if (t % 2 == 0) {
      u = hardylab::radial::sample_on_grid(
          [&](double r) {
            const double x = r / R;
            return (1.0 - x) * (1.0 + c1 * x + c2 * x * x + c3 * x * x * x);
          },
          grid, true);
    } else {
      // near-extremal family u = r^{-(N-2)/2 + eps} * bump
      const double eps = eps_dist(rng);
      const double beta = (dom.dim - 2.0) / 2.0;
      u = hardylab::radial::sample_on_grid(
          [&](double r) {
            const double x = r / R;
            return std::pow(x, -beta + eps) * (1.0 - x) * (1.0 + 0.5 * c1 * x);
          },
          grid, true);
    }
    const double gap = hardylab::radial::hardy_gap(u, dom);
    const double scale = hardylab::radial::gradient_energy(u, dom.dim);
    worst = std::fmin(worst, gap / std::fmax(scale, 1e-300));
  }
  auto params = base_params(o);
  params.push_back({"profiles", "50"});
  return {deviation_report("hardy.0_gap_nonnegative", -worst, case_tol(o, 1e-6),
                           "worst normalized Hardy gap over 50 admissible profiles",
                           std::move(params))};
}

std::vector<VerificationReport> run_prop_log(const Options& o) {
  std::vector<VerificationReport> out;
  constexpr double kInvE = 0.36787944117144232160;
  const int dim = o.dim;
  const double omega = hardylab::unit_ball_volume(dim);
  std::mt19937 rng(o.seed == 0 ? 11 : o.seed);
  std::uniform_real_distribution<double> coef(-0.9, 0.9);
  std::uniform_int_distribution<int> kdist(1, 3);
  const auto grid = hardylab::radial::make_graded_grid(1e-8, kInvE, o.grid);
  double worst_identity = 0.0;
  double worst_gap = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 20; ++t) {
    const int k = kdist(rng);
    const double c1 = coef(rng);
    const double c2 = coef(rng);
    auto vf = [&](double r) {
      return std::pow(r, k) * (kInvE - r) * (1.0 + c1 * r + c2 * r * r);
    };
    auto v = hardylab::radial::sample_on_grid(vf, grid, true);
    // integration-by-parts identity  int v v' log r dr = -1/2 int v^2 / r dr,
    // both sides by per-panel Gauss on the graded grid (v' analytic)
    auto vdf = [&](double r) {
      return k * std::pow(r, k - 1.0) * (kInvE - r) * (1.0 + c1 * r + c2 * r * r) -
             std::pow(r, k) * (1.0 + c1 * r + c2 * r * r) +
             std::pow(r, k) * (kInvE - r) * (c1 + 2.0 * c2 * r);
    };
    const double lhs =
        panel_gauss4([&](double r) { return vf(r) * vdf(r) * std::log(r); }, grid);
    const double rhs = panel_gauss4([&](double r) { return vf(r) * vf(r) / r; }, grid);
    worst_identity = std::fmax(worst_identity, hardylab::relative_error(lhs, -0.5 * rhs));
    // (grecasimm): hardy_gap(u) >= (1/4) int u^2 / (|x| log |x|)^2 dx
    auto lt = hardylab::radial::log_transform(v, dim);
    const auto& u = lt.u;
    hardylab::radial::RadialProfile w = u;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double lg = std::log(w.grid[i]);
      w.values[i] = u.values[i] * u.values[i] / (lg * lg);
    }
    const auto dom = hardylab::make_domain(dim, omega * std::pow(kInvE, dim));
    const double gap = hardylab::radial::hardy_gap(u, dom) -
                       0.25 * hardylab::radial::weighted_integral(w, -2.0, dim);
    const double scale = hardylab::radial::gradient_energy(u, dim);
    worst_gap = std::fmin(worst_gap, gap / std::fmax(scale, 1e-300));
  }
  auto params = base_params(o);
  params.push_back({"profiles", "20"});
  out.push_back(deviation_report("prop_log.0_parts_identity", worst_identity, case_tol(o, 1e-6),
                                 "int v v' log r dr vs -1/2 int v^2/r dr, worst relative error",
                                 params));
  out.push_back(deviation_report("prop_log.1_grecasimm_gap", -worst_gap, case_tol(o, 1e-6),
                                 "log-weight remainder inequality, worst normalized gap", params));
  return out;
}

std::vector<VerificationReport> run_case(const std::string& name, const Options& o) {
  if (name == "sobolev_disk") return run_sobolev_disk(o);
  if (name == "bv") return run_bv(o);
  if (name == "thm1") return run_thm1(o);
  if (name == "thm2") return run_thm2(o);
  if (name == "thm4") return run_thm4(o);
  if (name == "thm5") return run_thm5(o);
  if (name == "hardy") return run_hardy(o);
  if (name == "prop_log") return run_prop_log(o);
  throw hardylab::invalid_argument_error("unknown verify case: " + name);
}

int emit_reports(std::vector<VerificationReport> reports, const Options& o) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const VerificationReport& a, const VerificationReport& b) {
                     return a.case_id < b.case_id;
                   });
  if (o.format == "csv") std::printf("%s\n", hardylab::csv_header().c_str());
  bool all_pass = true;
  for (const auto& r : reports) {
    all_pass = all_pass && r.pass;
    const std::string line =
        (o.format == "csv") ? hardylab::to_csv_line(r) : hardylab::to_json_line(r);
    std::printf("%s\n", line.c_str());
  }
  return all_pass ? 0 : 1;
}

unsigned thread_cap() {
  const char* env = std::getenv("HARDYLAB_THREADS");
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (env != nullptr) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return std::min<unsigned>(static_cast<unsigned>(v), hw);
  }
  return hw;
}

int cmd_verify(const Options& o_in) {
  Options o = o_in;
  std::vector<std::string> names;
  if (o.verify_case == "all") {
    names = {"thm1", "thm2", "prop_log", "thm4", "thm5", "hardy", "bv", "sobolev_disk"};
    // a single --p cannot fit both thm2 and thm5; each case uses its default
    o.p = std::numeric_limits<double>::quiet_NaN();
  } else {
    names = {o.verify_case};
  }
  std::vector<VerificationReport> reports;
  const unsigned cap = std::min<unsigned>(thread_cap(), names.size());
  if (cap <= 1 || names.size() == 1) {
    for (const auto& n : names) {
      auto part = run_case(n, o);
      reports.insert(reports.end(), part.begin(), part.end());
    }
  } else {
    std::vector<std::future<std::vector<VerificationReport>>> futs;
    futs.reserve(names.size());
    for (const auto& n : names) {
      futs.push_back(std::async(std::launch::async, [&o, n] { return run_case(n, o); }));
    }
    for (auto& f : futs) {
      auto part = f.get();
      reports.insert(reports.end(), part.begin(), part.end());
    }
  }
  return emit_reports(std::move(reports), o);
}

int cmd_constants(const Options& o) {
  const auto dom = hardylab::make_domain(o.dim, o.volume);
  const double* p_ptr = std::isnan(o.p) ? nullptr : &o.p;
  if (p_ptr != nullptr) {
    // A supplied p must be usable by at least one family.
    const bool thm2_ok = o.p >= 1.0 && o.p < dom.crit_exp;
    const auto [lo, hi] = hardylab::constants::thm5_range(o.dim);
    const bool thm5_ok = o.p > lo && o.p < hi;
    if (!thm2_ok && !thm5_ok) {
      std::fprintf(stderr,
                   "error: p=%.12g fits no inequality: thm2 needs 1 <= p < %.12g, thm5 needs p "
                   "in (%.12g, 1)\n",
                   o.p, dom.crit_exp, lo);
      return 2;
    }
  }
  const auto records = hardylab::constants::all_records(dom, p_ptr);
  if (o.format == "csv") std::printf("id,dim,volume,p,alpha,q,value,formula\n");
  for (const auto& rec : records) {
    if (o.format == "csv") {
      std::printf("%s,%d,%s,%s,%s,%s,%s,\"%s\"\n", hardylab::constants::to_string(rec.id),
                  rec.dim, fmt_num(rec.volume).c_str(),
                  std::isnan(rec.p) ? "" : fmt_num(rec.p).c_str(),
                  std::isnan(rec.alpha) ? "" : fmt_num(rec.alpha).c_str(),
                  std::isnan(rec.q) ? "" : fmt_num(rec.q).c_str(), fmt_num(rec.value).c_str(),
                  rec.formula_text.c_str());
    } else {
      json j;
      j["id"] = hardylab::constants::to_string(rec.id);
      j["dim"] = rec.dim;
      j["volume"] = rec.volume;
      if (!std::isnan(rec.p)) j["p"] = rec.p;
      if (!std::isnan(rec.alpha)) j["alpha"] = rec.alpha;
      if (!std::isnan(rec.q)) j["q"] = rec.q;
      j["value"] = rec.value;
      j["formula"] = rec.formula_text;
      std::printf("%s\n", j.dump().c_str());
    }
  }
  return 0;
}

int cmd_minimize(const Options& o) {
  const auto dom = hardylab::make_domain(o.dim, o.volume);
  hardylab::varmin::InequalityId id;
  if (o.verify_case == "thm1") id = hardylab::varmin::InequalityId::thm1;
  else if (o.verify_case == "thm2") id = hardylab::varmin::InequalityId::thm2;
  else if (o.verify_case == "thm4") id = hardylab::varmin::InequalityId::thm4;
  else if (o.verify_case == "thm5") id = hardylab::varmin::InequalityId::thm5;
  else if (o.verify_case == "bv") id = hardylab::varmin::InequalityId::brezis_vazquez;
  else {
    std::fprintf(stderr, "error: minimize --case must be one of thm1|thm2|thm4|thm5|bv\n");
    return 2;
  }
  const double p = std::isnan(o.p) ? (o.verify_case == "thm5" ? 0.9 : 1.0) : o.p;
  auto bc = hardylab::varmin::best_constant_search(id, dom, o.grid, p, o.seed);
  auto params = base_params(o);
  if (o.verify_case == "thm2" || o.verify_case == "thm5") params.push_back({"p", fmt_num(p)});
  auto rep = hardylab::make_report("minimize." + o.verify_case, bc.value, bc.closed_form,
                                   case_tol(o, 1e-2),
                                   bc.converged ? "projected gradient descent, 9 starts"
                                                : "warning: search did not converge",
                                   std::move(params));
  return emit_reports({rep}, o);
}

int cmd_symmetrize(const Options& o) {
  json input;
  try {
    std::ifstream in(o.input_path);
    if (!in) {
      std::fprintf(stderr, "error: cannot open %s\n", o.input_path.c_str());
      return 2;
    }
    input = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());  // includes line/column
    return 2;
  }
  hardylab::symmetrize::FieldSample field;
  try {
    const double total = input.at("total_measure").get<double>();
    const std::size_t n = input.at("n").get<std::size_t>();
    auto u = input.at("u").get<std::vector<double>>();
    auto grad = input.at("grad").get<std::vector<double>>();
    if (u.size() != n || grad.size() != n) {
      std::fprintf(stderr, "error: u/grad arrays must have length n\n");
      return 2;
    }
    field = hardylab::symmetrize::make_field_sample(total, std::move(u), std::move(grad));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: bad FieldSample: %s\n", e.what());
    return 2;
  }
  const auto dom = hardylab::make_domain(o.dim, field.total_measure);
  auto res = hardylab::symmetrize::symmetrize(field, dom);
  auto rep = hardylab::symmetrize::quotient_decrease_check(field, dom, o.q);

  if (!o.output_path.empty()) {
    json out;
    out["total_measure"] = field.total_measure;
    out["n"] = field.size();
    auto dump_profile = [](const hardylab::measure::StepProfile& p) {
      json j;
      j["widths"] = p.widths;
      j["values"] = p.values;
      return j;
    };
    out["f0"] = dump_profile(res.f0);
    out["F"] = dump_profile(res.F);
    out["g"] = dump_profile(res.g);
    out["psi"] = dump_profile(res.psi);
    out["fbar"] = dump_profile(res.fbar);
    out["ubar_grid"] = res.ubar.grid;
    out["ubar_values"] = res.ubar.values;
    out["lorentz_u"] = res.lorentz_u;
    out["lorentz_ubar"] = res.lorentz_ubar;
    out["pairing_direct"] = res.pairing_direct;
    out["pairing_dual"] = res.pairing_dual;
    out["eq1_ok"] = res.eq1_ok;
    out["dis1_ok"] = res.dis1_ok;
    std::ofstream of(o.output_path);
    if (!of) {
      std::fprintf(stderr, "error: cannot write %s\n", o.output_path.c_str());
      return 2;
    }
    of << out.dump(2) << "\n";
  }

  VerificationReport dec;
  dec.case_id = "symmetrize.dec";
  dec.params = {{"dim", std::to_string(o.dim)},
                {"q", fmt_num(o.q)},
                {"n", std::to_string(field.size())}};
  dec.computed = res.lorentz_ubar;
  dec.reference = res.lorentz_u;
  dec.rel_err = hardylab::relative_error(res.lorentz_ubar, res.lorentz_u);
  dec.pass = res.degenerate || res.dis1_ok;
  dec.notes = res.degenerate ? "degenerate"
                             : "one-sided: passes iff ||u||_{2*,2} <= ||ubar||_{2*,2}";
  std::vector<VerificationReport> reports{dec, rep};
  return emit_reports(std::move(reports), o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hardylab: sharp Hardy-inequality constants, verified numerically"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--dim", o.dim, "ambient dimension N >= 3");
    sub->add_option("--volume", o.volume, "measure of the domain (default: unit-ball volume)");
    sub->add_option("--grid", o.grid, "grid resolution");
    sub->add_option("--tol", o.tol, "tolerance override for all checks");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--format", o.format, "jsonl or csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));
  };

  auto* c_const = app.add_subcommand("constants", "evaluate every closed-form constant");
  add_common(c_const);
  c_const->add_option("--p", o.p, "Lorentz exponent p for thm2/thm5");
  c_const->add_option("--q", o.q, "gradient-norm exponent q in [1,2)")
      ->check(CLI::Range(1.0, 2.0));

  auto* c_verify = app.add_subcommand("verify", "run a verification case");
  add_common(c_verify);
  c_verify->add_option("--case", o.verify_case, "case id or 'all'")
      ->check(CLI::IsMember(
          {"thm1", "thm2", "prop_log", "thm4", "thm5", "hardy", "bv", "sobolev_disk", "all"}));
  c_verify->add_option("--p", o.p, "Lorentz exponent for thm2/thm5 cases");

  auto* c_min = app.add_subcommand("minimize", "best-constant search for one inequality");
  add_common(c_min);
  c_min->add_option("--case", o.verify_case, "thm1|thm2|thm4|thm5|bv")->required();
  c_min->add_option("--p", o.p, "Lorentz exponent for thm2/thm5");

  auto* c_sym = app.add_subcommand("symmetrize", "run the symmetrization pipeline on a field");
  c_sym->add_option("--input", o.input_path, "FieldSample JSON file")->required();
  c_sym->add_option("--dim", o.dim, "ambient dimension N >= 3");
  c_sym->add_option("--q", o.q, "quotient exponent q in [1,2)")->check(CLI::Range(1.0, 2.0));
  c_sym->add_option("--output", o.output_path, "write SymmetrizationResult JSON here");
  c_sym->add_option("--format", o.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors are exit 2
  }

  if (o.volume <= 0.0) o.volume = hardylab::unit_ball_volume(o.dim);

  try {
    if (c_const->parsed()) return cmd_constants(o);
    if (c_verify->parsed()) return cmd_verify(o);
    if (c_min->parsed()) return cmd_minimize(o);
    if (c_sym->parsed()) return cmd_symmetrize(o);
  } catch (const hardylab::invalid_argument_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}

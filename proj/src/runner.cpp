#include "surfbath/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "surfbath/bath.hpp"
#include "surfbath/cam.hpp"
#include "surfbath/emit.hpp"
#include "surfbath/errors.hpp"
#include "surfbath/lattice.hpp"
#include "surfbath/runconfig.hpp"
#include "surfbath/spinmodel.hpp"
#include "surfbath/version.hpp"

namespace surfbath {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

RunConfig load_config(const RunnerOptions& opt) {
  if (opt.config_path.empty()) return RunConfig{};
  return parse_config_file(opt.config_path);
}

json lattice_echo(const LatticeConfig& lc) {
  return json{{"n", lc.n}, {"m", lc.m}, {"spacing", lc.spacing}};
}

json model_echo(const ModelConfig& mc) {
  if (mc.use_bath)
    return json{{"bath",
                 {{"s", mc.bath.s},
                  {"delta", mc.bath.delta},
                  {"v", mc.bath.v},
                  {"omega0", mc.bath.omega0},
                  {"cutoff", mc.bath.cutoff}}}};
  return json{
      {"nn", {{"re_j", mc.j_nn.real()}, {"im_j", mc.j_nn.imag()}}}};
}

void emit_result(const RunnerOptions& opt, const std::string& command,
                 const Table& table, const json& config_echo,
                 const json& results, double compute_ms) {
  const std::string body =
      opt.format == "json" ? to_json(table) : to_csv(table);
  if (opt.out_path.empty()) {
    std::cout << body;
    return;
  }
  write_file(opt.out_path, body);

  json manifest;
  manifest["version"] = kVersion;
  manifest["command"] = command;
  manifest["format"] = opt.format;
  manifest["workers"] = opt.workers;
  manifest["config"] = config_echo;
  manifest["conventions"] = {
      {"energy",
       "E = sum over ordered pairs (i,j), i != j, of J_ij s_i s_j"},
      {"class_sums",
       "a = class0 + class1, b = class0 - class1; uniform coherence and "
       "normalization prefactors are omitted; every energy is shifted by "
       "energy_offset before exponentiation"},
      {"coupling",
       "J(d) = pi omega0^2 (omega0 delta)^(2s) (g_real(d) + i g_imag(d))/2"},
      {"fidelity", "|a| / sqrt(|a|^2 + |b|^2)"},
      {"qubit_order",
       "level-0 vertical edges first, then per band: row horizontal edges, "
       "then level vertical edges"},
      {"cam",
       "center-boundary correlators in the positive-character reference "
       "class; x = beta*|J| with each unordered neighbor pair counted once; "
       "T_c(L) = 1/x_c(L) extrapolated linearly in 1/L"}};
  if (!results.is_null()) manifest["results"] = results;
  manifest["outputs"] = json{
      {opt.out_path,
       {{"bytes", body.size()}, {"fnv1a64", fnv1a64_hex(body)}}}};
  if (!opt.seedless)
    manifest["timings_ms"] = json{{"compute", compute_ms}};
  write_file(opt.out_path + ".manifest.json", manifest.dump(2) + "\n");
}

int guarded(const std::string& command, const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    std::cerr << command << ": error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int run_fidelity(const RunnerOptions& opt) {
  return guarded("fidelity", [&] {
    const auto start = Clock::now();
    const RunConfig cfg = load_config(opt);
    require_sections(cfg, {"lattice", "model", "sweep"});

    const Lattice lat = build_lattice(
        {cfg.lattice.n, cfg.lattice.m, cfg.lattice.spacing});
    const CouplingModel cm =
        cfg.model.use_bath
            ? bath_couplings(lat, cfg.model.bath)
            : nearest_neighbor_couplings(lat, cfg.model.j_nn);
    const RestrictedEnsemble ens(lat, cm, EnsembleOptions{opt.workers, false});

    // Reported coupling: the uniform value, or the coupling at the nearest-
    // neighbor separation for a bath model.
    std::complex<double> j_ref = cfg.model.j_nn;
    if (cfg.model.use_bath) {
      const auto pairs = neighbor_pairs(lat);
      j_ref = cm.at(pairs.front().first, pairs.front().second);
    }

    const std::vector<double> betas = linear_grid(
        cfg.sweep.beta_min, cfg.sweep.beta_max, cfg.sweep.points);
    Table t;
    t.columns = {"beta", "re_A", "im_A",       "re_B", "im_B",
                 "fidelity", "n",    "m",      "re_J", "im_J"};
    for (const double beta : betas) {
      const AmplitudePair amp = ens.amplitudes(beta);
      t.rows.push_back({beta, amp.a.real(), amp.a.imag(), amp.b.real(),
                        amp.b.imag(), fidelity_of(amp),
                        static_cast<double>(cfg.lattice.n),
                        static_cast<double>(cfg.lattice.m), j_ref.real(),
                        j_ref.imag()});
    }

    json config_echo{{"lattice", lattice_echo(cfg.lattice)},
                     {"model", model_echo(cfg.model)},
                     {"sweep",
                      {{"beta_min", cfg.sweep.beta_min},
                       {"beta_max", cfg.sweep.beta_max},
                       {"points", cfg.sweep.points}}}};
    json results{{"n_qubits", lat.n_qubits},
                 {"generators", ens.generator_count()},
                 {"ensemble_size", ens.ensemble_size()},
                 {"energy_offset_re", ens.energy_offset().real()}};
    emit_result(opt, "fidelity", t, config_echo, results, ms_since(start));
    return 0;
  });
}

int run_cam(const RunnerOptions& opt) {
  return guarded("cam", [&] {
    const auto start = Clock::now();
    const RunConfig cfg = load_config(opt);
    require_sections(cfg, {"cam"});

    CamOptions copt;
    copt.connected = cfg.cam.connected;
    copt.workers = opt.workers;
    const CamExtrapolation ext = cam_extrapolate(cfg.cam.sizes, copt);

    Table t;
    t.columns = {"size",      "x_c",           "t_c",      "beta_c",
                 "beta_c_stderr", "intercept", "slope"};
    for (std::size_t i = 0; i < ext.sizes.size(); ++i)
      t.rows.push_back({static_cast<double>(ext.sizes[i]), ext.x_c[i],
                        1.0 / ext.x_c[i], ext.beta_c, ext.beta_c_stderr,
                        ext.intercept, ext.slope});

    json config_echo{
        {"cam",
         {{"sizes", cfg.cam.sizes}, {"connected", cfg.cam.connected}}}};
    json results{{"beta_c", ext.beta_c},
                 {"beta_c_stderr", ext.beta_c_stderr},
                 {"intercept", ext.intercept},
                 {"intercept_stderr", ext.intercept_stderr},
                 {"slope", ext.slope},
                 {"x_c", ext.x_c}};
    emit_result(opt, "cam", t, config_echo, results, ms_since(start));
    return 0;
  });
}

int run_correlators(const RunnerOptions& opt) {
  return guarded("correlators", [&] {
    const auto start = Clock::now();
    const RunConfig cfg = load_config(opt);
    require_sections(cfg, {"model", "correlators"});
    if (!cfg.model.use_bath)
      throw config_error("correlators requires a bath model");
    const BathParams& bp = cfg.model.bath;

    Table t;
    t.columns = {"s", "d", "vdelta", "g_real", "g_imag", "re_J", "im_J"};
    for (const double d : linear_grid(cfg.correlators.lo, cfg.correlators.hi,
                                      cfg.correlators.points)) {
      const double gr = bath_g_real(bp, d);
      const double gi = bath_g_imag(bp, d);
      const std::complex<double> j = bath_coupling(bp, d);
      t.rows.push_back(
          {bp.s, d, bp.v * bp.delta, gr, gi, j.real(), j.imag()});
    }

    json config_echo{{"model", model_echo(cfg.model)},
                     {"correlators",
                      {{"d_min", cfg.correlators.lo},
                       {"d_max", cfg.correlators.hi},
                       {"points", cfg.correlators.points}}}};
    emit_result(opt, "correlators", t, config_echo, nullptr,
                ms_since(start));
    return 0;
  });
}

int run_pmap(const RunnerOptions& opt) {
  return guarded("pmap", [&] {
    const auto start = Clock::now();
    const RunConfig cfg = load_config(opt);
    require_sections(cfg, {"model", "pmap"});
    if (!cfg.model.use_bath)
      throw config_error("pmap requires a bath model");
    const BathParams& bp = cfg.model.bath;

    Table t;
    t.columns = {"beta", "p"};
    for (const double beta :
         linear_grid(cfg.pmap.lo, cfg.pmap.hi, cfg.pmap.points))
      t.rows.push_back({beta, flip_probability(bp, beta)});

    json config_echo{{"model", model_echo(cfg.model)},
                     {"pmap",
                      {{"beta_min", cfg.pmap.lo},
                       {"beta_max", cfg.pmap.hi},
                       {"points", cfg.pmap.points}}}};
    emit_result(opt, "pmap", t, config_echo, nullptr, ms_since(start));
    return 0;
  });
}

int run_estimate(const RunnerOptions& opt, double mu, int coordination) {
  return guarded("estimate", [&] {
    const auto start = Clock::now();
    const RunConfig cfg = load_config(opt);
    require_sections(cfg, {});

    Table t;
    t.columns = {"mu", "coordination", "beta_c", "p_threshold"};
    t.rows.push_back({mu, static_cast<double>(coordination),
                      entropy_balance_beta_c(mu, coordination),
                      flip_probability_threshold(mu, coordination)});

    json config_echo{{"mu", mu}, {"coordination", coordination}};
    emit_result(opt, "estimate", t, config_echo, nullptr, ms_since(start));
    return 0;
  });
}

namespace {

bool close_rel(double x, double y, double tol) {
  return std::abs(x - y) <=
         tol * std::max({1.0, std::abs(x), std::abs(y)});
}

bool close_amp(const AmplitudePair& x, const AmplitudePair& y, double tol) {
  const double scale =
      std::max({1.0, std::abs(x.a), std::abs(y.a), std::abs(x.b),
                std::abs(y.b)});
  return std::abs(x.a - y.a) <= tol * scale &&
         std::abs(x.b - y.b) <= tol * scale;
}

struct CheckReport {
  int failures = 0;

  void record(const std::string& name, bool ok, const std::string& note) {
    if (ok) {
      std::cout << "ok - " << name << "\n";
    } else {
      ++failures;
      std::cout << "FAIL - " << name;
      if (!note.empty()) std::cout << " (" << note << ")";
      std::cout << "\n";
    }
  }
};

bool lattice_invariants_hold(std::string& note) {
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 3; ++m) {
      const Lattice lat = build_lattice({n, m, 1.0});
      const int expect_n = n * m + (n + 1) * (m + 1);
      if (lat.n_qubits != expect_n ||
          static_cast<int>(lat.stars.size()) != (m + 1) * n ||
          static_cast<int>(lat.plaquettes.size()) != (n + 1) * m) {
        note = "generator counts";
        return false;
      }
      for (const Stabilizer& s : lat.stars) {
        const int expect_w = (s.col == 0 || s.col == m) ? 3 : 4;
        if (s.qubits.count() != expect_w) {
          note = "star weights";
          return false;
        }
      }
      for (const Stabilizer& p : lat.plaquettes) {
        const int expect_w = (p.row == 0 || p.row == n) ? 3 : 4;
        if (p.qubits.count() != expect_w) {
          note = "tile weights";
          return false;
        }
      }
      for (const Stabilizer& s : lat.stars)
        for (const Stabilizer& p : lat.plaquettes)
          if (s.qubits.odd_overlap(p.qubits)) {
            note = "star/tile commutation";
            return false;
          }
      for (int level = 0; level <= n; ++level) {
        const QubitSet path = logical_x_path(lat, level);
        for (const Stabilizer& p : lat.plaquettes)
          if (path.odd_overlap(p.qubits)) {
            note = "horizontal string vs tiles";
            return false;
          }
      }
      for (int col = 0; col <= m; ++col) {
        const QubitSet path = logical_z_path(lat, col);
        for (const Stabilizer& s : lat.stars)
          if (path.odd_overlap(s.qubits)) {
            note = "vertical string vs stars";
            return false;
          }
      }
      if (!lat.gamma_x.odd_overlap(lat.gamma_z)) {
        note = "string crossing parity";
        return false;
      }
      if (lat.n_qubits <= 13) {
        std::uint64_t admitted = 0;
        for (std::uint64_t bits = 0;
             bits < (std::uint64_t{1} << lat.n_qubits); ++bits) {
          QubitSet cfg;
          cfg.w[0] = bits;
          if (satisfies_star_constraints(lat, cfg)) ++admitted;
        }
        const std::uint64_t expect =
            std::uint64_t{1} << (lat.plaquettes.size() + 1);
        if (admitted != expect) {
          note = "restricted ensemble size";
          return false;
        }
      }
    }
  return true;
}

bool kernels_match_quadrature(std::string& note) {
  BathParams p;
  p.delta = 1.7;
  p.v = 0.8;
  p.omega0 = 1.1;
  const double b = p.v * p.delta;
  for (const double s : {-0.5, 0.0, 0.5}) {
    p.s = s;
    for (const double x : {0.3, 0.8, 1.7, 2.5}) {
      const double d = x * b;
      const double gr = bath_g_real(p, d);
      const double gr_q = bath_g_real_quadrature(p, d);
      const double gi = bath_g_imag(p, d);
      const double gi_q = bath_g_imag_quadrature(p, d);
      if (!close_rel(gr, gr_q, 1e-6) || !close_rel(gi, gi_q, 1e-6)) {
        note = "s=" + format_double(s) + " d/vdelta=" + format_double(x);
        return false;
      }
    }
  }
  return true;
}

bool class_sums_match_brute_force(std::string& note) {
  {
    const Lattice lat = build_lattice({1, 1, 1.0});
    const CouplingModel cm =
        nearest_neighbor_couplings(lat, {-1.0, 0.35});
    const RestrictedEnsemble ens(lat, cm, {});
    for (const double beta : {0.0, 0.07, 0.21, 0.4, 0.9})
      if (!close_amp(ens.amplitudes(beta),
                     brute_force_amplitudes(lat, cm, beta), 1e-12)) {
        note = "uniform couplings, beta=" + format_double(beta);
        return false;
      }
  }
  {
    const Lattice lat = build_lattice({2, 2, 1.0});
    BathParams bp;
    bp.s = 0.0;
    const CouplingModel cm = bath_couplings(lat, bp);
    const RestrictedEnsemble ens(lat, cm, {});
    for (const double beta : {0.0, 0.05, 0.1, 0.2, 0.35})
      if (!close_amp(ens.amplitudes(beta),
                     brute_force_amplitudes(lat, cm, beta), 1e-12)) {
        note = "bath couplings, beta=" + format_double(beta);
        return false;
      }
  }
  return true;
}

bool flip_probability_identities_hold(std::string& note) {
  const double pi = std::numbers::pi;
  for (const double beta : {0.0, 0.2, 0.7, 1.5, 3.0}) {
    BathParams p;
    p.s = -0.5;
    p.delta = 1.7;
    p.v = 0.8;
    p.omega0 = 1.1;
    const double direct = 0.5 * (1.0 - std::exp(-pi * beta / 4.0));
    if (!close_rel(flip_probability(p, beta), direct, 1e-12)) {
      note = "s=-1/2";
      return false;
    }
    p.s = 0.0;
    p.cutoff = 7.0;
    const double u0 = 2.0 * p.v * p.delta * p.cutoff;
    if (!close_rel(flip_probability(p, beta),
                   0.5 * (1.0 - std::pow(u0, -0.5 * beta)), 1e-12)) {
      note = "s=0";
      return false;
    }
    p.s = 0.5;
    const double u1 = p.v * p.delta * p.cutoff;
    if (!close_rel(flip_probability(p, beta),
                   0.5 * (1.0 - std::exp(-0.5 * beta *
                                         (u1 - std::sin(u1)))),
                   1e-12)) {
      note = "s=+1/2";
      return false;
    }
    for (const double s : {-0.5, 0.0, 0.5}) {
      p.s = s;
      if (beta == 0.0) continue;
      const double prob = flip_probability(p, beta);
      if (!close_rel(beta_for_flip_probability(p, prob), beta, 1e-10)) {
        note = "inverse round trip, s=" + format_double(s);
        return false;
      }
    }
  }
  return true;
}

bool histogram_matches_dense(std::string& note) {
  const Lattice lat = build_lattice({2, 2, 1.0});
  const CouplingModel cm = nearest_neighbor_couplings(lat, {-1.0, 0.0});
  const RestrictedEnsemble fast(lat, cm, {});
  EnsembleOptions dense_opt;
  dense_opt.force_dense = true;
  const RestrictedEnsemble dense(lat, cm, dense_opt);
  for (const double beta : {0.0, 0.1, 0.3, 0.6, 1.2})
    if (!close_amp(fast.amplitudes(beta), dense.amplitudes(beta), 1e-12)) {
      note = "beta=" + format_double(beta);
      return false;
    }
  return true;
}

}  // namespace

int run_validate(const RunnerOptions& opt) {
  return guarded("validate", [&] {
    if (!opt.config_path.empty())
      throw config_error("validate does not take a configuration file");
    CheckReport report;
    std::string note;

    note.clear();
    report.record("lattice invariants", lattice_invariants_hold(note), note);
    note.clear();
    report.record("closed kernels vs quadrature",
                  kernels_match_quadrature(note), note);
    note.clear();
    report.record("class sums vs brute force",
                  class_sums_match_brute_force(note), note);
    note.clear();
    report.record("flip probability identities",
                  flip_probability_identities_hold(note), note);
    note.clear();
    report.record("histogram vs dense class sums",
                  histogram_matches_dense(note), note);

    if (report.failures) {
      std::cout << report.failures << " check(s) failed\n";
      return 1;
    }
    std::cout << "all checks passed\n";
    return 0;
  });
}

}  // namespace surfbath

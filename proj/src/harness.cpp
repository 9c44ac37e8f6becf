// Copyright 2026 The lrr Authors
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

#include "lrr/harness.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <tuple>

#include "lrr/error.hpp"
#include "lrr/parallel.hpp"

namespace lrr {

namespace {

OperatorBasis make_basis(BasisKind kind, Eigen::Index n) {
  switch (kind) {
    case BasisKind::kPauli: {
      int k = 0;
      while ((Eigen::Index(1) << k) < n) ++k;
      if ((Eigen::Index(1) << k) != n || k < 1)
        throw InvalidInput("Pauli basis needs n = 2^k, got n = " + std::to_string(n));
      return OperatorBasis::pauli(k);
    }
    case BasisKind::kHermitianStandard:
      return OperatorBasis::hermitian_standard(static_cast<int>(n));
    default:
      throw InvalidInput("phase diagram supports the pauli and hermitian-standard bases");
  }
}

double pooled_sigma(const CellResult& a, const CellResult& b) {
  return std::sqrt(a.sigma() * a.sigma() + b.sigma() * b.sigma());
}

template <typename T>
std::vector<T> to_vector(const std::vector<long long>& in) {
  std::vector<T> out;
  for (auto v : in) {
    if (v < 0) throw InvalidInput("negative value in a grid list");
    out.push_back(static_cast<T>(v));
  }
  return out;
}

}  // namespace

double CellResult::sigma() const {
  if (trials == 0) return 0.0;
  const double p = rate();
  return std::sqrt(p * (1.0 - p) / trials);
}

const std::set<std::string>& phase_config_keys() {
  static const std::set<std::string> keys = {
      "experiment", "n", "r", "basis", "m_over_nr", "gamma", "m", "modes", "trials", "seed",
      "spectrum", "success_threshold", "workers", "solver.max_iterations", "solver.penalty",
      "solver.eps_primal", "solver.eps_dual", "solver.zero_tol", "solver.adaptive_penalty"};
  return keys;
}

const std::set<std::string>& bounds_config_keys() {
  static const std::set<std::string> keys = {"experiment", "n", "r", "trials", "seed",
                                             "kinds", "workers"};
  return keys;
}

const std::set<std::string>& golf_config_keys() {
  static const std::set<std::string> keys = {"experiment", "variant", "n", "r", "beta",
                                             "alpha", "constant_scale", "seed", "spectrum"};
  return keys;
}

PhaseConfig PhaseConfig::from_config(const ConfigFile& cfg) {
  cfg.require_known(phase_config_keys());
  if (cfg.has("experiment") && cfg.get_string("experiment", "") != "phase")
    throw InvalidInput("config: experiment must be 'phase'");
  PhaseConfig p;
  p.n = to_vector<Eigen::Index>(cfg.get_int_list("n", {16}));
  p.r = to_vector<Eigen::Index>(cfg.get_int_list("r", {1}));
  p.basis = basis_kind_from_string(cfg.get_string("basis", "pauli"));
  p.m_over_nr = cfg.get_double_list("m_over_nr", p.m_over_nr);
  if (cfg.has("gamma")) p.gamma = cfg.get_double("gamma", 0.0);
  p.m = to_vector<std::size_t>(cfg.get_int_list("m", {}));
  p.modes.clear();
  for (const auto& s : cfg.get_list("modes", {"iid"})) p.modes.push_back(sampling_mode_from_string(s));
  p.trials = static_cast<int>(cfg.get_int("trials", p.trials));
  p.seed = cfg.get_u64("seed", p.seed);
  p.spectrum = spectrum_kind_from_string(cfg.get_string("spectrum", "flat"));
  p.success_threshold = cfg.get_double("success_threshold", p.success_threshold);
  p.workers = static_cast<unsigned>(cfg.get_int("workers", 0));
  p.solver.max_iterations = static_cast<int>(cfg.get_int("solver.max_iterations", p.solver.max_iterations));
  p.solver.penalty = cfg.get_double("solver.penalty", p.solver.penalty);
  p.solver.eps_primal = cfg.get_double("solver.eps_primal", p.solver.eps_primal);
  p.solver.eps_dual = cfg.get_double("solver.eps_dual", p.solver.eps_dual);
  p.solver.zero_tol = cfg.get_double("solver.zero_tol", p.solver.zero_tol);
  p.solver.adaptive_penalty = cfg.get_bool("solver.adaptive_penalty", false);
  p.validate();
  return p;
}

void PhaseConfig::validate() const {
  if (n.empty() || r.empty() || modes.empty())
    throw InvalidInput("phase: grid must be non-empty");
  if (m.empty() && !gamma && m_over_nr.empty())
    throw InvalidInput("phase: no m values");
  if (trials < 1) throw InvalidInput("phase: trials must be >= 1");
  if (!(success_threshold > 0.0)) throw InvalidInput("phase: success_threshold must be > 0");
  for (auto nn : n)
    for (auto rr : r)
      if (rr < 1 || rr > nn) throw InvalidInput("phase: need 1 <= r <= n");
  if (gamma && !(*gamma > 0.0)) throw InvalidInput("phase: gamma must be > 0");
  for (double x : m_over_nr)
    if (!(x > 0.0)) throw InvalidInput("phase: m_over_nr entries must be > 0");
  solver.validate();
}

std::vector<std::size_t> PhaseConfig::m_values(Eigen::Index nn, Eigen::Index rr) const {
  if (!m.empty()) return m;
  const double nr = static_cast<double>(nn * rr);
  std::vector<std::size_t> out;
  if (gamma) {
    out.push_back(static_cast<std::size_t>(std::ceil(*gamma * nr * std::log(static_cast<double>(nn)))));
  } else {
    for (double x : m_over_nr) out.push_back(static_cast<std::size_t>(std::ceil(x * nr)));
  }
  return out;
}

std::uint64_t rho_stream(Eigen::Index n, Eigen::Index r) {
  return (static_cast<std::uint64_t>(n) << 32 | static_cast<std::uint64_t>(r)) << 1;
}

std::uint64_t omega_stream(Eigen::Index n, Eigen::Index r, std::size_t m, SamplingMode mode) {
  std::uint64_t key = CounterRng::mix(static_cast<std::uint64_t>(n));
  key = CounterRng::mix(key ^ static_cast<std::uint64_t>(r));
  key = CounterRng::mix(key ^ static_cast<std::uint64_t>(m));
  key = CounterRng::mix(key ^ (mode == SamplingMode::kIid ? 1u : 2u));
  return key | 1u;
}

HermitianMatrix phase_trial_rho(const PhaseConfig& cfg, Eigen::Index n, Eigen::Index r,
                                int trial) {
  CounterRng rng(StreamId{cfg.seed, static_cast<std::uint64_t>(trial), rho_stream(n, r)});
  return random_low_rank(n, r, cfg.spectrum, rng);
}

PhaseResult run_phase_diagram(const PhaseConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  PhaseResult result;
  std::map<Eigen::Index, OperatorBasis> bases;
  for (auto nn : cfg.n) bases.emplace(nn, make_basis(cfg.basis, nn));
  for (auto nn : cfg.n)
    for (auto rr : cfg.r)
      for (auto mode : cfg.modes)
        for (auto mm : cfg.m_values(nn, rr)) {
          if (mode == SamplingMode::kWithoutReplacement &&
              mm > static_cast<std::size_t>(nn * nn))
            throw InvalidInput("phase: m exceeds n^2 without replacement");
          CellResult c;
          c.n = nn;
          c.r = rr;
          c.m = mm;
          c.mode = mode;
          c.trials = cfg.trials;
          c.seed = cfg.seed;
          c.stream = omega_stream(nn, rr, mm, mode);
          result.cells.push_back(c);
        }

  struct TrialOut {
    double error = 0.0;
    int iterations = 0;
    double seconds = 0.0;
  };
  const auto trials = static_cast<std::size_t>(cfg.trials);
  std::vector<TrialOut> outs(result.cells.size() * trials);
  parallel_for(outs.size(), [&](std::size_t task) {
    const CellResult& c = result.cells[task / trials];
    const int t = static_cast<int>(task % trials);
    const auto t0 = std::chrono::steady_clock::now();
    const HermitianMatrix rho = phase_trial_rho(cfg, c.n, c.r, t);
    const SampleSet omega =
        draw_omega(c.n, c.m, c.mode, StreamId{cfg.seed, static_cast<std::uint64_t>(t), c.stream});
    TrialOut& out = outs[task];
    if (omega.empty()) {
      out.error = 1.0;
    } else {
      const auto problem = RecoveryProblem::from_matrix(rho, bases.at(c.n), omega.indices);
      const RecoveryResult res = recover(problem, cfg.solver);
      out.error = diagnose(res.sigma, rho).relative_error;
      out.iterations = res.iterations;
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }, cfg.workers);

  for (std::size_t i = 0; i < result.cells.size(); ++i) {
    CellResult& c = result.cells[i];
    double err = 0.0, it = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const TrialOut& o = outs[i * trials + t];
      c.successes += o.error <= cfg.success_threshold;
      err += o.error;
      it += o.iterations;
      c.wall_time += o.seconds;
    }
    c.mean_relative_error = err / static_cast<double>(trials);
    c.mean_iterations = it / static_cast<double>(trials);
  }
  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void write_phase_csv(std::ostream& os, const PhaseResult& result, bool timing_comments) {
  os << "# lrr phase v1\n";
  if (timing_comments) os << "# wall_time_s=" << result.wall_time << '\n';
  os << "n,r,m,m_over_nr,mode,trials,successes,success_rate,mean_relative_error,"
        "mean_iterations,seed,stream\n";
  os << std::setprecision(10);
  for (const auto& c : result.cells) {
    os << c.n << ',' << c.r << ',' << c.m << ','
       << static_cast<double>(c.m) / static_cast<double>(c.n * c.r) << ',' << to_string(c.mode)
       << ',' << c.trials << ',' << c.successes << ',' << c.rate() << ','
       << c.mean_relative_error << ',' << c.mean_iterations << ',' << c.seed << ','
       << c.stream << '\n';
  }
  if (timing_comments) {
    for (const auto& c : result.cells)
      os << "# cell n=" << c.n << " r=" << c.r << " m=" << c.m << " mode=" << to_string(c.mode)
         << " wall_time_s=" << c.wall_time << '\n';
  }
}

OrderingCheck check_monotone(const std::vector<CellResult>& cells) {
  OrderingCheck out;
  std::map<std::tuple<Eigen::Index, Eigen::Index, int>, std::vector<const CellResult*>> groups;
  for (const auto& c : cells)
    groups[{c.n, c.r, static_cast<int>(c.mode)}].push_back(&c);
  for (auto& [key, g] : groups) {
    std::sort(g.begin(), g.end(), [](auto a, auto b) { return a->m < b->m; });
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j)
        if (g[j]->m > g[i]->m && g[j]->rate() < g[i]->rate() - 2.0 * pooled_sigma(*g[i], *g[j])) {
          out.ok = false;
          out.failures.push_back("n=" + std::to_string(g[i]->n) + " r=" + std::to_string(g[i]->r) +
                                 ": rate drops from m=" + std::to_string(g[i]->m) + " to m=" +
                                 std::to_string(g[j]->m));
        }
  }
  return out;
}

OrderingCheck check_mode_ordering(const std::vector<CellResult>& cells) {
  OrderingCheck out;
  std::map<std::tuple<Eigen::Index, Eigen::Index, std::size_t>, std::pair<const CellResult*, const CellResult*>> pairs;
  for (const auto& c : cells) {
    auto& slot = pairs[{c.n, c.r, c.m}];
    (c.mode == SamplingMode::kIid ? slot.first : slot.second) = &c;
  }
  for (const auto& [key, p] : pairs) {
    if (!p.first || !p.second) continue;
    if (p.second->rate() < p.first->rate() - 2.0 * pooled_sigma(*p.first, *p.second)) {
      out.ok = false;
      out.failures.push_back("n=" + std::to_string(p.first->n) + " r=" + std::to_string(p.first->r) +
                             " m=" + std::to_string(p.first->m) +
                             ": without-replacement below i.i.d.");
    }
  }
  return out;
}

BoundsConfig BoundsConfig::from_config(const ConfigFile& cfg) {
  cfg.require_known(bounds_config_keys());
  if (cfg.has("experiment") && cfg.get_string("experiment", "") != "bounds")
    throw InvalidInput("config: experiment must be 'bounds'");
  BoundsConfig b;
  b.n = static_cast<Eigen::Index>(cfg.get_int("n", b.n));
  b.r = static_cast<Eigen::Index>(cfg.get_int("r", b.r));
  b.trials = static_cast<int>(cfg.get_int("trials", b.trials));
  b.seed = cfg.get_u64("seed", b.seed);
  if (cfg.has("kinds")) {
    b.kinds.clear();
    for (const auto& s : cfg.get_list("kinds", {})) b.kinds.push_back(bound_kind_from_string(s));
  }
  b.workers = static_cast<unsigned>(cfg.get_int("workers", 0));
  if (b.trials < 1) throw InvalidInput("bounds: trials must be >= 1");
  if (b.r < 1 || b.r > b.n) throw InvalidInput("bounds: need 1 <= r <= n");
  return b;
}

std::vector<TailScenario> default_sweep(const BoundsConfig& cfg) {
  std::vector<TailScenario> grid;
  auto add = [&](BoundKind kind, double kappa, std::size_t m, std::vector<double> ts) {
    for (double t : ts) {
      TailScenario s;
      s.kind = kind;
      s.n = cfg.n;
      s.r = cfg.r;
      s.kappa = kappa;
      s.m = m;
      s.t = t;
      s.trials = cfg.trials;
      s.seed = cfg.seed;
      grid.push_back(s);
    }
  };
  // Parameters the scenario derives from its own matrix, for t values that
  // sit on a window edge.
  auto probe = [&](BoundKind kind, double kappa, double t) {
    TailScenario s;
    s.kind = kind;
    s.n = cfg.n;
    s.r = cfg.r;
    s.kappa = kappa;
    s.seed = cfg.seed;
    s.trials = 1;
    s.t = t;
    return monte_carlo_tail(s, 1).query;
  };
  const double r = static_cast<double>(cfg.r);
  for (BoundKind kind : cfg.kinds) {
    switch (kind) {
      case BoundKind::kAdev:
        for (double kappa : {8.0, 32.0}) add(kind, kappa, 0, {0.0, 0.25, 0.5, 1.0, 1.5, 1.99});
        break;
      case BoundKind::kPbotFourier:
        for (double kappa : {8.0, 32.0}) {
          const double edge = std::sqrt(2.0 / r) * probe(kind, kappa, 0.0).get("F2");
          add(kind, kappa, 0, {0.25, 0.5, 1.0, edge, 2.0, 3.0});
        }
        break;
      case BoundKind::kPbotGeneral:
        for (double kappa : {8.0, 32.0}) {
          const double edge = std::sqrt(2.0 / r) * probe(kind, kappa, 0.0).get("f");
          std::vector<double> ts;
          for (double t : {0.25, 0.5, 1.0})
            if (t < edge) ts.push_back(t);
          ts.push_back(edge);
          add(kind, kappa, 0, ts);
        }
        break;
      case BoundKind::kMuPropagation:
        for (double kappa : {8.0, 32.0}) {
          const double mu = probe(kind, kappa, 0.0).get("mu");
          add(kind, kappa, 0, {0.25 * mu, 0.5 * mu, mu});
        }
        break;
      case BoundKind::kDimensionFree:
        for (double kappa : {32.0, 128.0}) {
          const TailBoundQuery q = probe(kind, kappa, 2.0 / 3.0);
          const double lo = std::sqrt(2.0 * q.get("nu") / q.get("kappa"));
          add(kind, kappa, 0, {lo, 0.5 * (lo + 2.0 / 3.0), 2.0 / 3.0});
        }
        break;
      case BoundKind::kOpBernstein:
      case BoundKind::kMatrixMartingale:
        for (std::size_t m : {16u, 64u}) add(kind, 0.0, m, {0.0, 1.0, 2.0, 3.0, 4.0, 5.0});
        break;
      case BoundKind::kOpBernsteinPoisson:
        for (std::size_t m : {4u, 16u})
          add(kind, 0.0, m, {2.0 * std::sqrt(static_cast<double>(m)),
                             3.0 * std::sqrt(static_cast<double>(m))});
        break;
      case BoundKind::kVectorBernstein:
        for (std::size_t m : {16u, 64u}) add(kind, 0.0, m, {0.0, 0.25, 0.5, 1.0, 2.0});
        break;
    }
  }
  return grid;
}

std::vector<TailReport> run_bound_validation(const std::vector<TailScenario>& grid,
                                             unsigned workers) {
  std::vector<TailReport> out;
  out.reserve(grid.size());
  for (const auto& s : grid) out.push_back(monte_carlo_tail(s, workers));
  return out;
}

GolfExperiment GolfExperiment::from_config(const ConfigFile& cfg) {
  cfg.require_known(golf_config_keys());
  if (cfg.has("experiment") && cfg.get_string("experiment", "") != "golf")
    throw InvalidInput("config: experiment must be 'golf'");
  GolfExperiment e;
  e.variant = golfing_variant_from_string(cfg.get_string("variant", "simple"));
  e.n = static_cast<Eigen::Index>(cfg.get_int("n", e.n));
  e.r = static_cast<Eigen::Index>(cfg.get_int("r", e.r));
  e.beta = cfg.get_double("beta", e.beta);
  e.alpha = cfg.get_double("alpha", e.alpha);
  e.constant_scale = cfg.get_double("constant_scale", e.constant_scale);
  e.seed = cfg.get_u64("seed", e.seed);
  e.spectrum = spectrum_kind_from_string(cfg.get_string("spectrum", "flat"));
  if (e.r < 1 || e.r > e.n) throw InvalidInput("golf: need 1 <= r <= n");
  return e;
}

GolfRun run_golf_experiment(const GolfExperiment& e, std::uint64_t trial) {
  const OperatorBasis basis = make_basis(BasisKind::kPauli, e.n);
  GolfRun run;
  CounterRng rng(StreamId{e.seed, trial, rho_stream(e.n, e.r)});
  run.rho = random_low_rank(e.n, e.r, e.spectrum, rng);
  run.nu = coherence(run.rho, basis).nu;
  ScheduleRequest req;
  req.variant = e.variant;
  req.n = e.n;
  req.r = e.r;
  req.nu = run.nu;
  req.beta = e.beta;
  req.alpha = e.alpha;
  req.constant_scale = e.constant_scale;
  run.schedule = schedule_params(req);
  run.certificate = run_golfing(run.rho, basis, run.schedule, e.seed, trial);
  run.report = verify_certificate(run.rho, run.certificate.y, &basis,
                                  &run.certificate.used_indices);
  run.bookkeeping = check_bookkeeping(run.rho, run.certificate, run.schedule);
  return run;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IOError("cannot open '" + path + "' for writing");
  return os;
}

}  // namespace lrr

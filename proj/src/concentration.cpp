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

#include "lrr/concentration.hpp"

#include <bit>
#include <cmath>
#include <iomanip>
#include <random>

#include "lrr/golfing.hpp"
#include "lrr/parallel.hpp"
#include "lrr/sampling.hpp"

namespace lrr {

namespace {

struct KindName {
  BoundKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {BoundKind::kOpBernstein, "op-bernstein"},
    {BoundKind::kOpBernsteinPoisson, "op-bernstein-poisson"},
    {BoundKind::kVectorBernstein, "vector-bernstein"},
    {BoundKind::kMatrixMartingale, "matrix-martingale"},
    {BoundKind::kAdev, "adev"},
    {BoundKind::kPbotFourier, "pbot-fourier"},
    {BoundKind::kPbotGeneral, "pbot-general"},
    {BoundKind::kMuPropagation, "mu-propagation"},
    {BoundKind::kDimensionFree, "dimension-free"},
};

void out_of_window(const TailBoundQuery& q, const std::string& window) {
  throw OutOfWindow(to_string(q.kind) + ": t = " + std::to_string(q.get("t")) +
                    " outside " + window);
}

bool uses_matrix_scenario(BoundKind k) {
  return k == BoundKind::kAdev || k == BoundKind::kPbotFourier ||
         k == BoundKind::kPbotGeneral || k == BoundKind::kMuPropagation ||
         k == BoundKind::kDimensionFree;
}

// Fixed objects of a scenario, shared by all trials.
struct Context {
  TailScenario s;
  OperatorBasis basis = OperatorBasis::hermitian_standard(1);
  HermitianMatrix rho;
  TangentSpace tspace;
  ComplexMatrix f;
  std::size_t m = 0;
  TailBoundQuery query;

  explicit Context(const TailScenario& sc) : s(sc) {
    if (sc.trials < 1) throw InvalidInput("monte_carlo_tail: trials must be >= 1");
    if (sc.n < 2) throw InvalidInput("monte_carlo_tail: n must be >= 2");
    query.kind = sc.kind;
    query.set("t", sc.t);
    const double n = static_cast<double>(sc.n);
    if (uses_matrix_scenario(sc.kind)) {
      const BasisKind bk =
          sc.kind == BoundKind::kPbotGeneral ? BasisKind::kHermitianStandard : sc.basis;
      if (bk == BasisKind::kPauli) {
        const int k = static_cast<int>(std::lround(std::log2(n)));
        if ((Eigen::Index(1) << k) != sc.n)
          throw InvalidInput("monte_carlo_tail: Pauli scenarios need n = 2^k");
        basis = OperatorBasis::pauli(k);
      } else if (bk == BasisKind::kHermitianStandard) {
        basis = OperatorBasis::hermitian_standard(static_cast<int>(sc.n));
      } else {
        throw InvalidInput("monte_carlo_tail: unsupported basis kind");
      }
      CounterRng rng(StreamId{sc.seed, ~std::uint64_t{0}, 0});
      rho = random_low_rank(sc.n, sc.r, sc.spectrum, rng);
      tspace = TangentSpace(rho);
      f = matrix_sign(rho).matrix();
      const double r = static_cast<double>(sc.r);
      m = static_cast<std::size_t>(std::ceil(sc.kappa * n * r));
      const double kappa = static_cast<double>(m) / (n * r);
      const CoherenceReport coh = coherence(rho, basis);
      const double f2 = f.norm();
      query.set("kappa", kappa);
      switch (sc.kind) {
        case BoundKind::kAdev:
          query.set("n", n).set("r", r).set("nu", coh.nu);
          break;
        case BoundKind::kPbotFourier:
          query.set("n", n).set("r", r).set("nu", n * basis.fourier_bound()).set("F2", f2);
          break;
        case BoundKind::kPbotGeneral: {
          const double nu_mu = n * n * mu_overlap(f, basis) / (f2 * f2);
          query.set("n", n).set("r", r).set("nu", std::max(coh.pt_term, nu_mu)).set("f", f2);
          break;
        }
        case BoundKind::kMuPropagation:
          query.set("n", n).set("nu", coh.nu).set("mu", mu_overlap(f, basis));
          break;
        case BoundKind::kDimensionFree:
          query.set("nu", coh.nu);
          break;
        default:
          break;
      }
    } else {
      const double m_d = static_cast<double>(sc.m);
      if (sc.m < 1) throw InvalidInput("monte_carlo_tail: m must be >= 1");
      m = sc.m;
      // Every ensemble below has ||X_i|| = 1/sqrt(m) and variance 1/m per term.
      if (sc.kind == BoundKind::kVectorBernstein) {
        query.set("V", 1.0).set("max_x", 1.0 / std::sqrt(m_d));
      } else {
        query.set("n", n).set("V", 1.0).set("c", 1.0 / std::sqrt(m_d));
      }
    }
  }

  double statistic(int trial) const {
    const StreamId stream{s.seed, static_cast<std::uint64_t>(trial), 0};
    const Eigen::Index n = s.n;
    switch (s.kind) {
      case BoundKind::kAdev: {
        const SamplingOperator r(draw_batch(n, m, stream), basis);
        return tangent_deviation(tspace, r);
      }
      case BoundKind::kPbotFourier:
      case BoundKind::kPbotGeneral: {
        const SamplingOperator r(draw_batch(n, m, stream), basis);
        return hermitian_operator_norm(tspace.project_complement(r.apply(f)));
      }
      case BoundKind::kMuPropagation: {
        const SamplingOperator r(draw_batch(n, m, stream), basis);
        return mu_overlap(ComplexMatrix(f - tspace.project(r.apply(f))), basis);
      }
      case BoundKind::kDimensionFree: {
        const SamplingOperator r(draw_batch(n, m, stream), basis);
        return (tspace.project(r.apply(f)) - f).norm() / f.norm();
      }
      case BoundKind::kOpBernstein:
      case BoundKind::kOpBernsteinPoisson: {
        // Commuting ensemble: +-(1/sqrt m) times a random diagonal Pauli word.
        CounterRng rng(stream);
        const double w = 1.0 / std::sqrt(static_cast<double>(m));
        RealVector diag = RealVector::Zero(n);
        for (std::size_t i = 0; i < m; ++i) {
          const std::uint64_t p = rng.below(static_cast<std::uint64_t>(n));
          const double sgn = (rng() & 1u) ? w : -w;
          for (Eigen::Index row = 0; row < n; ++row)
            diag(row) += (std::popcount(p & static_cast<std::uint64_t>(row)) & 1) ? -sgn : sgn;
        }
        return diag.cwiseAbs().maxCoeff();
      }
      case BoundKind::kMatrixMartingale: {
        // D_j = eps_j s_j A_j, A_j a random Pauli word, s_j halved once the
        // running sum has left the unit ball (a predictable step size).
        CounterRng rng(stream);
        const int k = static_cast<int>(std::lround(std::log2(static_cast<double>(n))));
        const double w = 1.0 / std::sqrt(static_cast<double>(m));
        ComplexMatrix z = ComplexMatrix::Zero(n, n);
        double znorm = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          const auto p = static_cast<std::uint32_t>(rng.below(static_cast<std::uint64_t>(n)));
          const auto q = static_cast<std::uint32_t>(rng.below(static_cast<std::uint64_t>(n)));
          const double step = (znorm <= 1.0 ? w : 0.5 * w) * ((rng() & 1u) ? 1.0 : -1.0);
          pauli_word(k, p, q).add_to(z, step);
          znorm = hermitian_operator_norm(z);
        }
        return znorm;
      }
      case BoundKind::kVectorBernstein: {
        // Independent +-(1/sqrt m) u_i with u_i uniform on the unit sphere of R^n.
        CounterRng rng(stream);
        std::normal_distribution<double> normal;
        const double w = 1.0 / std::sqrt(static_cast<double>(m));
        RealVector sum = RealVector::Zero(n);
        RealVector u(n);
        for (std::size_t i = 0; i < m; ++i) {
          for (Eigen::Index d = 0; d < n; ++d) u(d) = normal(rng);
          sum += w * u / u.norm();
        }
        return sum.norm() - 1.0;  // N - sqrt(V)
      }
    }
    return 0.0;
  }
};

}  // namespace

std::string to_string(BoundKind kind) {
  for (const auto& kn : kKindNames)
    if (kn.kind == kind) return kn.name;
  return "unknown";
}

BoundKind bound_kind_from_string(const std::string& s) {
  for (const auto& kn : kKindNames)
    if (s == kn.name) return kn.kind;
  throw InvalidInput("unknown bound kind '" + s + "'");
}

const std::vector<BoundKind>& all_bound_kinds() {
  static const std::vector<BoundKind> kinds = [] {
    std::vector<BoundKind> v;
    for (const auto& kn : kKindNames) v.push_back(kn.kind);
    return v;
  }();
  return kinds;
}

double TailBoundQuery::get(const std::string& name) const {
  const auto it = params.find(name);
  if (it == params.end())
    throw InvalidInput(to_string(kind) + ": missing parameter '" + name + "'");
  if (!std::isfinite(it->second))
    throw InvalidInput(to_string(kind) + ": parameter '" + name + "' is not finite");
  if (name == "t" ? it->second < 0.0 : !(it->second > 0.0))
    throw InvalidInput(to_string(kind) + ": parameter '" + name + "' out of range");
  return it->second;
}

double eval_tail_bound(const TailBoundQuery& q) {
  const double t = q.get("t");
  switch (q.kind) {
    case BoundKind::kOpBernstein: {
      const double n = q.get("n"), v = q.get("V"), c = q.get("c");
      if (t > 2.0 * v / c) out_of_window(q, "t <= 2V/c");
      return 2.0 * n * std::exp(-t * t / (4.0 * v));
    }
    case BoundKind::kOpBernsteinPoisson: {
      const double n = q.get("n"), v = q.get("V"), c = q.get("c");
      if (t < 2.0 * v / c) out_of_window(q, "t >= 2V/c");
      return 2.0 * n * std::exp(-t / (2.0 * c));
    }
    case BoundKind::kVectorBernstein: {
      const double v = q.get("V"), mx = q.get("max_x");
      if (t > v / mx) out_of_window(q, "t <= V/max||X_i||_2");
      return std::exp(-t * t / (4.0 * v));
    }
    case BoundKind::kMatrixMartingale: {
      const double n = q.get("n"), v = q.get("V"), c = q.get("c");
      if (t > 2.0 * v / c) out_of_window(q, "t <= 2V/max c_i");
      return 2.0 * n * std::exp(-t * t / (4.0 * v));
    }
    case BoundKind::kAdev: {
      const double n = q.get("n"), r = q.get("r"), nu = q.get("nu"), k = q.get("kappa");
      if (!(t < 2.0)) out_of_window(q, "t < 2");
      return 4.0 * n * r * std::exp(-t * t * k / (8.0 * nu));
    }
    case BoundKind::kPbotFourier: {
      const double n = q.get("n"), r = q.get("r"), nu = q.get("nu"), k = q.get("kappa"),
                   f2 = q.get("F2");
      if (t <= std::sqrt(2.0 / r) * f2)
        return 2.0 * n * std::exp(-t * t * k * r / (4.0 * nu * f2 * f2));
      return 2.0 * n * std::exp(-t * std::sqrt(r) * k / (2.0 * std::sqrt(2.0) * nu * f2));
    }
    case BoundKind::kPbotGeneral: {
      const double n = q.get("n"), r = q.get("r"), nu = q.get("nu"), k = q.get("kappa"),
                   f = q.get("f");
      if (t > std::sqrt(2.0 / r) * f) out_of_window(q, "t <= sqrt(2/r) f");
      return 2.0 * n * std::exp(-t * t * k * r / (4.0 * nu * f * f));
    }
    case BoundKind::kMuPropagation: {
      const double n = q.get("n"), nu = q.get("nu"), k = q.get("kappa"), mu = q.get("mu");
      if (t > mu) out_of_window(q, "t <= mu(F)");
      return 2.0 * n * n * std::exp(-t * k / (4.0 * mu * nu));
    }
    case BoundKind::kDimensionFree: {
      const double nu = q.get("nu"), k = q.get("kappa");
      const double lo = std::sqrt(2.0 * nu / k);
      if (t < lo || t > 2.0 / 3.0) out_of_window(q, "sqrt(2nu/kappa) <= t <= 2/3");
      const double d = t - lo;
      return std::exp(-d * d * k / (8.0 * nu));
    }
  }
  throw InvalidInput("unknown bound kind");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kRespected: return "respected";
    case Verdict::kViolated: return "violated";
    case Verdict::kVacuous: return "vacuous";
  }
  return "violated";
}

Verdict classify(double analytic, double empirical, double half_width) {
  if (analytic > 1.0) return Verdict::kVacuous;
  return empirical - half_width <= analytic ? Verdict::kRespected : Verdict::kViolated;
}

double tail_statistic(const TailScenario& s, int trial) {
  return Context(s).statistic(trial);
}

TailReport monte_carlo_tail(const TailScenario& s, unsigned workers) {
  const Context ctx(s);
  TailReport rep;
  rep.scenario = s;
  rep.query = ctx.query;
  rep.analytic = eval_tail_bound(ctx.query);
  rep.trials = s.trials;
  std::vector<double> stats(static_cast<std::size_t>(s.trials));
  parallel_for(stats.size(), [&](std::size_t i) {
    stats[i] = ctx.statistic(static_cast<int>(i));
  }, workers);
  int hits = 0;
  for (double x : stats) hits += x >= s.t;
  rep.empirical = static_cast<double>(hits) / s.trials;
  rep.half_width = 3.0 * std::sqrt(rep.empirical * (1.0 - rep.empirical) / s.trials);
  rep.verdict = classify(rep.analytic, rep.empirical, rep.half_width);
  return rep;
}

void write_tail_csv(std::ostream& os, const std::vector<TailReport>& reports) {
  os << "# lrr bounds v1\n";
  os << "kind,n,r,basis,kappa,m,t,analytic,empirical,trials,half_width,verdict,seed\n";
  os << std::setprecision(10);
  for (const auto& rep : reports) {
    const auto& s = rep.scenario;
    const bool matrix_scenario = uses_matrix_scenario(s.kind);
    const BasisKind bk =
        s.kind == BoundKind::kPbotGeneral ? BasisKind::kHermitianStandard : s.basis;
    os << to_string(s.kind) << ',' << s.n << ',' << (matrix_scenario ? s.r : 0) << ','
       << (matrix_scenario ? to_string(bk) : "none") << ',';
    if (matrix_scenario) os << rep.query.params.at("kappa");
    os << ',' << (matrix_scenario ? static_cast<std::size_t>(std::ceil(s.kappa * s.n * s.r)) : s.m)
       << ',' << s.t << ',' << rep.analytic << ',' << rep.empirical << ',' << rep.trials
       << ',' << rep.half_width << ',' << to_string(rep.verdict) << ',' << s.seed << '\n';
  }
}

}  // namespace lrr

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

#include "lrr/golfing.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

namespace lrr {

std::string to_string(GolfingVariant v) {
  switch (v) {
    case GolfingVariant::kSimple: return "simple";
    case GolfingVariant::kGeneral: return "general";
    case GolfingVariant::kRefined: return "refined";
  }
  return "simple";
}

GolfingVariant golfing_variant_from_string(const std::string& s) {
  if (s == "simple") return GolfingVariant::kSimple;
  if (s == "general") return GolfingVariant::kGeneral;
  if (s == "refined") return GolfingVariant::kRefined;
  throw InvalidInput("unknown golfing variant '" + s + "'");
}

std::size_t GolfingConfig::batch_size(int step) const {
  if (step < 1 || step > l) throw InvalidInput("golfing: step out of range");
  return static_cast<std::size_t>(
      std::ceil(kappa[step - 1] * static_cast<double>(r * n)));
}

void GolfingConfig::validate() const {
  if (n < 1 || r < 1 || r > n) throw InvalidInput("golfing: need 1 <= r <= n");
  if (l < 1) throw InvalidInput("golfing: l must be >= 1");
  if (l_prime < l) throw InvalidInput("golfing: l' must be >= l");
  const auto sz = static_cast<std::size_t>(l);
  if (c.size() != sz || t.size() != sz || kappa.size() != sz)
    throw InvalidInput("golfing: schedule arrays must have length l");
  for (int i = 0; i < l; ++i) {
    if (!(c[i] > 0.0 && c[i] < 1.0)) throw InvalidInput("golfing: c_i must lie in (0, 1)");
    if (!(t[i] > 0.0)) throw InvalidInput("golfing: t_i must be > 0");
    if (!(kappa[i] > 0.0)) throw InvalidInput("golfing: kappa_i must be > 0");
  }
}

GolfingConfig schedule_params(const ScheduleRequest& req) {
  if (req.n < 2) throw InvalidInput("schedule: n must be >= 2");
  if (req.r < 1 || req.r > req.n) throw InvalidInput("schedule: need 1 <= r <= n");
  if (!(req.nu > 0.0) || !(req.beta > 0.0) || !(req.constant_scale > 0.0))
    throw InvalidInput("schedule: nu, beta and constant_scale must be > 0");
  GolfingConfig g;
  g.variant = req.variant;
  g.n = req.n;
  g.r = req.r;
  g.nu = req.nu;
  g.beta = req.beta;
  g.alpha = req.alpha;
  g.constant_scale = req.constant_scale;

  const double n = static_cast<double>(req.n);
  const double r = static_cast<double>(req.r);
  const double sr = std::sqrt(r);
  const double ln_n = std::log(n);
  g.l = static_cast<int>(std::ceil(std::log2(2.0 * n * n * sr)));
  g.l_prime = g.l;
  const auto l = static_cast<std::size_t>(g.l);

  switch (req.variant) {
    case GolfingVariant::kSimple: {
      const double k = 64.0 * req.nu *
                       (std::log(4.0 * n * r) + std::log(2.0 * g.l) + req.beta * ln_n);
      g.c.assign(l, 0.5);
      g.t.assign(l, 1.0 / (4.0 * sr));
      g.kappa.assign(l, k);
      break;
    }
    case GolfingVariant::kGeneral: {
      const double k = 64.0 * req.nu *
                       (std::log(4.0 * n * n) + std::log(3.0 * g.l) + req.beta * ln_n);
      g.c.assign(l, 0.5);
      g.t.assign(l, 1.0 / (2.0 * sr));
      g.kappa.assign(l, k);
      break;
    }
    case GolfingVariant::kRefined: {
      if (!(req.alpha > 4.0)) throw InvalidInput("schedule: alpha must be > 4");
      for (std::size_t i = 0; i < l; ++i) {
        const double ci = i < 2 ? 1.0 / (2.0 * std::sqrt(ln_n)) : 0.5;
        g.c.push_back(ci);
        g.t.push_back(i < 2 ? 1.0 / (4.0 * sr) : ln_n / (4.0 * sr));
        g.kappa.push_back(18.0 * (std::log(req.alpha) + req.beta) * req.nu / (ci * ci));
      }
      const double ln6 = std::log(6.0);
      if (std::log2(n) >= 5.0 * (req.beta + ln6)) {
        g.l_prime = 2 * g.l;
      } else if (req.beta >= 8.0 + 3.0 * ln6) {
        g.l_prime = static_cast<int>(std::ceil(1.5 * req.beta * g.l));
      } else {
        g.l_prime = 2 * g.l;
        g.l_prime_defaulted = true;
      }
      break;
    }
  }
  for (auto& k : g.kappa) k *= req.constant_scale;
  return g;
}

Certificate run_golfing(const HermitianMatrix& rho, const OperatorBasis& basis,
                        const GolfingConfig& cfg, std::uint64_t seed,
                        std::uint64_t trial, double zero_tol) {
  cfg.validate();
  if (rho.dim() != basis.dim() || cfg.n != basis.dim())
    throw InvalidInput("run_golfing: dim mismatch");
  if (!basis.hermitian()) throw InvalidInput("run_golfing: basis must be Hermitian");
  const TangentSpace tspace(rho, zero_tol);
  if (tspace.rank() == 0) throw InvalidInput("run_golfing: rho must be non-zero");
  const Eigen::Index n = rho.dim();
  const ComplexMatrix sign = matrix_sign(rho, zero_tol).matrix();
  const bool refined = cfg.variant == GolfingVariant::kRefined;
  const bool general = cfg.variant == GolfingVariant::kGeneral;

  Certificate cert;
  cert.l_prime_defaulted = cfg.l_prime_defaulted;
  ComplexMatrix y = ComplexMatrix::Zero(n, n);
  ComplexMatrix x = sign;
  double mu_prev = general ? mu_overlap(x, basis) : -1.0;
  bool all_held = true;
  int step = 1;

  for (std::size_t j = 0; step <= cfg.l && j < static_cast<std::size_t>(cfg.l_prime); ++j) {
    const std::size_t size = cfg.batch_size(step);
    const SampleSet batch = draw_batch(n, size, StreamId{seed, trial, j});
    cert.all_indices.insert(cert.all_indices.end(), batch.indices.begin(),
                            batch.indices.end());
    cert.samples_consumed += size;
    const SamplingOperator rj(batch, basis);
    const ComplexMatrix rx = rj.apply(x);
    const ComplexMatrix y_next = y + rx;
    const ComplexMatrix x_next = sign - tspace.project(y_next);

    GolfingStep s;
    s.step = step;
    s.batch = j;
    s.batch_size = size;
    s.x_prev_norm = x.norm();
    s.x_norm = x_next.norm();
    s.ptperp_increment = hermitian_operator_norm(tspace.project_complement(rx));
    const double ci = cfg.c[step - 1], ti = cfg.t[step - 1];
    bool held;
    if (s.x_prev_norm == 0.0) {
      held = true;
    } else {
      held = s.x_norm < ci * s.x_prev_norm && s.ptperp_increment <= ti * s.x_prev_norm;
    }
    double mu_next = -1.0;
    if (general) {
      mu_next = mu_overlap(x_next, basis);
      s.mu = mu_next;
      held = held && mu_next <= ci * ci * mu_prev;
    }
    s.conditions_held = held;
    s.accepted = refined ? held : true;
    all_held = all_held && held;
    cert.trace.push_back(s);

    if (s.accepted) {
      y = y_next;
      x = x_next;
      mu_prev = mu_next;
      cert.accepted_batches.push_back(j);
      cert.used_indices.insert(cert.used_indices.end(), batch.indices.begin(),
                               batch.indices.end());
      ++step;
    }
  }
  cert.steps_completed = step - 1;
  cert.y = HermitianMatrix::trusted(y);
  cert.final_x_norm = x.norm();
  cert.success = refined ? cert.steps_completed == cfg.l : all_held;
  return cert;
}

CertificateReport verify_certificate(const HermitianMatrix& rho, const HermitianMatrix& y,
                                     const OperatorBasis* basis,
                                     const std::vector<std::size_t>* omega,
                                     double zero_tol) {
  if (rho.dim() != y.dim()) throw InvalidInput("verify_certificate: dim mismatch");
  const TangentSpace t(rho, zero_tol);
  const ComplexMatrix sign = matrix_sign(rho, zero_tol).matrix();
  const double n = static_cast<double>(rho.dim());
  CertificateReport rep;
  rep.tangent_error = (t.project(y.matrix()) - sign).norm();
  rep.complement_norm = hermitian_operator_norm(t.project_complement(y.matrix()));
  rep.tangent_threshold = 1.0 / (2.0 * n * n);
  rep.tangent_ok = rep.tangent_error <= rep.tangent_threshold;
  rep.complement_ok = rep.complement_norm <= 0.5;
  if (basis != nullptr && omega != nullptr) {
    if (basis->dim() != rho.dim()) throw InvalidInput("verify_certificate: dim mismatch");
    rep.range_checked = true;
    ComplexMatrix rest = y.matrix();
    for (auto a : deduplicate(*omega)) {
      const BasisElement e = basis->element(a);
      e.add_to(rest, -e.inner(rest));
    }
    rep.range_residual = rest.norm();
    rep.range_ok = rep.range_residual <= 1e-8;
  }
  return rep;
}

BookkeepingReport check_bookkeeping(const HermitianMatrix& rho, const Certificate& cert,
                                    const GolfingConfig& cfg, double zero_tol) {
  const TangentSpace t(rho, zero_tol);
  BookkeepingReport rep;
  rep.final_x_norm = cert.final_x_norm;
  rep.contraction_bound = std::sqrt(static_cast<double>(t.rank()));
  for (const auto& s : cert.trace) {
    if (!s.accepted) continue;
    rep.contraction_bound *= cfg.c[s.step - 1];
    rep.complement_bound += cfg.t[s.step - 1] * s.x_prev_norm;
  }
  rep.complement_norm = hermitian_operator_norm(t.project_complement(cert.y.matrix()));
  return rep;
}

double tangent_deviation(const TangentSpace& t, const SamplingOperator& r) {
  const Eigen::Index d = t.real_dim();
  const ComplexMatrix u = t.range();
  const double scale = static_cast<double>(r.dim() * r.dim()) /
                       static_cast<double>(r.samples());
  RealMatrix m = RealMatrix::Zero(d, d);
  for (std::size_t i = 0; i < r.elements().size(); ++i) {
    const RealVector v = t.coordinates_from_columns(r.elements()[i].times(u));
    m.selfadjointView<Eigen::Lower>().rankUpdate(
        v, scale * static_cast<double>(r.multiplicity()[i]));
  }
  m = m.selfadjointView<Eigen::Lower>();
  m -= RealMatrix::Identity(d, d);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double tangent_deviation_power(const TangentSpace& t, const SamplingOperator& r,
                               int max_iterations, double tol) {
  const Eigen::Index d = t.real_dim();
  auto apply = [&](const RealVector& c) {
    const ComplexMatrix s = t.from_coordinates(c);
    return RealVector(t.coordinates(r.apply(s)) - c);
  };
  RealVector x(d);
  for (Eigen::Index i = 0; i < d; ++i) x(i) = 1.0 + 0.1 * std::sin(1.0 + i);
  x.normalize();
  double est = 0.0;
  for (int k = 0; k < max_iterations; ++k) {
    const RealVector ax = apply(x);
    RealVector aax = apply(ax);
    const double next = std::sqrt(std::max(0.0, x.dot(aax)));
    const double len = aax.norm();
    if (len == 0.0) return 0.0;
    x = aax / len;
    if (k > 10 && std::abs(next - est) <= tol * std::max(1.0, next)) return next;
    est = next;
  }
  return est;
}

void write_trace_csv(std::ostream& os, const Certificate& cert, std::uint64_t seed,
                     std::uint64_t trial) {
  os << "# lrr golf-trace v1\n";
  os << "step,batch_size,x_norm,ptperp_increment,mu,accepted,seed,trial,batch\n";
  os << std::setprecision(12);
  for (const auto& s : cert.trace) {
    os << s.step << ',' << s.batch_size << ',' << s.x_norm << ',' << s.ptperp_increment
       << ',';
    if (s.mu >= 0.0) os << s.mu;
    os << ',' << (s.accepted ? 1 : 0) << ',' << seed << ',' << trial << ',' << s.batch << '\n';
  }
}

}  // namespace lrr

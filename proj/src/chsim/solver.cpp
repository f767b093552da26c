#include "psslab/chsim/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace psslab::chsim {

namespace {

bool all_finite(const Field& f) {
  return std::all_of(f.begin(), f.end(), [](double v) { return std::isfinite(v); });
}

void check_length(const Field& f, const GridSpec& g) {
  if (static_cast<int>(f.size()) != g.N)
    throw std::invalid_argument("field has " + std::to_string(f.size()) + " values, grid has " +
                                std::to_string(g.N));
}

double relative_change(double now, double start) {
  double d = std::abs(now - start);
  return start == 0 ? d : d / std::abs(start);
}

}  // namespace

ChState make_state(double t, Field m, const GridSpec& g) {
  check_length(m, g);
  Spectral sp(g);
  ChState s{t, std::move(m), Field(g.N), Field(g.N)};
  sp.helmholtz_invert(s.m.data(), s.u.data());
  sp.derivative(s.u.data(), 1, s.ux.data());
  return s;
}

ChState state_from_u(double t, const Field& u, const GridSpec& g) {
  check_length(u, g);
  Spectral sp(g);
  Field uxx(g.N);
  sp.derivative(u.data(), 2, uxx.data());
  Field m(g.N);
  for (int i = 0; i < g.N; ++i) m[i] = u[i] - uxx[i];
  return make_state(t, std::move(m), g);
}

void SolverConfig::validate() const {
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  if (!(t_end > 0)) throw std::invalid_argument("t_end must be positive");
  if (save_every < 1) throw std::invalid_argument("save_every must be at least 1");
  if (!(breaking_threshold < 0)) throw std::invalid_argument("breaking_threshold must be negative");
}

Diagnostics diagnostics(const ChState& s, const GridSpec& g) {
  check_length(s.m, g);
  Diagnostics d;
  d.t = s.t;
  double h1 = 0, mass = 0;
  int lo = 0, hi = 0;
  for (int i = 0; i < g.N; ++i) {
    h1 += s.u[i] * s.u[i] + s.ux[i] * s.ux[i];
    mass += s.m[i];
    if (s.ux[i] < s.ux[lo]) lo = i;
    if (s.ux[i] > s.ux[hi]) hi = i;
  }
  d.h1 = h1 * g.dx();
  d.mass = mass * g.dx();
  d.I = s.ux[lo];
  d.S = s.ux[hi];
  d.h = d.I * d.S;
  d.x_I = g.x(lo);
  d.x_S = g.x(hi);
  return d;
}

ChOperator::ChOperator(const GridSpec& g, bool dealias, Backend backend)
    : sp_(g), dealias_(dealias), backend_(backend), u_(g.N), ux_(g.N), mx_(g.N), k1_(g.N), k2_(g.N),
      k3_(g.N), k4_(g.N), stage_(g.N) {}

void ChOperator::derived(const double* m, double* u, double* ux) {
  sp_.helmholtz_invert(m, u);
  sp_.derivative(u, 1, ux);
}

void ChOperator::rhs(const double* m, double* out) {
  const auto n = static_cast<std::size_t>(grid().N);
  derived(m, u_.data(), ux_.data());
  sp_.derivative(m, 1, mx_.data());
  ch_products(backend_, n, u_.data(), ux_.data(), m, mx_.data(), out);
  if (dealias_) sp_.dealias(out);
}

void ChOperator::rk4(const double* m, double dt, double* out) {
  const auto n = static_cast<std::size_t>(grid().N);
  rhs(m, k1_.data());
  axpy(backend_, n, m, 0.5 * dt, k1_.data(), stage_.data());
  rhs(stage_.data(), k2_.data());
  axpy(backend_, n, m, 0.5 * dt, k2_.data(), stage_.data());
  rhs(stage_.data(), k3_.data());
  axpy(backend_, n, m, dt, k3_.data(), stage_.data());
  rhs(stage_.data(), k4_.data());
  rk4_combine(backend_, n, m, dt, k1_.data(), k2_.data(), k3_.data(), k4_.data(), out);
}

Field ch_rhs(const Field& m, const GridSpec& g, bool dealias) {
  check_length(m, g);
  ChOperator op(g, dealias, Backend::Serial);
  Field out(g.N);
  op.rhs(m.data(), out.data());
  return out;
}

ChState rk4_step(const ChState& s, double dt, const GridSpec& g, const SolverConfig& cfg) {
  check_length(s.m, g);
  ChOperator op(g, cfg.dealias, cfg.backend);
  Field m(g.N);
  op.rk4(s.m.data(), dt, m.data());
  if (!all_finite(m)) throw NonFiniteState("non-finite values after step at t = " + std::to_string(s.t));
  ChState next{s.t + dt, std::move(m), Field(g.N), Field(g.N)};
  op.derived(next.m.data(), next.u.data(), next.ux.data());
  return next;
}

const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::Completed: return "completed";
    case StopReason::Breaking: return "breaking";
    case StopReason::NonFinite: return "non-finite";
  }
  return "?";
}

double Trajectory::h1_drift() const {
  double worst = 0;
  for (const auto& d : diagnostics) worst = std::max(worst, relative_change(d.h1, diagnostics.front().h1));
  return std::max(worst, relative_change(final_diagnostics.h1, diagnostics.front().h1));
}

double Trajectory::mass_drift() const {
  double worst = 0;
  for (const auto& d : diagnostics) worst = std::max(worst, relative_change(d.mass, diagnostics.front().mass));
  return std::max(worst, relative_change(final_diagnostics.mass, diagnostics.front().mass));
}

Trajectory integrate(const Field& u0, const SolverConfig& cfg, const GridSpec& g) {
  g.validate();
  cfg.validate();
  check_length(u0, g);
  if (!all_finite(u0)) throw std::invalid_argument("initial datum is not finite");

  Trajectory tr;
  tr.grid = g;
  tr.config = cfg;
  ChState s = state_from_u(0.0, u0, g);
  {
    Spectral sp(g);
    tr.initial_tail_ratio = sp.tail_ratio(u0.data());
  }
  auto record = [&](const ChState& st) {
    tr.saved.push_back(st);
    tr.diagnostics.push_back(diagnostics(st, g));
  };
  record(s);

  ChOperator op(g, cfg.dealias, cfg.backend);
  const long nsteps = std::max(1L, std::lround(std::ceil(cfg.t_end / cfg.dt - 1e-9)));
  Field next(g.N);
  for (long step = 1; step <= nsteps; ++step) {
    double h = step == nsteps ? cfg.t_end - s.t : cfg.dt;
    op.rk4(s.m.data(), h, next.data());
    if (!all_finite(next)) {
      tr.stop = StopReason::NonFinite;
      break;
    }
    s.m.swap(next);
    s.t = step == nsteps ? cfg.t_end : step * cfg.dt;
    op.derived(s.m.data(), s.u.data(), s.ux.data());
    tr.steps = step;
    if (step % cfg.save_every == 0) record(s);
    if (*std::min_element(s.ux.begin(), s.ux.end()) < cfg.breaking_threshold) {
      tr.stop = StopReason::Breaking;
      break;
    }
  }
  tr.final_state = s;
  tr.final_diagnostics = diagnostics(s, g);
  tr.stop_time = s.t;

  bool trivial = tr.diagnostics.front().h1 == 0;
  if (!trivial) {
    for (const auto& d : tr.diagnostics) tr.sign_structure_ok = tr.sign_structure_ok && d.I < 0 && d.S > 0;
  }
  return tr;
}

}  // namespace psslab::chsim

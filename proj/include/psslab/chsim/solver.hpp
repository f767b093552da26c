#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psslab/chsim/grid.hpp"
#include "psslab/chsim/kernels.hpp"

namespace psslab::chsim {

/// m = u - u_xx on the grid at time t, with u and u_x derived from m.
struct ChState {
  double t = 0;
  Field m;
  Field u;
  Field ux;
};

/// State for a given m; u and u_x are recomputed spectrally.
ChState make_state(double t, Field m, const GridSpec& g);
/// State for a given u; m = u - u_xx.
ChState state_from_u(double t, const Field& u, const GridSpec& g);

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  int save_every = 10;
  bool dealias = true;
  /// Stop once min u_x drops below this.
  double breaking_threshold = -50.0;
  Backend backend = Backend::OpenMP;

  /// Throws std::invalid_argument.
  void validate() const;
};

struct Diagnostics {
  double t = 0;
  double h1 = 0;    // integral of u^2 + u_x^2
  double mass = 0;  // integral of m
  double I = 0;     // min u_x
  double S = 0;     // max u_x
  double h = 0;     // I * S
  double x_I = 0;
  double x_S = 0;
};

Diagnostics diagnostics(const ChState& s, const GridSpec& g);

/// Right-hand side of m_t = -(u m_x + 2 u_x m) with reusable work space.
class ChOperator {
 public:
  ChOperator(const GridSpec& g, bool dealias, Backend backend);

  const GridSpec& grid() const { return sp_.grid(); }
  void rhs(const double* m, double* out);
  /// u and u_x for m.
  void derived(const double* m, double* u, double* ux);
  /// One classical RK4 step of size dt from m into out.
  void rk4(const double* m, double dt, double* out);

 private:
  Spectral sp_;
  bool dealias_;
  Backend backend_;
  Field u_, ux_, mx_, k1_, k2_, k3_, k4_, stage_;
};

Field ch_rhs(const Field& m, const GridSpec& g, bool dealias);

class NonFiniteState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws NonFiniteState if the result is not finite.
ChState rk4_step(const ChState& s, double dt, const GridSpec& g, const SolverConfig& cfg);

enum class StopReason { Completed, Breaking, NonFinite };
const char* stop_reason_name(StopReason r);

struct Trajectory {
  GridSpec grid;
  SolverConfig config;
  /// States at t = 0 and every save_every steps.
  std::vector<ChState> saved;
  std::vector<Diagnostics> diagnostics;
  /// Last finite state, whether or not it lies on the save cadence.
  ChState final_state;
  Diagnostics final_diagnostics;
  StopReason stop = StopReason::Completed;
  /// Numerical proxy for the lifespan: the time at which the run stopped.
  double stop_time = 0;
  long steps = 0;
  /// I < 0 < S at every saved time (only meaningful for non-trivial data).
  bool sign_structure_ok = true;
  double initial_tail_ratio = 0;

  double h1_drift() const;
  double mass_drift() const;
};

/// Throws std::invalid_argument for invalid grid, config, or u0 length.
Trajectory integrate(const Field& u0, const SolverConfig& cfg, const GridSpec& g);

}  // namespace psslab::chsim

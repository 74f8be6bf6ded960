#pragma once

#include "ymh/curvature.hpp"

namespace ymh {

enum class Integrand { full, hitchin_simpson };

/// YMH on a surface (n=1): ||Theta||^2 + 4 ||d''_A phi||^2.
double ymh_surface(const HitchinPairState& s);
/// Higher-dimensional functional: full uses |F + [phi,phi*] + d_A(phi+phi*)|^2,
/// hitchin_simpson uses |R|^2; summed over bidegree pieces.
double ymh_general(const HitchinPairState& s, Integrand which);

struct MomentMaps {
  EndForm mu_I;  // F_A + [phi,phi*]
  EndForm mu_J;  // -i(d''phi + d'phi*)
  EndForm mu_K;  // -d''phi + d'phi*
};
MomentMaps moment_maps(const HitchinPairState& s);  // n=1 only

struct FlowRhs {
  EndForm da;    // (0,1): d''_A K
  EndForm dphi;  // (1,0): [phi, K]
};
FlowRhs flow_rhs(const HitchinPairState& s);

HitchinPairState flow_step(const HitchinPairState& s, double dt);

struct DtPolicy {
  bool adaptive = true;
  double dt = 0.0;  // fixed step when !adaptive
  static DtPolicy fixed(double dt) { return {false, dt}; }
};

struct FlowSample {
  double t = 0.0;
  double ymh = 0.0;
  double holomorphy = 0.0;
  double integrability = 0.0;
  double k_hermiticity = 0.0;
  double dt = 0.0;  // step that produced this sample (0 for the start)
};

struct FlowTrajectory {
  std::vector<FlowSample> samples;
  HitchinPairState final_state;
  // (attempted dt, accepted?) in order
  std::vector<std::pair<double, bool>> step_log;
};

/// RK4 integration of the flow; the adaptive policy starts from
/// dt0 = 0.2 spacing^2 / (1 + max site norm of K) and halves the step (at most
/// 20 times) whenever YMH increases.  Throws std::runtime_error on step
/// failure after max halvings.
FlowTrajectory run_flow(const HitchinPairState& s, double t_end, DtPolicy policy);

/// First variation of YMH along a deformation pair (the four-term adjoint
/// formula), and its symmetric-difference oracle.
double first_variation(const HitchinPairState& s, const DeformationPair& def);
double directional_derivative_fd(const HitchinPairState& s,
                                 const DeformationPair& def, double dt);

}  // namespace ymh

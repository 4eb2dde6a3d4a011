#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace ppcdg {

inline constexpr int kNumVars = 8;

using Vec3 = std::array<double, 3>;
using Vec8 = std::array<double, kNumVars>;

// Component indices of the conserved vector (rho, m1, m2, m3, B1, B2, B3, E).
enum Var : int { kRho = 0, kM1 = 1, kM2 = 2, kM3 = 3, kB1 = 4, kB2 = 5, kB3 = 6, kE = 7 };

/// Ideal-gas equation of state p = (gamma - 1) rho e.
///
/// Contract relied on by the admissibility logic: p > 0 iff e > 0 for rho > 0.
/// Only the ideal-gas law is provided.
struct Eos {
  double gamma = 5.0 / 3.0;

  double pressure_from_internal(double rho_e) const { return (gamma - 1.0) * rho_e; }
  double internal_from_pressure(double p) const { return p / (gamma - 1.0); }
};

struct ConservedState {
  Vec8 q{};

  ConservedState() = default;
  explicit ConservedState(const Vec8& v) : q(v) {}

  double& operator[](std::size_t i) { return q[i]; }
  double operator[](std::size_t i) const { return q[i]; }

  double rho() const { return q[kRho]; }
  Vec3 m() const { return {q[kM1], q[kM2], q[kM3]}; }
  Vec3 B() const { return {q[kB1], q[kB2], q[kB3]}; }
  double E() const { return q[kE]; }
};

struct PrimitiveState {
  double rho = 1.0;
  Vec3 v{};
  Vec3 B{};
  double p = 1.0;
};

/// Free auxiliary variables (v*, B*) of the linear admissibility representation.
struct AuxiliaryPair {
  Vec3 v_star{};
  Vec3 B_star{};
};

inline double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline double dot8(const Vec8& a, const Vec8& b) {
  double s = 0.0;
  for (int i = 0; i < kNumVars; ++i) s += a[i] * b[i];
  return s;
}

ConservedState to_conserved(const PrimitiveState& w, const Eos& eos);
PrimitiveState to_primitive(const ConservedState& u, const Eos& eos);

/// rho e = E - |m|^2/(2 rho) - |B|^2/2. Requires rho != 0.
double internal_energy_density(const ConservedState& u);

double pressure(const ConservedState& u, const Eos& eos);

/// rho > 0 and rho e > 0. Non-finite components make the state inadmissible.
bool admissible(const ConservedState& u);

/// F_i(U) for direction i in {0,1,2} (x, y, z). Throws std::domain_error if rho <= 0.
Vec8 flux(const ConservedState& u, const Eos& eos, int dir);

/// S(U) = (0, B, v, v.B). Throws std::domain_error if rho <= 0.
Vec8 godunov_source(const ConservedState& u);

/// n*(v*, B*) = (|v*|^2/2, -v*, -B*, 1).
Vec8 n_star(const AuxiliaryPair& aux);

/// U . n* + |B*|^2/2.
double gql_value(const ConservedState& u, const AuxiliaryPair& aux);

/// The directional speed C_i built from C_s = p/(rho sqrt(2e)).
double gql_directional_speed(const ConservedState& u, const Eos& eos, int dir);

/// alpha_i(U, U~): the wave speed making the flux-split inequality hold for alpha > alpha_i.
/// Throws std::domain_error if either state is inadmissible.
double wave_speed_alpha(const ConservedState& u, const ConservedState& ut, const Eos& eos, int dir);

/// |v_i| + fast magnetosonic speed with c_s = sqrt(gamma p / rho).
double spectral_radius(const ConservedState& u, const Eos& eos, int dir);

}  // namespace ppcdg

#include "ppcdg/mhd.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ppcdg {

namespace {

void require_positive_density(double rho, const char* who) {
  if (!(rho > 0.0)) throw std::domain_error(std::string(who) + ": density must be positive");
}

}  // namespace

ConservedState to_conserved(const PrimitiveState& w, const Eos& eos) {
  ConservedState u;
  u[kRho] = w.rho;
  for (int d = 0; d < 3; ++d) {
    u[kM1 + d] = w.rho * w.v[d];
    u[kB1 + d] = w.B[d];
  }
  u[kE] = eos.internal_from_pressure(w.p) + 0.5 * w.rho * dot3(w.v, w.v) + 0.5 * dot3(w.B, w.B);
  return u;
}

PrimitiveState to_primitive(const ConservedState& u, const Eos& eos) {
  require_positive_density(u.rho(), "to_primitive");
  PrimitiveState w;
  w.rho = u.rho();
  for (int d = 0; d < 3; ++d) {
    w.v[d] = u[kM1 + d] / u.rho();
    w.B[d] = u[kB1 + d];
  }
  w.p = eos.pressure_from_internal(internal_energy_density(u));
  return w;
}

double internal_energy_density(const ConservedState& u) {
  const double m2 = u[kM1] * u[kM1] + u[kM2] * u[kM2] + u[kM3] * u[kM3];
  const double b2 = u[kB1] * u[kB1] + u[kB2] * u[kB2] + u[kB3] * u[kB3];
  return u[kE] - 0.5 * m2 / u[kRho] - 0.5 * b2;
}

double pressure(const ConservedState& u, const Eos& eos) {
  return eos.pressure_from_internal(internal_energy_density(u));
}

bool admissible(const ConservedState& u) {
  if (!(u[kRho] > 0.0)) return false;
  for (double c : u.q)
    if (!std::isfinite(c)) return false;
  return internal_energy_density(u) > 0.0;
}

Vec8 flux(const ConservedState& u, const Eos& eos, int dir) {
  require_positive_density(u[kRho], "flux");
  const double rho = u[kRho];
  const Vec3 v{u[kM1] / rho, u[kM2] / rho, u[kM3] / rho};
  const Vec3 B = u.B();
  const double b2 = dot3(B, B);
  const double p = eos.pressure_from_internal(internal_energy_density(u));
  const double ptot = p + 0.5 * b2;
  const double vi = v[dir];
  const double bi = B[dir];

  Vec8 f;
  f[kRho] = u[kM1 + dir];
  for (int d = 0; d < 3; ++d) {
    f[kM1 + d] = vi * u[kM1 + d] - bi * B[d];
    f[kB1 + d] = vi * B[d] - bi * v[d];
  }
  f[kM1 + dir] += ptot;
  f[kB1 + dir] = 0.0;
  f[kE] = vi * (u[kE] + ptot) - bi * dot3(v, B);
  return f;
}

Vec8 godunov_source(const ConservedState& u) {
  require_positive_density(u[kRho], "godunov_source");
  const double rho = u[kRho];
  const Vec3 v{u[kM1] / rho, u[kM2] / rho, u[kM3] / rho};
  Vec8 s{};
  for (int d = 0; d < 3; ++d) {
    s[kM1 + d] = u[kB1 + d];
    s[kB1 + d] = v[d];
  }
  s[kE] = dot3(v, u.B());
  return s;
}

Vec8 n_star(const AuxiliaryPair& aux) {
  Vec8 n;
  n[kRho] = 0.5 * dot3(aux.v_star, aux.v_star);
  for (int d = 0; d < 3; ++d) {
    n[kM1 + d] = -aux.v_star[d];
    n[kB1 + d] = -aux.B_star[d];
  }
  n[kE] = 1.0;
  return n;
}

double gql_value(const ConservedState& u, const AuxiliaryPair& aux) {
  return dot8(u.q, n_star(aux)) + 0.5 * dot3(aux.B_star, aux.B_star);
}

double gql_directional_speed(const ConservedState& u, const Eos& eos, int dir) {
  const double rho = u[kRho];
  const double rho_e = internal_energy_density(u);
  const double p = eos.pressure_from_internal(rho_e);
  const double e = rho_e / rho;
  const double cs = p / (rho * std::sqrt(2.0 * e));
  const double cs2 = cs * cs;
  const double b2r = (u[kB1] * u[kB1] + u[kB2] * u[kB2] + u[kB3] * u[kB3]) / rho;
  const double bi = u[kB1 + dir];
  const double s = b2r + cs2;
  const double disc = std::max(0.0, s * s - 4.0 * bi * bi * cs2 / rho);
  return std::sqrt(0.5 * (s + std::sqrt(disc)));
}

double wave_speed_alpha(const ConservedState& u, const ConservedState& ut, const Eos& eos, int dir) {
  if (!admissible(u) || !admissible(ut))
    throw std::domain_error("wave_speed_alpha: inadmissible input state");
  const double sr = std::sqrt(u[kRho]);
  const double srt = std::sqrt(ut[kRho]);
  const double vi = u[kM1 + dir] / u[kRho];
  const double vti = ut[kM1 + dir] / ut[kRho];
  const double c = gql_directional_speed(u, eos, dir);
  const double ct = gql_directional_speed(ut, eos, dir);
  const double roe = std::abs(sr * vi + srt * vti) / (sr + srt) + std::max(c, ct);
  const double jb = std::sqrt((u[kB1] - ut[kB1]) * (u[kB1] - ut[kB1]) +
                              (u[kB2] - ut[kB2]) * (u[kB2] - ut[kB2]) +
                              (u[kB3] - ut[kB3]) * (u[kB3] - ut[kB3]));
  return std::max({std::abs(vi) + c, std::abs(vti) + ct, roe}) + jb / (sr + srt);
}

double spectral_radius(const ConservedState& u, const Eos& eos, int dir) {
  if (!admissible(u)) throw std::domain_error("spectral_radius: inadmissible input state");
  const double rho = u[kRho];
  const double p = pressure(u, eos);
  const double cs2 = eos.gamma * p / rho;
  const double b2r = (u[kB1] * u[kB1] + u[kB2] * u[kB2] + u[kB3] * u[kB3]) / rho;
  const double bi = u[kB1 + dir];
  const double s = b2r + cs2;
  const double disc = std::max(0.0, s * s - 4.0 * bi * bi * cs2 / rho);
  const double cf = std::sqrt(0.5 * (s + std::sqrt(disc)));
  return std::abs(u[kM1 + dir] / rho) + cf;
}

}  // namespace ppcdg

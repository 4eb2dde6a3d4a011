#include "ppcdg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ppcdg {

double legendre(int n, double t) {
  if (n == 0) return 1.0;
  double p0 = 1.0, p1 = t;
  for (int m = 2; m <= n; ++m) {
    const double p2 = ((2.0 * m - 1.0) * t * p1 - (m - 1.0) * p0) / m;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double legendre_derivative(int n, double t) {
  // P'_n = sum over m = n-1, n-3, ... of (2m+1) P_m; valid at the endpoints too.
  double d = 0.0;
  for (int m = n - 1; m >= 0; m -= 2) d += (2.0 * m + 1.0) * legendre(m, t);
  return d;
}

namespace {

double legendre_second_derivative(int n, double t) {
  double d = 0.0;
  for (int m = n - 1; m >= 0; m -= 2) d += (2.0 * m + 1.0) * legendre_derivative(m, t);
  return d;
}

}  // namespace

void gauss_rule(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_rule: need at least one point");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double t = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const double dt = legendre(n, t) / legendre_derivative(n, t);
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    const double dp = legendre_derivative(n, t);
    nodes[i] = 0.5 * (t + 1.0);
    weights[i] = 1.0 / ((1.0 - t * t) * dp * dp);  // 2/((1-t^2)P'^2) halved
  }
}

void lobatto_rule(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 2) throw std::invalid_argument("lobatto_rule: need at least two points");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = n - 1;
  for (int i = 0; i < n; ++i) {
    double t;
    if (i == 0) {
      t = -1.0;
    } else if (i == n - 1) {
      t = 1.0;
    } else {
      t = -std::cos(std::numbers::pi * i / m);
      for (int it = 0; it < 100; ++it) {
        const double dt = legendre_derivative(m, t) / legendre_second_derivative(m, t);
        t -= dt;
        if (std::abs(dt) < 1e-16) break;
      }
    }
    const double pm = legendre(m, t);
    nodes[i] = 0.5 * (t + 1.0);
    weights[i] = 1.0 / (m * (m + 1.0) * pm * pm);  // 2/(m(m+1)P_m^2) halved
  }
}

QuadratureSet build_quadrature(int k) {
  if (k < 0 || k > 3) throw std::invalid_argument("build_quadrature: k must be in 0..3");
  QuadratureSet q;
  q.k = k;
  q.N = k + 1;
  q.L = (k + 4) / 2;
  gauss_rule(q.N, q.gauss_nodes, q.gauss_weights);
  lobatto_rule(q.L, q.lobatto_nodes, q.lobatto_weights);
  return q;
}

}  // namespace ppcdg

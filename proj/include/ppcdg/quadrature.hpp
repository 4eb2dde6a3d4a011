#pragma once

#include <vector>

namespace ppcdg {

/// Legendre polynomial P_n and its derivative at t in [-1, 1].
double legendre(int n, double t);
double legendre_derivative(int n, double t);

/// Gauss-Legendre rule with n points on [0, 1], weights summing to 1.
void gauss_rule(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Gauss-Lobatto rule with n >= 2 points on [0, 1], weights summing to 1.
void lobatto_rule(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Half-cell quadrature for a P^k scheme.
///
/// Nodes live on the unit interval [0, 1]; half_gauss_node() maps them into a half of the
/// reference cell [-1/2, 1/2] (side 0 = left half, 1 = right half).
struct QuadratureSet {
  int k = 0;
  int N = 1;  // Gauss points per half-interval, k + 1
  int L = 2;  // Gauss-Lobatto points per half-interval, ceil((k + 3) / 2)
  std::vector<double> gauss_nodes, gauss_weights;
  std::vector<double> lobatto_nodes, lobatto_weights;

  double half_gauss_node(int side, int mu) const { return -0.5 + 0.5 * side + 0.5 * gauss_nodes[mu]; }
  double half_lobatto_node(int side, int nu) const { return -0.5 + 0.5 * side + 0.5 * lobatto_nodes[nu]; }
  /// Smallest Lobatto weight, the one at the endpoints.
  double omega_hat_1() const { return lobatto_weights.front(); }
};

/// Throws std::invalid_argument unless k is 0..3.
QuadratureSet build_quadrature(int k);

}  // namespace ppcdg

#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "ppcdg/mesh.hpp"
#include "ppcdg/quadrature.hpp"

namespace ppcdg {

/// Catalog of 1D reference coordinates xi in [-1/2, 1/2] at which the basis is tabulated.
///
/// Index layout: [0, 2N) half-cell Gauss points (left half first), [2N, 2N + 2L) half-cell
/// Gauss-Lobatto points, then the faces -1/2 and +1/2 and the centre 0.
struct RefPoints {
  int N = 1, L = 2;
  std::vector<double> xi;
  std::vector<double> gauss_w;  // omega_mu / 2 for each of the 2N Gauss entries

  int gauss(int side, int mu) const { return side * N + mu; }
  int lobatto(int side, int nu) const { return 2 * N + side * L + nu; }
  int face_lo() const { return 2 * N + 2 * L; }
  int face_hi() const { return 2 * N + 2 * L + 1; }
  int centre() const { return 2 * N + 2 * L + 2; }
  int count() const { return 2 * N + 2 * L + 3; }

  /// Same physical location seen from a cell shifted by half a cell: a point in the left half
  /// of a cell is the mirror-index point in the right half of the overlapping cell on the left.
  int half_shift(int p) const;
};

/// Orthonormal tensor Legendre basis phi_(a,b)(xi, eta) = Lh_a(xi) Lh_b(eta) of total degree
/// <= k, with Lh_a(xi) = sqrt(2a+1) P_a(2 xi). The mean of phi_0 * phi_m over a cell is delta_0m,
/// so coefficient 0 of every component is the cell average.
struct LocallyDfBasis {
  int k = 1;
  int num_scalar_modes = 0;
  /// Orthonormal columns spanning {(b1, b2) in (P^k)^2 : d_x b1 + d_y b2 = 0} in coefficient
  /// space; rows 0..n-1 are b1 coefficients and n..2n-1 are b2 coefficients.
  Eigen::MatrixXd Q;
  int dimension() const { return static_cast<int>(Q.cols()); }
};

int num_modes_for(int dim, int k);

/// Null space of the in-cell divergence for a dx-by-dy cell. Throws for k outside 1..3.
LocallyDfBasis locally_df_basis(int k, double dx, double dy);

/// Everything shared by the fields of one discretization: mesh, degree, quadrature, basis tables.
/// Immutable after construction.
class DgSpace {
 public:
  DgSpace(OverlappingMesh mesh, int k, bool locally_df);

  const OverlappingMesh& mesh() const { return mesh_; }
  int dim() const { return mesh_.dim(); }
  int k() const { return k_; }
  int num_modes() const { return nm_; }
  int block_size() const { return kNumVars * nm_; }
  const QuadratureSet& quad() const { return quad_; }
  const RefPoints& pts() const { return pts_; }

  int mode_ax(int m) const { return ax_[m]; }
  int mode_ay(int m) const { return ay_[m]; }

  /// Lh_a at catalog point p, and its xi-derivative.
  double P(int a, int p) const { return P_[a * pts_.count() + p]; }
  double D(int a, int p) const { return D_[a * pts_.count() + p]; }

  /// Values of every basis function at the catalog point (px, py); size num_modes().
  const double* phi(int px, int py) const { return &phi_[(px * pts_.count() + py) * nm_]; }
  /// Reference-coordinate derivatives d/dxi and d/deta of every basis function at (px, py).
  const double* dphi_dxi(int px, int py) const { return &dphix_[(px * pts_.count() + py) * nm_]; }
  const double* dphi_deta(int px, int py) const { return &dphiy_[(px * pts_.count() + py) * nm_]; }

  /// True when (B1, B2) live in the locally divergence-free subspace (2D, k >= 1).
  bool locally_df() const { return df_; }
  const LocallyDfBasis& df_basis() const { return df_basis_; }
  /// Orthogonal projection of a (B1, B2) coefficient pair onto the locally DF subspace.
  void project_df(double* b1, double* b2) const;

 private:
  OverlappingMesh mesh_;
  int k_;
  int nm_;
  QuadratureSet quad_;
  RefPoints pts_;
  std::vector<int> ax_, ay_;
  std::vector<double> P_, D_, phi_, dphix_, dphiy_;
  bool df_ = false;
  LocallyDfBasis df_basis_;
  std::vector<double> proj_;  // (2n)x(2n) row-major
};

using SpacePtr = std::shared_ptr<const DgSpace>;

}  // namespace ppcdg

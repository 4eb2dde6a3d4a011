#include "ppcdg/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace ppcdg {

int RefPoints::half_shift(int p) const {
  if (p < 2 * N) return p < N ? p + N : p - N;
  if (p < 2 * N + 2 * L) {
    const int q = p - 2 * N;
    return 2 * N + (q < L ? q + L : q - L);
  }
  if (p == face_lo() || p == face_hi()) return centre();
  throw std::logic_error("half_shift: the cell centre maps to a face of either neighbour");
}

int num_modes_for(int dim, int k) { return dim == 1 ? k + 1 : (k + 1) * (k + 2) / 2; }

namespace {

double scaled_legendre(int a, double xi) { return std::sqrt(2.0 * a + 1.0) * legendre(a, 2.0 * xi); }
double scaled_legendre_d(int a, double xi) {
  return 2.0 * std::sqrt(2.0 * a + 1.0) * legendre_derivative(a, 2.0 * xi);
}

void total_degree_modes(int k, std::vector<int>& ax, std::vector<int>& ay) {
  ax.clear();
  ay.clear();
  for (int d = 0; d <= k; ++d)
    for (int a = d; a >= 0; --a) {
      ax.push_back(a);
      ay.push_back(d - a);
    }
}

}  // namespace

LocallyDfBasis locally_df_basis(int k, double dx, double dy) {
  if (k < 1 || k > 3) throw std::invalid_argument("locally_df_basis: k must be in 1..3 (P^0 is trivially DF)");
  std::vector<int> ax, ay;
  total_degree_modes(k, ax, ay);
  const int n = static_cast<int>(ax.size());
  // Sample the divergence on a (k+1)^2 tensor grid, unisolvent for the degree k-1 divergence.
  std::vector<double> nodes, w;
  gauss_rule(k + 1, nodes, w);
  const int ns = (k + 1) * (k + 1);
  Eigen::MatrixXd Dm(ns, 2 * n);
  for (int s = 0; s < ns; ++s) {
    const double xi = nodes[s / (k + 1)] - 0.5;
    const double eta = nodes[s % (k + 1)] - 0.5;
    for (int m = 0; m < n; ++m) {
      Dm(s, m) = scaled_legendre_d(ax[m], xi) * scaled_legendre(ay[m], eta) / dx;
      Dm(s, n + m) = scaled_legendre(ax[m], xi) * scaled_legendre_d(ay[m], eta) / dy;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Dm, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double tol = 1e-10 * (sv.size() ? sv(0) : 1.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;
  LocallyDfBasis b;
  b.k = k;
  b.num_scalar_modes = n;
  b.Q = svd.matrixV().rightCols(2 * n - rank);
  return b;
}

DgSpace::DgSpace(OverlappingMesh mesh, int k, bool locally_df)
    : mesh_(std::move(mesh)), k_(k), nm_(num_modes_for(mesh_.dim(), k)), quad_(build_quadrature(k)) {
  pts_.N = quad_.N;
  pts_.L = quad_.L;
  pts_.xi.resize(pts_.count());
  pts_.gauss_w.resize(2 * pts_.N);
  for (int s = 0; s < 2; ++s) {
    for (int mu = 0; mu < pts_.N; ++mu) {
      pts_.xi[pts_.gauss(s, mu)] = quad_.half_gauss_node(s, mu);
      pts_.gauss_w[pts_.gauss(s, mu)] = 0.5 * quad_.gauss_weights[mu];
    }
    for (int nu = 0; nu < pts_.L; ++nu) pts_.xi[pts_.lobatto(s, nu)] = quad_.half_lobatto_node(s, nu);
  }
  pts_.xi[pts_.face_lo()] = -0.5;
  pts_.xi[pts_.face_hi()] = 0.5;
  pts_.xi[pts_.centre()] = 0.0;

  if (mesh_.dim() == 1) {
    for (int a = 0; a <= k; ++a) {
      ax_.push_back(a);
      ay_.push_back(0);
    }
  } else {
    total_degree_modes(k, ax_, ay_);
  }

  const int np = pts_.count();
  P_.resize((k + 1) * np);
  D_.resize((k + 1) * np);
  for (int a = 0; a <= k; ++a)
    for (int p = 0; p < np; ++p) {
      P_[a * np + p] = scaled_legendre(a, pts_.xi[p]);
      D_[a * np + p] = scaled_legendre_d(a, pts_.xi[p]);
    }
  const std::size_t ntab = static_cast<std::size_t>(np) * np * nm_;
  phi_.resize(ntab);
  dphix_.resize(ntab);
  dphiy_.resize(ntab);
  const bool one_d = mesh_.dim() == 1;
  for (int px = 0; px < np; ++px)
    for (int py = 0; py < np; ++py)
      for (int m = 0; m < nm_; ++m) {
        const std::size_t t = (px * np + py) * nm_ + m;
        phi_[t] = P(ax_[m], px) * (one_d ? 1.0 : P(ay_[m], py));
        dphix_[t] = D(ax_[m], px) * (one_d ? 1.0 : P(ay_[m], py));
        dphiy_[t] = one_d ? 0.0 : P(ax_[m], px) * D(ay_[m], py);
      }

  df_ = locally_df && mesh_.dim() == 2 && k >= 1;
  if (df_) {
    df_basis_ = locally_df_basis(k, mesh_.dx(), mesh_.dy());
    const Eigen::MatrixXd Pm = df_basis_.Q * df_basis_.Q.transpose();
    proj_.resize(4 * nm_ * nm_);
    for (int r = 0; r < 2 * nm_; ++r)
      for (int c = 0; c < 2 * nm_; ++c) proj_[r * 2 * nm_ + c] = Pm(r, c);
  }
}

void DgSpace::project_df(double* b1, double* b2) const {
  if (!df_) return;
  const int n = nm_;
  double in[20], out[20];
  for (int m = 0; m < n; ++m) {
    in[m] = b1[m];
    in[n + m] = b2[m];
  }
  for (int r = 0; r < 2 * n; ++r) {
    double s = 0.0;
    for (int c = 0; c < 2 * n; ++c) s += proj_[r * 2 * n + c] * in[c];
    out[r] = s;
  }
  // The constant pair is always divergence-free; keep it bit-exact.
  out[0] = in[0];
  out[n] = in[n];
  for (int m = 0; m < n; ++m) {
    b1[m] = out[m];
    b2[m] = out[n + m];
  }
}

}  // namespace ppcdg

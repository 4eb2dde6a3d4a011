#pragma once

#include <functional>
#include <vector>

#include "ppcdg/basis.hpp"

namespace ppcdg {

enum class Layout { primal, dual };

const char* layout_name(Layout l);

/// Modal coefficients of one CDG solution copy, stored per cell as [component][mode].
///
/// Primal storage carries one ghost layer per non-degenerate axis (i = -1..nx). Dual storage
/// covers i = 0..nx; on a periodic axis dual cell nx is a ghost copy of dual cell 0.
class DGField {
 public:
  DGField() = default;
  DGField(SpacePtr space, Layout layout);

  const DgSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  Layout layout() const { return layout_; }

  /// Active (non-ghost) index ranges are [0, active(axis)).
  int active(int axis) const { return active_[axis]; }
  /// Storage ranges are [lo(axis), hi(axis)).
  int lo(int axis) const { return -off_[axis]; }
  int hi(int axis) const { return ext_[axis] - off_[axis]; }

  double* cell(int i, int j = 0) { return &c_[index(i, j)]; }
  const double* cell(int i, int j = 0) const { return &c_[index(i, j)]; }
  double& coeff(int i, int j, int var, int mode) { return c_[index(i, j) + var * nm_ + mode]; }
  double coeff(int i, int j, int var, int mode) const { return c_[index(i, j) + var * nm_ + mode]; }

  ConservedState average(int i, int j = 0) const;
  void set_constant(int i, int j, const ConservedState& u);

  /// Value at catalog point (px, py) of cell (i, j); py ignored in 1D.
  ConservedState at(int i, int j, int px, int py) const;
  /// Value at reference coordinates (xi, eta) in [-1/2, 1/2]^d.
  ConservedState at_ref(int i, int j, double xi, double eta) const;
  /// Physical-point evaluation; the point must lie in the closed cell (throws otherwise). At a
  /// face the value is the limit from inside cell (i, j), so the side is chosen by the cell.
  ConservedState evaluate(int i, int j, double x, double y = 0.0) const;

  double centre_x(int i) const;
  double centre_y(int j) const;

  std::vector<double>& data() { return c_; }
  const std::vector<double>& data() const { return c_; }

 private:
  std::size_t index(int i, int j) const {
    return (static_cast<std::size_t>(j + off_[1]) * ext_[0] + (i + off_[0])) * bs_;
  }

  SpacePtr space_;
  Layout layout_ = Layout::primal;
  int nm_ = 0, bs_ = 0;
  int active_[2] = {0, 0}, off_[2] = {0, 0}, ext_[2] = {0, 0};
  std::vector<double> c_;
};

struct FieldPair {
  DGField primal;
  DGField dual;
};

FieldPair make_fields(const SpacePtr& space);

/// Fill primal ghost cells from the boundary rules and the periodic dual copies.
void sync_ghosts(DGField& f);
void sync_ghosts(FieldPair& f);

using StateFn = std::function<ConservedState(double x, double y)>;

/// L2 projection of fn onto both fields with (2N)^d Gauss points per cell; in a locally DF
/// space (B1, B2) is additionally projected onto the DF subspace. Ghosts are synced.
FieldPair project_initial(const StateFn& fn, const SpacePtr& space);

/// Largest in-cell |d_x B1 + d_y B2| of cell (i, j) sampled at the given reference points.
double max_incell_divergence(const DGField& f, int i, int j, const std::vector<std::array<double, 2>>& pts);

}  // namespace ppcdg

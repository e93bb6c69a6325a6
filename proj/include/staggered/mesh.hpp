#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "staggered/gas.hpp"

namespace staggered {

enum class Boundary { transmissive, periodic, reflective };

Boundary parse_boundary(std::string_view name);
std::string_view to_string(Boundary b);

/// One-sided selector for traces of discontinuous fields at element faces.
enum class Side { left, right };

/// Interval mesh x_0 < x_1 < ... < x_n; element k is [x_k, x_{k+1}].
class Mesh1D {
 public:
  Mesh1D(std::vector<double> nodes, Boundary boundary);
  static Mesh1D uniform(double a, double b, int cells, Boundary boundary);

  int cells() const { return static_cast<int>(nodes_.size()) - 1; }
  double node(int j) const { return nodes_[static_cast<std::size_t>(j)]; }
  double h(int k) const { return node(k + 1) - node(k); }
  double left() const { return nodes_.front(); }
  double right() const { return nodes_.back(); }
  double length() const { return right() - left(); }
  Boundary boundary() const { return boundary_; }
  bool periodic() const { return boundary_ == Boundary::periodic; }

  /// Element containing x together with the local coordinate in [0,1]. At an
  /// interior node the side picks the element to the left or to the right.
  std::pair<int, double> locate(double x, Side side = Side::right) const;

 private:
  std::vector<double> nodes_;
  Boundary boundary_;
};

/// Which staggered variable a query refers to.
enum class Variable { density, velocity, energy };

/// Degree-of-freedom layout of the staggered pair: a globally continuous
/// kinematic space (velocity) and a per-element discontinuous thermodynamic
/// space (density, internal energy), both in Bernstein form.
class SpaceLayout {
 public:
  SpaceLayout(Mesh1D mesh, int thermo_degree, int kinematic_degree);

  const Mesh1D& mesh() const { return mesh_; }
  int cells() const { return mesh_.cells(); }
  int thermo_degree() const { return thermo_degree_; }
  int kinematic_degree() const { return kinematic_degree_; }
  int thermo_per_cell() const { return thermo_degree_ + 1; }
  int kinematic_per_cell() const { return kinematic_degree_ + 1; }

  int thermo_dofs() const { return cells() * thermo_per_cell(); }
  int kinematic_dofs() const { return kinematic_dofs_; }

  int thermo_dof(int cell, int local) const { return cell * thermo_per_cell() + local; }
  int kinematic_dof(int cell, int local) const;

  /// Elements whose closure carries a kinematic dof (one or two entries).
  std::span<const int> kinematic_cells(int dof) const;

  /// Global lumped masses |C_sigma| = integral of the global basis function.
  double thermo_mass(int dof) const { return thermo_mass_[static_cast<std::size_t>(dof)]; }
  double kinematic_mass(int dof) const { return kinematic_mass_[static_cast<std::size_t>(dof)]; }

  /// Number of faces: n + 1 on an open interval, n when periodic. Face k is
  /// the left face of element k.
  int faces() const { return mesh_.periodic() ? cells() : cells() + 1; }
  int right_face(int cell) const { return mesh_.periodic() ? (cell + 1) % cells() : cell + 1; }

 private:
  Mesh1D mesh_;
  int thermo_degree_;
  int kinematic_degree_;
  int kinematic_dofs_;
  std::vector<double> thermo_mass_;
  std::vector<double> kinematic_mass_;
  std::vector<std::vector<int>> kinematic_cells_;
};

/// The K(r+1)T(r) layout for thermodynamic degree r in {0, 1}.
std::shared_ptr<const SpaceLayout> build_spaces(Mesh1D mesh, int r);

/// Equal-degree variant (velocity degree == thermodynamic degree) used only
/// by the stability experiment; any other pairing goes through build_spaces.
std::shared_ptr<const SpaceLayout> build_spaces(Mesh1D mesh, int r, int kinematic_degree);

/// Bernstein coefficients of density, velocity and internal energy per unit
/// volume on a shared layout.
struct StaggeredField {
  std::shared_ptr<const SpaceLayout> layout;
  std::vector<double> rho;  ///< thermo_dofs() entries
  std::vector<double> u;    ///< kinematic_dofs() entries
  std::vector<double> e;    ///< thermo_dofs() entries, internal energy per unit volume

  explicit StaggeredField(std::shared_ptr<const SpaceLayout> l);

  std::span<const double> rho_cell(int k) const;
  std::span<const double> e_cell(int k) const;
  /// Local kinematic coefficients of element k (copied, since periodic
  /// wraparound makes them non-contiguous).
  std::vector<double> u_cell(int k) const;
};

/// Point value of one variable. For velocity the side is irrelevant.
double eval_field(const StaggeredField& field, Variable which, double x, Side side = Side::right);

/// Initial data as a function of position; the side disambiguates
/// discontinuities that sit exactly on a node.
using PrimitiveProfile = std::function<Primitive(double x, Side side)>;

/// Interpolates the profile: thermodynamic coefficients from equispaced
/// interior points of each element, velocity from vertices (mean of the two
/// one-sided values) and element midpoints. e = p / (gamma - 1).
StaggeredField project_initial(const PrimitiveProfile& profile,
                               std::shared_ptr<const SpaceLayout> layout, const GasModel& gas);

/// Same as above with the velocity built from a separate interpolation of
/// rho, u and p (convenience for tests).
StaggeredField project_initial(const std::function<double(double)>& rho0,
                               const std::function<double(double)>& u0,
                               const std::function<double(double)>& p0,
                               std::shared_ptr<const SpaceLayout> layout, const GasModel& gas);

}  // namespace staggered

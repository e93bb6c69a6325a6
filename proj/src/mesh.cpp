#include "staggered/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "staggered/basis.hpp"
#include "staggered/errors.hpp"

namespace staggered {
namespace {

// Bernstein coefficients of the polynomial of the given degree taking
// `values` at the points `lambdas` (Gaussian elimination, degree <= 2).
std::vector<double> interpolate(int degree, std::span<const double> lambdas,
                                std::span<const double> values) {
  const int n = degree + 1;
  std::array<std::array<double, 4>, 3> a{};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = basis::eval(degree, j, lambdas[i]);
    a[i][3] = values[i];
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int i = c + 1; i < n; ++i)
      if (std::abs(a[i][c]) > std::abs(a[piv][c])) piv = i;
    std::swap(a[c], a[piv]);
    for (int i = c + 1; i < n; ++i) {
      const double f = a[i][c] / a[c][c];
      for (int j = c; j < 4; ++j) a[i][j] -= f * a[c][j];
    }
  }
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    double s = a[i][3];
    for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

std::vector<double> thermo_points(int degree) {
  std::vector<double> pts;
  for (int i = 0; i <= degree; ++i) pts.push_back((2.0 * i + 1.0) / (2.0 * (degree + 1)));
  return pts;
}

}  // namespace

Boundary parse_boundary(std::string_view name) {
  if (name == "transmissive") return Boundary::transmissive;
  if (name == "periodic") return Boundary::periodic;
  if (name == "reflective") return Boundary::reflective;
  throw ArgumentError("unknown boundary kind '" + std::string(name) + "'");
}

std::string_view to_string(Boundary b) {
  switch (b) {
    case Boundary::transmissive:
      return "transmissive";
    case Boundary::periodic:
      return "periodic";
    case Boundary::reflective:
      return "reflective";
  }
  return "?";
}

Mesh1D::Mesh1D(std::vector<double> nodes, Boundary boundary)
    : nodes_(std::move(nodes)), boundary_(boundary) {
  if (nodes_.size() < 2) throw ArgumentError("mesh needs at least one element");
  for (std::size_t j = 1; j < nodes_.size(); ++j) {
    if (!(nodes_[j] > nodes_[j - 1])) throw ArgumentError("mesh nodes must be strictly increasing");
  }
  if (boundary_ == Boundary::reflective) {
    throw ArgumentError("reflective boundaries are not implemented");
  }
}

Mesh1D Mesh1D::uniform(double a, double b, int cells, Boundary boundary) {
  if (cells < 1) throw ArgumentError("mesh needs at least one element");
  if (!(b > a)) throw ArgumentError("empty domain");
  std::vector<double> nodes(static_cast<std::size_t>(cells) + 1);
  for (int j = 0; j <= cells; ++j) nodes[j] = a + (b - a) * j / cells;
  nodes.back() = b;
  return Mesh1D(std::move(nodes), boundary);
}

std::pair<int, double> Mesh1D::locate(double x, Side side) const {
  if (!(x >= left()) || !(x <= right())) {
    std::ostringstream os;
    os << "point " << x << " outside domain [" << left() << ", " << right() << "]";
    throw ArgumentError(os.str());
  }
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  int k = static_cast<int>(it - nodes_.begin()) - 1;
  // x sits exactly on node k: the left side belongs to element k - 1.
  if (side == Side::left && k > 0 && x == nodes_[k]) --k;
  k = std::clamp(k, 0, cells() - 1);
  return {k, (x - node(k)) / h(k)};
}

SpaceLayout::SpaceLayout(Mesh1D mesh, int thermo_degree, int kinematic_degree)
    : mesh_(std::move(mesh)), thermo_degree_(thermo_degree), kinematic_degree_(kinematic_degree) {
  if (thermo_degree < 0 || thermo_degree > 1) {
    throw ArgumentError("thermodynamic degree must be 0 or 1");
  }
  if (kinematic_degree < 1 || kinematic_degree > basis::kMaxDegree) {
    throw ArgumentError("kinematic degree must be 1 or 2");
  }
  const int n = mesh_.cells();
  if (mesh_.periodic() && n * kinematic_degree < 2) {
    throw ArgumentError("periodic layout needs at least two kinematic dofs");
  }
  kinematic_dofs_ = n * kinematic_degree + (mesh_.periodic() ? 0 : 1);

  thermo_mass_.resize(static_cast<std::size_t>(thermo_dofs()));
  kinematic_mass_.assign(static_cast<std::size_t>(kinematic_dofs_), 0.0);
  kinematic_cells_.resize(static_cast<std::size_t>(kinematic_dofs_));
  for (int k = 0; k < n; ++k) {
    const auto tm = basis::lumped_mass(thermo_degree_, mesh_.h(k));
    for (int i = 0; i < thermo_per_cell(); ++i) thermo_mass_[thermo_dof(k, i)] = tm[i];
    const auto km = basis::lumped_mass(kinematic_degree_, mesh_.h(k));
    for (int i = 0; i < kinematic_per_cell(); ++i) {
      const int g = kinematic_dof(k, i);
      kinematic_mass_[g] += km[i];
      auto& cells = kinematic_cells_[g];
      if (std::find(cells.begin(), cells.end(), k) == cells.end()) cells.push_back(k);
    }
  }
}

int SpaceLayout::kinematic_dof(int cell, int local) const {
  const int g = cell * kinematic_degree_ + local;
  return mesh_.periodic() ? g % kinematic_dofs_ : g;
}

std::span<const int> SpaceLayout::kinematic_cells(int dof) const {
  return kinematic_cells_[static_cast<std::size_t>(dof)];
}

std::shared_ptr<const SpaceLayout> build_spaces(Mesh1D mesh, int r) {
  if (r < 0 || r > 1) throw ArgumentError("thermodynamic degree r must be 0 or 1");
  return std::make_shared<const SpaceLayout>(std::move(mesh), r, r + 1);
}

std::shared_ptr<const SpaceLayout> build_spaces(Mesh1D mesh, int r, int kinematic_degree) {
  if (r < 0 || r > 1) throw ArgumentError("thermodynamic degree r must be 0 or 1");
  if (kinematic_degree != r && kinematic_degree != r + 1) {
    throw ArgumentError("kinematic degree must be r or r + 1");
  }
  return std::make_shared<const SpaceLayout>(std::move(mesh), r, kinematic_degree);
}

StaggeredField::StaggeredField(std::shared_ptr<const SpaceLayout> l)
    : layout(std::move(l)),
      rho(static_cast<std::size_t>(layout->thermo_dofs()), 0.0),
      u(static_cast<std::size_t>(layout->kinematic_dofs()), 0.0),
      e(static_cast<std::size_t>(layout->thermo_dofs()), 0.0) {}

std::span<const double> StaggeredField::rho_cell(int k) const {
  const auto n = static_cast<std::size_t>(layout->thermo_per_cell());
  return std::span<const double>(rho).subspan(static_cast<std::size_t>(k) * n, n);
}

std::span<const double> StaggeredField::e_cell(int k) const {
  const auto n = static_cast<std::size_t>(layout->thermo_per_cell());
  return std::span<const double>(e).subspan(static_cast<std::size_t>(k) * n, n);
}

std::vector<double> StaggeredField::u_cell(int k) const {
  std::vector<double> c(static_cast<std::size_t>(layout->kinematic_per_cell()));
  for (int i = 0; i < layout->kinematic_per_cell(); ++i) c[i] = u[layout->kinematic_dof(k, i)];
  return c;
}

double eval_field(const StaggeredField& field, Variable which, double x, Side side) {
  const auto [k, lambda] = field.layout->mesh().locate(x, side);
  switch (which) {
    case Variable::density:
      return basis::bezier_value(field.rho_cell(k), lambda);
    case Variable::energy:
      return basis::bezier_value(field.e_cell(k), lambda);
    case Variable::velocity: {
      const auto c = field.u_cell(k);
      return basis::bezier_value(c, lambda);
    }
  }
  return 0.0;
}

StaggeredField project_initial(const PrimitiveProfile& profile,
                               std::shared_ptr<const SpaceLayout> layout, const GasModel& gas) {
  StaggeredField f(layout);
  const Mesh1D& mesh = layout->mesh();
  const int n = mesh.cells();

  auto checked = [](const Primitive& w, double x) {
    if (!(w.rho > 0.0) || !(w.p > 0.0) || !std::isfinite(w.u)) {
      std::ostringstream os;
      os << "initial data not admissible at x=" << x << " (rho=" << w.rho << ", p=" << w.p << ")";
      throw DataError(os.str());
    }
    return w;
  };

  const int rd = layout->thermo_degree();
  const auto tpts = thermo_points(rd);
  for (int k = 0; k < n; ++k) {
    std::vector<double> rv, ev;
    for (double l : tpts) {
      const double x = mesh.node(k) + l * mesh.h(k);
      const Primitive w = checked(profile(x, Side::right), x);
      rv.push_back(w.rho);
      ev.push_back(gas.volumetric_energy(w.p));
    }
    const auto rc = interpolate(rd, tpts, rv);
    const auto ec = interpolate(rd, tpts, ev);
    for (int i = 0; i <= rd; ++i) {
      f.rho[layout->thermo_dof(k, i)] = rc[i];
      f.e[layout->thermo_dof(k, i)] = ec[i];
    }
  }

  auto vertex_velocity = [&](int j) {
    const double x = mesh.node(j);
    if (mesh.periodic() && (j == 0 || j == n)) {
      return 0.5 * (profile(mesh.left(), Side::right).u + profile(mesh.right(), Side::left).u);
    }
    if (j == 0) return profile(x, Side::right).u;
    if (j == n) return profile(x, Side::left).u;
    return 0.5 * (profile(x, Side::left).u + profile(x, Side::right).u);
  };

  const int kd = layout->kinematic_degree();
  std::vector<double> kpts;
  for (int i = 0; i <= kd; ++i) kpts.push_back(static_cast<double>(i) / kd);
  for (int k = 0; k < n; ++k) {
    std::vector<double> uv(static_cast<std::size_t>(kd + 1));
    uv.front() = vertex_velocity(k);
    uv.back() = vertex_velocity(k + 1);
    for (int i = 1; i < kd; ++i) uv[i] = profile(mesh.node(k) + kpts[i] * mesh.h(k), Side::right).u;
    const auto uc = interpolate(kd, kpts, uv);
    for (int i = 0; i <= kd; ++i) f.u[layout->kinematic_dof(k, i)] = uc[i];
  }
  return f;
}

StaggeredField project_initial(const std::function<double(double)>& rho0,
                               const std::function<double(double)>& u0,
                               const std::function<double(double)>& p0,
                               std::shared_ptr<const SpaceLayout> layout, const GasModel& gas) {
  return project_initial(
      [&](double x, Side) { return Primitive{rho0(x), u0(x), p0(x)}; }, std::move(layout), gas);
}

}  // namespace staggered

#include "kerrsq/dispersive_stats.hpp"

#include <limits>
#include <string>

#include "kerrsq/parallel.hpp"

namespace kerrsq {

namespace {

void require_axis(const Eigen::Ref<const Eigen::VectorXd>& axis, const char* name) {
  if (axis.size() == 0)
    throw DomainError(std::string(name) + " axis must not be empty");
  for (Eigen::Index i = 1; i < axis.size(); ++i)
    if (!(axis[i] > axis[i - 1]))
      throw DomainError(std::string(name) + " axis must be sorted ascending");
  if (axis[0] < 0.0)
    throw DomainError(std::string(name) + " axis must be non-negative");
}

}  // namespace

QSurface fig2_surface(const Eigen::Ref<const Eigen::VectorXd>& psi0_axis,
                      const Eigen::Ref<const Eigen::VectorXd>& phi_axis, const DispersionScenario<double>& scenario,
                      unsigned workers) {
  require_axis(psi0_axis, "psi0");
  require_axis(phi_axis, "phi");
  scenario.validate();

  QSurface surface;
  surface.psi0_axis = psi0_axis;
  surface.phi_axis = phi_axis;
  surface.scenario = scenario;
  surface.values.resize(psi0_axis.size(), phi_axis.size());
  surface.masked.resize(psi0_axis.size(), phi_axis.size());

  for_each_row(psi0_axis.size(), workers, [&](Eigen::Index row) {
    DispersionScenario<double> cell = scenario;
    cell.psi0 = psi0_axis[row];
    for (Eigen::Index col = 0; col < phi_axis.size(); ++col) {
      try {
        surface.values(row, col) = mandel_q(cell, phi_axis[col]);
        surface.masked(row, col) = false;
      } catch (const CompressionSingularity&) {
        surface.values(row, col) = std::numeric_limits<double>::quiet_NaN();
        surface.masked(row, col) = true;
      }
    }
  });
  return surface;
}

}  // namespace kerrsq

#include "gospace/polynomial.hpp"

#include "gospace/homspace.hpp"

#include <stdexcept>

namespace gospace {

double gradient_fd_error(const InvariantPolynomial& f, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& direction, double step) {
  const Eigen::VectorXd u = direction.normalized();
  const double h = step * std::max(1.0, x.norm());
  const double fd = (f(x + h * u) - f(x - h * u)) / (2.0 * h);
  const double exact = f.gradient(x).dot(u);
  const double scale = std::max({std::abs(exact), f.gradient(x).norm(), 1e-300});
  return std::abs(fd - exact) / scale;
}

double invariance_residual(const InvariantPolynomial& f, const Eigen::VectorXd& x) {
  const Domain& dom = f.domain();
  if (!dom.space) throw std::invalid_argument("polynomial has no domain space");
  const HomogeneousSpace& s = *dom.space;
  const Eigen::MatrixXd d = s.domain_basis(dom.submodule);
  const Eigen::MatrixXd act = s.acting_basis(dom.submodule);
  const Eigen::VectorXd grad = f.gradient(x);
  const double scale = grad.norm() * x.norm();
  if (scale == 0.0) return 0.0;
  const Eigen::VectorXd xg = d * x;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < act.cols(); ++j) {
    const Eigen::VectorXd tangent = d.transpose() * s.g->bracket(act.col(j), xg);
    worst = std::max(worst, std::abs(grad.dot(tangent)) / scale);
  }
  return worst;
}

}  // namespace gospace

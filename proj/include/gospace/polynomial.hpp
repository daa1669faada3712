#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>

namespace gospace {

struct HomogeneousSpace;

/// Which summand a polynomial lives on: v = l + m (acted on by h) or m
/// (acted on by k = h + l).
enum class Submodule { v, m };

std::string submodule_name(Submodule s);

struct Domain {
  const HomogeneousSpace* space = nullptr;
  Submodule submodule = Submodule::v;

  friend bool operator==(const Domain&, const Domain&) = default;
};

/// An invariant polynomial on a domain together with its exact gradient.
/// Points and gradients are coordinate vectors in the domain's orthonormal
/// basis, so the gradient is taken with respect to the invariant form.
class InvariantPolynomial {
 public:
  using Evaluator = std::function<double(const Eigen::VectorXd&)>;
  using Gradient = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

  InvariantPolynomial(std::string label, int degree, Domain domain, Evaluator eval,
                      Gradient grad)
      : label_(std::move(label)), degree_(degree), domain_(domain),
        eval_(std::move(eval)), grad_(std::move(grad)) {}

  const std::string& label() const { return label_; }
  int degree() const { return degree_; }
  const Domain& domain() const { return domain_; }

  double operator()(const Eigen::VectorXd& x) const { return eval_(x); }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const { return grad_(x); }

 private:
  std::string label_;
  int degree_;
  Domain domain_;
  Evaluator eval_;
  Gradient grad_;
};

/// Relative error between the exact gradient and a central finite difference
/// along `direction`.
double gradient_fd_error(const InvariantPolynomial& f, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& direction, double step = 1e-5);

/// max over acting basis elements eta of |<grad f(x), pr[eta, x]>|, normalized
/// by ||grad f(x)|| ||x||.
double invariance_residual(const InvariantPolynomial& f, const Eigen::VectorXd& x);

}  // namespace gospace

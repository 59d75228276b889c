#pragma once

#include <Eigen/Core>
#include <boost/math/quadrature/gauss.hpp>

namespace ingham::detail {

/// Composite 20-point Gauss-Legendre rule on [a, b] with equal panels.
struct CompositeRule {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;
};

inline CompositeRule composite_gauss(double a, double b, int panels) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  const Eigen::Index per_panel = 2 * static_cast<Eigen::Index>(x.size());
  CompositeRule rule{Eigen::ArrayXd(per_panel * panels), Eigen::ArrayXd(per_panel * panels)};
  const double width = (b - a) / panels;
  Eigen::Index k = 0;
  for (int p = 0; p < panels; ++p) {
    const double center = a + (p + 0.5) * width;
    const double half = 0.5 * width;
    for (std::size_t i = 0; i < x.size(); ++i) {
      rule.nodes[k] = center - half * x[i];
      rule.weights[k++] = half * w[i];
      rule.nodes[k] = center + half * x[i];
      rule.weights[k++] = half * w[i];
    }
  }
  return rule;
}

}  // namespace ingham::detail

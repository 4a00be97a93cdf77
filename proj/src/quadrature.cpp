#include "cmc/detail/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

namespace cmc::detail {

namespace {

struct Rule {
  std::array<double, 20> nodes{};
  std::array<double, 20> weights{};

  Rule() {
    using gauss = boost::math::quadrature::gauss<double, 20>;
    const auto& x = gauss::abscissa();
    const auto& w = gauss::weights();
    // Boost stores the non-negative half of the symmetric rule.
    for (std::size_t i = 0; i < x.size(); ++i) {
      nodes[i] = -x[x.size() - 1 - i];
      weights[i] = w[x.size() - 1 - i];
      nodes[10 + i] = x[i];
      weights[10 + i] = w[i];
    }
  }
};

const Rule& rule() {
  static const Rule r;
  return r;
}

}  // namespace

std::span<const double> gauss_legendre_nodes() { return rule().nodes; }
std::span<const double> gauss_legendre_weights() { return rule().weights; }

}  // namespace cmc::detail

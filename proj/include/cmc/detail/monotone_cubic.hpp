#pragma once

#include <vector>

namespace cmc::detail {

/// Fritsch-Carlson monotone piecewise cubic Hermite interpolant. Knots must
/// be strictly increasing; monotone data yields a monotone interpolant.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double derivative(double x) const;

  const std::vector<double>& knots() const { return x_; }

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;
};

}  // namespace cmc::detail

#pragma once
#include <functional>
#include <vector>

namespace ovalbowl::interp {

// Natural cubic spline through (x_i, f_i), x strictly increasing.
// Evaluates as the boundary-nearest cubic outside the data span unless
// zero_extend is set, in which case it returns 0 there.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> f, bool zero_extend = false);
  double operator()(double x) const;
  double deriv(double x) const;
  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

 private:
  std::vector<double> x_, f_, m_;  // m_: second derivatives at nodes
  bool zero_extend_ = false;
};

// Monotone cubic Hermite interpolant (Fritsch-Carlson slopes). Values stay
// within the data range on each interval; requires x strictly increasing.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> f);
  double operator()(double x) const;
  double deriv(double x) const;
  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

 private:
  std::vector<double> x_, f_, d_;  // d_: node slopes
};

// Root of a continuous scalar function on a bracketing interval [lo, hi]
// (f(lo), f(hi) of opposite sign or zero). Brent's method, deterministic.
double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  double xtol, int max_iter = 200);

}  // namespace ovalbowl::interp

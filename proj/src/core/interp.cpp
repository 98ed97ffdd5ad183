#include "core/interp.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace ovalbowl::interp {

namespace {
// Index of the interval containing x (clamped to valid intervals).
std::size_t find_interval(const std::vector<double>& xs, double x) {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::ptrdiff_t k = (it - xs.begin()) - 1;
  k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(xs.size()) - 2);
  return static_cast<std::size_t>(k);
}

void check_increasing(const std::vector<double>& x, const std::vector<double>& f) {
  if (x.size() != f.size() || x.size() < 2) fail(ErrorKind::invalid_argument, "interp: need >= 2 samples");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) fail(ErrorKind::invalid_argument, "interp: abscissae not strictly increasing");
}
}  // namespace

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> f, bool zero_extend)
    : x_(std::move(x)), f_(std::move(f)), zero_extend_(zero_extend) {
  check_increasing(x_, f_);
  const std::size_t n = x_.size();
  m_.assign(n, 0.0);
  if (n == 2) return;
  // Tridiagonal solve for natural spline second derivatives.
  std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), r(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = x_[i] - x_[i - 1], hr = x_[i + 1] - x_[i];
    a[i] = hl / 6.0;
    b[i] = (hl + hr) / 3.0;
    c[i] = hr / 6.0;
    r[i] = (f_[i + 1] - f_[i]) / hr - (f_[i] - f_[i - 1]) / hl;
  }
  // forward elimination on rows 1..n-2
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    r[i] -= w * r[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = (r[i] - c[i] * (i + 2 < n ? m_[i + 1] : 0.0)) / b[i];
    if (i == 1) break;
  }
}

double CubicSpline::operator()(double x) const {
  if (zero_extend_ && (x < x_.front() || x > x_.back())) return 0.0;
  const std::size_t k = find_interval(x_, x);
  const double h = x_[k + 1] - x_[k];
  const double A = (x_[k + 1] - x) / h, B = (x - x_[k]) / h;
  return A * f_[k] + B * f_[k + 1] +
         ((A * A * A - A) * m_[k] + (B * B * B - B) * m_[k + 1]) * h * h / 6.0;
}

double CubicSpline::deriv(double x) const {
  if (zero_extend_ && (x < x_.front() || x > x_.back())) return 0.0;
  const std::size_t k = find_interval(x_, x);
  const double h = x_[k + 1] - x_[k];
  const double A = (x_[k + 1] - x) / h, B = (x - x_[k]) / h;
  return (f_[k + 1] - f_[k]) / h +
         ((3.0 * B * B - 1.0) * m_[k + 1] - (3.0 * A * A - 1.0) * m_[k]) * h / 6.0;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> f)
    : x_(std::move(x)), f_(std::move(f)) {
  check_increasing(x_, f_);
  const std::size_t n = x_.size();
  d_.assign(n, 0.0);
  std::vector<double> s(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) s[i] = (f_[i + 1] - f_[i]) / (x_[i + 1] - x_[i]);
  d_[0] = s[0];
  d_[n - 1] = s[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i)
    d_[i] = (s[i - 1] * s[i] > 0.0) ? 0.5 * (s[i - 1] + s[i]) : 0.0;
  // Fritsch-Carlson limiter
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (s[i] == 0.0) {
      d_[i] = d_[i + 1] = 0.0;
      continue;
    }
    const double al = d_[i] / s[i], be = d_[i + 1] / s[i];
    const double rad = al * al + be * be;
    if (rad > 9.0) {
      const double t = 3.0 / std::sqrt(rad);
      d_[i] = t * al * s[i];
      d_[i + 1] = t * be * s[i];
    }
  }
}

double MonotoneCubic::operator()(double x) const {
  const std::size_t k = find_interval(x_, x);
  const double h = x_[k + 1] - x_[k];
  const double t = (x - x_[k]) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  return h00 * f_[k] + h10 * h * d_[k] + h01 * f_[k + 1] + h11 * h * d_[k + 1];
}

double MonotoneCubic::deriv(double x) const {
  const std::size_t k = find_interval(x_, x);
  const double h = x_[k + 1] - x_[k];
  const double t = (x - x_[k]) / h;
  const double g00 = 6 * t * t - 6 * t, g10 = 3 * t * t - 4 * t + 1;
  const double g01 = -6 * t * t + 6 * t, g11 = 3 * t * t - 2 * t;
  return (g00 * f_[k] + g01 * f_[k + 1]) / h + g10 * d_[k] + g11 * d_[k + 1];
}

double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  double xtol, int max_iter) {
  double a = lo, b = hi, fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) fail(ErrorKind::range, "brent_root: interval does not bracket a root");
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * 2.220446049250313e-16 * std::abs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc, rr = fb / fc;
        p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
        q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

}  // namespace ovalbowl::interp

#include "core/pde.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "core/errors.hpp"

namespace ovalbowl::pde {

namespace {

// Value of a non-interior node, reconstructed along the read direction by a
// one-dimensional polynomial through the zero Dirichlet value at the ellipse
// crossing and up to three interior nodes further inward.
struct Ghost {
  int n = 0;
  int parent[3] = {-1, -1, -1};
  double coef[3] = {0.0, 0.0, 0.0};
};

inline int dir_code(int di, int dj) { return 3 * (di + 1) + (dj + 1); }

struct GhostTable {
  std::unordered_map<long long, Ghost> map;

  const Ghost* find(int node, int di, int dj) const {
    auto it = map.find(9LL * node + dir_code(di, dj));
    return it == map.end() ? nullptr : &it->second;
  }
};

// crossing parameter of the ellipse along Q + t*(di*hx, dj*hr), t in (0, 1]
double crossing_param(const Domain& dom, const Grid& g, int qi, int qj, int di, int dj) {
  const double xq = g.x(qi), rq = g.r(qj);
  const double bb = dom.b();
  const double sx = di * g.hx, sr = dj * g.hr;
  const double c2 = dom.a * dom.a * sx * sx + bb * bb * sr * sr;
  const double c1 = 2.0 * (dom.a * dom.a * xq * sx + bb * bb * rq * sr);
  const double c0 = dom.a * dom.a * xq * xq + bb * bb * rq * rq - dom.R * dom.R;
  const double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc < 0.0) return 1.0;
  const double sq = std::sqrt(disc);
  const double t1 = (-c1 - sq) / (2.0 * c2);
  const double t2 = (-c1 + sq) / (2.0 * c2);
  for (double t : {t1, t2})
    if (t > -1e-12 && t <= 1.0 + 1e-12) return std::clamp(t, 0.0, 1.0);
  return 1.0;
}

GhostTable build_ghosts(const Domain& dom, const Grid& g) {
  GhostTable t;
  for (int j = 0; j < g.nr; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (g.mask[g.idx(i, j)] != NodeClass::boundary) continue;
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          const int pi = i + di, pj = j + dj;
          if (pi < 0 || pi >= g.nx || pj < 0 || pj >= g.nr) continue;
          if (!g.is_interior(pi, pj)) continue;
          const double delta =
              std::min(crossing_param(dom, g, i, j, di, dj), 1.0 - 1e-10);
          Ghost gh;
          double s[4];
          s[0] = delta;
          int count = 0;
          for (int k = 1; k <= 3; ++k) {
            const int ii = i + k * di, jj = j + k * dj;
            if (ii < 0 || ii >= g.nx || jj < 0 || jj >= g.nr) break;
            if (!g.is_interior(ii, jj)) break;
            gh.parent[count] = g.idx(ii, jj);
            s[count + 1] = k;
            ++count;
          }
          gh.n = count;
          for (int k = 1; k <= count; ++k) {
            double c = 1.0;
            for (int l = 0; l <= count; ++l) {
              if (l == k) continue;
              c *= (0.0 - s[l]) / (s[k] - s[l]);
            }
            gh.coef[k - 1] = c;
          }
          t.map.emplace(9LL * g.idx(i, j) + dir_code(di, dj), gh);
        }
    }
  return t;
}

struct NullSink {
  void add(int, double) {}
};

struct VecSink {
  std::vector<int>* cols;
  std::vector<double>* ws;
  void add(int node, double w) {
    for (std::size_t k = 0; k < cols->size(); ++k)
      if ((*cols)[k] == node) {
        (*ws)[k] += w;
        return;
      }
    cols->push_back(node);
    ws->push_back(w);
  }
};

// Expanded centered form of the translator operator,
//   [(1+u_r^2) u_xx - 2 u_x u_r u_xr + (1+u_x^2) u_rr] / W^3 + u_r/(r W) - 1/W,
// with all derivatives by centered differences at the node. At the axis the
// radial singular term is replaced by its even-symmetry limit (ghost row),
// which turns the radial contribution into 2 u_rr / W.
class Assembler {
 public:
  Assembler(const Grid& g, const GhostTable& ghosts) : g_(g), ghosts_(ghosts) {}

  template <class Sink>
  double node_value(const std::vector<double>& u, int i, int j, int di, int dj, Sink* em,
                    double w) const {
    const int id = g_.idx(i, j);
    if (g_.mask[id] == NodeClass::interior) {
      if (em) em->add(id, w);
      return u[id];
    }
    const Ghost* gh = ghosts_.find(id, di, dj);
    if (!gh) return 0.0;
    double v = 0.0;
    for (int k = 0; k < gh->n; ++k) {
      v += gh->coef[k] * u[gh->parent[k]];
      if (em) em->add(gh->parent[k], w * gh->coef[k]);
    }
    return v;
  }

  template <class Sink>
  double residual_at(const std::vector<double>& u, int i, int j, Sink* em) const {
    const double hx = g_.hx, hr = g_.hr;
    const int idc = g_.idx(i, j);
    const double vC = u[idc];

    NullSink none;
    const double vXP = node_value(u, i + 1, j, -1, 0, &none, 0.0);
    const double vXM = node_value(u, i - 1, j, +1, 0, &none, 0.0);
    const double vRP = node_value(u, i, j + 1, 0, -1, &none, 0.0);

    const double ux = (vXP - vXM) / (2.0 * hx);
    const double uxx = (vXP - 2.0 * vC + vXM) / (hx * hx);

    double ur = 0.0, urr = 0.0, uxr = 0.0;
    double vRM = 0.0, vPP = 0.0, vPM = 0.0, vMP = 0.0, vMM = 0.0;
    if (j == 0) {
      urr = 2.0 * (vRP - vC) / (hr * hr);
    } else {
      vRM = node_value(u, i, j - 1, 0, +1, &none, 0.0);
      vPP = node_value(u, i + 1, j + 1, -1, -1, &none, 0.0);
      vMP = node_value(u, i - 1, j + 1, +1, -1, &none, 0.0);
      vPM = node_value(u, i + 1, j - 1, -1, +1, &none, 0.0);
      vMM = node_value(u, i - 1, j - 1, +1, +1, &none, 0.0);
      ur = (vRP - vRM) / (2.0 * hr);
      urr = (vRP - 2.0 * vC + vRM) / (hr * hr);
      uxr = (vPP - vMP - vPM + vMM) / (4.0 * hx * hr);
    }

    const double W2 = 1.0 + ux * ux + ur * ur;
    const double W = std::sqrt(W2);
    const double iW = 1.0 / W, iW3 = 1.0 / (W * W2), iW5 = iW3 / W2;
    const double A = (1.0 + ur * ur) * uxx - 2.0 * ux * ur * uxr + (1.0 + ux * ux) * urr;
    const double rj = g_.r(j);

    double F;
    if (j == 0) {
      F = A * iW3 + urr * iW - iW;
    } else {
      F = A * iW3 + ur / rj * iW - iW;
    }

    if (em) {
      double dF_duxx, dF_durr, dF_duxr = 0.0, dF_dux, dF_dur = 0.0;
      if (j == 0) {
        dF_duxx = iW3;
        dF_durr = (1.0 + ux * ux) * iW3 + iW;
        dF_dux = 2.0 * ux * urr * iW3 - 3.0 * ux * A * iW5 - urr * ux * iW3 + ux * iW3;
      } else {
        dF_duxx = (1.0 + ur * ur) * iW3;
        dF_durr = (1.0 + ux * ux) * iW3;
        dF_duxr = -2.0 * ux * ur * iW3;
        dF_dux = (2.0 * ux * urr - 2.0 * ur * uxr) * iW3 - 3.0 * ux * A * iW5 -
                 (ur / rj) * ux * iW3 + ux * iW3;
        dF_dur = (2.0 * ur * uxx - 2.0 * ux * uxr) * iW3 - 3.0 * ur * A * iW5 + iW / rj -
                 (ur / rj) * ur * iW3 + ur * iW3;
      }
      // chain into the stencil reads
      const double cux = 1.0 / (2.0 * hx), cuxx = 1.0 / (hx * hx);
      node_value(u, i + 1, j, -1, 0, em, dF_dux * cux + dF_duxx * cuxx);
      node_value(u, i - 1, j, +1, 0, em, -dF_dux * cux + dF_duxx * cuxx);
      if (j == 0) {
        const double curr = 2.0 / (hr * hr);
        node_value(u, i, j + 1, 0, -1, em, dF_durr * curr);
        em->add(idc, -2.0 * cuxx * dF_duxx - curr * dF_durr);
      } else {
        const double cur = 1.0 / (2.0 * hr), curr = 1.0 / (hr * hr);
        node_value(u, i, j + 1, 0, -1, em, dF_dur * cur + dF_durr * curr);
        node_value(u, i, j - 1, 0, +1, em, -dF_dur * cur + dF_durr * curr);
        const double cxr = dF_duxr / (4.0 * hx * hr);
        node_value(u, i + 1, j + 1, -1, -1, em, cxr);
        node_value(u, i - 1, j - 1, +1, +1, em, cxr);
        node_value(u, i - 1, j + 1, +1, -1, em, -cxr);
        node_value(u, i + 1, j - 1, -1, +1, em, -cxr);
        em->add(idc, -2.0 * cuxx * dF_duxx - 2.0 * curr * dF_durr);
      }
    }
    return F;
  }

 private:
  const Grid& g_;
  const GhostTable& ghosts_;
};

}  // namespace

std::vector<double> assemble_residual(const std::vector<double>& u, const Grid& grid,
                                      const Domain& dom) {
  if (u.size() != grid.mask.size()) fail(ErrorKind::invalid_argument, "residual: size mismatch");
  GhostTable ghosts = build_ghosts(dom, grid);
  Assembler as(grid, ghosts);
  std::vector<double> F(u.size(), 0.0);
  for (int j = 0; j < grid.nr; ++j)
    for (int i = 0; i < grid.nx; ++i)
      if (grid.is_interior(i, j)) F[grid.idx(i, j)] = as.residual_at<NullSink>(u, i, j, nullptr);
  return F;
}

std::vector<double> residual_directional_derivative(const std::vector<double>& u,
                                                    const std::vector<double>& du,
                                                    const Grid& grid, const Domain& dom) {
  GhostTable ghosts = build_ghosts(dom, grid);
  Assembler as(grid, ghosts);
  std::vector<double> out(u.size(), 0.0);
  std::vector<int> cols;
  std::vector<double> ws;
  for (int j = 0; j < grid.nr; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      if (!grid.is_interior(i, j)) continue;
      cols.clear();
      ws.clear();
      VecSink sink{&cols, &ws};
      as.residual_at(u, i, j, &sink);
      double d = 0.0;
      for (std::size_t k = 0; k < cols.size(); ++k) d += ws[k] * du[cols[k]];
      out[grid.idx(i, j)] = d;
    }
  return out;
}

std::vector<double> paraboloid_guess(const Domain& dom, const Grid& grid, double xi_est) {
  std::vector<double> u(grid.mask.size(), 0.0);
  const double bb = dom.b();
  for (int j = 0; j < grid.nr; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      if (!grid.is_interior(i, j)) continue;
      const double x = grid.x(i), r = grid.r(j);
      const double q = 1.0 - (dom.a * dom.a * x * x + bb * bb * r * r) / (dom.R * dom.R);
      u[grid.idx(i, j)] = xi_est * std::max(q, 0.0);
    }
  return u;
}

Solution newton_solve(const Domain& dom, const Grid& grid, const std::vector<double>& u0,
                      const NewtonOptions& opts) {
  if (u0.size() != grid.mask.size()) fail(ErrorKind::invalid_argument, "newton: size mismatch");
  if (!(opts.tol > 0.0)) fail(ErrorKind::invalid_argument, "newton: tol must be positive");

  const GhostTable ghosts = build_ghosts(dom, grid);
  const Assembler as(grid, ghosts);
  const int ic = grid.center_i();

  // unknowns: interior nodes on the half grid i >= ic; the problem is
  // reflection symmetric so the mirrored array solves the full system
  std::vector<int> uid(grid.mask.size(), -1);
  std::vector<int> unknown_nodes;
  for (int j = 0; j < grid.nr; ++j)
    for (int i = ic; i < grid.nx; ++i)
      if (grid.is_interior(i, j)) {
        uid[grid.idx(i, j)] = static_cast<int>(unknown_nodes.size());
        unknown_nodes.push_back(grid.idx(i, j));
      }
  const int nunk = static_cast<int>(unknown_nodes.size());
  if (nunk == 0) fail(ErrorKind::invalid_argument, "newton: no interior nodes");

  auto col_of = [&](int node) {
    const int i = node % grid.nx, j = node / grid.nx;
    const int im = ic + std::abs(i - ic);
    return uid[grid.idx(im, j)];
  };

  // symmetrized start, zero at non-interior nodes
  std::vector<double> u(grid.mask.size(), 0.0);
  for (int j = 0; j < grid.nr; ++j)
    for (int i = ic; i < grid.nx; ++i) {
      if (!grid.is_interior(i, j)) continue;
      const int mi = 2 * ic - i;
      const double v = 0.5 * (u0[grid.idx(i, j)] + u0[grid.idx(mi, j)]);
      u[grid.idx(i, j)] = v;
      u[grid.idx(mi, j)] = v;
    }

  auto eval_residual = [&](const std::vector<double>& uu, Eigen::VectorXd& F) {
    double norm = 0.0;
    for (int k = 0; k < nunk; ++k) {
      const int node = unknown_nodes[k];
      F[k] = as.residual_at<NullSink>(uu, node % grid.nx, node / grid.nx, nullptr);
      norm = std::max(norm, std::abs(F[k]));
    }
    return norm;
  };

  Eigen::SparseMatrix<double> J(nunk, nunk);
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  std::vector<Eigen::Triplet<double>> trips;
  std::vector<int> cols;
  std::vector<double> ws;
  Eigen::VectorXd F(nunk), Ftry(nunk);
  std::vector<double> utry(u.size());

  double norm = eval_residual(u, F);
  int iters = 0;
  bool pattern_ready = false;
  while (norm > opts.tol) {
    if (iters >= opts.max_iter) {
      char msg[128];
      std::snprintf(msg, sizeof msg, "newton: no convergence after %d iterations, residual %.3e",
                    iters, norm);
      fail(ErrorKind::nonconvergence, msg);
    }
    trips.clear();
    for (int k = 0; k < nunk; ++k) {
      const int node = unknown_nodes[k];
      cols.clear();
      ws.clear();
      VecSink sink{&cols, &ws};
      as.residual_at(u, node % grid.nx, node / grid.nx, &sink);
      for (std::size_t m = 0; m < cols.size(); ++m) trips.emplace_back(k, col_of(cols[m]), ws[m]);
    }
    J.setFromTriplets(trips.begin(), trips.end());
    if (!pattern_ready) {
      lu.analyzePattern(J);
      pattern_ready = true;
    }
    lu.factorize(J);
    if (lu.info() != Eigen::Success)
      fail(ErrorKind::nonconvergence, "newton: sparse factorization failed");
    Eigen::VectorXd d = lu.solve(-F);

    double lambda = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < opts.max_backtrack; ++bt) {
      utry = u;
      for (int k = 0; k < nunk; ++k) {
        const int node = unknown_nodes[k];
        const int i = node % grid.nx, j = node / grid.nx;
        const double v = u[node] + lambda * d[k];
        utry[grid.idx(i, j)] = v;
        utry[grid.idx(2 * ic - i, j)] = v;
      }
      const double ntry = eval_residual(utry, Ftry);
      if (ntry < norm) {
        u.swap(utry);
        F = Ftry;
        norm = ntry;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    ++iters;
    if (!accepted)
      fail(ErrorKind::nonconvergence,
           "newton: line search stalled at residual " + std::to_string(norm));
  }

  Solution sol;
  sol.domain = dom;
  sol.grid = grid;
  sol.u = std::move(u);
  sol.xi = sol.u[grid.idx(ic, 0)];
  sol.newton_iters = iters;
  // full-grid residual (equals the half-grid one by symmetry; recorded as such)
  double full_norm = 0.0;
  const auto R = assemble_residual(sol.u, grid, dom);
  for (double v : R) full_norm = std::max(full_norm, std::abs(v));
  sol.residual_inf = full_norm;

  const double mono_tol = opts.mono_tol_scale * (1.0 + std::abs(sol.xi));
  double umax_interior = -1.0;
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j + 1 < grid.nr; ++j) {
      if (!grid.is_interior(i, j)) continue;
      umax_interior = std::max(umax_interior, sol.u[grid.idx(i, j)]);
      if (!grid.is_interior(i, j + 1)) continue;
      if (sol.u[grid.idx(i, j + 1)] < sol.u[grid.idx(i, j)] - mono_tol) sol.monotone_r_ok = false;
    }
  sol.negative_interior_ok = umax_interior < 0.0;
  if (!sol.monotone_r_ok) sol.warning += "monotonicity in r violated beyond tolerance; ";
  if (!sol.negative_interior_ok) sol.warning += "nonnegative value at an interior node; ";
  double umin = 0.0;
  for (int j = 0; j < grid.nr; ++j)
    for (int i = 0; i < grid.nx; ++i)
      if (grid.is_interior(i, j)) umin = std::min(umin, sol.u[grid.idx(i, j)]);
  if (umin < sol.xi - 1e-9 * (1.0 + std::abs(sol.xi)))
    sol.warning += "minimum not attained at the origin; ";
  return sol;
}

TipCurvatures tip_curvatures(const Solution& sol, double trace_tol) {
  const Grid& g = sol.grid;
  const int ic = g.center_i();
  const double hx = g.hx, hr = g.hr;
  auto U = [&](int i, int j) { return sol.u[g.idx(i, j)]; };
  const double k =
      (-U(ic + 2, 0) + 16.0 * U(ic + 1, 0) - 30.0 * U(ic, 0) + 16.0 * U(ic - 1, 0) -
       U(ic - 2, 0)) /
      (12.0 * hx * hx);
  const double lam = (-2.0 * U(ic, 2) + 32.0 * U(ic, 1) - 30.0 * U(ic, 0)) / (12.0 * hr * hr);
  const double trace_dev = std::abs(k + 2.0 * lam - 1.0);
  if (trace_dev > trace_tol) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "tip curvatures: |k + 2 lambda - 1| = %.3e exceeds %.3e",
                  trace_dev, trace_tol);
    fail(ErrorKind::consistency, msg);
  }
  TipCurvatures tc{k, lam};
  if (tc.k > tc.lambda) std::swap(tc.k, tc.lambda);
  return tc;
}

}  // namespace ovalbowl::pde

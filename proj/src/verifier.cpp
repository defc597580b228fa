#include "ellflow/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "ellflow/error.hpp"
#include "ellflow/zeros.hpp"

namespace ellflow {

void GridSpec::validate() const {
  if (n_t < 5 || n_x < 5) throw Error(ErrorKind::InvalidArgument, "grid needs at least 5 points per axis");
  if (!(fd_step > 0.0)) throw Error(ErrorKind::InvalidArgument, "fd_step must be positive");
  if (!(t1 >= t0)) throw Error(ErrorKind::InvalidArgument, "t1 must not precede t0");
  for (int i = 0; i < 3; ++i)
    if (!(x_hi[i] >= x_lo[i])) throw Error(ErrorKind::InvalidArgument, "x_hi must not precede x_lo");
}

double GridSpec::t_at(int i) const { return t0 + (t1 - t0) * i / (n_t - 1); }
double GridSpec::x_at(int axis, int i) const { return x_lo[axis] + (x_hi[axis] - x_lo[axis]) * i / (n_x - 1); }

namespace {

std::array<double, 4> unpack(const FlowState& s) { return {s.a, s.u[0], s.u[1], s.u[2]}; }

}  // namespace

std::array<double, 4> pde_residual_at(const FlowField& sol, const MediumParams& med, double t, const Vec3& x, double h) {
  FlowState c = sol(t, x);
  // derivs[d][alpha]: d = 0 time, 1..3 space
  std::array<std::array<double, 4>, 4> derivs{};
  for (int d = 0; d < 4; ++d) {
    std::array<std::array<double, 4>, 4> v;
    const double off[4] = {-2.0 * h, -h, h, 2.0 * h};
    for (int k = 0; k < 4; ++k) {
      double tt = t;
      Vec3 xx = x;
      if (d == 0) tt += off[k];
      else xx[d - 1] += off[k];
      v[k] = unpack(sol(tt, xx));
    }
    for (int a = 0; a < 4; ++a) derivs[d][a] = (v[0][a] - 8.0 * v[1][a] + 8.0 * v[2][a] - v[3][a]) / (12.0 * h);
  }
  std::array<double, 4> res = derivs[0];
  for (int j = 1; j <= 3; ++j) {
    Mat4 A = coefficient_matrix(j, c, med);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) res[a] += A[a][b] * derivs[j][b];
  }
  return res;
}

ResidualReport pde_residual(const FlowField& sol, const MediumParams& med, const GridSpec& grid, unsigned threads) {
  grid.validate();
  const long nx = grid.n_x;
  const long total = long(grid.n_t) * nx * nx * nx;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = unsigned(std::min<long>(threads, total));
  std::vector<ResidualReport> parts(threads);
  std::vector<double> sumsq(threads, 0.0);
  auto work = [&](unsigned w) {
    ResidualReport& rep = parts[w];
    for (long idx = w; idx < total; idx += threads) {
      long rest = idx;
      int i3 = int(rest % nx);
      rest /= nx;
      int i2 = int(rest % nx);
      rest /= nx;
      int i1 = int(rest % nx);
      int it = int(rest / nx);
      double t = grid.t_at(it);
      Vec3 x{grid.x_at(0, i1), grid.x_at(1, i2), grid.x_at(2, i3)};
      ++rep.samples;
      std::array<double, 4> r;
      try {
        r = pde_residual_at(sol, med, t, x, grid.fd_step);
      } catch (const Error&) {
        ++rep.samples_skipped;
        rep.skipped_points.push_back({t, x[0], x[1], x[2]});
        continue;
      }
      double n2 = 0.0;
      bool finite = true;
      for (int a = 0; a < 4; ++a) {
        if (!std::isfinite(r[a])) finite = false;
        n2 += r[a] * r[a];
      }
      if (!finite) {
        ++rep.samples_skipped;
        rep.skipped_points.push_back({t, x[0], x[1], x[2]});
        continue;
      }
      sumsq[w] += n2;
      for (int a = 0; a < 4; ++a) {
        double v = std::abs(r[a]);
        rep.max_per_equation[a] = std::max(rep.max_per_equation[a], v);
        if (v > rep.max_abs) {
          rep.max_abs = v;
          rep.worst_point = {t, x[0], x[1], x[2]};
        }
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  ResidualReport out;
  double ss = 0.0;
  for (unsigned w = 0; w < threads; ++w) {
    const ResidualReport& p = parts[w];
    out.samples += p.samples;
    out.samples_skipped += p.samples_skipped;
    out.skipped_points.insert(out.skipped_points.end(), p.skipped_points.begin(), p.skipped_points.end());
    for (int a = 0; a < 4; ++a) out.max_per_equation[a] = std::max(out.max_per_equation[a], p.max_per_equation[a]);
    if (p.max_abs > out.max_abs) {
      out.max_abs = p.max_abs;
      out.worst_point = p.worst_point;
    }
    ss += sumsq[w];
  }
  std::sort(out.skipped_points.begin(), out.skipped_points.end());
  long used = out.samples - out.samples_skipped;
  out.l2 = used > 0 ? std::sqrt(ss / double(used)) : 0.0;
  return out;
}

BoundednessReport boundedness_scan(const std::function<double(double)>& f, double lo, double hi, int n) {
  if (n < 1000) throw Error(ErrorKind::InvalidArgument, "boundedness scan needs n >= 1000");
  if (!(hi > lo)) throw Error(ErrorKind::InvalidArgument, "empty interval");
  BoundednessReport rep;
  rep.min_val = std::numeric_limits<double>::infinity();
  rep.max_val = -std::numeric_limits<double>::infinity();
  auto safe = [&](double x, bool& ok) {
    try {
      double v = f(x);
      ok = std::isfinite(v);
      return v;
    } catch (const Error&) {
      ok = false;
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  const double dx = (hi - lo) / (n - 1);
  int imin = -1;
  for (int i = 0; i < n; ++i) {
    double x = lo + dx * i;
    bool ok = false;
    double v = safe(x, ok);
    if (!ok) {
      ++rep.poles;
      continue;
    }
    if (v < rep.min_val) rep.min_val = v, imin = i;
    rep.max_val = std::max(rep.max_val, v);
  }
  if (imin >= 0) {
    rep.argmin = lo + dx * imin;
    double a = std::max(lo, rep.argmin - dx), b = std::min(hi, rep.argmin + dx);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    bool okc = false, okd = false;
    double fc = safe(c, okc), fd = safe(d, okd);
    for (int it = 0; it < 200 && (b - a) > 1e-12 * std::max(1.0, std::abs(a)); ++it) {
      if (!okc || !okd) break;
      if (fc < fd) {
        b = d, d = c, fd = fc;
        c = b - gr * (b - a);
        fc = safe(c, okc);
      } else {
        a = c, c = d, fc = fd;
        d = a + gr * (b - a);
        fd = safe(d, okd);
      }
    }
    for (auto [x, v, ok] : {std::tuple{c, fc, okc}, std::tuple{d, fd, okd}}) {
      if (ok && v < rep.min_val) rep.min_val = v, rep.argmin = x;
    }
  }
  rep.bounded = rep.poles == 0 && imin >= 0 && rep.min_val > 0.0;
  return rep;
}

bool zero_reality_check(const Invariants& inv) {
  Lattice lat = periods_from_invariants(inv);
  ZeroPair zp = wp_zero_hypergeometric(lat.tau);
  Complex z = zp.z0 * lat.omega1;
  for (Complex cand : {z, -z}) {
    CellCoords cc = cell_coordinates(cand, lat.omega1, lat.omega2);
    double a = cc.a - std::floor(cc.a);
    double b = cc.b - std::floor(cc.b + 0.5);
    Complex red = a * lat.omega1 + b * lat.omega2;
    if (!(std::abs(red.imag()) > 1e-6)) return false;
  }
  return true;
}

}  // namespace ellflow

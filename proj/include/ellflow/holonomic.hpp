#pragma once

// Analytic continuation of generalized hypergeometric functions p+1Fp by
// Taylor re-expansion of their differential equation along a polygonal path.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "ellflow/error.hpp"

namespace ellflow {

template <class T>
using Cx = std::complex<T>;

/// Linear ODE sum_k P_k(z) w^(k) = 0 with polynomial coefficients.
template <class T>
struct PolynomialOde {
  std::vector<std::vector<Cx<T>>> coef;  // coef[k][j]: z^j coefficient of P_k
  int order() const { return int(coef.size()) - 1; }
};

/// Differential equation of pFq(a; b; z) with p = q + 1:
/// [theta prod(theta + b_j - 1) - z prod(theta + a_i)] w = 0, theta = z d/dz.
template <class T>
PolynomialOde<T> pfq_ode(const std::vector<T>& a, const std::vector<T>& b) {
  auto expand = [](const std::vector<T>& roots) {
    std::vector<T> poly{T(1)};  // coefficients in theta
    for (T r : roots) {
      std::vector<T> next(poly.size() + 1, T(0));
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i] += r * poly[i];
        next[i + 1] += poly[i];
      }
      poly = next;
    }
    return poly;
  };
  std::vector<T> lroots{T(0)};
  for (T bj : b) lroots.push_back(bj - T(1));
  std::vector<T> lhs = expand(lroots);
  std::vector<T> rhs = expand(a);
  const int order = int(a.size());
  // theta^n = sum_k S(n,k) z^k D^k (Stirling numbers of the second kind)
  std::vector<std::vector<T>> stirling(order + 1, std::vector<T>(order + 1, T(0)));
  stirling[0][0] = T(1);
  for (int n = 1; n <= order; ++n)
    for (int k = 1; k <= n; ++k) stirling[n][k] = T(k) * stirling[n - 1][k] + stirling[n - 1][k - 1];
  PolynomialOde<T> ode;
  ode.coef.assign(order + 1, std::vector<Cx<T>>(order + 2, Cx<T>(0)));
  for (int k = 0; k <= order; ++k) {
    T lk(0), rk(0);
    for (int n = k; n <= order; ++n) {
      if (n < int(lhs.size())) lk += lhs[n] * stirling[n][k];
      if (n < int(rhs.size())) rk += rhs[n] * stirling[n][k];
    }
    ode.coef[k][k] += lk;
    ode.coef[k][k + 1] -= rk;
  }
  return ode;
}

namespace detail {

template <class T>
Cx<T> poly_eval(const std::vector<Cx<T>>& p, Cx<T> z) {
  Cx<T> s(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * z + *it;
  return s;
}

// Coefficients of p(c + h) in powers of h.
template <class T>
std::vector<Cx<T>> poly_shift(std::vector<Cx<T>> p, Cx<T> c) {
  const int n = int(p.size());
  for (int i = 0; i < n; ++i)
    for (int j = n - 2; j >= i; --j) p[j] += c * p[j + 1];
  return p;
}

// Taylor data t_k = w^(k)(centre)/k!, k < order, advanced to centre + h.
template <class T>
std::vector<Cx<T>> taylor_step(const PolynomialOde<T>& ode, Cx<T> centre, const std::vector<Cx<T>>& state, Cx<T> h) {
  const int order = ode.order();
  std::vector<std::vector<Cx<T>>> sh(order + 1);
  for (int k = 0; k <= order; ++k) sh[k] = poly_shift(ode.coef[k], centre);
  const Cx<T> lead = sh[order][0];
  if (std::abs(lead) == T(0)) throw Error(ErrorKind::NonConvergent, "expansion centre at a singular point");
  std::vector<Cx<T>> t(state.begin(), state.end());
  const T eps = std::numeric_limits<T>::epsilon();
  const int max_terms = 600;
  int quiet = 0;
  T biggest(0);
  Cx<T> hn(1);
  for (int n = 0; n < order; ++n) {
    biggest = std::max(biggest, std::abs(t[n] * hn));
    hn *= h;
  }
  for (int N = 0; N + order < max_terms; ++N) {
    Cx<T> acc(0);
    for (int k = 0; k <= order; ++k) {
      for (int j = 0; j < int(sh[k].size()); ++j) {
        if (k == order && j == 0) continue;
        int m = N - j;
        if (m < 0) continue;
        T poch(1);
        for (int i = 1; i <= k; ++i) poch *= T(m + i);
        acc += sh[k][j] * t[m + k] * poch;
      }
    }
    T poch(1);
    for (int i = 1; i <= order; ++i) poch *= T(N + i);
    t.push_back(-acc / (lead * poch));
    T mag = std::abs(t.back() * hn);
    hn *= h;
    biggest = std::max(biggest, mag);
    if (mag <= eps * biggest * T(1e-2)) {
      if (++quiet >= order + 2) break;
    } else {
      quiet = 0;
    }
  }
  // derivatives at centre + h
  std::vector<Cx<T>> out(order, Cx<T>(0));
  for (int k = 0; k < order; ++k) {
    Cx<T> s(0);
    for (int n = int(t.size()) - 1; n >= k; --n) {
      T binom(1);
      for (int i = 1; i <= k; ++i) binom = binom * T(n - k + i) / T(i);
      s = s * h + binom * t[n];
    }
    out[k] = s;
  }
  return out;
}

}  // namespace detail

/// Series coefficients t_k = w^(k)(z)/k!, k < count, of pFq at |z| well inside the unit disk.
template <class T>
std::vector<Cx<T>> pfq_series_data(const std::vector<T>& a, const std::vector<T>& b, Cx<T> z, int count) {
  const T eps = std::numeric_limits<T>::epsilon();
  std::vector<Cx<T>> out(count, Cx<T>(0));
  // coefficient c_n of z^n; contribution to t_k is C(n,k) c_n z^(n-k)
  T cn(1);
  std::vector<Cx<T>> zpow(1, Cx<T>(1));
  int quiet = 0;
  for (int n = 0; n < 20000; ++n) {
    T mag(0);
    for (int k = 0; k < count && k <= n; ++k) {
      T binom(1);
      for (int i = 1; i <= k; ++i) binom = binom * T(n - k + i) / T(i);
      Cx<T> term = binom * cn * std::pow(z, n - k);
      out[k] += term;
      mag = std::max(mag, std::abs(term) / std::max(std::abs(out[k]), T(1e-300)));
    }
    T num(1), den(T(n) + 1);
    for (T ai : a) num *= ai + T(n);
    for (T bj : b) {
      if (bj + T(n) == T(0)) throw Error(ErrorKind::PoleInC, "lower parameter is a non-positive integer");
      den *= bj + T(n);
    }
    cn = cn * num / den;
    if (cn == T(0)) break;
    if (n > count && mag <= eps * T(1e-2)) {
      if (++quiet >= 4) break;
    } else {
      quiet = 0;
    }
  }
  return out;
}

/// pFq(a; b; z), p = q + 1, on the principal branch (cut [1, inf)); a point on
/// the cut takes the side given by the sign bit of Im z.
template <class T>
Cx<T> pfq_continued(const std::vector<T>& a, const std::vector<T>& b, Cx<T> z) {
  if (a.size() != b.size() + 1) throw Error(ErrorKind::InvalidArgument, "pfq_continued needs p = q + 1");
  for (T bj : b)
    if (bj <= T(0) && bj == std::floor(bj)) throw Error(ErrorKind::PoleInC, "lower parameter is a non-positive integer");
  const T r0 = T(0.5);
  if (std::abs(z) <= r0) return pfq_series_data<T>(a, b, z, 1)[0];
  if (std::abs(z - Cx<T>(1)) < T(1e-10)) throw Error(ErrorKind::NonConvergent, "argument at the singular point 1");
  const int order = int(a.size());
  PolynomialOde<T> ode = pfq_ode<T>(a, b);
  Cx<T> start = r0 * z / std::abs(z);
  std::vector<Cx<T>> path{start};
  // detour around z = 1 whenever the straight ray passes close to it
  {
    Cx<T> d = z - start;
    T along = std::clamp(std::real((Cx<T>(1) - start) * std::conj(d)) / std::norm(d), T(0), T(1));
    T dist = std::abs(start + along * d - Cx<T>(1));
    if (dist < T(0.4)) {
      T side = std::signbit(z.imag()) ? T(-1) : T(1);
      path.push_back(Cx<T>(1, T(0.6) * side));
    }
  }
  path.push_back(z);
  std::vector<Cx<T>> state = pfq_series_data<T>(a, b, start, order);
  Cx<T> c = start;
  for (std::size_t leg = 1; leg < path.size(); ++leg) {
    Cx<T> target = path[leg];
    for (int steps = 0; steps < 100000; ++steps) {
      Cx<T> rem = target - c;
      T len = std::abs(rem);
      if (len == T(0)) break;
      T radius = std::min(std::abs(c), std::abs(c - Cx<T>(1)));
      T hl = std::min(len, T(0.4) * radius);
      Cx<T> h = (hl == len) ? rem : rem * (hl / len);
      state = detail::taylor_step(ode, c, state, h);
      c = (hl == len) ? target : c + h;
      if (hl == len) break;
    }
  }
  return state[0];
}

}  // namespace ellflow

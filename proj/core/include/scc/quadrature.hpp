#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace scc::quad {

struct Options {
  double rel_tol = 1e-8;
  double abs_tol = 1e-11;
  std::size_t max_subdivisions = 4000;
  /// Number of equal pieces the interval is cut into before adapting; guards
  /// against a narrow peak falling between the nodes of a single panel.
  std::size_t initial_panels = 8;
};

struct Result {
  std::vector<double> value;
  std::vector<double> error;
  std::size_t panels = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  std::vector<double> value;
  std::vector<double> error;
};

template <class Integrand>
Panel kronrod_panel(Integrand &f, double a, double b, std::size_t dim,
                    std::vector<double> &scratch) {
  Panel p{a, b, std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)};
  std::vector<double> gauss(dim, 0.0);
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  auto accumulate = [&](double x, double wk, double wg) {
    f(x, std::span<double>(scratch));
    for (std::size_t j = 0; j < dim; ++j) {
      p.value[j] += wk * scratch[j];
      gauss[j] += wg * scratch[j];
    }
  };

  accumulate(centre, kWgk[7], kWg[3]);
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    // Odd Kronrod nodes (i = 1, 3, 5) coincide with the Gauss nodes.
    const double wg = (i % 2 == 1) ? kWg[i / 2] : 0.0;
    accumulate(centre - dx, kWgk[i], wg);
    accumulate(centre + dx, kWgk[i], wg);
  }
  for (std::size_t j = 0; j < dim; ++j) {
    p.value[j] *= half;
    p.error[j] = std::fabs(p.value[j] - gauss[j] * half);
  }
  return p;
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of a vector-valued
/// integrand over [a, b].
///
/// `f(x, out)` writes all `dim` components at x. Component j is accepted when
/// its summed error estimate is below max(rel_tol * |I_j|, abs_tol); the panel
/// with the worst error-to-tolerance ratio is bisected until every component
/// passes or the subdivision budget runs out (converged = false).
template <class Integrand>
Result integrate(Integrand &&f, double a, double b, std::size_t dim,
                 const Options &opts = {}) {
  Result out;
  out.value.assign(dim, 0.0);
  out.error.assign(dim, 0.0);
  if (dim == 0 || a == b) {
    out.converged = true;
    return out;
  }

  std::vector<double> scratch(dim);
  std::vector<detail::Panel> panels;
  const std::size_t n0 = std::max<std::size_t>(1, opts.initial_panels);
  panels.reserve(n0 + 64);
  for (std::size_t i = 0; i < n0; ++i) {
    const double lo = a + (b - a) * static_cast<double>(i) / static_cast<double>(n0);
    const double hi =
        (i + 1 == n0) ? b : a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(n0);
    panels.push_back(detail::kronrod_panel(f, lo, hi, dim, scratch));
  }
  out.evaluations = 15 * n0;

  auto total = [&] {
    std::fill(out.value.begin(), out.value.end(), 0.0);
    std::fill(out.error.begin(), out.error.end(), 0.0);
    for (const auto &p : panels) {
      for (std::size_t j = 0; j < dim; ++j) {
        out.value[j] += p.value[j];
        out.error[j] += p.error[j];
      }
    }
  };
  total();

  std::vector<double> tol(dim);
  for (std::size_t iter = 0;; ++iter) {
    bool done = true;
    for (std::size_t j = 0; j < dim; ++j) {
      tol[j] = std::max(opts.rel_tol * std::fabs(out.value[j]), opts.abs_tol);
      if (out.error[j] > tol[j]) done = false;
    }
    if (done) {
      out.converged = true;
      break;
    }
    if (panels.size() >= opts.max_subdivisions) break;

    std::size_t worst = 0;
    double worst_ratio = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      double ratio = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        ratio = std::max(ratio, panels[i].error[j] / tol[j]);
      }
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst = i;
      }
    }

    const detail::Panel old = std::move(panels[worst]);
    const double mid = 0.5 * (old.a + old.b);
    if (!(mid > old.a && mid < old.b)) break; // panel below machine resolution
    panels[worst] = detail::kronrod_panel(f, old.a, mid, dim, scratch);
    panels.push_back(detail::kronrod_panel(f, mid, old.b, dim, scratch));
    out.evaluations += 30;
    for (std::size_t j = 0; j < dim; ++j) {
      out.value[j] += panels[worst].value[j] + panels.back().value[j] - old.value[j];
      out.error[j] += panels[worst].error[j] + panels.back().error[j] - old.error[j];
    }
    // Incremental updates drift; resum from scratch now and then.
    if (iter % 64 == 63) total();
  }
  total();
  out.panels = panels.size();
  return out;
}

/// Scalar convenience wrapper.
template <class Function>
Result integrate_scalar(Function &&f, double a, double b, const Options &opts = {}) {
  return integrate([&](double x, std::span<double> y) { y[0] = f(x); }, a, b, 1, opts);
}

} // namespace scc::quad

#pragma once

// Spectrum sweeps and feature extraction on top of the scattering engines:
//  - sweep(): tabulate both-direction probabilities, contrasts and the
//    denominator factorization along one swept axis (detuning, coupling
//    phase, channel phases or photon number), optionally multi-threaded
//    with a deterministic index-based merge.
//  - find_conversion_zeros(): locate and classify the exact zeros of the
//    conversion probability on a detuning window.
//  - find_contrast_extrema(): bracket and refine the extrema of the
//    conversion contrast I2(delta).
//  - find_unity_conversion(): scan photon number and coupling phase for
//    contrast extrema above a threshold (ideal-nonreciprocity candidates).

#include <algorithm>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "scattering.hpp"

namespace gascatter {

enum class SweepAxis { Delta, PhiJ, PhiPlus, PhiMinus, PhotonNumber };

struct SweepSpec {
  SystemParams params;
  int n = 1;                        // photon number (PhotonNumber axis overrides)
  Regime regime = Regime::Markov;
  SweepAxis axis = SweepAxis::Delta;
  double lo = -10.0, hi = 10.0;     // axis range; integers for PhotonNumber
  int count = 1001;                 // samples (PhotonNumber: derived from range)
  double delta = 0.0;               // fixed detuning when axis != Delta
  std::optional<PhaseSet> pinned;   // explicit channel phases (figure recipes)
  int threads = 1;
};

struct SpectrumRow {
  double axis = 0.0;
  double t_minus = 0.0, r_minus = 0.0, t_conv = 0.0;        // left incidence
  double t_minus_rev = 0.0, r_minus_rev = 0.0, t_conv_rev = 0.0;  // right incidence
  double i1 = 0.0, i2 = 0.0;
  double lamb_shift = 0.0, eff_decay = 0.0;
  bool pole = false;  // scattering pole hit dead-on; probabilities zeroed
};

struct SpectrumTable {
  SweepSpec spec;
  std::vector<std::string> columns;
  std::vector<SpectrumRow> rows;
};

namespace detail {

inline const char* axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::Delta: return "delta";
    case SweepAxis::PhiJ: return "phi_J";
    case SweepAxis::PhiPlus: return "phi_plus";
    case SweepAxis::PhiMinus: return "phi_minus";
    case SweepAxis::PhotonNumber: return "n";
  }
  return "axis";
}

inline SpectrumRow evaluate_row(const ScatterContext& ctx, Regime regime, double axis,
                                double delta) {
  SpectrumRow row;
  row.axis = axis;
  const ScatteringResult l = scatter(ctx, regime, delta, Direction::LeftIncident);
  const ScatteringResult r = scatter(ctx, regime, delta, Direction::RightIncident);
  row.t_minus = l.transmittance();
  row.r_minus = l.reflectance();
  row.t_conv = l.conversion();
  row.t_minus_rev = r.transmittance();
  row.r_minus_rev = r.reflectance();
  row.t_conv_rev = r.conversion();
  const ContrastResult c = contrasts(l, r);
  row.i1 = c.i1;
  row.i2 = c.i2;
  if (regime == Regime::Exact) {
    row.lamb_shift = lamb_shift_exact(ctx.rates, ctx.phase, ctx.params.tau, delta);
    row.eff_decay = effective_decay_exact(ctx.rates, ctx.phase, ctx.params.tau, delta);
  } else {
    row.lamb_shift = markov_lamb_shift(ctx.rates, ctx.phase);
    row.eff_decay = markov_effective_decay(ctx.rates, ctx.phase);
  }
  row.pole = l.pole_flagged || r.pole_flagged;
  return row;
}

// Golden-section minimizer for a smooth scalar function on [a, b].
template <class F>
double golden_min(F&& f, double a, double b, double tol_x) {
  constexpr double gr = 0.6180339887498949;  // (sqrt(5) - 1) / 2
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol_x) {
    if (f1 <= f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a); f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a); f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Bisect f(x) == level on [a, b] assuming one sign change of f - level.
template <class F>
double bisect_level(F&& f, double a, double b, double level, double tol_x) {
  double fa = f(a) - level;
  for (int it = 0; it < 200 && b - a > tol_x; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m) - level;
    if ((fa <= 0.0) == (fm <= 0.0)) {
      a = m; fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

inline SpectrumTable sweep(const SweepSpec& spec) {
  validate(spec.params);
  if (!(spec.lo < spec.hi) && spec.axis != SweepAxis::PhotonNumber)
    throw std::invalid_argument("sweep: need lo < hi");
  if (spec.count < 2 && spec.axis != SweepAxis::PhotonNumber)
    throw std::invalid_argument("sweep: need count >= 2");
  if (!std::isfinite(spec.lo) || !std::isfinite(spec.hi) || !std::isfinite(spec.delta))
    throw std::invalid_argument("sweep: non-finite bounds or detuning");

  SpectrumTable table;
  table.spec = spec;
  table.columns = {detail::axis_name(spec.axis),
                   "T_minus", "R_minus", "T_c",
                   "Ttilde_minus", "Rtilde_minus", "Ttilde_c",
                   "I1", "I2", "lamb_shift", "eff_decay", "pole"};

  int count = spec.count;
  int n_lo = 0;
  if (spec.axis == SweepAxis::PhotonNumber) {
    n_lo = int(std::lround(spec.lo));
    const int n_hi = int(std::lround(spec.hi));
    if (n_lo < 0 || n_hi < n_lo)
      throw std::invalid_argument("sweep: photon-number range needs 0 <= lo <= hi");
    count = n_hi - n_lo + 1;
  }
  table.rows.resize(count);

  // Base context: validates the parameter set once up front; the Delta axis
  // reuses it for every row.
  const ScatterContext base = spec.pinned ? make_context(spec.params, spec.n, *spec.pinned)
                                          : make_context(spec.params, spec.n);

  auto axis_value = [&](int i) {
    if (spec.axis == SweepAxis::PhotonNumber) return double(n_lo + i);
    return spec.lo + (spec.hi - spec.lo) * double(i) / double(count - 1);
  };

  auto eval = [&](int i) -> SpectrumRow {
    const double x = axis_value(i);
    switch (spec.axis) {
      case SweepAxis::Delta:
        return detail::evaluate_row(base, spec.regime, x, x);
      case SweepAxis::PhiJ: {
        SystemParams p = spec.params;
        p.phi2 = p.phi1 + x;  // swept coupling-phase difference
        const ScatterContext ctx = spec.pinned ? make_context(p, spec.n, *spec.pinned)
                                               : make_context(p, spec.n);
        return detail::evaluate_row(ctx, spec.regime, x, spec.delta);
      }
      case SweepAxis::PhiPlus: {
        const ScatterContext ctx = make_context(
            spec.params, spec.n, explicit_phases(x, base.phase.phi_minus));
        return detail::evaluate_row(ctx, spec.regime, x, spec.delta);
      }
      case SweepAxis::PhiMinus: {
        const ScatterContext ctx = make_context(
            spec.params, spec.n, explicit_phases(base.phase.phi_plus, x));
        return detail::evaluate_row(ctx, spec.regime, x, spec.delta);
      }
      case SweepAxis::PhotonNumber: {
        const int n = n_lo + i;
        const ScatterContext ctx = spec.pinned ? make_context(spec.params, n, *spec.pinned)
                                               : make_context(spec.params, n);
        return detail::evaluate_row(ctx, spec.regime, x, spec.delta);
      }
    }
    throw std::logic_error("sweep: unknown axis");
  };

  const int threads = std::clamp(spec.threads, 1, std::max(1, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) table.rows[i] = eval(i);
  } else {
    // Contiguous index chunks, merged by position: the result cannot depend
    // on scheduling order.
    std::vector<std::future<void>> work;
    const int chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int begin = t * chunk, end = std::min(count, begin + chunk);
      if (begin >= end) break;
      work.push_back(std::async(std::launch::async, [&, begin, end] {
        for (int i = begin; i < end; ++i) table.rows[i] = eval(i);
      }));
    }
    for (auto& w : work) w.get();
  }
  return table;
}

// ---------------------------------------------------------------------------
// Conversion zeros

enum class ZeroKind {
  StaticZero,   // elastic-channel suppression: delta*tau + phi_- - phi_J = (2m+1) pi
  MovingZero,   // converted-channel suppression: delta*tau + phi_+ -+ phi_J = (2m+1) pi
  MarkovChannelSuppression,  // conversion vanishes on the whole window
};

struct ZeroReport {
  ZeroKind kind = ZeroKind::StaticZero;
  double delta_star = 0.0;  // NaN for whole-window suppression
  int m = 0;                // index in the matched (2m+1) pi condition
  double residual = 0.0;    // conversion at delta_star (window max if suppressed)
};

struct ZeroSearchSpec {
  double lo = -10.0, hi = 10.0;
  int grid = 20001;           // coarse samples used to seed candidates
  double threshold = 1e-10;   // conversion below this counts as zero
};

inline std::vector<ZeroReport> find_conversion_zeros(const ScatterContext& ctx, Regime regime,
                                                     const ZeroSearchSpec& zs,
                                                     Direction dir = Direction::LeftIncident) {
  if (!(zs.lo < zs.hi) || zs.grid < 3 || !(zs.threshold > 0.0))
    throw std::invalid_argument("find_conversion_zeros: bad search window");
  auto tc = [&](double d) { return scatter(ctx, regime, d, dir).conversion(); };

  const int grid = zs.grid;
  const double h = (zs.hi - zs.lo) / double(grid - 1);
  std::vector<double> val(grid);
  double vmax = 0.0;
  for (int i = 0; i < grid; ++i) {
    val[i] = tc(zs.lo + h * i);
    vmax = std::max(vmax, val[i]);
  }

  std::vector<ZeroReport> out;
  if (vmax < zs.threshold) {  // nothing converts anywhere on the window
    ZeroReport rep;
    rep.kind = ZeroKind::MarkovChannelSuppression;
    rep.delta_star = std::numeric_limits<double>::quiet_NaN();
    rep.residual = vmax;
    out.push_back(rep);
    return out;
  }

  const double tau_eff = (regime == Regime::Exact) ? ctx.params.tau : 0.0;
  const double phi_j = ctx.rates.phi_J;
  for (int i = 1; i + 1 < grid; ++i) {
    if (!(val[i] <= val[i - 1] && val[i] <= val[i + 1])) continue;
    if (val[i] > std::max(1e-2 * vmax, 1e3 * zs.threshold)) continue;  // shallow dip
    const double a = zs.lo + h * (i - 1), b = zs.lo + h * (i + 1);
    const double x0 = detail::golden_min(tc, a, b, 1e-12);
    if (!(tc(x0) < zs.threshold)) continue;  // dip does not reach zero

    // Bracket the threshold crossings around the zero and bisect them; the
    // midpoint cancels the first-order asymmetry of the dip walls.
    double left = x0, right = x0;
    while (left > zs.lo && tc(left) < zs.threshold) left -= h;
    while (right < zs.hi && tc(right) < zs.threshold) right += h;
    left = std::max(left, zs.lo);
    right = std::min(right, zs.hi);
    const double xl = (tc(left) >= zs.threshold)
                          ? detail::bisect_level(tc, left, x0, zs.threshold, 1e-13)
                          : left;
    const double xr = (tc(right) >= zs.threshold)
                          ? detail::bisect_level(tc, x0, right, zs.threshold, 1e-13)
                          : right;
    ZeroReport rep;
    rep.delta_star = 0.5 * (xl + xr);
    rep.residual = tc(rep.delta_star);

    // Classify by which channel condition sits closer to an odd multiple of
    // pi at delta_star.
    const double a_minus = rep.delta_star * tau_eff + ctx.phase.phi_minus;
    const double a_plus = rep.delta_star * tau_eff + ctx.phase.phi_plus;
    const double d_minus = std::abs(mod_2pi(a_minus - phi_j - pi));
    const double d_plus = std::max(std::abs(mod_2pi(a_plus - phi_j - pi)),
                                   std::abs(mod_2pi(a_plus + phi_j - pi)));
    if (d_minus <= d_plus) {
      rep.kind = ZeroKind::StaticZero;
      rep.m = int(std::lround(((a_minus - phi_j) / pi - 1.0) / 2.0));
    } else {
      rep.kind = ZeroKind::MovingZero;
      rep.m = int(std::lround(((a_plus - phi_j) / pi - 1.0) / 2.0));
    }
    if (!out.empty() && std::abs(out.back().delta_star - rep.delta_star) < 1e-6)
      continue;  // same zero seeded from two adjacent samples
    out.push_back(rep);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Contrast extrema

struct ExtremumReport {
  double delta = 0.0;
  double value = 0.0;  // I2 at the extremum
  bool is_max = false;
};

inline std::vector<ExtremumReport> find_contrast_extrema(const ScatterContext& ctx,
                                                         Regime regime, double lo, double hi,
                                                         int min_grid = 2001) {
  if (!(lo < hi) || min_grid < 3)
    throw std::invalid_argument("find_contrast_extrema: bad search window");
  auto i2 = [&](double d) {
    const ScatteringResult l = scatter(ctx, regime, d, Direction::LeftIncident);
    const ScatteringResult r = scatter(ctx, regime, d, Direction::RightIncident);
    return contrasts(l, r).i2;
  };

  // Resolve both structure scales: the linewidth and, in the retarded
  // regime, the phase-winding period pi/tau; sample at least 20 points per
  // scale so no oscillation lobe is skipped.
  double scale = hi - lo;
  const double decay = std::abs(markov_effective_decay(ctx.rates, ctx.phase));
  if (decay > 0.0) scale = std::min(scale, decay);
  if (regime == Regime::Exact && ctx.params.tau > 0.0)
    scale = std::min(scale, pi / ctx.params.tau);
  int count = std::max(min_grid, int(std::ceil((hi - lo) / (scale / 20.0))) + 1);
  count = std::min(count, 400001);

  const double h = (hi - lo) / double(count - 1);
  std::vector<double> val(count);
  for (int i = 0; i < count; ++i) val[i] = i2(lo + h * i);

  std::vector<ExtremumReport> out;
  for (int i = 1; i + 1 < count; ++i) {
    const bool is_max = val[i] >= val[i - 1] && val[i] >= val[i + 1] &&
                        (val[i] > val[i - 1] || val[i] > val[i + 1]);
    const bool is_min = val[i] <= val[i - 1] && val[i] <= val[i + 1] &&
                        (val[i] < val[i - 1] || val[i] < val[i + 1]);
    if (!is_max && !is_min) continue;
    const double a = lo + h * (i - 1), b = lo + h * (i + 1);
    ExtremumReport rep;
    rep.is_max = is_max;
    rep.delta = is_max ? detail::golden_min([&](double d) { return -i2(d); }, a, b, 1e-10)
                       : detail::golden_min(i2, a, b, 1e-10);
    rep.value = i2(rep.delta);
    if (!out.empty() && std::abs(out.back().delta - rep.delta) < 1e-8) continue;
    out.push_back(rep);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ideal-nonreciprocity scan

struct UnityConversionHit {
  int n = 0;
  double phi_j = 0.0;
  double delta = 0.0;
  double i2 = 0.0;
};

// Scan photon number and coupling-phase difference; keep every (n, phi_J)
// whose strongest contrast extremum reaches the threshold in magnitude.
// Sorted by |i2| descending (ties: smaller n, then smaller phi_J).
inline std::vector<UnityConversionHit> find_unity_conversion(const SystemParams& base,
                                                             Regime regime, int n_lo, int n_hi,
                                                             int phi_count, double threshold,
                                                             double delta_lo, double delta_hi) {
  if (n_lo < 0 || n_hi < n_lo || phi_count < 2 || !(delta_lo < delta_hi))
    throw std::invalid_argument("find_unity_conversion: bad scan ranges");
  std::vector<UnityConversionHit> hits;
  for (int n = n_lo; n <= n_hi; ++n) {
    for (int k = 0; k < phi_count; ++k) {
      const double phi_j = -pi + 2.0 * pi * double(k) / double(phi_count - 1);
      SystemParams p = base;
      p.phi2 = p.phi1 + phi_j;
      const ScatterContext ctx = make_context(p, n);
      const std::vector<ExtremumReport> ext =
          find_contrast_extrema(ctx, regime, delta_lo, delta_hi, 1001);
      const ExtremumReport* best = nullptr;
      for (const ExtremumReport& e : ext)
        if (!best || std::abs(e.value) > std::abs(best->value)) best = &e;
      if (best && std::abs(best->value) >= threshold)
        hits.push_back({n, phi_j, best->delta, best->value});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const UnityConversionHit& a, const UnityConversionHit& b) {
    if (std::abs(a.i2) != std::abs(b.i2)) return std::abs(a.i2) > std::abs(b.i2);
    if (a.n != b.n) return a.n < b.n;
    return a.phi_j < b.phi_j;
  });
  return hits;
}

}  // namespace gascatter

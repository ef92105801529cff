#pragma once

// Single-photon scattering amplitudes for the two-point giant atom with a
// dressed resonator doublet. The photon enters in the n_- channel with
// detuning delta from the |e> <-> |n_-> transition; it leaves elastically
// (t_minus, r_minus) or frequency-converted into the n_+ channel (r_plus,
// t_plus, shifted by lambda_plus - lambda_minus).
//
// Two engines:
//  - exact: retardation kept, phase factors e^{i delta tau} resolved per
//    detuning (non-Markovian).
//  - markov: e^{i delta tau} -> 1, valid for tau << 1/Gamma; spectra become
//    Lorentzian around the Lamb shift.
//
// The formulas are transcribed term by term for both incidence directions;
// the left/right asymmetry in the t_minus numerator (conj(J1-)*J2- versus
// J1-*conj(J2-)) is physical and must not be "simplified" away.

#include <vector>

#include "system.hpp"

namespace gascatter {

enum class Direction { LeftIncident, RightIncident };
enum class Regime { Exact, Markov };

// |denominator| below this is treated as an exact scattering pole (a bound
// state in the continuum hit dead-on); results are flagged, not NaN.
inline constexpr double pole_eps = 1e-300;

// Strictly increasing, finite detuning samples (units of Gamma).
struct DetuningGrid {
  std::vector<double> values;

  static DetuningGrid linspace(double lo, double hi, int count) {
    if (count < 2 || !(lo < hi)) throw std::invalid_argument("DetuningGrid: need count >= 2 and lo < hi");
    DetuningGrid g;
    g.values.resize(count);
    for (int i = 0; i < count; ++i)
      g.values[i] = lo + (hi - lo) * double(i) / double(count - 1);
    return g;
  }
};

inline void validate(const DetuningGrid& g) {
  if (g.values.empty()) throw std::invalid_argument("DetuningGrid: empty");
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    if (!std::isfinite(g.values[i])) throw std::invalid_argument("DetuningGrid: non-finite value");
    if (i > 0 && !(g.values[i] > g.values[i - 1]))
      throw std::invalid_argument("DetuningGrid: values must be strictly increasing");
  }
}

struct ScatteringResult {
  double delta = 0.0;
  Direction direction = Direction::LeftIncident;
  Regime regime = Regime::Exact;
  cplx t_minus, r_minus, r_plus, t_plus;
  bool pole_flagged = false;  // true: amplitudes zeroed, point sits on a pole

  double transmittance() const { return std::norm(t_minus); }  // T_-
  double reflectance() const { return std::norm(r_minus); }    // R_-
  double conversion() const { return std::norm(r_plus) + std::norm(t_plus); }  // T_c
  double flux() const { return transmittance() + reflectance() + conversion(); }
};

// Directional contrasts: i1 = T_- - T~_-, i2 = T_c - T~_c; flux conservation
// forces i1 = -i2.
struct ContrastResult {
  double delta = 0.0;
  double i1 = 0.0;
  double i2 = 0.0;
};

namespace detail {

// Shared denominator: delta + i(Gamma_+ + gamma_+ e^{iA+}) + i(Gamma_- + gamma_- e^{iA-}),
// where A_pm is Delta*tau + phi_pm in the exact engine and phi_pm in Markov.
inline cplx denominator(const ChannelRates& r, double delta, cplx e_ap, cplx e_am) {
  return delta + iu * (r.gamma_e_plus + r.gamma_nl_plus * e_ap)
               + iu * (r.gamma_e_minus + r.gamma_nl_minus * e_am);
}

// Both engines share one amplitude skeleton once the channel phase arguments
// a_plus/a_minus are fixed; each public entry point fixes them per its regime.
inline ScatteringResult amplitudes(const ChannelRates& r, const PhaseSet& ph,
                                   double a_plus, double a_minus, double delta,
                                   Direction dir, Regime regime) {
  ScatteringResult out;
  out.delta = delta;
  out.direction = dir;
  out.regime = regime;

  const cplx e_ap = std::exp(iu * a_plus);
  const cplx e_am = std::exp(iu * a_minus);
  const cplx d = denominator(r, delta, e_ap, e_am);
  if (std::abs(d) < pole_eps) {  // exact pole: bound state hit dead-on
    out.pole_flagged = true;
    return out;
  }

  const double sin_am = std::sin(a_minus);
  const double j1m2 = std::norm(r.j1_minus);
  const double j2m2 = std::norm(r.j2_minus);

  if (dir == Direction::LeftIncident) {
    out.t_minus = (delta - 2.0 * std::conj(r.j1_minus) * r.j2_minus / r.v * sin_am
                   + iu * r.gamma_e_plus + iu * r.gamma_nl_plus * e_ap) / d;
    out.r_minus = -(iu * r.gamma_nl_minus
                    + iu / r.v * (j1m2 * std::conj(e_am) + j2m2 * e_am)) / d;
    const cplx minus_factor = std::conj(r.j1_minus) + std::conj(r.j2_minus) * e_am;
    out.r_plus = (iu * std::exp(-iu * ph.phi_n) / r.v)
                 * (r.j1_plus * std::conj(e_ap) + r.j2_plus) * minus_factor / d;
    out.t_plus = (iu * std::exp(-iu * ph.phi_n) / r.v)
                 * (r.j1_plus + r.j2_plus * std::conj(e_ap)) * minus_factor / d;
  } else {
    out.t_minus = (delta - 2.0 * r.j1_minus * std::conj(r.j2_minus) / r.v * sin_am
                   + iu * r.gamma_e_plus + iu * r.gamma_nl_plus * e_ap) / d;
    out.r_minus = -(iu * r.gamma_nl_minus
                    + iu / r.v * (j1m2 * e_am + j2m2 * std::conj(e_am))) / d;
    const cplx minus_factor = std::conj(r.j1_minus) + std::conj(r.j2_minus) * std::conj(e_am);
    out.r_plus = (iu * std::exp(iu * ph.phi_n) / r.v)
                 * (r.j1_plus * e_ap + r.j2_plus) * minus_factor / d;
    out.t_plus = (iu * std::exp(iu * ph.phi_n) / r.v)
                 * (r.j1_plus + r.j2_plus * e_ap) * minus_factor / d;
  }
  return out;
}

}  // namespace detail

// Exact (retarded) amplitudes: phase arguments are Delta*tau + phi_pm.
inline ScatteringResult scatter_exact(const ChannelRates& r, const PhaseSet& ph,
                                      double tau, double delta, Direction dir) {
  if (tau < 0.0) throw std::invalid_argument("scatter_exact: tau must be >= 0");
  return detail::amplitudes(r, ph, delta * tau + ph.phi_plus,
                            delta * tau + ph.phi_minus, delta, dir, Regime::Exact);
}

// Markov approximation: e^{i delta tau} -> 1, arguments reduce to phi_pm.
inline ScatteringResult scatter_markov(const ChannelRates& r, const PhaseSet& ph,
                                       double delta, Direction dir) {
  return detail::amplitudes(r, ph, ph.phi_plus, ph.phi_minus, delta, dir, Regime::Markov);
}

// Detuning-dependent Lamb shift and effective decay of the exact engine; the
// denominator factors as (delta - lamb_shift) + i * effective_decay.
inline double lamb_shift_exact(const ChannelRates& r, const PhaseSet& ph, double tau, double delta) {
  return r.gamma_nl_plus * std::sin(delta * tau + ph.phi_plus)
       + r.gamma_nl_minus * std::sin(delta * tau + ph.phi_minus);
}

inline double effective_decay_exact(const ChannelRates& r, const PhaseSet& ph, double tau, double delta) {
  return r.gamma_e_plus + r.gamma_nl_plus * std::cos(delta * tau + ph.phi_plus)
       + r.gamma_e_minus + r.gamma_nl_minus * std::cos(delta * tau + ph.phi_minus);
}

// Markov limits: detuning-independent, so conversion is an exact Lorentzian
// of half-width markov_effective_decay centered at markov_lamb_shift.
inline double markov_lamb_shift(const ChannelRates& r, const PhaseSet& ph) {
  return r.gamma_nl_plus * std::sin(ph.phi_plus) + r.gamma_nl_minus * std::sin(ph.phi_minus);
}

inline double markov_effective_decay(const ChannelRates& r, const PhaseSet& ph) {
  return r.gamma_e_plus + r.gamma_nl_plus * std::cos(ph.phi_plus)
       + r.gamma_e_minus + r.gamma_nl_minus * std::cos(ph.phi_minus);
}

// Pair a left- and a right-incident result taken at the same point. Throws
// std::invalid_argument if directions, regimes or detunings do not line up.
inline ContrastResult contrasts(const ScatteringResult& left, const ScatteringResult& right) {
  if (left.direction != Direction::LeftIncident || right.direction != Direction::RightIncident)
    throw std::invalid_argument("contrasts: need one LeftIncident and one RightIncident result");
  if (left.regime != right.regime)
    throw std::invalid_argument("contrasts: mixed regimes");
  if (left.delta != right.delta)
    throw std::invalid_argument("contrasts: detunings differ");
  ContrastResult c;
  c.delta = left.delta;
  c.i1 = left.transmittance() - right.transmittance();
  c.i2 = left.conversion() - right.conversion();
  return c;
}

// Bundle of everything scattering needs at fixed (params, n); build once,
// evaluate for many detunings.
struct ScatterContext {
  SystemParams params;
  DressedLevel level;
  ChannelRates rates;
  PhaseSet phase;
};

inline ScatterContext make_context(const SystemParams& p, int n) {
  validate(p);
  ScatterContext c;
  c.params = p;
  c.params.n = n;
  c.level = dressed_level(p, n);
  c.rates = channel_rates(p, c.level);
  c.phase = phases(p, c.level);
  return c;
}

// Same, but with the channel phases pinned by hand (figure recipes).
inline ScatterContext make_context(const SystemParams& p, int n, const PhaseSet& pinned) {
  ScatterContext c = make_context(p, n);
  c.phase = pinned;
  return c;
}

inline ScatteringResult scatter(const ScatterContext& c, Regime regime, double delta, Direction dir) {
  return regime == Regime::Exact
             ? scatter_exact(c.rates, c.phase, c.params.tau, delta, dir)
             : scatter_markov(c.rates, c.phase, delta, dir);
}

}  // namespace gascatter

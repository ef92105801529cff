#pragma once

// Built-in run recipes (`--preset NAME`). Each returns a complete config
// document that can be dumped, edited and fed back through --config. All
// recipes use Gamma = 1 units: |J1| = |J2| = 1/sqrt(2), v = 1, so detunings
// read in linewidths and times in lifetimes.
//
// Memoryless-regime recipes (fig2*, fig3*, fig4*) fix the channel phases or
// use a short delay tau = 0.1 pi; retarded-regime recipes (fig5*, fig6*) use
// tau = pi, where the delay is comparable to the lifetime.

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"

#include "config.hpp"

namespace gascatter {

namespace detail {

// Resonant doublet in Gamma = 1 units; frequencies only matter through the
// phases when they are pinned, so small placeholder values are used.
inline json preset_base() {
  const double j = 1.0 / std::sqrt(2.0);
  return json{{"params", json{{"omega_e", 10.0}, {"omega_f", 5.0}, {"omega_c", 5.0},
                              {"g", 1.0},        {"j1_mag", j},    {"j2_mag", j},
                              {"phi1", 0.0},     {"phi2", 0.0},    {"v", 1.0},
                              {"tau", 0.0}}},
              {"n", 1},
              {"regime", "markov"},
              {"axis", "delta"},
              {"lo", -10.0},
              {"hi", 10.0},
              {"count", 1001},
              {"delta", 0.0}};
}

// Optical-scale transition with a resonant resonator (omega_f = omega_c), the
// physically parameterized ladder used by the photon-number studies.
inline json preset_ladder(double omega_e, double g, double tau, double phi_j, int n) {
  json doc = preset_base();
  doc["params"]["omega_e"] = omega_e;
  doc["params"]["omega_f"] = 1000.0;
  doc["params"]["omega_c"] = 1000.0;
  doc["params"]["g"] = g;
  doc["params"]["phi2"] = phi_j;
  doc["params"]["tau"] = tau;
  doc["n"] = n;
  return doc;
}

}  // namespace detail

// Names in presentation order.
inline std::vector<std::string> preset_names() {
  return {"fig2a", "fig2b", "fig2c", "fig3n1", "fig3n9", "fig3n25", "fig4n4", "fig4n16",
          "fig5a", "fig5c", "fig6n1", "fig6n4", "fig6n9", "fig6n12", "fig6n16"};
}

inline json preset_config(const std::string& name) {
  // fig2*: memoryless regime with pinned channel phases, n = 1.
  if (name == "fig2a") {  // phi_- = pi: minus channel dark, whole-line T_- = 1
    json doc = detail::preset_base();
    doc["pinned"] = json{{"phi_plus", pi / 3.0}, {"phi_minus", pi}};
    return doc;
  }
  if (name == "fig2b") {  // phi_+ = phi_- = pi/3: conversion peak reaches 1/2
    json doc = detail::preset_base();
    doc["pinned"] = json{{"phi_plus", pi / 3.0}, {"phi_minus", pi / 3.0}};
    return doc;
  }
  if (name == "fig2c") {  // phi_+ = pi: plus channel dark, whole-line T_c = 0
    json doc = detail::preset_base();
    doc["pinned"] = json{{"phi_plus", pi}, {"phi_minus", pi / 3.0}};
    return doc;
  }

  // fig3*: in-phase couplings, omega_e = 1015, g = 15, tau = 0.1 pi. The
  // minus-channel phase parity alternates with n: transparent lines at
  // n = 1 and 25, a full reflection window at n = 9, conversion dead in all.
  if (name == "fig3n1") return detail::preset_ladder(1015.0, 15.0, 0.1 * pi, 0.0, 1);
  if (name == "fig3n9") return detail::preset_ladder(1015.0, 15.0, 0.1 * pi, 0.0, 9);
  if (name == "fig3n25") return detail::preset_ladder(1015.0, 15.0, 0.1 * pi, 0.0, 25);

  // fig4*: quarter-turn coupling phase, g = 5: contrast hits +1 at n = 4 and
  // -1 at n = 16 at zero detuning.
  if (name == "fig4n4") return detail::preset_ladder(1015.0, 5.0, 0.1 * pi, pi / 2.0, 4);
  if (name == "fig4n16") return detail::preset_ladder(1015.0, 5.0, 0.1 * pi, pi / 2.0, 16);

  // fig5*: retarded regime, tau = pi, pinned phases, n = 1. The grid step
  // 0.01 lands exactly on the integer and half-integer zero positions.
  if (name == "fig5a" || name == "fig5c") {
    json doc = detail::preset_base();
    doc["regime"] = "exact";
    doc["params"]["tau"] = pi;
    doc["pinned"] = json{{"phi_plus", name == "fig5a" ? pi : pi / 2.0}, {"phi_minus", 0.0}};
    doc["lo"] = -4.5;
    doc["hi"] = 4.5;
    doc["count"] = 901;
    return doc;
  }

  // fig6*: retarded ladder, omega_e = 995.5, g = 5.5, tau = pi, phi_J = pi/2:
  // contrast reaches +1 (n = 4) and -1 (n = 16); n = 9 mirrors n = 1.
  for (int n : {1, 4, 9, 12, 16}) {
    if (name == "fig6n" + std::to_string(n)) {
      json doc = detail::preset_ladder(995.5, 5.5, pi, pi / 2.0, n);
      doc["regime"] = "exact";
      doc["lo"] = -3.0;
      doc["hi"] = 3.0;
      doc["count"] = 601;
      return doc;
    }
  }

  throw ConfigError("unknown preset \"" + name + "\" (available: fig2a fig2b fig2c fig3n1 "
                    "fig3n9 fig3n25 fig4n4 fig4n16 fig5a fig5c fig6n1 fig6n4 fig6n9 fig6n12 "
                    "fig6n16)");
}

}  // namespace gascatter

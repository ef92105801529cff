#pragma once

// Parameters and derived single-excitation structure of a V-type giant atom
// (levels |g>, |e>, |f>) coupled to a 1D waveguide at two points x = -d/2,
// +d/2 and to a single-mode resonator holding n photons.
//
// Conventions:
//  - any consistent unit system is accepted; normalized() rescales so that
//    the total waveguide decay Gamma = (|J1|^2+|J2|^2)/v equals 1 and v = 1
//    (frequencies then read in units of Gamma, times in 1/Gamma).
//  - propagation phases are kept raw (they can be ~1000*pi when omega_e is
//    optical-scale); mod_2pi() provides the reduced view in [-pi, pi].

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace gascatter {

inline constexpr double pi = 3.141592653589793238462643383279502884;

using cplx = std::complex<double>;
inline constexpr cplx iu{0.0, 1.0};  // imaginary unit

// Reduce an angle to [-pi, pi] (remainder of x / 2pi).
inline double mod_2pi(double x) { return std::remainder(x, 2.0 * pi); }

// Bare system parameters: atom frequencies, resonator, two-point coupling.
struct SystemParams {
  double omega_e = 0.0;  // |g> <-> |e> transition frequency
  double omega_f = 0.0;  // |g> <-> |f> transition frequency
  double omega_c = 0.0;  // resonator mode frequency
  double g = 0.0;        // |f> <-> resonator exchange coupling, >= 0
  double j1_mag = 0.0;   // |J1|, waveguide coupling magnitude at x = -d/2
  double j2_mag = 0.0;   // |J2|, waveguide coupling magnitude at x = +d/2
  double phi1 = 0.0;     // arg J1
  double phi2 = 0.0;     // arg J2
  double v = 1.0;        // waveguide group velocity, > 0
  double tau = 0.0;      // photon travel time d/v between points, >= 0
  int n = 0;             // resonator photon number; 0 = bare two-level case

  double omega_fc() const { return omega_f - omega_c; }  // resonator detuning of |f>
  double phi_J() const { return phi2 - phi1; }            // coupling phase difference
  double gamma_total() const { return (j1_mag * j1_mag + j2_mag * j2_mag) / v; }
  cplx j1() const { return std::polar(j1_mag, phi1); }
  cplx j2() const { return std::polar(j2_mag, phi2); }
};

// Throws std::invalid_argument on unphysical input. The degenerate dressed
// doublet (n >= 1 with g = 0 and omega_f = omega_c) is rejected separately
// by dressed_level(), where the mixing angle becomes undefined.
inline void validate(const SystemParams& p) {
  auto bad = [](const std::string& what) { throw std::invalid_argument("SystemParams: " + what); };
  for (double x : {p.omega_e, p.omega_f, p.omega_c, p.g, p.j1_mag, p.j2_mag,
                   p.phi1, p.phi2, p.v, p.tau})
    if (!std::isfinite(x)) bad("non-finite field");
  if (p.g < 0.0) bad("g must be >= 0");
  if (p.j1_mag < 0.0 || p.j2_mag < 0.0) bad("coupling magnitudes must be >= 0");
  if (p.j1_mag == 0.0 && p.j2_mag == 0.0) bad("at least one waveguide coupling must be nonzero");
  if (p.v <= 0.0) bad("v must be > 0");
  if (p.tau < 0.0) bad("tau must be >= 0");
  if (p.n < 0) bad("photon number n must be >= 0");
}

// Rescale to Gamma = 1, v = 1 without changing any observable: frequencies
// divide by Gamma, times multiply by Gamma, couplings divide by sqrt(Gamma*v).
inline SystemParams normalized(const SystemParams& p) {
  validate(p);
  const double G = p.gamma_total();
  const double js = std::sqrt(G * p.v);
  SystemParams q = p;
  q.omega_e = p.omega_e / G;
  q.omega_f = p.omega_f / G;
  q.omega_c = p.omega_c / G;
  q.g = p.g / G;
  q.j1_mag = p.j1_mag / js;
  q.j2_mag = p.j2_mag / js;
  q.v = 1.0;
  q.tau = p.tau * G;
  return q;
}

// One dressed doublet |n+->, |n+> of the |f>-resonator ladder at fixed photon
// number n: |n+> = sin(theta/2)|g,n> + cos(theta/2)|f,n-1> with energy
// lambda_plus = n*omega_c + nu_plus, and orthogonal partner |n->.
struct DressedLevel {
  int n = 0;
  double theta = 0.0;     // mixing angle in [0, pi]; pi/2 at omega_f = omega_c
  double nu_plus = 0.0;   // upper doublet shift, >= 0
  double nu_minus = 0.0;  // lower doublet shift, <= 0
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
};

// Diagonalize the {|g,n>, |f,n-1>} block. Stable for omega_fc >> g: nu_minus
// comes from the product rule nu_plus * nu_minus = -n g^2, not subtraction.
inline DressedLevel dressed_level(const SystemParams& p, int n) {
  if (n < 0) throw std::invalid_argument("dressed_level: n must be >= 0");
  DressedLevel d;
  d.n = n;
  if (n == 0) return d;  // no |f,-1> partner: bare |g,0>, theta = 0 by convention
  const double wfc = p.omega_fc();
  const double coupling = 2.0 * std::sqrt(double(n)) * p.g;
  if (p.g == 0.0 && wfc == 0.0)
    throw std::invalid_argument("dressed_level: degenerate doublet (g = 0 and omega_f = omega_c)");
  const double split = std::hypot(wfc, coupling);
  d.theta = std::atan2(coupling, wfc);  // branch: theta in [0, pi], sin(theta) >= 0
  // Stable quadratic roots: build the larger-magnitude shift by addition,
  // recover the other from nu_plus * nu_minus = -n g^2 (no cancellation).
  if (wfc >= 0.0) {
    d.nu_plus = 0.5 * (wfc + split);
    d.nu_minus = -double(n) * p.g * p.g / d.nu_plus;
  } else {
    d.nu_minus = 0.5 * (wfc - split);
    d.nu_plus = -double(n) * p.g * p.g / d.nu_minus;
  }
  d.lambda_plus = n * p.omega_c + d.nu_plus;
  d.lambda_minus = n * p.omega_c + d.nu_minus;
  return d;
}

// Decay and interference rates of |e> into the two dressed channels, plus the
// channel-projected couplings J_{i,alpha} = J_i * {sin, cos}(theta/2) that
// enter scattering numerators.
struct ChannelRates {
  double gamma_total = 0.0;    // Gamma = (|J1|^2+|J2|^2)/v
  double gamma_e_plus = 0.0;   // Gamma_+ = Gamma sin^2(theta/2)
  double gamma_e_minus = 0.0;  // Gamma_- = Gamma cos^2(theta/2)
  double gamma_nl_plus = 0.0;  // gamma_+ = (2|J1 J2|/v) sin^2(theta/2) cos(phi_J)
  double gamma_nl_minus = 0.0; // gamma_- = (2|J1 J2|/v) cos^2(theta/2) cos(phi_J)
  double phi_J = 0.0;          // phi_2 - phi_1
  cplx j1_plus, j2_plus;       // J_i sin(theta/2)
  cplx j1_minus, j2_minus;     // J_i cos(theta/2)
  double v = 1.0;
};

inline ChannelRates channel_rates(const SystemParams& p, const DressedLevel& d) {
  validate(p);
  ChannelRates r;
  const double s = std::sin(0.5 * d.theta);
  const double c = std::cos(0.5 * d.theta);
  r.gamma_total = p.gamma_total();
  r.gamma_e_plus = r.gamma_total * s * s;
  r.gamma_e_minus = r.gamma_total * c * c;
  r.phi_J = p.phi_J();
  const double nl = 2.0 * p.j1_mag * p.j2_mag / p.v * std::cos(r.phi_J);
  r.gamma_nl_plus = nl * s * s;
  r.gamma_nl_minus = nl * c * c;
  r.j1_plus = p.j1() * s;
  r.j2_plus = p.j2() * s;
  r.j1_minus = p.j1() * c;
  r.j2_minus = p.j2() * c;
  r.v = p.v;
  return r;
}

// How a PhaseSet was produced: from physical parameters, or pinned directly
// (figure recipes often fix phi_+- instead of omega_e and tau).
enum class PhaseMode { Physical, Explicit };

// Propagation phases accumulated between the coupling points for the two
// channels. Raw values, not reduced; phi_n = phi_minus - phi_plus exactly.
struct PhaseSet {
  double phi_plus = 0.0;   // (omega_e - nu_plus) * tau
  double phi_minus = 0.0;  // (omega_e - nu_minus) * tau
  double phi_n = 0.0;      // (nu_plus - nu_minus) * tau, channel phase gap
  PhaseMode mode = PhaseMode::Physical;

  double phi_plus_mod() const { return mod_2pi(phi_plus); }
  double phi_minus_mod() const { return mod_2pi(phi_minus); }
  double phi_n_mod() const { return mod_2pi(phi_n); }
};

inline PhaseSet phases(const SystemParams& p, const DressedLevel& d) {
  PhaseSet ph;
  ph.phi_plus = (p.omega_e - d.nu_plus) * p.tau;
  ph.phi_minus = (p.omega_e - d.nu_minus) * p.tau;
  ph.phi_n = ph.phi_minus - ph.phi_plus;  // defined as the exact difference
  ph.mode = PhaseMode::Physical;
  return ph;
}

// Pin the channel phases directly. The two-argument form keeps the exact
// relation phi_n = phi_minus - phi_plus; the three-argument form lets tests
// move phi_n independently (observables must not change).
inline PhaseSet explicit_phases(double phi_plus, double phi_minus) {
  return PhaseSet{phi_plus, phi_minus, phi_minus - phi_plus, PhaseMode::Explicit};
}

inline PhaseSet explicit_phases(double phi_plus, double phi_minus, double phi_n) {
  return PhaseSet{phi_plus, phi_minus, phi_n, PhaseMode::Explicit};
}

}  // namespace gascatter

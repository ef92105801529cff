#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gascatter/analysis.hpp"

using namespace gascatter;

namespace {

// Gamma = 1 units, resonant doublet.
SystemParams unit_params() {
  SystemParams p;
  p.omega_e = 10.0;
  p.omega_f = 5.0;
  p.omega_c = 5.0;
  p.g = 1.0;
  p.j1_mag = p.j2_mag = 1.0 / std::sqrt(2.0);
  p.v = 1.0;
  p.tau = 0.0;
  p.n = 1;
  return p;
}

// Retarded ladder with optical-scale transition frequency: tau Gamma = pi,
// channel phases pinned to phi_+ = pi, phi_- = 0.
ScatterContext retarded_context(double phi_j) {
  SystemParams p = unit_params();
  p.tau = pi;
  p.phi2 = p.phi1 + phi_j;
  return make_context(p, 1, explicit_phases(pi, 0.0));
}

double contrast_at(const ScatterContext& ctx, Regime regime, double delta) {
  const ScatteringResult l = scatter(ctx, regime, delta, Direction::LeftIncident);
  const ScatteringResult r = scatter(ctx, regime, delta, Direction::RightIncident);
  return contrasts(l, r).i2;
}

bool rows_equal(const SpectrumRow& a, const SpectrumRow& b) {
  return a.axis == b.axis && a.t_minus == b.t_minus && a.r_minus == b.r_minus &&
         a.t_conv == b.t_conv && a.t_minus_rev == b.t_minus_rev &&
         a.r_minus_rev == b.r_minus_rev && a.t_conv_rev == b.t_conv_rev && a.i1 == b.i1 &&
         a.i2 == b.i2 && a.lamb_shift == b.lamb_shift && a.eff_decay == b.eff_decay &&
         a.pole == b.pole;
}

}  // namespace

TEST_CASE("conversion zeros: in-phase couplings, zeros at every integer detuning") {
  // tau = pi, phi_+ = pi, phi_- = 0, phi_J = 0: the elastic-channel condition
  // puts zeros at odd detunings (static), the converted-channel one at even
  // detunings (moving).
  const ScatterContext ctx = retarded_context(0.0);
  ZeroSearchSpec zs;
  zs.lo = -4.4;
  zs.hi = 4.4;
  const std::vector<ZeroReport> zeros = find_conversion_zeros(ctx, Regime::Exact, zs);
  REQUIRE(zeros.size() == 9);
  for (int k = 0; k < 9; ++k) {
    const int expected = k - 4;
    CHECK(zeros[k].delta_star == doctest::Approx(double(expected)).epsilon(2e-9));
    CHECK(zeros[k].residual < 1e-10);
    if (expected % 2 == 0) {
      CHECK(zeros[k].kind == ZeroKind::MovingZero);
      CHECK(zeros[k].m == expected / 2);  // delta*tau + phi_+ = (2m+1) pi
    } else {
      CHECK(zeros[k].kind == ZeroKind::StaticZero);
      CHECK(zeros[k].m == (expected - 1) / 2);  // delta*tau + phi_- = (2m+1) pi
    }
  }
}

TEST_CASE("conversion zeros: antiphase couplings swap the two families") {
  const ScatterContext ctx = retarded_context(pi);
  ZeroSearchSpec zs;
  zs.lo = -4.4;
  zs.hi = 4.4;
  const std::vector<ZeroReport> zeros = find_conversion_zeros(ctx, Regime::Exact, zs);
  REQUIRE(zeros.size() == 9);
  for (int k = 0; k < 9; ++k) {
    const int expected = k - 4;
    CHECK(zeros[k].delta_star == doctest::Approx(double(expected)).epsilon(2e-9));
    CHECK(zeros[k].kind ==
          (expected % 2 == 0 ? ZeroKind::StaticZero : ZeroKind::MovingZero));
  }
}

TEST_CASE("conversion zeros: generic coupling phase leaves only the static family") {
  // phi_J = pi/2: converted-channel zeros need phi_J = m pi and disappear;
  // the elastic family sits at delta = 1.5 + 2m.
  const ScatterContext ctx = retarded_context(pi / 2);
  ZeroSearchSpec zs;
  zs.lo = -4.4;
  zs.hi = 4.4;
  const std::vector<ZeroReport> zeros = find_conversion_zeros(ctx, Regime::Exact, zs);
  REQUIRE(zeros.size() == 4);
  const double expected[] = {-2.5, -0.5, 1.5, 3.5};
  const int expected_m[] = {-2, -1, 0, 1};
  for (int k = 0; k < 4; ++k) {
    CHECK(zeros[k].delta_star == doctest::Approx(expected[k]).epsilon(2e-9));
    CHECK(zeros[k].kind == ZeroKind::StaticZero);
    CHECK(zeros[k].m == expected_m[k]);
  }
  // Brute-force cross-check: every deep dip on a dense grid must belong to a
  // reported zero (no zero missed by the coarse seeding).
  const int dense = 100001;
  for (int i = 0; i < dense; ++i) {
    const double d = -4.4 + 8.8 * double(i) / double(dense - 1);
    if (scatter(ctx, Regime::Exact, d, Direction::LeftIncident).conversion() < 1e-8) {
      double nearest = 1e9;
      for (const ZeroReport& z : zeros) nearest = std::min(nearest, std::abs(d - z.delta_star));
      CHECK(nearest < 1e-3);
    }
  }
}

TEST_CASE("conversion zeros: memoryless regime has none off the suppression line") {
  const ScatterContext ctx = retarded_context(pi / 2);
  ZeroSearchSpec zs;
  zs.lo = -4.4;
  zs.hi = 4.4;
  CHECK(find_conversion_zeros(ctx, Regime::Markov, zs).empty());
}

TEST_CASE("conversion zeros: whole-window suppression is reported as such") {
  // Markov with phi_- = phi_J - pi: the elastic factor of the converted
  // numerator cancels identically, so conversion vanishes for every detuning.
  SystemParams p = unit_params();
  p.phi2 = p.phi1 + pi / 2;
  const ScatterContext ctx = make_context(p, 1, explicit_phases(pi, -pi / 2));
  ZeroSearchSpec zs;
  const std::vector<ZeroReport> zeros = find_conversion_zeros(ctx, Regime::Markov, zs);
  REQUIRE(zeros.size() == 1);
  CHECK(zeros[0].kind == ZeroKind::MarkovChannelSuppression);
  CHECK(std::isnan(zeros[0].delta_star));
  CHECK(zeros[0].residual < 1e-30);
  // Empty resonator: conversion is identically zero, same report, exactly 0.
  SystemParams q = unit_params();
  const std::vector<ZeroReport> zeros0 =
      find_conversion_zeros(make_context(q, 0), Regime::Exact, zs);
  REQUIRE(zeros0.size() == 1);
  CHECK(zeros0[0].kind == ZeroKind::MarkovChannelSuppression);
  CHECK(zeros0[0].residual == 0.0);
}

TEST_CASE("contrast extrema: memoryless ladder peaks at +-1 for n = 4 / 16") {
  // omega_e = 1015, g = 5, tau Gamma = 0.1 pi, phi_J = pi/2. The minus-channel
  // phase lands on (m + 1/2) pi with opposite parity for n = 4 and n = 16,
  // pushing the contrast to +1 and -1 at zero detuning; for n = 1 and n = 9
  // it lands on m pi and the contrast vanishes identically.
  SystemParams p = unit_params();
  p.omega_e = 1015.0;
  p.omega_f = p.omega_c = 1000.0;
  p.g = 5.0;
  p.tau = 0.1 * pi;
  p.phi2 = p.phi1 + pi / 2;

  const std::vector<ExtremumReport> four =
      find_contrast_extrema(make_context(p, 4), Regime::Markov, -6.0, 6.0);
  REQUIRE(four.size() == 1);
  CHECK(four[0].is_max);
  CHECK(four[0].value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(four[0].delta) < 1e-6);

  const std::vector<ExtremumReport> sixteen =
      find_contrast_extrema(make_context(p, 16), Regime::Markov, -6.0, 6.0);
  REQUIRE(sixteen.size() == 1);
  CHECK(!sixteen[0].is_max);
  CHECK(sixteen[0].value == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(std::abs(sixteen[0].delta) < 1e-6);

  for (int n : {1, 9}) {
    const std::vector<ExtremumReport> flat =
        find_contrast_extrema(make_context(p, n), Regime::Markov, -6.0, 6.0);
    for (const ExtremumReport& e : flat) CHECK(std::abs(e.value) < 1e-10);
  }
}

TEST_CASE("contrast extrema: retarded ladder keeps the +-1 peaks at n = 4 / 16") {
  SystemParams p = unit_params();
  p.omega_e = 995.5;
  p.omega_f = p.omega_c = 1000.0;
  p.g = 5.5;
  p.tau = pi;
  p.phi2 = p.phi1 + pi / 2;

  const std::vector<ExtremumReport> four =
      find_contrast_extrema(make_context(p, 4), Regime::Exact, -3.0, 3.0);
  const ExtremumReport* best4 = nullptr;
  for (const ExtremumReport& e : four)
    if (!best4 || e.value > best4->value) best4 = &e;
  REQUIRE(best4 != nullptr);
  CHECK(best4->value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(best4->delta) < 1e-6);

  const std::vector<ExtremumReport> sixteen =
      find_contrast_extrema(make_context(p, 16), Regime::Exact, -3.0, 3.0);
  const ExtremumReport* best16 = nullptr;
  for (const ExtremumReport& e : sixteen)
    if (!best16 || e.value < best16->value) best16 = &e;
  REQUIRE(best16 != nullptr);
  CHECK(best16->value == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(std::abs(best16->delta) < 1e-6);

  // n = 12: the half-integer phase condition is missed by ~0.05 pi; the best
  // contrast drops just below unity but stays within 0.02 of it.
  const std::vector<ExtremumReport> twelve =
      find_contrast_extrema(make_context(p, 12), Regime::Exact, -3.0, 3.0);
  double best12 = 0.0, at12 = 0.0;
  for (const ExtremumReport& e : twelve)
    if (std::abs(e.value) > best12) { best12 = std::abs(e.value); at12 = e.delta; }
  CHECK(best12 > 0.98);
  CHECK(best12 < 1.0);
  CHECK(best12 == doctest::Approx(0.9972).epsilon(2e-3));
  CHECK(at12 == doctest::Approx(-0.0526).epsilon(0.1));
}

TEST_CASE("contrast mirror: n = 9 spectrum is the detuning-reverse of n = 1") {
  SystemParams p = unit_params();
  p.omega_e = 995.5;
  p.omega_f = p.omega_c = 1000.0;
  p.g = 5.5;
  p.tau = pi;
  p.phi2 = p.phi1 + pi / 2;
  const ScatterContext c1 = make_context(p, 1);
  const ScatterContext c9 = make_context(p, 9);
  for (int i = 0; i <= 200; ++i) {
    const double d = -3.0 + 6.0 * double(i) / 200.0;  // symmetric grid
    CHECK(std::abs(contrast_at(c9, Regime::Exact, d) - contrast_at(c1, Regime::Exact, -d)) <
          1e-9);
  }
}

TEST_CASE("sweep: detuning axis matches direct evaluation and is thread-stable") {
  SweepSpec spec;
  spec.params = unit_params();
  spec.params.tau = 1.3;
  spec.n = 2;
  spec.regime = Regime::Exact;
  spec.axis = SweepAxis::Delta;
  spec.lo = -5.0;
  spec.hi = 5.0;
  spec.count = 401;
  spec.threads = 1;
  const SpectrumTable one = sweep(spec);
  REQUIRE(one.rows.size() == 401);
  CHECK(one.columns.size() == 12);
  CHECK(one.columns[0] == "delta");
  // Spot-check rows against the engine.
  const ScatterContext ctx = make_context(spec.params, 2);
  for (int i : {0, 57, 200, 400}) {
    const double d = -5.0 + 10.0 * double(i) / 400.0;
    const ScatteringResult l = scatter(ctx, Regime::Exact, d, Direction::LeftIncident);
    const ScatteringResult r = scatter(ctx, Regime::Exact, d, Direction::RightIncident);
    CHECK(one.rows[i].axis == d);
    CHECK(one.rows[i].t_minus == l.transmittance());
    CHECK(one.rows[i].t_conv_rev == r.conversion());
    CHECK(one.rows[i].i2 == l.conversion() - r.conversion());
  }
  // Threaded run must merge to bit-identical rows.
  spec.threads = 4;
  const SpectrumTable many = sweep(spec);
  REQUIRE(many.rows.size() == one.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) CHECK(rows_equal(one.rows[i], many.rows[i]));
}

TEST_CASE("sweep: coupling-phase axis rebuilds the rates per row") {
  SweepSpec spec;
  spec.params = unit_params();
  spec.regime = Regime::Markov;
  spec.axis = SweepAxis::PhiJ;
  spec.lo = -pi;
  spec.hi = pi;
  spec.count = 9;
  spec.delta = 0.3;
  spec.pinned = explicit_phases(pi / 3, -0.7);
  const SpectrumTable table = sweep(spec);
  REQUIRE(table.rows.size() == 9);
  CHECK(table.columns[0] == "phi_J");
  for (int i = 0; i < 9; ++i) {
    SystemParams p = spec.params;
    p.phi2 = p.phi1 + table.rows[i].axis;
    const ScatterContext ctx = make_context(p, 1, *spec.pinned);
    const ScatteringResult l = scatter(ctx, Regime::Markov, 0.3, Direction::LeftIncident);
    CHECK(table.rows[i].t_conv == l.conversion());
    CHECK(table.rows[i].lamb_shift == markov_lamb_shift(ctx.rates, ctx.phase));
  }
  // Reciprocal endpoints phi_J = -pi, 0, pi: contrast column vanishes.
  CHECK(std::abs(table.rows[0].i2) < 1e-12);
  CHECK(std::abs(table.rows[4].i2) < 1e-12);
  CHECK(std::abs(table.rows[8].i2) < 1e-12);
}

TEST_CASE("sweep: channel-phase axis pins the other channel from the base set") {
  SweepSpec spec;
  spec.params = unit_params();
  spec.regime = Regime::Markov;
  spec.axis = SweepAxis::PhiMinus;
  spec.lo = -pi;
  spec.hi = pi;
  spec.count = 21;
  spec.delta = 0.0;
  spec.pinned = explicit_phases(pi / 3, 0.0);
  const SpectrumTable table = sweep(spec);
  REQUIRE(table.rows.size() == 21);
  for (const SpectrumRow& row : table.rows) {
    const ScatterContext ctx =
        make_context(spec.params, 1, explicit_phases(pi / 3, row.axis));
    CHECK(row.t_conv ==
          scatter(ctx, Regime::Markov, 0.0, Direction::LeftIncident).conversion());
  }
}

TEST_CASE("sweep: photon-number axis, including the empty resonator") {
  SweepSpec spec;
  spec.params = unit_params();
  spec.regime = Regime::Markov;
  spec.axis = SweepAxis::PhotonNumber;
  spec.lo = 0.0;
  spec.hi = 3.0;
  spec.delta = 0.2;
  const SpectrumTable table = sweep(spec);
  REQUIRE(table.rows.size() == 4);
  CHECK(table.columns[0] == "n");
  for (int i = 0; i < 4; ++i) CHECK(table.rows[i].axis == double(i));
  CHECK(table.rows[0].t_conv == 0.0);  // nothing to convert with
  CHECK(table.rows[0].t_conv_rev == 0.0);
  CHECK(table.rows[1].t_conv > 0.0);
}

TEST_CASE("sweep: a dead-on pole row is flagged, not poisoned") {
  SweepSpec spec;
  spec.params = unit_params();
  spec.params.j1_mag = spec.params.j2_mag = 1.0;
  spec.params.phi2 = pi;  // antiphase unit couplings, tau = 0: dark state
  spec.n = 0;
  spec.regime = Regime::Markov;
  spec.axis = SweepAxis::Delta;
  spec.lo = -1.0;
  spec.hi = 1.0;
  spec.count = 3;  // grid hits delta = 0 exactly
  const SpectrumTable table = sweep(spec);
  REQUIRE(table.rows.size() == 3);
  CHECK(table.rows[1].pole);
  CHECK(table.rows[1].t_minus == 0.0);
  CHECK(!table.rows[0].pole);
  CHECK(table.rows[0].t_minus == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sweep: rejects malformed ranges") {
  SweepSpec spec;
  spec.params = unit_params();
  spec.count = 1;
  CHECK_THROWS_AS(sweep(spec), std::invalid_argument);
  spec.count = 100;
  spec.lo = 2.0;
  spec.hi = -2.0;
  CHECK_THROWS_AS(sweep(spec), std::invalid_argument);
  spec.axis = SweepAxis::PhotonNumber;
  spec.lo = -3.0;
  spec.hi = 2.0;
  CHECK_THROWS_AS(sweep(spec), std::invalid_argument);
}

TEST_CASE("unity-conversion scan finds the +-1 contrast pockets") {
  SystemParams p = unit_params();
  p.omega_e = 995.5;
  p.omega_f = p.omega_c = 1000.0;
  p.g = 5.5;
  p.tau = pi;
  const std::vector<UnityConversionHit> hits =
      find_unity_conversion(p, Regime::Exact, 1, 16, 41, 0.999, -3.0, 3.0);
  REQUIRE(!hits.empty());
  bool n4_pos = false, n4_neg = false, n16 = false;
  for (const UnityConversionHit& h : hits) {
    CHECK(std::abs(h.i2) >= 0.999);
    if (h.n == 4 && std::abs(h.phi_j - pi / 2) < 1e-12 && h.i2 > 0.999) n4_pos = true;
    if (h.n == 4 && std::abs(h.phi_j + pi / 2) < 1e-12 && h.i2 < -0.999) n4_neg = true;
    if (h.n == 16 && std::abs(std::abs(h.phi_j) - pi / 2) < 1e-12) n16 = true;
  }
  CHECK(n4_pos);
  CHECK(n4_neg);  // contrast is odd in phi_J
  CHECK(n16);
  // Impossible threshold: no hits.
  CHECK(find_unity_conversion(p, Regime::Exact, 1, 16, 11, 1.1, -3.0, 3.0).empty());
}

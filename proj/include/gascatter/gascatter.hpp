#pragma once

// Umbrella header: the full library surface.
//
// system.hpp      parameters, dressed doublet, channel rates, phases
// scattering.hpp  closed-form scattering amplitudes, both regimes/directions
// oracle.hpp      independent boundary-matching solver (cross-validation)
// analysis.hpp    sweeps, conversion zeros, contrast extrema, unity scan
// verify.hpp      randomized property suites over the physical parameter space
// io.hpp          deterministic CSV/JSON table writers
// config.hpp      layered JSON run configuration
// presets.hpp     built-in figure recipes

#include "analysis.hpp"
#include "config.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "presets.hpp"
#include "scattering.hpp"
#include "system.hpp"
#include "verify.hpp"

#pragma once

#include "quasispec/analytic_qubit.hpp"
#include "quasispec/bath.hpp"
#include "quasispec/bessel.hpp"
#include "quasispec/errors.hpp"
#include "quasispec/floquet.hpp"
#include "quasispec/kramers_kronig.hpp"
#include "quasispec/lindblad.hpp"
#include "quasispec/monodromy.hpp"
#include "quasispec/probe.hpp"
#include "quasispec/two_mode.hpp"

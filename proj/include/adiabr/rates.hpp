// rates.hpp: Instantaneous Bloch-Redfield rates in the transformed bases

#pragma once

#include "adiabr/frames.hpp"
#include "adiabr/qubit.hpp"

#include <string_view>

namespace adiabr {

// Environment coupling for the Landau-Zener scenario: n = z (transverse) or n || b.
enum class LZKind { transverse, longitudinal };

std::string_view to_string(LZKind kind);
LZKind lz_kind_from_string(std::string_view name);
CouplingMode coupling_mode_of(LZKind kind);

// Rates for a rotating control field. With level == Basis::adiabatic the U1-only
// rates are returned (eta = 0, gap E).
RateSet rotating_rates(CouplingMode mode, const FrameAngles& frame, const BathSpec& bath,
                       Basis level = Basis::eigen);

RateSet lz_rates(LZKind kind, const FrameAngles& frame, const BathSpec& bath,
                 Basis level = Basis::eigen);

// Flip weight G(t) entering the rates of the given coupling.
double flip_weight(CouplingMode mode, const FrameAngles& frame, Basis level = Basis::eigen);

// Gamma_0 = pi alpha W G in the rate equation 1/Gamma_0 dm/dt = 1 - m coth(W/2T).
// The cutoff factor exp(-W/E_c) is included whenever the bath has a finite cutoff;
// with E_c = infinity this is exactly pi alpha W G.
double rate_equation_coefficient(LZKind kind, const FrameAngles& frame, const BathSpec& bath);

} // namespace adiabr

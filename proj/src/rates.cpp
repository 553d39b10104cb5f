// rates.cpp: Instantaneous Bloch-Redfield rates in the transformed bases

#include "adiabr/rates.hpp"

#include "adiabr/errors.hpp"

#include <cmath>
#include <string>

namespace adiabr {

namespace {

double sq(double x) { return x * x; }

double gap_for(const FrameAngles& f, Basis level) {
    return level == Basis::adiabatic ? f.e_gap : f.w_gap;
}

double eta_for(const FrameAngles& f, Basis level) {
    return level == Basis::adiabatic ? 0.0 : f.eta;
}

void require_scenario(const FrameAngles& f, Scenario s, const char* who) {
    if (f.scenario != s)
        throw ConfigError(std::string(who) + ": frame belongs to the other scenario");
}

void require_level(Basis level, const char* who) {
    if (level == Basis::diabatic)
        throw ConfigError(std::string(who) + ": rates are defined in the adiabatic or eigen basis");
}

} // namespace

std::string_view to_string(LZKind kind) {
    return kind == LZKind::transverse ? "transverse" : "longitudinal";
}

LZKind lz_kind_from_string(std::string_view name) {
    if (name == "transverse" || name == "inplane-z" || name == "inplane_z")
        return LZKind::transverse;
    if (name == "longitudinal") return LZKind::longitudinal;
    throw ConfigError("unknown Landau-Zener coupling '" + std::string(name) +
                      "' (expected transverse/inplane-z or longitudinal)");
}

CouplingMode coupling_mode_of(LZKind kind) {
    return kind == LZKind::transverse ? CouplingMode::inplane_z : CouplingMode::longitudinal;
}

double flip_weight(CouplingMode mode, const FrameAngles& f, Basis level) {
    require_level(level, "flip_weight");
    const double eta = eta_for(f, level);
    const double s2e = sq(std::sin(eta));
    const double c2e = sq(std::cos(eta));
    switch (mode) {
    case CouplingMode::perp_y:
        if (f.scenario == Scenario::landau_zener)
            throw ConfigError("perp-y coupling is not defined for the Landau-Zener scenario");
        return c2e;
    case CouplingMode::inplane_z: return s2e + sq(std::sin(f.theta)) * c2e;
    case CouplingMode::longitudinal: return s2e;
    }
    throw ConfigError("unknown coupling mode");
}

RateSet rotating_rates(CouplingMode mode, const FrameAngles& f, const BathSpec& bath, Basis level) {
    require_scenario(f, Scenario::rotation, "rotating_rates");
    require_level(level, "rotating_rates");
    const double eta = eta_for(f, level);
    const double s2e = sq(std::sin(eta));
    const double c2e = sq(std::cos(eta));
    double gamma_phi = 0.0;
    switch (mode) {
    case CouplingMode::perp_y: gamma_phi = 0.5 * s2e * bath.j0; break;
    case CouplingMode::inplane_z: gamma_phi = bath.j0 * c2e * sq(std::cos(f.theta)); break;
    case CouplingMode::longitudinal: gamma_phi = c2e * bath.j0; break;
    }
    return rates_from_weights(flip_weight(mode, f, level), gamma_phi, gap_for(f, level), bath);
}

RateSet lz_rates(LZKind kind, const FrameAngles& f, const BathSpec& bath, Basis level) {
    require_scenario(f, Scenario::landau_zener, "lz_rates");
    require_level(level, "lz_rates");
    const double c2e = sq(std::cos(eta_for(f, level)));
    const double gamma_phi = kind == LZKind::transverse ? bath.j0 * c2e * sq(std::cos(f.theta))
                                                        : bath.j0 * c2e;
    return rates_from_weights(flip_weight(coupling_mode_of(kind), f, level), gamma_phi,
                              gap_for(f, level), bath);
}

double rate_equation_coefficient(LZKind kind, const FrameAngles& f, const BathSpec& bath) {
    require_scenario(f, Scenario::landau_zener, "rate_equation_coefficient");
    const double w = f.w_gap;
    double g0 = M_PI * bath.alpha * w * flip_weight(coupling_mode_of(kind), f);
    if (bath.e_cutoff) g0 *= std::exp(-w / *bath.e_cutoff);
    return g0;
}

} // namespace adiabr

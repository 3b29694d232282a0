#include "uwrelay/planner.hpp"

#include <cmath>
#include <sstream>

#include "uwrelay/errors.hpp"

namespace uwrelay {

namespace {

void check_model(const LinkSpec& spec, const FitModel& model) {
    spec.validate();
    if (std::abs(model.snr0_db - spec.snr0_db) > 1e-9) {
        std::ostringstream msg;
        msg << "model fitted at SNR0 = " << model.snr0_db << " dB used for a link targeting "
            << spec.snr0_db << " dB";
        throw ConfigurationError(msg.str());
    }
}

// Only the constraints that fix the signs in the threshold formulas are
// required here; the psi-vs-SNR line is a fit-quality statement.
void check_ranges(const FitModel& model) {
    std::ostringstream msg;
    bool bad = false;
    for (const auto& v : validate_ranges(model)) {
        if (v.which == RangeConstraint::Psi) {
            continue;
        }
        msg << " [" << v.constraint << ", got " << v.value << "]";
        bad = true;
    }
    if (!(model.psi_w > 0.0)) {
        msg << " [ψ > 0, got " << model.psi_w << "]";
        bad = true;
    }
    if (bad) {
        throw ValidationError("model outside the admissible ranges:" + msg.str());
    }
}

// L / (alpha * omega), omega in Hz.
double prefactor(const LinkSpec& spec, const FitModel& model) {
    return spec.packet_bits / (spec.alpha * model.omega_khz * 1e3);
}

double hop_radiate_time(double d_km, const LinkSpec& spec, const FitModel& model) {
    return prefactor(spec, model) * std::pow(d_km, model.lambda);
}

double hop_energy(double d_km, const LinkSpec& spec, const FitModel& model) {
    return prefactor(spec, model) * (model.psi_w * std::pow(d_km, model.lambda + model.gamma) +
                                     spec.p_r_w * std::pow(d_km, model.lambda));
}

double propagation_time(double l_km, const Environment& env) { return l_km * 1e3 / env.c; }

void require_interior(double x_km, const LinkSpec& spec) {
    if (!(x_km > 0.0 && x_km < spec.l_km)) {
        std::ostringstream msg;
        msg << "relay position " << x_km << " km outside (0, " << spec.l_km << ")";
        throw DomainError(msg.str());
    }
}

}  // namespace

void LinkSpec::validate() const {
    if (!(std::isfinite(l_km) && l_km > 0.0)) {
        throw DomainError("link distance must be > 0");
    }
    if (!(std::isfinite(p_r_w) && p_r_w > 0.0)) {
        throw DomainError("receive power must be > 0");
    }
    if (!(packet_bits >= 1.0)) {
        throw DomainError("packet size must be at least one bit");
    }
    if (!(std::isfinite(alpha) && alpha > 0.0)) {
        throw DomainError("bandwidth efficiency must be > 0");
    }
    if (!std::isfinite(snr0_db)) {
        throw DomainError("target SNR must be finite");
    }
}

std::string_view to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::DirectConcave:
            return "DirectConcave";
        case CaseLabel::DirectMixed:
            return "DirectMixed";
        case CaseLabel::RelayOptimal:
            return "RelayOptimal";
    }
    return "?";
}

double direct_delay(const LinkSpec& spec, const FitModel& model, const Environment& env) {
    check_model(spec, model);
    return hop_radiate_time(spec.l_km, spec, model) + propagation_time(spec.l_km, env);
}

double direct_energy(const LinkSpec& spec, const FitModel& model) {
    check_model(spec, model);
    return hop_energy(spec.l_km, spec, model);
}

double relay_delay(double x_km, const LinkSpec& spec, const FitModel& model,
                   const Environment& env) {
    check_model(spec, model);
    require_interior(x_km, spec);
    return hop_radiate_time(x_km, spec, model) + hop_radiate_time(spec.l_km - x_km, spec, model) +
           propagation_time(spec.l_km, env);
}

double relay_energy(double x_km, const LinkSpec& spec, const FitModel& model) {
    check_model(spec, model);
    require_interior(x_km, spec);
    return hop_energy(x_km, spec, model) + hop_energy(spec.l_km - x_km, spec, model);
}

double limit_energy(double x_km, const LinkSpec& spec, const FitModel& model) {
    if (x_km == 0.0 || x_km == spec.l_km) {
        return direct_energy(spec, model);
    }
    return relay_energy(x_km, spec, model);
}

Thresholds thresholds(const FitModel& model, double p_r_w) {
    check_ranges(model);
    if (!(p_r_w > 0.0)) {
        throw DomainError("receive power must be > 0");
    }
    const double lam = model.lambda;
    const double gam = model.gamma;
    const double inv_gamma = 1.0 / gam;
    const double concave = p_r_w * lam * (1.0 - lam) / (model.psi_w * (lam + gam) * (lam + gam - 1.0));
    const double balance = p_r_w * (2.0 - std::pow(2.0, lam)) /
                           (model.psi_w * (std::pow(2.0, lam) - std::pow(2.0, 1.0 - gam)));
    return {2.0 * std::pow(concave, inv_gamma), std::pow(balance, inv_gamma)};
}

double open_distance(const FitModel& model, double p_r_w) {
    return thresholds(model, p_r_w).open_distance_km();
}

CaseLabel classify_case(double l_km, const FitModel& model, double p_r_w) {
    const Thresholds t = thresholds(model, p_r_w);
    if (l_km <= t.t1_km) {
        return CaseLabel::DirectConcave;
    }
    if (l_km <= t.open_distance_km()) {
        return CaseLabel::DirectMixed;
    }
    return CaseLabel::RelayOptimal;
}

DeploymentPlan plan_link(const LinkSpec& spec, const FitModel& model, const Environment& env) {
    check_model(spec, model);
    const double l_op = open_distance(model, spec.p_r_w);

    int hops = 1;
    while (spec.l_km / hops > l_op) {
        hops *= 2;
    }
    const double hop = spec.l_km / hops;

    DeploymentPlan plan;
    for (int i = 1; i < hops; ++i) {
        plan.relay_positions_km.push_back(hop * i);
    }
    plan.hop_length_km = hop;
    plan.hop_count = hops;
    plan.total_energy_joule = hops * hop_energy(hop, spec, model);
    plan.total_delay_sec =
        hops * hop_radiate_time(hop, spec, model) + propagation_time(spec.l_km, env);
    plan.open_distance_km = l_op;
    return plan;
}

EnergyDelayReport compare(const LinkSpec& spec, const FitModel& model, const Environment& env) {
    EnergyDelayReport r{};
    const double mid = 0.5 * spec.l_km;
    r.e0_joule = direct_energy(spec, model);
    r.e1_mid_joule = relay_energy(mid, spec, model);
    r.t0_sec = direct_delay(spec, model, env);
    r.t1_mid_sec = relay_delay(mid, spec, model, env);
    r.energy_reduction_ratio = (r.e0_joule - r.e1_mid_joule) / r.e0_joule;
    r.delay_reduction_ratio = (r.t0_sec - r.t1_mid_sec) / r.t0_sec;
    return r;
}

}  // namespace uwrelay

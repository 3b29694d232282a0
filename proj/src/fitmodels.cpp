#include "uwrelay/fitmodels.hpp"

#include <cmath>
#include <sstream>

#include "uwrelay/errors.hpp"
#include "uwrelay/kernels.hpp"

namespace uwrelay {

namespace {

const double kUpaToWatt = std::pow(10.0, -17.2);

LineFit fit_loglog(std::span<const PowerLawSample> samples) {
    std::vector<double> x;
    std::vector<double> y;
    x.reserve(samples.size());
    y.reserve(samples.size());
    for (const auto& s : samples) {
        if (!(s.distance_km > 0.0) || !(s.value > 0.0)) {
            throw DomainError("power-law samples need positive distance and value");
        }
        x.push_back(std::log10(s.distance_km));
        y.push_back(std::log10(s.value));
    }
    return fit_line(x, y);
}

}  // namespace

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DomainError("fit_line: x and y differ in length");
    }
    if (x.size() < 2) {
        throw RankError("a line fit needs at least two points");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 1e-300 * n) {
        throw RankError("degenerate abscissae: all x values coincide");
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

BandwidthLaw fit_bandwidth_model(std::span<const PowerLawSample> samples) {
    const LineFit line = fit_loglog(samples);
    return {std::pow(10.0, line.intercept), -line.slope};
}

PowerLaw fit_power_model(std::span<const PowerLawSample> samples, const Environment& env) {
    const LineFit line = fit_loglog(samples);
    const double psi = std::pow(10.0, line.intercept);
    return {psi, line.slope, psi * env.eta / kUpaToWatt};
}

FitModel FitModel::combine(const BandwidthLaw& b, const PowerLaw& p, double snr0_db) {
    return {b.omega_khz, b.lambda, p.delta_upa, p.psi_w, p.gamma, snr0_db};
}

FitModel FitModel::reference(double snr0_db, const Environment& env) {
    const double psi =
        std::pow(10.0, reference::kPsiSlopePerDb * snr0_db + reference::kPsiIntercept);
    return {std::pow(10.0, reference::kLog10Omega),
            reference::kLambda,
            psi * env.eta / kUpaToWatt,
            psi,
            reference::kGamma,
            snr0_db};
}

PsiTrend fit_psi_trend(std::span<const FitModel> models) {
    std::vector<double> snr;
    std::vector<double> log_psi;
    for (const auto& m : models) {
        if (!(m.psi_w > 0.0)) {
            throw DomainError("psi must be positive");
        }
        snr.push_back(m.snr0_db);
        log_psi.push_back(std::log10(m.psi_w));
    }
    const LineFit line = fit_line(snr, log_psi);
    return {line.slope, line.intercept};
}

std::vector<RangeViolation> validate_ranges(const FitModel& model, double psi_log10_tolerance) {
    std::vector<RangeViolation> out;
    if (!(model.omega_khz > 0.0)) {
        out.push_back({RangeConstraint::Omega, "Ω: ω > 0", model.omega_khz});
    }
    const double expected =
        reference::kPsiSlopePerDb * model.snr0_db + reference::kPsiIntercept;
    if (!(model.psi_w > 0.0) ||
        std::abs(std::log10(model.psi_w) - expected) > psi_log10_tolerance) {
        out.push_back({RangeConstraint::Psi, "Ψ: ψ = 10^(0.1·SNR0 − 4.9040)", model.psi_w});
    }
    if (!(model.lambda > 0.5 && model.lambda < 0.6)) {
        out.push_back({RangeConstraint::Lambda, "Λ: 0.5 < λ < 0.6", model.lambda});
    }
    if (!(model.gamma > 2.1 && model.gamma < 2.3)) {
        out.push_back({RangeConstraint::Gamma, "Γ: 2.1 < γ < 2.3", model.gamma});
    }
    return out;
}

void require_valid_ranges(const FitModel& model) {
    const auto violations = validate_ranges(model);
    if (violations.empty()) {
        return;
    }
    std::ostringstream msg;
    msg << "model parameters outside admissible ranges:";
    for (const auto& v : violations) {
        msg << " [" << v.constraint << ", got " << v.value << "]";
    }
    throw ValidationError(msg.str());
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0 && hi > lo) || n < 2) {
        throw DomainError("log_spaced needs 0 < lo < hi and n >= 2");
    }
    std::vector<double> out(n);
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> default_fit_distances() { return log_spaced(1.0, 100.0, 60); }

std::vector<PowerLawSample> ChannelSamples::bandwidth() const {
    std::vector<PowerLawSample> out;
    for (std::size_t i = 0; i < distances_km.size(); ++i) {
        out.push_back({distances_km[i], bandwidth_khz[i]});
    }
    return out;
}

std::vector<PowerLawSample> ChannelSamples::power(double snr0_db) const {
    const double snr = db_to_linear(snr0_db);
    std::vector<PowerLawSample> out;
    for (std::size_t i = 0; i < distances_km.size(); ++i) {
        out.push_back({distances_km[i], snr * watts_per_unit_snr[i]});
    }
    return out;
}

ChannelSamples sample_channel(const ChannelModel& channel, std::span<const double> distances_km,
                              Execution exec) {
    const auto hop = [&](std::size_t i) { return channel.hop_physics(distances_km[i]); };
    const std::vector<HopPhysics> hops =
        exec == Execution::parallel
            ? kernels::parallel::map<HopPhysics>(distances_km.size(), hop)
            : kernels::serial::map<HopPhysics>(distances_km.size(), hop);
    ChannelSamples out;
    for (const auto& h : hops) {
        out.distances_km.push_back(h.distance_km);
        out.bandwidth_khz.push_back(h.band.width_khz());
        out.watts_per_unit_snr.push_back(
            electrical_power(h.power_per_unit_snr(), channel.environment()));
    }
    return out;
}

FitModel fit_model(const ChannelSamples& samples, double snr0_db, const Environment& env) {
    const auto b = samples.bandwidth();
    const auto p = samples.power(snr0_db);
    return FitModel::combine(fit_bandwidth_model(b), fit_power_model(p, env), snr0_db);
}

}  // namespace uwrelay

#include "uwrelay/linkbudget.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uwrelay/errors.hpp"
#include "uwrelay/kernels.hpp"
#include "uwrelay/numerics.hpp"

namespace uwrelay {

namespace {

constexpr double kEdgeTolKhz = 1e-10;
const double kUpaToWatt = std::pow(10.0, -17.2);

void require_distance(double l_km) {
    if (!std::isfinite(l_km) || l_km <= 0.0) {
        throw DomainError("distance must be positive and finite");
    }
}

}  // namespace

ChannelModel::ChannelModel(Environment env, SearchWindow window, Execution exec)
    : env_(env), window_(window), exec_(exec) {
    env_.validate();
    if (!(window_.lo_khz > 0.0 && window_.hi_khz > window_.lo_khz && window_.scan_step_khz > 0.0 &&
          window_.refine_tol_khz > 0.0)) {
        throw DomainError("invalid frequency search window");
    }
    const auto n = static_cast<std::size_t>(
        std::floor((window_.hi_khz - window_.lo_khz) / window_.scan_step_khz + 1e-9)) + 1;
    if (n < 3) {
        throw DomainError("frequency search window holds fewer than 3 scan points");
    }
    freq_.resize(n);
    absorption_.resize(n);
    noise_db_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        freq_[i] = window_.lo_khz + window_.scan_step_khz * static_cast<double>(i);
        absorption_[i] = absorption_db_per_km(freq_[i]);
        noise_db_[i] = noise_psd_db(freq_[i], env_);
    }
}

// Attenuation-noise product without the frequency-independent spreading term.
double ChannelModel::relative_product_db(double l_km, double f_khz) const {
    return l_km * absorption_db_per_km(f_khz) + noise_psd_db(f_khz, env_);
}

ChannelModel::Located ChannelModel::locate_optimum(double l_km) const {
    require_distance(l_km);
    const kernels::ArgMin best = exec_ == Execution::parallel
                                     ? kernels::parallel::product_argmin(absorption_, noise_db_, l_km)
                                     : kernels::serial::product_argmin(absorption_, noise_db_, l_km);
    if (best.index == 0 || best.index + 1 == freq_.size()) {
        std::ostringstream msg;
        msg << "attenuation-noise minimum for l = " << l_km << " km lies on the window boundary ("
            << freq_[best.index] << " kHz)";
        throw BoundaryMinimizerError(msg.str());
    }
    const double f0 = numerics::golden_section_minimize(
        [&](double f) { return relative_product_db(l_km, f); }, freq_[best.index - 1],
        freq_[best.index + 1], window_.refine_tol_khz);
    return {f0, best.index};
}

double ChannelModel::optimal_frequency(double l_km) const { return locate_optimum(l_km).f0; }

FrequencyBand ChannelModel::effective_band(double l_km) const {
    const Located opt = locate_optimum(l_km);
    const double target = relative_product_db(l_km, opt.f0) + kHalfPowerDb;
    const auto table = [&](std::size_t i) { return l_km * absorption_[i] + noise_db_[i]; };
    const auto excess = [&](double f) { return relative_product_db(l_km, f) - target; };

    std::size_t j = opt.index;
    while (j > 0 && table(j) < target) {
        --j;
    }
    if (table(j) < target) {
        throw BandTruncationError("lower 3-dB edge below the search window for l = " +
                                  std::to_string(l_km) + " km");
    }
    const double lo =
        numerics::bisect_root(excess, freq_[j], std::min(freq_[j + 1], opt.f0), kEdgeTolKhz);

    std::size_t k = opt.index;
    while (k + 1 < freq_.size() && table(k) < target) {
        ++k;
    }
    if (table(k) < target) {
        throw BandTruncationError("upper 3-dB edge above the search window for l = " +
                                  std::to_string(l_km) + " km");
    }
    const double hi =
        numerics::bisect_root(excess, std::max(freq_[k - 1], opt.f0), freq_[k], kEdgeTolKhz);
    return {opt.f0, lo, hi};
}

HopPhysics ChannelModel::hop_physics(double l_km) const {
    const FrequencyBand band = effective_band(l_km);
    const double spread_gain = db_to_linear(-spreading_loss_db(l_km, env_));
    const double noise = numerics::adaptive_simpson(
        [&](double f) { return noise_psd_linear(f, env_); }, band.lo_khz, band.hi_khz, quad_tol_);
    const double inv_att = numerics::adaptive_simpson(
        [&](double f) { return spread_gain * db_to_linear(-l_km * absorption_db_per_km(f)); },
        band.lo_khz, band.hi_khz, quad_tol_);
    return {l_km, band, noise, inv_att};
}

double ChannelModel::required_transmit_power_acoustic(double l_km, double snr0_db) const {
    return db_to_linear(snr0_db) * hop_physics(l_km).power_per_unit_snr();
}

double ChannelModel::required_transmit_power_electrical(double l_km, double snr0_db) const {
    return electrical_power(required_transmit_power_acoustic(l_km, snr0_db), env_);
}

double electrical_power(double p_upa, const Environment& env) {
    if (!(p_upa >= 0.0)) {
        throw DomainError("acoustic power must be non-negative");
    }
    return p_upa * kUpaToWatt / env.eta;
}

}  // namespace uwrelay

#include "uwrelay/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "uwrelay/errors.hpp"
#include "uwrelay/kernels.hpp"

namespace uwrelay {

ExactModel::ExactModel(ChannelModel channel, Execution exec)
    : channel_(std::move(channel)), exec_(exec) {}

HopPhysics ExactModel::hop(double d_km) const {
    {
        std::shared_lock lock(mutex_);
        const auto it = cache_.find(d_km);
        if (it != cache_.end()) {
            return it->second;
        }
    }
    const HopPhysics h = channel_.hop_physics(d_km);
    std::unique_lock lock(mutex_);
    cache_.emplace(d_km, h);
    return h;
}

void ExactModel::prefill(std::span<const double> distances_km) const {
    std::vector<double> missing;
    {
        std::shared_lock lock(mutex_);
        for (double d : distances_km) {
            if (!cache_.contains(d)) {
                missing.push_back(d);
            }
        }
    }
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    const auto compute = [&](std::size_t i) { return channel_.hop_physics(missing[i]); };
    const std::vector<HopPhysics> hops =
        exec_ == Execution::parallel ? kernels::parallel::map<HopPhysics>(missing.size(), compute)
                                     : kernels::serial::map<HopPhysics>(missing.size(), compute);
    std::unique_lock lock(mutex_);
    for (const auto& h : hops) {
        cache_.emplace(h.distance_km, h);
    }
}

double ExactModel::hop_energy(double d_km, const LinkSpec& spec) const {
    const HopPhysics h = hop(d_km);
    const double p_t = electrical_power(db_to_linear(spec.snr0_db) * h.power_per_unit_snr(),
                                        channel_.environment());
    return (p_t + spec.p_r_w) * spec.packet_bits / (spec.alpha * h.bandwidth_hz());
}

double ExactModel::hop_delay(double d_km, const LinkSpec& spec) const {
    const HopPhysics h = hop(d_km);
    return spec.packet_bits / (spec.alpha * h.bandwidth_hz()) +
           d_km * 1e3 / channel_.environment().c;
}

std::size_t ExactModel::cache_size() const {
    std::shared_lock lock(mutex_);
    return cache_.size();
}

double grid_position(double l_km, std::size_t i, std::size_t n) {
    return l_km * static_cast<double>(i) / static_cast<double>(n);
}

double numeric_energy(double x_km, const LinkSpec& spec, const ExactModel& model) {
    spec.validate();
    if (x_km == 0.0 || x_km == spec.l_km) {
        return model.hop_energy(spec.l_km, spec);
    }
    if (!(x_km > 0.0 && x_km < spec.l_km)) {
        throw DomainError("relay position outside [0, l]");
    }
    return model.hop_energy(x_km, spec) + model.hop_energy(spec.l_km - x_km, spec);
}

double numeric_delay(double x_km, const LinkSpec& spec, const ExactModel& model) {
    spec.validate();
    if (x_km == 0.0 || x_km == spec.l_km) {
        return model.hop_delay(spec.l_km, spec);
    }
    if (!(x_km > 0.0 && x_km < spec.l_km)) {
        throw DomainError("relay position outside [0, l]");
    }
    return model.hop_delay(x_km, spec) + model.hop_delay(spec.l_km - x_km, spec);
}

namespace {

// Energies on the symmetric grid x_i = l*i/n, i = 0..n.
std::vector<double> energy_curve(const LinkSpec& spec, const ExactModel& model, std::size_t n) {
    std::vector<double> distances(n);
    for (std::size_t i = 1; i <= n; ++i) {
        distances[i - 1] = grid_position(spec.l_km, i, n);
    }
    model.prefill(distances);

    std::vector<double> hop(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
        hop[i] = model.hop_energy(distances[i - 1], spec);
    }
    return model.execution() == Execution::parallel
               ? kernels::parallel::relay_energy_curve(hop, hop[n])
               : kernels::serial::relay_energy_curve(hop, hop[n]);
}

kernels::ArgMin curve_argmin(std::span<const double> values, Execution exec) {
    return exec == Execution::parallel ? kernels::parallel::argmin(values)
                                       : kernels::serial::argmin(values);
}

}  // namespace

OracleResult grid_argmin_relay(const LinkSpec& spec, const ExactModel& model, double step_km) {
    spec.validate();
    if (!(step_km > 0.0 && step_km <= spec.l_km / 4.0 * (1.0 + 1e-12))) {
        throw DomainError("position step must satisfy 0 < step <= l/4");
    }
    const auto n = static_cast<std::size_t>(std::ceil(spec.l_km / step_km - 1e-9));
    const std::vector<double> curve = energy_curve(spec, model, n);
    const kernels::ArgMin best = curve_argmin(curve, model.execution());

    OracleResult out;
    out.best_x_km = grid_position(spec.l_km, best.index, n);
    out.best_energy_joule = best.value;
    out.grid_step_km = spec.l_km / static_cast<double>(n);
    out.energy_curve.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        out.energy_curve.push_back({grid_position(spec.l_km, i, n), curve[i]});
    }
    return out;
}

OracleResult grid_argmin_relay(const LinkSpec& spec, const ExactModel& model) {
    return grid_argmin_relay(spec, model, spec.l_km / 400.0);
}

TurningPoint find_turning_point(double snr0_db, double p_r_w, const ExactModel& model,
                                std::span<const double> l_grid_km, std::size_t positions) {
    if (l_grid_km.size() < 2) {
        throw BracketError("turning-point sweep needs at least two distances");
    }
    if (positions < 4) {
        throw DomainError("turning-point sweep needs at least 4 positions per link");
    }
    for (std::size_t k = 1; k < l_grid_km.size(); ++k) {
        if (!(l_grid_km[k] > l_grid_km[k - 1])) {
            throw DomainError("distance grid must be strictly increasing");
        }
    }

    std::vector<double> all;
    all.reserve(l_grid_km.size() * positions);
    for (double l : l_grid_km) {
        for (std::size_t i = 1; i <= positions; ++i) {
            all.push_back(grid_position(l, i, positions));
        }
    }
    model.prefill(all);

    double prev_margin = 0.0;
    for (std::size_t k = 0; k < l_grid_km.size(); ++k) {
        const LinkSpec spec{l_grid_km[k], snr0_db, p_r_w};
        const std::vector<double> curve = energy_curve(spec, model, positions);
        const std::span<const double> interior(curve.data() + 1, positions - 1);
        const kernels::ArgMin best = curve_argmin(interior, model.execution());
        const double margin = curve[0] - best.value;
        if (margin > 0.0) {
            if (k == 0) {
                std::ostringstream msg;
                msg << "relay already optimal at the first grid distance " << l_grid_km[0]
                    << " km (SNR0 = " << snr0_db << " dB, P_R = " << p_r_w << " W)";
                throw BracketError(msg.str());
            }
            const double l0 = l_grid_km[k - 1];
            const double l1 = l_grid_km[k];
            const double frac = -prev_margin / (margin - prev_margin);
            return {l0 + frac * (l1 - l0), l0, l1, grid_position(l1, best.index + 1, positions)};
        }
        prev_margin = margin;
    }
    std::ostringstream msg;
    msg << "no turning point up to " << l_grid_km.back() << " km (SNR0 = " << snr0_db
        << " dB, P_R = " << p_r_w << " W)";
    throw BracketError(msg.str());
}

double realistic_open_distance(double snr0_db, double p_r_w, const ExactModel& model,
                               std::span<const double> l_grid_km, std::size_t positions) {
    return find_turning_point(snr0_db, p_r_w, model, l_grid_km, positions).open_distance_km;
}

}  // namespace uwrelay

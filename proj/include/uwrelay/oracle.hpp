#pragma once

// Brute-force ground truth on the exact channel model: band integrals instead
// of fitted power laws, exhaustive search over relay positions.

#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "uwrelay/linkbudget.hpp"
#include "uwrelay/planner.hpp"

namespace uwrelay {

struct EnergySample {
    double x_km;
    double energy_joule;
};

struct OracleResult {
    double best_x_km;
    double best_energy_joule;
    double grid_step_km;
    std::vector<EnergySample> energy_curve;
};

/// Exact per-hop physics with a thread-safe memo keyed by hop length.
///
/// Hop physics do not depend on SNR0 or P_R, so one cache serves every
/// (SNR0, P_R) cell of a sweep.
class ExactModel {
   public:
    explicit ExactModel(ChannelModel channel, Execution exec = Execution::parallel);

    ExactModel(const ExactModel&) = delete;
    ExactModel& operator=(const ExactModel&) = delete;

    const ChannelModel& channel() const { return channel_; }
    const Environment& environment() const { return channel_.environment(); }
    Execution execution() const { return exec_; }

    HopPhysics hop(double d_km) const;

    /// Computes every missing distance, in parallel when enabled.
    void prefill(std::span<const double> distances_km) const;

    /// Single-hop energy (P_T + P_R) * L / (alpha * B).
    double hop_energy(double d_km, const LinkSpec& spec) const;

    /// Single-hop delay L / (alpha * B) + d / c.
    double hop_delay(double d_km, const LinkSpec& spec) const;

    std::size_t cache_size() const;

   private:
    ChannelModel channel_;
    Execution exec_;
    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<double, HopPhysics> cache_;
};

/// Position x_i = l * i / n; the one expression used for every relay grid so
/// that memo keys coincide.
double grid_position(double l_km, std::size_t i, std::size_t n);

/// Exact two-hop energy. x = 0 or x = l means direct transmission.
double numeric_energy(double x_km, const LinkSpec& spec, const ExactModel& model);

/// Exact two-hop delay (direct delay at the endpoints).
double numeric_delay(double x_km, const LinkSpec& spec, const ExactModel& model);

/// Exhaustive search over {0, h, 2h, ..., l} with h = l / ceil(l / step);
/// ties go to the smaller x. Requires 0 < step <= l/4.
OracleResult grid_argmin_relay(const LinkSpec& spec, const ExactModel& model, double step_km);

/// Default position grid: step l/400.
OracleResult grid_argmin_relay(const LinkSpec& spec, const ExactModel& model);

struct TurningPoint {
    double open_distance_km;      // interpolated crossing
    double last_boundary_km;      // last grid l with an endpoint optimum
    double first_interior_km;     // first grid l with an interior optimum
    double first_interior_best_x_km;
};

/// Sweeps l over a strictly increasing grid and locates where the optimal
/// relay position leaves the endpoints. The crossing is interpolated linearly
/// in l on the margin E_direct - min_interior E1. Throws BracketError when the
/// grid does not contain the transition.
TurningPoint find_turning_point(double snr0_db, double p_r_w, const ExactModel& model,
                                std::span<const double> l_grid_km,
                                std::size_t positions = 400);

double realistic_open_distance(double snr0_db, double p_r_w, const ExactModel& model,
                               std::span<const double> l_grid_km, std::size_t positions = 400);

}  // namespace uwrelay

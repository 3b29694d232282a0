#pragma once

#include <vector>

#include "uwrelay/acoustics.hpp"

namespace uwrelay {

/// Frequency range searched for the attenuation-noise minimum.
struct SearchWindow {
    double lo_khz = 0.1;
    double hi_khz = 200.0;
    double scan_step_khz = 0.01;     // coarse scan, 10 Hz
    double refine_tol_khz = 1e-4;    // golden-section stop, 0.1 Hz
};

enum class Execution { serial, parallel };

/// 3-dB band around the optimal frequency: 1/[A N] stays above half its peak.
struct FrequencyBand {
    double f0_khz;
    double lo_khz;
    double hi_khz;

    double width_khz() const { return hi_khz - lo_khz; }
};

/// Everything the energy model needs about one hop of length l.
struct HopPhysics {
    double distance_km;
    FrequencyBand band;
    double noise_integral;                // int_B N(f) df, f in kHz
    double inverse_attenuation_integral;  // int_B 1/A(l,f) df, f in kHz

    double bandwidth_hz() const { return 1e3 * band.width_khz(); }

    /// Acoustic transmit power (uPa) per unit of linear target SNR.
    double power_per_unit_snr() const {
        return bandwidth_hz() * noise_integral / inverse_attenuation_integral;
    }
};

/// Distance-dependent link budget for a fixed environment.
///
/// Noise and absorption are tabulated once on the scan grid, so locating the
/// optimum for a new distance is a single fused pass over the grid followed
/// by golden-section refinement on the exact expressions.
class ChannelModel {
   public:
    explicit ChannelModel(Environment env, SearchWindow window = {},
                          Execution exec = Execution::parallel);

    const Environment& environment() const { return env_; }
    const SearchWindow& window() const { return window_; }

    /// Relative tolerance of the band integrals (default 1e-8).
    void set_quadrature_tolerance(double rel_tol) { quad_tol_ = rel_tol; }
    double quadrature_tolerance() const { return quad_tol_; }

    double optimal_frequency(double l_km) const;
    FrequencyBand effective_band(double l_km) const;
    HopPhysics hop_physics(double l_km) const;

    /// P_t(l) in uPa for a target SNR given in dB.
    double required_transmit_power_acoustic(double l_km, double snr0_db) const;

    /// P_T(l) in W.
    double required_transmit_power_electrical(double l_km, double snr0_db) const;

   private:
    struct Located {
        double f0;
        std::size_t index;
    };
    Located locate_optimum(double l_km) const;
    double relative_product_db(double l_km, double f_khz) const;

    Environment env_;
    SearchWindow window_;
    Execution exec_;
    double quad_tol_ = 1e-8;
    std::vector<double> freq_;
    std::vector<double> absorption_;
    std::vector<double> noise_db_;
};

/// Acoustic source level (uPa) to electrical drive power (W): p * 10^-17.2 / eta.
double electrical_power(double p_upa, const Environment& env);

/// 10*log10(2): the 3-dB point of the band edges.
inline constexpr double kHalfPowerDb = 3.0102999566398119521;

}  // namespace uwrelay

#pragma once

#include <span>
#include <string>
#include <vector>

#include "uwrelay/acoustics.hpp"
#include "uwrelay/linkbudget.hpp"

namespace uwrelay {

/// One (distance, value) observation of a power law y = a * l^b.
struct PowerLawSample {
    double distance_km;
    double value;
};

/// Least-squares line y = slope * x + intercept.
struct LineFit {
    double slope;
    double intercept;
};

/// Ordinary least squares on centred data. Throws RankError when fewer than
/// two points are given or all x coincide.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct BandwidthLaw {
    double omega_khz;  // B(l) = omega * l^-lambda
    double lambda;
};

struct PowerLaw {
    double psi_w;      // P_T(l) = psi * l^gamma
    double gamma;
    double delta_upa;  // P_t(l) = delta * l^gamma
};

BandwidthLaw fit_bandwidth_model(std::span<const PowerLawSample> samples);

/// Samples are electrical powers in W; delta is recovered through the
/// uPa-to-W conversion of env.
PowerLaw fit_power_model(std::span<const PowerLawSample> samples, const Environment& env);

/// Fitted distance laws for one target SNR.
struct FitModel {
    double omega_khz;
    double lambda;
    double delta_upa;
    double psi_w;
    double gamma;
    double snr0_db;

    static FitModel combine(const BandwidthLaw& b, const PowerLaw& p, double snr0_db);

    /// Published constants: lambda = 0.5392, omega = 10^1.4291,
    /// gamma = 2.2074, psi = 10^(0.1*SNR0 - 4.9040).
    static FitModel reference(double snr0_db, const Environment& env = {});
};

namespace reference {
inline constexpr double kLambda = 0.5392;
inline constexpr double kLog10Omega = 1.4291;
inline constexpr double kGamma = 2.2074;
inline constexpr double kPsiSlopePerDb = 0.1;
inline constexpr double kPsiIntercept = -4.9040;
}  // namespace reference

/// log10(psi) = slope * SNR0 + intercept.
struct PsiTrend {
    double slope_per_db;
    double intercept;
};

PsiTrend fit_psi_trend(std::span<const FitModel> models);

enum class RangeConstraint { Omega, Psi, Lambda, Gamma };

struct RangeViolation {
    RangeConstraint which;
    std::string constraint;  // e.g. "Λ: 0.5 < λ < 0.6"
    double value;
};

/// Checks the admissible parameter regions. The psi line is accepted within
/// psi_log10_tolerance decades of 0.1*SNR0 - 4.9040.
std::vector<RangeViolation> validate_ranges(const FitModel& model,
                                            double psi_log10_tolerance = 0.05);

/// Throws ValidationError listing every violation.
void require_valid_ranges(const FitModel& model);

std::vector<double> log_spaced(double lo, double hi, std::size_t n);

/// 60 log-spaced distances over [1, 100] km.
std::vector<double> default_fit_distances();

/// Exact bandwidth and per-unit-SNR electrical power on a distance grid.
struct ChannelSamples {
    std::vector<double> distances_km;
    std::vector<double> bandwidth_khz;
    std::vector<double> watts_per_unit_snr;

    std::vector<PowerLawSample> bandwidth() const;
    std::vector<PowerLawSample> power(double snr0_db) const;
};

ChannelSamples sample_channel(const ChannelModel& channel, std::span<const double> distances_km,
                              Execution exec = Execution::parallel);

FitModel fit_model(const ChannelSamples& samples, double snr0_db, const Environment& env);

}  // namespace uwrelay

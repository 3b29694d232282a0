#pragma once

// Relay decisions on a linear acoustic link, using the fitted distance laws
//
//   B(l)   = omega * l^-lambda            (kHz)
//   P_T(l) = psi   * l^gamma              (W)
//   E0(l)  = L/(alpha*omega*1e3) * [psi*l^(lambda+gamma) + P_R*l^lambda]
//   E1(x)  = E0(x) + E0(l - x)
//
// Direct transmission wins up to the open distance
//   l_OP = max(T1, T2),
//   T1 = 2 * (P_R*lambda*(1-lambda) / (psi*(lambda+gamma)*(lambda+gamma-1)))^(1/gamma)
//   T2 = (P_R*(2 - 2^lambda) / (psi*(2^lambda - 2^(1-gamma))))^(1/gamma)
// and beyond it the midpoint relay minimises E1.

#include <string_view>
#include <vector>

#include "uwrelay/acoustics.hpp"
#include "uwrelay/fitmodels.hpp"

namespace uwrelay {

/// One planning problem.
struct LinkSpec {
    double l_km;
    double snr0_db;
    double p_r_w;              // receive power
    double packet_bits = 2048; // L
    double alpha = 1.0;        // bandwidth efficiency, bps/Hz

    void validate() const;
};

struct EnergyDelayReport {
    double e0_joule;
    double e1_mid_joule;
    double t0_sec;
    double t1_mid_sec;
    double energy_reduction_ratio;  // (E0 - E1(l/2)) / E0
    double delay_reduction_ratio;   // (t0 - t1(l/2)) / t0
};

struct DeploymentPlan {
    std::vector<double> relay_positions_km;
    double hop_length_km;
    int hop_count;
    double total_energy_joule;
    double total_delay_sec;
    double open_distance_km;
};

enum class CaseLabel {
    DirectConcave,  // l <= T1: E1 concave, minimum at the endpoints
    DirectMixed,    // T1 < l <= max(T1, T2): local minimum at l/2, endpoints still win
    RelayOptimal,   // l > max(T1, T2): midpoint relay is the global minimum
};

std::string_view to_string(CaseLabel label);

struct Thresholds {
    double t1_km;
    double t2_km;

    double open_distance_km() const { return t1_km > t2_km ? t1_km : t2_km; }
};

double direct_delay(const LinkSpec& spec, const FitModel& model, const Environment& env);
double direct_energy(const LinkSpec& spec, const FitModel& model);

/// Two-hop delay with the relay at x km from the source; 0 < x < l.
double relay_delay(double x_km, const LinkSpec& spec, const FitModel& model,
                   const Environment& env);

/// Two-hop energy with the relay at x km; 0 < x < l.
double relay_energy(double x_km, const LinkSpec& spec, const FitModel& model);

/// relay_energy extended to the closed interval: x = 0 or x = l is direct transmission.
double limit_energy(double x_km, const LinkSpec& spec, const FitModel& model);

/// Threshold distances; the model must satisfy the admissible ranges.
Thresholds thresholds(const FitModel& model, double p_r_w);

double open_distance(const FitModel& model, double p_r_w);

CaseLabel classify_case(double l_km, const FitModel& model, double p_r_w);

/// Recursive bisection: relay at the midpoint, then quarter points, ... until
/// every hop is no longer than l_OP. l == l_OP keeps direct transmission.
DeploymentPlan plan_link(const LinkSpec& spec, const FitModel& model, const Environment& env);

EnergyDelayReport compare(const LinkSpec& spec, const FitModel& model, const Environment& env);

}  // namespace uwrelay

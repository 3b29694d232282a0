#pragma once

// Underwater acoustic channel physics: Thorp absorption, spreading path loss,
// and the four-component ambient noise spectrum.
//
// Units follow the usual link-budget conventions: frequency in kHz, distance
// in km, levels in dB. Noise levels are dB re 1 uPa^2/Hz.

namespace uwrelay {

/// Physical context of an acoustic link.
struct Environment {
    double k = 1.5;       // spreading factor (1 cylindrical, 2 spherical)
    double s = 0.5;       // shipping activity in [0, 1]
    double w = 0.0;       // wind speed, m/s
    double c = 1500.0;    // sound speed, m/s
    double eta = 0.25;    // amplifier/transducer efficiency in (0, 1]

    /// Throws DomainError when any field is out of range. Values are never clamped.
    void validate() const;
};

struct NoiseComponentsDb {
    double turbulence;
    double shipping;
    double wind;
    double thermal;
};

/// Thorp absorption coefficient in dB/km.
double absorption_db_per_km(double f_khz);

/// k*10*log10(l*1000) + l*a(f), in dB.
double path_loss_db(double l_km, double f_khz, const Environment& env);

/// Spreading term alone; independent of frequency.
double spreading_loss_db(double l_km, const Environment& env);

NoiseComponentsDb noise_components_db(double f_khz, const Environment& env);

/// Total noise p.s.d. in linear units (uPa^2/Hz), components summed as powers.
double noise_psd_linear(double f_khz, const Environment& env);

double noise_psd_db(double f_khz, const Environment& env);

/// 10*log10(A(l,f)*N(f)).
double attenuation_noise_product_db(double l_km, double f_khz, const Environment& env);

/// 1/A(l,f). Underflows to zero instead of overflowing A at long range.
double inverse_attenuation(double l_km, double f_khz, const Environment& env);

// Power ratio <-> dB.
double db_to_linear(double db);
double linear_to_db(double value);

}  // namespace uwrelay

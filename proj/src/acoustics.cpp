#include "uwrelay/acoustics.hpp"

#include <cmath>
#include <string>

#include "uwrelay/errors.hpp"

namespace uwrelay {

namespace {

void require_frequency(double f_khz) {
    if (!std::isfinite(f_khz) || f_khz <= 0.0) {
        throw DomainError("frequency must be positive and finite, got " + std::to_string(f_khz));
    }
}

void require_distance(double l_km) {
    if (!std::isfinite(l_km) || l_km <= 0.0) {
        throw DomainError("distance must be positive and finite, got " + std::to_string(l_km));
    }
}

}  // namespace

void Environment::validate() const {
    if (!(std::isfinite(k) && k > 0.0)) {
        throw DomainError("spreading factor k must be > 0");
    }
    if (!(s >= 0.0 && s <= 1.0)) {
        throw DomainError("shipping activity s must lie in [0, 1]");
    }
    if (!(std::isfinite(w) && w >= 0.0)) {
        throw DomainError("wind speed w must be >= 0");
    }
    if (!(std::isfinite(c) && c > 0.0)) {
        throw DomainError("sound speed c must be > 0");
    }
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw DomainError("efficiency eta must lie in (0, 1]");
    }
}

double db_to_linear(double db) { return std::pow(10.0, 0.1 * db); }

double linear_to_db(double value) { return 10.0 * std::log10(value); }

double absorption_db_per_km(double f_khz) {
    require_frequency(f_khz);
    const double f2 = f_khz * f_khz;
    return 0.11 * f2 / (1.0 + f2) + 44.0 * f2 / (4100.0 + f2) + 2.75e-4 * f2 + 0.003;
}

double spreading_loss_db(double l_km, const Environment& env) {
    require_distance(l_km);
    return env.k * 10.0 * std::log10(l_km * 1e3);
}

double path_loss_db(double l_km, double f_khz, const Environment& env) {
    return spreading_loss_db(l_km, env) + l_km * absorption_db_per_km(f_khz);
}

NoiseComponentsDb noise_components_db(double f_khz, const Environment& env) {
    require_frequency(f_khz);
    const double lf = std::log10(f_khz);
    NoiseComponentsDb n{};
    n.turbulence = 17.0 - 30.0 * lf;
    n.shipping = 40.0 + 20.0 * (env.s - 0.5) + 26.0 * lf - 60.0 * std::log10(f_khz + 0.03);
    n.wind = 50.0 + 7.5 * std::sqrt(env.w) + 20.0 * lf - 40.0 * std::log10(f_khz + 0.4);
    n.thermal = -15.0 + 20.0 * lf;
    return n;
}

double noise_psd_linear(double f_khz, const Environment& env) {
    const NoiseComponentsDb n = noise_components_db(f_khz, env);
    return db_to_linear(n.turbulence) + db_to_linear(n.shipping) + db_to_linear(n.wind) +
           db_to_linear(n.thermal);
}

double noise_psd_db(double f_khz, const Environment& env) {
    return linear_to_db(noise_psd_linear(f_khz, env));
}

double attenuation_noise_product_db(double l_km, double f_khz, const Environment& env) {
    return path_loss_db(l_km, f_khz, env) + noise_psd_db(f_khz, env);
}

double inverse_attenuation(double l_km, double f_khz, const Environment& env) {
    return db_to_linear(-path_loss_db(l_km, f_khz, env));
}

}  // namespace uwrelay

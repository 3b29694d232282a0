#include "uwrelay/kernels.hpp"

#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace uwrelay::kernels {

namespace {

bool better(double value, std::size_t index, const ArgMin& best) {
    return value < best.value || (value == best.value && index < best.index);
}

constexpr ArgMin kNone{std::numeric_limits<std::size_t>::max(),
                       std::numeric_limits<double>::infinity()};

#ifdef _OPENMP
int default_threads = omp_get_max_threads();
#endif

}  // namespace

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_thread_limit(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n > 0 ? n : default_threads);
#else
    (void)n;
#endif
}

namespace serial {

ArgMin product_argmin(std::span<const double> absorption_db_per_km,
                      std::span<const double> noise_db, double l_km) {
    if (absorption_db_per_km.size() != noise_db.size() || noise_db.empty()) {
        throw std::invalid_argument("product_argmin: grids must be non-empty and equal length");
    }
    ArgMin best = kNone;
    for (std::size_t i = 0; i < noise_db.size(); ++i) {
        const double v = l_km * absorption_db_per_km[i] + noise_db[i];
        if (better(v, i, best)) {
            best = {i, v};
        }
    }
    return best;
}

ArgMin argmin(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("argmin of empty range");
    }
    ArgMin best = kNone;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (better(values[i], i, best)) {
            best = {i, values[i]};
        }
    }
    return best;
}

std::vector<double> relay_energy_curve(std::span<const double> hop_energy, double direct_energy) {
    if (hop_energy.size() < 2) {
        throw std::invalid_argument("relay_energy_curve: need at least the two endpoints");
    }
    const std::size_t n = hop_energy.size() - 1;
    std::vector<double> curve(hop_energy.size());
    curve[0] = direct_energy;
    curve[n] = direct_energy;
    for (std::size_t i = 1; i < n; ++i) {
        curve[i] = hop_energy[i] + hop_energy[n - i];
    }
    return curve;
}

}  // namespace serial

namespace parallel {

namespace {

template <class ValueAt>
ArgMin reduce_argmin(std::size_t n, ValueAt value_at) {
    ArgMin best = kNone;
    const long long count = static_cast<long long>(n);
#pragma omp parallel
    {
        ArgMin local = kNone;
#pragma omp for nowait
        for (long long i = 0; i < count; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            const double v = value_at(idx);
            if (better(v, idx, local)) {
                local = {idx, v};
            }
        }
#pragma omp critical(uwrelay_argmin)
        {
            if (better(local.value, local.index, best)) {
                best = local;
            }
        }
    }
    return best;
}

}  // namespace

ArgMin product_argmin(std::span<const double> absorption_db_per_km,
                      std::span<const double> noise_db, double l_km) {
    if (absorption_db_per_km.size() != noise_db.size() || noise_db.empty()) {
        throw std::invalid_argument("product_argmin: grids must be non-empty and equal length");
    }
    return reduce_argmin(noise_db.size(), [&](std::size_t i) {
        return l_km * absorption_db_per_km[i] + noise_db[i];
    });
}

ArgMin argmin(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("argmin of empty range");
    }
    return reduce_argmin(values.size(), [&](std::size_t i) { return values[i]; });
}

std::vector<double> relay_energy_curve(std::span<const double> hop_energy, double direct_energy) {
    if (hop_energy.size() < 2) {
        throw std::invalid_argument("relay_energy_curve: need at least the two endpoints");
    }
    const std::size_t n = hop_energy.size() - 1;
    std::vector<double> curve(hop_energy.size());
    curve[0] = direct_energy;
    curve[n] = direct_energy;
    const long long count = static_cast<long long>(n);
#pragma omp parallel for
    for (long long i = 1; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        curve[idx] = hop_energy[idx] + hop_energy[n - idx];
    }
    return curve;
}

}  // namespace parallel

}  // namespace uwrelay::kernels

#pragma once

// Data-parallel inner loops. Every kernel has a serial reference in
// `kernels::serial` and an OpenMP version in `kernels::parallel`; tests
// assert they agree bit-for-bit and bench/ compares their throughput.
//
// Reductions break ties toward the smallest index so results never depend
// on the thread schedule.

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

namespace uwrelay::kernels {

struct ArgMin {
    std::size_t index;
    double value;
};

/// Worker count used by the parallel kernels (1 when built without OpenMP).
int max_threads();

/// Caps parallel kernels at n threads; n <= 0 restores the runtime default.
void set_thread_limit(int n);

namespace serial {

/// argmin_i of l_km * absorption[i] + noise_db[i]: the frequency-dependent
/// part of the attenuation-noise product on a fixed frequency grid.
ArgMin product_argmin(std::span<const double> absorption_db_per_km,
                      std::span<const double> noise_db, double l_km);

ArgMin argmin(std::span<const double> values);

/// Two-hop energy over a symmetric position grid x_i = i*l/n.
/// hop_energy[i] is the single-hop energy over distance x_i (entry 0 unused);
/// endpoints take the direct-transmission energy.
std::vector<double> relay_energy_curve(std::span<const double> hop_energy, double direct_energy);

template <class T, class F>
std::vector<T> map(std::size_t n, F&& fn) {
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(fn(i));
    }
    return out;
}

}  // namespace serial

namespace parallel {

ArgMin product_argmin(std::span<const double> absorption_db_per_km,
                      std::span<const double> noise_db, double l_km);

ArgMin argmin(std::span<const double> values);

std::vector<double> relay_energy_curve(std::span<const double> hop_energy, double direct_energy);

/// Order-preserving parallel map. If any call throws, the exception from the
/// lowest index is rethrown after the loop.
template <class T, class F>
std::vector<T> map(std::size_t n, F&& fn) {
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(n);
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

}  // namespace parallel

}  // namespace uwrelay::kernels

#pragma once

// Bivariate polynomial approximation of the open distance:
//
//   z(x, y) = sum f_ij x^i y^j,   0 <= i <= m, 0 <= j <= n, i + j <= max(m, n)
//
// with x = log10(P_R / W), y = SNR0 in dB and z = log10(l_OP / km).

#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"

namespace uwrelay {

struct SurfacePoint {
    double x;
    double y;
    double z;
};

/// Goodness of fit, computed on the z (log10) residuals.
struct GoFReport {
    double sse;
    double rmse;    // sqrt(SSE / N)
    double r2;
    double adj_r2;  // 1 - (1 - R^2)(N - 1)/(N - p)
};

class PolySurface {
   public:
    /// All-zero surface of the given degrees.
    PolySurface(int m, int n);

    int m() const { return m_; }
    int n() const { return n_; }

    /// True when x^i y^j belongs to the triangular basis.
    bool has_term(int i, int j) const;

    double coeff(int i, int j) const;
    void set_coeff(int i, int j, double value);

    /// Basis monomials (i, j) in row-major order.
    std::vector<std::pair<int, int>> terms() const;

    double operator()(double x, double y) const;

    /// Reads {"m":..,"n":..,"coefficients":[{"i":..,"j":..,"value":..},..]}.
    static PolySurface from_json(const nlohmann::json& doc);
    static PolySurface load(const std::filesystem::path& path);
    nlohmann::ordered_json to_json() const;

   private:
    int m_;
    int n_;
    std::vector<double> coeffs_;  // (m+1) x (n+1), row-major; zero outside the basis
};

double eval_surface(const PolySurface& s, double log10_pr, double snr0_db);

GoFReport goodness_of_fit(std::span<const double> observed, std::span<const double> predicted,
                          std::size_t n_params);

struct SurfaceFit {
    PolySurface surface;
    GoFReport gof;
};

/// Least squares over the triangular basis via column-pivoted Householder QR.
/// Throws RankError if the design matrix is rank deficient or has no
/// residual degrees of freedom.
SurfaceFit fit_open_distance_surface(std::span<const SurfacePoint> points, int m, int n);

}  // namespace uwrelay

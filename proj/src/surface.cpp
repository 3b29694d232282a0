#include "uwrelay/surface.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "uwrelay/errors.hpp"

namespace uwrelay {

PolySurface::PolySurface(int m, int n) : m_(m), n_(n) {
    if (m < 0 || n < 0) {
        throw DomainError("surface degrees must be non-negative");
    }
    coeffs_.assign(static_cast<std::size_t>((m + 1) * (n + 1)), 0.0);
}

bool PolySurface::has_term(int i, int j) const {
    return i >= 0 && j >= 0 && i <= m_ && j <= n_ && i + j <= std::max(m_, n_);
}

double PolySurface::coeff(int i, int j) const {
    return has_term(i, j) ? coeffs_[static_cast<std::size_t>(i * (n_ + 1) + j)] : 0.0;
}

void PolySurface::set_coeff(int i, int j, double value) {
    if (!has_term(i, j)) {
        throw DomainError("monomial x^" + std::to_string(i) + " y^" + std::to_string(j) +
                          " is outside the triangular basis");
    }
    coeffs_[static_cast<std::size_t>(i * (n_ + 1) + j)] = value;
}

std::vector<std::pair<int, int>> PolySurface::terms() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i <= m_; ++i) {
        for (int j = 0; j <= n_; ++j) {
            if (has_term(i, j)) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

// Nested Horner: inner polynomial in y per power of x, outer in x.
double PolySurface::operator()(double x, double y) const {
    const int top = std::max(m_, n_);
    double acc = 0.0;
    for (int i = m_; i >= 0; --i) {
        double row = 0.0;
        for (int j = std::min(n_, top - i); j >= 0; --j) {
            row = row * y + coeffs_[static_cast<std::size_t>(i * (n_ + 1) + j)];
        }
        acc = acc * x + row;
    }
    return acc;
}

PolySurface PolySurface::from_json(const nlohmann::json& doc) {
    PolySurface s(doc.at("m").get<int>(), doc.at("n").get<int>());
    for (const auto& entry : doc.at("coefficients")) {
        s.set_coeff(entry.at("i").get<int>(), entry.at("j").get<int>(),
                    entry.at("value").get<double>());
    }
    return s;
}

PolySurface PolySurface::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open surface file " + path.string());
    }
    return from_json(nlohmann::json::parse(in));
}

nlohmann::ordered_json PolySurface::to_json() const {
    nlohmann::ordered_json doc;
    doc["m"] = m_;
    doc["n"] = n_;
    auto list = nlohmann::ordered_json::array();
    for (const auto& [i, j] : terms()) {
        nlohmann::ordered_json e;
        e["i"] = i;
        e["j"] = j;
        e["value"] = coeff(i, j);
        list.push_back(e);
    }
    doc["coefficients"] = list;
    return doc;
}

double eval_surface(const PolySurface& s, double log10_pr, double snr0_db) {
    return s(log10_pr, snr0_db);
}

GoFReport goodness_of_fit(std::span<const double> observed, std::span<const double> predicted,
                          std::size_t n_params) {
    const std::size_t n = observed.size();
    if (n != predicted.size() || n == 0) {
        throw DomainError("goodness_of_fit: mismatched or empty inputs");
    }
    if (n <= n_params) {
        throw RankError("goodness_of_fit: no residual degrees of freedom");
    }
    double mean = 0.0;
    for (double v : observed) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    double sse = 0.0;
    double sst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = observed[i] - predicted[i];
        sse += r * r;
        sst += (observed[i] - mean) * (observed[i] - mean);
    }
    const double r2 = sst > 0.0 ? 1.0 - sse / sst : (sse == 0.0 ? 1.0 : 0.0);
    const double dof_ratio =
        static_cast<double>(n - 1) / static_cast<double>(n - n_params);
    return {sse, std::sqrt(sse / static_cast<double>(n)), r2, 1.0 - (1.0 - r2) * dof_ratio};
}

SurfaceFit fit_open_distance_surface(std::span<const SurfacePoint> points, int m, int n) {
    if (m < 1 || n < 1) {
        throw DomainError("surface degrees must be >= 1");
    }
    PolySurface surface(m, n);
    const auto basis = surface.terms();
    const auto rows = static_cast<Eigen::Index>(points.size());
    const auto cols = static_cast<Eigen::Index>(basis.size());
    if (rows <= cols) {
        throw RankError("surface fit needs more points (" + std::to_string(points.size()) +
                        ") than coefficients (" + std::to_string(basis.size()) + ")");
    }

    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& p = points[static_cast<std::size_t>(r)];
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto [i, j] = basis[static_cast<std::size_t>(c)];
            design(r, c) = std::pow(p.x, i) * std::pow(p.y, j);
        }
        rhs(r) = p.z;
    }

    // Column equilibration; powers of SNR0 in dB span many decades.
    Eigen::VectorXd scale = design.colwise().norm().transpose();
    for (Eigen::Index c = 0; c < cols; ++c) {
        if (scale(c) == 0.0) {
            throw RankError("surface design matrix has an all-zero column");
        }
        design.col(c) /= scale(c);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-13);
    if (qr.rank() < cols) {
        throw RankError("surface design matrix is rank deficient (rank " +
                        std::to_string(qr.rank()) + " of " + std::to_string(cols) + ")");
    }
    const Eigen::VectorXd solution = qr.solve(rhs);

    for (Eigen::Index c = 0; c < cols; ++c) {
        const auto [i, j] = basis[static_cast<std::size_t>(c)];
        surface.set_coeff(i, j, solution(c) / scale(c));
    }

    std::vector<double> observed;
    std::vector<double> predicted;
    for (const auto& p : points) {
        observed.push_back(p.z);
        predicted.push_back(surface(p.x, p.y));
    }
    return {surface, goodness_of_fit(observed, predicted, basis.size())};
}

}  // namespace uwrelay

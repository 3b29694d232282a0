#include <cmath>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "uwrelay/errors.hpp"
#include "uwrelay/fitmodels.hpp"

using namespace uwrelay;

TEST_CASE("line fit recovers exact lines") {
    const std::vector<double> x{0.0, 1.0, 2.0, 5.0};
    std::vector<double> y;
    for (double v : x) {
        y.push_back(-0.7 * v + 3.25);
    }
    const LineFit f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(-0.7).epsilon(1e-14));
    CHECK(f.intercept == doctest::Approx(3.25).epsilon(1e-14));
}

TEST_CASE("line fit rank failures") {
    CHECK_THROWS_AS(fit_line(std::vector<double>{1.0}, std::vector<double>{2.0}), RankError);
    CHECK_THROWS_AS(fit_line(std::vector<double>{2.0, 2.0, 2.0}, std::vector<double>{1.0, 2.0, 3.0}),
                    RankError);
    CHECK_THROWS_AS(fit_line(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0}), DomainError);
}

TEST_CASE("power-law fits invert synthetic laws") {
    std::vector<PowerLawSample> b;
    std::vector<PowerLawSample> p;
    for (double l : log_spaced(1.0, 100.0, 25)) {
        b.push_back({l, 26.0 * std::pow(l, -0.54)});
        p.push_back({l, 3e-4 * std::pow(l, 2.2)});
    }
    const BandwidthLaw bl = fit_bandwidth_model(b);
    CHECK(bl.omega_khz == doctest::Approx(26.0).epsilon(1e-12));
    CHECK(bl.lambda == doctest::Approx(0.54).epsilon(1e-12));
    const Environment env;
    const PowerLaw pl = fit_power_model(p, env);
    CHECK(pl.psi_w == doctest::Approx(3e-4).epsilon(1e-12));
    CHECK(pl.gamma == doctest::Approx(2.2).epsilon(1e-12));
    CHECK(pl.delta_upa == doctest::Approx(3e-4 * 0.25 / std::pow(10.0, -17.2)).epsilon(1e-12));

    b.push_back({0.0, 1.0});
    CHECK_THROWS_AS(fit_bandwidth_model(b), DomainError);
}

TEST_CASE("fits on the default grid agree with the independent oracle") {
    const auto ref = testsupport::oracle_values()["fit_log_grid"];
    const Environment env;
    const ChannelSamples s = sample_channel(ChannelModel(env), default_fit_distances());
    for (double snr : {5.0, 10.0, 15.0, 20.0, 25.0}) {
        const FitModel m = fit_model(s, snr, env);
        const auto& pr = ref["power"][std::to_string(static_cast<int>(snr))];
        CHECK(m.lambda == doctest::Approx(ref["lambda"].get<double>()).epsilon(1e-7));
        CHECK(std::log10(m.omega_khz) == doctest::Approx(ref["log10_omega"].get<double>()).epsilon(1e-7));
        CHECK(m.gamma == doctest::Approx(pr["gamma"].get<double>()).epsilon(1e-7));
        CHECK(std::log10(m.psi_w) == doctest::Approx(pr["log10_psi"].get<double>()).epsilon(1e-7));
    }
}

TEST_CASE("psi trend has slope 0.1 per dB because P_T is linear in the SNR") {
    const Environment env;
    const ChannelSamples s = sample_channel(ChannelModel(env), log_spaced(1.0, 100.0, 12));
    std::vector<FitModel> models;
    for (double snr = 5.0; snr <= 25.0; snr += 5.0) {
        models.push_back(fit_model(s, snr, env));
    }
    const PsiTrend t = fit_psi_trend(models);
    CHECK(t.slope_per_db == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(models[0].gamma == doctest::Approx(models[4].gamma).epsilon(1e-12));
}

TEST_CASE("reference model") {
    const FitModel m = FitModel::reference(15.0);
    CHECK(m.lambda == 0.5392);
    CHECK(m.gamma == 2.2074);
    CHECK(std::log10(m.omega_khz) == doctest::Approx(1.4291));
    CHECK(std::log10(m.psi_w) == doctest::Approx(1.5 - 4.904));
    CHECK(validate_ranges(m).empty());
}

TEST_CASE("range validation names every violated region") {
    FitModel m = FitModel::reference(20.0);
    m.lambda = 0.62;
    m.gamma = 2.05;
    m.psi_w *= 2.0;  // 0.3 decades off the trend line
    const auto v = validate_ranges(m);
    REQUIRE(v.size() == 3);
    CHECK(v[0].which == RangeConstraint::Psi);
    CHECK(v[1].which == RangeConstraint::Lambda);
    CHECK(v[1].constraint == "Λ: 0.5 < λ < 0.6");
    CHECK(v[2].which == RangeConstraint::Gamma);
    CHECK_THROWS_AS(require_valid_ranges(m), ValidationError);

    m = FitModel::reference(20.0);
    m.omega_khz = -1.0;
    CHECK(validate_ranges(m).front().which == RangeConstraint::Omega);
    CHECK_NOTHROW(require_valid_ranges(FitModel::reference(10.0)));
}

TEST_CASE("log spacing") {
    const auto g = log_spaced(1.0, 100.0, 3);
    CHECK(g[0] == 1.0);
    CHECK(g[1] == doctest::Approx(10.0));
    CHECK(g[2] == 100.0);
    CHECK(default_fit_distances().size() == 60);
    CHECK_THROWS_AS(log_spaced(0.0, 1.0, 4), DomainError);
    CHECK_THROWS_AS(log_spaced(1.0, 2.0, 1), DomainError);
}

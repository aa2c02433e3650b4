#include "lticlust/error.hpp"
#include "lticlust/modal.hpp"
#include "lticlust/plantgen.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace lticlust;

namespace {

using cd = std::complex<double>;

FrequencyResponse sum_of_modes(double b0, const std::vector<ModalMode>& modes, const std::vector<double>& grid) {
    std::vector<Eigen::MatrixXcd> values;
    for (const double w : grid) {
        cd g = -b0 / (w * w);
        for (const auto& m : modes) g += oracle::resonator_response(m.omega_n, m.zeta, m.b, w);
        values.push_back(Eigen::MatrixXcd::Constant(1, 1, g));
    }
    return FrequencyResponse(grid, values);
}

std::vector<ModalMode> vcm_like_modes() {
    const double w1 = 2 * std::numbers::pi * 1900.0;
    const double w2 = 2 * std::numbers::pi * 2300.0;
    const double w3 = 2 * std::numbers::pi * 16500.0;
    return {{w1, 0.05, 5.0 * w1 * w1}, {w2, 0.05, 5.0 * w2 * w2}, {w3, 0.03, 0.25 * w3 * w3}};
}

}  // namespace

TEST_CASE("circle fit recovers an exact circle") {
    const cd centre(2.0, -3.0);
    const double radius = 0.75;
    std::vector<cd> pts;
    for (int k = 0; k < 12; ++k) pts.push_back(centre + std::polar(radius, 0.4 * k));
    const auto fit = circle_fit(pts);
    CHECK(std::abs(fit.center - centre) < 1e-12);
    CHECK(fit.radius == doctest::Approx(radius).epsilon(1e-12));
    CHECK(fit.residual < 1e-12);
    CHECK(fit.window_size() == 12);
}

TEST_CASE("circle fit rejects degenerate input") {
    std::vector<cd> few(6, cd(1.0, 0.0));
    CHECK_THROWS_AS(circle_fit(few), InputError);
    std::vector<cd> line;
    for (int k = 0; k < 10; ++k) line.emplace_back(k, 2.0 * k);
    CHECK_THROWS_AS(circle_fit(line), NumericalError);
    std::vector<cd> same(10, cd(1.0, 1.0));
    CHECK_THROWS_AS(circle_fit(same), NumericalError);
}

TEST_CASE("peak picking") {
    const auto grid = logspace_grid(10.0, 1e4, 3000);

    SUBCASE("two separated resonances") {
        const auto frf = sum_of_modes(0.0, {{100.0, 0.01, 1e4}, {2000.0, 0.01, 4e6}}, grid);
        const auto peaks = pick_peaks(frf);
        REQUIRE(peaks.size() == 2);
        CHECK(grid[peaks[0]] == doctest::Approx(100.0).epsilon(5e-3));
        CHECK(grid[peaks[1]] == doctest::Approx(2000.0).epsilon(5e-3));
    }
    SUBCASE("a smooth response has no peaks") {
        CHECK(pick_peaks(sum_of_modes(1e6, {}, grid)).empty());
        CHECK(pick_peaks(evaluate_frf(oracle::first_order(100.0), grid)).empty());
    }
    SUBCASE("peaks closer than the minimum separation are merged") {
        const auto frf = sum_of_modes(0.0, {{1000.0, 0.002, 1e6}, {1060.0, 0.002, 1e6}}, grid);
        CHECK(pick_peaks(frf).size() == 2);
        ModalConfig wide;
        wide.min_separation_decades = 0.05;
        CHECK(pick_peaks(frf, wide).size() == 1);
    }
    SUBCASE("prominence threshold") {
        const auto frf = sum_of_modes(0.0, {{1000.0, 0.3, 1e6}}, grid);
        ModalConfig strict;
        strict.prominence_db = 20.0;
        CHECK(pick_peaks(frf, strict).empty());
    }
    SUBCASE("input checks") {
        CHECK_THROWS_AS(pick_peaks(sum_of_modes(1.0, {}, logspace_grid(1.0, 10.0, 10))), InputError);
        const std::vector<Eigen::MatrixXcd> mimo(grid.size(), Eigen::MatrixXcd::Ones(2, 1));
        CHECK_THROWS_AS(pick_peaks(FrequencyResponse(grid, mimo)), InputError);
    }
}

TEST_CASE("single-mode extraction") {
    const double w = 1000.0, zeta = 0.01, b = 1e6;
    const auto grid = logspace_grid(100.0, 1e4, 4000);
    const double step = grid[1] / grid[0] - 1.0;
    const auto frf = sum_of_modes(0.0, {{w, zeta, b}}, grid);
    const auto peaks = pick_peaks(frf);
    REQUIRE(peaks.size() == 1);
    const auto est = extract_mode(frf, peaks[0]);

    CHECK(std::abs(est.mode.omega_n - w) <= w * step);
    CHECK(std::abs(est.sweep_frequency - w * std::sqrt(1.0 - 2.0 * zeta * zeta)) <= w * step);
    CHECK(oracle::relative(est.mode.zeta, zeta) < 0.02);
    CHECK(oracle::relative(est.mode.b, b) < 0.02);
    CHECK(est.loss_factor == doctest::Approx(2.0 * est.mode.zeta));
    CHECK(est.fit.window_size() >= 7);
    CHECK(est.fit.residual < 1e-6 * est.fit.radius);
    CHECK_FALSE(est.residual_warning);

    CHECK_THROWS_AS(extract_mode(frf, grid.size()), InputError);
    ModalConfig tiny;
    tiny.min_window = 5;
    CHECK_THROWS_AS(extract_mode(frf, peaks[0], tiny), InputError);
}

TEST_CASE("extraction accuracy across damping levels") {
    const auto grid = logspace_grid(100.0, 1e4, 4000);
    for (const double zeta : {0.003, 0.02, 0.08}) {
        const auto frf = sum_of_modes(0.0, {{1500.0, zeta, 2e6}}, grid);
        const auto peaks = pick_peaks(frf);
        REQUIRE(peaks.size() == 1);
        const auto est = extract_mode(frf, peaks[0]);
        CHECK(oracle::relative(est.mode.omega_n, 1500.0) < 2e-3);
        CHECK(oracle::relative(est.mode.zeta, zeta) < 0.05);
        CHECK(oracle::relative(est.mode.b, 2e6) < 0.05);
    }
}

TEST_CASE("feature names and flattening agree") {
    const auto names = feature_names(2);
    CHECK(names == std::vector<std::string>{"b0", "b1", "b2", "zeta1", "zeta2", "omega1", "omega2"});
    ModalFeatureVector v;
    v.b0 = 9.0;
    v.modes = {{10.0, 0.1, 1.0}, {20.0, 0.2, 2.0}};
    CHECK(v.flattened() == std::vector<double>{9.0, 1.0, 2.0, 0.1, 0.2, 10.0, 20.0});
    CHECK(v.flattened().size() == 1 + 3 * v.mode_count());
}

TEST_CASE("rigid body only") {
    const auto frf = sum_of_modes(2.5e7, {}, logspace_grid(10.0, 1e4, 500));
    const auto v = extract_features(frf);
    CHECK(v.mode_count() == 0);
    CHECK_FALSE(v.rigid_body_missing);
    CHECK(v.b0 == doctest::Approx(2.5e7).epsilon(1e-12));
}

TEST_CASE("missing rigid-body region is reported") {
    const auto frf = sum_of_modes(0.0, {{1000.0, 0.02, 1e6}}, logspace_grid(10.0, 1e4, 2000));
    const auto v = extract_features(frf);
    CHECK(v.rigid_body_missing);
    CHECK(v.b0 == 0.0);
    REQUIRE(v.mode_count() == 1);
    CHECK(oracle::relative(v.modes[0].omega_n, 1000.0) < 2e-3);
}

TEST_CASE("multi-mode extraction on a VCM-like response") {
    const auto truth = vcm_like_modes();
    const double b0 = 1e9;
    const auto grid = default_vcm_grid();
    const auto frf = sum_of_modes(b0, truth, grid);

    const auto v = extract_features(frf);
    REQUIRE(v.mode_count() == 3);
    CHECK_FALSE(v.rigid_body_missing);
    CHECK(oracle::relative(v.b0, b0) < 0.02);
    for (std::size_t k = 0; k < 3; ++k) {
        CAPTURE(k);
        CHECK(oracle::relative(v.modes[k].omega_n, truth[k].omega_n) < 5e-3);
        CHECK(oracle::relative(v.modes[k].zeta, truth[k].zeta) < 0.1);
        CHECK(oracle::relative(v.modes[k].b, truth[k].b) < 0.1);
    }
    for (std::size_t k = 1; k < 3; ++k) CHECK(v.modes[k].omega_n > v.modes[k - 1].omega_n);

    // Refinement must not make the reconstruction worse than the plain fits.
    ModalConfig plain;
    plain.refinement_passes = 0;
    const auto rough = extract_features(frf, plain);
    REQUIRE(rough.mode_count() == 3);
    auto error = [&](const ModalFeatureVector& fv) {
        const auto rebuilt = sum_of_modes(fv.b0, fv.modes, grid);
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            num += std::norm(rebuilt.siso(k) - frf.siso(k));
            den += std::norm(frf.siso(k));
        }
        return std::sqrt(num / den);
    };
    CHECK(error(v) <= error(rough));
    CHECK(error(v) < 0.01);
}

#include "lticlust/distances.hpp"
#include "lticlust/error.hpp"
#include "lticlust/lti.hpp"
#include "lticlust/plantgen.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace lticlust;

TEST_CASE("default templates") {
    const auto templates = default_vcm_templates();
    REQUIRE(templates.size() == 3);
    for (const auto& t : templates) {
        CHECK_NOTHROW(t.validate());
        CHECK(t.b0 == kVcmRigidBodyGain);
        REQUIRE(t.modes.size() == 3);
        for (const auto& m : t.modes) CHECK(m.b > 0.0);
    }
    CHECK(templates[0].name != templates[1].name);

    const auto grid = default_vcm_grid();
    CHECK(grid.size() == 2000);
    CHECK(grid.front() == doctest::Approx(2 * std::numbers::pi * 100.0));
    CHECK(grid.back() == doctest::Approx(2 * std::numbers::pi * 40000.0));
}

TEST_CASE("template validation") {
    PlantTemplate t{"t", 1.0, {{100.0, 0.05, 1.0}, {200.0, 0.05, 1.0}}};
    CHECK_NOTHROW(t.validate());
    auto bad = t;
    bad.b0 = -1.0;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = t;
    bad.modes[1].omega_n = 50.0;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = t;
    bad.modes[0].zeta = 0.0;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = t;
    bad.modes[0].zeta = 0.25;
    CHECK_THROWS_AS(bad.validate(), InputError);

    PerturbationSpec spec;
    spec.b = 0.5;
    CHECK_THROWS_AS(spec.validate(), InputError);
    spec.b = -0.1;
    CHECK_THROWS_AS(spec.validate(), InputError);
}

TEST_CASE("template_frf matches the sum of modes") {
    const PlantTemplate t{"t", 4.0, {{10.0, 0.1, 3.0}, {40.0, 0.02, -2.0}}};
    const auto grid = logspace_grid(1.0, 100.0, 50);
    const auto frf = template_frf(t, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double w = grid[k];
        std::complex<double> g = -4.0 / (w * w);
        for (const auto& m : t.modes) g += oracle::resonator_response(m.omega_n, m.zeta, m.b, w);
        CHECK(std::abs(frf.siso(k) - g) <= 1e-14 * std::abs(g) + 1e-300);
    }
}

TEST_CASE("modal realization reproduces the template response") {
    const auto t = default_vcm_templates()[1];
    const auto grid = default_vcm_grid();
    const auto exact = template_to_model(t);
    CHECK(exact.order() == 8);
    CHECK_FALSE(is_asymptotically_stable(exact));
    const auto frf = template_frf(t, grid);
    const auto model_frf = evaluate_frf(exact, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(std::abs(model_frf.siso(k) - frf.siso(k)) <= 1e-9 * std::abs(frf.siso(k)));
    }

    const auto damped = template_to_model(t, RigidBody::damped(0.005));
    CHECK(damped.order() == 8);
    CHECK(is_asymptotically_stable(damped));
    const double w0 = RigidBody::damped().omega;
    std::vector<double> high;
    for (const double w : grid) {
        if (w >= 10.5 * w0) high.push_back(w);
    }
    const auto d_frf = evaluate_frf(damped, high);
    const auto e_frf = template_frf(t, high);
    for (std::size_t k = 0; k < high.size(); ++k) {
        CHECK(std::abs(d_frf.siso(k) - e_frf.siso(k)) <= 0.01 * std::abs(e_frf.siso(k)));
    }
    CHECK_THROWS_AS(template_to_model(t, RigidBody::damped(0.0)), InputError);
}

TEST_CASE("perturbations stay inside their ranges") {
    const auto t = default_vcm_templates()[0];
    PerturbationSpec spec;
    spec.seed = 99;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto p = perturb_template(t, spec, i);
        CHECK(p.b0 == t.b0);
        CHECK(p.name == t.name);
        for (std::size_t k = 0; k < 3; ++k) {
            const double fw = p.modes[k].omega_n / t.modes[k].omega_n;
            const double fz = p.modes[k].zeta / t.modes[k].zeta;
            const double fb = p.modes[k].b / t.modes[k].b;
            CHECK(std::abs(fw - 1.0) <= spec.omega);
            CHECK(std::abs(fz - 1.0) <= spec.zeta);
            CHECK(std::abs(fb - 1.0) <= spec.b);
        }
    }
    PerturbationSpec none;
    none.omega = none.zeta = none.b = 0.0;
    const auto same = perturb_template(t, none, 5);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(same.modes[k].omega_n == t.modes[k].omega_n);
        CHECK(same.modes[k].zeta == t.modes[k].zeta);
        CHECK(same.modes[k].b == t.modes[k].b);
    }
}

TEST_CASE("batches are reproducible and plant-indexed") {
    const auto templates = default_vcm_templates();
    const auto grid = logspace_grid(1e3, 1e5, 200);
    PerturbationSpec spec;
    spec.seed = 7;
    const auto a = generate_batch(templates, 4, spec, grid);
    const auto b = generate_batch(templates, 4, spec, grid);
    REQUIRE(a.frfs.size() == 12);
    CHECK(a.labels == std::vector<std::size_t>{0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2});
    CHECK(a.names[0] == templates[0].name + "_0");
    CHECK(a.names[5] == templates[1].name + "_1");
    for (std::size_t i = 0; i < 12; ++i) {
        CHECK(a.frfs[i].values() == b.frfs[i].values());
        const auto direct = perturb_template(templates[a.labels[i]], spec, i);
        CHECK(direct.modes[2].b == a.plants[i].modes[2].b);
    }

    spec.seed = 8;
    const auto c = generate_batch(templates, 4, spec, grid);
    CHECK(c.plants[0].modes[0].omega_n != a.plants[0].modes[0].omega_n);

    const auto uneven = generate_batch_total(templates, 10, spec, grid);
    CHECK(uneven.labels == std::vector<std::size_t>{0, 0, 0, 0, 1, 1, 1, 2, 2, 2});
    CHECK_THROWS_AS(generate_batch_total(templates, 2, spec, grid), InputError);
    CHECK_THROWS_AS(generate_batch(templates, 0, spec, grid), InputError);
}

TEST_CASE("templates are farther apart than their perturbations") {
    const auto templates = default_vcm_templates();
    PerturbationSpec spec;
    spec.seed = 3;
    const auto batch = generate_batch(templates, 5, spec, default_vcm_grid());
    SystemBatch systems;
    for (const auto& f : batch.frfs) systems.items.emplace_back(f);
    const auto dm = distance_matrix(systems, Metric::hinf_frf);
    double intra = 0.0;
    double inter = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dm.size(); ++i) {
        for (std::size_t j = i + 1; j < dm.size(); ++j) {
            if (batch.labels[i] == batch.labels[j]) {
                intra = std::max(intra, dm(i, j));
            } else {
                inter = std::min(inter, dm(i, j));
            }
        }
    }
    CHECK(intra < inter);
}

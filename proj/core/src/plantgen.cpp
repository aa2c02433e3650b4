#include "lticlust/plantgen.hpp"

#include "lticlust/error.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace lticlust {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct BaseMode {
    const char* name;
    double hz;
    double zeta;
    double scale;  // b = scale * omega^2
};

// Butterfly, torsion and sway.
constexpr std::array<BaseMode, 3> kBaseModes{{
    {"butterfly", 1900.0, 0.05, 5.0},
    {"torsion", 2300.0, 0.05, 5.0},
    {"sway", 16500.0, 0.03, 0.25},
}};

struct TemplateOffsets {
    const char* name;
    std::array<double, 3> frequency;
    std::array<double, 3> gain;
};

constexpr std::array<TemplateOffsets, 3> kOffsets{{
    {"vcm_a", {0.03, -0.03, 0.0}, {1.0, 1.2, 1.0}},
    {"vcm_b", {-0.03, -0.03, 0.0}, {0.8, 0.8, 1.0}},
    {"vcm_c", {0.03, 0.03, 0.0}, {0.8, 1.2, 1.0}},
}};

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double factor(std::mt19937_64& rng, double half_width) {
    const double u = uniform01(rng);
    return 1.0 + half_width * (2.0 * u - 1.0);
}

// 2x2 block [[0, w], [-w, -2 zeta w]] driven through its second state so
// that c * beta * w = gain; the channel gains are balanced.
void place_block(Eigen::MatrixXd& A, Eigen::MatrixXd& B, Eigen::MatrixXd& C, Eigen::Index at, double omega,
                 double zeta, double gain) {
    A(at, at + 1) = omega;
    A(at + 1, at) = -omega;
    A(at + 1, at + 1) = -2.0 * zeta * omega;
    const double mag = std::sqrt(std::abs(gain) / omega);
    B(at + 1, 0) = mag;
    C(0, at) = gain < 0.0 ? -mag : mag;
}

}  // namespace

void PlantTemplate::validate() const {
    if (!(b0 >= 0.0) || !std::isfinite(b0)) throw InputError("template " + name + ": b0 must be finite and >= 0");
    for (std::size_t k = 0; k < modes.size(); ++k) {
        const auto& m = modes[k];
        if (!(m.omega_n > 0.0) || !std::isfinite(m.omega_n) || !std::isfinite(m.b)) {
            throw InputError("template " + name + ": mode frequencies must be positive and finite");
        }
        if (!(m.zeta > 0.0 && m.zeta <= 0.2)) throw InputError("template " + name + ": zeta must lie in (0, 0.2]");
        if (k > 0 && !(m.omega_n > modes[k - 1].omega_n)) {
            throw InputError("template " + name + ": modes must be in ascending frequency");
        }
    }
}

void PerturbationSpec::validate() const {
    for (const double d : {omega, zeta, b}) {
        if (!(d >= 0.0 && d < 0.5)) throw InputError("perturbation ranges must lie in [0, 0.5)");
    }
}

std::vector<PlantTemplate> default_vcm_templates() {
    std::vector<PlantTemplate> out;
    for (const auto& off : kOffsets) {
        PlantTemplate t;
        t.name = off.name;
        t.b0 = kVcmRigidBodyGain;
        for (std::size_t k = 0; k < kBaseModes.size(); ++k) {
            const auto& base = kBaseModes[k];
            const double w = kTwoPi * base.hz * (1.0 + off.frequency[k]);
            t.modes.push_back({w, base.zeta, base.scale * off.gain[k] * w * w});
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<double> default_vcm_grid() {
    return logspace_grid(kTwoPi * 100.0, kTwoPi * 40000.0, 2000);
}

FrequencyResponse template_frf(const PlantTemplate& t, const std::vector<double>& grid) {
    t.validate();
    std::vector<Eigen::MatrixXcd> values;
    values.reserve(grid.size());
    for (const double w : grid) {
        std::complex<double> g = -t.b0 / (w * w);
        for (const auto& m : t.modes) {
            g += m.b / std::complex<double>(m.omega_n * m.omega_n - w * w, 2.0 * m.zeta * m.omega_n * w);
        }
        Eigen::MatrixXcd v(1, 1);
        v(0, 0) = g;
        values.push_back(std::move(v));
    }
    return FrequencyResponse(grid, std::move(values));
}

PlantTemplate perturb_template(const PlantTemplate& t, const PerturbationSpec& spec, std::uint64_t plant_index) {
    t.validate();
    spec.validate();
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed & 0xffffffffU), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(plant_index & 0xffffffffU),
                      static_cast<std::uint32_t>(plant_index >> 32)};
    std::mt19937_64 rng(seq);
    PlantTemplate out = t;
    for (auto& m : out.modes) {
        m.omega_n *= factor(rng, spec.omega);
        m.zeta = std::min(m.zeta * factor(rng, spec.zeta), 0.2);
        m.b *= factor(rng, spec.b);
    }
    out.validate();
    return out;
}

GeneratedBatch generate_batch(const std::vector<PlantTemplate>& templates, std::size_t per_template_count,
                              const PerturbationSpec& spec, const std::vector<double>& grid) {
    if (templates.empty() || per_template_count == 0) throw InputError("generate_batch needs templates and a count >= 1");
    return generate_batch_total(templates, per_template_count * templates.size(), spec, grid);
}

GeneratedBatch generate_batch_total(const std::vector<PlantTemplate>& templates, std::size_t total,
                                    const PerturbationSpec& spec, const std::vector<double>& grid) {
    if (templates.empty() || total < templates.size()) {
        throw InputError("generate_batch_total needs at least one plant per template");
    }
    GeneratedBatch out;
    const std::size_t base = total / templates.size();
    const std::size_t extra = total % templates.size();
    std::size_t index = 0;
    for (std::size_t t = 0; t < templates.size(); ++t) {
        const std::size_t count = base + (t < extra ? 1 : 0);
        for (std::size_t r = 0; r < count; ++r, ++index) {
            PlantTemplate plant = perturb_template(templates[t], spec, index);
            plant.name = templates[t].name + "_" + std::to_string(r);
            out.frfs.push_back(template_frf(plant, grid));
            out.names.push_back(plant.name);
            out.plants.push_back(std::move(plant));
            out.labels.push_back(t);
        }
    }
    return out;
}

StateSpaceModel template_to_model(const PlantTemplate& t, const RigidBody& rigid_body) {
    t.validate();
    const auto n = static_cast<Eigen::Index>(2 * (t.modes.size() + 1));
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, 1);
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(1, n);
    if (rigid_body.kind == RigidBody::Kind::exact) {
        const double g = std::sqrt(t.b0);
        A(0, 1) = 1.0;
        B(1, 0) = g;
        C(0, 0) = g;
    } else {
        if (!(rigid_body.omega > 0.0) || !(rigid_body.zeta > 0.0)) {
            throw InputError("damped rigid body needs positive omega and zeta");
        }
        place_block(A, B, C, 0, rigid_body.omega, rigid_body.zeta, t.b0);
    }
    for (std::size_t k = 0; k < t.modes.size(); ++k) {
        const auto& m = t.modes[k];
        place_block(A, B, C, static_cast<Eigen::Index>(2 * (k + 1)), m.omega_n, m.zeta, m.b);
    }
    return StateSpaceModel(std::move(A), std::move(B), std::move(C), Eigen::MatrixXd::Zero(1, 1));
}

}  // namespace lticlust

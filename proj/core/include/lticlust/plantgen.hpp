#pragma once

#include "lticlust/frequency_response.hpp"
#include "lticlust/modal.hpp"
#include "lticlust/state_space.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lticlust {

/// G(s) = b0 / s^2 + sum_k b_k / (s^2 + 2 zeta_k w_k s + w_k^2).
struct PlantTemplate {
    std::string name;
    double b0 = 0.0;
    std::vector<ModalMode> modes;

    void validate() const;
};

/// Relative half-widths of the uniform perturbations applied per mode.
struct PerturbationSpec {
    double omega = 0.01;
    double zeta = 0.10;
    double b = 0.05;
    std::uint64_t seed = 0;

    void validate() const;
};

struct GeneratedBatch {
    std::vector<FrequencyResponse> frfs;
    std::vector<PlantTemplate> plants;
    std::vector<std::size_t> labels;
    std::vector<std::string> names;
};

/// Rigid-body constant shared by the default templates.
inline constexpr double kVcmRigidBodyGain = 1e9;

/// Three VCM templates built on the butterfly (1.9 kHz), torsion (2.3 kHz)
/// and sway (16.5 kHz) modes, each shifted by +/-3% in frequency and up to
/// 20% in modal constant so that every pair differs in two modes.
std::vector<PlantTemplate> default_vcm_templates();

/// 2000 log-spaced points from 100 Hz to 40 kHz, in rad/s.
std::vector<double> default_vcm_grid();

/// Exact sum-of-modes response on the grid.
FrequencyResponse template_frf(const PlantTemplate& t, const std::vector<double>& grid);

/// Template with every mode's omega, zeta and b scaled by independent
/// uniform factors 1 + U(-d, d). The rigid-body constant is not perturbed.
PlantTemplate perturb_template(const PlantTemplate& t, const PerturbationSpec& spec, std::uint64_t plant_index);

/// `per_template_count` plants from each template, template-major order.
/// Plant i draws from its own stream derived from (spec.seed, i).
GeneratedBatch generate_batch(const std::vector<PlantTemplate>& templates, std::size_t per_template_count,
                              const PerturbationSpec& spec, const std::vector<double>& grid);

/// Distributes `total` plants over the templates (earlier templates take the remainder).
GeneratedBatch generate_batch_total(const std::vector<PlantTemplate>& templates, std::size_t total,
                                    const PerturbationSpec& spec, const std::vector<double>& grid);

/// How the b0 / s^2 term is realized.
struct RigidBody {
    enum class Kind { exact, damped } kind = Kind::exact;
    double zeta = 0.005;
    double omega = 2.0 * 3.14159265358979323846 * 10.0;

    static RigidBody exact() { return {}; }
    static RigidBody damped(double zeta = 0.005, double omega = 2.0 * 3.14159265358979323846 * 10.0) {
        return {Kind::damped, zeta, omega};
    }
};

/// Block-diagonal modal realization, one 2x2 block per mode plus the
/// rigid-body block. `exact` keeps the double integrator (marginally
/// stable); `damped` uses b0 / (s^2 + 2 zeta0 w0 s + w0^2).
StateSpaceModel template_to_model(const PlantTemplate& t, const RigidBody& rigid_body = RigidBody::exact());

}  // namespace lticlust

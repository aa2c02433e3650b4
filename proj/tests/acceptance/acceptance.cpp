// Acceptance suite: one PASS/FAIL line per criterion with its runtime.
// Usage: lticlust_acceptance [work_dir]

#include "commands.hpp"
#include "lticlust/distances.hpp"
#include "lticlust/error.hpp"
#include "lticlust/evaluation.hpp"
#include "lticlust/io.hpp"
#include "lticlust/kmedoids.hpp"
#include "lticlust/modal.hpp"
#include "lticlust/norms.hpp"
#include "lticlust/plantgen.hpp"
#include "oracles.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

using namespace lticlust;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path g_work;

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double time_limit;  // seconds; 0 means no limit
    std::function<Verdict()> run;
};

std::string fmt(double v, int precision = 6) {
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return os.str();
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli_run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

void cli_ok(const std::vector<std::string>& args) {
    const auto r = cli_run(args);
    if (r.code != 0) throw std::runtime_error("lticlust " + args.front() + " exited with " + std::to_string(r.code) + ": " + r.err);
}

fs::path fresh(const std::string& name) {
    const auto dir = g_work / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// ------------------------------------------------------------------ 1

Verdict norm_oracles() {
    const double h2 = h2_norm_model(oracle::first_order(1.0));
    const double zeta = 0.1;
    const double hinf = hinf_norm_model(oracle::resonator(1.0, zeta, 1.0)).value;
    const double h2_ref = 1.0 / std::sqrt(2.0);
    const double hinf_ref = 1.0 / (2.0 * zeta * std::sqrt(1.0 - zeta * zeta));
    const bool ok = std::abs(h2 - h2_ref) <= 1e-6 && std::abs(hinf - 5.0252) <= 1e-4 && std::abs(hinf - hinf_ref) <= 1e-4;
    return {ok, "h2 = " + fmt(h2, 10) + ", hinf = " + fmt(hinf, 10) + " (analytic " + fmt(hinf_ref, 10) + ")"};
}

// ------------------------------------------------------------------ 2

Verdict model_frf_consistency() {
    std::mt19937_64 rng(2024);
    double worst_h2 = 0.0;
    double worst_hinf = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto n = static_cast<Eigen::Index>(1 + i % 10);
        const auto g = oracle::random_stable(rng, n, 1 + i % 2, 1 + (i / 2) % 2);
        const Eigen::VectorXcd poles = g.A().eigenvalues();
        const double lo = poles.cwiseAbs().minCoeff() * 1e-4;
        const double hi = poles.cwiseAbs().maxCoeff() * 1e4;
        const auto frf = evaluate_frf(g, logspace_grid(lo, hi, 40000));
        worst_h2 = std::max(worst_h2, oracle::relative(h2_norm_frf(frf), h2_norm_model(g)));
        worst_hinf = std::max(worst_hinf, oracle::relative(hinf_norm_frf(frf).value, hinf_norm_model(g).value));
    }
    return {worst_h2 < 0.01 && worst_hinf < 0.01,
            "worst relative gap h2 " + fmt(worst_h2, 3) + ", hinf " + fmt(worst_hinf, 3)};
}

// ------------------------------------------------------------------ 3

Verdict metric_axioms() {
    PerturbationSpec spec;
    spec.seed = 7;
    const auto batch = generate_batch_total(default_vcm_templates(), 30, spec, default_vcm_grid());
    SystemBatch systems;
    for (const auto& f : batch.frfs) systems.items.emplace_back(f);
    std::size_t violations = 0;
    std::size_t triples = 0;
    bool structure = true;
    for (const auto metric : {Metric::h2_frf, Metric::hinf_frf}) {
        const auto dm = distance_matrix(systems, metric);
        const std::size_t N = dm.size();
        for (std::size_t i = 0; i < N; ++i) {
            structure = structure && dm(i, i) == 0.0;
            for (std::size_t j = 0; j < N; ++j) structure = structure && dm(i, j) == dm(j, i) && dm(i, j) >= 0.0;
        }
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = i + 1; j < N; ++j) {
                for (std::size_t k = j + 1; k < N; ++k) {
                    ++triples;
                    const double a = dm(i, j), b = dm(j, k), c = dm(i, k);
                    if (a > b + c + 1e-9 || b > a + c + 1e-9 || c > a + b + 1e-9) ++violations;
                }
            }
        }
    }
    return {structure && violations == 0 && triples == 2 * 4060,
            std::to_string(triples) + " triples checked, " + std::to_string(violations) + " violations" +
                (structure ? "" : ", diagonal/symmetry broken")};
}

// ------------------------------------------------------------------ 4

Verdict realization_invariance() {
    std::mt19937_64 rng(404);
    double worst_model = 0.0;
    double least_realization = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = oracle::random_stable(rng, 6, 2, 2);
        const auto gt = g.similarity_transform(oracle::random_similarity(rng, 6, 10.0));
        worst_model = std::max({worst_model, h_distance(g, gt, Metric::h2_model), h_distance(g, gt, Metric::hinf_model)});
        least_realization = std::min(least_realization, realization_distance(g, gt));
    }
    return {worst_model <= 1e-8 && least_realization > 0.0,
            "max model distance " + fmt(worst_model, 3) + ", min realization distance " + fmt(least_realization, 4)};
}

// ------------------------------------------------------------------ 5

DistanceMatrix random_symmetric(std::mt19937_64& rng, std::size_t N) {
    DistanceMatrix dm;
    dm.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    for (Eigen::Index i = 0; i < dm.values.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < dm.values.rows(); ++j) dm.values(i, j) = dm.values(j, i) = oracle::uniform(rng, 0.0, 1.0);
        dm.labels.push_back("m" + std::to_string(i));
    }
    return dm;
}

Verdict kmedoids_optimality() {
    std::mt19937_64 rng(505);
    double worst = 1.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto dm = random_symmetric(rng, 8);
        for (std::size_t k = 2; k <= 4; ++k) {
            worst = std::max(worst, kmedoids(dm, k).total_cost / oracle::brute_force_medoid_cost(dm, k));
        }
    }
    int exact = 0;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Eigen::Vector2d> pts;
        const Eigen::Vector2d centres[3] = {{0.0, 0.0}, {20.0, 0.0}, {0.0, 20.0}};
        for (std::size_t i = 0; i < 8; ++i) {
            pts.push_back(centres[i % 3] + Eigen::Vector2d(oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1)));
        }
        const auto dm = oracle::euclidean(pts);
        exact += kmedoids(dm, 3).total_cost <= oracle::brute_force_medoid_cost(dm, 3) * (1.0 + 1e-12) ? 1 : 0;
    }
    return {worst <= 1.05 && exact == 50,
            "worst cost ratio " + fmt(worst, 6) + " on 150 random problems, exact on " + std::to_string(exact) +
                "/50 separated instances"};
}

// ------------------------------------------------------------------ 6

Verdict hard_experiment() {
    const auto dir = fresh("hard");
    const auto plants = dir / "plants";
    cli_ok({"gen", "--plants", "30", "--clusters", "3", "--seed", "7", "--out", plants.string()});
    std::string detail;
    bool ok = true;
    for (const std::string metric : {"hinf_frf", "h2_frf"}) {
        const auto dist = dir / ("dist_" + metric + ".csv");
        const auto out = dir / ("cluster_" + metric);
        cli_ok({"dist", plants.string(), "--metric", metric, "--seed", "7", "--out", dist.string()});
        cli_ok({"cluster", "--dist", dist.string(), "--k", "auto", "--labels", (plants / "labels.csv").string(), "--seed",
                "7", "--out", out.string()});
        const auto doc = json::parse(read_text_file(out / "clustering.json"));
        const auto k = doc["k"].get<std::size_t>();
        const double acc = doc["accuracy"].get<double>();
        ok = ok && k == 3 && acc == 1.0;
        detail += (detail.empty() ? "" : "; ") + metric + ": k_star " + std::to_string(k) + ", accuracy " + fmt(acc);
    }
    return {ok, detail};
}

// ------------------------------------------------------------------ 7

Verdict modal_extraction() {
    const double w = 2.0 * std::numbers::pi * 5000.0;
    const auto grid = logspace_grid(w / 1.25, w * 1.25, 200);
    double err_w = 0.0, err_z = 0.0, err_b = 0.0;
    bool counts = true;
    for (const double zeta : {0.005, 0.01, 0.02, 0.05}) {
        const PlantTemplate t{"single", 0.0, {{w, zeta, w * w}}};
        const auto features = extract_features(template_frf(t, grid));
        if (features.mode_count() != 1) {
            counts = false;
            continue;
        }
        const auto& m = features.modes.front();
        err_w = std::max(err_w, oracle::relative(m.omega_n, w));
        err_z = std::max(err_z, oracle::relative(m.zeta, zeta));
        err_b = std::max(err_b, oracle::relative(m.b, w * w));
    }
    return {counts && err_w <= 2e-3 && err_z <= 0.05 && err_b <= 0.05,
            std::string(counts ? "" : "mode count wrong; ") + "worst relative error omega " + fmt(err_w, 3) + ", zeta " +
                fmt(err_z, 3) + ", b " + fmt(err_b, 3)};
}

// ------------------------------------------------------------------ 8

Verdict soft_experiment() {
    const auto dir = fresh("soft");
    const auto plants = dir / "plants";
    cli_ok({"gen", "--plants", "300", "--clusters", "3", "--seed", "7", "--out", plants.string()});
    const auto features = dir / "features.csv";
    cli_ok({"features", plants.string(), "--seed", "7", "--out", features.string()});
    const auto table = read_feature_csv(features);
    cli_ok({"gmm", "--features", features.string(), "--k", "3", "--seed", "7", "--labels",
            (plants / "labels.csv").string(), "--out", (dir / "gmm").string()});
    const auto doc = json::parse(read_text_file(dir / "gmm" / "gmm_model.json"));
    const double acc = doc["accuracy"].get<double>();
    double worst_drop = 0.0;
    for (const auto& trace : doc["objective_traces"]) {
        for (std::size_t t = 1; t < trace.size(); ++t) {
            worst_drop = std::max(worst_drop, trace[t - 1].get<double>() - trace[t].get<double>());
        }
    }
    const std::size_t dim = 1 + 3 * table.mode_count;
    return {dim == 10 && table.rows.size() == 300 && acc >= 0.99 && worst_drop <= 1e-9,
            std::to_string(table.rows.size()) + " plants, " + std::to_string(dim) + " features, accuracy " + fmt(acc) +
                ", largest objective drop " + fmt(worst_drop, 3)};
}

// ------------------------------------------------------------------ 9

std::map<std::string, std::string> snapshot(const fs::path& root) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = read_text_file(e.path());
    }
    return files;
}

void pipeline(const fs::path& dir, const std::string& threads) {
    const auto plants = dir / "plants";
    cli_ok({"gen", "--plants", "30", "--seed", "11", "--models", "--out", plants.string()});
    cli_ok({"dist", plants.string(), "--metric", "hinf_frf", "--threads", threads, "--seed", "11", "--out",
            (dir / "d_hinf.csv").string()});
    cli_ok({"dist", (plants / "models").string(), "--metric", "hinf_model", "--threads", threads, "--seed", "11", "--out",
            (dir / "d_model.csv").string()});
    cli_ok({"cluster", "--dist", (dir / "d_hinf.csv").string(), "--seed", "11", "--out", (dir / "cl").string()});
    cli_ok({"features", plants.string(), "--threads", threads, "--seed", "11", "--out", (dir / "f.csv").string()});
    cli_ok({"gmm", "--features", (dir / "f.csv").string(), "--seed", "11", "--out", (dir / "gmm").string()});
    cli_ok({"plotdata", plants.string(), "--clustering", (dir / "cl" / "clustering.json").string(), "--seed", "11",
            "--out", (dir / "plot.csv").string()});
}

Verdict determinism() {
    const auto a = fresh("det_a");
    const auto b = fresh("det_b");
    pipeline(a, "1");
    pipeline(b, "4");
    const auto fa = snapshot(a);
    const auto fb = snapshot(b);
    std::size_t differing = 0;
    for (const auto& [name, content] : fa) {
        const auto it = fb.find(name);
        if (it == fb.end() || it->second != content) ++differing;
    }
    return {fa.size() == fb.size() && differing == 0 && fa.size() > 60,
            std::to_string(fa.size()) + " artifacts compared (threads 1 vs 4), " + std::to_string(differing) + " differ"};
}

// ------------------------------------------------------------------ 10

Verdict closed_loop() {
    const auto dir = fresh("closed");
    const auto plants = dir / "plants";
    fs::create_directories(plants);
    std::vector<double> poles;
    for (int i = 0; i <= 10; ++i) poles.push_back(0.5 + 0.1 * i);
    for (std::size_t i = 0; i < poles.size(); ++i) {
        write_state_space(plants / ("a" + std::to_string(i / 10) + std::to_string(i % 10) + ".json"),
                          StateSpaceModel(Eigen::MatrixXd::Constant(1, 1, poles[i]), Eigen::MatrixXd::Ones(1, 1),
                                          Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Zero(1, 1)));
    }
    // Static gain K = 3 places every closed-loop pole at a - 3 <= -1.5.
    const auto controller = dir / "gain3.ctrl";
    write_state_space(controller, StateSpaceModel::gain(Eigen::MatrixXd::Constant(1, 1, 3.0)));
    const auto dist = dir / "closed.csv";
    cli_ok({"dist", plants.string(), "--metric", "h2_model", "--controller", controller.string(), "--out", dist.string()});
    const auto dm = read_distance_csv(dist);
    cli_ok({"cluster", "--dist", dist.string(), "--k", "3", "--out", (dir / "cl").string()});
    const auto doc = json::parse(read_text_file(dir / "cl" / "clustering.json"));

    // Proximity: each cluster is a contiguous run of a, and distances grow with |a_i - a_j|.
    std::vector<std::size_t> cluster;
    for (const auto& label : dm.labels) cluster.push_back(doc["assignments"][label].get<std::size_t>());
    std::set<std::size_t> closed_runs;
    bool contiguous = true;
    for (std::size_t i = 1; i < cluster.size(); ++i) {
        if (cluster[i] != cluster[i - 1]) {
            contiguous = contiguous && closed_runs.insert(cluster[i - 1]).second;
        }
        contiguous = contiguous && closed_runs.count(cluster[i]) == 0;
    }
    bool monotone = true;
    for (std::size_t i = 0; i < dm.size(); ++i) {
        for (std::size_t j = i + 1; j + 1 < dm.size(); ++j) monotone = monotone && dm(i, j) < dm(i, j + 1);
    }

    const auto open = cli_run({"dist", plants.string(), "--metric", "h2_model"});
    const bool open_fails = open.code == cli::kExitNumerical && open.err.find("not asymptotically stable") != std::string::npos;
    return {contiguous && monotone && open_fails,
            "gain 3, " + std::to_string(dm.size()) + " plants, clusters contiguous in a: " + (contiguous ? "yes" : "no") +
                ", distance monotone in |a_i - a_j|: " + (monotone ? "yes" : "no") + ", open loop exit code " +
                std::to_string(open.code)};
}

}  // namespace

int main(int argc, char** argv) {
    g_work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "lticlust_acceptance";
    fs::create_directories(g_work);

    const std::vector<Criterion> criteria{
        {1, "norm oracles", 1.0, norm_oracles},
        {2, "model/FRF norm consistency", 0.0, model_frf_consistency},
        {3, "metric axioms on a 30-plant batch", 0.0, metric_axioms},
        {4, "realization invariance vs baseline", 0.0, realization_invariance},
        {5, "k-medoids optimality", 5.0, kmedoids_optimality},
        {6, "hard clustering experiment", 30.0, hard_experiment},
        {7, "single-mode modal extraction", 0.0, modal_extraction},
        {8, "soft clustering experiment", 60.0, soft_experiment},
        {9, "pipeline determinism", 0.0, determinism},
        {10, "closed-loop pathway", 0.0, closed_loop},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0.0 && seconds >= c.time_limit) {
            v.pass = false;
            v.detail += "; over the " + fmt(c.time_limit) + " s limit";
        }
        failures += v.pass ? 0 : 1;
        std::cout << (v.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << "  " << std::left << std::setw(38)
                  << c.name << std::right << std::fixed << std::setprecision(3) << std::setw(9) << seconds << " s  "
                  << v.detail << '\n';
        std::cout.unsetf(std::ios::fixed);
        std::cout << std::flush;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}

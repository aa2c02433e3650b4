#include "commands.hpp"

#include "lticlust/distances.hpp"
#include "lticlust/error.hpp"
#include "lticlust/evaluation.hpp"
#include "lticlust/gmm.hpp"
#include "lticlust/io.hpp"
#include "lticlust/kmedoids.hpp"
#include "lticlust/modal.hpp"
#include "lticlust/parallel.hpp"
#include "lticlust/plantgen.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

namespace lticlust::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string header(std::uint64_t seed, std::string_view metric) {
    std::ostringstream h;
    h << "lticlust " << kVersion << "\nseed: " << seed << "\nmetric: " << metric;
    return h.str();
}

json meta(std::uint64_t seed, std::string_view metric) {
    return json{{"tool", "lticlust"}, {"version", kVersion}, {"seed", seed}, {"metric", std::string(metric)}};
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw InputError("cannot create directory " + dir.string());
}

std::string first_data_line(const fs::path& path) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        const auto e = line.find_last_not_of(" \t\r");
        return line.substr(b, e - b + 1);
    }
    return {};
}

bool looks_like_model(const fs::path& path) {
    try {
        const json j = json::parse(read_text_file(path));
        return j.is_object() && j.contains("A");
    } catch (const std::exception&) {
        return false;
    }
}

struct Input {
    fs::path path;
    std::string label;
};

// Explicit files are taken as given; directories contribute their FRF CSVs
// and state-space JSON files in name order.
std::vector<Input> collect_inputs(const std::vector<std::string>& args) {
    std::vector<fs::path> paths;
    for (const auto& a : args) {
        const fs::path p(a);
        if (fs::is_directory(p)) {
            std::vector<fs::path> found;
            for (const auto& entry : fs::directory_iterator(p)) {
                if (!entry.is_regular_file()) continue;
                const auto ext = entry.path().extension();
                if ((ext == ".csv" && first_data_line(entry.path()) == "freq_hz,out,in,re,im") ||
                    (ext == ".json" && looks_like_model(entry.path()))) {
                    found.push_back(entry.path());
                }
            }
            std::sort(found.begin(), found.end());
            paths.insert(paths.end(), found.begin(), found.end());
        } else if (fs::is_regular_file(p)) {
            paths.push_back(p);
        } else {
            throw InputError("no such file or directory: " + a);
        }
    }
    if (paths.empty()) throw InputError("no input systems found");

    std::vector<Input> out;
    std::map<std::string, int> seen;
    for (const auto& p : paths) {
        std::string label = p.stem().string();
        const int n = ++seen[label];
        if (n > 1) label += "#" + std::to_string(n);
        out.push_back({p, label});
    }
    return out;
}

System load_system(const fs::path& path) {
    if (path.extension() == ".json") return read_state_space(path);
    return read_frf_csv(path);
}

std::vector<FrequencyResponse> load_frfs(const std::vector<Input>& inputs) {
    std::vector<FrequencyResponse> out;
    for (const auto& in : inputs) {
        if (in.path.extension() == ".json") {
            throw InputError(in.path.string() + ": this command needs frequency-response CSV input");
        }
        out.push_back(read_frf_csv(in.path));
    }
    return out;
}

std::vector<std::string> labels_of(const std::vector<Input>& inputs) {
    std::vector<std::string> out;
    for (const auto& in : inputs) out.push_back(in.label);
    return out;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

std::string zero_padded(std::size_t value, std::size_t width) {
    std::string s = std::to_string(value);
    if (s.size() < width) s.insert(0, width - s.size(), '0');
    return s;
}

// ---------------------------------------------------------------- gen

struct GenOptions {
    std::size_t plants = 30;
    std::size_t clusters = 3;
    std::uint64_t seed = 0;
    std::string out_dir;
    bool models = false;
    double rigid_zeta = 0.005;
    std::size_t points = 2000;
    double f_min = 100.0;
    double f_max = 40000.0;
    double omega_spread = 0.01;
    double zeta_spread = 0.10;
    double b_spread = 0.05;
};

int cmd_gen(const GenOptions& o, std::ostream& out) {
    auto templates = default_vcm_templates();
    if (o.clusters < 1 || o.clusters > templates.size()) {
        throw InputError("--clusters must be between 1 and " + std::to_string(templates.size()));
    }
    templates.resize(o.clusters);
    if (o.plants < o.clusters) throw InputError("--plants must be at least --clusters");
    if (!(o.f_min > 0.0 && o.f_max > o.f_min) || o.points < 2) throw InputError("invalid frequency grid");

    PerturbationSpec spec{o.omega_spread, o.zeta_spread, o.b_spread, o.seed};
    const auto grid = logspace_grid(kTwoPi * o.f_min, kTwoPi * o.f_max, o.points);
    const auto batch = generate_batch_total(templates, o.plants, spec, grid);

    const fs::path dir(o.out_dir);
    ensure_directory(dir);
    if (o.models) ensure_directory(dir / "models");
    const std::size_t width = std::max<std::size_t>(3, std::to_string(o.plants - 1).size());
    const std::string head = header(o.seed, "none");
    LabelTable truth;
    for (std::size_t i = 0; i < batch.frfs.size(); ++i) {
        const std::string name = "p" + zero_padded(i, width);
        write_frf_csv(dir / (name + ".csv"), batch.frfs[i], head);
        if (o.models) {
            const auto model = template_to_model(batch.plants[i], RigidBody::damped(o.rigid_zeta));
            json j = json::parse(state_space_to_json(model));
            j["meta"] = meta(o.seed, "none");
            write_text_file(dir / "models" / (name + ".json"), j.dump(2) + "\n");
        }
        truth.labels.push_back(name);
        truth.clusters.push_back(batch.labels[i]);
    }
    std::ostringstream labels;
    write_labels_csv(labels, truth, head);
    write_text_file(dir / "labels.csv", labels.str());
    out << "wrote " << batch.frfs.size() << " plants from " << templates.size() << " templates to " << dir.string()
        << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- dist

struct DistOptions {
    std::vector<std::string> inputs;
    std::string metric = "hinf_frf";
    std::string controller;
    unsigned threads = 0;
    double tol = kDefaultHinfTolerance;
    double lambda_a = 1.0;
    double lambda_b = 1.0;
    double lambda_c = 1.0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_dist(const DistOptions& o, std::ostream& out) {
    const Metric metric = parse_metric(o.metric);
    if (!(o.tol > 0.0 && o.tol < 1.0)) throw InputError("--tol must lie in (0, 1)");
    const auto inputs = collect_inputs(o.inputs);
    DistanceOptions options;
    options.hinf_tol = o.tol;
    options.threads = o.threads;
    options.weights = {o.lambda_a, o.lambda_b, o.lambda_c};
    options.weights.validate();

    DistanceMatrix dm;
    if (!o.controller.empty()) {
        const auto controller = read_state_space(o.controller);
        std::vector<StateSpaceModel> plants;
        for (const auto& in : inputs) {
            if (in.path.extension() != ".json") {
                throw InputError(in.path.string() + ": closed-loop distances need state-space JSON plants");
            }
            plants.push_back(read_state_space(in.path));
        }
        dm = closed_loop_distance_matrix(plants, controller, metric, options, labels_of(inputs));
    } else {
        SystemBatch batch;
        for (const auto& in : inputs) batch.items.push_back(load_system(in.path));
        batch.labels = labels_of(inputs);
        dm = distance_matrix(batch, metric, options);
    }
    std::ostringstream csv;
    write_distance_csv(csv, dm, header(o.seed, to_string(metric)));
    emit(csv.str(), o.out, out);
    return kExitOk;
}

// ---------------------------------------------------------------- cluster

struct ClusterOptions {
    std::string dist;
    std::string k = "auto";
    std::size_t k_max = 0;
    std::string labels;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
};

int cmd_cluster(const ClusterOptions& o, std::ostream& out) {
    const DistanceMatrix dm = read_distance_csv(fs::path(o.dist));
    const std::size_t N = dm.size();
    const std::string metric(to_string(dm.metric));
    const fs::path dir(o.out_dir);
    ensure_directory(dir);

    HardClustering result;
    json doc = meta(o.seed, metric);
    if (o.k == "auto") {
        if (N < 3) throw InputError("--k auto needs at least 3 systems");
        const std::size_t k_max = o.k_max == 0 ? std::min<std::size_t>(10, N - 1) : o.k_max;
        const ElbowResult elbow = elbow_select_k(dm, k_max, o.seed);
        result = elbow.clusterings[elbow.k_star - 1];
        std::ostringstream csv;
        csv << "# " << "lticlust " << kVersion << "\n# seed: " << o.seed << "\n# metric: " << metric << '\n';
        csv << "k,cost,second_difference\n";
        for (std::size_t i = 0; i < elbow.cost_curve.size(); ++i) {
            csv << (i + 1) << ',' << format_double(elbow.cost_curve[i]) << ','
                << format_double(elbow.second_difference[i]) << '\n';
        }
        write_text_file(dir / "elbow.csv", csv.str());
        doc["selection"] = "elbow";
        doc["k_max"] = k_max;
        doc["cost_curve"] = elbow.cost_curve;
    } else {
        std::size_t k = 0;
        const auto [ptr, ec] = std::from_chars(o.k.data(), o.k.data() + o.k.size(), k);
        if (ec != std::errc{} || ptr != o.k.data() + o.k.size()) throw InputError("--k must be an integer or 'auto'");
        result = kmedoids(dm, k, o.seed);
        doc["selection"] = "fixed";
    }

    doc["k"] = result.k();
    doc["labels"] = dm.labels;
    json assignments = json::object();
    for (std::size_t i = 0; i < N; ++i) assignments[dm.labels[i]] = result.assignments[i];
    doc["assignments"] = assignments;
    std::vector<std::string> medoids;
    for (const auto m : result.medoids) medoids.push_back(dm.labels[m]);
    doc["medoid_labels"] = medoids;
    doc["total_cost"] = result.total_cost;
    doc["iterations"] = result.iterations;
    if (!dm.note.empty()) doc["note"] = dm.note;
    std::optional<double> accuracy;
    if (!o.labels.empty()) {
        const auto truth = read_labels_csv(fs::path(o.labels)).lookup(dm.labels);
        accuracy = aligned_accuracy(result.assignments, truth);
        doc["accuracy"] = *accuracy;
    }
    write_text_file(dir / "clustering.json", doc.dump(2) + "\n");
    out << "k = " << result.k() << ", total cost = " << format_double(result.total_cost);
    if (accuracy) out << ", aligned accuracy = " << format_double(*accuracy);
    out << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- features

struct FeatureOptions {
    std::vector<std::string> inputs;
    double prominence_db = ModalConfig{}.prominence_db;
    double min_separation = ModalConfig{}.min_separation_decades;
    unsigned threads = 0;
    bool verbose = false;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_features(const FeatureOptions& o, std::ostream& out, std::ostream& err) {
    const auto inputs = collect_inputs(o.inputs);
    const auto frfs = load_frfs(inputs);
    ModalConfig config;
    config.prominence_db = o.prominence_db;
    config.min_separation_decades = o.min_separation;

    std::vector<ModalFeatureVector> features(frfs.size());
    parallel_for(frfs.size(), o.threads, [&](std::size_t i) {
        try {
            features[i] = extract_features(frfs[i], config);
        } catch (const InputError& e) {
            throw InputError("plant " + inputs[i].label + ": " + e.what());
        } catch (const NumericalError& e) {
            throw NumericalError("plant " + inputs[i].label + ": " + e.what());
        }
    });

    FeatureTable table;
    table.mode_count = features.front().mode_count();
    std::size_t flagged = 0;
    for (std::size_t i = 0; i < features.size(); ++i) {
        const auto& f = features[i];
        if (f.mode_count() != table.mode_count) {
            throw NumericalError("plant " + inputs[i].label + " has " + std::to_string(f.mode_count()) +
                                 " modes but plant " + inputs[0].label + " has " +
                                 std::to_string(table.mode_count));
        }
        if (f.rigid_body_missing) err << "warning: plant " << inputs[i].label << ": no rigid-body region, b0 = 0\n";
        if (!f.flagged_modes.empty()) ++flagged;
        for (const auto k : f.flagged_modes) {
            if (o.verbose) err << "warning: plant " << inputs[i].label << ": circle fit of mode " << (k + 1) << " is poor\n";
        }
        table.labels.push_back(inputs[i].label);
        table.rows.push_back(f.flattened());
    }
    if (flagged > 0 && !o.verbose) {
        err << "warning: " << flagged << " of " << features.size()
            << " plants have a poor circle fit for at least one mode (--verbose lists them)\n";
    }
    std::ostringstream csv;
    write_feature_csv(csv, table, header(o.seed, "modal_features"));
    emit(csv.str(), o.out, out);
    return kExitOk;
}

// ---------------------------------------------------------------- gmm

struct GmmOptions {
    std::string features;
    std::size_t k = 3;
    int restarts = GmmConfig{}.restarts;
    int max_iterations = GmmConfig{}.max_iterations;
    std::string labels;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
};

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

int cmd_gmm(const GmmOptions& o, std::ostream& out) {
    const auto table = read_feature_csv(fs::path(o.features));
    if (table.rows.empty()) throw InputError("feature table has no rows");
    const auto N = static_cast<Eigen::Index>(table.rows.size());
    const auto D = static_cast<Eigen::Index>(table.rows.front().size());
    Eigen::MatrixXd X(N, D);
    for (Eigen::Index i = 0; i < N; ++i) {
        for (Eigen::Index d = 0; d < D; ++d) X(i, d) = table.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
    }
    GmmConfig config;
    config.restarts = o.restarts;
    config.max_iterations = o.max_iterations;
    const GmmModel model = gmm_fit(X, o.k, o.seed, config);
    const SoftAssignment soft = gmm_responsibilities(model, X);

    const fs::path dir(o.out_dir);
    ensure_directory(dir);
    json doc = meta(o.seed, "modal_features");
    doc["K"] = model.components();
    doc["feature_names"] = feature_names(table.mode_count);
    doc["weights"] = model.weights;
    json means = json::array();
    json covs = json::array();
    for (std::size_t k = 0; k < model.components(); ++k) {
        means.push_back(vector_json(model.means[k]));
        covs.push_back(matrix_json(model.covariances[k]));
    }
    doc["means"] = means;
    doc["covariances"] = covs;
    doc["standardization"] = {{"shift", vector_json(model.standardization.shift)},
                              {"scale", vector_json(model.standardization.scale)}};
    doc["loglik"] = gmm_loglik(model, model.standardization.apply(X));
    doc["objective"] = model.loglik();
    doc["iterations"] = model.iterations;
    doc["restarts"] = config.restarts;
    doc["selected_restart"] = model.selected_restart;
    doc["objective_traces"] = model.restart_traces;
    std::optional<double> accuracy;
    if (!o.labels.empty()) {
        const auto truth = read_labels_csv(fs::path(o.labels)).lookup(table.labels);
        accuracy = aligned_accuracy(soft.hard_labels, truth);
        doc["accuracy"] = *accuracy;
    }
    write_text_file(dir / "gmm_model.json", doc.dump(2) + "\n");

    std::ostringstream csv;
    csv << "# lticlust " << kVersion << "\n# seed: " << o.seed << "\n# metric: modal_features\n";
    csv << "label";
    for (std::size_t k = 1; k <= model.components(); ++k) csv << ",r_" << k;
    csv << ",hard_label\n";
    for (Eigen::Index i = 0; i < N; ++i) {
        csv << table.labels[static_cast<std::size_t>(i)];
        for (Eigen::Index k = 0; k < soft.responsibilities.cols(); ++k) {
            csv << ',' << format_double(soft.responsibilities(i, k));
        }
        csv << ',' << soft.hard_labels[static_cast<std::size_t>(i)] << '\n';
    }
    write_text_file(dir / "responsibilities.csv", csv.str());

    out << "K = " << model.components() << ", log-likelihood = " << format_double(doc["loglik"].get<double>());
    if (accuracy) out << ", aligned accuracy = " << format_double(*accuracy);
    out << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- plotdata

struct PlotOptions {
    std::vector<std::string> inputs;
    std::string clustering;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_plotdata(const PlotOptions& o, std::ostream& out) {
    const auto inputs = collect_inputs(o.inputs);
    const auto frfs = load_frfs(inputs);
    for (std::size_t i = 0; i < frfs.size(); ++i) {
        if (!frfs[i].is_siso()) throw InputError("plant " + inputs[i].label + ": plot data needs SISO responses");
    }
    std::map<std::string, long long> cluster_of;
    std::string metric = "none";
    if (!o.clustering.empty()) {
        json doc;
        try {
            doc = json::parse(read_text_file(o.clustering));
            for (const auto& [label, cluster] : doc.at("assignments").items()) {
                cluster_of[label] = cluster.get<long long>();
            }
            metric = doc.value("metric", metric);
        } catch (const json::exception& e) {
            throw InputError(o.clustering + ": " + e.what());
        }
    }

    std::ostringstream csv;
    csv << "# lticlust " << kVersion << "\n# seed: " << o.seed << "\n# metric: " << metric << '\n';
    csv << "label,cluster,freq_hz,mag_db,phase_deg,re,im\n";
    for (std::size_t i = 0; i < frfs.size(); ++i) {
        long long cluster = -1;
        if (!o.clustering.empty()) {
            const auto it = cluster_of.find(inputs[i].label);
            if (it == cluster_of.end()) throw InputError("no cluster for plant " + inputs[i].label);
            cluster = it->second;
        }
        const std::string prefix = inputs[i].label + "," + std::to_string(cluster) + ",";
        for (std::size_t k = 0; k < frfs[i].size(); ++k) {
            const auto g = frfs[i].siso(k);
            csv << prefix << format_double(frfs[i].frequencies()[k] / kTwoPi) << ','
                << format_double(20.0 * std::log10(std::abs(g))) << ','
                << format_double(std::arg(g) * 180.0 / std::numbers::pi) << ',' << format_double(g.real()) << ','
                << format_double(g.imag()) << '\n';
        }
    }
    emit(csv.str(), o.out, out);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Clustering of linear time-invariant systems by H2 / H-infinity distance", "lticlust"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic VCM plant batch");
    gen_cmd->add_option("--plants", gen.plants, "Number of plants")->capture_default_str();
    gen_cmd->add_option("--clusters", gen.clusters, "Number of templates (clusters)")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
    gen_cmd->add_option("--out", gen.out_dir, "Output directory")->required();
    gen_cmd->add_flag("--models", gen.models, "Also write damped state-space models to OUT/models");
    gen_cmd->add_option("--rigid-zeta", gen.rigid_zeta, "Damping of the substituted rigid-body mode")
        ->capture_default_str();
    gen_cmd->add_option("--points", gen.points, "Grid points")->capture_default_str();
    gen_cmd->add_option("--f-min", gen.f_min, "Lowest grid frequency in Hz")->capture_default_str();
    gen_cmd->add_option("--f-max", gen.f_max, "Highest grid frequency in Hz")->capture_default_str();
    gen_cmd->add_option("--omega-spread", gen.omega_spread, "Relative natural-frequency spread")
        ->capture_default_str();
    gen_cmd->add_option("--zeta-spread", gen.zeta_spread, "Relative damping spread")->capture_default_str();
    gen_cmd->add_option("--b-spread", gen.b_spread, "Relative modal-constant spread")->capture_default_str();

    DistOptions dist;
    auto* dist_cmd = app.add_subcommand("dist", "Pairwise distance matrix of FRF CSV or state-space JSON inputs");
    dist_cmd->add_option("inputs", dist.inputs, "Files or directories")->required();
    dist_cmd->add_option("--metric", dist.metric, "h2_model, hinf_model, h2_frf, hinf_frf or baseline")
        ->capture_default_str();
    dist_cmd->add_option("--controller", dist.controller, "Compare closed loops under this controller (JSON)");
    dist_cmd->add_option("--threads", dist.threads, "Worker threads (0 = all cores)")->capture_default_str();
    dist_cmd->add_option("--tol", dist.tol, "Relative H-infinity bisection tolerance")->capture_default_str();
    dist_cmd->add_option("--lambda-a", dist.lambda_a, "Baseline weight on A")->capture_default_str();
    dist_cmd->add_option("--lambda-b", dist.lambda_b, "Baseline weight on B")->capture_default_str();
    dist_cmd->add_option("--lambda-c", dist.lambda_c, "Baseline weight on C")->capture_default_str();
    dist_cmd->add_option("--seed", dist.seed, "Seed recorded in the output")->capture_default_str();
    dist_cmd->add_option("--out", dist.out, "Output CSV (default: standard output)");

    ClusterOptions cluster;
    auto* cluster_cmd = app.add_subcommand("cluster", "k-medoids clustering of a distance matrix");
    cluster_cmd->add_option("--dist", cluster.dist, "Distance CSV")->required();
    cluster_cmd->add_option("--k", cluster.k, "Number of clusters or 'auto'")->capture_default_str();
    cluster_cmd->add_option("--k-max", cluster.k_max, "Largest k for the elbow search (default min(10, N-1))");
    cluster_cmd->add_option("--labels", cluster.labels, "Ground-truth labels CSV for an accuracy report");
    cluster_cmd->add_option("--seed", cluster.seed, "Seed recorded in the output")->capture_default_str();
    cluster_cmd->add_option("--out", cluster.out_dir, "Output directory")->capture_default_str();

    FeatureOptions features;
    auto* features_cmd = app.add_subcommand("features", "Modal feature vectors from FRF CSV inputs");
    features_cmd->add_option("inputs", features.inputs, "Files or directories")->required();
    features_cmd->add_option("--prominence-db", features.prominence_db, "Peak prominence over the local median")
        ->capture_default_str();
    features_cmd->add_option("--min-separation", features.min_separation, "Minimum peak separation in decades")
        ->capture_default_str();
    features_cmd->add_option("--threads", features.threads, "Worker threads (0 = all cores)")->capture_default_str();
    features_cmd->add_flag("--verbose", features.verbose, "List every poorly fitted mode");
    features_cmd->add_option("--seed", features.seed, "Seed recorded in the output")->capture_default_str();
    features_cmd->add_option("--out", features.out, "Output CSV (default: standard output)");

    GmmOptions gmm;
    auto* gmm_cmd = app.add_subcommand("gmm", "Gaussian-mixture soft clustering of feature vectors");
    gmm_cmd->add_option("--features", gmm.features, "Feature CSV")->required();
    gmm_cmd->add_option("--k", gmm.k, "Number of components")->capture_default_str();
    gmm_cmd->add_option("--restarts", gmm.restarts, "EM restarts")->capture_default_str();
    gmm_cmd->add_option("--max-iterations", gmm.max_iterations, "EM iteration cap")->capture_default_str();
    gmm_cmd->add_option("--labels", gmm.labels, "Ground-truth labels CSV for an accuracy report");
    gmm_cmd->add_option("--seed", gmm.seed, "Random seed")->capture_default_str();
    gmm_cmd->add_option("--out", gmm.out_dir, "Output directory")->capture_default_str();

    PlotOptions plot;
    auto* plot_cmd = app.add_subcommand("plotdata", "Bode and Nyquist data as CSV, with cluster column");
    plot_cmd->add_option("inputs", plot.inputs, "Files or directories")->required();
    plot_cmd->add_option("--clustering", plot.clustering, "clustering.json from the cluster command");
    plot_cmd->add_option("--seed", plot.seed, "Seed recorded in the output")->capture_default_str();
    plot_cmd->add_option("--out", plot.out, "Output CSV (default: standard output)");

    std::vector<const char*> argv{"lticlust"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen, out);
        if (dist_cmd->parsed()) return cmd_dist(dist, out);
        if (cluster_cmd->parsed()) return cmd_cluster(cluster, out);
        if (features_cmd->parsed()) return cmd_features(features, out, err);
        if (gmm_cmd->parsed()) return cmd_gmm(gmm, out);
        if (plot_cmd->parsed()) return cmd_plotdata(plot, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace lticlust::cli

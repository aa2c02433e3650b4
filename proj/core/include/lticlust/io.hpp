#pragma once

#include "lticlust/distances.hpp"
#include "lticlust/frequency_response.hpp"
#include "lticlust/modal.hpp"
#include "lticlust/state_space.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace lticlust {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

// State-space JSON: {"domain": "continuous"|"discrete", "ts_seconds"?, "A", "B", "C", "D"}
// with matrices as row-major nested arrays.
StateSpaceModel parse_state_space_json(const std::string& text);
std::string state_space_to_json(const StateSpaceModel& sys);
StateSpaceModel read_state_space(const std::filesystem::path& path);
void write_state_space(const std::filesystem::path& path, const StateSpaceModel& sys);

// FRF CSV: header `freq_hz,out,in,re,im`, rows sorted by frequency, then output,
// then input (0-based). Lines starting with '#' are comments.
FrequencyResponse read_frf_csv(std::istream& in);
FrequencyResponse read_frf_csv(const std::filesystem::path& path);
void write_frf_csv(std::ostream& out, const FrequencyResponse& frf, const std::string& comment = {});
void write_frf_csv(const std::filesystem::path& path, const FrequencyResponse& frf, const std::string& comment = {});

// Distance CSV: header row of labels, then N rows of N values.
void write_distance_csv(std::ostream& out, const DistanceMatrix& dm, const std::string& comment = {});
DistanceMatrix read_distance_csv(std::istream& in, Metric metric = Metric::hinf_frf);
DistanceMatrix read_distance_csv(const std::filesystem::path& path);

// Feature CSV: `label,b0,b1..bn,zeta1..zetan,omega1..omegan`.
struct FeatureTable {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
    std::size_t mode_count = 0;
};
void write_feature_csv(std::ostream& out, const FeatureTable& table, const std::string& comment = {});
FeatureTable read_feature_csv(std::istream& in);
FeatureTable read_feature_csv(const std::filesystem::path& path);

// Labels CSV: `label,cluster`.
struct LabelTable {
    std::vector<std::string> labels;
    std::vector<std::size_t> clusters;

    /// Cluster of each requested label, in the given order.
    [[nodiscard]] std::vector<std::size_t> lookup(const std::vector<std::string>& names) const;
};
void write_labels_csv(std::ostream& out, const LabelTable& table, const std::string& comment = {});
LabelTable read_labels_csv(std::istream& in);
LabelTable read_labels_csv(const std::filesystem::path& path);

/// Splits one CSV line on commas (no quoting).
std::vector<std::string> split_csv_line(const std::string& line);

/// Reads a whole file; throws InputError if unreadable.
std::string read_text_file(const std::filesystem::path& path);
/// Writes a whole file; throws InputError if unwritable.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace lticlust

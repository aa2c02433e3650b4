#include "lticlust/io.hpp"

#include "lticlust/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace lticlust {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& field, std::size_t line) {
    const std::string t = trim(field);
    double v = 0.0;
    const auto* first = t.data();
    const auto* last = t.data() + t.size();
    if (!t.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || t.empty()) {
        throw InputError("line " + std::to_string(line) + ": not a number: '" + t + "'");
    }
    return v;
}

std::size_t parse_index(const std::string& field, std::size_t line) {
    const std::string t = trim(field);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw InputError("line " + std::to_string(line) + ": not an index: '" + t + "'");
    }
    return v;
}

void write_comment(std::ostream& out, const std::string& comment) {
    if (comment.empty()) return;
    std::istringstream lines(comment);
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << '\n';
}

struct CsvLine {
    std::size_t number;
    std::vector<std::string> fields;
};

// Non-comment, non-blank lines; comment bodies are collected separately.
std::vector<CsvLine> read_csv(std::istream& in, std::vector<std::string>* comments = nullptr) {
    std::vector<CsvLine> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '#') {
            if (comments != nullptr) comments->push_back(trim(t.substr(1)));
            continue;
        }
        auto fields = split_csv_line(t);
        for (auto& f : fields) f = trim(f);
        out.push_back({number, std::move(fields)});
    }
    return out;
}

std::optional<std::string> comment_value(const std::vector<std::string>& comments, const std::string& key) {
    const std::string prefix = key + ":";
    for (const auto& c : comments) {
        if (c.rfind(prefix, 0) == 0) return trim(c.substr(prefix.size()));
    }
    return std::nullopt;
}

void expect_header(const CsvLine& line, const std::vector<std::string>& expected, const char* what) {
    if (line.fields != expected) {
        std::string want;
        for (const auto& e : expected) want += (want.empty() ? "" : ",") + e;
        throw InputError(std::string(what) + ": expected header '" + want + "' on line " +
                         std::to_string(line.number));
    }
}

Eigen::MatrixXd json_matrix(const json& j, const char* name) {
    if (!j.is_array()) throw InputError(std::string("state-space field ") + name + " must be an array of rows");
    if (j.empty()) return Eigen::MatrixXd(0, 0);
    const std::size_t rows = j.size();
    if (!j[0].is_array()) throw InputError(std::string("state-space field ") + name + " must be an array of rows");
    const std::size_t cols = j[0].size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) {
            throw InputError(std::string("state-space field ") + name + " has ragged rows");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (!j[r][c].is_number()) throw InputError(std::string("state-space field ") + name + " must be numeric");
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
        }
    }
    return m;
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path.string());
    return in;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw NumericalError("cannot format number");
    return std::string(buf, ptr);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string::size_type start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
    finish(out, path);
}

StateSpaceModel parse_state_space_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw InputError("state-space JSON must be an object");
    for (const char* key : {"A", "B", "C"}) {
        if (!j.contains(key)) throw InputError(std::string("state-space JSON is missing ") + key);
    }
    Eigen::MatrixXd A = json_matrix(j["A"], "A");
    Eigen::MatrixXd B = json_matrix(j["B"], "B");
    Eigen::MatrixXd C = json_matrix(j["C"], "C");
    Eigen::MatrixXd D;
    if (j.contains("D")) {
        D = json_matrix(j["D"], "D");
    } else {
        if (A.rows() == 0) throw InputError("state-space JSON without states needs D");
        D = Eigen::MatrixXd::Zero(C.rows(), B.cols());
    }
    if (A.rows() == 0) {
        A.resize(0, 0);
        if (B.size() == 0) B.resize(0, D.cols());
        if (C.size() == 0) C.resize(D.rows(), 0);
    }

    TimeDomain domain = TimeDomain::continuous();
    const std::string kind = j.value("domain", std::string("continuous"));
    if (kind == "discrete") {
        if (!j.contains("ts_seconds") || !j["ts_seconds"].is_number()) {
            throw InputError("discrete state-space JSON needs numeric ts_seconds");
        }
        domain = TimeDomain::discrete(j["ts_seconds"].get<double>());
    } else if (kind != "continuous") {
        throw InputError("unknown domain '" + kind + "'");
    }
    return StateSpaceModel(std::move(A), std::move(B), std::move(C), std::move(D), domain);
}

std::string state_space_to_json(const StateSpaceModel& sys) {
    json j;
    j["domain"] = sys.domain().is_discrete() ? "discrete" : "continuous";
    if (sys.domain().is_discrete()) j["ts_seconds"] = sys.domain().sample_time();
    j["A"] = matrix_json(sys.A());
    j["B"] = matrix_json(sys.B());
    j["C"] = matrix_json(sys.C());
    j["D"] = matrix_json(sys.D());
    return j.dump(2) + "\n";
}

StateSpaceModel read_state_space(const std::filesystem::path& path) {
    try {
        return parse_state_space_json(read_text_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_state_space(const std::filesystem::path& path, const StateSpaceModel& sys) {
    write_text_file(path, state_space_to_json(sys));
}

FrequencyResponse read_frf_csv(std::istream& in) {
    std::vector<std::string> comments;
    const auto lines = read_csv(in, &comments);
    if (lines.empty()) throw InputError("FRF CSV is empty");
    expect_header(lines.front(), {"freq_hz", "out", "in", "re", "im"}, "FRF CSV");

    struct Entry {
        double hz;
        std::size_t out, in;
        std::complex<double> value;
    };
    std::vector<Entry> entries;
    std::size_t p = 0;
    std::size_t m = 0;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& l = lines[k];
        if (l.fields.size() != 5) throw InputError("line " + std::to_string(l.number) + ": expected 5 fields");
        Entry e{parse_double(l.fields[0], l.number), parse_index(l.fields[1], l.number),
                parse_index(l.fields[2], l.number),
                {parse_double(l.fields[3], l.number), parse_double(l.fields[4], l.number)}};
        p = std::max(p, e.out + 1);
        m = std::max(m, e.in + 1);
        entries.push_back(e);
    }
    if (entries.empty()) throw InputError("FRF CSV has no data rows");

    std::vector<double> freqs;
    std::vector<Eigen::MatrixXcd> values;
    std::size_t k = 0;
    while (k < entries.size()) {
        const double hz = entries[k].hz;
        Eigen::MatrixXcd v(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(m));
        Eigen::MatrixXi seen = Eigen::MatrixXi::Zero(v.rows(), v.cols());
        std::size_t count = 0;
        for (; k < entries.size() && entries[k].hz == hz; ++k, ++count) {
            const auto r = static_cast<Eigen::Index>(entries[k].out);
            const auto c = static_cast<Eigen::Index>(entries[k].in);
            if (seen(r, c)++ != 0) {
                throw InputError("FRF CSV repeats entry (" + std::to_string(r) + ", " + std::to_string(c) +
                                 ") at " + format_double(hz) + " Hz");
            }
            v(r, c) = entries[k].value;
        }
        if (count != p * m) throw InputError("FRF CSV is missing entries at " + format_double(hz) + " Hz");
        freqs.push_back(kTwoPi * hz);
        values.push_back(std::move(v));
    }
    std::optional<double> ts;
    if (const auto s = comment_value(comments, "ts_seconds")) ts = parse_double(*s, 0);
    return FrequencyResponse(std::move(freqs), std::move(values), ts);
}

FrequencyResponse read_frf_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    try {
        return read_frf_csv(in);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_frf_csv(std::ostream& out, const FrequencyResponse& frf, const std::string& comment) {
    write_comment(out, comment);
    if (frf.sample_time()) out << "# ts_seconds: " << format_double(*frf.sample_time()) << '\n';
    out << "freq_hz,out,in,re,im\n";
    for (std::size_t k = 0; k < frf.size(); ++k) {
        const std::string hz = format_double(frf.frequencies()[k] / kTwoPi);
        const auto& v = frf.value(k);
        for (Eigen::Index r = 0; r < v.rows(); ++r) {
            for (Eigen::Index c = 0; c < v.cols(); ++c) {
                out << hz << ',' << r << ',' << c << ',' << format_double(v(r, c).real()) << ','
                    << format_double(v(r, c).imag()) << '\n';
            }
        }
    }
}

void write_frf_csv(const std::filesystem::path& path, const FrequencyResponse& frf, const std::string& comment) {
    auto out = open_out(path);
    write_frf_csv(out, frf, comment);
    finish(out, path);
}

void write_distance_csv(std::ostream& out, const DistanceMatrix& dm, const std::string& comment) {
    write_comment(out, comment);
    if (!dm.note.empty()) out << "# note: " << dm.note << '\n';
    for (std::size_t i = 0; i < dm.labels.size(); ++i) out << (i ? "," : "") << dm.labels[i];
    out << '\n';
    for (std::size_t i = 0; i < dm.size(); ++i) {
        for (std::size_t j = 0; j < dm.size(); ++j) out << (j ? "," : "") << format_double(dm(i, j));
        out << '\n';
    }
}

DistanceMatrix read_distance_csv(std::istream& in, Metric metric) {
    std::vector<std::string> comments;
    const auto lines = read_csv(in, &comments);
    if (lines.empty()) throw InputError("distance CSV is empty");
    DistanceMatrix dm;
    dm.metric = metric;
    if (const auto m = comment_value(comments, "metric")) dm.metric = parse_metric(*m);
    if (const auto n = comment_value(comments, "note")) dm.note = *n;
    dm.labels = lines.front().fields;
    const auto n = static_cast<Eigen::Index>(dm.labels.size());
    if (static_cast<Eigen::Index>(lines.size()) != n + 1) throw InputError("distance CSV must have one row per label");
    dm.values.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& l = lines[static_cast<std::size_t>(i + 1)];
        if (static_cast<Eigen::Index>(l.fields.size()) != n) {
            throw InputError("line " + std::to_string(l.number) + ": expected " + std::to_string(n) + " values");
        }
        for (Eigen::Index j = 0; j < n; ++j) dm.values(i, j) = parse_double(l.fields[static_cast<std::size_t>(j)], l.number);
    }
    dm.validate();
    return dm;
}

DistanceMatrix read_distance_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    try {
        return read_distance_csv(in);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_feature_csv(std::ostream& out, const FeatureTable& table, const std::string& comment) {
    const std::size_t width = 1 + 3 * table.mode_count;
    write_comment(out, comment);
    out << "label";
    for (const auto& name : feature_names(table.mode_count)) out << ',' << name;
    out << '\n';
    if (table.rows.size() != table.labels.size()) throw InputError("feature table has mismatched rows and labels");
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (table.rows[i].size() != width) throw InputError("feature row " + table.labels[i] + " has the wrong width");
        out << table.labels[i];
        for (const double v : table.rows[i]) out << ',' << format_double(v);
        out << '\n';
    }
}

FeatureTable read_feature_csv(std::istream& in) {
    const auto lines = read_csv(in);
    if (lines.empty()) throw InputError("feature CSV is empty");
    const auto& header = lines.front().fields;
    if (header.size() < 2 || (header.size() - 2) % 3 != 0) throw InputError("feature CSV header has the wrong width");
    FeatureTable table;
    table.mode_count = (header.size() - 2) / 3;
    std::vector<std::string> expected{"label"};
    for (auto& name : feature_names(table.mode_count)) expected.push_back(std::move(name));
    expect_header(lines.front(), expected, "feature CSV");
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& l = lines[k];
        if (l.fields.size() != header.size()) {
            throw InputError("line " + std::to_string(l.number) + ": expected " + std::to_string(header.size()) + " fields");
        }
        table.labels.push_back(l.fields[0]);
        std::vector<double> row;
        for (std::size_t c = 1; c < l.fields.size(); ++c) row.push_back(parse_double(l.fields[c], l.number));
        table.rows.push_back(std::move(row));
    }
    return table;
}

FeatureTable read_feature_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    try {
        return read_feature_csv(in);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

std::vector<std::size_t> LabelTable::lookup(const std::vector<std::string>& names) const {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], clusters[i]);
    std::vector<std::size_t> out;
    out.reserve(names.size());
    for (const auto& n : names) {
        const auto it = index.find(n);
        if (it == index.end()) throw InputError("no ground-truth label for '" + n + "'");
        out.push_back(it->second);
    }
    return out;
}

void write_labels_csv(std::ostream& out, const LabelTable& table, const std::string& comment) {
    write_comment(out, comment);
    out << "label,cluster\n";
    for (std::size_t i = 0; i < table.labels.size(); ++i) out << table.labels[i] << ',' << table.clusters[i] << '\n';
}

LabelTable read_labels_csv(std::istream& in) {
    const auto lines = read_csv(in);
    if (lines.empty()) throw InputError("labels CSV is empty");
    expect_header(lines.front(), {"label", "cluster"}, "labels CSV");
    LabelTable table;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& l = lines[k];
        if (l.fields.size() != 2) throw InputError("line " + std::to_string(l.number) + ": expected 2 fields");
        table.labels.push_back(l.fields[0]);
        table.clusters.push_back(parse_index(l.fields[1], l.number));
    }
    return table;
}

LabelTable read_labels_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    try {
        return read_labels_csv(in);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

}  // namespace lticlust

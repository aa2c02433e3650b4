#include "lticlust/error.hpp"
#include "lticlust/io.hpp"
#include "lticlust/lti.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace lticlust;

TEST_CASE("format_double round-trips") {
    for (const double v : {0.0, 1.0, -2.5, 1.0 / 3.0, 6.02214076e23, 4.9e-324, -1e-300}) {
        CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
    CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("split_csv_line keeps empty fields") {
    CHECK(split_csv_line("a,b,,c") == std::vector<std::string>{"a", "b", "", "c"});
    CHECK(split_csv_line("") == std::vector<std::string>{""});
}

TEST_CASE("state-space JSON round-trip") {
    std::mt19937_64 rng(61);
    const auto g = oracle::random_stable(rng, 3, 2, 1, false);
    const auto back = parse_state_space_json(state_space_to_json(g));
    CHECK(back.A() == g.A());
    CHECK(back.B() == g.B());
    CHECK(back.C() == g.C());
    CHECK(back.D() == g.D());
    CHECK(back.domain().is_continuous());

    const StateSpaceModel d(Eigen::MatrixXd::Constant(1, 1, 0.5), Eigen::MatrixXd::Ones(1, 1),
                            Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Zero(1, 1), TimeDomain::discrete(0.001));
    const auto dback = parse_state_space_json(state_space_to_json(d));
    CHECK(dback.domain() == d.domain());

    const auto gain = parse_state_space_json(state_space_to_json(StateSpaceModel::gain(Eigen::MatrixXd::Ones(2, 3))));
    CHECK(gain.order() == 0);
    CHECK(gain.outputs() == 2);
    CHECK(gain.inputs() == 3);
}

TEST_CASE("state-space JSON inputs") {
    const auto g = parse_state_space_json(R"({"A": [[-1, 0], [0, -2]], "B": [[1], [1]], "C": [[1, 1]]})");
    CHECK(g.D() == Eigen::MatrixXd::Zero(1, 1));
    const auto s = parse_state_space_json(R"({"A": [], "B": [], "C": [], "D": [[3]]})");
    CHECK(s.order() == 0);
    CHECK(s.D()(0, 0) == 3.0);

    CHECK_THROWS_AS(parse_state_space_json("{"), InputError);
    CHECK_THROWS_AS(parse_state_space_json("[1]"), InputError);
    CHECK_THROWS_AS(parse_state_space_json(R"({"A": [[-1]], "B": [[1]]})"), InputError);
    CHECK_THROWS_AS(parse_state_space_json(R"({"A": [[-1, 0], [0]], "B": [[1], [1]], "C": [[1, 1]]})"), InputError);
    CHECK_THROWS_AS(parse_state_space_json(R"({"A": [["x"]], "B": [[1]], "C": [[1]]})"), InputError);
    CHECK_THROWS_AS(parse_state_space_json(R"({"A": [[-1]], "B": [[1, 2]], "C": [[1]], "D": [[0]]})"), InputError);
    CHECK_THROWS_AS(parse_state_space_json(R"({"domain": "discrete", "A": [[0.5]], "B": [[1]], "C": [[1]]})"),
                    InputError);
    CHECK_THROWS_AS(parse_state_space_json(R"({"domain": "hybrid", "A": [[-1]], "B": [[1]], "C": [[1]]})"),
                    InputError);
    CHECK_THROWS_AS(read_state_space(oracle::scratch_dir("io_missing") / "nope.json"), InputError);
}

TEST_CASE("FRF CSV round-trip") {
    std::mt19937_64 rng(62);
    const auto g = oracle::random_stable(rng, 3, 2, 2, false);
    const auto frf = evaluate_frf(g, logspace_grid(0.1, 100.0, 25));
    std::stringstream ss;
    write_frf_csv(ss, frf, "hello\nworld");
    const std::string text = ss.str();
    CHECK(text.rfind("# hello\n# world\nfreq_hz,out,in,re,im\n", 0) == 0);
    const auto back = read_frf_csv(ss);
    REQUIRE(back.size() == frf.size());
    CHECK(back.outputs() == 2);
    CHECK(back.inputs() == 2);
    for (std::size_t k = 0; k < frf.size(); ++k) {
        CHECK(back.frequencies()[k] == doctest::Approx(frf.frequencies()[k]).epsilon(1e-15));
        CHECK(back.value(k) == frf.value(k));
    }

    const std::vector<Eigen::MatrixXcd> values(2, Eigen::MatrixXcd::Ones(1, 1));
    const FrequencyResponse d({1.0, 2.0}, values, 0.5);
    std::stringstream ds;
    write_frf_csv(ds, d);
    CHECK(read_frf_csv(ds).sample_time() == 0.5);

    const auto path = oracle::scratch_dir("io_frf") / "g.csv";
    write_frf_csv(path, frf);
    CHECK(read_frf_csv(path).size() == frf.size());
}

TEST_CASE("FRF CSV input errors") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_frf_csv(in);
    };
    CHECK_THROWS_AS(parse(""), InputError);
    CHECK_THROWS_AS(parse("f,out,in,re,im\n1,0,0,1,0\n2,0,0,1,0\n"), InputError);
    CHECK_THROWS_AS(parse("freq_hz,out,in,re,im\n"), InputError);
    CHECK_THROWS_AS(parse("freq_hz,out,in,re,im\n1,0,0,1\n2,0,0,1,0\n"), InputError);
    CHECK_THROWS_AS(parse("freq_hz,out,in,re,im\n1,0,0,x,0\n2,0,0,1,0\n"), InputError);
    CHECK_THROWS_AS(parse("freq_hz,out,in,re,im\n1,0,0,1,0\n1,0,0,1,0\n2,0,0,1,0\n"), InputError);
    CHECK_THROWS_AS(parse("freq_hz,out,in,re,im\n1,0,0,1,0\n1,1,0,1,0\n2,0,0,1,0\n"), InputError);
    CHECK_THROWS_AS(parse("freq_hz,out,in,re,im\n2,0,0,1,0\n1,0,0,1,0\n"), InputError);
    CHECK_NOTHROW(parse("# comment\nfreq_hz,out,in,re,im\n1,0,0,1,0\n\n2,0,0,1,-1\n"));
}

TEST_CASE("distance CSV round-trip") {
    DistanceMatrix dm;
    dm.values.resize(3, 3);
    dm.values << 0, 1.5, 2, 1.5, 0, 1.0 / 3.0, 2, 1.0 / 3.0, 0;
    dm.labels = {"a", "b", "c"};
    dm.metric = Metric::h2_model;
    dm.note = "closed loop";
    std::stringstream ss;
    write_distance_csv(ss, dm, "metric: h2_model");
    const auto back = read_distance_csv(ss);
    CHECK(back.values == dm.values);
    CHECK(back.labels == dm.labels);
    CHECK(back.metric == Metric::h2_model);
    CHECK(back.note == "closed loop");

    std::istringstream asym("a,b\n0,1\n2,0\n");
    CHECK_THROWS_AS(read_distance_csv(asym), InputError);
    std::istringstream short_rows("a,b\n0,1\n");
    CHECK_THROWS_AS(read_distance_csv(short_rows), InputError);
}

TEST_CASE("feature CSV round-trip") {
    FeatureTable table;
    table.mode_count = 1;
    table.labels = {"p0", "p1"};
    table.rows = {{1e9, 2.0, 0.05, 1234.5}, {1.1e9, 2.5, 0.04, 1300.0}};
    std::stringstream ss;
    write_feature_csv(ss, table);
    const auto back = read_feature_csv(ss);
    CHECK(back.mode_count == 1);
    CHECK(back.labels == table.labels);
    CHECK(back.rows == table.rows);

    std::istringstream wrong("label,b0,b1,zeta1,w1\np,1,2,3,4\n");
    CHECK_THROWS_AS(read_feature_csv(wrong), InputError);
    FeatureTable ragged = table;
    ragged.rows[1].pop_back();
    std::ostringstream sink;
    CHECK_THROWS_AS(write_feature_csv(sink, ragged), InputError);
}

TEST_CASE("labels CSV round-trip and lookup") {
    LabelTable table{{"x", "y", "z"}, {2, 0, 1}};
    std::stringstream ss;
    write_labels_csv(ss, table);
    const auto back = read_labels_csv(ss);
    CHECK(back.labels == table.labels);
    CHECK(back.clusters == table.clusters);
    CHECK(back.lookup({"z", "x"}) == std::vector<std::size_t>{1, 2});
    CHECK_THROWS_AS((void)back.lookup({"w"}), InputError);
    std::istringstream neg("label,cluster\nx,-1\n");
    CHECK_THROWS_AS(read_labels_csv(neg), InputError);
}

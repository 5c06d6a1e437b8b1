#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include "cluspost/dataset_io.hpp"
#include "cluspost/engine.hpp"
#include "cluspost/oracle.hpp"
#include "cluspost/results_io.hpp"
#include "cluspost/synthetic.hpp"

using namespace cluspost;
using nlohmann::json;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/cluspost_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }

    void write(const std::string& text) const {
        std::ofstream out(path);
        out << text;
    }
};

}  // namespace

TEST_CASE("csv loading: plain matrix, header, and error locations") {
    TempFile file("basic.csv");
    file.write("0\n1\n");
    const Dataset d = load_csv(file.path, DataKind::Binary);
    CHECK(d.n == 2);
    CHECK(d.D == 1);
    CHECK(d.at(0, 0) == 0.0);
    CHECK(d.at(1, 0) == 1.0);

    file.write("a,b\n0,1\n1,0\n");
    const Dataset with_header = load_csv(file.path, DataKind::Binary, true);
    CHECK(with_header.n == 2);
    CHECK(with_header.D == 2);

    file.write("0,1\n1\n");
    CHECK_THROWS_WITH_AS(load_csv(file.path, DataKind::Binary), doctest::Contains("row 2"), DataError);

    file.write("0,1\n1,x\n");
    CHECK_THROWS_WITH_AS(load_csv(file.path, DataKind::Binary),
                         doctest::Contains("row 2, column 2"), DataError);

    file.write("0,1\n1,\n");
    CHECK_THROWS_WITH_AS(load_csv(file.path, DataKind::Binary),
                         doctest::Contains("row 2, column 2"), DataError);

    file.write("0,1\n,1\n");
    CHECK_THROWS_WITH_AS(load_csv(file.path, DataKind::Binary),
                         doctest::Contains("row 2, column 1"), DataError);

    file.write("0,2\n1,0\n");
    CHECK_THROWS_AS(load_csv(file.path, DataKind::Binary), DataError);

    CHECK_THROWS_AS(load_csv("/nonexistent/nope.csv", DataKind::Binary), DataError);
}

TEST_CASE("write/load round trip reproduces the matrix bit-exactly") {
    SyntheticSpec spec;
    spec.experiment = "custom";
    spec.seed = 77;
    spec.n = 7;
    spec.k = 3;
    spec.D = 4;
    spec.kind = DataKind::Continuous;
    const Dataset original = generate_synthetic(spec).data;

    TempFile file("roundtrip.csv");
    write_csv(original, file.path);
    const Dataset loaded = load_csv(file.path, DataKind::Continuous);
    REQUIRE(loaded.n == original.n);
    REQUIRE(loaded.D == original.D);
    for (std::size_t i = 0; i < original.values.size(); ++i) CHECK(loaded.values[i] == original.values[i]);
}

TEST_CASE("synthetic experiments have the documented shape and are seed-determined") {
    const SyntheticData normal = generate_synthetic({"normal-18", 9});
    CHECK(normal.data.n == 18);
    CHECK(normal.data.D == 2);
    CHECK(normal.data.kind == DataKind::Continuous);
    REQUIRE(normal.generating_clusters.size() == 3);
    for (Mask c : normal.generating_clusters) CHECK(popcount(c) == 6);

    const SyntheticData binary = generate_synthetic({"binary-20", 9});
    CHECK(binary.data.n == 20);
    CHECK(binary.data.D == 30);
    CHECK(binary.data.kind == DataKind::Binary);
    CHECK(binary.generating_clusters.size() == 5);
    binary.data.validate();

    const SyntheticData again = generate_synthetic({"binary-20", 9});
    CHECK(again.data.values == binary.data.values);
    CHECK(again.generating_clusters == binary.generating_clusters);

    const SyntheticData other_seed = generate_synthetic({"binary-20", 10});
    CHECK(other_seed.data.values != binary.data.values);

    CHECK_THROWS_AS(generate_synthetic({"unknown-exp", 1}), DataError);
}

TEST_CASE("json output: structure, 12-digit probabilities, n = 1 degenerate case") {
    const LogNumberTable tables(4);
    SubsetTable f(1);
    f[1] = -1.25;
    const PriorSpec prior{PriorVariant::UniformOnK};
    const auto result = analyze(f, prior, tables);

    ResultDocument doc;
    doc.n = 1;
    doc.model = "binary";
    doc.prior = prior;
    doc.summary = &result.summary;
    doc.cooc = &result.cooc;
    doc.modes = &result.modes;

    const std::string text = render_json(doc);
    const json parsed = json::parse(text);
    CHECK(parsed["n"] == 1);
    CHECK(parsed["model"] == "binary");
    CHECK(parsed["prior"] == "uniform-k");
    CHECK(parsed["posterior_k"].size() == 1);
    CHECK(parsed["posterior_k"][0].get<double>() == doctest::Approx(1.0));
    CHECK(parsed["prior_k"].size() == 1);
    CHECK(parsed["cooccurrence"].size() == 1);
    CHECK(parsed["cooccurrence"][0][0].get<double>() == doctest::Approx(1.0));
    CHECK(parsed["modes"].size() == 1);
    CHECK(parsed["modes"][0]["k"] == 1);
    CHECK(parsed["modes"][0]["clusters"][0][0] == 1);  // 1-based item labels
    CHECK(parsed["global_mode_k"] == 1);
    CHECK(parsed["engine"]["variant"] == "direct");
    CHECK(parsed["log_evidence"].get<double>() == doctest::Approx(-1.25));
    CHECK(!parsed["engine"].contains("wall_time_s"));  // timing is opt-in

    // 12 significant digits in the emitted text
    ResultDocument timed = doc;
    timed.wall_time_s = 1.0 / 3.0;
    const std::string timed_text = render_json(timed);
    CHECK(timed_text.find("0.333333333333") != std::string::npos);
}

TEST_CASE("json matches enumeration-derived values on a seeded instance") {
    const LogNumberTable tables(8);
    SyntheticSpec spec;
    spec.experiment = "custom";
    spec.seed = 2024;
    spec.n = 8;
    spec.k = 3;
    spec.D = 3;
    spec.kind = DataKind::Binary;
    const Dataset data = generate_synthetic(spec).data;
    const PriorSpec prior{PriorVariant::DirichletProcess, 1.0};
    const SubsetTable f = build_f_table(data, ModelSpec{BetaBinomialHyper{}}, prior);

    const auto result = analyze(f, prior, tables);
    ResultDocument doc;
    doc.n = data.n;
    doc.model = "binary";
    doc.prior = prior;
    doc.summary = &result.summary;
    doc.cooc = &result.cooc;
    doc.modes = &result.modes;
    const json parsed = json::parse(render_json(doc));

    const auto reference = oracle::brute_posteriors(f, prior, tables);
    for (int k = 0; k < data.n; ++k) {
        CHECK(parsed["posterior_k"][k].get<double>() ==
              doctest::Approx(reference.summary.posterior_k[k]).epsilon(1e-9));
    }
    for (int i = 0; i < data.n; ++i) {
        for (int j = 0; j < data.n; ++j) {
            CHECK(parsed["cooccurrence"][i][j].get<double>() ==
                  doctest::Approx(reference.cooc.at(i, j)).epsilon(1e-9));
        }
    }
    CHECK(parsed["theta"].get<double>() == 1.0);
}

TEST_CASE("csv output produces one file per requested section") {
    const LogNumberTable tables(4);
    SubsetTable f(3);
    for (Mask x = 1; x <= f.universe(); ++x) f[x] = -0.5 * popcount(x);
    const PriorSpec prior{PriorVariant::UniformOnK};
    const auto result = analyze(f, prior, tables);

    ResultDocument doc;
    doc.n = 3;
    doc.model = "binary";
    doc.prior = prior;
    doc.summary = &result.summary;
    doc.cooc = &result.cooc;
    doc.modes = &result.modes;

    TempFile base("csvout");
    emit_csv(doc, base.path);
    for (const char* suffix : {".posterior_k.csv", ".cooccurrence.csv", ".modes.csv"}) {
        std::ifstream in(base.path + suffix);
        CHECK(in.good());
        std::string first_line;
        std::getline(in, first_line);
        CHECK(!first_line.empty());
        std::remove((base.path + suffix).c_str());
    }
}

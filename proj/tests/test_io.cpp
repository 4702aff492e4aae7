#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "tubeberg/io.hpp"
#include "tubeberg/toeplitz.hpp"

using namespace tubeberg;
using io::json;

namespace {

std::string data(const std::string& name) { return std::string(TUBEBERG_DATA_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("tubeberg_io_" + name)).string();
}

} // namespace

TEST(Measure, UnitAtomAtBase) {
    const auto doc = io::load_measure(json::parse(R"({"alpha":0,"n":1,"atoms":[{"point":[[0,1]],"mass":1}]})"));
    EXPECT_EQ(doc.kp.n, 1u);
    EXPECT_EQ(doc.kp.alpha, 0.0);
    ASSERT_EQ(doc.mu.size(), 1u);
    EXPECT_EQ(doc.mu.atoms()[0].point.coords(), TubePoint::base(1).coords());
    EXPECT_EQ(doc.mu.total_mass(), 1.0);
}

TEST(Measure, RejectsPointsOutsideTheTube) {
    EXPECT_THROW(io::load_measure(json::parse(R"({"alpha":0,"n":2,"atoms":[{"point":[[0,0],[0,-1]],"mass":1}]})")),
                 DomainError);
    EXPECT_THROW(io::load_measure(json::parse(R"({"alpha":0,"n":1,"atoms":[{"point":[[0,1]],"mass":0}]})")),
                 DomainError);
    EXPECT_THROW(io::load_measure(json::parse(R"({"alpha":-1,"n":1,"atoms":[]})")), DomainError);
}

TEST(Measure, MalformedDocuments) {
    const char* bad[] = {
        R"({"n":1,"atoms":[]})",
        R"({"alpha":0,"atoms":[]})",
        R"({"alpha":0,"n":0,"atoms":[]})",
        R"({"alpha":0,"n":1.5,"atoms":[]})",
        R"({"alpha":0,"n":1,"atoms":{}})",
        R"({"alpha":0,"n":1,"atoms":[{"point":[[0,1]]}]})",
        R"({"alpha":0,"n":1,"atoms":[{"point":[[0,1],[0,1]],"mass":1}]})",
        R"({"alpha":0,"n":1,"atoms":[{"point":[[0]],"mass":1}]})",
        R"({"alpha":"0","n":1,"atoms":[]})",
        R"([1,2,3])",
    };
    for (const char* s : bad) EXPECT_THROW(io::load_measure(json::parse(s)), FormatError) << s;
}

TEST(Measure, RoundTrip) {
    const auto doc = io::load_measure(io::read_json_file(data("cluster_n2.json")));
    const auto again = io::load_measure(json::parse(io::measure_to_json(doc.mu, doc.kp).dump()));
    ASSERT_EQ(again.mu.size(), doc.mu.size());
    for (std::size_t k = 0; k < doc.mu.size(); ++k) {
        EXPECT_EQ(again.mu.atoms()[k].point.coords(), doc.mu.atoms()[k].point.coords());
        EXPECT_EQ(again.mu.atoms()[k].mass, doc.mu.atoms()[k].mass);
    }
    EXPECT_EQ(again.kp.alpha, 1.0);
}

TEST(Files, MissingAndInvalid) {
    EXPECT_THROW(io::read_json_file(data("does_not_exist.json")), IoError);
    const std::string p = temp_path("invalid.json");
    io::write_text_file(p, "{ not json");
    EXPECT_THROW(io::read_json_file(p), FormatError);
    std::remove(p.c_str());
    EXPECT_THROW(io::write_text_file("/nonexistent-dir/x.json", "{}"), IoError);
}

TEST(Files, BundledInputsLoad) {
    for (const char* name : {"single_atom.json", "cluster_n1.json", "cluster_n2.json"}) {
        EXPECT_NO_THROW(io::load_measure(io::read_json_file(data(name)))) << name;
    }
    EXPECT_EQ(io::load_grid(io::read_json_file(data("grid_n1.json")), 1).size(), 16u);
    EXPECT_EQ(io::load_grid(io::read_json_file(data("grid_n2.json")), 2).size(), 10u);
    EXPECT_THROW(io::load_grid(io::read_json_file(data("grid_n2.json")), 1), FormatError);
}

TEST(Lattice, RoundTripPreservesEverything) {
    const Lattice l = build_lattice(2, 1.0, RegionSpec(0.5), 3, {2000, 2000, 1});
    const json doc = io::lattice_to_json(l);
    EXPECT_EQ(doc.at("schema"), "tubeberg.lattice/1");
    const Lattice back = io::load_lattice(json::parse(doc.dump()));
    EXPECT_EQ(back.n, l.n);
    EXPECT_EQ(back.r, l.r);
    EXPECT_EQ(back.region.epsilon, l.region.epsilon);
    EXPECT_EQ(back.empirical_N, l.empirical_N);
    ASSERT_EQ(back.centers.size(), l.centers.size());
    for (std::size_t k = 0; k < l.centers.size(); ++k) EXPECT_EQ(back.centers[k].coords(), l.centers[k].coords());
}

TEST(Lattice, DimensionInferredFromCenters) {
    const Lattice l = io::load_lattice(json::parse(R"({"r":1,"epsilon":0.5,"centers":[[[0,0],[0,1]]]})"));
    EXPECT_EQ(l.n, 2u);
    EXPECT_THROW(io::load_lattice(json::parse(R"({"r":1,"epsilon":1.5,"centers":[]})")), DomainError);
}

TEST(Grid, BareArrayAccepted) {
    const auto g = io::load_grid(json::parse(R"([[[0,1]],[[1,2]]])"), 1);
    ASSERT_EQ(g.size(), 2u);
    EXPECT_EQ(g[1].last(), (cplx{1.0, 2.0}));
}

TEST(Csv, CentersAndEigenvalues) {
    Lattice l;
    l.n = 1;
    l.r = 1.0;
    l.centers = {TubePoint::base(1), TubePoint::on_axis(1, 0.25)};
    const std::string csv = io::centers_csv(l);
    EXPECT_EQ(csv, "index,re1,im1,rho\n0,0,1,1\n1,0,0.25,0.25\n");
    EXPECT_EQ(io::eigenvalues_csv({2.5, 0.125}), "index,eigenvalue\n0,2.5\n1,0.125\n");
    const double x = 1.0 / 3.0;
    EXPECT_EQ(std::stod(io::fmt(x)), x);
}

TEST(Manifest, EmbeddedWithSchema) {
    io::RunManifest m{"toeplitz", {{"in", "m.json"}}, 42, 0.5};
    const json out = io::with_manifest({{"norm", 1.0}}, "tubeberg.toeplitz/1", m);
    EXPECT_EQ(out.at("schema"), "tubeberg.toeplitz/1");
    EXPECT_EQ(out.at("manifest").at("command"), "toeplitz");
    EXPECT_EQ(out.at("manifest").at("seed"), 42u);
    EXPECT_TRUE(out.at("manifest").at("versions").contains("tubeberg"));
    EXPECT_EQ(out.at("manifest").at("timing").at("seconds"), 0.5);
}

TEST(Estimate, Serialised) {
    IntegralEstimate e;
    e.value = cplx{1.0, -2.0};
    e.std_error = cplx{0.1, 0.2};
    e.samples = 10;
    const json j = io::estimate_to_json(e);
    EXPECT_EQ(io::complex_from_json(j.at("value")), e.value);
    EXPECT_EQ(j.at("samples"), 10u);
    EXPECT_THROW(io::complex_from_json(json::parse("[1]")), FormatError);
}

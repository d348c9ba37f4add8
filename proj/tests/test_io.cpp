#include "hopf/forest.hpp"
#include "hopf/io.hpp"
#include "hopf/presets.hpp"

#include <catch_amalgamated.hpp>

using namespace hopf;
using io::json;

TEST_CASE("rationals in JSON", "[io]") {
    CHECK(io::rational_from_json(json("3/6")) == Rational(1, 2));
    CHECK(io::rational_from_json(json(4)) == Rational(4));
    CHECK_THROWS_AS(io::rational_from_json(json(0.5)), std::invalid_argument);
    CHECK_THROWS_AS(io::rational_from_json(json("1/0")), std::domain_error);
}

TEST_CASE("specs round trip", "[io]") {
    for (const auto& name : preset_names()) {
        std::vector<Rational> params;
        if (name == "biased" || name == "top-or-bottom") params = {Rational(2, 7)};
        if (name == "top-m-ordered" || name == "top-m-unordered") params = {Rational(2)};
        if (name == "trinomial") params = {Rational(1, 5), Rational(3, 5), Rational(1, 5)};
        auto s = expand_preset(name, params, 4);
        auto text = io::to_json(s).dump();
        CHECK(io::spec_from_json(json::parse(text)) == s);
    }
    // weights may be integers; zero parts and duplicates normalize
    auto s = io::spec_from_json(json::parse(R"({"n": 3, "terms": [{"composition": [0,1,2], "weight": 1},
                                                                   {"composition": [1,2], "weight": "1/2"}]})"));
    CHECK(s.terms == std::vector<SpecTerm>{{{1, 2}, Rational(3, 2)}});
    CHECK_THROWS_AS(io::spec_from_json(json::parse(R"({"n": 3})")), SpecError);
    CHECK_THROWS_AS(io::spec_from_json(json::parse(R"({"n": 3, "terms": [{"composition": [1,2]}]})")), SpecError);
    CHECK_THROWS_AS(io::spec_from_json(json::parse(R"({"n": 3, "terms": [{"composition": [1,1], "weight": 1}]})")),
                    SpecError);
}

TEST_CASE("matrices round trip through JSON", "[io]") {
    ShuffleAlgebra sh(Alphabet({"a", "b"}));
    auto k = build_transition_matrix(sh, expand_preset("top-or-bottom", {Rational(1, 3)}, 4),
                                     sh.deck_states(sh.parse("aabb")));
    json j = json::parse(io::matrix_to_json(k, sh.name()).dump());
    CHECK(j["format_version"] == io::kFormatVersion);
    CHECK(j["kind"] == "transition-matrix");
    auto back = io::matrix_from_json(j);
    CHECK(back.states == k.labels);
    CHECK(back.kernel == k.kernel);

    ForestAlgebra fo;
    auto f = build_transition_matrix(fo, expand_preset("riffle", {}, 4));
    auto fb = io::matrix_from_json(io::matrix_to_json(f, fo.name()));
    CHECK(fb.kernel == f.kernel);

    j["format_version"] = 99;
    CHECK_THROWS_AS(io::matrix_from_json(j), std::invalid_argument);
    j["format_version"] = io::kFormatVersion;
    j["kernel"].erase(0);
    CHECK_THROWS_AS(io::matrix_from_json(j), std::invalid_argument);
}

TEST_CASE("matrix CSV", "[io]") {
    ShuffleAlgebra sh(Alphabet::distinct(3));
    auto k = build_transition_matrix(sh, expand_preset("top-to-random", {}, 3), sh.deck_states(sh.parse("123")));
    const std::string csv = io::matrix_to_csv(k);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "state,123,132,213,231,312,321");
    std::getline(in, line);
    CHECK(line == "123,1/3,0,1/3,1/3,0,0");
    // labels with commas are quoted
    ShuffleAlgebra big(Alphabet::distinct(10));
    auto k2 = build_transition_matrix(big, expand_preset("riffle", {}, 2), big.deck_states(big.parse("1,10")));
    CHECK(io::matrix_to_csv(k2).find("\"1,10\"") != std::string::npos);
}

TEST_CASE("spectrum and report serialization", "[io]") {
    auto spec = expand_preset("riffle", {}, 3);
    auto s = spectrum(spec, content_profile({1, 1, 1}));
    auto j = io::spectrum_to_json(s);
    REQUIRE(j.size() == 3);
    CHECK(j[0]["partition"] == json::array({3}));
    CHECK(j[0]["eigenvalue"] == "1/4");
    CHECK(j[0]["multiplicity"] == "2");
    CHECK(j[2]["eigenvalue"] == "1");
    CHECK(j[2]["multiplicity"] == "1");

    TrajectoryReport rep;
    rep.statistics = {"x"};
    rep.moments = {{Moments{}, Moments{}}};
    rep.moments[0][1].add(Rational(1));
    rep.moments[0][1].add(Rational(3));
    rep.trials = 2;
    rep.steps = 1;
    auto r = io::report_to_json(rep);
    CHECK(r["statistics"]["x"][1]["mean"] == 2.0);
    CHECK(r["statistics"]["x"][1]["variance"] == 2.0);
}

#ifndef HOPF_IO_HPP
#define HOPF_IO_HPP

// JSON and CSV serialization. Rationals are written as "p/q" strings ("p" when
// integral) and every top-level JSON document carries format_version.

#include "hopf/chain.hpp"
#include "hopf/cpp_spec.hpp"
#include "hopf/simulate.hpp"
#include "hopf/spectral.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopf::io {

using json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

inline json document(const std::string& kind) {
    json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = kind;
    return j;
}

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw std::invalid_argument("expected a rational as \"p/q\" string or integer, got " + j.dump());
}

inline json to_json(const CppSpec& spec) {
    json j;
    j["n"] = spec.n;
    j["terms"] = json::array();
    for (const auto& t : spec.terms) j["terms"].push_back({{"composition", t.composition}, {"weight", t.weight.str()}});
    return j;
}

/// {"n": 4, "terms": [{"composition": [1,3], "weight": "1/2"}, ...]}
inline CppSpec spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
        throw SpecError("spec JSON needs fields \"n\" and \"terms\"");
    CppSpec s;
    s.n = j.at("n").get<int>();
    for (const auto& t : j.at("terms")) {
        if (!t.contains("composition") || !t.contains("weight"))
            throw SpecError("spec term needs \"composition\" and \"weight\": " + t.dump());
        s.terms.push_back({t.at("composition").get<Composition>(), rational_from_json(t.at("weight"))});
    }
    return normalize_spec(s);
}

inline CppSpec read_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SpecError("spec file " + path + " is not valid JSON: " + e.what());
    }
    return spec_from_json(j);
}

inline json rationals(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

template <class Key>
json matrix_to_json(const TransitionMatrix<Key>& k, const std::string& algebra) {
    json j = document("transition-matrix");
    j["algebra"] = algebra;
    j["spec"] = to_json(k.spec);
    j["beta"] = k.beta.str();
    j["states"] = k.labels;
    j["eta"] = rationals(k.scalings);
    j["kernel"] = json::array();
    for (std::size_t i = 0; i < k.size(); ++i) {
        std::vector<Rational> row(k.kernel.row(i).begin(), k.kernel.row(i).end());
        j["kernel"].push_back(rationals(row));
    }
    return j;
}

/// Header row of state encodings, then one row per state.
template <class Key>
std::string matrix_to_csv(const TransitionMatrix<Key>& k) {
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    };
    std::ostringstream os;
    os << "state";
    for (const auto& l : k.labels) os << "," << quote(l);
    os << "\n";
    for (std::size_t i = 0; i < k.size(); ++i) {
        os << quote(k.labels[i]);
        for (std::size_t j = 0; j < k.size(); ++j) os << "," << k.kernel(i, j).str();
        os << "\n";
    }
    return os.str();
}

struct ImportedMatrix {
    std::vector<std::string> states;
    RatMatrix kernel;
};

inline ImportedMatrix matrix_from_json(const json& j) {
    if (j.value("format_version", 0) != kFormatVersion)
        throw std::invalid_argument("unsupported matrix format_version");
    ImportedMatrix m;
    m.states = j.at("states").get<std::vector<std::string>>();
    const auto& rows = j.at("kernel");
    if (rows.size() != m.states.size()) throw std::invalid_argument("kernel row count does not match states");
    m.kernel = RatMatrix(m.states.size(), m.states.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.states.size()) throw std::invalid_argument("kernel row has wrong length");
        for (std::size_t c = 0; c < rows[i].size(); ++c) m.kernel(i, c) = rational_from_json(rows[i][c]);
    }
    return m;
}

inline json distribution_to_json(const std::vector<std::string>& labels, const Distribution& d) {
    json j = json::object();
    for (std::size_t i = 0; i < d.size(); ++i) j[labels[i]] = d[i].str();
    return j;
}

inline json spectrum_to_json(const Spectrum& s) {
    json a = json::array();
    for (const auto& r : s.rows)
        a.push_back({{"partition", r.partition}, {"eigenvalue", r.eigenvalue.str()},
                     {"multiplicity", r.multiplicity.get_str()}});
    return a;
}

inline json spectrum_report_to_json(const SpectrumReport& rep) {
    json j;
    j["states"] = rep.states;
    j["claimed_total"] = rep.claimed_total.get_str();
    j["annihilated"] = rep.annihilated;
    j["ok"] = rep.ok();
    j["eigenspaces"] = json::array();
    for (const auto& e : rep.eigenspaces)
        j["eigenspaces"].push_back(
            {{"eigenvalue", e.eigenvalue.str()}, {"claimed", e.claimed.get_str()}, {"matrix", e.actual}});
    return j;
}

inline json eigenvector_to_json(const Eigenvector& v, const Alphabet& abc) {
    json terms = json::object();
    for (const auto& [w, c] : v.vector) terms[abc.encode(w)] = c.str();
    return {{"eigenvalue", v.eigenvalue.str()},
            {"j", v.j},
            {"letters", v.letters},
            {"primitives", v.primitives},
            {"terms", terms}};
}

inline json report_to_json(const TrajectoryReport& rep) {
    json j;
    j["trials"] = rep.trials;
    j["steps"] = rep.steps;
    j["seed"] = rep.seed;
    j["statistics"] = json::object();
    for (std::size_t s = 0; s < rep.statistics.size(); ++s) {
        json series = json::array();
        for (std::size_t t = 0; t < rep.moments[s].size(); ++t) {
            const auto& m = rep.moments[s][t];
            series.push_back({{"t", t},
                              {"mean", m.mean().to_double()},
                              {"variance", m.variance().to_double()},
                              {"stderr", m.standard_error()}});
        }
        j["statistics"][rep.statistics[s]] = series;
    }
    return j;
}

}  // namespace hopf::io

#endif  // HOPF_IO_HPP

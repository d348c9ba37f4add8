// hopfchain: build, analyze and simulate descent-operator Markov chains.
//
//   hopfchain matrix     --distinct 4 --preset riffle --params 2 --format csv
//   hopfchain spectrum   --distinct 4 --preset top-to-random --verify-matrix
//   hopfchain stationary --algebra forests --n 3
//   hopfchain eigvecs    --distinct 3 --q 1/3
//   hopfchain evolve     --distinct 4 --preset top-or-bottom --q 1/2 --t 5 --stat weighted-descents
//   hopfchain simulate   --distinct 5 --preset riffle --t 3 --trials 100000 --seed 7
//   hopfchain verify     --grid desk
//
// Exit status: 0 success, 1 verification failure, 2 usage or input error.

#include "hopf/io.hpp"
#include "hopf/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace hopf;
using io::json;

namespace {

struct Options {
    std::string algebra = "shuffle";
    int distinct = 0;
    std::string deck;
    std::string forest;
    int degree = 0;
    std::string preset;
    std::vector<std::string> params;
    std::string q;
    std::string spec_file;
    std::size_t max_states = 1000;
    std::string out;
    std::string format = "json";

    bool verify_matrix = false;
    std::string import_file;
    unsigned t = 5;
    std::string stat = "weighted-descents";
    std::string stat_q;
    int j = 2;
    int eig_j = -1;
    long trials = 10000;
    std::uint64_t seed = 1;
    std::string start;
    std::string grid = "desk";
    bool verbose = false;
};

/// Exit status 1.
struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw UsageError("cannot write " + o.out);
    f << text;
    if (!text.empty() && text.back() != '\n') f << "\n";
}

void emit(const Options& o, const json& j) { emit(o, j.dump(2)); }

std::vector<Rational> preset_params(const Options& o) {
    std::vector<Rational> out;
    for (const auto& p : o.params) out.push_back(Rational::parse(p));
    if (!o.q.empty()) out.push_back(Rational::parse(o.q));
    return out;
}

CppSpec resolve_spec(const Options& o, int n) {
    if (!o.spec_file.empty()) {
        if (!o.preset.empty()) throw UsageError("give either --spec or --preset, not both");
        CppSpec s = io::read_spec_file(o.spec_file);
        if (s.n != n)
            throw UsageError("spec degree " + std::to_string(s.n) + " does not match state space degree " +
                             std::to_string(n));
        return s;
    }
    if (o.preset.empty()) throw UsageError("a --preset or --spec is required");
    return expand_preset(o.preset, preset_params(o), n);
}

// State spaces ---------------------------------------------------------------

struct ShuffleContext {
    ShuffleAlgebra alg;
    std::vector<Word> states;
    Word start;
    std::vector<int> content;
    int n;
    std::string description;

    GradedProfile profile() const { return content_profile(content); }
};

struct ForestContext {
    ForestAlgebra alg;
    std::vector<Forest> states;
    std::optional<Forest> start;
    int n;
    std::string description;

    GradedProfile profile() const { return degree_profile(alg, n); }
};

ShuffleContext shuffle_context(const Options& o) {
    if (!o.forest.empty()) throw UsageError("--forest needs --algebra forests");
    if ((o.distinct > 0) == !o.deck.empty()) throw UsageError("give exactly one of --distinct N or --deck WORD");
    Alphabet abc = o.distinct > 0 ? Alphabet::distinct(o.distinct) : Alphabet::from_deck(o.deck);
    ShuffleAlgebra alg(abc);
    Word deck;
    if (o.distinct > 0)
        for (int i = 0; i < o.distinct; ++i) deck.letters.push_back(i);
    else
        deck = alg.parse(o.deck);
    std::sort(deck.letters.begin(), deck.letters.end());
    const int n = static_cast<int>(deck.size());
    // multinomial count before enumerating
    const Integer count = multinomial(n, content(deck, abc.size()));
    if (count > static_cast<unsigned long>(o.max_states))
        throw StateSpaceTooLarge("deck has " + count.get_str() + " arrangements, cap is " +
                                 std::to_string(o.max_states) + " (raise with --max-states)");
    ShuffleContext c{alg, alg.deck_states(deck), deck, content(deck, abc.size()), n,
                     o.distinct > 0 ? "distinct deck of " + std::to_string(n) : "deck " + o.deck};
    if (!o.start.empty()) {
        c.start = alg.parse(o.start);
        if (content(c.start, abc.size()) != c.content) throw UsageError("--start is not a rearrangement of the deck");
    }
    return c;
}

ForestContext forest_context(const Options& o) {
    if (o.distinct > 0 || !o.deck.empty()) throw UsageError("--distinct/--deck need --algebra shuffle");
    ForestContext c{ForestAlgebra{}, {}, std::nullopt, o.degree, ""};
    if (!o.forest.empty()) {
        c.start = Forest::parse(o.forest);
        if (o.degree && o.degree != c.start->degree()) throw UsageError("--n does not match --forest");
        c.n = c.start->degree();
    }
    if (c.n < 1) throw UsageError("forests need --n N or --forest ENC");
    if (c.n > 12) throw StateSpaceTooLarge("forest degree " + std::to_string(c.n) + " is beyond the supported range");
    c.states = c.alg.basis(c.n);
    if (c.states.size() > o.max_states)
        throw StateSpaceTooLarge(std::to_string(c.states.size()) + " forests, cap is " + std::to_string(o.max_states));
    c.description = "all forests with " + std::to_string(c.n) + " vertices";
    return c;
}

template <class Ctx>
json header(const std::string& kind, const Ctx& ctx) {
    json j = io::document(kind);
    j["algebra"] = ctx.alg.name();
    j["state_space"] = ctx.description;
    j["states"] = ctx.states.size();
    return j;
}

template <class Ctx>
auto build(const Options& o, const Ctx& ctx, const CppSpec& spec) {
    return build_transition_matrix(ctx.alg, spec, ctx.states, BuildOptions{o.max_states});
}

// Subcommands ----------------------------------------------------------------

template <class Ctx>
int cmd_matrix(const Options& o, const Ctx& ctx) {
    const CppSpec spec = resolve_spec(o, ctx.n);
    auto k = build_transition_matrix(ctx.alg, spec, ctx.states, BuildOptions{o.max_states});
    if (o.format == "csv") {
        emit(o, io::matrix_to_csv(k));
    } else {
        json j = io::matrix_to_json(k, ctx.alg.name());
        j["state_space"] = ctx.description;
        emit(o, j);
    }
    return 0;
}

template <class Ctx>
int cmd_spectrum(const Options& o, const Ctx& ctx) {
    const CppSpec spec = resolve_spec(o, ctx.n);
    const Spectrum s = spectrum(spec, ctx.profile());
    json j = header("spectrum", ctx);
    j["spec"] = io::to_json(spec);
    j["spectrum"] = io::spectrum_to_json(s);
    json by = json::object();
    for (const auto& [lam, m] : s.by_eigenvalue()) by[lam.str()] = m.get_str();
    j["by_eigenvalue"] = by;
    int status = 0;
    if (o.verify_matrix || !o.import_file.empty()) {
        RatMatrix kernel;
        if (!o.import_file.empty()) {
            std::ifstream in(o.import_file);
            if (!in) throw UsageError("cannot open " + o.import_file);
            auto m = io::matrix_from_json(json::parse(in));
            if (m.states.size() != ctx.states.size()) throw UsageError("imported matrix has the wrong number of states");
            kernel = std::move(m.kernel);
        } else {
            kernel = build(o, ctx, spec).kernel;
        }
        auto rep = verify_spectrum(kernel, s);
        j["verification"] = io::spectrum_report_to_json(rep);
        if (!rep.ok()) status = 1;
    }
    if (o.format == "csv") {
        std::string text = "partition,eigenvalue,multiplicity\n";
        for (const auto& r : s.rows) text += "\"" + to_string(r.partition) + "\"," + r.eigenvalue.str() + "," +
                                             r.multiplicity.get_str() + "\n";
        emit(o, text);
    } else {
        emit(o, j);
    }
    return status;
}

template <class Ctx>
int cmd_stationary(const Options& o, const Ctx& ctx) {
    json j = header("stationary", ctx);
    std::vector<std::string> labels;
    for (const auto& s : ctx.states) labels.push_back(ctx.alg.encode(s));
    j["distributions"] = json::array();
    for (const auto& pi : stationary_distributions(ctx.alg, ctx.states))
        j["distributions"].push_back({{"multiset", pi.multiset}, {"weights", io::distribution_to_json(labels, pi.weights)}});
    emit(o, j);
    return 0;
}

int cmd_eigvecs(const Options& o, const ShuffleContext& ctx) {
    const Rational q = o.q.empty() ? Rational(1) : Rational::parse(o.q);
    FreeAssociativeAlgebra fa(ctx.alg.alphabet());
    json j = header("eigenvectors", ctx);
    j["operator"] = "top-or-bottom(" + q.str() + ") on the free associative algebra";
    j["vectors"] = json::array();
    std::vector<Eigenvector> all;
    for (int jj = 0; jj <= ctx.n; ++jj) {
        if (o.eig_j >= 0 && jj != o.eig_j) continue;
        for (auto& v : build_E_j(fa, ctx.content, jj, q)) {
            json e = io::eigenvector_to_json(v, fa.alphabet());
            e["verified"] = true;
            j["vectors"].push_back(e);
            all.push_back(std::move(v));
        }
    }
    j["count"] = all.size();
    j["span_dimension"] = span_dimension(all, fa.deck_states(ctx.start));
    emit(o, j);
    return 0;
}

int cmd_eigvecs(const Options&, const ForestContext&) {
    throw UsageError("eigvecs is available for --algebra shuffle only");
}

std::function<Rational(const Word&)> word_statistic(const Options& o, const CppSpec& spec, Rational& stat_q) {
    stat_q = Rational(1, 2);
    if (!o.stat_q.empty()) stat_q = Rational::parse(o.stat_q);
    else if (o.preset == "top-or-bottom" && !preset_params(o).empty()) stat_q = preset_params(o).front();
    (void)spec;
    const Rational q = stat_q;
    if (o.stat == "weighted-descents") return [q](const Word& w) { return weighted_descent_stat(w, q); };
    if (o.stat == "weighted-peaks") return [q](const Word& w) { return weighted_peak_stat(w, q); };
    if (o.stat == "descents") return [](const Word& w) { return Rational(descent_count(w)); };
    if (o.stat == "peaks") return [](const Word& w) { return Rational(peak_count(w)); };
    throw UsageError("unknown deck statistic '" + o.stat + "' (weighted-descents, weighted-peaks, descents, peaks)");
}

std::function<Rational(const Forest&)> forest_statistic(const Options& o) {
    if (o.stat != "fj") throw UsageError("forest statistic must be 'fj'");
    Rational q1(1), q3(1);
    if (o.preset == "trinomial") {
        auto p = preset_params(o);
        if (p.size() == 3) q1 = p[0], q3 = p[2];
    }
    const int j = o.j;
    if (j < 2) throw UsageError("--j must be >= 2");
    return [=](const Forest& f) { return f_j_statistic(f, j, q1, q3); };
}

// Closed forms known for the ascending start.
std::optional<Rational> closed_form(const Options& o, const ShuffleContext& ctx, const Rational& stat_q, unsigned t) {
    if (!o.start.empty() || o.distinct == 0) return std::nullopt;
    const int n = ctx.n;
    auto p = preset_params(o);
    if (o.preset == "top-or-bottom" && p.size() == 1 && p[0] == stat_q) {
        if (o.stat == "weighted-descents") return (Rational(1) - pow(Rational(n - 2, n), t)) / Rational(2);
        if (o.stat == "weighted-peaks" && n >= 3) return (Rational(1) - pow(Rational(n - 3, n), t)) / Rational(3);
    }
    if (o.preset == "riffle") {
        const Rational a = p.empty() ? Rational(2) : p[0];
        if (o.stat == "descents") return (Rational(1) - pow(Rational(1) / a, t)) * Rational(n - 1, 2);
        if (o.stat == "peaks" && n >= 2) return (Rational(1) - pow(Rational(1) / a, 2 * t)) * Rational(n - 2, 3);
    }
    return std::nullopt;
}

int cmd_evolve(const Options& o, const ShuffleContext& ctx) {
    const CppSpec spec = resolve_spec(o, ctx.n);
    auto k = build(o, ctx, spec);
    Rational stat_q;
    auto stat = word_statistic(o, spec, stat_q);
    auto series = expectation_series<Word>(k, point_mass(k, ctx.start), o.t, stat);
    json j = header("evolution", ctx);
    j["spec"] = io::to_json(spec);
    j["start"] = ctx.alg.encode(ctx.start);
    j["statistic"] = o.stat;
    if (o.stat.rfind("weighted", 0) == 0) j["statistic_q"] = stat_q.str();
    j["values"] = json::array();
    bool all_match = true;
    for (unsigned t = 0; t <= o.t; ++t) {
        json row{{"t", t}, {"expectation", series[t].str()}};
        if (auto cf = closed_form(o, ctx, stat_q, t)) {
            row["closed_form"] = cf->str();
            row["matches"] = *cf == series[t];
            all_match = all_match && *cf == series[t];
        }
        j["values"].push_back(row);
    }
    if (o.format == "csv") {
        std::string text = "t,expectation\n";
        for (unsigned t = 0; t <= o.t; ++t) text += std::to_string(t) + "," + series[t].str() + "\n";
        emit(o, text);
    } else {
        emit(o, j);
    }
    return all_match ? 0 : 1;
}

int cmd_evolve(const Options& o, const ForestContext& ctx) {
    if (!ctx.start) throw UsageError("evolve on forests needs --forest ENC as the start state");
    const CppSpec spec = resolve_spec(o, ctx.n);
    auto k = build(o, ctx, spec);
    auto series = expectation_series<Forest>(k, point_mass(k, *ctx.start), o.t, forest_statistic(o));
    json j = header("evolution", ctx);
    j["spec"] = io::to_json(spec);
    j["start"] = ctx.start->encoding();
    j["statistic"] = "f" + std::to_string(o.j);
    j["values"] = json::array();
    for (unsigned t = 0; t <= o.t; ++t) j["values"].push_back({{"t", t}, {"expectation", series[t].str()}});
    emit(o, j);
    return 0;
}

int cmd_simulate(const Options& o, const ShuffleContext& ctx) {
    const CppSpec spec = resolve_spec(o, ctx.n);
    DeckStepper stepper(spec);
    std::function<Word(const Word&, RngStream&)> step = [&](const Word& w, RngStream& rng) { return stepper(w, rng); };
    Rational stat_q;
    auto stat = word_statistic(o, spec, stat_q);
    auto rep = run_trajectories<Word>(ctx.start, o.t, o.trials, step, {{o.stat, stat}}, o.seed);
    json j = header("simulation", ctx);
    j["spec"] = io::to_json(spec);
    j["start"] = ctx.alg.encode(ctx.start);
    j["sampler"] = "cut into consecutive piles, first composition part on top; cards drop from pile bottoms "
                   "with probability proportional to pile size";
    j["report"] = io::report_to_json(rep);
    if (ctx.states.size() <= o.max_states) {
        auto k = build(o, ctx, spec);
        auto exact = expectation_series<Word>(k, point_mass(k, ctx.start), o.t, stat);
        json ex = json::array();
        for (const auto& e : exact) ex.push_back(e.str());
        j["exact"] = ex;
    }
    emit(o, j);
    return 0;
}

int cmd_simulate(const Options& o, const ForestContext& ctx) {
    if (!ctx.start) throw UsageError("simulate on forests needs --forest ENC as the start state");
    const CppSpec spec = resolve_spec(o, ctx.n);
    auto k = build(o, ctx, spec);
    RowStepper<Forest> stepper(k);
    std::function<Forest(const Forest&, RngStream&)> step = [&](const Forest& f, RngStream& rng) { return stepper(f, rng); };
    auto stat = forest_statistic(o);
    auto rep = run_trajectories<Forest>(*ctx.start, o.t, o.trials, step, {{"f" + std::to_string(o.j), stat}}, o.seed);
    json j = header("simulation", ctx);
    j["spec"] = io::to_json(spec);
    j["start"] = ctx.start->encoding();
    j["sampler"] = "row sampling of the exact transition matrix";
    j["report"] = io::report_to_json(rep);
    json ex = json::array();
    for (const auto& e : expectation_series<Forest>(k, point_mass(k, *ctx.start), o.t, stat)) ex.push_back(e.str());
    j["exact"] = ex;
    emit(o, j);
    return 0;
}

int cmd_verify(const Options& o) {
    if (o.grid != "desk") throw UsageError("only --grid desk is available");
    json j = io::document("acceptance");
    j["criteria"] = json::array();
    int failures = 0;
    const bool text = o.format != "json" || o.out.empty();
    auto results = acceptance::run_all([&](const acceptance::CriterionResult& r) {
        if (text && o.out.empty() && o.format != "json") {
            std::cout << acceptance::format_line(r) << "\n";
            if (o.verbose)
                for (const auto& d : r.details) std::cout << "    " << d << "\n";
            std::cout.flush();
        }
    });
    for (const auto& r : results) {
        if (r.status == acceptance::Status::fail) ++failures;
        j["criteria"].push_back({{"id", r.id},
                                 {"title", r.title},
                                 {"status", acceptance::to_string(r.status)},
                                 {"summary", r.summary},
                                 {"details", r.details},
                                 {"seconds", r.seconds}});
    }
    j["failed"] = failures;
    if (o.format == "json") emit(o, j);
    return failures ? 1 : 0;
}

template <class Fn>
int dispatch(const Options& o, Fn&& fn) {
    if (o.algebra == "shuffle") return fn(shuffle_context(o));
    if (o.algebra == "forests") return fn(forest_context(o));
    throw UsageError("unknown algebra '" + o.algebra + "' (shuffle, forests)");
}

void error_json(const std::string& type, const std::string& message) {
    json e;
    e["format_version"] = io::kFormatVersion;
    e["error"] = {{"type", type}, {"message", message}};
    std::cerr << e.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Descent-operator Markov chains on combinatorial Hopf algebras"};
    app.require_subcommand(1);
    Options o;

    auto state_options = [&](CLI::App* sub) {
        sub->add_option("--algebra", o.algebra, "shuffle or forests")->check(CLI::IsMember({"shuffle", "forests"}));
        sub->add_option("--distinct", o.distinct, "deck of N distinct cards 1<2<...<N");
        sub->add_option("--deck", o.deck, "deck with repeated letters, e.g. aabb");
        sub->add_option("--forest", o.forest, "forest start state, e.g. (()())");
        sub->add_option("--n", o.degree, "forest degree (number of vertices)");
        sub->add_option("--max-states", o.max_states, "state-space cap")->capture_default_str();
        sub->add_option("--out", o.out, "write output to FILE");
        sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    };
    auto spec_options = [&](CLI::App* sub) {
        sub->add_option("--preset", o.preset, "riffle, biased, top-to-random, top-m-ordered, top-m-unordered, "
                                              "top-or-bottom, trinomial");
        sub->add_option("--params", o.params, "preset parameters as p/q strings");
        sub->add_option("--q", o.q, "single preset parameter (appended to --params)");
        sub->add_option("--spec", o.spec_file, "spec JSON file")->check(CLI::ExistingFile);
    };

    auto* matrix = app.add_subcommand("matrix", "exact transition matrix");
    state_options(matrix);
    spec_options(matrix);

    auto* spec_cmd = app.add_subcommand("spectrum", "eigenvalues and multiplicities");
    state_options(spec_cmd);
    spec_options(spec_cmd);
    spec_cmd->add_flag("--verify-matrix", o.verify_matrix, "check against rank-derived eigenspace dimensions");
    spec_cmd->add_option("--import", o.import_file, "verify an exported matrix JSON instead of rebuilding")
        ->check(CLI::ExistingFile);

    auto* stationary = app.add_subcommand("stationary", "stationary distributions");
    state_options(stationary);

    auto* eig = app.add_subcommand("eigvecs", "eigenvectors of top-or-bottom(q) on the dual algebra");
    state_options(eig);
    eig->add_option("--q", o.q, "top-or-bottom parameter (default 1)");
    eig->add_option("--j", o.eig_j, "only this E_j");

    auto* evolve = app.add_subcommand("evolve", "exact expectations of a statistic over time");
    state_options(evolve);
    spec_options(evolve);
    evolve->add_option("--t", o.t, "last time step")->capture_default_str();
    evolve->add_option("--stat", o.stat, "weighted-descents, weighted-peaks, descents, peaks; fj for forests")
        ->capture_default_str();
    evolve->add_option("--stat-q", o.stat_q, "q in the weighted statistics");
    evolve->add_option("--j", o.j, "j for the forest statistic")->capture_default_str();
    evolve->add_option("--start", o.start, "start deck (default ascending)");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo trajectories");
    state_options(sim);
    spec_options(sim);
    sim->add_option("--t", o.t, "steps")->capture_default_str();
    sim->add_option("--trials", o.trials, "trajectories")->capture_default_str()->check(CLI::PositiveNumber);
    sim->add_option("--seed", o.seed, "seed")->capture_default_str();
    sim->add_option("--stat", o.stat, "statistic")->capture_default_str();
    sim->add_option("--stat-q", o.stat_q, "q in the weighted statistics");
    sim->add_option("--j", o.j, "j for the forest statistic")->capture_default_str();
    sim->add_option("--start", o.start, "start deck (default ascending)");

    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--grid", o.grid, "grid name")->capture_default_str();
    verify->add_option("--format", o.format, "text (default) or json")->check(CLI::IsMember({"json", "csv", "text"}));
    verify->add_option("--out", o.out, "write JSON report to FILE");
    verify->add_flag("-v,--verbose", o.verbose, "print details under each criterion");
    o.format = "json";

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        error_json("usage", e.what());
        return 2;
    }

    try {
        if (*matrix) return dispatch(o, [&](const auto& c) { return cmd_matrix(o, c); });
        if (*spec_cmd) return dispatch(o, [&](const auto& c) { return cmd_spectrum(o, c); });
        if (*stationary) return dispatch(o, [&](const auto& c) { return cmd_stationary(o, c); });
        if (*eig) return dispatch(o, [&](const auto& c) { return cmd_eigvecs(o, c); });
        if (*evolve) return dispatch(o, [&](const auto& c) { return cmd_evolve(o, c); });
        if (*sim) return dispatch(o, [&](const auto& c) { return cmd_simulate(o, c); });
        if (*verify) {
            if (verify->count("--format") == 0) o.format = "text";
            return cmd_verify(o);
        }
    } catch (const VerificationFailure& e) {
        error_json("verification", e.what());
        return 1;
    } catch (const UsageError& e) {
        error_json("usage", e.what());
        return 2;
    } catch (const SpecError& e) {
        error_json("spec", e.what());
        return 2;
    } catch (const StateSpaceTooLarge& e) {
        error_json("state-space-too-large", e.what());
        return 2;
    } catch (const StateSpaceError& e) {
        error_json("state-space", e.what());
        return 1;
    } catch (const EigenvectorError& e) {
        error_json("verification", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        error_json("input", e.what());
        return 2;
    } catch (const std::out_of_range& e) {
        error_json("input", e.what());
        return 2;
    } catch (const std::logic_error& e) {
        error_json("verification", e.what());
        return 1;
    } catch (const std::exception& e) {
        error_json("error", e.what());
        return 2;
    }
    return 2;
}

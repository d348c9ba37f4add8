#ifndef HOPF_SIMULATE_HPP
#define HOPF_SIMULATE_HPP

// Seeded Monte Carlo for descent-operator chains: the cut-and-drop sampler on
// decks, a generic row sampler for built matrices, and exact moment
// accumulators merged across worker streams.

#include "hopf/chain.hpp"
#include "hopf/cpp_spec.hpp"
#include "hopf/rational.hpp"
#include "hopf/shuffle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hopf {

/// mt19937_64 keyed by (seed, stream). Both the engine and seed_seq are fully
/// specified by the standard; integer draws use our own rejection sampling,
/// so streams are reproducible across platforms.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        engine_.seed(seq);
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("RngStream::below: empty range");
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return x % bound;
    }

    /// Uniform on [0, bound) for arbitrary-precision bounds.
    Integer below(const Integer& bound) {
        if (bound <= 0) throw std::invalid_argument("RngStream::below: empty range");
        if (bound.fits_ulong_p()) return Integer(static_cast<unsigned long>(below(std::uint64_t{bound.get_ui()})));
        const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
        while (true) {
            Integer x(0);
            std::size_t have = 0;
            while (have < bits) {
                x <<= 64;
                std::uint64_t w = next();
                Integer part(static_cast<unsigned long>(w >> 32));
                part <<= 32;
                part += static_cast<unsigned long>(w & 0xffffffffu);
                x += part;
                have += 64;
            }
            x >>= static_cast<mp_bitcnt_t>(have - bits);
            if (x < bound) return x;
        }
    }

private:
    std::uint64_t seed_, stream_;
    std::mt19937_64 engine_;
};

/// Inverse-CDF sampling from a finite law with rational weights.
template <class T>
class DiscreteSampler {
public:
    DiscreteSampler() = default;

    explicit DiscreteSampler(const std::vector<std::pair<T, Rational>>& law) {
        Integer den(1);
        for (const auto& [v, p] : law) {
            if (p.sign() < 0) throw std::invalid_argument("DiscreteSampler: negative weight");
            den = lcm(den, p.denominator());
        }
        Integer acc(0);
        for (const auto& [v, p] : law) {
            if (p.is_zero()) continue;
            acc += p.numerator() * (den / p.denominator());
            values_.push_back(v);
            cumulative_.push_back(acc);
        }
        if (values_.empty()) throw std::invalid_argument("DiscreteSampler: no positive weight");
        total_ = acc;
    }

    const T& sample(RngStream& rng) const {
        const Integer u = rng.below(total_);
        std::size_t lo = 0, hi = cumulative_.size() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (cumulative_[mid] > u) hi = mid;
            else lo = mid + 1;
        }
        return values_[lo];
    }

private:
    std::vector<T> values_;
    std::vector<Integer> cumulative_;
    Integer total_;
};

/// Draws compositions with the probabilities of composition_law.
class CompositionSampler {
public:
    explicit CompositionSampler(const CppSpec& spec) : n_(normalize_spec(spec).n) {
        std::vector<std::pair<Composition, Rational>> law;
        for (const auto& [d, p] : composition_law(normalize_spec(spec))) law.emplace_back(d, p);
        sampler_ = DiscreteSampler<Composition>(law);
    }
    int degree() const { return n_; }
    const Composition& sample(RngStream& rng) const { return sampler_.sample(rng); }

private:
    int n_;
    DiscreteSampler<Composition> sampler_;
};

inline Composition sample_composition(const CppSpec& spec, RngStream& rng) {
    return CompositionSampler(spec).sample(rng);
}

/// Cut into consecutive piles (first part from the top), then build the new
/// deck from the bottom: each card is the bottom card of a pile chosen with
/// probability (pile size) / (cards left).
inline Word cut_and_drop(const Word& deck, const Composition& d, RngStream& rng) {
    std::vector<std::vector<int>> piles;
    std::size_t pos = 0;
    for (int part : d) {
        if (part < 0) throw std::invalid_argument("cut_and_drop: negative part");
        if (part == 0) continue;
        if (pos + static_cast<std::size_t>(part) > deck.size())
            throw std::invalid_argument("cut_and_drop: composition larger than deck");
        piles.emplace_back(deck.letters.begin() + static_cast<long>(pos),
                           deck.letters.begin() + static_cast<long>(pos + static_cast<std::size_t>(part)));
        pos += static_cast<std::size_t>(part);
    }
    if (pos != deck.size()) throw std::invalid_argument("cut_and_drop: composition does not match deck size");
    Word out;
    out.letters.resize(deck.size());
    for (std::size_t left = deck.size(); left > 0; --left) {
        std::uint64_t u = rng.below(std::uint64_t{left});
        std::size_t pile = 0;
        while (u >= piles[pile].size()) u -= piles[pile++].size();
        out.letters[left - 1] = piles[pile].back();
        piles[pile].pop_back();
    }
    return out;
}

/// One step of the chain on decks: sample a composition, then cut and drop.
class DeckStepper {
public:
    explicit DeckStepper(const CppSpec& spec) : sampler_(spec) {}
    Word operator()(const Word& deck, RngStream& rng) const {
        if (static_cast<int>(deck.size()) != sampler_.degree())
            throw std::invalid_argument("deck size does not match spec degree");
        return cut_and_drop(deck, sampler_.sample(rng), rng);
    }

private:
    CompositionSampler sampler_;
};

inline Word gsr_step(const Word& deck, const CppSpec& spec, RngStream& rng) { return DeckStepper(spec)(deck, rng); }

/// Steps any built chain by sampling its rows.
template <class Key>
class RowStepper {
public:
    explicit RowStepper(const TransitionMatrix<Key>& k) : k_(&k) {
        for (std::size_t i = 0; i < k.size(); ++i) {
            std::vector<std::pair<std::size_t, Rational>> law;
            for (std::size_t j = 0; j < k.size(); ++j)
                if (!k.kernel(i, j).is_zero()) law.emplace_back(j, k.kernel(i, j));
            rows_.emplace_back(law);
        }
    }
    Key operator()(const Key& x, RngStream& rng) const { return k_->states[rows_[k_->index_of(x)].sample(rng)]; }

private:
    const TransitionMatrix<Key>* k_;
    std::vector<DiscreteSampler<std::size_t>> rows_;
};

// Moments -------------------------------------------------------------------

/// Exact count, sum and sum of squares; merging is associative and commutative.
struct Moments {
    long count = 0;
    Rational sum, sum_sq;

    void add(const Rational& x) {
        ++count;
        sum += x;
        sum_sq += x * x;
    }
    void merge(const Moments& o) {
        count += o.count;
        sum += o.sum;
        sum_sq += o.sum_sq;
    }
    Rational mean() const { return count ? sum / Rational(count) : Rational(0); }
    /// Unbiased sample variance.
    Rational variance() const {
        if (count < 2) return Rational(0);
        return (sum_sq - sum * sum / Rational(count)) / Rational(count - 1);
    }
    /// Standard error of the mean, for reporting only.
    double standard_error() const {
        return count ? std::sqrt(variance().to_double() / static_cast<double>(count)) : 0.0;
    }
    friend bool operator==(const Moments&, const Moments&) = default;
};

template <class State>
struct NamedStatistic {
    std::string name;
    std::function<Rational(const State&)> eval;
};

/// moments[s][t] for statistic s at time t.
struct TrajectoryReport {
    std::vector<std::string> statistics;
    std::vector<std::vector<Moments>> moments;
    long trials = 0;
    unsigned steps = 0;
    std::uint64_t seed = 0;
    friend bool operator==(const TrajectoryReport&, const TrajectoryReport&) = default;
};

inline constexpr unsigned kWorkerStreams = 8;

template <class State>
std::vector<State> run_trajectory(const State& start, unsigned steps,
                                  const std::function<State(const State&, RngStream&)>& stepper, RngStream& rng) {
    std::vector<State> path{start};
    for (unsigned t = 0; t < steps; ++t) path.push_back(stepper(path.back(), rng));
    return path;
}

/// N independent trajectories of length `steps`. Trial i runs on stream
/// i mod 8 of `seed`; streams run concurrently and merge in stream order, so
/// the report depends only on (seed, trials, steps).
template <class State>
TrajectoryReport run_trajectories(const State& start, unsigned steps, long trials,
                                  const std::function<State(const State&, RngStream&)>& stepper,
                                  const std::vector<NamedStatistic<State>>& stats, std::uint64_t seed,
                                  unsigned threads = 0) {
    if (trials < 0) throw std::invalid_argument("run_trajectories: negative trial count");
    std::vector<std::vector<std::vector<Moments>>> per_stream(
        kWorkerStreams, std::vector<std::vector<Moments>>(stats.size(), std::vector<Moments>(steps + 1)));
    std::vector<std::exception_ptr> errors(kWorkerStreams);
    auto work = [&](unsigned s) {
        try {
            RngStream rng(seed, s);
            for (long i = s; i < trials; i += kWorkerStreams) {
                State x = start;
                for (unsigned t = 0; t <= steps; ++t) {
                    if (t) x = stepper(x, rng);
                    for (std::size_t k = 0; k < stats.size(); ++k) per_stream[s][k][t].add(stats[k].eval(x));
                }
            }
        } catch (...) {
            errors[s] = std::current_exception();
        }
    };
    if (threads == 0) threads = std::max(1u, std::min(kWorkerStreams, std::thread::hardware_concurrency()));
    for (unsigned base = 0; base < kWorkerStreams; base += threads) {
        std::vector<std::thread> pool;
        for (unsigned s = base; s < std::min(kWorkerStreams, base + threads); ++s) pool.emplace_back(work, s);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    TrajectoryReport rep;
    rep.trials = trials;
    rep.steps = steps;
    rep.seed = seed;
    for (const auto& s : stats) rep.statistics.push_back(s.name);
    rep.moments.assign(stats.size(), std::vector<Moments>(steps + 1));
    for (unsigned s = 0; s < kWorkerStreams; ++s)
        for (std::size_t k = 0; k < stats.size(); ++k)
            for (unsigned t = 0; t <= steps; ++t) rep.moments[k][t].merge(per_stream[s][k][t]);
    return rep;
}

// Exact-vs-empirical one-step comparison -----------------------------------

struct EntryCheck {
    std::string state;
    Rational exact;
    long count = 0;
    double z = 0;  ///< (empirical - exact) / binomial sd
};

struct RowCheck {
    std::string from;
    long draws = 0;
    std::vector<EntryCheck> entries;
    long stray = 0;  ///< draws landing on states with exact probability 0
    double max_abs_z = 0;
    double chi_square = 0;
    std::size_t degrees_of_freedom = 0;

    bool fails(double sigma_fail = 4.0) const { return stray > 0 || max_abs_z > sigma_fail; }
    bool flagged(double sigma_flag = 3.0) const { return max_abs_z > sigma_flag; }
};

/// Approximate upper quantile of chi-square with k degrees of freedom
/// (Wilson-Hilferty), z the matching normal quantile.
inline double chi_square_quantile(std::size_t k, double z) {
    if (k == 0) return 0;
    const double h = 2.0 / (9.0 * static_cast<double>(k));
    const double c = 1.0 - h + z * std::sqrt(h);
    return static_cast<double>(k) * c * c * c;
}

template <class Key>
RowCheck empirical_row_check(const TransitionMatrix<Key>& k, const Key& from, long draws,
                             const std::function<Key(const Key&, RngStream&)>& stepper, RngStream& rng) {
    RowCheck rc;
    rc.from = k.labels[k.index_of(from)];
    rc.draws = draws;
    std::vector<long> counts(k.size(), 0);
    for (long i = 0; i < draws; ++i) {
        Key y = stepper(from, rng);
        if (!k.contains(y)) {
            ++rc.stray;
            continue;
        }
        ++counts[k.index_of(y)];
    }
    const std::size_t row = k.index_of(from);
    for (std::size_t j = 0; j < k.size(); ++j) {
        const Rational& p = k.kernel(row, j);
        if (p.is_zero()) {
            rc.stray += counts[j];
            continue;
        }
        EntryCheck e{k.labels[j], p, counts[j], 0.0};
        const double pd = p.to_double();
        const double expected = pd * static_cast<double>(draws);
        const double sd = std::sqrt(static_cast<double>(draws) * pd * (1 - pd));
        e.z = sd > 0 ? (static_cast<double>(counts[j]) - expected) / sd : (counts[j] == draws ? 0.0 : 1e9);
        rc.max_abs_z = std::max(rc.max_abs_z, std::abs(e.z));
        if (expected > 0) rc.chi_square += std::pow(static_cast<double>(counts[j]) - expected, 2) / expected;
        rc.entries.push_back(std::move(e));
    }
    rc.degrees_of_freedom = rc.entries.empty() ? 0 : rc.entries.size() - 1;
    return rc;
}

}  // namespace hopf

#endif  // HOPF_SIMULATE_HPP

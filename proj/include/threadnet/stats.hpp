#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include <threadnet/csv.hpp>
#include <threadnet/graph.hpp>
#include <threadnet/metrics.hpp>
#include <threadnet/rng.hpp>

namespace threadnet {

// --- disagreement entropy --------------------------------------------

enum class DisagreementBand { Low, MediumLow, MediumHigh, High };

inline std::string to_string(DisagreementBand b) {
    switch (b) {
        case DisagreementBand::Low: return "low";
        case DisagreementBand::MediumLow: return "medium-low";
        case DisagreementBand::MediumHigh: return "medium-high";
        case DisagreementBand::High: return "high";
    }
    return "?";
}

// Shannon entropy (bits) of the voting-label distribution of a thread.
// Unsure and non-voting comments are excluded from the histogram; with
// no votes at all the entropy and band are absent.
struct DisagreementReport {
    std::array<std::uint64_t, kVoteLabelCount> counts{};
    std::uint64_t total_votes = 0;
    std::optional<double> entropy_bits;
    std::optional<DisagreementBand> band;

    // p(x) over the voting labels; zero when no votes were cast.
    double probability(int label) const {
        return total_votes == 0 ? 0.0
                                : static_cast<double>(counts[label]) /
                                      static_cast<double>(total_votes);
    }
};

inline DisagreementBand entropy_band(double h) {
    if (h < 0.65) return DisagreementBand::Low;
    if (h < 1.3) return DisagreementBand::MediumLow;
    if (h < 1.95) return DisagreementBand::MediumHigh;
    return DisagreementBand::High;
}

inline DisagreementReport disagreement_entropy(std::span<const Judgment> labels) {
    DisagreementReport rep;
    for (Judgment j : labels) {
        if (is_vote_label(j)) {
            ++rep.counts[static_cast<int>(j)];
            ++rep.total_votes;
        }
    }
    if (rep.total_votes == 0) return rep;
    double h = 0;
    for (auto c : rep.counts) {
        if (c == 0) continue;  // 0 log 0 := 0
        double p = static_cast<double>(c) / static_cast<double>(rep.total_votes);
        h -= p * std::log2(p);
    }
    rep.entropy_bits = h;
    rep.band = entropy_band(h);
    return rep;
}

inline std::string disagreement_text(const DisagreementReport& rep) {
    std::string out;
    for (int i = 0; i < kVoteLabelCount; ++i) {
        out += std::string(to_string(static_cast<Judgment>(i))) + ": " +
               std::to_string(rep.counts[i]) + "\n";
    }
    out += "total_votes: " + std::to_string(rep.total_votes) + "\n";
    out += "entropy_bits: " + (rep.entropy_bits ? format_double(*rep.entropy_bits) : "") + "\n";
    out += "band: " + (rep.band ? to_string(*rep.band) : "") + "\n";
    return out;
}

// --- reciprocity ---------------------------------------------------------

// Fraction of directed edges whose reverse edge also exists; 0 on an
// empty edge set.
inline double reciprocity(const SimpleDigraph& g) {
    if (g.edges.empty()) return 0.0;
    std::unordered_set<std::uint64_t> set;
    set.reserve(g.edges.size() * 2);
    for (const auto& [u, v] : g.edges)
        set.insert((static_cast<std::uint64_t>(u) << 32) | v);
    std::size_t mutual = 0;
    for (const auto& [u, v] : g.edges)
        mutual += set.count((static_cast<std::uint64_t>(v) << 32) | u);
    return static_cast<double>(mutual) / static_cast<double>(g.edges.size());
}

// --- special functions ---------------------------------------------------

namespace detail {

inline double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-14, kTiny = 1e-300;
    double qab = a + b, qap = a + 1, qam = a - 1;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

// Regularized incomplete beta I_x(a, b).
inline double incomplete_beta(double a, double b, double x) {
    if (x <= 0) return 0;
    if (x >= 1) return 1;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                      a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(ln_front);
    if (x < (a + 1) / (a + b + 2)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1 - x) / b;
}

inline double student_t_two_sided_p(double t, double df) {
    return incomplete_beta(df / 2, 0.5, df / (df + t * t));
}

// Kolmogorov distribution tail: Q(t) = 2 sum (-1)^{j-1} exp(-2 j^2 t^2).
inline double kolmogorov_q(double t) {
    if (t < 1e-8) return 1.0;
    double sum = 0;
    for (int j = 1; j <= 100; ++j) {
        double term = 2.0 * std::exp(-2.0 * j * j * t * t);
        sum += (j % 2 == 1) ? term : -term;
        if (term < 1e-12) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

// Hurwitz zeta sum_{k>=a} k^{-s} for s > 1, by direct summation with an
// Euler-Maclaurin tail.
inline double hurwitz_zeta(double s, double a) {
    constexpr int kDirect = 64;
    double sum = 0;
    double m = a;
    for (int k = 0; k < kDirect; ++k, m += 1) sum += std::pow(m, -s);
    // tail from m onwards
    double tail = std::pow(m, 1 - s) / (s - 1) + 0.5 * std::pow(m, -s) +
                  s * std::pow(m, -s - 1) / 12.0 -
                  s * (s + 1) * (s + 2) * std::pow(m, -s - 3) / 720.0;
    return sum + tail;
}

}  // namespace detail

// --- power-law fit ------------------------------------------------------

// Discrete power-law fit p(x) ~ x^{-gamma} for x >= x_min: maximum
// likelihood gamma, x_min chosen by minimizing the KS distance between
// the empirical and fitted CCDFs, one-sample KS statistic and its
// asymptotic p-value.
struct PowerLawFit {
    double gamma = 0;
    std::uint32_t xmin = 1;
    double ks = 0;
    double p_value = 0;
    std::size_t n_tail = 0;
};

struct PowerLawOptions {
    std::optional<std::uint32_t> fixed_xmin;
    std::size_t min_tail = 10;        // smallest tail a candidate x_min may leave
    std::size_t max_candidates = 64;  // x_min candidates tried, smallest first
    std::size_t min_samples = 50;
};

namespace detail {

struct TailData {
    std::vector<std::uint32_t> values;  // distinct, ascending
    std::vector<std::size_t> cumulative;
    std::size_t n = 0;
    double sum_log = 0;
};

inline TailData tail_data(const std::vector<std::uint32_t>& sorted, std::uint32_t xmin) {
    TailData t;
    auto lo = std::lower_bound(sorted.begin(), sorted.end(), xmin);
    t.n = static_cast<std::size_t>(sorted.end() - lo);
    std::size_t count = 0;
    for (auto it = lo; it != sorted.end(); ++it) {
        t.sum_log += std::log(static_cast<double>(*it));
        ++count;
        if (it + 1 == sorted.end() || *(it + 1) != *it) {
            t.values.push_back(*it);
            t.cumulative.push_back(count);
        }
    }
    return t;
}

inline double power_law_loglik(double gamma, std::uint32_t xmin, const TailData& tail) {
    return -static_cast<double>(tail.n) * std::log(hurwitz_zeta(gamma, xmin)) -
           gamma * tail.sum_log;
}

// Golden-section maximization; the log-likelihood is concave in gamma.
inline double fit_gamma(std::uint32_t xmin, const TailData& tail) {
    double lo = 1.0001, hi = 24.0;
    constexpr double kPhi = 0.6180339887498949;
    double x1 = hi - kPhi * (hi - lo), x2 = lo + kPhi * (hi - lo);
    double f1 = power_law_loglik(x1, xmin, tail), f2 = power_law_loglik(x2, xmin, tail);
    for (int it = 0; it < 90 && hi - lo > 1e-10; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kPhi * (hi - lo);
            f2 = power_law_loglik(x2, xmin, tail);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kPhi * (hi - lo);
            f1 = power_law_loglik(x1, xmin, tail);
        }
    }
    return (lo + hi) / 2;
}

inline double power_law_ks(double gamma, std::uint32_t xmin, const TailData& tail) {
    double z0 = hurwitz_zeta(gamma, xmin);
    double n = static_cast<double>(tail.n);
    double d = 0, ecdf_prev = 0;
    for (std::size_t i = 0; i < tail.values.size(); ++i) {
        std::uint32_t v = tail.values[i];
        double z_next = hurwitz_zeta(gamma, static_cast<double>(v) + 1);
        double cdf_at = 1.0 - z_next / z0;
        double cdf_before = 1.0 - (z_next + std::pow(static_cast<double>(v), -gamma)) / z0;
        double ecdf = static_cast<double>(tail.cumulative[i]) / n;
        d = std::max(d, std::fabs(ecdf - cdf_at));
        d = std::max(d, std::fabs(ecdf_prev - cdf_before));
        ecdf_prev = ecdf;
    }
    return d;
}

}  // namespace detail

// One-sample KS distance between an integer sample and a model CDF,
// checked at every observed value and at the flat stretches between
// them. Exposed so tests can drive it with an arbitrary model.
inline double ks_statistic(std::vector<std::uint32_t> sample,
                           const std::function<double(std::uint32_t)>& model_cdf) {
    if (sample.empty()) return 0;
    std::sort(sample.begin(), sample.end());
    double n = static_cast<double>(sample.size());
    double d = 0, ecdf_prev = 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        ++count;
        if (i + 1 < sample.size() && sample[i + 1] == sample[i]) continue;
        double ecdf = static_cast<double>(count) / n;
        d = std::max(d, std::fabs(ecdf - model_cdf(sample[i])));
        if (sample[i] > 0) d = std::max(d, std::fabs(ecdf_prev - model_cdf(sample[i] - 1)));
        ecdf_prev = ecdf;
    }
    return d;
}

inline PowerLawFit fit_power_law(std::vector<std::uint32_t> degrees,
                                 const PowerLawOptions& options = {}) {
    if (degrees.size() < options.min_samples)
        throw DataError("power-law fit needs at least " + std::to_string(options.min_samples) +
                        " degrees, got " + std::to_string(degrees.size()));
    for (auto d : degrees) {
        if (d < 1) throw DataError("power-law fit needs positive degrees");
    }
    std::sort(degrees.begin(), degrees.end());
    if (degrees.front() == degrees.back())
        throw DataError("degenerate degree sample: a single distinct value cannot be fitted");

    std::vector<std::uint32_t> candidates;
    if (options.fixed_xmin) {
        candidates.push_back(*options.fixed_xmin);
    } else {
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            if (i > 0 && degrees[i] == degrees[i - 1]) continue;
            if (degrees.size() - i < options.min_tail) break;
            candidates.push_back(degrees[i]);
            if (candidates.size() >= options.max_candidates) break;
        }
        if (candidates.empty()) candidates.push_back(degrees.front());
    }

    PowerLawFit best;
    bool have = false;
    for (std::uint32_t xmin : candidates) {
        detail::TailData tail = detail::tail_data(degrees, xmin);
        if (tail.values.size() < 2) continue;  // degenerate tail
        double gamma = detail::fit_gamma(xmin, tail);
        double ks = detail::power_law_ks(gamma, xmin, tail);
        if (!have || ks < best.ks) {
            best.gamma = gamma;
            best.xmin = xmin;
            best.ks = ks;
            best.n_tail = tail.n;
            have = true;
        }
    }
    if (!have) throw DataError("no viable x_min candidate for power-law fit");

    // Asymptotic Kolmogorov p-value with the usual finite-n correction.
    // With gamma estimated from the same data this is anti-conservative,
    // which matches the plain one-sample test being mirrored here.
    double sqn = std::sqrt(static_cast<double>(best.n_tail));
    best.p_value = detail::kolmogorov_q(best.ks * (sqn + 0.12 + 0.11 / sqn));
    return best;
}

// --- degree-preserving rewiring -------------------------------------------

// Double-edge-swap randomization: repeatedly swaps the targets of two
// directed edges, rejecting swaps that would create self-loops or
// parallel edges, until the requested fraction of distinct edges has
// been displaced. In- and out-degree sequences are preserved exactly.
struct RewireResult {
    SimpleDigraph graph;
    std::size_t swaps = 0;
    std::size_t displaced = 0;
    std::size_t warnings = 0;  // displacement shortfall when no legal swap remains
};

inline RewireResult rewire(const SimpleDigraph& g, double fraction, std::uint64_t seed) {
    if (fraction < 0 || fraction > 1) throw ConfigError("rewire fraction must lie in [0, 1]");
    RewireResult result;
    result.graph = g;
    std::size_t n_edges = g.edges.size();
    std::size_t target = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n_edges)));
    if (target == 0) return result;
    if (n_edges < 2) {
        result.warnings = target;
        return result;
    }

    auto pack = [](VertexId a, VertexId b) { return (static_cast<std::uint64_t>(a) << 32) | b; };
    std::unordered_set<std::uint64_t> present;
    present.reserve(n_edges * 2);
    for (const auto& [u, v] : result.graph.edges) present.insert(pack(u, v));

    std::vector<bool> displaced(n_edges, false);
    std::size_t displaced_count = 0;
    Rng rng(seed);
    std::size_t max_attempts = 500 * n_edges + 20000;

    for (std::size_t attempt = 0; attempt < max_attempts && displaced_count < target; ++attempt) {
        std::size_t i = rng.below(n_edges);
        std::size_t j = rng.below(n_edges);
        if (i == j) continue;
        auto [a, b] = result.graph.edges[i];
        auto [c, d] = result.graph.edges[j];
        if (b == d || a == c) continue;           // swap would be a no-op
        if (a == d || c == b) continue;           // would create a self-loop
        if (present.count(pack(a, d)) || present.count(pack(c, b))) continue;

        present.erase(pack(a, b));
        present.erase(pack(c, d));
        present.insert(pack(a, d));
        present.insert(pack(c, b));
        result.graph.edges[i] = {a, d};
        result.graph.edges[j] = {c, b};
        ++result.swaps;
        if (!displaced[i]) {
            displaced[i] = true;
            ++displaced_count;
        }
        if (!displaced[j]) {
            displaced[j] = true;
            ++displaced_count;
        }
    }
    result.displaced = displaced_count;
    if (displaced_count < target) result.warnings = target - displaced_count;
    std::sort(result.graph.edges.begin(), result.graph.edges.end());
    return result;
}

// --- Spearman rank correlation ---------------------------------------------

// Average ranks (1-based) with ties sharing the mean of their positions.
inline std::vector<double> average_ranks(std::span<const double> xs) {
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(xs.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
        double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2 + 1;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

struct Correlation {
    std::optional<double> rho;
    std::optional<double> p_value;  // t-approximation, n-2 degrees of freedom
    std::size_t n = 0;
};

inline Correlation spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw ConfigError("spearman needs series of equal length");
    if (xs.size() < 3) throw ConfigError("spearman needs at least 3 observations");
    Correlation out;
    out.n = xs.size();

    std::vector<double> rx = average_ranks(xs);
    std::vector<double> ry = average_ranks(ys);
    double n = static_cast<double>(xs.size());
    double mean = (n + 1) / 2;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double dx = rx[i] - mean, dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0) return out;  // constant series: undefined

    double rho = sxy / std::sqrt(sxx * syy);
    rho = std::clamp(rho, -1.0, 1.0);
    out.rho = rho;
    if (std::fabs(rho) >= 1.0 - 1e-15) {
        out.p_value = 0.0;
    } else {
        double t = rho * std::sqrt((n - 2) / (1 - rho * rho));
        out.p_value = detail::student_t_two_sided_p(t, n - 2);
    }
    return out;
}

}  // namespace threadnet

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include <threadnet/csv.hpp>
#include <threadnet/graph.hpp>

namespace threadnet {

enum class SubgraphTag { Star, Periphery };

inline std::string to_string(SubgraphTag t) {
    return t == SubgraphTag::Star ? "star" : "periphery";
}

// Response-time cell: one (subgraph, vote-class) combination. R is the
// delay between a comment and its parent message; the filtered mean keeps
// samples within [mu - 2 sigma, mu + 2 sigma] using the population sigma.
struct ResponseTimeSummary {
    SubgraphTag tag = SubgraphTag::Star;
    bool voting = false;
    std::vector<std::int64_t> raw;  // seconds
    std::optional<double> mean;
    std::optional<double> sigma;       // absent with < 2 samples
    std::optional<double> filtered_mean;
    std::size_t filtered_out = 0;

    void finalize() {
        if (raw.empty()) return;
        double n = static_cast<double>(raw.size());
        double mu = 0;
        for (auto r : raw) mu += static_cast<double>(r);
        mu /= n;
        mean = mu;
        if (raw.size() < 2) {
            filtered_mean = mu;
            return;
        }
        double var = 0;
        for (auto r : raw) var += (static_cast<double>(r) - mu) * (static_cast<double>(r) - mu);
        var /= n;
        double sd = std::sqrt(var);
        sigma = sd;
        double lo = mu - 2 * sd, hi = mu + 2 * sd;
        double sum = 0;
        std::size_t kept = 0;
        for (auto r : raw) {
            double x = static_cast<double>(r);
            if (x >= lo && x <= hi) {
                sum += x;
                ++kept;
            }
        }
        filtered_out = raw.size() - kept;
        filtered_mean = kept ? sum / static_cast<double>(kept) : mu;
    }
};

// R per edge, split into the four (subgraph x vote-class) cells.
// Order: star/voting, star/non-voting, periphery/voting, periphery/non-voting.
inline std::array<ResponseTimeSummary, 4> response_times(const TemporalMultigraph& g) {
    std::array<ResponseTimeSummary, 4> cells;
    cells[0] = {SubgraphTag::Star, true, {}, {}, {}, {}, 0};
    cells[1] = {SubgraphTag::Star, false, {}, {}, {}, {}, 0};
    cells[2] = {SubgraphTag::Periphery, true, {}, {}, {}, {}, 0};
    cells[3] = {SubgraphTag::Periphery, false, {}, {}, {}, {}, 0};
    for (const auto& e : g.edges) {
        std::size_t idx = (e.is_star ? 0 : 2) + (is_voting(e.label) ? 0 : 1);
        cells[idx].raw.push_back(e.t - e.parent_t);
    }
    for (auto& c : cells) c.finalize();
    return cells;
}

// Growth speed S per interval: edges gained per minute, with empty
// intervals kept at 0 so profiles over the same window align.
struct SpeedProfile {
    SubgraphTag tag = SubgraphTag::Star;
    int delta_minutes = 1;
    std::int64_t anchor_t = 0;
    std::vector<std::uint64_t> counts;  // multigraph edges per interval

    std::size_t intervals() const { return counts.size(); }
    double speed(std::size_t i) const {
        return static_cast<double>(counts[i]) / delta_minutes;
    }
    std::uint64_t total_edges() const {
        std::uint64_t sum = 0;
        for (auto c : counts) sum += c;
        return sum;
    }
    double mean_speed() const {
        if (counts.empty()) return 0.0;
        return static_cast<double>(total_edges()) /
               (static_cast<double>(counts.size()) * delta_minutes);
    }
};

inline void check_delta(int delta_minutes) {
    if (delta_minutes != 1 && delta_minutes != 10 && delta_minutes != 60)
        throw ConfigError("delta must be one of 1, 10, 60 minutes");
}

// Buckets sorted event times into Δm-minute intervals anchored at
// anchor_t and covering through end_t. An empty timeline with a valid
// window yields an all-zero profile on that window's grid.
inline SpeedProfile growth_speed(std::span<const std::int64_t> times, int delta_minutes,
                                 std::int64_t anchor_t, std::int64_t end_t,
                                 SubgraphTag tag = SubgraphTag::Star) {
    check_delta(delta_minutes);
    SpeedProfile profile;
    profile.tag = tag;
    profile.delta_minutes = delta_minutes;
    profile.anchor_t = anchor_t;
    if (end_t < anchor_t) return profile;  // no window: empty profile

    std::int64_t width = static_cast<std::int64_t>(delta_minutes) * 60;
    std::size_t n_intervals = static_cast<std::size_t>((end_t - anchor_t) / width) + 1;
    profile.counts.assign(n_intervals, 0);
    for (std::int64_t t : times) {
        if (t < anchor_t || t > end_t) continue;
        ++profile.counts[static_cast<std::size_t>((t - anchor_t) / width)];
    }
    return profile;
}

// Window-less overload: anchors at the first event of the timeline.
inline SpeedProfile growth_speed(std::span<const std::int64_t> times, int delta_minutes,
                                 SubgraphTag tag = SubgraphTag::Star) {
    check_delta(delta_minutes);
    if (times.empty()) {
        SpeedProfile profile;
        profile.tag = tag;
        profile.delta_minutes = delta_minutes;
        return profile;
    }
    return growth_speed(times, delta_minutes, times.front(), times.back(), tag);
}

inline std::vector<std::int64_t> edge_times(const TemporalMultigraph& g, bool star_edges) {
    std::vector<std::int64_t> times;
    for (const auto& e : g.edges) {
        if (e.is_star == star_edges) times.push_back(e.t);
    }
    return times;
}

// Per-node speed variant: times at which a user authors their first
// comment in the given subgraph.
inline std::vector<std::int64_t> node_join_times(const TemporalMultigraph& g, bool star_edges) {
    std::vector<std::int64_t> times;
    std::unordered_set<VertexId> seen;
    for (const auto& e : g.edges) {
        if (e.is_star == star_edges && seen.insert(e.from).second) times.push_back(e.t);
    }
    return times;
}

// Star and periphery profiles of one thread on the shared thread window,
// so the two series sum interval-wise to the whole-graph profile.
struct ThreadSpeeds {
    std::string thread_id;
    std::int64_t duration_secs = 0;  // last edge minus first edge
    SpeedProfile star;
    SpeedProfile periphery;
};

inline ThreadSpeeds thread_speeds(const TemporalMultigraph& g, int delta_minutes,
                                  bool count_nodes = false) {
    check_delta(delta_minutes);
    ThreadSpeeds out;
    out.thread_id = g.thread_id;
    if (g.edges.empty()) {
        out.star.tag = SubgraphTag::Star;
        out.periphery.tag = SubgraphTag::Periphery;
        out.star.delta_minutes = out.periphery.delta_minutes = delta_minutes;
        return out;
    }
    std::int64_t first = g.edges.front().t;
    std::int64_t last = g.edges.back().t;
    out.duration_secs = last - first;
    auto star_times = count_nodes ? node_join_times(g, true) : edge_times(g, true);
    auto peri_times = count_nodes ? node_join_times(g, false) : edge_times(g, false);
    out.star = growth_speed(star_times, delta_minutes, first, last, SubgraphTag::Star);
    out.periphery = growth_speed(peri_times, delta_minutes, first, last, SubgraphTag::Periphery);
    return out;
}

// One duration group of threads with averaged speeds and profiles.
struct DurationBin {
    double lo_secs = 0;
    double hi_secs = 0;
    std::vector<std::string> thread_ids;
    std::optional<double> mean_star;
    std::optional<double> mean_periphery;
    std::optional<double> ratio;  // star / periphery
    std::vector<double> star_profile;       // mean S per interval index
    std::vector<double> periphery_profile;
};

struct DurationBins {
    int delta_minutes = 1;
    double outlier_fence_secs = 0;
    std::vector<std::string> outliers;  // thread ids removed as extremely long
    std::vector<DurationBin> bins;      // exactly bin_count entries
};

namespace detail {

// Type-7 (linear interpolation) quantile on a sorted sample.
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0;
    double pos = q * (static_cast<double>(sorted.size()) - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1 - frac) + sorted[lo + 1] * frac;
}

inline std::vector<double> mean_profile(const std::vector<const SpeedProfile*>& profiles) {
    std::size_t longest = 0;
    for (const auto* p : profiles) longest = std::max(longest, p->intervals());
    std::vector<double> mean(longest, 0);
    std::vector<std::size_t> n(longest, 0);
    for (const auto* p : profiles) {
        for (std::size_t i = 0; i < p->intervals(); ++i) {
            mean[i] += p->speed(i);
            ++n[i];
        }
    }
    for (std::size_t i = 0; i < longest; ++i) mean[i] /= static_cast<double>(n[i]);
    return mean;
}

}  // namespace detail

// Groups threads into equal-width duration bins after removing extremely
// long conversations (Tukey upper fence, Q3 + 1.5 IQR). Quantile-width
// bins are available behind the flag for corpora with skewed durations.
inline DurationBins bin_and_average(const std::vector<ThreadSpeeds>& threads, int bin_count = 10,
                                    bool quantile_bins = false) {
    if (bin_count < 1) throw ConfigError("bin count must be >= 1");

    std::vector<double> durations;
    durations.reserve(threads.size());
    for (const auto& t : threads) durations.push_back(static_cast<double>(t.duration_secs));
    std::vector<double> sorted = durations;
    std::sort(sorted.begin(), sorted.end());

    double q1 = detail::quantile_sorted(sorted, 0.25);
    double q3 = detail::quantile_sorted(sorted, 0.75);
    double fence = q3 + 1.5 * (q3 - q1);

    DurationBins out;
    out.outlier_fence_secs = fence;

    std::vector<std::size_t> retained;
    for (std::size_t i = 0; i < threads.size(); ++i) {
        if (durations[i] <= fence) {
            retained.push_back(i);
        } else {
            out.outliers.push_back(threads[i].thread_id);
        }
    }
    if (retained.size() < static_cast<std::size_t>(bin_count)) {
        throw ConfigError("only " + std::to_string(retained.size()) +
                          " threads retained after outlier removal; configure a smaller bin count");
    }

    double lo = durations[retained.front()], hi = lo;
    for (std::size_t i : retained) {
        lo = std::min(lo, durations[i]);
        hi = std::max(hi, durations[i]);
    }

    std::vector<double> edges(bin_count + 1);
    if (quantile_bins) {
        std::vector<double> kept_sorted;
        for (std::size_t i : retained) kept_sorted.push_back(durations[i]);
        std::sort(kept_sorted.begin(), kept_sorted.end());
        for (int b = 0; b <= bin_count; ++b)
            edges[b] = detail::quantile_sorted(kept_sorted, static_cast<double>(b) / bin_count);
    } else {
        for (int b = 0; b <= bin_count; ++b)
            edges[b] = lo + (hi - lo) * static_cast<double>(b) / bin_count;
    }

    out.bins.resize(bin_count);
    out.delta_minutes = threads.empty() ? 1 : threads[retained.front()].star.delta_minutes;
    std::vector<std::vector<std::size_t>> grouped(bin_count);
    for (std::size_t i : retained) {
        int b = bin_count - 1;
        if (hi > lo) {
            while (b > 0 && durations[i] < edges[b]) --b;
        } else {
            b = 0;
        }
        grouped[b].push_back(i);
    }

    for (int b = 0; b < bin_count; ++b) {
        DurationBin& bin = out.bins[b];
        bin.lo_secs = edges[b];
        bin.hi_secs = edges[b + 1];
        if (grouped[b].empty()) continue;

        double star_sum = 0, peri_sum = 0;
        std::vector<const SpeedProfile*> star_profiles, peri_profiles;
        for (std::size_t i : grouped[b]) {
            bin.thread_ids.push_back(threads[i].thread_id);
            star_sum += threads[i].star.mean_speed();
            peri_sum += threads[i].periphery.mean_speed();
            star_profiles.push_back(&threads[i].star);
            peri_profiles.push_back(&threads[i].periphery);
        }
        double n = static_cast<double>(grouped[b].size());
        bin.mean_star = star_sum / n;
        bin.mean_periphery = peri_sum / n;
        if (*bin.mean_periphery > 0) bin.ratio = *bin.mean_star / *bin.mean_periphery;
        bin.star_profile = detail::mean_profile(star_profiles);
        bin.periphery_profile = detail::mean_profile(peri_profiles);
    }
    return out;
}

// --- CSV emission ---------------------------------------------------------

inline std::string speed_profiles_csv(const std::vector<const SpeedProfile*>& profiles) {
    std::string out = "subgraph,delta_m,interval_index,count,speed\n";
    for (const auto* p : profiles) {
        for (std::size_t i = 0; i < p->intervals(); ++i) {
            csv_row(out, to_string(p->tag), p->delta_minutes, i, p->counts[i], p->speed(i));
        }
    }
    return out;
}

inline std::string response_times_csv(const std::array<ResponseTimeSummary, 4>& cells) {
    std::string out = "subgraph,vote_class,n,mean,sigma,filtered_mean,filtered_out\n";
    for (const auto& c : cells) {
        csv_row(out, to_string(c.tag), c.voting ? "voting" : "non-voting", c.raw.size(), c.mean,
                c.sigma, c.filtered_mean, c.filtered_out);
    }
    return out;
}

inline std::string bins_profile_csv(const DurationBins& bins) {
    std::string out = "bin,subgraph,delta_m,interval_index,speed\n";
    for (std::size_t b = 0; b < bins.bins.size(); ++b) {
        const auto& bin = bins.bins[b];
        for (std::size_t i = 0; i < bin.star_profile.size(); ++i)
            csv_row(out, b, "star", bins.delta_minutes, i, bin.star_profile[i]);
        for (std::size_t i = 0; i < bin.periphery_profile.size(); ++i)
            csv_row(out, b, "periphery", bins.delta_minutes, i, bin.periphery_profile[i]);
    }
    return out;
}

inline std::string bins_summary_csv(const DurationBins& bins) {
    std::string out = "bin,delta_m,lo_secs,hi_secs,n_threads,mean_star,mean_periphery,ratio\n";
    for (std::size_t b = 0; b < bins.bins.size(); ++b) {
        const auto& bin = bins.bins[b];
        csv_row(out, b, bins.delta_minutes, bin.lo_secs, bin.hi_secs, bin.thread_ids.size(),
                bin.mean_star, bin.mean_periphery, bin.ratio);
    }
    return out;
}

}  // namespace threadnet

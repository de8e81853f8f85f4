// Acceptance suite: end-to-end checks with pinned tolerances, one
// PASS/FAIL line per criterion.
//
// Usage: acceptance_tests <path-to-threadnet-binary>
//
// Criterion 12 needs a real dump; it runs only when THREADNET_AITA_DUMP
// points at one (THREADNET_AITA_PROFILE selects the format, default
// pushshift) and reports SKIP otherwise.

#include <threadnet/threadnet.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

namespace fs = std::filesystem;
using namespace threadnet;

namespace {

struct Criterion {
    int number;
    std::string name;
    std::function<bool(std::string&)> run;
    bool optional = false;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string g_binary;

// Corpora shared between criteria, built once.
struct Corpora {
    std::vector<TemporalMultigraph> aita_fixed;   // 200 threads, 300 comments each
    std::vector<MetricTrace> aita_fixed_traces;   // stride 25, exact
    std::vector<ThreadSpeeds> aita_ramped;        // 200 threads, 60..900 comments
    std::vector<TemporalMultigraph> aita_ramped_graphs;
    std::vector<ThreadSpeeds> uniform_ramped;
    std::vector<TemporalMultigraph> uniform_ramped_graphs;
};

Corpora& corpora() {
    static Corpora c = [] {
        Corpora out;
        for (int i = 0; i < 200; ++i) {
            GeneratorParams p = aita_like_params(300);
            p.seed = 42000 + static_cast<std::uint64_t>(i);
            out.aita_fixed.push_back(from_thread(generate_thread(p)));
            out.aita_fixed_traces.push_back(trace(out.aita_fixed.back(), {.stride = 25}));
        }
        auto params = preset_corpus_params("aita-like", 200, 60, 900);
        for (auto& rec : generate_corpus(params, 1, 500)) {
            out.aita_ramped_graphs.push_back(from_thread(rec));
            out.aita_ramped.push_back(thread_speeds(out.aita_ramped_graphs.back(), 1));
        }
        auto uparams = preset_corpus_params("uniform", 200, 60, 900);
        for (auto& rec : generate_corpus(uparams, 1, 900)) {
            out.uniform_ramped_graphs.push_back(from_thread(rec));
            out.uniform_ramped.push_back(thread_speeds(out.uniform_ramped_graphs.back(), 1));
        }
        return out;
    }();
    return c;
}

// --- criterion 1: entropy exactness ----------------------------------------

bool entropy_exactness(std::string& detail) {
    auto start = std::chrono::steady_clock::now();

    std::vector<Judgment> unanimous(40, Judgment::NTA);
    auto rep0 = disagreement_entropy(unanimous);
    if (!rep0.entropy_bits || *rep0.entropy_bits != 0.0) {
        detail = "unanimous votes did not give H = 0";
        return false;
    }

    std::vector<Judgment> uniform;
    for (int rep = 0; rep < 7; ++rep) {
        for (int l = 0; l < kVoteLabelCount; ++l) uniform.push_back(static_cast<Judgment>(l));
    }
    auto rep1 = disagreement_entropy(uniform);
    if (!rep1.entropy_bits || std::fabs(*rep1.entropy_bits - std::log2(6.0)) > 1e-9) {
        detail = "uniform votes did not give log2(6)";
        return false;
    }

    // Banding sweep: 100 histograms, independent entropy evaluation.
    Rng rng(111);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Judgment> labels;
        std::array<std::uint64_t, 6> counts{};
        for (int l = 0; l < 6; ++l) {
            counts[l] = rng.below(trial % 10 + 2);
            for (std::uint64_t c = 0; c < counts[l]; ++c)
                labels.push_back(static_cast<Judgment>(l));
        }
        auto rep = disagreement_entropy(labels);
        std::uint64_t total = 0;
        for (auto c : counts) total += c;
        if (total == 0) {
            if (rep.band.has_value()) {
                detail = "band present without votes";
                return false;
            }
            continue;
        }
        double h = 0;
        for (auto c : counts) {
            if (c) {
                double p = static_cast<double>(c) / static_cast<double>(total);
                h -= p * std::log2(p);
            }
        }
        DisagreementBand expected = h < 0.65    ? DisagreementBand::Low
                                    : h < 1.3   ? DisagreementBand::MediumLow
                                    : h < 1.95  ? DisagreementBand::MediumHigh
                                                : DisagreementBand::High;
        if (!rep.band || *rep.band != expected) {
            detail = "band mismatch at H = " + format_double(h);
            return false;
        }
        if (std::fabs(*rep.entropy_bits - h) > 1e-12) {
            detail = "entropy mismatch against direct evaluation";
            return false;
        }
    }

    double elapsed = seconds_since(start);
    detail = "runtime " + format_double(elapsed) + " s";
    return elapsed < 1.0;
}

// --- criterion 2: oracle equivalence ----------------------------------------

bool sample_equal(const MetricSample& a, const MetricSample& b) {
    return a.k == b.k && a.t_k == b.t_k && a.n_vertices == b.n_vertices &&
           a.n_multigraph_edges == b.n_multigraph_edges && a.density == b.density &&
           a.gcc == b.gcc && a.aspl == b.aspl && a.diameter == b.diameter;
}

bool oracle_equivalence(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 100; ++i) {
        GeneratorParams p;
        p.n_comments = 120 + (i % 8) * 10;  // <= 200 vertices
        p.p_root = 0.35 + 0.05 * (i % 7);
        p.p_revisit = 0.15 + 0.03 * (i % 5);
        p.attachment = i % 2 ? Attachment::DegreePreferential : Attachment::Uniform;
        p.seed = 7000 + static_cast<std::uint64_t>(i);
        auto g = from_thread(generate_thread(p));
        if (g.vertex_count() > 200) {
            detail = "fixture exceeded 200 vertices";
            return false;
        }
        auto inc = trace(g, {.stride = 1, .mode = MetricMode::ExactIncremental});
        auto ora = trace(g, {.stride = 1, .mode = MetricMode::Oracle});
        if (inc.samples.size() != ora.samples.size()) {
            detail = "sample count mismatch on replay " + std::to_string(i);
            return false;
        }
        for (std::size_t k = 0; k < inc.samples.size(); ++k) {
            if (!sample_equal(inc.samples[k], ora.samples[k])) {
                detail = "replay " + std::to_string(i) + " diverges at k = " +
                         std::to_string(inc.samples[k].k);
                return false;
            }
        }
    }
    double elapsed = seconds_since(start);
    detail = "100 replays, runtime " + format_double(elapsed) + " s";
    return elapsed < 60.0;
}

// --- criterion 3: closed-form star trace -------------------------------------

bool star_closed_form(std::string& detail) {
    GeneratorParams p;
    p.n_comments = 500;
    p.p_root = 1.0;
    p.p_revisit = 0.0;
    p.seed = 1234;
    auto g = from_thread(generate_thread(p));
    auto t = trace(g, {.stride = 1});
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
        double k = static_cast<double>(i + 1);
        const auto& s = t.samples[i];
        if (!s.aspl || *s.aspl != 2.0 * k / (k + 1.0)) {
            detail = "ASPL(k) != 2k/(k+1) at k = " + std::to_string(i + 1);
            return false;
        }
        if (s.gcc != 0.0) {
            detail = "GCC != 0 on a star";
            return false;
        }
        if (i >= 1 && (!s.diameter || *s.diameter != 2)) {
            detail = "D != 2 at k >= 2";
            return false;
        }
    }
    detail = "500 steps exact";
    return true;
}

// --- criterion 4: qualitative trace reproduction -----------------------------

bool qualitative_traces(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    const auto& traces = corpora().aita_fixed_traces;

    std::size_t points = traces.front().samples.size();
    std::vector<double> mean_aspl(points, 0), mean_gcc(points, 0);
    std::vector<std::size_t> n_aspl(points, 0);
    for (const auto& t : traces) {
        if (t.samples.size() != points) {
            detail = "trace lengths differ";
            return false;
        }
        for (std::size_t i = 0; i < points; ++i) {
            if (t.samples[i].aspl) {
                mean_aspl[i] += *t.samples[i].aspl;
                ++n_aspl[i];
            }
            mean_gcc[i] += t.samples[i].gcc;
        }
    }
    for (std::size_t i = 0; i < points; ++i) {
        mean_aspl[i] /= static_cast<double>(n_aspl[i]);
        mean_gcc[i] /= static_cast<double>(traces.size());
    }

    std::size_t from = points / 5;  // last 80% of the sampled steps
    for (std::size_t i = from + 1; i < points; ++i) {
        if (mean_aspl[i] < mean_aspl[i - 1]) {
            detail = "mean ASPL decreases at sample " + std::to_string(i);
            return false;
        }
        if (mean_gcc[i] > mean_gcc[i - 1]) {
            detail = "mean GCC increases at sample " + std::to_string(i);
            return false;
        }
    }
    double elapsed = seconds_since(start);
    detail = "ASPL " + format_double(mean_aspl[from]) + " -> " + format_double(mean_aspl.back()) +
             ", GCC " + format_double(mean_gcc[from]) + " -> " + format_double(mean_gcc.back()) +
             ", runtime " + format_double(elapsed) + " s";
    return elapsed < 300.0;
}

// --- criterion 5: power-law recovery ------------------------------------------

bool power_law_recovery(std::string& detail) {
    // Inverse-CDF sampler over a direct-summation table (independent of
    // the fit's zeta evaluation).
    double gamma_true = 2.5;
    double z = 0;
    for (std::uint64_t k = 1; k <= 50000000ull; ++k) {
        double t = std::pow(static_cast<double>(k), -gamma_true);
        z += t;
        if (t < 1e-17 * z) break;
    }
    std::vector<double> cdf;
    double cum = 0;
    for (std::uint32_t k = 1; cum < 1.0 - 1e-10; ++k) {
        cum += std::pow(static_cast<double>(k), -gamma_true) / z;
        cdf.push_back(cum);
    }
    Rng rng(987654);
    std::vector<std::uint32_t> sample;
    for (int i = 0; i < 10000; ++i) {
        double u = rng.uniform();
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        sample.push_back(1 + static_cast<std::uint32_t>(it - cdf.begin()));
    }
    PowerLawOptions opt;
    opt.fixed_xmin = 1;
    auto fit = fit_power_law(sample, opt);
    if (std::fabs(fit.gamma - gamma_true) > 0.1) {
        detail = "recovered gamma " + format_double(fit.gamma);
        return false;
    }

    // KS of a sample against its own empirical CDF is exactly zero.
    std::vector<std::uint32_t> sorted = sample;
    std::sort(sorted.begin(), sorted.end());
    auto ecdf = [&](std::uint32_t x) {
        auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
        return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
    };
    if (ks_statistic(sample, ecdf) != 0.0) {
        detail = "self-model KS statistic is not zero";
        return false;
    }

    // Corpus-level scale-free check on the fixed-size corpus.
    int fits = 0, good = 0;
    for (const auto& g : corpora().aita_fixed) {
        auto degrees = degree_sample(project_simple_directed(g));
        if (degrees.size() < 50) continue;
        auto f = fit_power_law(degrees);
        ++fits;
        if (f.p_value > 0.001 && f.ks < 0.35) ++good;
    }
    double share = fits ? static_cast<double>(good) / fits : 0.0;
    detail = "gamma " + format_double(fit.gamma) + ", corpus share " + format_double(share) +
             " of " + std::to_string(fits);
    return share >= 0.8;
}

// --- criterion 6: speed conservation and ratios -------------------------------

bool speed_conservation_and_ratio(std::string& detail) {
    const auto& c = corpora();
    for (std::size_t i = 0; i < c.aita_ramped_graphs.size(); ++i) {
        const auto& g = c.aita_ramped_graphs[i];
        auto [star, periphery] = split_star_periphery(g);
        for (int delta : {1, 10, 60}) {
            auto speeds = thread_speeds(g, delta);
            if (speeds.star.total_edges() != star.edge_count() ||
                speeds.periphery.total_edges() != periphery.edge_count()) {
                detail = "speed totals do not conserve edges (thread " + g.thread_id + ")";
                return false;
            }
        }
    }

    auto aita_bins = bin_and_average(c.aita_ramped, 10);
    int in_range = 0;
    for (const auto& b : aita_bins.bins) {
        if (b.ratio && *b.ratio >= 1.5 && *b.ratio <= 4.0) ++in_range;
    }
    if (in_range < 7) {
        detail = "only " + std::to_string(in_range) + " bins inside [1.5, 4]";
        return false;
    }

    auto uniform_bins = bin_and_average(c.uniform_ramped, 10);
    std::vector<double> ratios;
    for (const auto& b : uniform_bins.bins) {
        if (b.ratio) ratios.push_back(*b.ratio);
    }
    std::sort(ratios.begin(), ratios.end());
    if (ratios.empty() || ratios[ratios.size() / 2] >= 1.5) {
        detail = "uniform preset median ratio not below 1.5";
        return false;
    }
    detail = std::to_string(in_range) + "/10 aita bins in range, uniform median " +
             format_double(ratios[ratios.size() / 2]);
    return true;
}

// --- criterion 7: response-time filter and rank test ---------------------------

double mann_whitney_p(const std::vector<double>& xs, const std::vector<double>& ys) {
    // Two-sided, normal approximation with tie correction.
    std::vector<double> all;
    all.insert(all.end(), xs.begin(), xs.end());
    all.insert(all.end(), ys.begin(), ys.end());
    auto ranks = average_ranks(all);
    double rx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) rx += ranks[i];
    double n1 = static_cast<double>(xs.size()), n2 = static_cast<double>(ys.size());
    double u = rx - n1 * (n1 + 1) / 2;
    double mu = n1 * n2 / 2;
    double n = n1 + n2;
    // tie correction over groups of equal values
    std::vector<double> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    double tie_sum = 0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        double t = static_cast<double>(j - i + 1);
        tie_sum += t * t * t - t;
        i = j + 1;
    }
    double var = n1 * n2 / 12.0 * ((n + 1) - tie_sum / (n * (n - 1)));
    if (var <= 0) return 1.0;
    double zscore = (u - mu) / std::sqrt(var);
    return std::erfc(std::fabs(zscore) / std::sqrt(2.0));
}

bool response_time_criterion(std::string& detail) {
    // Constructed 11-point cell.
    TemporalMultigraph g;
    g.thread_id = "fixture";
    g.vertex_names = {"op"};
    g.vertex_labels.emplace_back();
    std::vector<std::int64_t> rs(10, 100);
    rs.push_back(10000);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        g.vertex_names.push_back("u" + std::to_string(i));
        g.vertex_labels.emplace_back();
        TimedEdge e;
        e.from = static_cast<VertexId>(i + 1);
        e.to = 0;
        e.parent_t = 0;
        e.t = rs[i];
        e.message_id = "c" + std::to_string(i);
        e.depth = 1;
        e.is_star = true;
        e.label = Judgment::NTA;
        g.edges.push_back(e);
    }
    std::sort(g.edges.begin(), g.edges.end(),
              [](const TimedEdge& a, const TimedEdge& b) { return a.t < b.t; });
    auto cells = response_times(g);
    if (!cells[0].filtered_mean || *cells[0].filtered_mean != 100.0) {
        detail = "filtered mean of the 11-point cell is not exactly 100";
        return false;
    }

    // Slow-votes preset: periphery voting vs non-voting delays differ.
    std::vector<double> voting, non_voting;
    for (int i = 0; i < 60; ++i) {
        GeneratorParams p = slow_votes_params(300);
        p.seed = 60000 + static_cast<std::uint64_t>(i);
        auto graph = from_thread(generate_thread(p));
        auto rt = response_times(graph);
        for (auto r : rt[2].raw) voting.push_back(static_cast<double>(r));
        for (auto r : rt[3].raw) non_voting.push_back(static_cast<double>(r));
    }
    double p_value = mann_whitney_p(voting, non_voting);
    detail = "rank test p = " + format_double(p_value) + " (" + std::to_string(voting.size()) +
             " voting vs " + std::to_string(non_voting.size()) + " non-voting)";
    return p_value < 0.01;
}

// --- criterion 8: rewiring null model ------------------------------------------

bool rewiring_null_model(std::string& detail) {
    // Degree preservation on real projections.
    const auto& graphs = corpora().aita_ramped_graphs;
    for (std::size_t i = 0; i < 40; ++i) {
        auto proj = project_simple_directed(graphs[i]);
        std::map<VertexId, int> in0, out0;
        for (auto [u, v] : proj.edges) {
            ++out0[u];
            ++in0[v];
        }
        for (double f : {0.2, 0.5, 0.9}) {
            auto r = rewire(proj, f, 8000 + static_cast<std::uint64_t>(i));
            std::map<VertexId, int> in1, out1;
            for (auto [u, v] : r.graph.edges) {
                ++out1[u];
                ++in1[v];
            }
            if (in0 != in1 || out0 != out1) {
                detail = "degree sequence changed at f = " + format_double(f);
                return false;
            }
        }
    }

    // Coupled corpus: correlation decays strictly across fractions.
    const int kThreads = 120;
    std::vector<double> entropy;
    std::vector<SimpleDigraph> graphs2;
    for (int i = 0; i < kThreads; ++i) {
        double level = static_cast<double>(i) / (kThreads - 1);
        int votes = 40;
        int minority = static_cast<int>(level * votes / 2);
        std::vector<Judgment> labels;
        for (int v = 0; v < minority; ++v) labels.push_back(Judgment::YTA);
        for (int v = minority; v < votes; ++v) labels.push_back(Judgment::NTA);
        entropy.push_back(disagreement_entropy(labels).entropy_bits.value_or(0.0));

        SimpleDigraph g;
        std::uint32_t next = 0;
        int mutual = static_cast<int>(std::round(level * 12));
        for (int m = 0; m < mutual; ++m) {
            std::uint32_t a = next++, b = next++;
            g.edges.emplace_back(a, b);
            g.edges.emplace_back(b, a);
        }
        for (int e = 0; e < 50; ++e) {
            std::uint32_t a = next++, b = next++;
            g.edges.emplace_back(a, b);
        }
        g.n_vertices = next;
        std::sort(g.edges.begin(), g.edges.end());
        graphs2.push_back(std::move(g));
    }
    std::vector<double> rho;
    for (double f : {0.2, 0.5, 0.9}) {
        std::vector<double> recip;
        for (int i = 0; i < kThreads; ++i) {
            auto r = rewire(graphs2[i], f, 8700 + static_cast<std::uint64_t>(i));
            recip.push_back(reciprocity(r.graph));
        }
        auto c = spearman(entropy, recip);
        if (!c.rho) {
            detail = "undefined correlation after rewiring";
            return false;
        }
        rho.push_back(*c.rho);
    }
    detail = "rho = " + format_double(rho[0]) + " / " + format_double(rho[1]) + " / " +
             format_double(rho[2]);
    return rho[0] > rho[1] && rho[1] > rho[2];
}

// --- criterion 9: spearman correctness ------------------------------------------

bool spearman_correctness(std::string& detail) {
    std::vector<double> xs = {1, 2, 3, 4, 5};
    std::vector<double> up = {10, 20, 30, 40, 50};
    std::vector<double> down = {9, 7, 5, 3, 1};
    if (*spearman(xs, up).rho != 1.0 || *spearman(xs, down).rho != -1.0) {
        detail = "monotone fixtures not at +-1";
        return false;
    }

    std::vector<double> ys = {2, 3, 1, 4, 5};  // d^2 = 6 -> rho = 0.7
    auto r = spearman(xs, ys);
    if (std::fabs(*r.rho - 0.7) > 1e-12) {
        detail = "five-point fixture rho = " + format_double(*r.rho);
        return false;
    }

    // Tie handling against an independent quadratic rank implementation.
    Rng rng(424242);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = 5 + rng.below(25);
        std::vector<double> a, b;
        for (std::size_t i = 0; i < n; ++i) {
            a.push_back(static_cast<double>(rng.below(7)));
            b.push_back(static_cast<double>(rng.below(7)));
        }
        auto rank_of = [](const std::vector<double>& v) {
            std::vector<double> out(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) {
                std::size_t less = 0, equal = 0;
                for (std::size_t j = 0; j < v.size(); ++j) {
                    less += v[j] < v[i];
                    equal += v[j] == v[i];
                }
                out[i] = static_cast<double>(less) + (static_cast<double>(equal) + 1) / 2;
            }
            return out;
        };
        auto ra = rank_of(a);
        auto rb = rank_of(b);
        double n_d = static_cast<double>(n);
        double ma = 0, mb = 0;
        for (std::size_t i = 0; i < n; ++i) {
            ma += ra[i];
            mb += rb[i];
        }
        ma /= n_d;
        mb /= n_d;
        double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sxy += (ra[i] - ma) * (rb[i] - mb);
            sxx += (ra[i] - ma) * (ra[i] - ma);
            syy += (rb[i] - mb) * (rb[i] - mb);
        }
        auto mine = spearman(a, b);
        if (sxx == 0 || syy == 0) {
            if (mine.rho) {
                detail = "constant series not reported absent";
                return false;
            }
            continue;
        }
        double reference = sxy / std::sqrt(sxx * syy);
        if (!mine.rho || std::fabs(*mine.rho - reference) > 1e-12) {
            detail = "tie handling diverges from brute force at trial " + std::to_string(trial);
            return false;
        }
    }
    detail = "fixtures exact, 1000 tied samples match brute force";
    return true;
}

// --- criterion 10: performance targets -------------------------------------------

bool performance_targets(std::string& detail) {
    if (g_binary.empty()) {
        detail = "binary path not supplied";
        return false;
    }
    fs::path work = fs::temp_directory_path() / "threadnet_perf";
    fs::remove_all(work);
    fs::create_directories(work);
    auto shell = [&](const std::string& cmd) {
        return WEXITSTATUS(std::system((cmd + " >/dev/null 2>&1").c_str()));
    };

    // 12k-comment thread, landmark mode, stride 100: full analyze.
    if (shell(g_binary + " generate --preset aita-like --count 1 --seed 314159 --min-size 12000 "
                         "--max-size 12000 --out " + (work / "big").string()) != 0) {
        detail = "12k generate failed";
        return false;
    }
    auto start = std::chrono::steady_clock::now();
    if (shell(g_binary + " analyze --store " + (work / "big").string() +
              " --stride 100 --mode landmark --sources 64 --delta 1 --delta 10 --delta 60 "
              "--bins 1 --out " + (work / "big_out").string()) != 0) {
        detail = "12k analyze failed";
        return false;
    }
    double landmark_s = seconds_since(start);
    if (landmark_s >= 60.0) {
        detail = "12k landmark analyze took " + format_double(landmark_s) + " s";
        return false;
    }

    // 2k-comment thread, exact mode, stride 1: full analyze.
    if (shell(g_binary + " generate --preset aita-like --count 1 --seed 271828 --min-size 2000 "
                         "--max-size 2000 --out " + (work / "mid").string()) != 0) {
        detail = "2k generate failed";
        return false;
    }
    start = std::chrono::steady_clock::now();
    if (shell(g_binary + " analyze --store " + (work / "mid").string() +
              " --stride 1 --mode exact --cap 8192 --bins 1 --out " +
              (work / "mid_out").string()) != 0) {
        detail = "2k analyze failed";
        return false;
    }
    double exact_s = seconds_since(start);
    fs::remove_all(work);
    detail = "12k landmark analyze " + format_double(landmark_s) + " s, 2k exact analyze " +
             format_double(exact_s) + " s";
    return exact_s < 120.0;
}

// --- criterion 11: end-to-end determinism ------------------------------------------

bool determinism(std::string& detail) {
    if (g_binary.empty()) {
        detail = "binary path not supplied";
        return false;
    }
    fs::path work = fs::temp_directory_path() / "threadnet_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);
    fs::path gen = work / "gen";
    fs::path out = work / "out";

    auto shell = [&](const std::string& cmd) {
        return WEXITSTATUS(std::system((cmd + " >/dev/null 2>&1").c_str()));
    };
    if (shell(g_binary + " generate --preset aita-like --count 25 --seed 77 --min-size 50 "
                         "--max-size 250 --out " + gen.string()) != 0) {
        detail = "generate failed";
        return false;
    }
    std::string analyze_cmd = g_binary + " analyze --store " + gen.string() + " --stride 3 " +
                              "--bins 5 --seed 11 --out " + out.string();
    if (shell(analyze_cmd) != 0) {
        detail = "first analyze failed";
        return false;
    }
    std::ifstream m1(out / "manifest.txt", std::ios::binary);
    std::stringstream s1;
    s1 << m1.rdbuf();
    fs::remove_all(out);
    if (shell(analyze_cmd) != 0) {
        detail = "second analyze failed";
        return false;
    }
    std::ifstream m2(out / "manifest.txt", std::ios::binary);
    std::stringstream s2;
    s2 << m2.rdbuf();
    fs::remove_all(work);
    if (s1.str().empty() || s1.str() != s2.str()) {
        detail = "manifests differ between identical runs";
        return false;
    }
    std::size_t lines = 0;
    for (char c : s1.str()) lines += c == '\n';
    detail = "manifests byte-identical (" + std::to_string(lines) + " files)";
    return true;
}

// --- criterion 12: optional real-data checks -----------------------------------------

bool real_data_checks(std::string& detail) {
    const char* dump = std::getenv("THREADNET_AITA_DUMP");
    if (!dump || !*dump) {
        detail = "THREADNET_AITA_DUMP not set";
        return true;  // optional
    }
    const char* profile_name = std::getenv("THREADNET_AITA_PROFILE");
    FormatProfile profile = FormatProfile::by_name(profile_name ? profile_name : "pushshift");
    ParseReport report;
    auto threads = parse_dump_file(dump, profile, report);
    if (threads.size() < 10) {
        detail = "dump too small: " + std::to_string(threads.size()) + " threads";
        return false;
    }
    std::vector<double> recip, entropy, one_comment;
    for (const auto& rec : threads) {
        auto g = from_thread(rec);
        auto proj = project_simple_directed(g);
        double r = reciprocity(proj);
        recip.push_back(r);
        auto rep = disagreement_entropy(rec.labels);
        if (!rep.entropy_bits) continue;
        std::map<std::string, int> per_author;
        for (const auto& c : rec.comments) ++per_author[author_of(c)];
        int once = 0;
        for (auto& [a, n] : per_author) once += n == 1;
        entropy.push_back(*rep.entropy_bits);
        one_comment.push_back(100.0 * once / static_cast<double>(per_author.size()));
    }
    double mean = 0;
    for (double r : recip) mean += r;
    mean /= static_cast<double>(recip.size());
    std::vector<double> sorted = recip;
    std::sort(sorted.begin(), sorted.end());
    double median = sorted[sorted.size() / 2];
    if (mean >= 0.1 || mean <= median) {
        detail = "reciprocity mean " + format_double(mean) + ", median " + format_double(median);
        return false;
    }
    std::vector<double> recip_vs_entropy;
    for (std::size_t i = 0, j = 0; i < threads.size(); ++i) {
        auto rep = disagreement_entropy(threads[i].labels);
        if (!rep.entropy_bits) continue;
        recip_vs_entropy.push_back(recip[i]);
        ++j;
    }
    auto rho_one = spearman(entropy, one_comment);
    auto rho_rec = spearman(entropy, recip_vs_entropy);
    detail = "mean r " + format_double(mean) + ", rho(one-comment) " +
             format_double(rho_one.rho.value_or(0)) + ", rho(reciprocity) " +
             format_double(rho_rec.rho.value_or(0));
    return rho_one.rho && *rho_one.rho < 0 && rho_rec.rho && *rho_rec.rho > 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_binary = argv[1];

    std::vector<Criterion> criteria = {
        {1, "entropy exactness and banding", entropy_exactness},
        {2, "incremental equals oracle on 100 replays", oracle_equivalence},
        {3, "pure-star closed-form trace", star_closed_form},
        {4, "mean ASPL rises, mean GCC falls", qualitative_traces},
        {5, "power-law recovery and corpus fits", power_law_recovery},
        {6, "speed conservation and star/periphery ratio", speed_conservation_and_ratio},
        {7, "response-time filter and vote delay", response_time_criterion},
        {8, "rewiring null model", rewiring_null_model},
        {9, "spearman correctness", spearman_correctness},
        {10, "performance targets", performance_targets},
        {11, "end-to-end determinism", determinism},
        {12, "real-data sign checks (optional)", real_data_checks, true},
    };

    int failures = 0;
    for (auto& c : criteria) {
        std::string detail;
        bool skipped = false;
        bool ok = false;
        auto start = std::chrono::steady_clock::now();
        try {
            ok = c.run(detail);
            if (c.optional && detail.find("not set") != std::string::npos) skipped = true;
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        double elapsed = seconds_since(start);
        const char* verdict = skipped ? "SKIP" : ok ? "PASS" : "FAIL";
        std::printf("%s  %2d  %-46s %7.2f s  %s\n", verdict, c.number, c.name.c_str(), elapsed,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok && !c.optional) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}

// threadnet: reconstructs threaded conversations as growing temporal
// multigraphs and runs the full measurement pipeline over them.
//
// Subcommands:
//   ingest    parse newline-delimited dumps into the canonical store
//   generate  emit a seeded synthetic corpus in store format
//   analyze   per-thread traces, speeds, response times, entropy and
//             power-law fits, plus corpus-level reports and a manifest
//   compare   cross-corpus star/periphery speed-ratio table
//
// Exit codes: 0 success, 1 usage/config error, 2 data error.

#include <CLI11.hpp>

#include <threadnet/threadnet.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

namespace fs = std::filesystem;
using namespace threadnet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::string sanitize_filename(const std::string& id) {
    std::string out;
    for (char c : id) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '-' || c == '_' || c == '.';
        out += ok ? c : '_';
    }
    return out.empty() ? "_" : out;
}

void apply_env_out(RunConfig& config) {
    if (const char* env = std::getenv("THREADNET_OUT")) {
        if (*env) config.out_dir = env;
    }
}

void write_text(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

// Store files sorted by name so every run sees the same thread order.
std::vector<fs::path> list_store(const fs::path& dir) {
    fs::path store = dir;
    if (fs::is_directory(dir / "store")) store = dir / "store";
    if (!fs::is_directory(store)) throw DataError("store directory not found: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(store)) {
        if (entry.is_regular_file() && entry.path().extension() == ".ndjson")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw DataError("store is empty: " + store.string());
    return files;
}

ThreadRecord load_thread(const fs::path& file, const VoteExtraction& votes) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw DataError("cannot read " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_thread_text(ss.str(), votes);
}

void run_pool(std::size_t n_tasks, int jobs, const std::function<void(std::size_t)>& task) {
    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                                : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n_tasks ? n_tasks : 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= n_tasks) return;
                task(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

// --- ingest -----------------------------------------------------------------

int cmd_ingest(const RunConfig& config, const std::optional<KeyValueConfig>& file_config) {
    FormatProfile profile = FormatProfile::by_name(config.profile);
    if (file_config) profile = profile_from_config(profile, *file_config);
    VoteExtraction votes{config.votes_depth1_only, config.votes_within_18h};

    ParseReport report;
    std::vector<ThreadRecord> threads;
    for (const auto& input : config.inputs) {
        ParseReport file_report;
        auto parsed = parse_dump_file(input, profile, file_report, votes);
        report.merge(file_report);
        for (auto& t : parsed) threads.push_back(std::move(t));
    }

    fs::path out(config.out_dir);
    write_text(out / "parse_report.txt", report.to_text());
    write_text(out / "runconfig.txt", config.to_text());
    for (const auto& t : threads) {
        write_text(out / "store" / (sanitize_filename(t.thread_id) + ".ndjson"),
                   serialize_thread(t));
    }
    std::cout << report.to_text();
    if (threads.empty()) {
        std::cerr << "no valid threads in input\n";
        return kExitData;
    }
    std::cout << "store: " << (out / "store").string() << " (" << threads.size()
              << " threads)\n";
    return kExitOk;
}

// --- generate -----------------------------------------------------------------

int cmd_generate(const RunConfig& config, int count, int min_size, int max_size) {
    auto params = preset_corpus_params(config.preset, count, min_size, max_size);
    auto corpus = generate_corpus(params, 1, config.seed);

    fs::path out(config.out_dir);
    write_text(out / "runconfig.txt", config.to_text());
    for (const auto& t : corpus) {
        write_text(out / "store" / (sanitize_filename(t.thread_id) + ".ndjson"),
                   serialize_thread(t));
    }
    std::cout << "generated " << corpus.size() << " threads into "
              << (out / "store").string() << "\n";
    return kExitOk;
}

// --- analyze -----------------------------------------------------------------

struct ThreadOutcome {
    std::string thread_id;
    bool failed = false;
    std::string error;
    ThreadFeatures features;
    std::vector<MetricSample> samples;
    std::vector<ThreadSpeeds> speeds;  // one per delta
    std::array<ResponseTimeSummary, 4> response{};
    std::optional<PowerLawFit> fit;
    std::string fit_note;
};

void analyze_one(const ThreadRecord& rec, std::size_t index, const RunConfig& config,
                 Manifest& manifest, ThreadOutcome& outcome) {
    const std::string name = sanitize_filename(rec.thread_id);
    auto g = from_thread(rec);

    TraceOptions topt;
    topt.stride = config.stride;
    topt.mode = config.mode;
    topt.vertex_cap = config.vertex_cap;
    topt.landmark_sources = config.landmark_sources;
    topt.landmark_seed = config.seed + index;
    // Threads past the cap fall back to the landmark estimate.
    if (topt.mode == MetricMode::ExactIncremental && g.vertex_count() > topt.vertex_cap)
        topt.mode = MetricMode::LandmarkApprox;

    MetricTrace mt = trace(g, topt);
    manifest.write_file("threads/" + name + ".metrics.csv", trace_to_csv(mt));

    std::vector<const SpeedProfile*> profiles;
    for (int delta : config.deltas) {
        outcome.speeds.push_back(thread_speeds(g, delta, config.speed_count_nodes));
        profiles.push_back(&outcome.speeds.back().star);
        profiles.push_back(&outcome.speeds.back().periphery);
    }
    manifest.write_file("threads/" + name + ".speed.csv", speed_profiles_csv(profiles));

    outcome.response = response_times(g);
    manifest.write_file("threads/" + name + ".response.csv", response_times_csv(outcome.response));

    auto judgment = disagreement_entropy(rec.labels);
    manifest.write_file("threads/" + name + ".judgment.txt", disagreement_text(judgment));

    manifest.write_file("threads/" + name + ".edges.tsv", export_edge_list(g));

    DegreeKind degree_kind = config.degree == "in"    ? DegreeKind::In
                             : config.degree == "out" ? DegreeKind::Out
                                                      : DegreeKind::Total;
    std::string fit_text;
    try {
        PowerLawFit fit = fit_power_law(degree_sample(project_simple_directed(g), degree_kind));
        outcome.fit = fit;
        fit_text = "gamma: " + format_double(fit.gamma) + "\nxmin: " + std::to_string(fit.xmin) +
                   "\nks: " + format_double(fit.ks) + "\np: " + format_double(fit.p_value) +
                   "\nn: " + std::to_string(fit.n_tail) + "\n";
    } catch (const DataError& e) {
        outcome.fit_note = e.what();
        fit_text = std::string("status: skipped\nreason: ") + e.what() + "\n";
    }
    manifest.write_file("threads/" + name + ".powerlaw.txt", fit_text);

    std::array<double, 3> fractions = {config.rewire_fractions[0], config.rewire_fractions[1],
                                       config.rewire_fractions[2]};
    outcome.features =
        thread_features(rec, g, mt.samples.back(), config.seed + 1000003 + index, fractions);
    outcome.samples = std::move(mt.samples);
    outcome.thread_id = rec.thread_id;
}

// Mean of every metric across threads at each sampled k.
std::string metrics_mean_csv(const std::vector<ThreadOutcome>& outcomes) {
    struct Acc {
        double density = 0, gcc = 0, aspl = 0, diameter = 0;
        std::size_t n_density = 0, n_gcc = 0, n_aspl = 0, n_diameter = 0;
    };
    std::map<std::size_t, Acc> by_k;
    for (const auto& o : outcomes) {
        if (o.failed) continue;
        for (const auto& s : o.samples) {
            Acc& a = by_k[s.k];
            if (s.density) {
                a.density += *s.density;
                ++a.n_density;
            }
            a.gcc += s.gcc;
            ++a.n_gcc;
            if (s.aspl) {
                a.aspl += *s.aspl;
                ++a.n_aspl;
            }
            if (s.diameter) {
                a.diameter += *s.diameter;
                ++a.n_diameter;
            }
        }
    }
    std::string out = "k,mean_density,mean_gcc,mean_aspl,mean_diameter,n_threads\n";
    for (const auto& [k, a] : by_k) {
        csv_row(out, k,
                a.n_density ? std::optional<double>(a.density / a.n_density) : std::nullopt,
                a.n_gcc ? std::optional<double>(a.gcc / a.n_gcc) : std::nullopt,
                a.n_aspl ? std::optional<double>(a.aspl / a.n_aspl) : std::nullopt,
                a.n_diameter ? std::optional<double>(a.diameter / a.n_diameter) : std::nullopt,
                a.n_gcc);
    }
    return out;
}

std::string entropy_hist_csv(const std::vector<ThreadFeatures>& features) {
    std::array<std::size_t, 4> bands{};
    std::size_t no_votes = 0;
    for (const auto& f : features) {
        if (!f.entropy) {
            ++no_votes;
            continue;
        }
        ++bands[static_cast<int>(entropy_band(*f.entropy))];
    }
    std::string out = "band,count\n";
    csv_row(out, std::string("low"), bands[0]);
    csv_row(out, std::string("medium-low"), bands[1]);
    csv_row(out, std::string("medium-high"), bands[2]);
    csv_row(out, std::string("high"), bands[3]);
    csv_row(out, std::string("no-votes"), no_votes);
    return out;
}

std::string gamma_hist_csv(const std::vector<ThreadOutcome>& outcomes) {
    // Fixed grid over [1, 6), width 0.25; out-of-range exponents land in
    // the edge bins.
    constexpr int kBins = 20;
    std::array<std::size_t, kBins> hist{};
    for (const auto& o : outcomes) {
        if (o.failed || !o.fit) continue;
        int b = static_cast<int>((o.fit->gamma - 1.0) / 0.25);
        hist[std::clamp(b, 0, kBins - 1)] += 1;
    }
    std::string out = "gamma_lo,gamma_hi,count\n";
    for (int b = 0; b < kBins; ++b)
        csv_row(out, 1.0 + 0.25 * b, 1.0 + 0.25 * (b + 1), hist[b]);
    return out;
}

std::string star_share_csv(const std::vector<ThreadFeatures>& features) {
    std::string out = "thread_id,voter_share,star_join_share\n";
    double vsum = 0, ssum = 0;
    for (const auto& f : features) {
        csv_row(out, f.thread_id, f.voter_share, f.star_join_share);
        vsum += f.voter_share;
        ssum += f.star_join_share;
    }
    if (!features.empty()) {
        auto n = static_cast<double>(features.size());
        csv_row(out, std::string("MEAN"), vsum / n, ssum / n);
    }
    return out;
}

std::string response_corpus_csv(const std::vector<ThreadOutcome>& outcomes) {
    std::array<ResponseTimeSummary, 4> pooled;
    pooled[0] = {SubgraphTag::Star, true, {}, {}, {}, {}, 0};
    pooled[1] = {SubgraphTag::Star, false, {}, {}, {}, {}, 0};
    pooled[2] = {SubgraphTag::Periphery, true, {}, {}, {}, {}, 0};
    pooled[3] = {SubgraphTag::Periphery, false, {}, {}, {}, {}, 0};
    for (const auto& o : outcomes) {
        if (o.failed) continue;
        for (int c = 0; c < 4; ++c)
            pooled[c].raw.insert(pooled[c].raw.end(), o.response[c].raw.begin(),
                                 o.response[c].raw.end());
    }
    for (auto& c : pooled) c.finalize();
    return response_times_csv(pooled);
}

int cmd_analyze(const RunConfig& config, const std::string& store_dir) {
    auto files = list_store(store_dir);
    VoteExtraction votes{config.votes_depth1_only, config.votes_within_18h};

    std::vector<ThreadRecord> records(files.size());
    std::vector<std::string> load_errors(files.size());
    run_pool(files.size(), config.jobs, [&](std::size_t i) {
        try {
            records[i] = load_thread(files[i], votes);
        } catch (const std::exception& e) {
            load_errors[i] = e.what();
        }
    });

    fs::path out(config.out_dir);
    fs::create_directories(out);
    Manifest manifest(out);
    manifest.write_file("runconfig.txt", config.to_text());

    std::vector<ThreadOutcome> outcomes(files.size());
    run_pool(files.size(), config.jobs, [&](std::size_t i) {
        outcomes[i].thread_id = records[i].thread_id;
        if (!load_errors[i].empty()) {
            outcomes[i].failed = true;
            outcomes[i].error = files[i].filename().string() + ": " + load_errors[i];
            return;
        }
        try {
            analyze_one(records[i], i, config, manifest, outcomes[i]);
        } catch (const std::exception& e) {
            outcomes[i].failed = true;
            outcomes[i].error = records[i].thread_id + ": " + e.what();
        }
    });

    // Corpus stage: deterministic order, failures skipped.
    std::vector<ThreadFeatures> features;
    std::string errors;
    std::size_t ok = 0;
    for (const auto& o : outcomes) {
        if (o.failed) {
            errors += o.error + "\n";
        } else {
            features.push_back(o.features);
            ++ok;
        }
    }
    if (!errors.empty()) manifest.write_file("errors.log", errors);
    if (ok == 0) {
        manifest.finalize();
        std::cerr << "every thread failed to analyze\n" << errors;
        return kExitData;
    }

    manifest.write_file("features.csv", features_csv(features));
    auto correlation = correlation_report(features);
    manifest.write_file("correlation.csv", correlation_csv(correlation));
    manifest.write_file("correlation.txt", correlation_table(correlation));
    manifest.write_file("metrics_mean.csv", metrics_mean_csv(outcomes));
    manifest.write_file("entropy_hist.csv", entropy_hist_csv(features));
    manifest.write_file("gamma_hist.csv", gamma_hist_csv(outcomes));
    manifest.write_file("star_share.csv", star_share_csv(features));
    manifest.write_file("response_corpus.csv", response_corpus_csv(outcomes));

    std::string powerlaw = "thread_id,gamma,xmin,ks,p,n\n";
    for (const auto& o : outcomes) {
        if (o.failed || !o.fit) continue;
        csv_row(powerlaw, o.thread_id, o.fit->gamma, static_cast<std::uint64_t>(o.fit->xmin),
                o.fit->ks, o.fit->p_value, o.fit->n_tail);
    }
    manifest.write_file("powerlaw.csv", powerlaw);

    for (std::size_t d = 0; d < config.deltas.size(); ++d) {
        std::vector<ThreadSpeeds> speeds;
        for (const auto& o : outcomes) {
            if (!o.failed) speeds.push_back(o.speeds[d]);
        }
        std::string suffix = "_d" + std::to_string(config.deltas[d]);
        try {
            auto bins = bin_and_average(speeds, config.bin_count, config.quantile_bins);
            manifest.write_file("bins" + suffix + ".csv", bins_profile_csv(bins));
            manifest.write_file("bins_summary" + suffix + ".csv", bins_summary_csv(bins));
        } catch (const ConfigError& e) {
            manifest.write_file("bins" + suffix + ".skipped.txt", std::string(e.what()) + "\n");
        }
    }

    manifest.finalize();
    std::cout << "analyzed " << ok << "/" << outcomes.size() << " threads, "
              << manifest.file_count() << " files in " << out.string() << "\n";
    return kExitOk;
}

// --- compare -----------------------------------------------------------------

int cmd_compare(const RunConfig& config, const std::vector<std::string>& stores, int delta) {
    std::string out_csv = "store,bin,delta_m,n_threads,mean_star,mean_periphery,ratio\n";
    for (const auto& store : stores) {
        auto files = list_store(store);
        std::vector<ThreadSpeeds> speeds(files.size());
        run_pool(files.size(), config.jobs, [&](std::size_t i) {
            auto rec = load_thread(files[i], {});
            speeds[i] = thread_speeds(from_thread(rec), delta, config.speed_count_nodes);
        });
        auto bins = bin_and_average(speeds, config.bin_count, config.quantile_bins);
        std::string label = fs::path(store).filename().string();
        if (label.empty()) label = store;
        for (std::size_t b = 0; b < bins.bins.size(); ++b) {
            const auto& bin = bins.bins[b];
            csv_row(out_csv, label, b, delta, bin.thread_ids.size(), bin.mean_star,
                    bin.mean_periphery, bin.ratio);
        }
    }
    fs::path out(config.out_dir);
    write_text(out / "compare.csv", out_csv);
    write_text(out / "runconfig.txt", config.to_text());
    std::cout << out_csv;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"growing-network analysis of threaded conversations"};
    app.require_subcommand(1);

    RunConfig config;
    std::string config_file;
    std::string store_dir;
    std::vector<std::string> stores;
    int count = 0;
    int min_size = 60, max_size = 900;
    int compare_delta = 1;
    std::string mode_name = "exact";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", config.out_dir, "output directory (env THREADNET_OUT overrides)");
        cmd->add_option("--config", config_file, "key-value config file");
        cmd->add_option("--seed", config.seed, "base seed");
        cmd->add_option("--jobs", config.jobs, "worker threads (0: all cores)");
    };

    CLI::App* ingest = app.add_subcommand("ingest", "parse dumps into the canonical store");
    ingest->add_option("--input", config.inputs, "newline-delimited dump files (.gz accepted)")
        ->required();
    ingest->add_option("--profile", config.profile, "format profile: praw or pushshift");
    ingest->add_flag("--depth1-votes", config.votes_depth1_only,
                     "extract votes from first-level comments only");
    ingest->add_flag("--window-18h", config.votes_within_18h,
                     "extract votes from the first 18 hours only");
    add_common(ingest);

    CLI::App* generate = app.add_subcommand("generate", "emit a synthetic corpus");
    generate->add_option("--preset", config.preset, "aita-like, uniform or slow-votes");
    generate->add_option("--count", count, "number of threads")->required();
    generate->add_option("--min-size", min_size, "smallest thread (comments)");
    generate->add_option("--max-size", max_size, "largest thread (comments)");
    add_common(generate);

    CLI::App* analyze = app.add_subcommand("analyze", "run the measurement pipeline on a store");
    analyze->add_option("--store", store_dir, "store directory")->required();
    analyze->add_option("--stride", config.stride, "metric cadence in edges");
    analyze->add_option("--mode", mode_name, "exact, landmark or oracle");
    analyze->add_option("--cap", config.vertex_cap, "exact-mode vertex cap");
    analyze->add_option("--sources", config.landmark_sources, "landmark BFS sources");
    analyze->add_option("--delta", config.deltas, "speed interval minutes (1, 10, 60)");
    analyze->add_option("--bins", config.bin_count, "duration bins");
    analyze->add_flag("--quantile-bins", config.quantile_bins, "equal-population duration bins");
    analyze->add_flag("--depth1-votes", config.votes_depth1_only,
                      "extract votes from first-level comments only");
    analyze->add_flag("--window-18h", config.votes_within_18h,
                      "extract votes from the first 18 hours only");
    analyze->add_flag("--node-speeds", config.speed_count_nodes,
                      "growth speed counts joining users instead of edges");
    analyze->add_option("--degree", config.degree, "degree sample for fits: total, in or out");
    analyze->add_option("--rewire", config.rewire_fractions, "three rewiring fractions")
        ->expected(3);
    add_common(analyze);

    CLI::App* compare = app.add_subcommand("compare", "speed-ratio table across stores");
    compare->add_option("--store", stores, "store directories")->required();
    compare->add_option("--delta", compare_delta, "speed interval minutes");
    compare->add_option("--bins", config.bin_count, "duration bins");
    compare->add_flag("--quantile-bins", config.quantile_bins, "equal-population duration bins");
    add_common(compare);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        std::optional<KeyValueConfig> file_config;
        if (!config_file.empty()) {
            // The config file fills in whatever was not given on the
            // command line; explicit options win.
            KeyValueConfig file = KeyValueConfig::from_file(config_file);
            file_config = file;
            CLI::App* active = app.get_subcommands().front();
            auto given = [&](const std::string& flag) {
                auto* opt = active->get_option_no_throw(flag);
                return opt != nullptr && opt->count() > 0;
            };
            RunConfig from_file = config;
            from_file.apply(file);
            if (!given("--out")) config.out_dir = from_file.out_dir;
            if (!given("--seed")) config.seed = from_file.seed;
            if (!given("--jobs")) config.jobs = from_file.jobs;
            if (!given("--stride")) config.stride = from_file.stride;
            if (!given("--cap")) config.vertex_cap = from_file.vertex_cap;
            if (!given("--sources")) config.landmark_sources = from_file.landmark_sources;
            if (!given("--delta")) config.deltas = from_file.deltas;
            if (!given("--bins")) config.bin_count = from_file.bin_count;
            if (!given("--quantile-bins")) config.quantile_bins = from_file.quantile_bins;
            if (!given("--depth1-votes")) config.votes_depth1_only = from_file.votes_depth1_only;
            if (!given("--window-18h")) config.votes_within_18h = from_file.votes_within_18h;
            if (!given("--node-speeds")) config.speed_count_nodes = from_file.speed_count_nodes;
            if (!given("--profile")) config.profile = from_file.profile;
            if (!given("--preset")) config.preset = from_file.preset;
            if (!given("--degree")) config.degree = from_file.degree;
            if (!given("--rewire")) config.rewire_fractions = from_file.rewire_fractions;
            if (!given("--mode")) mode_name = from_file.mode_name();
            if (!given("--count") && file.has("count"))
                count = static_cast<int>(file.get_int("count", count));
            if (!given("--min-size") && file.has("min_size"))
                min_size = static_cast<int>(file.get_int("min_size", min_size));
            if (!given("--max-size") && file.has("max_size"))
                max_size = static_cast<int>(file.get_int("max_size", max_size));
        }
        if (mode_name == "exact") config.mode = MetricMode::ExactIncremental;
        else if (mode_name == "landmark") config.mode = MetricMode::LandmarkApprox;
        else if (mode_name == "oracle") config.mode = MetricMode::Oracle;
        else throw ConfigError("unknown metric mode: " + mode_name);

        apply_env_out(config);
        config.validate();

        if (ingest->parsed()) return cmd_ingest(config, file_config);
        if (generate->parsed()) {
            if (count <= 0) throw ConfigError("--count must be positive");
            return cmd_generate(config, count, min_size, max_size);
        }
        if (analyze->parsed()) return cmd_analyze(config, store_dir);
        if (compare->parsed()) {
            config.deltas = {compare_delta};
            config.validate();
            return cmd_compare(config, stores, compare_delta);
        }
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const ThreadError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}

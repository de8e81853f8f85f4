#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <threadnet/errors.hpp>
#include <threadnet/metrics.hpp>

namespace threadnet {

// `key = value` lines, '#' starts a comment, blank lines ignored.
class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw DataError("cannot open config file: " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return from_text(ss.str(), path);
    }

    static KeyValueConfig from_text(const std::string& text, const std::string& origin = "config") {
        KeyValueConfig cfg;
        std::istringstream is(text);
        std::string line;
        int line_no = 0;
        while (std::getline(is, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto trim = [](std::string s) {
                auto a = s.find_first_not_of(" \t\r");
                auto b = s.find_last_not_of(" \t\r");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            std::string trimmed = trim(line);
            if (trimmed.empty()) continue;
            auto eq = trimmed.find('=');
            if (eq == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected key = value");
            std::string key = trim(trimmed.substr(0, eq));
            std::string value = trim(trimmed.substr(eq + 1));
            if (key.empty()) throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
            cfg.values_[key] = value;
        }
        return cfg;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get(const std::string& key, const std::string& fallback = "") const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    std::int64_t get_int(const std::string& key, std::int64_t fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            return std::stoll(it->second);
        } catch (...) {
            throw ConfigError("config key '" + key + "' is not an integer: " + it->second);
        }
    }

    double get_double(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            return std::stod(it->second);
        } catch (...) {
            throw ConfigError("config key '" + key + "' is not a number: " + it->second);
        }
    }

    bool get_bool(const std::string& key, bool fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
        if (it->second == "false" || it->second == "0" || it->second == "no") return false;
        throw ConfigError("config key '" + key + "' is not a boolean: " + it->second);
    }

    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

// Pipeline configuration shared by the CLI subcommands. Validated before
// any work starts; the serialized copy goes into the output directory.
struct RunConfig {
    std::vector<std::string> inputs;
    std::string profile = "praw";
    std::string preset = "aita-like";
    int stride = 1;
    MetricMode mode = MetricMode::ExactIncremental;
    std::uint32_t vertex_cap = 8192;
    int landmark_sources = 64;
    std::vector<int> deltas = {1};
    int bin_count = 10;
    bool quantile_bins = false;
    bool votes_depth1_only = false;
    bool votes_within_18h = false;
    bool speed_count_nodes = false;
    std::string degree = "total";  // degree sample for power-law fits: total, in, out
    std::vector<double> rewire_fractions = {0.2, 0.5, 0.9};
    std::uint64_t seed = 1;
    int jobs = 0;  // 0: hardware concurrency
    std::string out_dir;

    void validate() const {
        if (degree != "total" && degree != "in" && degree != "out")
            throw ConfigError("degree must be one of total, in, out");
        if (rewire_fractions.size() != 3)
            throw ConfigError("exactly three rewire fractions are required");
        for (double f : rewire_fractions) {
            if (f <= 0 || f > 1) throw ConfigError("rewire fractions must lie in (0, 1]");
        }
        if (stride < 1) throw ConfigError("stride must be >= 1");
        if (vertex_cap < 2) throw ConfigError("vertex cap must be >= 2");
        if (landmark_sources < 1) throw ConfigError("landmark sources must be >= 1");
        if (bin_count < 1) throw ConfigError("bin count must be >= 1");
        if (deltas.empty()) throw ConfigError("at least one delta is required");
        for (int d : deltas) {
            if (d != 1 && d != 10 && d != 60) throw ConfigError("delta must be one of 1, 10, 60");
        }
        if (jobs < 0) throw ConfigError("jobs must be >= 0");
        if (out_dir.empty()) throw ConfigError("output directory is required");
    }

    void apply(const KeyValueConfig& cfg) {
        if (cfg.has("profile")) profile = cfg.get("profile");
        if (cfg.has("preset")) preset = cfg.get("preset");
        if (cfg.has("stride")) stride = static_cast<int>(cfg.get_int("stride", stride));
        if (cfg.has("mode")) {
            std::string m = cfg.get("mode");
            if (m == "exact") mode = MetricMode::ExactIncremental;
            else if (m == "landmark") mode = MetricMode::LandmarkApprox;
            else if (m == "oracle") mode = MetricMode::Oracle;
            else throw ConfigError("unknown metric mode: " + m);
        }
        if (cfg.has("vertex_cap"))
            vertex_cap = static_cast<std::uint32_t>(cfg.get_int("vertex_cap", vertex_cap));
        if (cfg.has("landmark_sources"))
            landmark_sources = static_cast<int>(cfg.get_int("landmark_sources", landmark_sources));
        if (cfg.has("deltas")) {
            deltas.clear();
            std::istringstream is(cfg.get("deltas"));
            std::string tok;
            while (std::getline(is, tok, ',')) deltas.push_back(std::stoi(tok));
        }
        if (cfg.has("bins")) bin_count = static_cast<int>(cfg.get_int("bins", bin_count));
        if (cfg.has("quantile_bins")) quantile_bins = cfg.get_bool("quantile_bins", quantile_bins);
        if (cfg.has("votes_depth1_only"))
            votes_depth1_only = cfg.get_bool("votes_depth1_only", votes_depth1_only);
        if (cfg.has("votes_within_18h"))
            votes_within_18h = cfg.get_bool("votes_within_18h", votes_within_18h);
        if (cfg.has("speed_count_nodes"))
            speed_count_nodes = cfg.get_bool("speed_count_nodes", speed_count_nodes);
        if (cfg.has("degree")) degree = cfg.get("degree");
        if (cfg.has("rewire")) {
            rewire_fractions.clear();
            std::istringstream is(cfg.get("rewire"));
            std::string tok;
            while (std::getline(is, tok, ',')) rewire_fractions.push_back(std::stod(tok));
        }
        if (cfg.has("seed")) seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
        if (cfg.has("jobs")) jobs = static_cast<int>(cfg.get_int("jobs", jobs));
        if (cfg.has("out")) out_dir = cfg.get("out");
    }

    std::string mode_name() const {
        switch (mode) {
            case MetricMode::ExactIncremental: return "exact";
            case MetricMode::LandmarkApprox: return "landmark";
            case MetricMode::Oracle: return "oracle";
        }
        return "?";
    }

    // Provenance copy, sorted keys, one per line.
    std::string to_text() const {
        std::ostringstream os;
        os << "bins = " << bin_count << "\n";
        os << "degree = " << degree << "\n";
        std::string ds;
        for (std::size_t i = 0; i < deltas.size(); ++i)
            ds += (i ? "," : "") + std::to_string(deltas[i]);
        os << "deltas = " << ds << "\n";
        std::string ins;
        for (std::size_t i = 0; i < inputs.size(); ++i) ins += (i ? "," : "") + inputs[i];
        os << "inputs = " << ins << "\n";
        os << "jobs = " << jobs << "\n";
        os << "landmark_sources = " << landmark_sources << "\n";
        os << "mode = " << mode_name() << "\n";
        os << "out = " << out_dir << "\n";
        os << "preset = " << preset << "\n";
        os << "profile = " << profile << "\n";
        os << "quantile_bins = " << (quantile_bins ? "true" : "false") << "\n";
        std::string rw;
        for (std::size_t i = 0; i < rewire_fractions.size(); ++i) {
            if (i) rw += ",";
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%g", rewire_fractions[i]);
            rw += buf;
        }
        os << "rewire = " << rw << "\n";
        os << "seed = " << seed << "\n";
        os << "speed_count_nodes = " << (speed_count_nodes ? "true" : "false") << "\n";
        os << "stride = " << stride << "\n";
        os << "vertex_cap = " << vertex_cap << "\n";
        os << "votes_depth1_only = " << (votes_depth1_only ? "true" : "false") << "\n";
        os << "votes_within_18h = " << (votes_within_18h ? "true" : "false") << "\n";
        return os.str();
    }
};

}  // namespace threadnet

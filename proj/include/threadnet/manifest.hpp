#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include <threadnet/errors.hpp>

namespace threadnet {

inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Records every file written under an output directory and renders the
// manifest: `hash  bytes  relative-path`, sorted by path.
class Manifest {
public:
    explicit Manifest(std::filesystem::path root) : root_(std::move(root)) {}

    // Writes content and registers the file. Thread safe.
    void write_file(const std::string& relative_path, const std::string& content) {
        std::filesystem::path full = root_ / relative_path;
        std::filesystem::create_directories(full.parent_path());
        {
            std::ofstream out(full, std::ios::binary);
            if (!out) throw DataError("cannot write " + full.string());
            out.write(content.data(), static_cast<std::streamsize>(content.size()));
        }
        Entry e{relative_path, fnv1a64(content), content.size()};
        std::lock_guard<std::mutex> lock(mutex_);
        entries_.push_back(std::move(e));
    }

    std::string to_text() const {
        std::vector<Entry> sorted;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            sorted = entries_;
        }
        std::sort(sorted.begin(), sorted.end(),
                  [](const Entry& a, const Entry& b) { return a.path < b.path; });
        std::string out;
        char buf[17];
        for (const auto& e : sorted) {
            std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(e.hash));
            out += buf;
            out += "  ";
            out += std::to_string(e.size);
            out += "  ";
            out += e.path;
            out += '\n';
        }
        return out;
    }

    // Writes manifest.txt itself (not listed inside).
    void finalize() const {
        std::ofstream out(root_ / "manifest.txt", std::ios::binary);
        if (!out) throw DataError("cannot write manifest");
        std::string text = to_text();
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
    }

    std::size_t file_count() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return entries_.size();
    }

private:
    struct Entry {
        std::string path;
        std::uint64_t hash;
        std::size_t size;
    };

    std::filesystem::path root_;
    mutable std::mutex mutex_;
    std::vector<Entry> entries_;
};

}  // namespace threadnet

#pragma once

#include <zlib.h>

#include <cstdio>
#include <string>
#include <vector>

#include <threadnet/errors.hpp>

namespace threadnet {

// Reads a file line by line; transparently inflates gzip input (gzFile
// also passes plain files through). Lines are split on '\n'; a trailing
// '\r' is stripped.
class LineReader {
public:
    explicit LineReader(const std::string& path) : path_(path) {
        file_ = gzopen(path.c_str(), "rb");
        if (!file_) throw DataError("cannot open input: " + path);
        buf_.resize(1 << 16);
    }

    LineReader(const LineReader&) = delete;
    LineReader& operator=(const LineReader&) = delete;

    ~LineReader() {
        if (file_) gzclose(file_);
    }

    // Returns false at end of input. Throws DataError on a read failure.
    bool next(std::string& line) {
        line.clear();
        while (true) {
            for (; pos_ < len_; ++pos_) {
                if (buf_[pos_] == '\n') {
                    ++pos_;
                    if (!line.empty() && line.back() == '\r') line.pop_back();
                    return true;
                }
                line.push_back(buf_[pos_]);
            }
            int n = gzread(file_, buf_.data(), static_cast<unsigned>(buf_.size()));
            if (n < 0) {
                int errnum = 0;
                const char* msg = gzerror(file_, &errnum);
                throw DataError("read error in " + path_ + ": " + (msg ? msg : "unknown"));
            }
            if (n == 0) {
                if (line.empty()) return false;
                if (line.back() == '\r') line.pop_back();
                return true;  // last line without newline
            }
            pos_ = 0;
            len_ = static_cast<std::size_t>(n);
        }
    }

private:
    std::string path_;
    gzFile file_ = nullptr;
    std::vector<char> buf_;
    std::size_t pos_ = 0;
    std::size_t len_ = 0;
};

}  // namespace threadnet

#include "agentseg/pgm.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

namespace agentseg {

namespace {

class HeaderReader {
public:
    explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    // Skips whitespace and '#' comments, then reads a non-negative decimal.
    // Returns -1 when the stream ends before any digit.
    long read_int(const char* field) {
        skip_blanks();
        if (pos_ >= bytes_.size()) return -1;
        if (bytes_[pos_] == '-') {
            throw PgmError(PgmError::Kind::bad_dimension,
                           std::string("negative ") + field + " in PGM header");
        }
        if (!std::isdigit(bytes_[pos_])) {
            throw PgmError(PgmError::Kind::malformed_header,
                           std::string("expected ") + field + " in PGM header");
        }
        long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > 1'000'000'000L) {
                throw PgmError(PgmError::Kind::malformed_header,
                               std::string(field) + " out of range in PGM header");
            }
            ++pos_;
        }
        return v;
    }

    void skip_blanks() {
        while (pos_ < bytes_.size()) {
            const auto ch = bytes_[pos_];
            if (ch == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(ch)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::size_t pos() const noexcept { return pos_; }
    void advance(std::size_t n) noexcept { pos_ += n; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

long require(long v, const char* field) {
    if (v < 0) {
        throw PgmError(PgmError::Kind::truncated, std::string("PGM header ends before ") + field);
    }
    return v;
}

} // namespace

ImageGrid read_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        throw PgmError(PgmError::Kind::bad_magic, "not a P2/P5 PGM stream");
    }
    const bool binary = bytes[1] == '5';
    HeaderReader in(bytes);
    in.advance(2);
    if (in.pos() < bytes.size() && !std::isspace(bytes[in.pos()])) {
        throw PgmError(PgmError::Kind::bad_magic, "not a P2/P5 PGM stream");
    }

    const long width = require(in.read_int("width"), "width");
    const long height = require(in.read_int("height"), "height");
    if (width <= 0 || height <= 0) {
        throw PgmError(PgmError::Kind::bad_dimension,
                       "PGM dimensions must be positive, got " + std::to_string(width) + "x" +
                           std::to_string(height));
    }
    const long maxval = require(in.read_int("maxval"), "maxval");
    if (maxval < 1 || maxval > 255) {
        throw PgmError(PgmError::Kind::bad_maxval,
                       "PGM maxval must be in [1, 255], got " + std::to_string(maxval));
    }

    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<long> raw(count);
    if (binary) {
        // Exactly one whitespace byte separates maxval from the raster.
        if (in.pos() >= bytes.size() || !std::isspace(bytes[in.pos()])) {
            throw PgmError(PgmError::Kind::truncated, "PGM raster missing");
        }
        in.advance(1);
        if (bytes.size() - in.pos() < count) {
            throw PgmError(PgmError::Kind::truncated,
                           "PGM raster truncated: expected " + std::to_string(count) +
                               " bytes, found " + std::to_string(bytes.size() - in.pos()));
        }
        for (std::size_t k = 0; k < count; ++k) raw[k] = bytes[in.pos() + k];
    } else {
        for (std::size_t k = 0; k < count; ++k) {
            const long v = in.read_int("sample");
            if (v < 0) {
                throw PgmError(PgmError::Kind::truncated,
                               "PGM raster truncated after " + std::to_string(k) + " samples");
            }
            raw[k] = v;
        }
    }

    const int w = static_cast<int>(width);
    const int h = static_cast<int>(height);
    std::vector<double> values(count);
    for (int row = 0; row < h; ++row) {
        const int j = h - 1 - row;  // file rows run top to bottom
        for (int i = 0; i < w; ++i) {
            const long v = raw[static_cast<std::size_t>(row) * w + i];
            if (v > maxval) {
                throw PgmError(PgmError::Kind::bad_sample,
                               "PGM sample " + std::to_string(v) + " exceeds maxval");
            }
            values[static_cast<std::size_t>(j) * w + i] =
                static_cast<double>(v) / static_cast<double>(maxval);
        }
    }
    return ImageGrid(w, h, std::move(values));
}

ImageGrid read_pgm_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw PgmError(PgmError::Kind::io, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(f),
                                    std::istreambuf_iterator<char>()};
    return read_pgm(bytes);
}

std::vector<std::uint8_t> write_pgm(const ImageGrid& img) {
    const std::string header = "P5\n" + std::to_string(img.width()) + " " +
                               std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + img.size());
    for (int row = 0; row < img.height(); ++row) {
        const int j = img.height() - 1 - row;
        for (int i = 0; i < img.width(); ++i) {
            double q = std::round(255.0 * img(i, j));
            if (q < 0.0) q = 0.0;
            if (q > 255.0) q = 255.0;
            out.push_back(static_cast<std::uint8_t>(q));
        }
    }
    return out;
}

void write_pgm_file(const std::filesystem::path& path, const ImageGrid& img) {
    const auto bytes = write_pgm(img);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw PgmError(PgmError::Kind::io, "cannot write " + path.string());
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw PgmError(PgmError::Kind::io, "write failed for " + path.string());
}

} // namespace agentseg

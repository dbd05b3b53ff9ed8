#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "agentseg/error.hpp"
#include "agentseg/grid.hpp"

namespace agentseg {

class PgmError : public Error {
public:
    enum class Kind { bad_magic, bad_maxval, bad_dimension, truncated, malformed_header, bad_sample, io };

    PgmError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// 8-bit P2/P5 only. The file's first row is the top of the image and lands
// in grid row H-1.
ImageGrid read_pgm(std::span<const std::uint8_t> bytes);
ImageGrid read_pgm_file(const std::filesystem::path& path);

// Always P5, maxval 255, byte = clamp(round(255 v), 0, 255).
std::vector<std::uint8_t> write_pgm(const ImageGrid& img);
void write_pgm_file(const std::filesystem::path& path, const ImageGrid& img);

} // namespace agentseg

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace agentseg {

/// Spacing of a W x H pixel grid mapped onto the unit square.
///
/// Pixel (i, j) sits at (i * hx, j * hy); row j = 0 is the bottom row.
/// A degenerate axis (one pixel wide) gets spacing 1 and all its
/// coordinates collapse to 0.
struct GridGeometry {
    int width = 1;
    int height = 1;
    double hx = 1.0;
    double hy = 1.0;

    static GridGeometry for_shape(int width, int height);

    double cell_area() const noexcept { return hx * hy; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(width) * height; }
    double x(int i) const noexcept { return i * hx; }
    double y(int j) const noexcept { return j * hy; }

    bool operator==(const GridGeometry&) const = default;
};

/// Per-pixel real values, row-major with row 0 at the bottom.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(int width, int height, double fill = 0.0);
    ScalarField(int width, int height, std::vector<double> values);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return values_.size(); }
    GridGeometry geometry() const { return GridGeometry::for_shape(width_, height_); }

    double& operator()(int i, int j) noexcept { return values_[index(i, j)]; }
    double operator()(int i, int j) const noexcept { return values_[index(i, j)]; }
    double& operator[](std::size_t k) noexcept { return values_[k]; }
    double operator[](std::size_t k) const noexcept { return values_[k]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(j) * width_ + i;
    }
    bool same_shape(const ScalarField& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    bool operator==(const ScalarField&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> values_;
};

/// Two scalar components on a common grid.
struct VectorField {
    ScalarField x;
    ScalarField y;

    VectorField() = default;
    VectorField(int width, int height, double fill = 0.0)
        : x(width, height, fill), y(width, height, fill) {}
    VectorField(ScalarField xs, ScalarField ys);

    int width() const noexcept { return x.width(); }
    int height() const noexcept { return x.height(); }
    std::size_t size() const noexcept { return x.size(); }
    bool same_shape(const ScalarField& f) const noexcept { return x.same_shape(f); }
};

/// Grey-scale image with every value in [0, 1].
class ImageGrid {
public:
    ImageGrid() = default;
    /// Throws ParameterError on a non-positive dimension, ShapeError on a
    /// size mismatch and std::domain_error on a value outside [0, 1].
    ImageGrid(int width, int height, std::vector<double> values);
    explicit ImageGrid(ScalarField field);

    int width() const noexcept { return field_.width(); }
    int height() const noexcept { return field_.height(); }
    std::size_t size() const noexcept { return field_.size(); }
    GridGeometry geometry() const { return field_.geometry(); }
    double operator()(int i, int j) const noexcept { return field_(i, j); }
    const ScalarField& field() const noexcept { return field_; }

    bool operator==(const ImageGrid&) const = default;

private:
    ScalarField field_;
};

// Plain (unweighted) sums evaluated left to right, so results never depend
// on the thread count.
double sum(std::span<const double> values) noexcept;
double dot(const ScalarField& a, const ScalarField& b);
double dot(const VectorField& a, const VectorField& b);

void require_same_shape(const ScalarField& a, const ScalarField& b, const char* what);

} // namespace agentseg

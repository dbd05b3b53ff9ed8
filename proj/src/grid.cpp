#include "agentseg/grid.hpp"

#include <stdexcept>
#include <string>

#include "agentseg/error.hpp"

namespace agentseg {

GridGeometry GridGeometry::for_shape(int width, int height) {
    if (width < 1 || height < 1) {
        throw ParameterError("grid dimensions must be positive, got " + std::to_string(width) +
                             "x" + std::to_string(height));
    }
    GridGeometry g;
    g.width = width;
    g.height = height;
    g.hx = width > 1 ? 1.0 / (width - 1) : 1.0;
    g.hy = height > 1 ? 1.0 / (height - 1) : 1.0;
    return g;
}

ScalarField::ScalarField(int width, int height, double fill)
    : width_(width), height_(height) {
    if (width < 0 || height < 0) throw ParameterError("negative field dimension");
    values_.assign(static_cast<std::size_t>(width) * height, fill);
}

ScalarField::ScalarField(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
    if (width < 0 || height < 0) throw ParameterError("negative field dimension");
    if (values_.size() != static_cast<std::size_t>(width) * height) {
        throw ShapeError("field value count " + std::to_string(values_.size()) +
                         " does not match " + std::to_string(width) + "x" +
                         std::to_string(height));
    }
}

VectorField::VectorField(ScalarField xs, ScalarField ys) : x(std::move(xs)), y(std::move(ys)) {
    require_same_shape(x, y, "vector field components");
}

ImageGrid::ImageGrid(int width, int height, std::vector<double> values)
    : ImageGrid(ScalarField(width, height, std::move(values))) {}

ImageGrid::ImageGrid(ScalarField field) : field_(std::move(field)) {
    if (field_.width() < 1 || field_.height() < 1) {
        throw ParameterError("image dimensions must be positive");
    }
    for (double v : field_.values()) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::domain_error("image value " + std::to_string(v) + " outside [0, 1]");
        }
    }
}

double sum(std::span<const double> values) noexcept {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

double dot(const ScalarField& a, const ScalarField& b) {
    require_same_shape(a, b, "dot");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double dot(const VectorField& a, const VectorField& b) {
    return dot(a.x, b.x) + dot(a.y, b.y);
}

void require_same_shape(const ScalarField& a, const ScalarField& b, const char* what) {
    if (!a.same_shape(b)) {
        throw ShapeError(std::string(what) + ": shape mismatch " + std::to_string(a.width()) +
                         "x" + std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                         "x" + std::to_string(b.height()));
    }
}

} // namespace agentseg

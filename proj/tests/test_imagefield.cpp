#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "agentseg/error.hpp"
#include "agentseg/grid.hpp"
#include "agentseg/operators.hpp"
#include "agentseg/pgm.hpp"
#include "support.hpp"

using namespace agentseg;
using agentseg::testing::max_abs;
using agentseg::testing::max_abs_diff;
using agentseg::testing::random_field;
using agentseg::testing::random_vector_field;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

PgmError::Kind read_error(const std::string& s) {
    try {
        read_pgm(bytes_of(s));
    } catch (const PgmError& e) {
        return e.kind();
    }
    FAIL("expected PgmError");
    return PgmError::Kind::io;
}

} // namespace

TEST_SUITE("grid") {
    TEST_CASE("spacing maps the grid onto the unit square") {
        const auto g = GridGeometry::for_shape(5, 3);
        CHECK(g.hx == doctest::Approx(0.25));
        CHECK(g.hy == doctest::Approx(0.5));
        CHECK(g.x(4) == doctest::Approx(1.0));
        CHECK(g.y(2) == doctest::Approx(1.0));
        CHECK(g.cell_area() == doctest::Approx(0.125));
    }

    TEST_CASE("degenerate axis gets unit spacing") {
        const auto g = GridGeometry::for_shape(1, 4);
        CHECK(g.hx == 1.0);
        CHECK(g.x(0) == 0.0);
        CHECK_THROWS_AS(GridGeometry::for_shape(0, 3), ParameterError);
    }

    TEST_CASE("fields are row-major with row 0 at the bottom") {
        ScalarField f(3, 2);
        f(2, 1) = 7.0;
        CHECK(f[5] == 7.0);
        CHECK(f.index(1, 1) == 4u);
        CHECK_THROWS_AS(ScalarField(2, 2, std::vector<double>(3)), ShapeError);
    }

    TEST_CASE("image values must lie in [0, 1]") {
        CHECK_NOTHROW(ImageGrid(2, 1, {0.0, 1.0}));
        CHECK_THROWS_AS(ImageGrid(2, 1, {0.0, 1.5}), std::domain_error);
        CHECK_THROWS_AS(ImageGrid(2, 1, {-1e-9, 0.5}), std::domain_error);
        CHECK_THROWS_AS(ImageGrid(2, 1, {std::nan(""), 0.5}), std::domain_error);
        CHECK_THROWS_AS(ImageGrid(0, 1, {}), ParameterError);
        CHECK_THROWS_AS(ImageGrid(2, 2, {0.1}), ShapeError);
    }

    TEST_CASE("dot rejects mismatched shapes") {
        CHECK_THROWS_AS(dot(ScalarField(2, 2), ScalarField(4, 1)), ShapeError);
    }
}

TEST_SUITE("pgm") {
    TEST_CASE("P2 2x2: first file row becomes the top grid row") {
        const auto img = read_pgm(bytes_of("P2\n2 2\n255\n0 255\n128 64\n"));
        REQUIRE(img.width() == 2);
        REQUIRE(img.height() == 2);
        CHECK(img(0, 1) == 0.0);
        CHECK(img(1, 1) == 1.0);
        CHECK(img(0, 0) == doctest::Approx(0.5019607843).epsilon(1e-10));
        CHECK(img(1, 0) == doctest::Approx(0.2509803922).epsilon(1e-10));
    }

    TEST_CASE("all-zero raster reads as zeros") {
        const auto img = read_pgm(bytes_of("P2 3 1 255 0 0 0"));
        for (double v : img.field().values()) CHECK(v == 0.0);
    }

    TEST_CASE("comments and other maxvals are accepted") {
        const auto img = read_pgm(bytes_of("P2\n# made by hand\n2 1 # trailing\n4\n1 4\n"));
        CHECK(img(0, 0) == 0.25);
        CHECK(img(1, 0) == 1.0);
    }

    TEST_CASE("P5 binary raster") {
        std::string s = "P5\n2 1\n255\n";
        s.push_back(static_cast<char>(51));
        s.push_back(static_cast<char>(255));
        const auto img = read_pgm(bytes_of(s));
        CHECK(img(0, 0) == doctest::Approx(0.2));
        CHECK(img(1, 0) == 1.0);
    }

    TEST_CASE("malformed streams raise typed errors") {
        CHECK(read_error("P6\n1 1\n255\n0") == PgmError::Kind::bad_magic);
        CHECK(read_error("") == PgmError::Kind::bad_magic);
        CHECK(read_error("P2\n1 1\n65535\n0") == PgmError::Kind::bad_maxval);
        CHECK(read_error("P2\n1 1\n0\n0") == PgmError::Kind::bad_maxval);
        CHECK(read_error("P2\n0 1\n255\n") == PgmError::Kind::bad_dimension);
        CHECK(read_error("P2\n-2 1\n255\n0 0") == PgmError::Kind::bad_dimension);
        CHECK(read_error("P2\n2 2\n255\n0 1 2") == PgmError::Kind::truncated);
        CHECK(read_error("P5\n4 1\n255\nab") == PgmError::Kind::truncated);
        CHECK(read_error("P2\n2") == PgmError::Kind::truncated);
        CHECK(read_error("P2\nx 1\n255\n0") == PgmError::Kind::malformed_header);
        CHECK(read_error("P2\n1 1\n100\n101") == PgmError::Kind::bad_sample);
    }

    TEST_CASE("writer emits P5 with rounded bytes") {
        const ImageGrid zero(2, 2, {0.0, 0.0, 0.0, 0.0});
        const auto bytes = write_pgm(zero);
        const std::string header = "P5\n2 2\n255\n";
        REQUIRE(bytes.size() == header.size() + 4);
        CHECK(std::string(bytes.begin(), bytes.begin() + header.size()) == header);
        for (std::size_t k = header.size(); k < bytes.size(); ++k) CHECK(bytes[k] == 0);

        const auto half = write_pgm(ImageGrid(1, 1, {0.5019607843}));
        CHECK(half.back() == 128);
    }

    TEST_CASE("round trip is within half a grey level") {
        const auto img = ImageGrid(testing::random_field(7, 5, 11, 0.0, 1.0));
        const auto back = read_pgm(write_pgm(img));
        CHECK(max_abs_diff(img.field(), back.field()) <= 1.0 / 510.0 + 1e-15);
    }

    TEST_CASE("8-bit images survive a round trip exactly") {
        const auto img = read_pgm(bytes_of("P2 3 2 255 0 17 255 128 64 3"));
        CHECK(read_pgm(write_pgm(img)) == img);
    }

    TEST_CASE("file helpers report io errors") {
        const auto dir = std::filesystem::temp_directory_path() / "agentseg_pgm_test";
        std::filesystem::create_directories(dir);
        const auto img = ImageGrid(testing::random_field(4, 3, 5, 0.0, 1.0));
        write_pgm_file(dir / "a.pgm", img);
        CHECK(max_abs_diff(read_pgm_file(dir / "a.pgm").field(), img.field()) <= 1.0 / 510.0);
        try {
            read_pgm_file(dir / "missing.pgm");
            FAIL("expected io error");
        } catch (const PgmError& e) {
            CHECK(e.kind() == PgmError::Kind::io);
        }
        std::filesystem::remove_all(dir);
    }
}

TEST_SUITE("operators") {
    TEST_CASE("gradient of a constant is zero") {
        const ScalarField u(4, 3, 0.7);
        const auto g = gradient(u, u.geometry());
        CHECK(max_abs(g.x) == 0.0);
        CHECK(max_abs(g.y) == 0.0);
    }

    TEST_CASE("gradient of i*hx is one except in the last column") {
        const auto geo = GridGeometry::for_shape(4, 4);
        ScalarField u(4, 4);
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) u(i, j) = geo.x(i);
        const auto g = gradient(u, geo);
        for (int j = 0; j < 4; ++j) {
            for (int i = 0; i < 4; ++i) {
                CHECK(g.x(i, j) == doctest::Approx(i == 3 ? 0.0 : 1.0));
                CHECK(g.y(i, j) == 0.0);
            }
        }
    }

    TEST_CASE("divergence of zero is zero") {
        const VectorField p(3, 5);
        CHECK(max_abs(divergence(p, GridGeometry::for_shape(3, 5))) == 0.0);
    }

    TEST_CASE("divergence is the negative adjoint of gradient on every shape up to 16x16") {
        double worst = 0.0;
        for (int w = 1; w <= 16; ++w) {
            for (int h = 1; h <= 16; ++h) {
                const auto geo = GridGeometry::for_shape(w, h);
                const auto u = random_field(w, h, 100 * w + h);
                const auto p = random_vector_field(w, h, 7 * w + 13 * h);
                const double lhs = dot(gradient(u, geo), p);
                const double rhs = -dot(u, divergence(p, geo));
                worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
            }
        }
        CHECK(worst <= 1e-12);
    }

    TEST_CASE("adjointness on a 5x7 field") {
        const auto geo = GridGeometry::for_shape(5, 7);
        const auto u = random_field(5, 7, 1);
        const auto p = random_vector_field(5, 7, 2);
        CHECK(std::abs(dot(gradient(u, geo), p) + dot(u, divergence(p, geo))) <= 1e-12);
    }

    TEST_CASE("laplacian of a constant is zero") {
        const ScalarField u(6, 4, 0.3);
        CHECK(max_abs(laplacian(u, u.geometry())) == 0.0);
    }

    TEST_CASE("laplacian of a linear field vanishes in interior columns") {
        const auto geo = GridGeometry::for_shape(6, 4);
        ScalarField u(6, 4);
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 6; ++i) u(i, j) = 0.2 + geo.x(i);
        const auto l = laplacian(u, geo);
        for (int j = 0; j < 4; ++j)
            for (int i = 1; i < 5; ++i) CHECK(std::abs(l(i, j)) <= 1e-9);
    }

    TEST_CASE("laplacian equals divergence of gradient everywhere") {
        for (int w : {1, 2, 5, 9}) {
            for (int h : {1, 3, 8}) {
                const auto geo = GridGeometry::for_shape(w, h);
                const auto u = random_field(w, h, 31 * w + h);
                const auto lap = laplacian(u, geo);
                CHECK(max_abs_diff(lap, divergence(gradient(u, geo), geo)) <=
                      1e-14 * std::max(1.0, max_abs(lap)));
            }
        }
    }

    TEST_CASE("laplacian is symmetric negative semidefinite") {
        const auto geo = GridGeometry::for_shape(9, 6);
        const auto u = random_field(9, 6, 3);
        const auto v = random_field(9, 6, 4);
        CHECK(std::abs(dot(laplacian(u, geo), v) - dot(u, laplacian(v, geo))) <= 1e-9);
        CHECK(dot(laplacian(u, geo), u) <= 0.0);
    }
}

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace agentseg {

// Base for every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numeric parameter is outside its admissible range (alpha <= 0, rho <= 0, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Two inputs that must agree in shape or length do not.
class ShapeError : public Error {
public:
    using Error::Error;
};

class IntegrationDiverged : public Error {
public:
    explicit IntegrationDiverged(std::size_t step)
        : Error("integration diverged: non-finite state at step " + std::to_string(step)),
          step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

} // namespace agentseg

#pragma once

#include <stdexcept>
#include <string>

namespace cascade {

/// Bad inputs: violated preconditions, malformed configs, out-of-range
/// parameters. The CLI maps these to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Failures of the numerics themselves (horizon exceeded, instability,
/// non-convergence). The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

class HorizonError : public NumericalError {
public:
    explicit HorizonError(const std::string& msg) : NumericalError(msg) {}
};

class InstabilityError : public NumericalError {
public:
    InstabilityError(const std::string& msg, double t_blowup)
        : NumericalError(msg), t_blowup_(t_blowup) {}
    double t_blowup() const { return t_blowup_; }

private:
    double t_blowup_;
};

}  // namespace cascade

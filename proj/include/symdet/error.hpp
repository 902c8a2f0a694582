#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symdet {

/// Base of every error raised by the library. Each subclass carries the
/// process exit code the command-line tool reports for it.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what, int exit_code = 1)
        : std::runtime_error(what), exit_code_(exit_code) {}

    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

/// Invalid argument or configuration value.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what, 2) {}
};

/// Two inputs that must agree in size do not.
class SizeMismatchError : public Error {
public:
    explicit SizeMismatchError(const std::string& what) : Error(what, 2) {}
};

/// Malformed input data. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what, 3), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Non-finite or escaping numerics: diverging iterates, overflowing costs.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(what, 4) {}
};

class DivergenceError : public NumericError {
public:
    DivergenceError(const std::string& what, long iterate = -1)
        : NumericError(iterate >= 0 ? what + " at iterate " + std::to_string(iterate) : what),
          iterate_(iterate) {}

    long iterate() const noexcept { return iterate_; }

private:
    long iterate_;
};

/// Analytic signal passes (numerically) through the origin, so the phase is undefined.
class DegeneratePhaseError : public NumericError {
public:
    explicit DegeneratePhaseError(std::size_t sample)
        : NumericError("degenerate phase: analytic signal vanishes at sample " + std::to_string(sample)),
          sample_(sample) {}

    std::size_t sample() const noexcept { return sample_; }

private:
    std::size_t sample_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what, 1) {}
};

}  // namespace symdet

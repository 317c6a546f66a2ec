#pragma once

#include <stdexcept>
#include <string>

namespace rlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point was handed to a map or generator outside the set where it is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A parameter violates its documented range (radius <= 0, t < 0, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Iteration produced non-finite values or failed to converge.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// The t-continuation of the resolvent collapsed before reaching the target time.
class NoSolutionError : public Error {
public:
    NoSolutionError(const std::string& what, double last_good_t)
        : Error(what), last_good_t_(last_good_t) {}

    double last_good_t() const noexcept { return last_good_t_; }

private:
    double last_good_t_;
};

/// 1 - t G'(z) vanished, so the resolvent is not locally invertible.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// The generator carries no classification from which a window can be derived.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// |f| is too small somewhere on a counting contour.
class ContourError : public Error {
public:
    using Error::Error;
};

/// Phase accumulation along a contour did not land near an integer.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// An ODE trajectory came within the truncation margin of the boundary.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, double t_reached)
        : Error(what), t_reached_(t_reached) {}

    double t_reached() const noexcept { return t_reached_; }

private:
    double t_reached_;
};

/// Input document does not match the expected schema; path is a JSON pointer.
class SchemaError : public ArgumentError {
public:
    SchemaError(const std::string& path, const std::string& what)
        : ArgumentError(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace rlab

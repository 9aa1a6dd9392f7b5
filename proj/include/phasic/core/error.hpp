#pragma once

#include <stdexcept>
#include <string>

namespace phasic {

/// Root of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Iterative solver stopped before reaching its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual, int iterations)
        : Error(what), residual_(residual), iterations_(iterations) {}

    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

/// Every row or every column of a region-of-interest crop was removed.
class EmptyRoiError : public Error {
public:
    EmptyRoiError(const std::string& what, std::string sample_id)
        : Error(what), sample_id_(std::move(sample_id)) {}

    const std::string& sample_id() const noexcept { return sample_id_; }

private:
    std::string sample_id_;
};

/// Inputs are inconsistent with each other (missing scores, duplicated keys...).
class DataIntegrityError : public Error {
public:
    using Error::Error;
};

/// Train/test separation of the evaluation protocol is broken.
class ProtocolViolation : public Error {
public:
    using Error::Error;
};

/// A rate is undefined because one class is absent from the labels.
class UndefinedMetricError : public Error {
public:
    using Error::Error;
};

/// Manifest or score-file row failed validation; carries the 1-based line number.
class IngestionError : public Error {
public:
    IngestionError(const std::string& what, std::size_t line)
        : Error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace phasic

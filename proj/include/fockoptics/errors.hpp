#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fockoptics {

/// Base class of every error raised by the simulator.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested photon number lies above the cutoff.
class CutoffExceeded : public Error {
public:
    using Error::Error;
};

/// The cutoff cannot hold the requested state within its tail budget.
class CutoffTooSmall : public Error {
public:
    CutoffTooSmall(const std::string& what, int required_n_max)
        : Error(what + " (required n_max = " + std::to_string(required_n_max) + ")"),
          required_n_max_(required_n_max) {}

    int required_n_max() const noexcept { return required_n_max_; }

private:
    int required_n_max_;
};

/// Two operands were built over different cutoffs.
class CutoffMismatch : public Error {
public:
    using Error::Error;
};

/// Normalization of an all-zero amplitude tensor.
class ZeroState : public Error {
public:
    using Error::Error;
};

/// Invalid scenario configuration; the message names the offending field.
class ConfigInvalid : public Error {
public:
    ConfigInvalid(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace fockoptics

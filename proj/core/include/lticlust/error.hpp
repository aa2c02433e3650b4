#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lticlust {

/// Malformed or inconsistent input: bad dimensions, bad ranges, unreadable files.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation could not be carried out on otherwise valid input.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The operation requires an asymptotically stable system.
class UnstableSystemError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Resolvent (sI - A) is singular at a requested frequency.
class SingularResolventError : public NumericalError {
public:
    SingularResolventError(double omega, const std::string& what)
        : NumericalError(what), omega_(omega) {}

    [[nodiscard]] double omega() const noexcept { return omega_; }

private:
    double omega_;
};

/// A pairwise computation inside a distance matrix failed.
class PairError : public NumericalError {
public:
    PairError(std::size_t i, std::size_t j, const std::string& what)
        : NumericalError("pair (" + std::to_string(i) + ", " + std::to_string(j) + "): " + what),
          first_(i), second_(j) {}

    [[nodiscard]] std::size_t first() const noexcept { return first_; }
    [[nodiscard]] std::size_t second() const noexcept { return second_; }

private:
    std::size_t first_;
    std::size_t second_;
};

/// A controller failed to stabilize one or more plants of a batch.
class StabilizationError : public NumericalError {
public:
    StabilizationError(std::vector<std::size_t> members, const std::string& what)
        : NumericalError(what), members_(std::move(members)) {}

    [[nodiscard]] const std::vector<std::size_t>& members() const noexcept { return members_; }

private:
    std::vector<std::size_t> members_;
};

}  // namespace lticlust

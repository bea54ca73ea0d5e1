#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace netrel {

// Generation pipeline failure; carries the stage that exhausted its retry budget.
class GenerationError : public std::runtime_error {
public:
    GenerationError(std::string stage, const std::string& message)
        : std::runtime_error(message), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

// Iterative solver did not reach its tolerance within the iteration cap.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& message, int iterations)
        : std::runtime_error(message), iterations_(iterations) {}

    int iterations() const noexcept { return iterations_; }

private:
    int iterations_;
};

// Design matrix is numerically rank deficient; names the dependent columns.
class RankDeficiencyError : public std::runtime_error {
public:
    RankDeficiencyError(const std::string& message, std::vector<std::string> columns)
        : std::runtime_error(message), columns_(std::move(columns)) {}

    const std::vector<std::string>& columns() const noexcept { return columns_; }

private:
    std::vector<std::string> columns_;
};

}  // namespace netrel

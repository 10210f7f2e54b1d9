#pragma once

#include <stdexcept>
#include <string>

namespace ilpk {

struct SingularMatrix : std::runtime_error {
    explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

struct NotPositiveDefinite : std::runtime_error {
    explicit NotPositiveDefinite(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidShape : std::runtime_error {
    explicit InvalidShape(const std::string& what) : std::runtime_error(what) {}
};

struct DegeneratePoints : std::runtime_error {
    explicit DegeneratePoints(const std::string& what) : std::runtime_error(what) {}
};

struct NonPositiveInput : std::runtime_error {
    explicit NonPositiveInput(const std::string& what) : std::runtime_error(what) {}
};

struct RankDeficient : std::runtime_error {
    explicit RankDeficient(const std::string& what) : std::runtime_error(what) {}
};

struct DimMismatch : std::runtime_error {
    explicit DimMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfRange : std::runtime_error {
    explicit OutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct LpInfeasible : std::runtime_error {
    explicit LpInfeasible(const std::string& what) : std::runtime_error(what) {}
};

struct LpUnbounded : std::runtime_error {
    explicit LpUnbounded(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct EscalationMismatch : std::runtime_error {
    explicit EscalationMismatch(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ilpk

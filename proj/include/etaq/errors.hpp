#pragma once

#include <stdexcept>
#include <string>

namespace etaq {

// Every failure the engine can signal carries a stable code string so the
// CLI can map it onto an exit status without string-matching messages.
class EtaqError : public std::runtime_error {
public:
    EtaqError(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct FieldMismatch : EtaqError {
    explicit FieldMismatch(const std::string& what) : EtaqError("FieldMismatch", what) {}
};

struct DivisionByZero : EtaqError {
    explicit DivisionByZero(const std::string& what) : EtaqError("DivisionByZero", what) {}
};

struct NonInvertibleLeadingTerm : EtaqError {
    explicit NonInvertibleLeadingTerm(const std::string& what)
        : EtaqError("NonInvertibleLeadingTerm", what) {}
};

struct FractionalGrid : EtaqError {
    explicit FractionalGrid(const std::string& what) : EtaqError("FractionalGrid", what) {}
};

struct ParityMismatch : EtaqError {
    explicit ParityMismatch(const std::string& what) : EtaqError("ParityMismatch", what) {}
};

struct ParityObstruction : EtaqError {
    explicit ParityObstruction(const std::string& what)
        : EtaqError("ParityObstruction", what) {}
};

struct DeltaNotDividingLevel : EtaqError {
    explicit DeltaNotDividingLevel(const std::string& what)
        : EtaqError("DeltaNotDividingLevel", what) {}
};

struct HypothesisViolation : EtaqError {
    explicit HypothesisViolation(const std::string& what)
        : EtaqError("HypothesisViolation", what) {}
};

struct RecipeEvaluationError : EtaqError {
    explicit RecipeEvaluationError(const std::string& what)
        : EtaqError("RecipeEvaluationError", what) {}
};

struct ResourceBudgetExceeded : EtaqError {
    explicit ResourceBudgetExceeded(const std::string& what)
        : EtaqError("ResourceBudgetExceeded", what) {}
};

struct TruncationExceeded : EtaqError {
    explicit TruncationExceeded(const std::string& what)
        : EtaqError("TruncationExceeded", what) {}
};

struct ParseError : EtaqError {
    ParseError(const std::string& what, std::size_t position)
        : EtaqError("ParseError", what + " (at position " + std::to_string(position) + ")"),
          position(position) {}

    std::size_t position;
};

}  // namespace etaq

#pragma once

#include <stdexcept>
#include <string>

namespace delone {

/// Base of every error raised by the library. `kind()` is a stable tag used by
/// the CLI to pick an exit code and by reports.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define DELONE_DEFINE_ERROR(Name)                                            \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name, what) {}       \
    }

DELONE_DEFINE_ERROR(InvalidArgument);
DELONE_DEFINE_ERROR(NonHyperbolicElement);
DELONE_DEFINE_ERROR(NoSolution);
DELONE_DEFINE_ERROR(VertexCycleFailure);
DELONE_DEFINE_ERROR(BudgetExceeded);
DELONE_DEFINE_ERROR(TripleCluster);
DELONE_DEFINE_ERROR(WindowTooSmall);
DELONE_DEFINE_ERROR(NotFoundWithinBudget);
DELONE_DEFINE_ERROR(NotSeparatedInput);
DELONE_DEFINE_ERROR(ParamOrder);
DELONE_DEFINE_ERROR(NotDeloneOnA);
DELONE_DEFINE_ERROR(SchemaViolation);

#undef DELONE_DEFINE_ERROR

}  // namespace delone

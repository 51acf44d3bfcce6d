#pragma once

#include <stdexcept>
#include <string>

namespace dwork {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    /// Structural failures mean the construction itself broke down, as opposed
    /// to a value mismatch. The CLI maps them to a distinct exit code.
    virtual bool structural() const { return false; }
};

#define DWORK_ERROR(Name, Structural)                                   \
    class Name : public Error {                                         \
    public:                                                             \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
        bool structural() const override { return Structural; }         \
    };

DWORK_ERROR(ZeroDenominator, false)
DWORK_ERROR(UnknownVariable, false)
DWORK_ERROR(ParseError, false)
DWORK_ERROR(Inconsistent, false)
DWORK_ERROR(Singular, false)
DWORK_ERROR(RelationMismatch, false)
DWORK_ERROR(OmegaInconsistent, true)
DWORK_ERROR(EliminationStuck, true)
DWORK_ERROR(NoSuchField, true)
DWORK_ERROR(Sl2Violation, false)
DWORK_ERROR(IndexOutOfRange, false)
DWORK_ERROR(ZeroScalar, false)
DWORK_ERROR(ActionShapeViolation, true)

#undef DWORK_ERROR

}  // namespace dwork

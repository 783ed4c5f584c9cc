// Error types shared across the library. Every throwing path uses one of
// these so the CLI can map failures to stable machine-readable names.
#pragma once

#include <stdexcept>
#include <string>

namespace glstab {

class Error : public std::runtime_error {
public:
    Error(std::string type, const std::string& msg)
        : std::runtime_error(msg), type_(std::move(type)) {}
    const std::string& type() const { return type_; }

private:
    std::string type_;
};

#define GLSTAB_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& msg) : Error(#Name, msg) {}     \
    }

GLSTAB_DEFINE_ERROR(FieldMismatch);
GLSTAB_DEFINE_ERROR(DivisionByZero);
GLSTAB_DEFINE_ERROR(DimensionMismatch);
GLSTAB_DEFINE_ERROR(NotSquare);
GLSTAB_DEFINE_ERROR(SingularMatrix);
GLSTAB_DEFINE_ERROR(NoSolution);
GLSTAB_DEFINE_ERROR(ZeroVector);
GLSTAB_DEFINE_ERROR(SingularInput);
GLSTAB_DEFINE_ERROR(DegreeZero);
GLSTAB_DEFINE_ERROR(BoundExceeded);
GLSTAB_DEFINE_ERROR(BudgetExceeded);
GLSTAB_DEFINE_ERROR(NotMaximalSingular);
GLSTAB_DEFINE_ERROR(DependentBasis);
GLSTAB_DEFINE_ERROR(NotIrreducible);
GLSTAB_DEFINE_ERROR(MinusOneIsSquare);
GLSTAB_DEFINE_ERROR(UnsupportedField);
GLSTAB_DEFINE_ERROR(BadInput);
GLSTAB_DEFINE_ERROR(ParseError);
GLSTAB_DEFINE_ERROR(WorkerFailure);
// An exact check contradicted a fact that holds for every certified
// preserver; never swallowed.
GLSTAB_DEFINE_ERROR(InternalAnomaly);

#undef GLSTAB_DEFINE_ERROR

} // namespace glstab

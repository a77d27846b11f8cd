#pragma once

#include <stdexcept>
#include <string>

namespace ramfield {

// Exit-code class of an error; the CLI maps these to process status.
enum class ErrorKind {
    invalid_input,
    precision,
    verification,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string name, const std::string& what)
        : std::runtime_error(what), kind_(kind), name_(std::move(name)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }

private:
    ErrorKind kind_;
    std::string name_;
};

#define RAMFIELD_DEFINE_ERROR(Name, Kind)                                   \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what)                              \
            : Error(ErrorKind::Kind, #Name, what) {}                        \
    };

RAMFIELD_DEFINE_ERROR(PrecisionExhausted, precision)
RAMFIELD_DEFINE_ERROR(InsufficientPrecision, precision)
RAMFIELD_DEFINE_ERROR(IncomparablePrecision, precision)
RAMFIELD_DEFINE_ERROR(DivisionByZero, invalid_input)
RAMFIELD_DEFINE_ERROR(NonUnitSubstitution, invalid_input)
RAMFIELD_DEFINE_ERROR(NonInvertibleLeadingTerm, invalid_input)
RAMFIELD_DEFINE_ERROR(DivergentComposition, invalid_input)
RAMFIELD_DEFINE_ERROR(DivergentSum, invalid_input)
RAMFIELD_DEFINE_ERROR(InvalidArgument, invalid_input)
RAMFIELD_DEFINE_ERROR(UnsupportedVariant, invalid_input)
RAMFIELD_DEFINE_ERROR(WindowTooSmall, invalid_input)
RAMFIELD_DEFINE_ERROR(LiftObstruction, verification)
RAMFIELD_DEFINE_ERROR(NotTotallyRamified, verification)
RAMFIELD_DEFINE_ERROR(NotGalois, verification)

#undef RAMFIELD_DEFINE_ERROR

}  // namespace ramfield

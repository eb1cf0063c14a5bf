#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace calibgeo {

// Base class for all numerical/domain failures raised by this library.
// `kind()` is a stable machine-readable name (used verbatim by the CLI).
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define CALIBGEO_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                       \
    public:                                                           \
        explicit Name(const std::string& what) : Error(#Name, what) {} \
    }

CALIBGEO_DEFINE_ERROR(NonFiniteValue);
CALIBGEO_DEFINE_ERROR(SingularDensity);
CALIBGEO_DEFINE_ERROR(NoConvergence);
CALIBGEO_DEFINE_ERROR(DegenerateCurve);
CALIBGEO_DEFINE_ERROR(VanishingGradient);
CALIBGEO_DEFINE_ERROR(EndpointMismatch);
CALIBGEO_DEFINE_ERROR(NotOnLevelCurve);
CALIBGEO_DEFINE_ERROR(CannotFitInDomain);
CALIBGEO_DEFINE_ERROR(ValidityViolated);
CALIBGEO_DEFINE_ERROR(DomainOutsideQuadrant);
CALIBGEO_DEFINE_ERROR(CauchyRiemannViolated);
CALIBGEO_DEFINE_ERROR(NonPositiveArgument);
CALIBGEO_DEFINE_ERROR(UnknownEntry);
CALIBGEO_DEFINE_ERROR(MaxStepsExceeded);

#undef CALIBGEO_DEFINE_ERROR

} // namespace calibgeo

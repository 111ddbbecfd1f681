#pragma once

#include <stdexcept>
#include <string>

namespace shapesphere {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define SHAPESPHERE_DEFINE_ERROR(Name)                 \
    struct Name : NumericalError {                     \
        explicit Name(const std::string& msg = #Name)  \
            : NumericalError(msg) {}                   \
    }

SHAPESPHERE_DEFINE_ERROR(NegativeSquaredDistance);
SHAPESPHERE_DEFINE_ERROR(DegenerateTriangle);
SHAPESPHERE_DEFINE_ERROR(CollisionSingularity);
SHAPESPHERE_DEFINE_ERROR(UnphysicalITriple);
SHAPESPHERE_DEFINE_ERROR(DegenerateForTheta);
SHAPESPHERE_DEFINE_ERROR(EclipseSingularity);
SHAPESPHERE_DEFINE_ERROR(SingularOnEquator);
SHAPESPHERE_DEFINE_ERROR(EclipseEncountered);
SHAPESPHERE_DEFINE_ERROR(PlanarUndefined);
SHAPESPHERE_DEFINE_ERROR(ProjectionMismatch);
SHAPESPHERE_DEFINE_ERROR(EclipseAmbiguity);
SHAPESPHERE_DEFINE_ERROR(CollisionPole);
SHAPESPHERE_DEFINE_ERROR(PoleChartSingularity);
SHAPESPHERE_DEFINE_ERROR(StepUnderflow);
SHAPESPHERE_DEFINE_ERROR(CuspSingularity);
SHAPESPHERE_DEFINE_ERROR(CriticalPointUndefined);
SHAPESPHERE_DEFINE_ERROR(CotangentBlowup);
SHAPESPHERE_DEFINE_ERROR(OrderTooHigh);
SHAPESPHERE_DEFINE_ERROR(InsufficientApproach);
SHAPESPHERE_DEFINE_ERROR(SingularAtBoundary);
SHAPESPHERE_DEFINE_ERROR(ConfigError);

#undef SHAPESPHERE_DEFINE_ERROR

} // namespace shapesphere

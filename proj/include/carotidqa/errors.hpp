#pragma once

#include <stdexcept>
#include <string>

namespace cqa {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// volume
struct DegenerateIntensity : Error { using Error::Error; };
struct FormatError : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct OutOfBounds : Error { using Error::Error; };

// phantom
struct GeometryOverflow : Error { using Error::Error; };
struct CenterOutsideLumen : Error { using Error::Error; };

// predictor
struct ShapeMismatch : Error { using Error::Error; };
struct UntrainedModel : Error { using Error::Error; };
struct NoEdgeFound : Error { using Error::Error; };
struct AllRaysFailed : Error { using Error::Error; };
struct EmptyDataset : Error { using Error::Error; };
struct NonFiniteLoss : Error { using Error::Error; };
struct GradientMismatch : Error { using Error::Error; };

// uncertainty
struct MixedGeometry : Error { using Error::Error; };
struct CenterOutsideMember : Error { using Error::Error; };
struct DegenerateFit : Error { using Error::Error; };

// qa
struct SelfIntersecting : Error { using Error::Error; };
struct InsufficientGroups : Error { using Error::Error; };

// cli / pipeline
struct ConfigError : Error { using Error::Error; };
struct MissingArtifact : Error { using Error::Error; };

} // namespace cqa

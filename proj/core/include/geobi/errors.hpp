#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace geobi {

/// Base class for all geobi errors. Catching this distinguishes data
/// problems (bad input, bad geometry) from programming errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// geo
class MalformedWkt : public Error { public: using Error::Error; };
class OutOfRangeCoordinate : public Error { public: using Error::Error; };
class SridMismatch : public Error { public: using Error::Error; };
class InvalidPolygon : public Error { public: using Error::Error; };
class UnsupportedRegion : public Error { public: using Error::Error; };

// spatial index
class PointOutOfBounds : public Error { public: using Error::Error; };
class DuplicateId : public Error { public: using Error::Error; };

// pso / objectives
class DimensionMismatch : public Error { public: using Error::Error; };
class InvalidConfig : public Error { public: using Error::Error; };
class AllParticlesInvalid : public Error { public: using Error::Error; };
class UnboundedVariable : public Error { public: using Error::Error; };

// hierarchy
class DuplicateEmpId : public Error { public: using Error::Error; };
class UnknownId : public Error { public: using Error::Error; };

class CycleDetected : public Error {
public:
    CycleDetected(std::string message, std::vector<std::uint64_t> cycle_ids)
        : Error(std::move(message)), ids(std::move(cycle_ids)) {}

    /// Ids that lie on a manager cycle.
    std::vector<std::uint64_t> ids;
};

// io / cli
class MissingHeader : public Error { public: using Error::Error; };
class EmptyFile : public Error { public: using Error::Error; };
class EmptyAddress : public Error { public: using Error::Error; };
class IoFailure : public Error { public: using Error::Error; };
class EmptyScene : public Error { public: using Error::Error; };
class MalformedIndexFile : public Error { public: using Error::Error; };

}  // namespace geobi

#pragma once

#include <stdexcept>
#include <string>

namespace analogmp {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NotNormalized : Error {
  explicit NotNormalized(const std::string& w) : Error(w) {}
};
struct NegativeWeight : Error {
  explicit NegativeWeight(const std::string& w) : Error(w) {}
};
struct FiberSizeMismatch : Error {
  explicit FiberSizeMismatch(const std::string& w) : Error(w) {}
};
struct NoGeodesic : Error {
  explicit NoGeodesic(const std::string& w) : Error(w) {}
};
struct OutOfDomain : Error {
  explicit OutOfDomain(const std::string& w) : Error(w) {}
};
struct EndpointMismatch : Error {
  explicit EndpointMismatch(const std::string& w) : Error(w) {}
};
struct SupportTooLarge : Error {
  explicit SupportTooLarge(const std::string& w) : Error(w) {}
};
struct PartitionNotUnity : Error {
  explicit PartitionNotUnity(const std::string& w) : Error(w) {}
};
struct RuleOutsideDomain : Error {
  explicit RuleOutsideDomain(const std::string& w) : Error(w) {}
};
struct BasepointMismatch : Error {
  explicit BasepointMismatch(const std::string& w) : Error(w) {}
};
struct EquivarianceViolation : Error {
  explicit EquivarianceViolation(const std::string& w) : Error(w) {}
};
struct ArityMismatch : Error {
  explicit ArityMismatch(const std::string& w) : Error(w) {}
};
struct InfiniteOrder : Error {
  explicit InfiniteOrder(const std::string& w) : Error(w) {}
};
struct UnknownPlanner : Error {
  explicit UnknownPlanner(const std::string& w) : Error(w) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(w) {}
};

}  // namespace analogmp

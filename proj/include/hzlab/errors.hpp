#ifndef HZLAB_ERRORS_HPP
#define HZLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hzlab {

/// Precondition or parameter-range violation.
struct ContractViolation : std::invalid_argument {
  explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// Kernel evaluated on a singular plane or at a singular point.
struct SingularityError : std::domain_error {
  explicit SingularityError(const std::string& what) : std::domain_error(what) {}
};

/// A sampled value came out non-finite.
struct SamplingError : std::runtime_error {
  explicit SamplingError(const std::string& what) : std::runtime_error(what) {}
};

/// A dilation sweep pushed the test function support outside its grid box.
struct SupportError : std::runtime_error {
  explicit SupportError(const std::string& what) : std::runtime_error(what) {}
};

/// An exhaustive computation was refused because it would be too expensive.
struct RefusalError : std::runtime_error {
  explicit RefusalError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ContractViolation(what);
}

}  // namespace hzlab

#endif

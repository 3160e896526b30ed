#ifndef SQUEEZE_ERRORS_HPP
#define SQUEEZE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace squeeze {

// Every failure mode that callers (and the CLI) dispatch on carries a stable
// name; the CLI prints the name on stderr and exits 2.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

#define SQUEEZE_DEFINE_ERROR(E)                                    \
  class E : public Error {                                         \
   public:                                                         \
    explicit E(const std::string& what) : Error(#E, what) {}       \
  }

SQUEEZE_DEFINE_ERROR(InvalidInput);
SQUEEZE_DEFINE_ERROR(NotOnBoundary);
SQUEEZE_DEFINE_ERROR(NonSmoothKind);
SQUEEZE_DEFINE_ERROR(UnboundedDomain);
SQUEEZE_DEFINE_ERROR(UnboundedSlice);
SQUEEZE_DEFINE_ERROR(SingularPoint);
SQUEEZE_DEFINE_ERROR(SingularAffine);
SQUEEZE_DEFINE_ERROR(EnvelopeViolation);
SQUEEZE_DEFINE_ERROR(ZeroNotInImage);
SQUEEZE_DEFINE_ERROR(SingularOnClosure);
SQUEEZE_DEFINE_ERROR(NonUniqueNearestPoint);
SQUEEZE_DEFINE_ERROR(NotSphericallyExtreme);
SQUEEZE_DEFINE_ERROR(NotStronglyConvex);
SQUEEZE_DEFINE_ERROR(PointExited);
SQUEEZE_DEFINE_ERROR(InclusionViolated);
SQUEEZE_DEFINE_ERROR(ReplayMismatch);

#undef SQUEEZE_DEFINE_ERROR

}  // namespace squeeze

#endif

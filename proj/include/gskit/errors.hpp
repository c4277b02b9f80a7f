#pragma once

#include <stdexcept>
#include <string>

namespace gskit {

/// Base of every error raised by the toolkit. `kind()` is a stable tag used
/// by the CLI to map failures onto exit codes and JSON reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define GSKIT_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(#Name, what) {}      \
  };

GSKIT_DEFINE_ERROR(DomainError)
GSKIT_DEFINE_ERROR(NotAnEquilibrium)
GSKIT_DEFINE_ERROR(SingularParameter)
GSKIT_DEFINE_ERROR(NotOnHopfCurve)
GSKIT_DEFINE_ERROR(ZeroPolynomial)
GSKIT_DEFINE_ERROR(SeedInvalid)
GSKIT_DEFINE_ERROR(StepUnderflow)
GSKIT_DEFINE_ERROR(DomainExit)
GSKIT_DEFINE_ERROR(NoReturn)
GSKIT_DEFINE_ERROR(NewtonDiverged)
GSKIT_DEFINE_ERROR(SaddleMissing)
GSKIT_DEFINE_ERROR(SectionMiss)
GSKIT_DEFINE_ERROR(BracketNotFound)
GSKIT_DEFINE_ERROR(ConfigError)

#undef GSKIT_DEFINE_ERROR

}  // namespace gskit

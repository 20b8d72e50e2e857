#pragma once

#include <stdexcept>
#include <string>

namespace jpr {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define JPR_ERROR(Name)                                                        \
  struct Name : Error {                                                        \
    using Error::Error;                                                        \
  }

JPR_ERROR(DeterminantError);
JPR_ERROR(DimensionError);
JPR_ERROR(OverflowError);
JPR_ERROR(TruncationError);
JPR_ERROR(QuadratureError);
JPR_ERROR(PoleProximityError);
JPR_ERROR(DerivativeError);
JPR_ERROR(MissingGeneratorError);
JPR_ERROR(DuplicateNameError);
JPR_ERROR(ContextMismatchError);
JPR_ERROR(PreconditionError);
JPR_ERROR(ConfigError);
JPR_ERROR(UnknownFunctionError);

#undef JPR_ERROR

} // namespace jpr

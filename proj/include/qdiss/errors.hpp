#pragma once

#include <stdexcept>
#include <string>

namespace qdiss {

// Base for all library errors. The CLI maps ConfigError to exit code 2 and
// everything else derived from Error to exit code 3.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

#define QDISS_DEFINE_ERROR(NAME)                              \
  class NAME : public Error {                                 \
   public:                                                    \
    explicit NAME(const std::string& msg) : Error(msg) {}     \
  }

QDISS_DEFINE_ERROR(NotHermitianError);
QDISS_DEFINE_ERROR(NotPsdError);
QDISS_DEFINE_ERROR(NumericalFailureError);
QDISS_DEFINE_ERROR(DimMismatchError);
QDISS_DEFINE_ERROR(DimTooLargeError);
QDISS_DEFINE_ERROR(DegenerateGapError);
QDISS_DEFINE_ERROR(WindowInvertedError);
QDISS_DEFINE_ERROR(EvenFoldFactorError);
QDISS_DEFINE_ERROR(WrongFoldFactorsError);
QDISS_DEFINE_ERROR(DegenerateDataError);
QDISS_DEFINE_ERROR(NonUnitaryElementError);

#undef QDISS_DEFINE_ERROR

}  // namespace qdiss

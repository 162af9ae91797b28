#pragma once

#include <stdexcept>
#include <string>

namespace qcoh {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QCOH_DEFINE_ERROR(Name)          \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

QCOH_DEFINE_ERROR(NonHermitian);
QCOH_DEFINE_ERROR(NonSquare);
QCOH_DEFINE_ERROR(NotPSD);
QCOH_DEFINE_ERROR(BadSubsystem);
QCOH_DEFINE_ERROR(DimensionMismatch);
QCOH_DEFINE_ERROR(BadExcitation);
QCOH_DEFINE_ERROR(BadAmplitudes);
QCOH_DEFINE_ERROR(BadMixingWeight);
QCOH_DEFINE_ERROR(ValidationError);
QCOH_DEFINE_ERROR(ParseError);
QCOH_DEFINE_ERROR(DimensionOne);
QCOH_DEFINE_ERROR(OptimizerNotConverged);
QCOH_DEFINE_ERROR(UnknownCombination);
QCOH_DEFINE_ERROR(TooFewParties);
QCOH_DEFINE_ERROR(OutOfRegime);
QCOH_DEFINE_ERROR(ConfigError);

#undef QCOH_DEFINE_ERROR

}  // namespace qcoh

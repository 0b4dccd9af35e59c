#pragma once

#include <stdexcept>
#include <string>

namespace ofdma {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define OFDMA_ERROR(name)                  \
  class name : public Error {              \
  public:                                  \
    using Error::Error;                    \
  }

OFDMA_ERROR(ConstraintViolation);
OFDMA_ERROR(KindMismatch);
OFDMA_ERROR(InvalidParam);
OFDMA_ERROR(DimensionMismatch);
OFDMA_ERROR(DomainError);
OFDMA_ERROR(QuadratureFailure);
OFDMA_ERROR(BracketFailure);
OFDMA_ERROR(NoRoot);
OFDMA_ERROR(BudgetExceeded);
OFDMA_ERROR(FamilyMismatch);
OFDMA_ERROR(Infeasible);
OFDMA_ERROR(NoSolution);
OFDMA_ERROR(IndexError);
OFDMA_ERROR(ConfigError);
OFDMA_ERROR(IoError);

#undef OFDMA_ERROR

} // namespace ofdma

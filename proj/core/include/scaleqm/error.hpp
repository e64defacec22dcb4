#pragma once

#include <stdexcept>
#include <string>

namespace scaleqm {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SCALEQM_DEFINE_ERROR(Name)            \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  }

/// A structure scale was zero or not finite.
SCALEQM_DEFINE_ERROR(InvalidScaleError);
/// A value that must be finite was NaN or infinite.
SCALEQM_DEFINE_ERROR(InvalidValueError);
SCALEQM_DEFINE_ERROR(DivisionByZeroError);
/// A natural number is not in the requested subset N_m.
SCALEQM_DEFINE_ERROR(NotAMemberError);
/// Field operations were attempted between two different structures.
SCALEQM_DEFINE_ERROR(StructureMismatchError);
/// Dimension, grid, or tensor extents do not agree.
SCALEQM_DEFINE_ERROR(ShapeError);
SCALEQM_DEFINE_ERROR(FieldConstructionError);
/// An analytic field spec does not wrap around the periodic grid.
SCALEQM_DEFINE_ERROR(PeriodicityError);
/// A scaled/unscaled precondition on a state was violated.
SCALEQM_DEFINE_ERROR(ContractError);
SCALEQM_DEFINE_ERROR(ArityError);
/// The requested dense operator or tensor exceeds the size budget.
SCALEQM_DEFINE_ERROR(ResourceError);
/// An iterative numerical routine failed to converge.
SCALEQM_DEFINE_ERROR(NumericError);

#undef SCALEQM_DEFINE_ERROR

}  // namespace scaleqm

#pragma once

#include <stdexcept>
#include <string>

namespace darkcavity {

// Precondition violations (bad grids, bad angles, malformed configs).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

class DarkcavityError : public std::runtime_error {
 public:
  explicit DarkcavityError(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation of a raw tabulated model at complex argument; fit it first.
class NonContinuableModel : public DarkcavityError {
 public:
  using DarkcavityError::DarkcavityError;
};

class FitDiverged : public DarkcavityError {
 public:
  using DarkcavityError::DarkcavityError;
};

class NoConvergence : public DarkcavityError {
 public:
  using DarkcavityError::DarkcavityError;
};

class NoStablePoles : public DarkcavityError {
 public:
  using DarkcavityError::DarkcavityError;
};

class NoTransitionState : public DarkcavityError {
 public:
  using DarkcavityError::DarkcavityError;
};

class GridMismatch : public DarkcavityError {
 public:
  using DarkcavityError::DarkcavityError;
};

class DimensionCap : public DarkcavityError {
 public:
  using DarkcavityError::DarkcavityError;
};

class OffResonance : public DarkcavityError {
 public:
  using DarkcavityError::DarkcavityError;
};

class ClosedFormMismatch : public DarkcavityError {
 public:
  using DarkcavityError::DarkcavityError;
};

class DegenerateWidths : public DarkcavityError {
 public:
  using DarkcavityError::DarkcavityError;
};

// Raised when no dynamical-barrier pole lies below the transition state, so
// the cavity has no photon-emission channel to couple.
class NoEmissionChannel : public DarkcavityError {
 public:
  using DarkcavityError::DarkcavityError;
};

class IoError : public DarkcavityError {
 public:
  using DarkcavityError::DarkcavityError;
};

}  // namespace darkcavity

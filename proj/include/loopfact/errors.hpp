#pragma once

#include <stdexcept>
#include <string>

namespace loopfact {

/// Base class for every structured failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed caller input: bad rank, size mismatch, index out of range,
/// unparsable file.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A word in the simple reflections stopped being reduced at `index`
/// (the label of the offending letter).
class NotReducedError : public Error {
 public:
  NotReducedError(int index, const std::string& what)
      : Error(what), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// A sequence does not reach far enough for the requested computation.
class SequenceTooShort : public Error {
 public:
  SequenceTooShort(int required, const std::string& what)
      : Error(what), required_(required) {}
  int required_length() const noexcept { return required_; }

 private:
  int required_;
};

/// The k-th leading principal minor vanishes (k is 1-based).
class VanishingMinorError : public Error {
 public:
  VanishingMinorError(int k, const std::string& what)
      : Error(what), k_(k) {}
  int minor_index() const noexcept { return k_; }

 private:
  int k_;
};

/// A loop fails the admissibility precondition of the triangular
/// factorization; `representation` is the fundamental representation
/// index (1-based) whose minor is at fault.
class AdmissibilityError : public Error {
 public:
  AdmissibilityError(int representation, const std::string& what)
      : Error(what), representation_(representation) {}
  int representation() const noexcept { return representation_; }

 private:
  int representation_;
};

/// Input expected to be unitary on the circle is not.
class NotUnitaryError : public Error {
 public:
  NotUnitaryError(double residual, const std::string& what)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A numerical procedure could not reach its tolerance. `index` names
/// the step (factor index, coordinate index) where it got stuck.
class ConvergenceError : public Error {
 public:
  ConvergenceError(int index, double residual, const std::string& what)
      : Error(what), index_(index), residual_(residual) {}
  int index() const noexcept { return index_; }
  double residual() const noexcept { return residual_; }

 private:
  int index_;
  double residual_;
};

/// A logarithm expected in the span of a root-vector basis is not; the
/// residual is the largest coefficient left after projection.
class NotInSpanError : public Error {
 public:
  NotInSpanError(double residual, const std::string& what)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Any fundamental coefficient |sigma_j| fell below the representable range.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace loopfact

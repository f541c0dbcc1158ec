#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>
#include <cstdint>

namespace conegauge {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatch, dependent basis, bad ranges.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotInSpan : public Error {
 public:
  NotInSpan() : Error("point is not in the span of the basis") {}
};

class NotMember : public Error {
 public:
  using Error::Error;
};

class NotInteriorPoint : public Error {
 public:
  NotInteriorPoint() : Error("point is not in the relative interior of the cone") {}
};

class NoNontrivialHom : public Error {
 public:
  NoNontrivialHom() : Error("homomorphism vanishes on every generator") {}
};

class NotInSStar : public Error {
 public:
  explicit NotInSStar(long cap)
      : Error("no natural k <= " + std::to_string(cap) + " with k*x in S") {}
};

/// A supplied map is not additive; carries the offending point, the supplied
/// image and the image implied by linearity.
class NotAHomomorphism : public Error {
 public:
  NotAHomomorphism(std::string point, std::string supplied, std::string implied)
      : Error("not a homomorphism at " + point + ": supplied " + supplied +
              ", linear extension gives " + implied),
        point_(std::move(point)),
        supplied_(std::move(supplied)),
        implied_(std::move(implied)) {}

  const std::string& point() const noexcept { return point_; }
  const std::string& supplied() const noexcept { return supplied_; }
  const std::string& implied() const noexcept { return implied_; }

 private:
  std::string point_, supplied_, implied_;
};

/// A residue class of S intersected with the cone is provably nonempty but no
/// representative was found inside the verification window.
class IncompleteWindow : public Error {
 public:
  explicit IncompleteWindow(std::vector<std::int64_t> residue)
      : Error("window too small: residue class without representative"),
        residue_(std::move(residue)) {}

  const std::vector<std::int64_t>& residue() const noexcept { return residue_; }

 private:
  std::vector<std::int64_t> residue_;
};

/// Box refinement for first-passage time exceeded the configured limit.
class BoxLimit : public Error {
 public:
  BoxLimit(double upper_bound, long radius)
      : Error("box limit reached at radius " + std::to_string(radius) +
              " (upper bound " + std::to_string(upper_bound) + ")"),
        upper_bound_(upper_bound) {}

  double upper_bound() const noexcept { return upper_bound_; }

 private:
  double upper_bound_;
};

class SequenceOutOfSemigroup : public Error {
 public:
  explicit SequenceOutOfSemigroup(long n)
      : Error("sequence leaves the semigroup at n = " + std::to_string(n)), n_(n) {}

  long index() const noexcept { return n_; }

 private:
  long n_;
};

}  // namespace conegauge

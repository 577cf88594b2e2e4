#pragma once

#include <stdexcept>
#include <string>

namespace catbreed {

// Base for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Raised when a state vanishes (norm below the zero threshold).
class ZeroStateError : public Error {
 public:
  explicit ZeroStateError(double norm_sq)
      : Error("zero state: norm_sq = " + std::to_string(norm_sq)), norm_sq_(norm_sq) {}
  double norm_sq() const noexcept { return norm_sq_; }

 private:
  double norm_sq_;
};

// A heralding outcome whose probability is (numerically) zero.
class ZeroProbabilityError : public Error {
 public:
  ZeroProbabilityError(int m, double probability)
      : Error("zero-probability herald at m = " + std::to_string(m) +
              " (p = " + std::to_string(probability) + ")"),
        m_(m),
        probability_(probability) {}
  int m() const noexcept { return m_; }
  double probability() const noexcept { return probability_; }

 private:
  int m_;
  double probability_;
};

// Precondition failures, e.g. an unnormalized state passed where a ray is required.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class NoPeakError : public Error {
 public:
  using Error::Error;
};

// Fock truncation too small for the state it is asked to hold.
class AdequacyError : public Error {
 public:
  AdequacyError(const std::string& what, double tail_mass) : Error(what), tail_mass_(tail_mass) {}
  double tail_mass() const noexcept { return tail_mass_; }

 private:
  double tail_mass_;
};

// No sweep row satisfies the requested constraints.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, double best_alpha3) : Error(what), best_alpha3_(best_alpha3) {}
  double best_alpha3() const noexcept { return best_alpha3_; }

 private:
  double best_alpha3_;
};

}  // namespace catbreed

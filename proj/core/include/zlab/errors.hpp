#pragma once

#include <stdexcept>
#include <string>

namespace zlab {

// Base of every error the library throws. Each subtype maps onto one
// documented CLI exit code (see tools/zlab.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation at a pole (Gamma at non-positive integers, zeta at s = 1, ...).
class PoleError : public Error {
 public:
  using Error::Error;
};

// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An internal error bound exceeded the requested tolerance.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

// A table or memory budget is too small for the request.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A Mellin-type integral was requested outside its convergence regime.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A least-squares fit left residuals above the acceptance threshold.
class FitError : public Error {
 public:
  using Error::Error;
};

// The quadrature evaluation budget ran out before the tolerance was met.
// Carries the best estimate available at that point.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, double best_re, double best_im, double err)
      : Error(what), best_re_(best_re), best_im_(best_im), err_(err) {}

  double best_re() const { return best_re_; }
  double best_im() const { return best_im_; }
  double error_estimate() const { return err_; }

 private:
  double best_re_;
  double best_im_;
  double err_;
};

}  // namespace zlab

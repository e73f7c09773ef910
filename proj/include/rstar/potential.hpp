#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rstar/rational.hpp"

namespace rstar {

/// Arguments x_1, x_2, ... of an ordinary potential polynomial (1-indexed).
class PotentialArgs {
 public:
  PotentialArgs() = default;
  explicit PotentialArgs(std::vector<Rational> xs) : xs_(std::move(xs)) {}

  std::size_t size() const noexcept { return xs_.size(); }
  /// x_j for 1 <= j <= size().
  const Rational& operator()(std::size_t j) const { return xs_.at(j - 1); }
  std::span<const Rational> values() const noexcept { return xs_; }

 private:
  std::vector<Rational> xs_;
};

/// A_{mu,n}(x_1, ..., x_n): the coefficient of z^n in (1 + sum_j x_j z^j)^mu.
/// Entries of `args` beyond n are ignored; throws DomainError if fewer than n
/// are supplied.
Rational potential_poly(unsigned mu, std::size_t n, const PotentialArgs& args);

/// A_{mu,0}, ..., A_{mu,n} in one pass; valid for any rational exponent.
std::vector<Rational> potential_poly_row(const Rational& mu, std::size_t n,
                                         std::span<const Rational> xs);

}  // namespace rstar

#ifndef SPISO_HYPOTHESIS_HPP
#define SPISO_HYPOTHESIS_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "spiso/numstats.hpp"

namespace spiso {

struct Lag {
  double h1 = 0.0;
  double h2 = 0.0;
};

// The k spatial lags at which the semivariogram is estimated. Since
// gamma(h) = gamma(-h), negated duplicates are rejected along with exact
// duplicates and the zero lag.
class LagSet {
 public:
  LagSet() = default;  // empty placeholder; validated sets come from create()
  static LagSet create(std::vector<Lag> lags);

  std::size_t size() const { return lags_.size(); }
  const std::vector<Lag>& lags() const { return lags_; }
  const Lag& operator[](std::size_t i) const { return lags_[i]; }

 private:
  std::vector<Lag> lags_;
};

// Full-row-rank r x k matrix of contrasts; each row sums to zero so that
// A gamma = 0 contrasts semivariogram values against each other.
class ContrastMatrix {
 public:
  static ContrastMatrix create(Matrix entries);

  const Matrix& entries() const { return entries_; }
  std::size_t row_count() const { return entries_.rows(); }
  std::size_t col_count() const { return entries_.cols(); }

 private:
  ContrastMatrix() = default;
  Matrix entries_;
};

// Checks that A matches the lag set and is a valid contrast system;
// returns (k, r) where r is the chi-square degrees of freedom.
std::pair<std::size_t, std::size_t> validate_hypothesis(const LagSet& lagset,
                                                        const ContrastMatrix& a);

}  // namespace spiso

#endif

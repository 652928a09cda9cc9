#include "spiso/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spiso/errors.hpp"

namespace spiso {

LagSet LagSet::create(std::vector<Lag> lags) {
  if (lags.size() < 2)
    throw ValidationError("lag set: at least 2 lags required");
  for (std::size_t i = 0; i < lags.size(); ++i) {
    if (lags[i].h1 == 0.0 && lags[i].h2 == 0.0)
      throw ValidationError("lag set: zero lag at position " + std::to_string(i));
    for (std::size_t j = 0; j < i; ++j) {
      if (lags[i].h1 == lags[j].h1 && lags[i].h2 == lags[j].h2)
        throw ValidationError("lag set: duplicate lag at positions " + std::to_string(j) +
                              " and " + std::to_string(i));
      if (lags[i].h1 == -lags[j].h1 && lags[i].h2 == -lags[j].h2)
        throw ValidationError("lag set: lag at position " + std::to_string(i) +
                              " is the negation of position " + std::to_string(j) +
                              " (gamma(h) = gamma(-h) makes it redundant)");
    }
  }
  LagSet ls;
  ls.lags_ = std::move(lags);
  return ls;
}

ContrastMatrix ContrastMatrix::create(Matrix entries) {
  if (entries.rows() == 0 || entries.cols() == 0)
    throw ValidationError("contrast matrix: empty");
  if (entries.rows() > entries.cols())
    throw ValidationError("contrast matrix: more rows than columns");
  for (std::size_t i = 0; i < entries.rows(); ++i) {
    double sum = 0.0, maxabs = 0.0;
    for (std::size_t j = 0; j < entries.cols(); ++j) {
      sum += entries(i, j);
      maxabs = std::max(maxabs, std::fabs(entries(i, j)));
    }
    if (maxabs == 0.0)
      throw ValidationError("contrast matrix: row " + std::to_string(i) + " is all zero");
    if (std::fabs(sum) > 1e-9 * maxabs)
      throw ValidationError("contrast matrix: row " + std::to_string(i) +
                            " does not sum to zero (sum = " + std::to_string(sum) + ")");
  }
  // full row rank: singular values from the eigenvalues of A A^T
  Matrix gram = matmul(entries, entries.transposed());
  std::vector<double> ev = sym_eigenvalues(gram);
  const double smax = std::sqrt(std::max(0.0, ev.back()));
  const double smin = std::sqrt(std::max(0.0, ev.front()));
  if (!(smin > 1e-10 * smax))
    throw ValidationError("contrast matrix: rank deficient (smallest singular value " +
                          std::to_string(smin) + " vs largest " + std::to_string(smax) + ")");
  ContrastMatrix a;
  a.entries_ = std::move(entries);
  return a;
}

std::pair<std::size_t, std::size_t> validate_hypothesis(const LagSet& lagset,
                                                        const ContrastMatrix& a) {
  if (a.col_count() != lagset.size())
    throw ValidationError("hypothesis: contrast matrix has " +
                          std::to_string(a.col_count()) + " columns but the lag set has " +
                          std::to_string(lagset.size()) + " lags");
  return {lagset.size(), a.row_count()};
}

}  // namespace spiso

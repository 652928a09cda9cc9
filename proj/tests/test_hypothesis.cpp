#include "doctest.h"

#include "spiso/errors.hpp"
#include "spiso/hypothesis.hpp"

using namespace spiso;

namespace {

// Lambda of the standard four-lag set and its two-row contrast matrix.
LagSet standard_lags() {
  return LagSet::create({{1, 0}, {0, 1}, {1, 1}, {-1, 1}});
}

ContrastMatrix standard_contrasts() {
  Matrix a(2, 4);
  a(0, 0) = 1.0;
  a(0, 1) = -1.0;
  a(1, 2) = 1.0;
  a(1, 3) = -1.0;
  return ContrastMatrix::create(std::move(a));
}

}  // namespace

TEST_CASE("standard lag set and contrasts give (k, r) = (4, 2)") {
  const auto [k, r] = validate_hypothesis(standard_lags(), standard_contrasts());
  CHECK(k == 4);
  CHECK(r == 2);
}

TEST_CASE("lag set rejects zero, duplicate, and negated lags") {
  CHECK_THROWS_AS(LagSet::create({{0, 0}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(LagSet::create({{1, 0}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(LagSet::create({{1, 0}, {-1, 0}}), ValidationError);
  CHECK_THROWS_AS(LagSet::create({{1, 0}}), ValidationError);
}

TEST_CASE("rank-deficient contrast matrices are rejected") {
  Matrix a(2, 4);
  a(0, 0) = 1.0;
  a(0, 1) = -1.0;
  a(1, 0) = 1.0;
  a(1, 1) = -1.0;  // identical rows
  CHECK_THROWS_AS(ContrastMatrix::create(std::move(a)), ValidationError);
}

TEST_CASE("rows must sum to zero") {
  Matrix a(1, 4);
  a(0, 0) = 1.0;
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(ContrastMatrix::create(std::move(a)), ValidationError);
}

TEST_CASE("column count must match the lag set") {
  Matrix a(1, 3);
  a(0, 0) = 1.0;
  a(0, 1) = -1.0;
  const ContrastMatrix c = ContrastMatrix::create(std::move(a));
  CHECK_THROWS_AS(validate_hypothesis(standard_lags(), c), ValidationError);
}

TEST_CASE("more rows than columns is rejected") {
  Matrix a(3, 2);
  for (int i = 0; i < 3; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = -1.0;
  }
  CHECK_THROWS_AS(ContrastMatrix::create(std::move(a)), ValidationError);
}

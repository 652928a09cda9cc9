#ifndef SPISO_DETREND_HPP
#define SPISO_DETREND_HPP

#include <vector>

#include "spiso/dataset.hpp"

namespace spiso {

// Ordinary-least-squares polynomial surface in x and y (all monomials
// x^i y^j with i + j <= degree); returns the residuals. degree in {1, 2, 3}.
std::vector<double> polynomial_detrend(const SpatialDataset& data, int degree);

}  // namespace spiso

#endif

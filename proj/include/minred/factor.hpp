#pragma once

#include <map>

#include "minred/mat2.hpp"

namespace minred {

/// Prime factorization of n > 0: trial division to 10^6, then Brent-cycle
/// Pollard rho on the remaining cofactor. A composite cofactor wider than 128
/// bits raises DomainError(factorization_failure).
std::map<Int, int> factorize(Int n);

/// p-adic valuation of x != 0.
int valuation(Int x, const Int& p);

}  // namespace minred

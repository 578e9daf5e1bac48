#pragma once

#include "c4/types.hpp"

namespace c4 {

/// Pfaffian of a real antisymmetric matrix of even size, including its sign.
/// Parlett-Reid skew tridiagonalization with partial pivoting, O(n^3).
/// Pf([[0,a],[-a,0]]) = a fixes the sign convention.
/// Throws on odd size or when |A + A^T| exceeds 1e-12 of the largest entry.
double pfaffian(const AntisymmetricMatrix& a);

}  // namespace c4

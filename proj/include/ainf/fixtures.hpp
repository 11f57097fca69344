#pragma once

#include "ainf/category.hpp"

namespace ainf {

/// Truncated polynomial category: one object V, hom(V,V) spanned by
/// e, h, h2, ..., h<n> in degrees 0, 2, ..., 2n, with mu^2(h^i, h^j) =
/// h^{i+j} and all other products zero.  Strictly unital with unit e.
CategoryPtr make_fix_p(int n, const Field& field = Field::rationals());

/// make_fix_p(n) plus an isolated object W with hom(W,W) = K e_W and
/// hom(V,W) = hom(W,V) = 0.
CategoryPtr make_fix_2obj(int n, const Field& field = Field::rationals());

/// Name of the k-th power of h in the fixtures ("e", "h", "h2", ...).
std::string h_power_name(int k);

}  // namespace ainf

#pragma once

#include "ainf/category.hpp"

namespace ainf {

/// Chain-level linear functional on hom^{top}(V,V) that is required to kill
/// coboundaries, so it descends to cohomology.  Used as the integration map
/// of the nondegeneracy pairing.
struct PairingIntegral {
    std::string object;
    int top_degree = 0;
    Vec functional;  // basis name in hom^{top}(V,V) -> value
};

/// Dual of the projection onto the (1-dimensional) top cohomology class.
/// Throws if H^{top}(hom(V,V)) is not 1-dimensional.
PairingIntegral make_canonical_integral(const CategoryPtr& cat, const std::string& v,
                                        int top_degree);

/// Checks that the functional kills coboundaries (descends to H) and is
/// nonzero on H^{top}.
bool integral_well_defined(const CategoryPtr& cat, const PairingIntegral& integral,
                           std::string* why = nullptr);

struct ClassifyVerdict {
    bool pass = false;
    bool cocycle_ok = false;   // (a) mu^1-closedness of h (trivially true when no h)
    bool ring_ok = false;      // (b) shape of H(hom(V,V)) and powers of [h]
    bool pairing_ok = false;   // (c) nondegeneracy for every object and degree
    std::vector<std::string> failures;
    std::map<int, int> endo_dims;  // dims of H(hom(V,V))
};

/// CP^n-object test for (V, h): mu^1 h = 0; H(hom(V,V)) = K[h]/h^{n+1} with
/// |h| = 2; the integration pairing hom^{2n-k}_H(X,V) x hom^k_H(V,X) -> K is
/// nondegenerate for every object X and degree k.
ClassifyVerdict classify_cp_object(const CategoryPtr& cat, const std::string& v, const Vec& h,
                                   int n, const PairingIntegral& integral);

/// Spherical-object test: H(hom(V,V)) = K[t]/t^2 with the top class in
/// degree n, plus the nondegeneracy pairing into hom^n_H(V,V).
ClassifyVerdict classify_spherical(const CategoryPtr& cat, const std::string& v, int n,
                                   const PairingIntegral& integral);

}  // namespace ainf

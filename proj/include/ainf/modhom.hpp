#pragma once

#include "ainf/module.hpp"

namespace ainf {

/// A finite, exact model of the hom complex hom_Q(M0, M1) in a window of
/// morphism degrees: only strictly unital components (vanishing on argument
/// chains that contain a unit) are kept.  This is a complete model under
/// validated nilpotence conditions:
///   - the base category is strictly unital,
///   - every non-unit basis morphism has degree >= 2 (so unit-free chains
///     die in bounded length),
///   - no product of non-unit basis morphisms hits a unit,
///   - both modules are strictly unital (mu^2(b,e) = b, units kill mu^{>=3}).
/// The builder throws if any condition fails or if the differential of a
/// kept component has a nonzero coefficient on a discarded (unit-chain)
/// component.
struct ModuleHomComplex {
    ChainComplex complex;                       // graded by morphism degree
    std::vector<std::pair<ModKey, std::string>> basis;  // (input key, output)
    std::map<std::string, int> index;           // flattened name -> basis slot
};

ModuleHomComplex module_hom_complex(const ModulePtr& m0, const ModulePtr& m1, int deg_lo,
                                    int deg_hi);

/// Per-degree dims of hom_{H(Q)}(M0, M1) inside [deg_lo, deg_hi].
std::map<int, int> module_hom_h_dims(const ModulePtr& m0, const ModulePtr& m1, int deg_lo,
                                     int deg_hi);

/// Left composition with a fixed closed morphism t : M0 -> M1 as a chain map
/// hom_Q(M1, N) -> hom_Q(M0, N) in the windowed model, used for the
/// composition-with-quasi-isomorphism rank identities.
GradedLinearMap compose_left_map(const PreModuleHom& t, const ModulePtr& n,
                                 const ModuleHomComplex& from_hom,
                                 const ModuleHomComplex& to_hom);

}  // namespace ainf

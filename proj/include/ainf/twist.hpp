#pragma once

#include "ainf/classify.hpp"
#include "ainf/twisted.hpp"

namespace ainf {

/// Everything needed to twist about a CP^n-object: the object V, the
/// degree-2 cocycle h, the dimension n and the integration functional.
struct CpTwistData {
    std::string v;
    Vec h;
    int n = 1;
    PairingIntegral integral;
};

/// Builds the datum with the canonical integral and verifies the CP^n
/// classification (throws when it fails).
CpTwistData make_cp_data(const CategoryPtr& cat, const std::string& v, const Vec& h, int n);

/// ---------------------------------------------------------------------
/// Module-level projective twist.

/// The connecting morphism H : Y(V)[-2] (x) V -> Y(V) (x) V,
///   H^1(y (x) v) = (-1)^{|y|+|v|} mu^2_Y(y,h) (x) v
///                + (-1)^{|y|-1}   y (x) mu^2_V(h,v),
///   H^d(y (x) v, ...) = (-1)^{|y|-1} y (x) mu^{d+1}_V(h, v, ...) for d >= 2.
/// Degree 0 and mu^1_Q-closed (verified by the twist suites, not assumed).
PreModuleHom build_H(const CategoryPtr& cat, const CpTwistData& data, const ModulePtr& y);

/// Double mapping cone package for Phi_V Y = Cone(g : Cone(H) -> Y).
struct ModuleTwist {
    ModulePtr result;        // Cone(g)
    ModulePtr hcone;         // Cone(H)
    PreModuleHom H;          // as above
    PreModuleHom g;          // Cone(H) -> Y
    PreModuleHom ev;         // Y(V) (x) V -> Y
    PreModuleHom iota;       // Y -> Phi_V Y
    PreModuleHom pi;         // Phi_V Y -> S Cone(H)
    std::string provenance;  // which construction, which level
};

ModuleTwist phi_module(const CategoryPtr& cat, const CpTwistData& data, const ModulePtr& y);

/// The same module in the flat three-summand presentation
/// (Y(V) (x) V) (+) (Y(V)[1] (x) V) (+) Y with names P1(y|v), P2(y|v), P3(y).
ModulePtr phi_display(const CategoryPtr& cat, const CpTwistData& data, const ModulePtr& y);

/// Diagonal isomorphism from the double-cone model onto the display model.
std::pair<std::string, Scalar> phi_display_relabel(const Field& f, const std::string& obj,
                                                   const std::string& name);

/// Functor action on morphisms, in display coordinates (a dg functor:
/// Phi^d = 0 for d >= 2).
PreModuleHom phi_morphism(const CategoryPtr& cat, const CpTwistData& data,
                          const PreModuleHom& t);

/// ---------------------------------------------------------------------
/// Spherical twist (module level): T_V Y = Cone(ev).

ModuleCone spherical_twist(const CategoryPtr& cat, const std::string& v, const ModulePtr& y);

/// Functor action on the cone model:
///   t~^1(y1 (x) v, y2) = ((-1)^{|v|+|t|} t^1(y1) (x) v, t^1(y2) + t^2(y1, v)),
///   t~^d = (0, t^d(y2,...) + t^{d+1}(y1, v, ...)).
PreModuleHom spherical_morphism(const CategoryPtr& cat, const std::string& v,
                                const PreModuleHom& t);

/// The explicit four-summand model of T_V(T_V Y) with names
/// Q1(y|q|v), Q2(y|v), Q3(y|v), Q4(y).
ModulePtr t_squared_display(const CategoryPtr& cat, const std::string& v, const ModulePtr& y);

/// Relabel from the twice-applied cone model onto the display model.
std::pair<std::string, Scalar> t2_display_relabel(const Field& f, const std::string& obj,
                                                  const std::string& name);

/// T_V(T_V t), transported onto the display models.
PreModuleHom t_squared_morphism(const CategoryPtr& cat, const std::string& v,
                                const PreModuleHom& t);

/// The natural comparison map alpha_Y : T^2_V Y -> Phi_V Y (display models).
/// Requires Y(V)... the inner factor V(V) to be two-dimensional with basis
/// {e, h}; apply minimize_tensor first when it is not.
PreModuleHom alpha_map(const CategoryPtr& cat, const CpTwistData& data, const ModulePtr& y);

/// ---------------------------------------------------------------------
/// Twisted-complex level.

struct TwTwist {
    TwPtr result;
    TwPtr hcone;
    TwMorphism H;
    TwMorphism g;
    std::string provenance;
};

/// Phi_V Y as a twisted complex: Cone(g : Cone(H) -> Y) with
/// H = hbar (x) e_V - id (x) h on hom_Tw(V,Y)[-2] (x) V.
TwTwist phi_tw(const CategoryPtr& cat, const CpTwistData& data, const TwPtr& y);

/// Morphism action (dg functor): blocks tbar (x) e_V, tdelta (x) e_V and t,
/// where tbar(a) = (-1)^{|a|} mu^2_Tw(t, a) and tdelta(a) = mu^3_Tw(t, a, h).
TwMorphism phi_tw_morphism(const CategoryPtr& cat, const CpTwistData& data,
                           const TwMorphism& t);

/// The adjoint twist Phi~_V Y = Cone(Y -> Cone(H~)) built from the dual
/// evaluation, normalized so that the adjunction rank identities
///   dim Hom_H(Phi~ Y, Z) = dim Hom_H(Y, Phi Z)
///   dim Hom_H(Phi Y, Z)  = dim Hom_H(Y, Phi~ Z)
/// hold degreewise.
TwTwist phi_adjoint_tw(const CategoryPtr& cat, const CpTwistData& data, const TwPtr& y);

/// ---------------------------------------------------------------------
/// Verification helpers.

struct ShiftStage {
    std::vector<std::string> killed;  // basis names removed at this stage
    bool kernel_is_submodule = false;
    bool kernel_acyclic = false;
    bool projection_quasi_iso = false;
};

struct ShiftReport {
    bool pass = false;
    std::map<std::string, std::map<int, int>> twist_dims, shifted_dims;
    std::vector<ShiftStage> stages;
    std::string final_summand;  // e.g. "h^n in multiplicity degree 2n"
    std::vector<std::string> failures;
};

/// Confirms Phi_V(Yoneda V) = S^{-2n}(Yoneda V) two ways: H-dims equality,
/// and the chain of projection quasi-isomorphisms with acyclic kernels that
/// ends in the single summand h^n[-2n] V.
ShiftReport verify_shift(const CategoryPtr& cat, const CpTwistData& data);

struct SpanningReport {
    bool pass = false;
    bool degenerate = false;  // empty candidate list
    std::vector<std::string> failures;
};

/// Checks the two spanning-class clauses for the candidate set against every
/// member of the catalog, over all shifts within the finite degree support.
SpanningReport spanning_class_audit(const CategoryPtr& cat,
                                    const std::vector<TwPtr>& candidate,
                                    const std::vector<TwPtr>& catalog);

}  // namespace ainf

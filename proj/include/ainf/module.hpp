#pragma once

#include "ainf/category.hpp"

namespace ainf {

/// Input shape of one mu^d_M or t^d component: object chain X_0..X_{d-1},
/// module basis element b in M(X_{d-1}), and morphism inputs in application
/// order, args[i] in hom(X_i, X_{i+1}).  The paper-order call
/// t^d(b, a_{d-1}, ..., a_1) has a_1 = args[0] and b applied last.
struct ModKey {
    std::vector<std::string> chain;  // size d
    std::string b;
    std::vector<std::string> args;  // size d-1
    auto operator<=>(const ModKey&) const = default;
};

using ModTable = std::map<ModKey, Vec>;

/// A-infinity module over a category: graded space M(X) per object plus
/// sparse action tables.  mu^d raises total degree by 2-d.
class AInfModule {
  public:
    CategoryPtr cat;
    std::map<std::string, GradedVectorSpace> spaces;
    ModTable mu;
    int arity_bound = 1;

    const GradedVectorSpace& space(const std::string& x) const;
    Vec mu_eval(const ModKey& key) const;
    void validate() const;

    /// M(X) as a chain complex.  The differential is mu^1 when plain is
    /// true, (-1)^{|b|} mu^1 otherwise (the convention used for H(M(X))).
    ChainComplex complex_at(const std::string& x, bool plain) const;

    /// Per-object cohomology dims (computed with the signed differential;
    /// the sign does not change dimensions).
    std::map<std::string, std::map<int, int>> h_dims() const;

    bool is_zero() const;
};

using ModulePtr = std::shared_ptr<const AInfModule>;

/// Pre-module homomorphism t = (t^d): component tables of fixed degree r,
/// t^d landing in M1(X_0)[r-d+1].
class PreModuleHom {
  public:
    ModulePtr source, target;
    int degree = 0;
    ModTable table;

    Vec eval(const ModKey& key) const;
    void validate() const;
    int max_arity() const;
    bool is_zero_map() const { return table.empty(); }

    PreModuleHom scaled(const Scalar& c) const;
    PreModuleHom operator+(const PreModuleHom& o) const;
};

struct ModRelFailure {
    int d = 0;
    ModKey key;
    Vec residual;
};

struct ModRelReport {
    bool pass = true;
    std::vector<ModRelFailure> failures;
    int checked_tuples = 0;
};

/// Both sums of the module relations, evaluated over all basis tuples up to
/// the combined arity range.
ModRelReport check_module_relations(const AInfModule& m);

/// Differential of the hom complex in Q = mod(A) (three-sum formula).
PreModuleHom mu1_Q(const PreModuleHom& t);
/// Binary composition in Q (one-sum formula); mu^d_Q = 0 for d >= 3.
PreModuleHom mu2_Q(const PreModuleHom& t2, const PreModuleHom& t1);

bool is_closed(const PreModuleHom& t);

/// Induced map on cohomology per object: [b] -> [(-1)^{|b|} t^1(b)], with
/// H(M(X)) computed for the differential (-1)^{|b|} mu^1(b).
std::map<std::string, GradedLinearMap> h_of_t(const PreModuleHom& t);

struct QuasiIsoVerdict {
    bool is_quasi_iso = false;
    std::vector<std::string> failures;
};

QuasiIsoVerdict quasi_iso_check(const PreModuleHom& t);

/// Yoneda module of Y: M(X) = hom(X,Y), mu_M = mu_A.
ModulePtr yoneda_module(const CategoryPtr& cat, const std::string& y);

/// First-order Yoneda image of t in hom(Y,Z):
/// (l^1 t)^d(b, a_{d-1}, ..., a_1) = mu^{d+1}(t, b, a_{d-1}, ..., a_1).
PreModuleHom yoneda_first_order(const CategoryPtr& cat, const std::string& y,
                                const std::string& z, const Vec& t);

/// Z (x) M with mu^1(z@b) = (-1)^{|b|-1} dz (x) b + z (x) mu^1(b) and
/// mu^d(z@b, ...) = z (x) mu^d(b, ...) for d >= 2.
ModulePtr tensor_module(const ChainComplex& z, const ModulePtr& m);

/// S^sigma M: all degrees drop by sigma, tables unchanged.
ModulePtr shift_module(int sigma, const ModulePtr& m);

/// The closed quasi-isomorphism H(Z) (x) M -> Z (x) M induced by a choice
/// of cocycle representatives; first order only, sign-twisted so that it is
/// mu^1_Q-closed.  Returns the morphism (its source/target carry the modules).
PreModuleHom minimize_tensor(const ChainComplex& z, const ModulePtr& m);

/// Evaluation ev: Y(V) (x) V -> Y, ev^d(y (x) v, ...) = mu^{d+1}_Y(y, v, ...).
/// The tensor factor Y(V) carries the plain mu^1 differential.
PreModuleHom evaluation(const CategoryPtr& cat, const std::string& v, const ModulePtr& y);

/// The tensor-source module Y(V) (x) V used by evaluation (exposed because
/// twist constructions reuse it).
ModulePtr evaluation_source(const CategoryPtr& cat, const std::string& v, const ModulePtr& y);

struct ModuleCone {
    ModulePtr cone;        // C(X) = M0(X)[1] (+) M1(X), names C0(b) / C1(b)
    PreModuleHom iota;     // M1 -> C, closed
    PreModuleHom pi;       // C -> S M0, closed
};

/// Mapping cone of a closed degree-0 morphism.
ModuleCone cone(const PreModuleHom& t);

inline std::string cone0(const std::string& name) { return "C0(" + name + ")"; }
inline std::string cone1(const std::string& name) { return "C1(" + name + ")"; }

/// Renames every basis element of every M(X) (and the table accordingly);
/// fn must be injective per space and degree-preserving up to the declared
/// degree shift built into the target spaces.
ModulePtr relabel_module(const ModulePtr& m,
                         const std::function<std::string(const std::string&, const std::string&)>& fn);

/// Transport of the module structure along a diagonal isomorphism
/// b -> coeff * newname (per object); used by the cross-level comparisons
/// where the canonical identification carries signs.
ModulePtr relabel_module_signed(
    const ModulePtr& m,
    const std::function<std::pair<std::string, Scalar>(const std::string&,
                                                       const std::string&)>& fn);

/// Random pre-module hom with all components of arity <= max_arity, small
/// integer coefficients, deterministic in the seed.
PreModuleHom random_pre_module_hom(const ModulePtr& m0, const ModulePtr& m1, int degree,
                                   int max_arity, unsigned seed, int density_percent = 60,
                                   bool unit_free_args = false);

/// Transport of a morphism along diagonal isomorphisms of its endpoints:
/// t'(phi_src b, ...) = phi_dst(t(b, ...)).
PreModuleHom transport_hom(
    const PreModuleHom& t, const ModulePtr& new_src, const ModulePtr& new_dst,
    const std::function<std::pair<std::string, Scalar>(const std::string&,
                                                       const std::string&)>& src_fn,
    const std::function<std::pair<std::string, Scalar>(const std::string&,
                                                       const std::string&)>& dst_fn);

}  // namespace ainf

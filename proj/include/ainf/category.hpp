#pragma once

#include <memory>
#include <optional>

#include "ainf/graded.hpp"

namespace ainf {

/// Key of one structure-constant group: the object chain X_0..X_d and the
/// input basis names in application order, inputs[i] in hom(X_i, X_{i+1}).
/// The paper-order tuple mu^d(a_d, ..., a_1) has a_1 = inputs[0].
struct MuKey {
    std::vector<std::string> chain;   // size d+1
    std::vector<std::string> inputs;  // size d
    auto operator<=>(const MuKey&) const = default;
};

/// A-infinity category over an exact field: objects, graded hom spaces and
/// sparse structure constants for the composition maps mu^d, d <= arity_bound.
///
/// Degree convention: mu^d raises total degree by 2-d, i.e. an entry with
/// inputs of degrees g_1..g_d has output degree g_1+...+g_d + 2 - d.
class AInfCategory {
  public:
    Field field;
    std::vector<std::string> objects;
    std::map<std::pair<std::string, std::string>, GradedVectorSpace> homs;
    std::map<MuKey, Vec> mu;
    int arity_bound = 1;
    std::optional<std::map<std::string, std::string>> strict_units;

    const GradedVectorSpace& hom(const std::string& x, const std::string& y) const;
    bool has_object(const std::string& x) const;
    bool is_unit(const std::string& obj, const std::string& basis) const;

    /// Structural validation: known names, composable chains, the 2-d degree
    /// rule on every entry, arity bound respected.  Throws on violation.
    void validate() const;

    /// mu^d on a tuple of basis names (application order).  Zero if absent.
    Vec mu_eval(const std::vector<std::string>& chain,
                const std::vector<std::string>& inputs) const;

    /// Multilinear evaluation on (possibly non-basis) morphism elements.
    /// elements[i] is a triple (source object, target object, value); the
    /// list is in application order and must be composable.
    Vec mu_apply(const std::vector<std::tuple<std::string, std::string, Vec>>& elements)
        const;

    /// All composable object chains of length d+1 whose hom spaces between
    /// consecutive objects are nonzero.
    std::vector<std::vector<std::string>> composable_chains(int d) const;
};

using CategoryPtr = std::shared_ptr<const AInfCategory>;

struct RelationFailure {
    int d = 0;
    std::vector<std::string> chain;
    std::vector<std::string> inputs;  // application order
    Vec residual;
};

struct RelationReport {
    bool pass = true;
    std::vector<RelationFailure> failures;
    int checked_tuples = 0;
};

/// Verifies the A-infinity relations for every d in 1..2*arity_bound-1 over
/// all composable basis tuples.  The range is complete: a term needs both
/// m <= arity_bound and d-m+1 <= arity_bound.
RelationReport check_ainf_relations(const AInfCategory& cat);

/// Signed residual of the single relation instance (exposed for reporting).
Vec ainf_relation_residual(const AInfCategory& cat, const std::vector<std::string>& chain,
                           const std::vector<std::string>& inputs);

/// Opposite category: hom_opp(X,Y) = hom(Y,X),
/// mu_opp^d(a_d,...,a_1) = (-1)^{|a_1|+...+|a_d|-d} mu^d(a_1,...,a_d).
AInfCategory opposite(const AInfCategory& cat);

/// Cohomological category H(A): morphisms are mu^1-cohomology classes,
/// composition [a2]*[a1] = (-1)^{|a1|} [mu^2(a2,a1)].
class CohomologyCategory {
  public:
    CategoryPtr base;
    std::map<std::pair<std::string, std::string>, CohomologyData> h;

    const CohomologyData& at(const std::string& x, const std::string& y) const;
    std::map<int, int> dims(const std::string& x, const std::string& y) const;

    /// Composition on H-basis names: class of a2 in h(Y,Z) after a1 in h(X,Y).
    Vec compose(const std::string& x, const std::string& y, const std::string& z,
                const std::string& a2, const std::string& a1) const;
    Vec compose_elems(const std::string& x, const std::string& y, const std::string& z,
                      const Vec& a2, const Vec& a1) const;

    /// Two-sided unit of X in H, if one exists (solved by linear algebra).
    std::optional<Vec> find_unit(const std::string& x) const;
};

CohomologyCategory cohomology_category(CategoryPtr cat);

struct UnitalityReport {
    bool pass = true;
    std::vector<std::string> violations;
};

/// Strict-unit axioms, checked exhaustively over basis elements:
/// mu^1(e)=0, (-1)^{|a|} mu^2(e,a(= a = mu^2(a,e), and every mu^d entry with
/// d >= 3 avoiding unit inputs.
UnitalityReport check_strict_unital(const AInfCategory& cat);

/// Existence of two-sided units in the cohomological category.
UnitalityReport check_c_unital(const AInfCategory& cat);

}  // namespace ainf

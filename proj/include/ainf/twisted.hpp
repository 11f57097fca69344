#pragma once

#include "ainf/module.hpp"

namespace ainf {

/// One summand V (x) X of an object of the additive enlargement.
struct Summand {
    std::string label;       // unique within the object
    GradedVectorSpace mult;  // multiplicity space V
    std::string obj;         // object X of the base category
};

struct SumObject {
    CategoryPtr cat;
    std::vector<Summand> summands;

    int find(const std::string& label) const;
    bool operator==(const SumObject& o) const;
};

/// Matrix element of hom_{Sigma A}: multiplicity part v_from -> v_to between
/// summands from -> to, tensored with the hom basis element x.
struct TwEntryKey {
    int from = 0, to = 0;
    std::string vfrom, vto;
    std::string x;
    auto operator<=>(const TwEntryKey&) const = default;
};

/// Homogeneous morphism in the additive enlargement, stored sparsely.
/// Entry degree: (|v_to| - |v_from|) + |x|.
class SigmaMorphism {
  public:
    SumObject src, dst;
    int degree = 0;
    std::map<TwEntryKey, Scalar> entries;

    void add(const TwEntryKey& key, const Scalar& c);
    void validate() const;
    bool is_zero() const { return entries.empty(); }
    SigmaMorphism scaled(const Scalar& c) const;
    SigmaMorphism operator+(const SigmaMorphism& o) const;
    bool operator==(const SigmaMorphism& o) const;
};

/// mu^d of the additive enlargement on morphisms in application order
/// (args[0] applied first):
///   mu^d(a_d, ..., a_1) = sum (-1)^{<| } alpha_d...alpha_1 (x) mu^d_A(x_d..x_1),
///   <| = sum_{p<q} |alpha_p| (|x_q| - 1).
SigmaMorphism sigma_mu(const std::vector<SigmaMorphism>& args);

/// Twisted complex: sum object with a degree-1 differential that is strictly
/// lower triangular for the given total order (order[i] = rank of summand i;
/// entries need order[to] > order[from]) and solves the Maurer-Cartan sum.
class TwistedComplex {
  public:
    SumObject under;
    SigmaMorphism delta;
    std::vector<int> order;

    int nilpotence() const { return static_cast<int>(under.summands.size()); }
};

using TwPtr = std::shared_ptr<const TwistedComplex>;

struct TwValidationReport {
    bool pass = true;
    std::vector<std::string> violations;
};

TwValidationReport validate_twisted(const TwistedComplex& x);

/// The base object X as the twisted complex K (x) X (one-dimensional
/// multiplicity "k0" in degree zero, zero differential).
TwPtr atom(const CategoryPtr& cat, const std::string& obj);

/// Morphism between twisted complexes (an element of hom_{Sigma A} of the
/// underlying objects; the complexes supply the deltas for mu_Tw).
struct TwMorphism {
    TwPtr src, dst;
    int degree = 0;
    std::map<TwEntryKey, Scalar> entries;

    SigmaMorphism sigma() const;
    TwMorphism scaled(const Scalar& c) const;
    TwMorphism operator+(const TwMorphism& o) const;
    void validate() const;
};

/// mu^d_{Tw A}: the delta-insertion sum, finite by strict triangularity.
TwMorphism tw_mu(const std::vector<TwMorphism>& args);

bool tw_closed(const TwMorphism& t);

/// Flattened hom_{Sigma A}(X, Y) with names "[i.v>j.w:x]" and the mu^1_Tw
/// differential; used for all H(Tw)-level rank computations.
struct TwHomComplex {
    ChainComplex complex;
    std::vector<TwEntryKey> basis;
    std::map<std::string, int> index;
};

TwHomComplex hom_tw_complex(const TwPtr& x, const TwPtr& y);
std::string tw_entry_name(const TwEntryKey& key);
std::map<int, int> hom_tw_h_dims(const TwPtr& x, const TwPtr& y);

/// Cone of a closed degree-0 morphism: SX (+) Y with delta
/// [[S delta_X, 0], [-S t, delta_Y]]; the source multiplicities are shifted
/// down by one and the S(t) entries carry the sign (-1)^{|v_to|} that keeps
/// the Maurer-Cartan sum equivalent to closedness of t.
TwPtr cone_tw(const TwMorphism& t);

/// Shift: multiplicity degrees drop by sigma, differential unchanged.
TwPtr shift_tw(int sigma, const TwPtr& x);

/// Z (x) X with differential id (x) delta + (-1)^{|z|-1} dz (x) e; summands
/// split per z-basis line so that strict triangularity has a witness order.
/// Requires strict units.
TwPtr tensor_tw(const ChainComplex& z, const TwPtr& x);

/// Evaluation ev: hom_Tw(V, Y) (x) V -> Y via the dual-basis expansion, and
/// the dual evaluation ev~: Y -> hom_Tw(Y, V)* (x) V.  Both need strict units.
struct TwEvaluation {
    TwPtr source;  // hom(V,Y) (x) V   resp. Y
    TwPtr target;  // Y                resp. hom(Y,V)* (x) V
    TwMorphism map;
};

TwEvaluation ev_tw(const std::string& v, const TwPtr& y);
TwEvaluation ev_dual_tw(const TwPtr& y, const std::string& v);

/// Pullback along A -> Tw A of the Yoneda module of X: M(W) = hom_Tw(W, X).
ModulePtr tw_to_module(const TwPtr& x);
PreModuleHom tw_to_module_mor(const TwMorphism& t);

/// Chain complex hom_Tw(V, Y) for an object V (multiplicity-space form used
/// by the twist constructions): flattening of hom_tw_complex(atom V, Y).
ChainComplex hom_from_object_complex(const CategoryPtr& cat, const std::string& v,
                                     const TwPtr& y, TwHomComplex* raw = nullptr);

}  // namespace ainf

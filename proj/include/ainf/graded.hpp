#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ainf/scalar.hpp"

namespace ainf {

/// Finitely supported ZZ-graded vector space with an ordered, named basis.
/// Names are unique within the space; degrees are arbitrary integers.
class GradedVectorSpace {
  public:
    GradedVectorSpace() = default;
    explicit GradedVectorSpace(std::vector<std::pair<std::string, int>> basis);

    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<std::pair<std::string, int>>& basis() const { return basis_; }
    bool has(const std::string& name) const { return index_.count(name) != 0; }
    int degree(const std::string& name) const;
    int index_of(const std::string& name) const;

    std::map<int, int> dims_by_degree() const;
    std::vector<std::string> names_in_degree(int deg) const;

    /// Shift down by k: every degree drops by k, names are kept.
    GradedVectorSpace shift(int k) const;
    /// Tensor product; pair (a,b) gets degree |a|+|b| and name "(a,b)".
    GradedVectorSpace tensor(const GradedVectorSpace& other) const;
    /// Dual space: basis functional of b is named "D(b)" with degree -|b|.
    GradedVectorSpace dual() const;

    bool operator==(const GradedVectorSpace& o) const { return basis_ == o.basis_; }
    bool operator!=(const GradedVectorSpace& o) const { return !(*this == o); }

    static std::string pair_name(const std::string& a, const std::string& b) {
        return "(" + a + "," + b + ")";
    }
    static std::string dual_name(const std::string& a) { return "D(" + a + ")"; }

  private:
    std::vector<std::pair<std::string, int>> basis_;
    std::map<std::string, int> index_;
};

/// Sparse vector in a graded space: name -> nonzero coefficient.
using Vec = std::map<std::string, Scalar>;

void vec_add(Vec& into, const std::string& name, const Scalar& c);
void vec_add(Vec& into, const Vec& v, const Scalar& c);
bool vec_is_zero(const Vec& v);
std::string vec_str(const Vec& v);

/// Homogeneous linear map of fixed degree between graded spaces, stored as a
/// sparse coefficient table keyed by (source basis, target basis).
/// Every nonzero entry must satisfy deg(target) = deg(source) + degree.
class GradedLinearMap {
  public:
    GradedLinearMap() : degree_(0) {}
    GradedLinearMap(const Field& f, GradedVectorSpace source, GradedVectorSpace target,
                    int degree);

    const GradedVectorSpace& source() const { return source_; }
    const GradedVectorSpace& target() const { return target_; }
    int degree() const { return degree_; }
    const Field& field() const { return field_; }

    void add(const std::string& src, const std::string& dst, const Scalar& c);
    Scalar entry(const std::string& src, const std::string& dst) const;
    const std::map<std::pair<std::string, std::string>, Scalar>& entries() const {
        return entries_;
    }

    Vec apply(const Vec& v) const;
    Vec apply_basis(const std::string& src) const;

    bool is_zero() const { return entries_.empty(); }
    GradedLinearMap compose_after(const GradedLinearMap& first) const;  // this o first
    GradedLinearMap operator+(const GradedLinearMap& o) const;
    GradedLinearMap scaled(const Scalar& c) const;
    bool operator==(const GradedLinearMap& o) const;

    static GradedLinearMap identity(const Field& f, const GradedVectorSpace& v);
    static GradedLinearMap zero(const Field& f, const GradedVectorSpace& src,
                                const GradedVectorSpace& dst, int degree);

  private:
    Field field_;
    GradedVectorSpace source_, target_;
    int degree_;
    std::map<std::pair<std::string, std::string>, Scalar> entries_;
};

/// Result of exact Gaussian elimination applied degree by degree.
struct RankData {
    int rank = 0;
    std::map<int, int> rank_by_degree;       // keyed by source degree
    std::vector<Vec> kernel_basis;           // vectors in the source space
    std::vector<Vec> image_basis;            // vectors in the target space
};

RankData gauss_rank(const GradedLinearMap& f);

/// Complex with differential of degree +1 squaring to zero (validated).
struct ChainComplex {
    GradedVectorSpace space;
    GradedLinearMap differential;

    ChainComplex() = default;
    ChainComplex(GradedVectorSpace sp, GradedLinearMap d);
    ChainComplex shift(int k) const;  // degrees drop by k; differential entries kept
};

/// Cohomology of a chain complex together with splitting data:
///   rep:  H -> space, cocycle representative for each class;
///   proj: space -> H with proj o rep = id and proj o d = 0.
/// H-basis names are "H<deg>_<i>".
struct CohomologyData {
    GradedVectorSpace h_space;
    std::map<int, int> dims;
    GradedLinearMap rep;
    GradedLinearMap proj;
};

CohomologyData cohomology(const ChainComplex& cx, const Field& f);

/// Solves sum_j x_j * cols[j] = rhs exactly; nullopt when unsolvable.
std::optional<std::vector<Scalar>> solve_columns(const Field& f, const std::vector<Vec>& cols,
                                                 const Vec& rhs);

}  // namespace ainf

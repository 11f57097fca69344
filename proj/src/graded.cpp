#include "ainf/graded.hpp"

#include <algorithm>
#include <set>

namespace ainf {

GradedVectorSpace::GradedVectorSpace(std::vector<std::pair<std::string, int>> basis)
    : basis_(std::move(basis)) {
    for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
        if (!index_.emplace(basis_[i].first, i).second)
            throw std::invalid_argument("duplicate basis name '" + basis_[i].first + "'");
    }
}

int GradedVectorSpace::degree(const std::string& name) const {
    return basis_[index_of(name)].second;
}

int GradedVectorSpace::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
        throw std::out_of_range("no basis element '" + name + "'");
    return it->second;
}

std::map<int, int> GradedVectorSpace::dims_by_degree() const {
    std::map<int, int> d;
    for (const auto& [name, deg] : basis_) ++d[deg];
    return d;
}

std::vector<std::string> GradedVectorSpace::names_in_degree(int deg) const {
    std::vector<std::string> out;
    for (const auto& [name, g] : basis_)
        if (g == deg) out.push_back(name);
    return out;
}

GradedVectorSpace GradedVectorSpace::shift(int k) const {
    std::vector<std::pair<std::string, int>> b = basis_;
    for (auto& [name, deg] : b) deg -= k;
    return GradedVectorSpace(std::move(b));
}

GradedVectorSpace GradedVectorSpace::tensor(const GradedVectorSpace& other) const {
    std::vector<std::pair<std::string, int>> b;
    for (const auto& [na, da] : basis_)
        for (const auto& [nb, db] : other.basis_)
            b.emplace_back(pair_name(na, nb), da + db);
    return GradedVectorSpace(std::move(b));
}

GradedVectorSpace GradedVectorSpace::dual() const {
    std::vector<std::pair<std::string, int>> b;
    for (const auto& [name, deg] : basis_) b.emplace_back(dual_name(name), -deg);
    return GradedVectorSpace(std::move(b));
}

void vec_add(Vec& into, const std::string& name, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = into.find(name);
    if (it == into.end()) {
        into.emplace(name, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) into.erase(it);
    }
}

void vec_add(Vec& into, const Vec& v, const Scalar& c) {
    for (const auto& [name, coef] : v) vec_add(into, name, coef * c);
}

bool vec_is_zero(const Vec& v) { return v.empty(); }

std::string vec_str(const Vec& v) {
    if (v.empty()) return "0";
    std::string s;
    for (const auto& [name, c] : v) {
        if (!s.empty()) s += " + ";
        s += c.str() + "*" + name;
    }
    return s;
}

GradedLinearMap::GradedLinearMap(const Field& f, GradedVectorSpace source,
                                 GradedVectorSpace target, int degree)
    : field_(f), source_(std::move(source)), target_(std::move(target)), degree_(degree) {}

void GradedLinearMap::add(const std::string& src, const std::string& dst, const Scalar& c) {
    if (c.is_zero()) return;
    if (target_.degree(dst) != source_.degree(src) + degree_)
        throw std::invalid_argument("entry " + src + " -> " + dst +
                                    " violates map degree " + std::to_string(degree_));
    auto key = std::make_pair(src, dst);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        entries_.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) entries_.erase(it);
    }
}

Scalar GradedLinearMap::entry(const std::string& src, const std::string& dst) const {
    auto it = entries_.find({src, dst});
    return it == entries_.end() ? Scalar(field_) : it->second;
}

Vec GradedLinearMap::apply(const Vec& v) const {
    Vec out;
    for (const auto& [name, c] : v) {
        auto lo = entries_.lower_bound({name, ""});
        for (auto it = lo; it != entries_.end() && it->first.first == name; ++it)
            vec_add(out, it->first.second, it->second * c);
    }
    return out;
}

Vec GradedLinearMap::apply_basis(const std::string& src) const {
    Vec out;
    auto lo = entries_.lower_bound({src, ""});
    for (auto it = lo; it != entries_.end() && it->first.first == src; ++it)
        vec_add(out, it->first.second, it->second);
    return out;
}

GradedLinearMap GradedLinearMap::compose_after(const GradedLinearMap& first) const {
    if (first.target_ != source_)
        throw std::invalid_argument("composition mismatch");
    GradedLinearMap out(field_, first.source_, target_, degree_ + first.degree_);
    for (const auto& [key, c] : first.entries_) {
        Vec img = apply_basis(key.second);
        for (const auto& [dst, d] : img) out.add(key.first, dst, d * c);
    }
    return out;
}

GradedLinearMap GradedLinearMap::operator+(const GradedLinearMap& o) const {
    if (source_ != o.source_ || target_ != o.target_ || degree_ != o.degree_)
        throw std::invalid_argument("sum of incompatible maps");
    GradedLinearMap out = *this;
    for (const auto& [key, c] : o.entries_) out.add(key.first, key.second, c);
    return out;
}

GradedLinearMap GradedLinearMap::scaled(const Scalar& c) const {
    GradedLinearMap out(field_, source_, target_, degree_);
    if (c.is_zero()) return out;
    for (const auto& [key, v] : entries_) out.add(key.first, key.second, v * c);
    return out;
}

bool GradedLinearMap::operator==(const GradedLinearMap& o) const {
    return source_ == o.source_ && target_ == o.target_ && degree_ == o.degree_ &&
           entries_ == o.entries_;
}

GradedLinearMap GradedLinearMap::identity(const Field& f, const GradedVectorSpace& v) {
    GradedLinearMap out(f, v, v, 0);
    for (const auto& [name, deg] : v.basis()) out.add(name, name, Scalar(f, 1));
    return out;
}

GradedLinearMap GradedLinearMap::zero(const Field& f, const GradedVectorSpace& src,
                                      const GradedVectorSpace& dst, int degree) {
    return GradedLinearMap(f, src, dst, degree);
}

namespace {

using Matrix = std::vector<std::vector<Scalar>>;  // row-major

// Column elimination over the exact field.  Returns pivot row per column
// (-1 for free columns) after transforming `cols` in place; `track`, when
// non-null, receives the same column operations (used to read off kernels).
std::vector<int> eliminate(const Field& f, Matrix& cols, Matrix* track) {
    const int n = static_cast<int>(cols.size());
    std::vector<int> pivot_row(n, -1);
    std::vector<int> used_rows;
    for (int j = 0; j < n; ++j) {
        // reduce column j against earlier pivots
        for (int k = 0; k < j; ++k) {
            if (pivot_row[k] < 0) continue;
            const Scalar c = cols[j][pivot_row[k]];
            if (c.is_zero()) continue;
            for (size_t r = 0; r < cols[j].size(); ++r)
                cols[j][r] -= c * cols[k][r];
            if (track)
                for (size_t r = 0; r < (*track)[j].size(); ++r)
                    (*track)[j][r] -= c * (*track)[k][r];
        }
        // find pivot
        int pr = -1;
        for (size_t r = 0; r < cols[j].size(); ++r)
            if (!cols[j][r].is_zero()) { pr = static_cast<int>(r); break; }
        if (pr < 0) continue;
        const Scalar inv = cols[j][pr].inverse();
        for (size_t r = 0; r < cols[j].size(); ++r) cols[j][r] *= inv;
        if (track)
            for (size_t r = 0; r < (*track)[j].size(); ++r) (*track)[j][r] *= inv;
        pivot_row[j] = pr;
    }
    return pivot_row;
}

}  // namespace

RankData gauss_rank(const GradedLinearMap& f) {
    RankData out;
    const Field& fld = f.field();
    std::set<int> degrees;
    for (const auto& [name, deg] : f.source().basis()) degrees.insert(deg);
    for (int g : degrees) {
        const auto src_names = f.source().names_in_degree(g);
        const auto dst_names = f.target().names_in_degree(g + f.degree());
        const int n = static_cast<int>(src_names.size());
        const int m = static_cast<int>(dst_names.size());
        std::map<std::string, int> dst_index;
        for (int i = 0; i < m; ++i) dst_index[dst_names[i]] = i;

        Matrix cols(n, std::vector<Scalar>(m, Scalar(fld)));
        Matrix track(n, std::vector<Scalar>(n, Scalar(fld)));
        for (int j = 0; j < n; ++j) {
            track[j][j] = Scalar(fld, 1);
            for (const auto& [dst, c] : f.apply_basis(src_names[j]))
                cols[j][dst_index.at(dst)] = c;
        }
        auto pivots = eliminate(fld, cols, &track);
        for (int j = 0; j < n; ++j) {
            if (pivots[j] >= 0) {
                ++out.rank;
                ++out.rank_by_degree[g];
                Vec img;
                for (int r = 0; r < m; ++r)
                    if (!cols[j][r].is_zero()) img.emplace(dst_names[r], cols[j][r]);
                out.image_basis.push_back(std::move(img));
            } else {
                Vec ker;
                for (int r = 0; r < n; ++r)
                    if (!track[j][r].is_zero()) ker.emplace(src_names[r], track[j][r]);
                out.kernel_basis.push_back(std::move(ker));
            }
        }
    }
    return out;
}

ChainComplex::ChainComplex(GradedVectorSpace sp, GradedLinearMap d)
    : space(std::move(sp)), differential(std::move(d)) {
    if (differential.degree() != 1)
        throw std::invalid_argument("differential must have degree +1");
    if (differential.source() != space || differential.target() != space)
        throw std::invalid_argument("differential must be an endomorphism of the space");
    for (const auto& [name, deg] : space.basis()) {
        Vec dd = differential.apply(differential.apply_basis(name));
        if (!vec_is_zero(dd))
            throw std::invalid_argument("differential does not square to zero on '" + name +
                                        "': d(d(" + name + ")) = " + vec_str(dd));
    }
}

ChainComplex ChainComplex::shift(int k) const {
    ChainComplex out;
    out.space = space.shift(k);
    out.differential = GradedLinearMap(differential.field(), out.space, out.space, 1);
    for (const auto& [key, c] : differential.entries())
        out.differential.add(key.first, key.second, c);
    return out;
}

std::optional<std::vector<Scalar>> solve_columns(const Field& f, const std::vector<Vec>& cols,
                                                 const Vec& rhs) {
    std::set<std::string> names;
    for (const auto& c : cols)
        for (const auto& [n, v] : c) names.insert(n);
    for (const auto& [n, v] : rhs) names.insert(n);
    std::map<std::string, int> idx;
    int m = 0;
    for (const auto& n : names) idx[n] = m++;
    auto to_col = [&](const Vec& v) {
        std::vector<Scalar> col(m, Scalar(f));
        for (const auto& [n, c] : v) col[idx.at(n)] = c;
        return col;
    };
    Matrix mat;
    for (const auto& c : cols) mat.push_back(to_col(c));
    mat.push_back(to_col(rhs));
    const int total = static_cast<int>(mat.size());
    Matrix track(total, std::vector<Scalar>(total, Scalar(f)));
    for (int j = 0; j < total; ++j) track[j][j] = Scalar(f, 1);
    auto piv = eliminate(f, mat, &track);
    if (piv.back() >= 0) return std::nullopt;  // rhs independent of the columns
    // 0 = sum_r track[last][r] * orig_r with track[last][last] a unit
    const Scalar lead = track.back().back();
    std::vector<Scalar> x(cols.size(), Scalar(f));
    const Scalar inv = lead.inverse();
    for (size_t r = 0; r < cols.size(); ++r) x[r] = -(track.back()[r] * inv);
    return x;
}

CohomologyData cohomology(const ChainComplex& cx, const Field& f) {
    CohomologyData out;

    // kernel/image of the differential, degree by degree
    RankData rd = gauss_rank(cx.differential);
    std::map<int, std::vector<Vec>> kernel_by_deg, image_by_deg;
    for (const auto& v : rd.kernel_basis)
        kernel_by_deg[cx.space.degree(v.begin()->first)].push_back(v);
    for (const auto& v : rd.image_basis)
        image_by_deg[cx.space.degree(v.begin()->first)].push_back(v);

    std::vector<std::pair<std::string, int>> h_basis;
    std::map<int, std::vector<Vec>> reps_by_deg;

    std::set<int> degrees;
    for (const auto& [name, deg] : cx.space.basis()) degrees.insert(deg);
    for (int g : degrees) {
        const auto names = cx.space.names_in_degree(g);
        std::map<std::string, int> idx;
        for (int i = 0; i < static_cast<int>(names.size()); ++i) idx[names[i]] = i;
        auto to_col = [&](const Vec& v) {
            std::vector<Scalar> col(names.size(), Scalar(f));
            for (const auto& [name, c] : v) col[idx.at(name)] = c;
            return col;
        };
        // eliminate image columns first, then kernel columns; the kernel
        // columns that still carry a pivot become class representatives
        Matrix cols;
        for (const auto& v : image_by_deg[g]) cols.push_back(to_col(v));
        const int n_img = static_cast<int>(cols.size());
        for (const auto& v : kernel_by_deg[g]) cols.push_back(to_col(v));
        auto pivots = eliminate(f, cols, nullptr);
        int count = 0;
        for (int j = n_img; j < static_cast<int>(cols.size()); ++j) {
            if (pivots[j] < 0) continue;
            std::string hname = "H" + std::to_string(g) + "_" + std::to_string(count++);
            h_basis.emplace_back(hname, g);
            reps_by_deg[g].push_back(kernel_by_deg[g][j - n_img]);
        }
    }

    out.h_space = GradedVectorSpace(h_basis);
    out.dims = out.h_space.dims_by_degree();
    out.rep = GradedLinearMap(f, out.h_space, cx.space, 0);
    out.proj = GradedLinearMap(f, cx.space, out.h_space, 0);

    for (int g : degrees) {
        const auto names = cx.space.names_in_degree(g);
        const int n = static_cast<int>(names.size());
        std::map<std::string, int> idx;
        for (int i = 0; i < n; ++i) idx[names[i]] = i;
        auto to_col = [&](const Vec& v) {
            std::vector<Scalar> col(n, Scalar(f));
            for (const auto& [name, c] : v) col[idx.at(name)] = c;
            return col;
        };
        const auto& reps = reps_by_deg[g];
        auto h_names = out.h_space.names_in_degree(g);
        for (int i = 0; i < static_cast<int>(reps.size()); ++i)
            for (const auto& [name, c] : reps[i]) out.rep.add(h_names[i], name, c);

        // basis of the degree-g slice ordered [image | reps | completion];
        // proj reads off the reps-coordinates of a vector in this basis
        Matrix basis_cols;
        for (const auto& v : image_by_deg[g]) basis_cols.push_back(to_col(v));
        const int n_img = static_cast<int>(basis_cols.size());
        for (const auto& v : reps) basis_cols.push_back(to_col(v));
        const int n_rep = static_cast<int>(reps.size());
        {
            Matrix probe = basis_cols;
            auto piv = eliminate(f, probe, nullptr);
            for (int i = 0; i < static_cast<int>(piv.size()); ++i)
                if (piv[i] < 0) throw std::logic_error("dependent image/rep columns");
            for (int s = 0; s < n; ++s) {
                std::vector<Scalar> e(n, Scalar(f));
                e[s] = Scalar(f, 1);
                Matrix trial = basis_cols;
                trial.push_back(e);
                auto p2 = eliminate(f, trial, nullptr);
                if (p2.back() >= 0) basis_cols.push_back(std::move(e));
            }
        }
        // solve basis_cols * u = e_s for each standard basis vector
        const int total = static_cast<int>(basis_cols.size());
        if (total != n) throw std::logic_error("completion failed");
        // invert via augmented elimination: track coordinates of e_s
        Matrix cols = basis_cols;
        Matrix track(total, std::vector<Scalar>(total, Scalar(f)));
        for (int j = 0; j < total; ++j) track[j][j] = Scalar(f, 1);
        // full reduction: make cols the identity-ish (eliminate both directions)
        auto piv = eliminate(f, cols, &track);
        // back-substitute so that each pivot row appears in exactly one column
        for (int j = total - 1; j >= 0; --j) {
            for (int k = j + 1; k < total; ++k) {
                const Scalar c = cols[j][piv[k]];
                if (c.is_zero()) continue;
                for (int r = 0; r < n; ++r) cols[j][r] -= c * cols[k][r];
                for (int r = 0; r < total; ++r) track[j][r] -= c * track[k][r];
            }
        }
        // now column j has a single nonzero entry at row piv[j]; express e_s
        for (int s = 0; s < n; ++s) {
            // e_s = sum_j cols-basis combination: coordinate along column j is
            // track-combination applied to unit at pivot row
            for (int j = 0; j < total; ++j) {
                if (piv[j] != s) continue;
                // e_s = sum_r track[j][r] * basis_cols[r] is false in general;
                // instead: the elimination yields cols[j] = e_{piv[j]} and
                // cols[j] = sum_r track[j][r] * basis_cols[r].
                for (int r = n_img; r < n_img + n_rep; ++r) {
                    if (track[j][r].is_zero()) continue;
                    out.proj.add(names[s], h_names[r - n_img], track[j][r]);
                }
            }
        }
    }
    return out;
}

}  // namespace ainf

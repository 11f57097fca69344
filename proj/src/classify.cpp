#include "ainf/classify.hpp"

#include <set>

namespace ainf {

namespace {

CohomologyData hom_cohomology(const CategoryPtr& cat, const std::string& x,
                              const std::string& y) {
    const auto& sp = cat->hom(x, y);
    GradedLinearMap d1(cat->field, sp, sp, 1);
    for (const auto& [name, deg] : sp.basis()) {
        for (const auto& [out, c] : cat->mu_eval({x, y}, {name})) d1.add(name, out, c);
    }
    return cohomology(ChainComplex(sp, d1), cat->field);
}

Scalar integrate_class(const CategoryPtr& cat, const PairingIntegral& integral,
                       const CohomologyData& endo, const Vec& h_class) {
    Scalar total(cat->field);
    for (const auto& [hname, c] : h_class) {
        Vec rep = endo.rep.apply_basis(hname);
        for (const auto& [bname, bc] : rep) {
            auto it = integral.functional.find(bname);
            if (it != integral.functional.end()) total += c * bc * it->second;
        }
    }
    return total;
}

}  // namespace

PairingIntegral make_canonical_integral(const CategoryPtr& cat, const std::string& v,
                                        int top_degree) {
    CohomologyData endo = hom_cohomology(cat, v, v);
    auto tops = endo.h_space.names_in_degree(top_degree);
    if (tops.size() != 1)
        throw std::invalid_argument("H^" + std::to_string(top_degree) + "(hom(" + v + "," + v +
                                    ")) is not one-dimensional");
    PairingIntegral integral;
    integral.object = v;
    integral.top_degree = top_degree;
    // functional = top coordinate of the projection-to-cohomology map
    for (const auto& [key, c] : endo.proj.entries())
        if (key.second == tops[0]) vec_add(integral.functional, key.first, c);
    return integral;
}

bool integral_well_defined(const CategoryPtr& cat, const PairingIntegral& integral,
                           std::string* why) {
    const auto& v = integral.object;
    const auto& sp = cat->hom(v, v);
    for (const auto& [name, deg] : sp.basis()) {
        if (deg != integral.top_degree - 1) continue;
        Vec db = cat->mu_eval({v, v}, {name});
        Scalar val(cat->field);
        for (const auto& [out, c] : db) {
            auto it = integral.functional.find(out);
            if (it != integral.functional.end()) val += c * it->second;
        }
        if (!val.is_zero()) {
            if (why) *why = "functional does not kill the coboundary of '" + name + "'";
            return false;
        }
    }
    CohomologyData endo = hom_cohomology(cat, v, v);
    for (const auto& hname : endo.h_space.names_in_degree(integral.top_degree)) {
        Vec cls;
        cls.emplace(hname, Scalar(cat->field, 1));
        if (!integrate_class(cat, integral, endo, cls).is_zero()) return true;
    }
    if (why) *why = "functional vanishes on the whole top cohomology";
    return false;
}

namespace {

// Nondegeneracy of the integration pairing for one object X and all degrees.
void check_pairing(const CategoryPtr& cat, const std::string& v,
                   const PairingIntegral& integral, const CohomologyData& endo,
                   const std::string& x, ClassifyVerdict& verdict) {
    const int top = integral.top_degree;
    CohomologyData hxv = hom_cohomology(cat, x, v);
    CohomologyData hvx = hom_cohomology(cat, v, x);
    std::set<int> ks;
    for (const auto& [deg, dim] : hvx.dims) ks.insert(deg);
    for (const auto& [deg, dim] : hxv.dims) ks.insert(top - deg);
    for (int k : ks) {
        auto rows = hxv.h_space.names_in_degree(top - k);  // classes X -> V
        auto colsn = hvx.h_space.names_in_degree(k);       // classes V -> X
        if (rows.size() != colsn.size()) {
            verdict.pairing_ok = false;
            verdict.failures.push_back(
                "(c) pairing degenerate for X=" + x + ", k=" + std::to_string(k) +
                ": dim mismatch " + std::to_string(rows.size()) + " vs " +
                std::to_string(colsn.size()));
            continue;
        }
        if (rows.empty()) continue;
        // columns of the pairing matrix; full rank <=> invertible
        std::vector<Vec> cols;
        for (const auto& b : colsn) {
            Vec col;
            Vec rb = hvx.rep.apply_basis(b);
            const Scalar sgn(cat->field, k % 2 == 0 ? 1 : -1);
            for (const auto& a : rows) {
                Vec ra = hxv.rep.apply_basis(a);
                Vec prod = cat->mu_apply({{v, x, rb}, {x, v, ra}});
                Vec cls = endo.proj.apply(prod);
                Scalar entry = integrate_class(cat, integral, endo, cls) * sgn;
                if (!entry.is_zero()) col.emplace(a, entry);
            }
            cols.push_back(std::move(col));
        }
        // rank test by elimination: each column must be independent
        for (size_t j = 0; j < cols.size(); ++j) {
            std::vector<Vec> prefix(cols.begin(), cols.begin() + j);
            if (solve_columns(cat->field, prefix, cols[j])) {
                verdict.pairing_ok = false;
                verdict.failures.push_back("(c) pairing matrix singular for X=" + x +
                                           ", k=" + std::to_string(k));
                break;
            }
        }
    }
}

ClassifyVerdict classify_impl(const CategoryPtr& cat, const std::string& v,
                              const Vec* h, int n, int top,
                              const std::map<int, int>& wanted_dims,
                              const PairingIntegral& integral) {
    ClassifyVerdict verdict;
    verdict.cocycle_ok = true;
    verdict.ring_ok = true;
    verdict.pairing_ok = true;
    if (!cat->has_object(v)) {
        verdict.failures.push_back("unknown object " + v);
        verdict.cocycle_ok = verdict.ring_ok = verdict.pairing_ok = false;
        return verdict;
    }
    if (integral.object != v || integral.top_degree != top) {
        verdict.pairing_ok = false;
        verdict.failures.push_back("(c) integral does not match object/top degree");
    }

    CohomologyData endo = hom_cohomology(cat, v, v);
    verdict.endo_dims = endo.dims;

    if (h) {
        for (const auto& [name, c] : *h) {
            if (!cat->hom(v, v).has(name) || cat->hom(v, v).degree(name) != 2) {
                verdict.cocycle_ok = false;
                verdict.failures.push_back("(a) h is not a degree-2 element of hom(" + v +
                                           "," + v + ")");
                break;
            }
        }
        if (verdict.cocycle_ok) {
            Vec dh;
            for (const auto& [name, c] : *h) vec_add(dh, cat->mu_eval({v, v}, {name}), c);
            if (!vec_is_zero(dh)) {
                verdict.cocycle_ok = false;
                verdict.failures.push_back("(a) mu^1(h) = " + vec_str(dh) + " != 0");
            }
        }
    }

    if (endo.dims != wanted_dims) {
        verdict.ring_ok = false;
        std::string got;
        for (const auto& [deg, dim] : endo.dims)
            got += (got.empty() ? "" : ", ") + std::to_string(deg) + ":" +
                   std::to_string(dim);
        verdict.failures.push_back("(b) H(hom(V,V)) dims {" + got + "} have the wrong shape");
    }

    if (h && verdict.cocycle_ok && verdict.ring_ok) {
        // powers of [h] generate: [h]^k != 0 for k <= n and [h]^{n+1} = 0
        auto catH = cohomology_category(cat);
        Vec cls = catH.at(v, v).proj.apply(*h);
        Vec power = cls;
        for (int k = 1; k <= n; ++k) {
            if (k > 1) power = catH.compose_elems(v, v, v, cls, power);
            if (vec_is_zero(power)) {
                verdict.ring_ok = false;
                verdict.failures.push_back("(b) [h]^" + std::to_string(k) + " vanishes");
                break;
            }
        }
        if (verdict.ring_ok) {
            Vec next = catH.compose_elems(v, v, v, cls, power);
            if (!vec_is_zero(next)) {
                verdict.ring_ok = false;
                verdict.failures.push_back("(b) [h]^" + std::to_string(n + 1) +
                                           " does not vanish");
            }
        }
    }

    if (verdict.pairing_ok) {
        std::string why;
        if (!integral_well_defined(cat, integral, &why)) {
            verdict.pairing_ok = false;
            verdict.failures.push_back("(c) " + why);
        } else {
            for (const auto& x : cat->objects)
                check_pairing(cat, v, integral, endo, x, verdict);
        }
    }

    verdict.pass = verdict.cocycle_ok && verdict.ring_ok && verdict.pairing_ok;
    return verdict;
}

}  // namespace

ClassifyVerdict classify_cp_object(const CategoryPtr& cat, const std::string& v, const Vec& h,
                                   int n, const PairingIntegral& integral) {
    std::map<int, int> wanted;
    for (int k = 0; k <= n; ++k) wanted[2 * k] = 1;
    return classify_impl(cat, v, &h, n, 2 * n, wanted, integral);
}

ClassifyVerdict classify_spherical(const CategoryPtr& cat, const std::string& v, int n,
                                   const PairingIntegral& integral) {
    std::map<int, int> wanted;
    wanted[0] = 1;
    wanted[n] += 1;
    return classify_impl(cat, v, nullptr, 1, n, wanted, integral);
}

}  // namespace ainf

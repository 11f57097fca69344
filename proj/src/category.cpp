#include "ainf/category.hpp"

#include <algorithm>
#include <functional>

#include "ainf/parallel.hpp"

namespace ainf {

namespace {
const GradedVectorSpace kEmptySpace{};
}  // namespace

const GradedVectorSpace& AInfCategory::hom(const std::string& x, const std::string& y) const {
    auto it = homs.find({x, y});
    return it == homs.end() ? kEmptySpace : it->second;
}

bool AInfCategory::has_object(const std::string& x) const {
    return std::find(objects.begin(), objects.end(), x) != objects.end();
}

bool AInfCategory::is_unit(const std::string& obj, const std::string& basis) const {
    if (!strict_units) return false;
    auto it = strict_units->find(obj);
    return it != strict_units->end() && it->second == basis;
}

void AInfCategory::validate() const {
    if (arity_bound < 1) throw std::invalid_argument("arity_bound must be >= 1");
    for (const auto& [pair, sp] : homs) {
        if (!has_object(pair.first) || !has_object(pair.second))
            throw std::invalid_argument("hom space between unknown objects " + pair.first +
                                        ", " + pair.second);
    }
    if (strict_units) {
        // degree-0-ness and the unit axioms are audited by check_strict_unital
        for (const auto& [obj, e] : *strict_units) {
            if (!has_object(obj)) throw std::invalid_argument("unit for unknown object " + obj);
            if (!hom(obj, obj).has(e))
                throw std::invalid_argument("unit of " + obj + " must be a basis element of hom(" +
                                            obj + "," + obj + ")");
        }
    }
    for (const auto& [key, out] : mu) {
        const int d = static_cast<int>(key.inputs.size());
        if (d < 1 || static_cast<int>(key.chain.size()) != d + 1)
            throw std::invalid_argument("malformed mu key");
        if (d > arity_bound)
            throw std::invalid_argument("mu entry of arity " + std::to_string(d) +
                                        " exceeds arity_bound");
        int total = 0;
        for (int i = 0; i < d; ++i) {
            const auto& sp = hom(key.chain[i], key.chain[i + 1]);
            if (!sp.has(key.inputs[i]))
                throw std::invalid_argument("mu input '" + key.inputs[i] +
                                            "' not in hom(" + key.chain[i] + "," +
                                            key.chain[i + 1] + ")");
            total += sp.degree(key.inputs[i]);
        }
        const auto& out_sp = hom(key.chain.front(), key.chain.back());
        for (const auto& [name, c] : out) {
            if (!out_sp.has(name))
                throw std::invalid_argument("mu output '" + name + "' not in hom(" +
                                            key.chain.front() + "," + key.chain.back() + ")");
            if (out_sp.degree(name) != total + 2 - d)
                throw std::invalid_argument(
                    "mu entry violates the degree rule (output '" + name + "' has degree " +
                    std::to_string(out_sp.degree(name)) + ", expected " +
                    std::to_string(total + 2 - d) + ")");
            if (c.field() != field) throw std::invalid_argument("mu coefficient field mismatch");
        }
    }
}

Vec AInfCategory::mu_eval(const std::vector<std::string>& chain,
                          const std::vector<std::string>& inputs) const {
    if (static_cast<int>(inputs.size()) > arity_bound) return {};
    auto it = mu.find(MuKey{chain, inputs});
    return it == mu.end() ? Vec{} : it->second;
}

Vec AInfCategory::mu_apply(
    const std::vector<std::tuple<std::string, std::string, Vec>>& elements) const {
    const int d = static_cast<int>(elements.size());
    if (d < 1) throw std::invalid_argument("mu_apply needs at least one element");
    std::vector<std::string> chain;
    chain.push_back(std::get<0>(elements[0]));
    for (int i = 0; i < d; ++i) {
        if (std::get<0>(elements[i]) != chain.back())
            throw std::invalid_argument("mu_apply: non-composable chain at position " +
                                        std::to_string(i));
        chain.push_back(std::get<1>(elements[i]));
    }
    Vec out;
    std::vector<std::string> names(d);
    std::function<void(int, Scalar)> rec = [&](int i, Scalar coef) {
        if (i == d) {
            Vec v = mu_eval(chain, names);
            vec_add(out, v, coef);
            return;
        }
        for (const auto& [name, c] : std::get<2>(elements[i])) {
            if (!hom(chain[i], chain[i + 1]).has(name))
                throw std::invalid_argument("mu_apply: '" + name + "' not in hom(" + chain[i] +
                                            "," + chain[i + 1] + ")");
            names[i] = name;
            rec(i + 1, coef * c);
        }
    };
    rec(0, Scalar(field, 1));
    return out;
}

std::vector<std::vector<std::string>> AInfCategory::composable_chains(int d) const {
    std::vector<std::vector<std::string>> chains;
    std::vector<std::string> cur;
    std::function<void(int)> rec = [&](int i) {
        if (i == d) {
            chains.push_back(cur);
            return;
        }
        for (const auto& y : objects) {
            if (hom(cur.back(), y).dim() == 0) continue;
            cur.push_back(y);
            rec(i + 1);
            cur.pop_back();
        }
    };
    for (const auto& x : objects) {
        cur = {x};
        rec(0);
    }
    return chains;
}

Vec ainf_relation_residual(const AInfCategory& cat, const std::vector<std::string>& chain,
                           const std::vector<std::string>& inputs) {
    const int d = static_cast<int>(inputs.size());
    Vec residual;
    // reduced degrees of the inputs, application order
    std::vector<int> rdeg(d);
    for (int i = 0; i < d; ++i)
        rdeg[i] = cat.hom(chain[i], chain[i + 1]).degree(inputs[i]) - 1;
    for (int m = 1; m <= std::min(d, cat.arity_bound); ++m) {
        if (d - m + 1 > cat.arity_bound) continue;
        for (int n = 0; n + m <= d; ++n) {
            // inner mu^m consumes inputs n .. n+m-1 (0-based, application order)
            int sign_exp = 0;
            for (int i = 0; i < n; ++i) sign_exp += rdeg[i];
            std::vector<std::string> inner_chain(chain.begin() + n, chain.begin() + n + m + 1);
            std::vector<std::string> inner_inputs(inputs.begin() + n, inputs.begin() + n + m);
            Vec inner = cat.mu_eval(inner_chain, inner_inputs);
            if (vec_is_zero(inner)) continue;
            // the inner output lives in hom(X_n, X_{n+m})
            std::vector<std::string> outer_chain;
            outer_chain.insert(outer_chain.end(), chain.begin(), chain.begin() + n + 1);
            outer_chain.insert(outer_chain.end(), chain.begin() + n + m, chain.end());
            const Scalar sgn(cat.field, sign_exp % 2 == 0 ? 1 : -1);
            for (const auto& [oname, oc] : inner) {
                std::vector<std::string> outer_inputs(inputs.begin(), inputs.begin() + n);
                outer_inputs.push_back(oname);
                outer_inputs.insert(outer_inputs.end(), inputs.begin() + n + m, inputs.end());
                Vec outer = cat.mu_eval(outer_chain, outer_inputs);
                vec_add(residual, outer, oc * sgn);
            }
        }
    }
    return residual;
}

RelationReport check_ainf_relations(const AInfCategory& cat) {
    RelationReport report;
    struct Task {
        int d;
        std::vector<std::string> chain;
    };
    std::vector<Task> tasks;
    for (int d = 1; d <= 2 * cat.arity_bound - 1; ++d)
        for (auto& chain : cat.composable_chains(d)) tasks.push_back({d, std::move(chain)});

    std::vector<std::vector<RelationFailure>> failures(tasks.size());
    std::vector<int> counts(tasks.size(), 0);
    parallel_for(static_cast<int>(tasks.size()), [&](int ti) {
        const auto& [d, chain] = tasks[ti];
        std::vector<std::string> inputs(d);
        std::function<void(int)> rec = [&](int i) {
            if (i == d) {
                ++counts[ti];
                Vec residual = ainf_relation_residual(cat, chain, inputs);
                if (!vec_is_zero(residual))
                    failures[ti].push_back({d, chain, inputs, residual});
                return;
            }
            for (const auto& [name, deg] : cat.hom(chain[i], chain[i + 1]).basis()) {
                inputs[i] = name;
                rec(i + 1);
            }
        };
        rec(0);
    });
    for (size_t i = 0; i < tasks.size(); ++i) {
        report.checked_tuples += counts[i];
        for (auto& fail : failures[i]) report.failures.push_back(std::move(fail));
    }
    report.pass = report.failures.empty();
    return report;
}

AInfCategory opposite(const AInfCategory& cat) {
    AInfCategory opp;
    opp.field = cat.field;
    opp.objects = cat.objects;
    opp.arity_bound = cat.arity_bound;
    opp.strict_units = cat.strict_units;
    for (const auto& [pair, sp] : cat.homs) opp.homs[{pair.second, pair.first}] = sp;
    for (const auto& [key, out] : cat.mu) {
        const int d = static_cast<int>(key.inputs.size());
        int total = 0;
        for (int i = 0; i < d; ++i)
            total += cat.hom(key.chain[i], key.chain[i + 1]).degree(key.inputs[i]);
        const int sign_exp = total - d;
        MuKey okey;
        okey.chain.assign(key.chain.rbegin(), key.chain.rend());
        okey.inputs.assign(key.inputs.rbegin(), key.inputs.rend());
        const Scalar sgn(cat.field, sign_exp % 2 == 0 ? 1 : -1);
        Vec& slot = opp.mu[okey];
        for (const auto& [name, c] : out) vec_add(slot, name, c * sgn);
        if (vec_is_zero(slot)) opp.mu.erase(okey);
    }
    return opp;
}

const CohomologyData& CohomologyCategory::at(const std::string& x,
                                             const std::string& y) const {
    static const CohomologyData empty{};
    auto it = h.find({x, y});
    return it == h.end() ? empty : it->second;
}

std::map<int, int> CohomologyCategory::dims(const std::string& x, const std::string& y) const {
    return at(x, y).dims;
}

Vec CohomologyCategory::compose(const std::string& x, const std::string& y,
                                const std::string& z, const std::string& a2,
                                const std::string& a1) const {
    Vec v2, v1;
    v2.emplace(a2, Scalar(base->field, 1));
    v1.emplace(a1, Scalar(base->field, 1));
    return compose_elems(x, y, z, v2, v1);
}

Vec CohomologyCategory::compose_elems(const std::string& x, const std::string& y,
                                      const std::string& z, const Vec& a2,
                                      const Vec& a1) const {
    const auto& hxy = at(x, y);
    const auto& hyz = at(y, z);
    const auto& hxz = at(x, z);
    Vec out;
    for (const auto& [n1, c1] : a1) {
        const int g1 = hxy.h_space.degree(n1);
        const Scalar sgn(base->field, g1 % 2 == 0 ? 1 : -1);
        Vec r1 = hxy.rep.apply_basis(n1);
        for (const auto& [n2, c2] : a2) {
            Vec r2 = hyz.rep.apply_basis(n2);
            Vec prod = base->mu_apply({{x, y, r1}, {y, z, r2}});
            vec_add(out, hxz.proj.apply(prod), c1 * c2 * sgn);
        }
    }
    return out;
}

std::optional<Vec> CohomologyCategory::find_unit(const std::string& x) const {
    const auto& hxx = at(x, x);
    auto unknowns = hxx.h_space.names_in_degree(0);
    if (unknowns.empty()) {
        // zero hom space: unit exists only if every H(hom(W,x)), H(hom(x,W)) vanishes
        for (const auto& w : base->objects) {
            if (!at(w, x).dims.empty() || !at(x, w).dims.empty()) return std::nullopt;
        }
        return Vec{};
    }
    // linear system: u composed with every H-basis class reproduces it
    std::vector<Vec> cols(unknowns.size());
    Vec rhs;
    int eq = 0;
    auto add_equation = [&](const std::vector<Vec>& lhs_cols, const Vec& want) {
        const std::string tag = "eq" + std::to_string(eq++) + ":";
        for (size_t j = 0; j < unknowns.size(); ++j)
            for (const auto& [n, c] : lhs_cols[j]) vec_add(cols[j], tag + n, c);
        for (const auto& [n, c] : want) vec_add(rhs, tag + n, c);
    };
    for (const auto& w : base->objects) {
        for (const auto& [fname, fdeg] : at(w, x).h_space.basis()) {
            std::vector<Vec> lhs(unknowns.size());
            for (size_t j = 0; j < unknowns.size(); ++j)
                lhs[j] = compose(w, x, x, unknowns[j], fname);
            Vec want;
            want.emplace(fname, Scalar(base->field, 1));
            add_equation(lhs, want);
        }
        for (const auto& [gname, gdeg] : at(x, w).h_space.basis()) {
            std::vector<Vec> lhs(unknowns.size());
            for (size_t j = 0; j < unknowns.size(); ++j)
                lhs[j] = compose(x, x, w, gname, unknowns[j]);
            Vec want;
            want.emplace(gname, Scalar(base->field, 1));
            add_equation(lhs, want);
        }
    }
    auto sol = solve_columns(base->field, cols, rhs);
    if (!sol) return std::nullopt;
    Vec unit;
    for (size_t j = 0; j < unknowns.size(); ++j) vec_add(unit, unknowns[j], (*sol)[j]);
    return unit;
}

CohomologyCategory cohomology_category(CategoryPtr cat) {
    CohomologyCategory hc;
    hc.base = cat;
    for (const auto& [pair, sp] : cat->homs) {
        if (sp.dim() == 0) continue;
        GradedLinearMap d1(cat->field, sp, sp, 1);
        for (const auto& [name, deg] : sp.basis()) {
            Vec img = cat->mu_eval({pair.first, pair.second}, {name});
            for (const auto& [out, c] : img) d1.add(name, out, c);
        }
        hc.h.emplace(pair, cohomology(ChainComplex(sp, d1), cat->field));
    }
    return hc;
}

UnitalityReport check_strict_unital(const AInfCategory& cat) {
    UnitalityReport report;
    auto fail = [&](const std::string& msg) {
        report.pass = false;
        report.violations.push_back(msg);
    };
    if (!cat.strict_units) {
        fail("no strict_units assignment present");
        return report;
    }
    for (const auto& obj : cat.objects)
        if (!cat.strict_units->count(obj)) fail("object " + obj + " has no declared unit");
    if (!report.pass) return report;

    for (const auto& obj : cat.objects) {
        const std::string e = cat.strict_units->at(obj);
        Vec de = cat.mu_eval({obj, obj}, {e});
        if (!vec_is_zero(de))
            fail("mu^1(e_" + obj + ") = " + vec_str(de) + " != 0");
    }
    // binary axioms over every basis element a in hom(X0, X1):
    //   (-1)^{|a|} mu^2(e_{X1}, a) = a   and   mu^2(a, e_{X0}) = a
    for (const auto& [pair, sp] : cat.homs) {
        const auto& [x0, x1] = pair;
        for (const auto& [a, deg] : sp.basis()) {
            const std::string e1 = cat.strict_units->at(x1);
            const std::string e0 = cat.strict_units->at(x0);
            Vec left = cat.mu_eval({x0, x1, x1}, {a, e1});
            Vec want;
            want.emplace(a, Scalar(cat.field, deg % 2 == 0 ? 1 : -1));
            if (left != want)
                fail("(-1)^{|a|} mu^2(e,a) != a for a='" + a + "' in hom(" + x0 + "," + x1 +
                     "): mu^2(e,a) = " + vec_str(left));
            Vec right = cat.mu_eval({x0, x0, x1}, {e0, a});
            Vec wanta;
            wanta.emplace(a, Scalar(cat.field, 1));
            if (right != wanta)
                fail("mu^2(a,e) != a for a='" + a + "' in hom(" + x0 + "," + x1 +
                     "): mu^2(a,e) = " + vec_str(right));
        }
    }
    // no mu^d entry with d >= 3 may involve a unit input
    for (const auto& [key, out] : cat.mu) {
        if (key.inputs.size() < 3 || vec_is_zero(out)) continue;
        for (size_t i = 0; i < key.inputs.size(); ++i) {
            if (key.chain[i] == key.chain[i + 1] && cat.is_unit(key.chain[i], key.inputs[i]))
                fail("mu^" + std::to_string(key.inputs.size()) + " entry with unit input '" +
                     key.inputs[i] + "' is nonzero");
        }
    }
    report.pass = report.violations.empty();
    return report;
}

UnitalityReport check_c_unital(const AInfCategory& cat) {
    UnitalityReport report;
    auto catp = std::make_shared<AInfCategory>(cat);
    CohomologyCategory hc = cohomology_category(catp);
    for (const auto& obj : cat.objects) {
        bool nonzero = false;
        for (const auto& w : cat.objects)
            if (!hc.dims(w, obj).empty() || !hc.dims(obj, w).empty()) nonzero = true;
        if (!nonzero) continue;  // isolated zero object: vacuously fine
        if (!hc.find_unit(obj)) {
            report.pass = false;
            report.violations.push_back("H(hom(" + obj + "," + obj +
                                        ")) has no two-sided unit");
        }
    }
    return report;
}

}  // namespace ainf

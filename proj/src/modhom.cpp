#include "ainf/modhom.hpp"

#include <functional>

namespace ainf {

namespace {

bool chain_has_unit_arg(const AInfCategory& cat, const ModKey& key) {
    for (size_t i = 0; i + 1 < key.chain.size(); ++i)
        if (key.chain[i] == key.chain[i + 1] && cat.is_unit(key.chain[i], key.args[i]))
            return true;
    return false;
}

void validate_nilpotence(const AInfCategory& cat) {
    if (!cat.strict_units)
        throw std::invalid_argument("hom-complex model needs a strictly unital category");
    for (const auto& [pair, sp] : cat.homs)
        for (const auto& [name, deg] : sp.basis()) {
            if (pair.first == pair.second && cat.is_unit(pair.first, name)) continue;
            if (deg < 2)
                throw std::invalid_argument(
                    "hom-complex model needs non-unit morphisms of degree >= 2; '" + name +
                    "' has degree " + std::to_string(deg));
        }
    for (const auto& [key, out] : cat.mu) {
        bool all_non_unit = true;
        for (size_t i = 0; i < key.inputs.size(); ++i)
            if (key.chain[i] == key.chain[i + 1] && cat.is_unit(key.chain[i], key.inputs[i]))
                all_non_unit = false;
        if (!all_non_unit) continue;
        for (const auto& [oname, c] : out)
            if (key.chain.front() == key.chain.back() &&
                cat.is_unit(key.chain.front(), oname) && !c.is_zero())
                throw std::invalid_argument("product of non-units hits the unit of " +
                                            key.chain.front());
    }
}

void validate_module_strictly_unital(const AInfCategory& cat, const AInfModule& m,
                                     const std::string& tag) {
    for (const auto& x : cat.objects) {
        if (!cat.strict_units->count(x)) continue;
        const std::string e = cat.strict_units->at(x);
        for (const auto& [b, g] : m.space(x).basis()) {
            Vec got = m.mu_eval(ModKey{{x, x}, b, {e}});
            if (got != Vec{{b, Scalar(cat.field, 1)}})
                throw std::invalid_argument(tag + " module is not strictly unital: mu^2('" +
                                            b + "', e) = " + vec_str(got));
        }
    }
    for (const auto& [key, out] : m.mu) {
        if (key.chain.size() < 3) continue;
        if (chain_has_unit_arg(cat, key) && !out.empty())
            throw std::invalid_argument(tag +
                                        " module has a nonzero mu^{>=3} entry with a unit "
                                        "argument");
    }
}

std::string flat_name(const ModKey& key, const std::string& out) {
    std::string s = "T" + std::to_string(key.chain.size()) + "(";
    for (size_t i = 0; i < key.chain.size(); ++i) s += (i ? "," : "") + key.chain[i];
    s += ";" + key.b + ";";
    for (size_t i = 0; i < key.args.size(); ++i) s += (i ? "," : "") + key.args[i];
    s += ";" + out + ")";
    return s;
}

}  // namespace

ModuleHomComplex module_hom_complex(const ModulePtr& m0, const ModulePtr& m1, int deg_lo,
                                    int deg_hi) {
    const auto& cat = *m0->cat;
    validate_nilpotence(cat);
    validate_module_strictly_unital(cat, *m0, "source");
    validate_module_strictly_unital(cat, *m1, "target");

    // pad the window so that cohomology inside it is computed exactly
    const int lo = deg_lo - 1, hi = deg_hi + 1;

    int max_delta = 0;
    bool any = false;
    for (const auto& x : cat.objects) {
        for (const auto& [n1, g1] : m1->space(x).basis())
            for (const auto& x0 : cat.objects)
                for (const auto& [n0, g0] : m0->space(x0).basis()) {
                    max_delta = any ? std::max(max_delta, g1 - g0) : g1 - g0;
                    any = true;
                }
    }
    ModuleHomComplex out;
    if (!any) {
        GradedVectorSpace empty;
        out.complex = ChainComplex(empty, GradedLinearMap(cat.field, empty, empty, 1));
        return out;
    }

    // enumerate unit-free elementary components with degree in [lo, hi];
    // each non-unit argument contributes reduced degree >= 1, so the arity
    // is bounded by max_delta - lo + 1
    const int max_arity = std::max(1, max_delta - lo + 1);
    std::vector<std::pair<std::string, int>> flat_basis;
    for (int d = 1; d <= max_arity; ++d) {
        std::vector<std::string> chain;
        std::function<void()> emit = [&]() {
            std::vector<std::string> args(d - 1);
            std::function<void(int)> loop = [&](int i) {
                if (i == d - 1) {
                    for (const auto& [b, bdeg] : m0->space(chain.back()).basis()) {
                        int total = bdeg;
                        for (int j = 0; j + 1 < d; ++j)
                            total += cat.hom(chain[j], chain[j + 1]).degree(args[j]);
                        for (const auto& [o, og] : m1->space(chain.front()).basis()) {
                            const int r = og - total + d - 1;
                            if (r < lo || r > hi) continue;
                            ModKey key{chain, b, args};
                            out.basis.emplace_back(key, o);
                            flat_basis.emplace_back(flat_name(key, o), r);
                        }
                    }
                    return;
                }
                for (const auto& [name, g] : cat.hom(chain[i], chain[i + 1]).basis()) {
                    if (chain[i] == chain[i + 1] && cat.is_unit(chain[i], name)) continue;
                    args[i] = name;
                    loop(i + 1);
                }
            };
            loop(0);
        };
        std::function<void(int)> build = [&](int i) {
            if (i == d) {
                if (m0->space(chain.back()).dim() > 0 &&
                    m1->space(chain.front()).dim() > 0)
                    emit();
                return;
            }
            for (const auto& y : cat.objects) {
                if (!chain.empty()) {
                    bool has_non_unit = false;
                    for (const auto& [name, g] : cat.hom(chain.back(), y).basis())
                        if (!(chain.back() == y && cat.is_unit(y, name))) has_non_unit = true;
                    if (!has_non_unit) continue;
                }
                chain.push_back(y);
                build(i + 1);
                chain.pop_back();
            }
        };
        chain.clear();
        build(0);
    }

    GradedVectorSpace space(flat_basis);
    for (int i = 0; i < static_cast<int>(out.basis.size()); ++i)
        out.index[flat_basis[i].first] = i;

    GradedLinearMap diff(cat.field, space, space, 1);
    for (size_t i = 0; i < out.basis.size(); ++i) {
        const auto& [key, o] = out.basis[i];
        const int r = space.degree(flat_basis[i].first);
        PreModuleHom elem;
        elem.source = m0;
        elem.target = m1;
        elem.degree = r;
        elem.table[key] = Vec{{o, Scalar(cat.field, 1)}};
        PreModuleHom de = mu1_Q(elem);
        for (const auto& [dkey, dvec] : de.table) {
            if (chain_has_unit_arg(cat, dkey))
                throw std::logic_error(
                    "differential leaves the strictly unital subcomplex at " +
                    flat_name(dkey, dvec.begin()->first));
            for (const auto& [dout, c] : dvec) {
                const std::string dn = flat_name(dkey, dout);
                auto it = out.index.find(dn);
                if (it == out.index.end()) {
                    if (r + 1 >= lo && r + 1 <= hi)
                        throw std::logic_error("hom-complex enumeration is incomplete at " +
                                               dn);
                    continue;  // component falls outside the padded window
                }
                diff.add(flat_basis[i].first, dn, c);
            }
        }
    }
    out.complex = ChainComplex(space, diff);
    return out;
}

std::map<int, int> module_hom_h_dims(const ModulePtr& m0, const ModulePtr& m1, int deg_lo,
                                     int deg_hi) {
    auto hc = module_hom_complex(m0, m1, deg_lo, deg_hi);
    auto h = cohomology(hc.complex, m0->cat->field);
    std::map<int, int> dims;
    for (const auto& [g, n] : h.dims)
        if (g >= deg_lo && g <= deg_hi) dims[g] = n;
    return dims;
}

GradedLinearMap compose_left_map(const PreModuleHom& t, const ModulePtr& n,
                                 const ModuleHomComplex& from_hom,
                                 const ModuleHomComplex& to_hom) {
    const auto& cat = *t.source->cat;
    GradedLinearMap f(cat.field, from_hom.complex.space, to_hom.complex.space, t.degree);
    for (size_t i = 0; i < from_hom.basis.size(); ++i) {
        const auto& [key, o] = from_hom.basis[i];
        PreModuleHom elem;
        elem.source = t.target;
        elem.target = n;
        elem.degree = from_hom.complex.space.degree(flat_name(key, o));
        elem.table[key] = Vec{{o, Scalar(cat.field, 1)}};
        PreModuleHom comp = mu2_Q(elem, t);
        for (const auto& [ckey, cvec] : comp.table)
            for (const auto& [cout, c] : cvec) {
                auto it = to_hom.index.find(flat_name(ckey, cout));
                if (it == to_hom.index.end()) continue;
                f.add(flat_name(key, o), flat_name(ckey, cout), c);
            }
    }
    return f;
}

}  // namespace ainf

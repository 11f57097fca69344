#include "ainf/module.hpp"

#include <functional>
#include <random>

namespace ainf {

namespace {
const GradedVectorSpace kEmpty{};

Scalar sgn(const Field& f, long exp) { return Scalar(f, ((exp % 2) + 2) % 2 == 0 ? 1 : -1); }

int arg_degree_sum(const AInfCategory& cat, const std::vector<std::string>& chain,
                   const std::vector<std::string>& args, size_t from, bool reduced) {
    int s = 0;
    for (size_t i = from; i < args.size(); ++i) {
        s += cat.hom(chain[i], chain[i + 1]).degree(args[i]);
        if (reduced) s -= 1;
    }
    return s;
}
}  // namespace

const GradedVectorSpace& AInfModule::space(const std::string& x) const {
    auto it = spaces.find(x);
    return it == spaces.end() ? kEmpty : it->second;
}

Vec AInfModule::mu_eval(const ModKey& key) const {
    auto it = mu.find(key);
    return it == mu.end() ? Vec{} : it->second;
}

void AInfModule::validate() const {
    for (const auto& [x, sp] : spaces)
        if (!cat->has_object(x))
            throw std::invalid_argument("module space over unknown object " + x);
    for (const auto& [key, out] : mu) {
        const int d = static_cast<int>(key.chain.size());
        if (d < 1 || static_cast<int>(key.args.size()) != d - 1)
            throw std::invalid_argument("malformed module mu key");
        if (d > arity_bound) throw std::invalid_argument("module mu exceeds arity bound");
        for (int i = 0; i + 1 < d; ++i)
            if (!cat->hom(key.chain[i], key.chain[i + 1]).has(key.args[i]))
                throw std::invalid_argument("module mu arg '" + key.args[i] +
                                            "' not in hom(" + key.chain[i] + "," +
                                            key.chain[i + 1] + ")");
        if (!space(key.chain.back()).has(key.b))
            throw std::invalid_argument("module mu element '" + key.b + "' not in M(" +
                                        key.chain.back() + ")");
        const int total = space(key.chain.back()).degree(key.b) +
                          arg_degree_sum(*cat, key.chain, key.args, 0, false);
        for (const auto& [name, c] : out) {
            if (!space(key.chain.front()).has(name))
                throw std::invalid_argument("module mu output '" + name + "' not in M(" +
                                            key.chain.front() + ")");
            if (space(key.chain.front()).degree(name) != total + 2 - d)
                throw std::invalid_argument("module mu entry violates the degree rule at '" +
                                            key.b + "'");
        }
    }
}

ChainComplex AInfModule::complex_at(const std::string& x, bool plain) const {
    const auto& sp = space(x);
    GradedLinearMap d(cat->field, sp, sp, 1);
    for (const auto& [name, deg] : sp.basis()) {
        Vec img = mu_eval(ModKey{{x}, name, {}});
        const Scalar s = plain ? Scalar(cat->field, 1) : sgn(cat->field, deg);
        for (const auto& [out, c] : img) d.add(name, out, c * s);
    }
    return ChainComplex(sp, d);
}

std::map<std::string, std::map<int, int>> AInfModule::h_dims() const {
    std::map<std::string, std::map<int, int>> dims;
    for (const auto& x : cat->objects) {
        if (space(x).dim() == 0) continue;
        dims[x] = cohomology(complex_at(x, false), cat->field).dims;
    }
    return dims;
}

bool AInfModule::is_zero() const {
    for (const auto& [x, sp] : spaces)
        if (sp.dim() > 0) return false;
    return true;
}

Vec PreModuleHom::eval(const ModKey& key) const {
    auto it = table.find(key);
    return it == table.end() ? Vec{} : it->second;
}

int PreModuleHom::max_arity() const {
    int m = 0;
    for (const auto& [key, out] : table) m = std::max(m, static_cast<int>(key.chain.size()));
    return m;
}

void PreModuleHom::validate() const {
    const auto& cat = *source->cat;
    for (const auto& [key, out] : table) {
        const int d = static_cast<int>(key.chain.size());
        if (d < 1 || static_cast<int>(key.args.size()) != d - 1)
            throw std::invalid_argument("malformed hom key");
        for (int i = 0; i + 1 < d; ++i)
            if (!cat.hom(key.chain[i], key.chain[i + 1]).has(key.args[i]))
                throw std::invalid_argument("hom arg not in hom space");
        if (!source->space(key.chain.back()).has(key.b))
            throw std::invalid_argument("hom element '" + key.b + "' not in source M(" +
                                        key.chain.back() + ")");
        const int total = source->space(key.chain.back()).degree(key.b) +
                          arg_degree_sum(cat, key.chain, key.args, 0, false);
        for (const auto& [name, c] : out) {
            if (!target->space(key.chain.front()).has(name))
                throw std::invalid_argument("hom output '" + name + "' not in target M(" +
                                            key.chain.front() + ")");
            if (target->space(key.chain.front()).degree(name) != total + degree - d + 1)
                throw std::invalid_argument("hom entry violates the degree rule at '" + key.b +
                                            "' (arity " + std::to_string(d) + ")");
        }
    }
}

PreModuleHom PreModuleHom::scaled(const Scalar& c) const {
    PreModuleHom out = *this;
    out.table.clear();
    if (c.is_zero()) return out;
    for (const auto& [key, v] : table) {
        Vec w;
        for (const auto& [n, x] : v) w.emplace(n, x * c);
        out.table.emplace(key, std::move(w));
    }
    return out;
}

PreModuleHom PreModuleHom::operator+(const PreModuleHom& o) const {
    if (degree != o.degree) throw std::invalid_argument("sum of homs of different degree");
    PreModuleHom out = *this;
    for (const auto& [key, v] : o.table) {
        Vec& slot = out.table[key];
        vec_add(slot, v, Scalar(source->cat->field, 1));
        if (vec_is_zero(slot)) out.table.erase(key);
    }
    return out;
}

ModRelReport check_module_relations(const AInfModule& m) {
    ModRelReport report;
    const auto& cat = *m.cat;
    const int range = std::max(2 * m.arity_bound - 1, m.arity_bound + cat.arity_bound - 1);

    for (int d = 1; d <= range; ++d) {
        std::vector<std::vector<std::string>> chains;
        std::vector<std::string> cur;
        std::function<void(int)> build = [&](int i) {
            if (i == d) {
                if (m.space(cur.back()).dim() > 0) chains.push_back(cur);
                return;
            }
            for (const auto& y : cat.objects) {
                if (!cur.empty() && cat.hom(cur.back(), y).dim() == 0) continue;
                cur.push_back(y);
                build(i + 1);
                cur.pop_back();
            }
        };
        build(0);

        for (const auto& chain : chains) {
            std::vector<std::string> args(d - 1);
            std::function<void(int)> loop = [&](int i) {
                if (i == d - 1) {
                    for (const auto& [b, bdeg] : m.space(chain.back()).basis()) {
                        ++report.checked_tuples;
                        Vec residual;
                        // first sum: mu_M(mu_M(b, a_{d-1}..a_{n+1}), a_n..a_1)
                        for (int n = 0; n < d; ++n) {
                            const int se = arg_degree_sum(cat, chain, args, 0, true) -
                                           arg_degree_sum(cat, chain, args, n, true);
                            std::vector<std::string> ichain(chain.begin() + n, chain.end());
                            std::vector<std::string> iargs(args.begin() + n, args.end());
                            Vec inner = m.mu_eval(ModKey{ichain, b, iargs});
                            if (vec_is_zero(inner)) continue;
                            std::vector<std::string> ochain(chain.begin(),
                                                            chain.begin() + n + 1);
                            std::vector<std::string> oargs(args.begin(), args.begin() + n);
                            for (const auto& [o, oc] : inner) {
                                Vec outer = m.mu_eval(ModKey{ochain, o, oargs});
                                vec_add(residual, outer, oc * sgn(cat.field, se));
                            }
                        }
                        // second sum: mu_M(b, ..., mu_A(a_{n+m}..a_{n+1}), ...)
                        for (int mm = 1; mm <= cat.arity_bound; ++mm)
                            for (int n = 0; n + mm <= d - 1; ++n) {
                                const int se = arg_degree_sum(cat, chain, args, 0, true) -
                                               arg_degree_sum(cat, chain, args, n, true);
                                std::vector<std::string> achain(
                                    chain.begin() + n, chain.begin() + n + mm + 1);
                                std::vector<std::string> aargs(args.begin() + n,
                                                               args.begin() + n + mm);
                                Vec inner = cat.mu_eval(achain, aargs);
                                if (vec_is_zero(inner)) continue;
                                std::vector<std::string> ochain(chain.begin(),
                                                                chain.begin() + n + 1);
                                ochain.insert(ochain.end(), chain.begin() + n + mm,
                                              chain.end());
                                for (const auto& [o, oc] : inner) {
                                    std::vector<std::string> oargs(args.begin(),
                                                                   args.begin() + n);
                                    oargs.push_back(o);
                                    oargs.insert(oargs.end(), args.begin() + n + mm,
                                                 args.end());
                                    Vec outer = m.mu_eval(ModKey{ochain, b, oargs});
                                    vec_add(residual, outer, oc * sgn(cat.field, se));
                                }
                            }
                        if (!vec_is_zero(residual))
                            report.failures.push_back({d, ModKey{chain, b, args}, residual});
                    }
                    return;
                }
                for (const auto& [name, deg] : cat.hom(chain[i], chain[i + 1]).basis()) {
                    args[i] = name;
                    loop(i + 1);
                }
            };
            loop(0);
        }
    }
    report.pass = report.failures.empty();
    return report;
}

namespace {

using EntryRef = std::pair<const ModKey*, const Vec*>;

std::map<std::pair<std::string, std::string>, std::vector<EntryRef>> index_by_element(
    const ModTable& t) {
    std::map<std::pair<std::string, std::string>, std::vector<EntryRef>> idx;
    for (const auto& [key, out] : t) idx[{key.chain.back(), key.b}].push_back({&key, &out});
    return idx;
}

// All terms outer(inner(b, argsI), argsO) with the hom-category sign
// (-1)^{|b| + sum over inner args of (|a|-1)}.
void push_compose(const AInfCategory& cat, const AInfModule& inner_source,
                  const ModTable& outer, const ModTable& inner, ModTable& result) {
    auto outer_idx = index_by_element(outer);
    for (const auto& [ikey, ivec] : inner) {
        const int bdeg = inner_source.space(ikey.chain.back()).degree(ikey.b);
        const Scalar s =
            sgn(cat.field, bdeg + arg_degree_sum(cat, ikey.chain, ikey.args, 0, true));
        for (const auto& [oname, oc] : ivec) {
            auto it = outer_idx.find({ikey.chain.front(), oname});
            if (it == outer_idx.end()) continue;
            for (const auto& [okeyp, ovecp] : it->second) {
                ModKey key;
                key.chain.assign(okeyp->chain.begin(), okeyp->chain.end() - 1);
                key.chain.insert(key.chain.end(), ikey.chain.begin(), ikey.chain.end());
                key.b = ikey.b;
                key.args = okeyp->args;
                key.args.insert(key.args.end(), ikey.args.begin(), ikey.args.end());
                Vec& slot = result[key];
                vec_add(slot, *ovecp, oc * s);
                if (vec_is_zero(slot)) result.erase(key);
            }
        }
    }
}

// All terms t(b, ..., mu_A(...), ...) over every insertion position.
void push_insert(const AInfCategory& cat, const AInfModule& source, const ModTable& homs,
                 ModTable& result) {
    std::map<std::tuple<std::string, std::string, std::string>,
             std::vector<std::pair<const MuKey*, Scalar>>>
        by_out;
    for (const auto& [key, out] : cat.mu)
        for (const auto& [oname, c] : out)
            by_out[{key.chain.front(), key.chain.back(), oname}].push_back({&key, c});

    for (const auto& [tkey, tvec] : homs) {
        const int d = static_cast<int>(tkey.chain.size());
        const int bdeg = source.space(tkey.chain.back()).degree(tkey.b);
        for (int p = 0; p + 1 < d; ++p) {
            auto it = by_out.find({tkey.chain[p], tkey.chain[p + 1], tkey.args[p]});
            if (it == by_out.end()) continue;
            for (const auto& [akeyp, ac] : it->second) {
                ModKey key;
                key.chain.assign(tkey.chain.begin(), tkey.chain.begin() + p + 1);
                key.chain.insert(key.chain.end(), akeyp->chain.begin() + 1,
                                 akeyp->chain.end() - 1);
                key.chain.insert(key.chain.end(), tkey.chain.begin() + p + 1,
                                 tkey.chain.end());
                key.b = tkey.b;
                key.args.assign(tkey.args.begin(), tkey.args.begin() + p);
                key.args.insert(key.args.end(), akeyp->inputs.begin(), akeyp->inputs.end());
                key.args.insert(key.args.end(), tkey.args.begin() + p + 1, tkey.args.end());
                // dagger sign: |b| plus reduced degrees of the expanded args
                // strictly left of the insertion point
                int exp = bdeg + arg_degree_sum(cat, tkey.chain, tkey.args, p + 1, true);
                for (size_t i = 0; i < akeyp->inputs.size(); ++i)
                    exp += cat.hom(akeyp->chain[i], akeyp->chain[i + 1])
                               .degree(akeyp->inputs[i]) -
                           1;
                Vec& slot = result[key];
                vec_add(slot, tvec, ac * sgn(cat.field, exp));
                if (vec_is_zero(slot)) result.erase(key);
            }
        }
    }
}

}  // namespace

PreModuleHom mu1_Q(const PreModuleHom& t) {
    const auto& cat = *t.source->cat;
    PreModuleHom out;
    out.source = t.source;
    out.target = t.target;
    out.degree = t.degree + 1;
    push_compose(cat, *t.source, t.target->mu, t.table, out.table);  // mu_M1 after t
    push_compose(cat, *t.source, t.table, t.source->mu, out.table);  // t after mu_M0
    push_insert(cat, *t.source, t.table, out.table);                 // mu_A inserted
    out.validate();
    return out;
}

PreModuleHom mu2_Q(const PreModuleHom& t2, const PreModuleHom& t1) {
    if (t1.target->spaces != t2.source->spaces || t1.target->mu != t2.source->mu)
        throw std::invalid_argument("mu2_Q: morphisms not composable");
    const auto& cat = *t1.source->cat;
    PreModuleHom out;
    out.source = t1.source;
    out.target = t2.target;
    out.degree = t1.degree + t2.degree;
    push_compose(cat, *t1.source, t2.table, t1.table, out.table);
    out.validate();
    return out;
}

bool is_closed(const PreModuleHom& t) { return mu1_Q(t).table.empty(); }

std::map<std::string, GradedLinearMap> h_of_t(const PreModuleHom& t) {
    const auto& cat = *t.source->cat;
    std::map<std::string, GradedLinearMap> out;
    for (const auto& x : cat.objects) {
        auto h0 = cohomology(t.source->complex_at(x, false), cat.field);
        auto h1 = cohomology(t.target->complex_at(x, false), cat.field);
        GradedLinearMap ht(cat.field, h0.h_space, h1.h_space, t.degree);
        for (const auto& [hname, hdeg] : h0.h_space.basis()) {
            Vec z = h0.rep.apply_basis(hname);
            Vec w;
            for (const auto& [b, c] : z) {
                Vec tb = t.eval(ModKey{{x}, b, {}});
                vec_add(w, tb, c * sgn(cat.field, t.source->space(x).degree(b)));
            }
            for (const auto& [cls, c] : h1.proj.apply(w)) ht.add(hname, cls, c);
        }
        out.emplace(x, std::move(ht));
    }
    return out;
}

QuasiIsoVerdict quasi_iso_check(const PreModuleHom& t) {
    QuasiIsoVerdict verdict;
    if (!is_closed(t)) {
        verdict.failures.push_back("morphism is not mu1_Q-closed");
        return verdict;
    }
    verdict.is_quasi_iso = true;
    auto maps = h_of_t(t);
    for (const auto& [x, ht] : maps) {
        auto d0 = ht.source().dims_by_degree();
        auto d1 = ht.target().dims_by_degree();
        std::map<int, int> d1_shifted;
        for (const auto& [g, n] : d1) d1_shifted[g - t.degree] = n;
        if (d0 != d1_shifted) {
            verdict.is_quasi_iso = false;
            verdict.failures.push_back("H dims differ at object " + x);
            continue;
        }
        auto rd = gauss_rank(ht);
        for (const auto& [g, n] : d0) {
            const int r = rd.rank_by_degree.count(g) ? rd.rank_by_degree.at(g) : 0;
            if (r != n) {
                verdict.is_quasi_iso = false;
                verdict.failures.push_back("H(t) not invertible at object " + x +
                                           ", degree " + std::to_string(g));
            }
        }
    }
    return verdict;
}

ModulePtr yoneda_module(const CategoryPtr& cat, const std::string& y) {
    if (!cat->has_object(y)) throw std::invalid_argument("unknown object " + y);
    auto m = std::make_shared<AInfModule>();
    m->cat = cat;
    m->arity_bound = cat->arity_bound;
    for (const auto& x : cat->objects) m->spaces[x] = cat->hom(x, y);
    for (const auto& [key, out] : cat->mu) {
        if (key.chain.back() != y) continue;
        ModKey mkey;
        mkey.chain.assign(key.chain.begin(), key.chain.end() - 1);
        mkey.b = key.inputs.back();
        mkey.args.assign(key.inputs.begin(), key.inputs.end() - 1);
        m->mu[mkey] = out;
    }
    m->validate();
    return m;
}

PreModuleHom yoneda_first_order(const CategoryPtr& cat, const std::string& y,
                                const std::string& z, const Vec& t) {
    PreModuleHom out;
    out.source = yoneda_module(cat, y);
    out.target = yoneda_module(cat, z);
    int deg = 0;
    bool first = true;
    for (const auto& [name, c] : t) {
        const int g = cat->hom(y, z).degree(name);
        if (first)
            deg = g;
        else if (g != deg)
            throw std::invalid_argument("yoneda_first_order needs a homogeneous element");
        first = false;
    }
    out.degree = deg;
    // (l^1 t)^d(b, ...) = mu^{d+1}(t, b, ...): category entries whose two last
    // application-order inputs are (b, t-component)
    for (const auto& [key, vec] : cat->mu) {
        const size_t dd = key.inputs.size();
        if (dd < 2) continue;
        if (key.chain[dd - 1] != y || key.chain[dd] != z) continue;
        auto it = t.find(key.inputs.back());
        if (it == t.end()) continue;
        ModKey mkey;
        mkey.chain.assign(key.chain.begin(), key.chain.end() - 2);
        mkey.b = key.inputs[dd - 2];
        mkey.args.assign(key.inputs.begin(), key.inputs.end() - 2);
        Vec& slot = out.table[mkey];
        vec_add(slot, vec, it->second);
        if (vec_is_zero(slot)) out.table.erase(mkey);
    }
    out.validate();
    return out;
}

ModulePtr tensor_module(const ChainComplex& z, const ModulePtr& m) {
    const auto& cat = *m->cat;
    auto out = std::make_shared<AInfModule>();
    out->cat = m->cat;
    out->arity_bound = std::max(m->arity_bound, 1);
    for (const auto& x : cat.objects) out->spaces[x] = z.space.tensor(m->space(x));
    for (const auto& [key, vec] : m->mu) {
        for (const auto& [zn, zdeg] : z.space.basis()) {
            ModKey tkey = key;
            tkey.b = GradedVectorSpace::pair_name(zn, key.b);
            Vec& slot = out->mu[tkey];
            for (const auto& [o, c] : vec)
                vec_add(slot, GradedVectorSpace::pair_name(zn, o), c);
            if (vec_is_zero(slot)) out->mu.erase(tkey);
        }
    }
    // (-1)^{|b|-1} dz (x) b contribution to mu^1
    for (const auto& x : cat.objects) {
        for (const auto& [zn, zdeg] : z.space.basis()) {
            Vec dz = z.differential.apply_basis(zn);
            if (vec_is_zero(dz)) continue;
            for (const auto& [bn, bdeg] : m->space(x).basis()) {
                ModKey tkey{{x}, GradedVectorSpace::pair_name(zn, bn), {}};
                Vec& slot = out->mu[tkey];
                const Scalar s = sgn(cat.field, bdeg - 1);
                for (const auto& [zo, c] : dz)
                    vec_add(slot, GradedVectorSpace::pair_name(zo, bn), c * s);
                if (vec_is_zero(slot)) out->mu.erase(tkey);
            }
        }
    }
    out->validate();
    return out;
}

ModulePtr shift_module(int sigma, const ModulePtr& m) {
    if (sigma == 0) return m;
    auto out = std::make_shared<AInfModule>(*m);
    for (auto& [x, sp] : out->spaces) sp = sp.shift(sigma);
    out->validate();
    return out;
}

PreModuleHom minimize_tensor(const ChainComplex& z, const ModulePtr& m) {
    const auto& cat = *m->cat;
    auto hz = cohomology(z, cat.field);
    ChainComplex hzcx(hz.h_space,
                      GradedLinearMap::zero(cat.field, hz.h_space, hz.h_space, 1));
    PreModuleHom t;
    t.source = tensor_module(hzcx, m);
    t.target = tensor_module(z, m);
    t.degree = 0;
    for (const auto& x : cat.objects) {
        for (const auto& [hn, hdeg] : hz.h_space.basis()) {
            Vec rep = hz.rep.apply_basis(hn);
            for (const auto& [bn, bdeg] : m->space(x).basis()) {
                ModKey key{{x}, GradedVectorSpace::pair_name(hn, bn), {}};
                Vec& slot = t.table[key];
                const Scalar s = sgn(cat.field, hdeg + bdeg);
                for (const auto& [zn, c] : rep)
                    vec_add(slot, GradedVectorSpace::pair_name(zn, bn), c * s);
                if (vec_is_zero(slot)) t.table.erase(key);
            }
        }
    }
    t.validate();
    return t;
}

ModulePtr evaluation_source(const CategoryPtr& cat, const std::string& v,
                            const ModulePtr& y) {
    return tensor_module(y->complex_at(v, true), yoneda_module(cat, v));
}

PreModuleHom evaluation(const CategoryPtr& cat, const std::string& v, const ModulePtr& y) {
    PreModuleHom ev;
    ev.source = evaluation_source(cat, v, y);
    ev.target = y;
    ev.degree = 0;
    // ev^d(y (x) v, a_{d-1}, ..., a_1) = mu^{d+1}_Y(y, v, a_{d-1}, ..., a_1)
    for (const auto& [key, vec] : y->mu) {
        if (key.chain.size() < 2) continue;
        if (key.chain.back() != v) continue;
        ModKey ekey;
        ekey.chain.assign(key.chain.begin(), key.chain.end() - 1);
        ekey.b = GradedVectorSpace::pair_name(key.b, key.args.back());
        ekey.args.assign(key.args.begin(), key.args.end() - 1);
        Vec& slot = ev.table[ekey];
        vec_add(slot, vec, Scalar(cat->field, 1));
        if (vec_is_zero(slot)) ev.table.erase(ekey);
    }
    ev.validate();
    return ev;
}

ModuleCone cone(const PreModuleHom& t) {
    if (t.degree != 0) throw std::invalid_argument("cone needs a degree-0 morphism");
    if (!is_closed(t)) throw std::invalid_argument("cone needs a mu1_Q-closed morphism");
    const auto& cat = *t.source->cat;
    auto c = std::make_shared<AInfModule>();
    c->cat = t.source->cat;
    c->arity_bound = std::max({t.source->arity_bound, t.target->arity_bound, t.max_arity()});
    for (const auto& x : cat.objects) {
        std::vector<std::pair<std::string, int>> basis;
        for (const auto& [n, g] : t.source->space(x).basis())
            basis.emplace_back(cone0(n), g - 1);
        for (const auto& [n, g] : t.target->space(x).basis()) basis.emplace_back(cone1(n), g);
        c->spaces[x] = GradedVectorSpace(std::move(basis));
    }
    for (const auto& [key, vec] : t.source->mu) {
        ModKey k = key;
        k.b = cone0(key.b);
        Vec& slot = c->mu[k];
        for (const auto& [o, cc] : vec) vec_add(slot, cone0(o), cc);
        if (vec_is_zero(slot)) c->mu.erase(k);
    }
    for (const auto& [key, vec] : t.target->mu) {
        ModKey k = key;
        k.b = cone1(key.b);
        Vec& slot = c->mu[k];
        for (const auto& [o, cc] : vec) vec_add(slot, cone1(o), cc);
        if (vec_is_zero(slot)) c->mu.erase(k);
    }
    for (const auto& [key, vec] : t.table) {
        ModKey k = key;
        k.b = cone0(key.b);
        Vec& slot = c->mu[k];
        for (const auto& [o, cc] : vec) vec_add(slot, cone1(o), cc);
        if (vec_is_zero(slot)) c->mu.erase(k);
    }
    c->validate();

    ModuleCone result;
    result.cone = c;

    result.iota.source = t.target;
    result.iota.target = c;
    result.iota.degree = 0;
    for (const auto& x : cat.objects)
        for (const auto& [n, g] : t.target->space(x).basis())
            result.iota.table[ModKey{{x}, n, {}}] = Vec{{cone1(n), sgn(cat.field, g)}};
    result.iota.validate();

    result.pi.source = c;
    result.pi.target = shift_module(1, t.source);
    result.pi.degree = 0;
    for (const auto& x : cat.objects)
        for (const auto& [n, g] : t.source->space(x).basis())
            result.pi.table[ModKey{{x}, cone0(n), {}}] = Vec{{n, sgn(cat.field, g - 1)}};
    result.pi.validate();
    return result;
}

ModulePtr relabel_module(
    const ModulePtr& m,
    const std::function<std::string(const std::string&, const std::string&)>& fn) {
    auto out = std::make_shared<AInfModule>();
    out->cat = m->cat;
    out->arity_bound = m->arity_bound;
    for (const auto& [x, sp] : m->spaces) {
        std::vector<std::pair<std::string, int>> basis;
        for (const auto& [n, g] : sp.basis()) basis.emplace_back(fn(x, n), g);
        out->spaces[x] = GradedVectorSpace(std::move(basis));
    }
    for (const auto& [key, vec] : m->mu) {
        ModKey k = key;
        k.b = fn(key.chain.back(), key.b);
        Vec w;
        for (const auto& [o, c] : vec) vec_add(w, fn(key.chain.front(), o), c);
        out->mu[k] = std::move(w);
    }
    out->validate();
    return out;
}

ModulePtr relabel_module_signed(
    const ModulePtr& m,
    const std::function<std::pair<std::string, Scalar>(const std::string&,
                                                       const std::string&)>& fn) {
    auto out = std::make_shared<AInfModule>();
    out->cat = m->cat;
    out->arity_bound = m->arity_bound;
    for (const auto& [x, sp] : m->spaces) {
        std::vector<std::pair<std::string, int>> basis;
        for (const auto& [n, g] : sp.basis()) basis.emplace_back(fn(x, n).first, g);
        out->spaces[x] = GradedVectorSpace(std::move(basis));
    }
    // mu'(phi b, args) = phi(mu(b, args)): divide by the source coefficient
    for (const auto& [key, vec] : m->mu) {
        auto [bn, bc] = fn(key.chain.back(), key.b);
        ModKey k = key;
        k.b = bn;
        Vec w;
        for (const auto& [o, c] : vec) {
            auto [on, oc] = fn(key.chain.front(), o);
            vec_add(w, on, c * oc / bc);
        }
        if (!vec_is_zero(w)) out->mu[k] = std::move(w);
    }
    out->validate();
    return out;
}

PreModuleHom transport_hom(
    const PreModuleHom& t, const ModulePtr& new_src, const ModulePtr& new_dst,
    const std::function<std::pair<std::string, Scalar>(const std::string&,
                                                       const std::string&)>& src_fn,
    const std::function<std::pair<std::string, Scalar>(const std::string&,
                                                       const std::string&)>& dst_fn) {
    PreModuleHom out;
    out.source = new_src;
    out.target = new_dst;
    out.degree = t.degree;
    for (const auto& [key, vec] : t.table) {
        auto [bn, bc] = src_fn(key.chain.back(), key.b);
        ModKey k = key;
        k.b = bn;
        Vec w;
        for (const auto& [o, c] : vec) {
            auto [on, oc] = dst_fn(key.chain.front(), o);
            vec_add(w, on, c * oc / bc);
        }
        if (!vec_is_zero(w)) out.table[k] = std::move(w);
    }
    out.validate();
    return out;
}

PreModuleHom random_pre_module_hom(const ModulePtr& m0, const ModulePtr& m1, int degree,
                                   int max_arity, unsigned seed, int density_percent,
                                   bool unit_free_args) {
    const auto& cat = *m0->cat;
    std::mt19937 rng(seed);
    PreModuleHom t;
    t.source = m0;
    t.target = m1;
    t.degree = degree;
    for (int d = 1; d <= max_arity; ++d) {
        std::vector<std::string> chain;
        std::function<void()> emit = [&]() {
            std::vector<std::string> args(d - 1);
            std::function<void(int)> loop = [&](int i) {
                if (i == d - 1) {
                    for (const auto& [b, bdeg] : m0->space(chain.back()).basis()) {
                        const int want = bdeg + arg_degree_sum(cat, chain, args, 0, false) +
                                         degree - d + 1;
                        for (const auto& [o, og] : m1->space(chain.front()).basis()) {
                            if (og != want) continue;
                            if (static_cast<int>(rng() % 100) >= density_percent) continue;
                            long coef = static_cast<long>(rng() % 5) - 2;
                            if (coef == 0) coef = 1;
                            ModKey key{chain, b, args};
                            vec_add(t.table[key], o, Scalar(cat.field, coef));
                            if (vec_is_zero(t.table[key])) t.table.erase(key);
                        }
                    }
                    return;
                }
                for (const auto& [name, g] : cat.hom(chain[i], chain[i + 1]).basis()) {
                    if (unit_free_args && chain[i] == chain[i + 1] &&
                        cat.is_unit(chain[i], name))
                        continue;
                    args[i] = name;
                    loop(i + 1);
                }
            };
            loop(0);
        };
        std::function<void(int)> build = [&](int i) {
            if (i == d) {
                if (m0->space(chain.back()).dim() > 0) emit();
                return;
            }
            for (const auto& y : cat.objects) {
                if (!chain.empty() && cat.hom(chain.back(), y).dim() == 0) continue;
                chain.push_back(y);
                build(i + 1);
                chain.pop_back();
            }
        };
        chain.clear();
        build(0);
    }
    t.validate();
    return t;
}

}  // namespace ainf

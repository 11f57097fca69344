#include "ainf/twisted.hpp"

#include <algorithm>
#include <functional>

namespace ainf {

namespace {
Scalar sgn(const Field& f, long exp) { return Scalar(f, ((exp % 2) + 2) % 2 == 0 ? 1 : -1); }
}

int SumObject::find(const std::string& label) const {
    for (int i = 0; i < static_cast<int>(summands.size()); ++i)
        if (summands[i].label == label) return i;
    throw std::out_of_range("no summand labelled '" + label + "'");
}

bool SumObject::operator==(const SumObject& o) const {
    if (cat != o.cat || summands.size() != o.summands.size()) return false;
    for (size_t i = 0; i < summands.size(); ++i) {
        if (summands[i].label != o.summands[i].label ||
            summands[i].obj != o.summands[i].obj ||
            summands[i].mult != o.summands[i].mult)
            return false;
    }
    return true;
}

void SigmaMorphism::add(const TwEntryKey& key, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = entries.find(key);
    if (it == entries.end()) {
        entries.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) entries.erase(it);
    }
}

void SigmaMorphism::validate() const {
    const auto& cat = *src.cat;
    for (const auto& [key, c] : entries) {
        const auto& sf = src.summands.at(key.from);
        const auto& st = dst.summands.at(key.to);
        if (!sf.mult.has(key.vfrom) || !st.mult.has(key.vto))
            throw std::invalid_argument("sigma entry with unknown multiplicity element");
        if (!cat.hom(sf.obj, st.obj).has(key.x))
            throw std::invalid_argument("sigma entry component '" + key.x + "' not in hom(" +
                                        sf.obj + "," + st.obj + ")");
        const int deg = st.mult.degree(key.vto) - sf.mult.degree(key.vfrom) +
                        cat.hom(sf.obj, st.obj).degree(key.x);
        if (deg != degree)
            throw std::invalid_argument("sigma entry degree " + std::to_string(deg) +
                                        " != morphism degree " + std::to_string(degree));
    }
}

SigmaMorphism SigmaMorphism::scaled(const Scalar& c) const {
    SigmaMorphism out = *this;
    out.entries.clear();
    if (c.is_zero()) return out;
    for (const auto& [key, v] : entries) out.entries.emplace(key, v * c);
    return out;
}

SigmaMorphism SigmaMorphism::operator+(const SigmaMorphism& o) const {
    SigmaMorphism out = *this;
    for (const auto& [key, v] : o.entries) out.add(key, v);
    return out;
}

bool SigmaMorphism::operator==(const SigmaMorphism& o) const {
    return src == o.src && dst == o.dst && degree == o.degree && entries == o.entries;
}

SigmaMorphism sigma_mu(const std::vector<SigmaMorphism>& args) {
    const int d = static_cast<int>(args.size());
    if (d < 1) throw std::invalid_argument("sigma_mu needs at least one argument");
    for (int k = 0; k + 1 < d; ++k)
        if (!(args[k].dst == args[k + 1].src))
            throw std::invalid_argument("sigma_mu: non-composable at position " +
                                        std::to_string(k));
    const auto& cat = *args[0].src.cat;
    SigmaMorphism out;
    out.src = args[0].src;
    out.dst = args[d - 1].dst;
    int deg = 2 - d;
    for (const auto& a : args) deg += a.degree;
    out.degree = deg;
    if (d > cat.arity_bound) return out;

    // index each argument's entries by (source summand, source mult element)
    std::vector<std::map<std::pair<int, std::string>,
                         std::vector<std::pair<const TwEntryKey*, const Scalar*>>>>
        idx(d);
    for (int k = 0; k < d; ++k)
        for (const auto& [key, c] : args[k].entries)
            idx[k][{key.from, key.vfrom}].push_back({&key, &c});

    std::vector<const TwEntryKey*> picked(d);
    std::vector<const Scalar*> coefs(d);
    std::function<void(int)> rec = [&](int k) {
        if (k == d) {
            std::vector<std::string> chain, inputs;
            chain.push_back(args[0].src.summands[picked[0]->from].obj);
            for (int i = 0; i < d; ++i) {
                chain.push_back(args[i].dst.summands[picked[i]->to].obj);
                inputs.push_back(picked[i]->x);
            }
            Vec prod = cat.mu_eval(chain, inputs);
            if (vec_is_zero(prod)) return;
            // sign: sum over p < q of |alpha_p| * (|x_q| - 1)
            long exp = 0;
            for (int p = 0; p < d; ++p) {
                const int adeg =
                    args[p].dst.summands[picked[p]->to].mult.degree(picked[p]->vto) -
                    args[p].src.summands[picked[p]->from].mult.degree(picked[p]->vfrom);
                for (int q = p + 1; q < d; ++q) {
                    const int xdeg = cat.hom(chain[q], chain[q + 1]).degree(picked[q]->x);
                    exp += static_cast<long>(adeg) * (xdeg - 1);
                }
            }
            Scalar coef = sgn(cat.field, exp);
            for (int i = 0; i < d; ++i) coef *= *coefs[i];
            for (const auto& [xo, c] : prod)
                out.add(TwEntryKey{picked[0]->from, picked[d - 1]->to, picked[0]->vfrom,
                                   picked[d - 1]->vto, xo},
                        coef * c);
            return;
        }
        if (k == 0) {
            for (const auto& [pos, vecs] : idx[0])
                for (const auto& [keyp, cp] : vecs) {
                    picked[0] = keyp;
                    coefs[0] = cp;
                    rec(1);
                }
            return;
        }
        auto it = idx[k].find({picked[k - 1]->to, picked[k - 1]->vto});
        if (it == idx[k].end()) return;
        for (const auto& [keyp, cp] : it->second) {
            picked[k] = keyp;
            coefs[k] = cp;
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

std::string tw_entry_name(const TwEntryKey& key) {
    return "[" + std::to_string(key.from) + "." + key.vfrom + ">" + std::to_string(key.to) +
           "." + key.vto + ":" + key.x + "]";
}

TwValidationReport validate_twisted(const TwistedComplex& x) {
    TwValidationReport report;
    auto fail = [&](const std::string& msg) {
        report.pass = false;
        report.violations.push_back(msg);
    };
    const int n = static_cast<int>(x.under.summands.size());
    if (static_cast<int>(x.order.size()) != n) {
        fail("filtration order has the wrong length");
        return report;
    }
    if (!(x.delta.src == x.under) || !(x.delta.dst == x.under))
        fail("delta is not an endomorphism of the underlying object");
    if (x.delta.degree != 1) fail("delta must have degree 1");
    try {
        x.delta.validate();
    } catch (const std::exception& e) {
        fail(e.what());
        return report;
    }
    for (const auto& [key, c] : x.delta.entries)
        if (x.order[key.to] <= x.order[key.from])
            fail("delta entry " + tw_entry_name(key) + " violates strict lower-triangularity");
    if (!report.pass) return report;

    // Maurer-Cartan: sum_d mu^d(delta, ..., delta) = 0, finite by nilpotence
    SigmaMorphism acc;
    acc.src = x.under;
    acc.dst = x.under;
    acc.degree = 2;
    for (int d = 1; d <= x.nilpotence(); ++d) {
        std::vector<SigmaMorphism> ds(d, x.delta);
        acc = acc + sigma_mu(ds);
    }
    if (!acc.is_zero())
        fail("Maurer-Cartan sum is nonzero: first term " +
             tw_entry_name(acc.entries.begin()->first) + " -> " +
             acc.entries.begin()->second.str());
    return report;
}

TwPtr atom(const CategoryPtr& cat, const std::string& obj) {
    if (!cat->has_object(obj)) throw std::invalid_argument("unknown object " + obj);
    auto x = std::make_shared<TwistedComplex>();
    x->under.cat = cat;
    x->under.summands.push_back({obj, GradedVectorSpace({{"k0", 0}}), obj});
    x->delta.src = x->under;
    x->delta.dst = x->under;
    x->delta.degree = 1;
    x->order = {0};
    return x;
}

SigmaMorphism TwMorphism::sigma() const {
    SigmaMorphism s;
    s.src = src->under;
    s.dst = dst->under;
    s.degree = degree;
    s.entries = entries;
    return s;
}

TwMorphism TwMorphism::scaled(const Scalar& c) const {
    TwMorphism out = *this;
    out.entries.clear();
    if (c.is_zero()) return out;
    for (const auto& [key, v] : entries) out.entries.emplace(key, v * c);
    return out;
}

TwMorphism TwMorphism::operator+(const TwMorphism& o) const {
    TwMorphism out = *this;
    SigmaMorphism s = out.sigma() + o.sigma();
    out.entries = s.entries;
    return out;
}

void TwMorphism::validate() const { sigma().validate(); }

TwMorphism tw_mu(const std::vector<TwMorphism>& args) {
    const int d = static_cast<int>(args.size());
    if (d < 1) throw std::invalid_argument("tw_mu needs at least one argument");
    for (int k = 0; k + 1 < d; ++k)
        if (!(args[k].dst->under == args[k + 1].src->under))
            throw std::invalid_argument("tw_mu: non-composable chain");
    TwMorphism out;
    out.src = args[0].src;
    out.dst = args[d - 1].dst;
    int deg = 2 - d;
    for (const auto& a : args) deg += a.degree;
    out.degree = deg;

    // complexes X_0, ..., X_d along the chain and their insertion caps
    std::vector<TwPtr> cx;
    cx.push_back(args[0].src);
    for (const auto& a : args) cx.push_back(a.dst);
    std::vector<int> cap(d + 1);
    for (int k = 0; k <= d; ++k)
        cap[k] = cx[k]->delta.is_zero() ? 0 : cx[k]->nilpotence() - 1;

    SigmaMorphism acc;
    acc.src = args[0].src->under;
    acc.dst = args[d - 1].dst->under;
    acc.degree = out.degree;

    std::vector<int> ins(d + 1, 0);
    std::function<void(int)> rec = [&](int k) {
        if (k == d + 1) {
            std::vector<SigmaMorphism> expanded;
            for (int j = 0; j <= d; ++j) {
                for (int r = 0; r < ins[j]; ++r) expanded.push_back(cx[j]->delta);
                if (j < d) expanded.push_back(args[j].sigma());
            }
            acc = acc + sigma_mu(expanded);
            return;
        }
        for (ins[k] = 0; ins[k] <= cap[k]; ++ins[k]) rec(k + 1);
        ins[k] = 0;
    };
    rec(0);
    out.entries = acc.entries;
    return out;
}

bool tw_closed(const TwMorphism& t) { return tw_mu({t}).entries.empty(); }

TwHomComplex hom_tw_complex(const TwPtr& x, const TwPtr& y) {
    const auto& cat = *x->under.cat;
    TwHomComplex out;
    std::vector<std::pair<std::string, int>> flat;
    for (int i = 0; i < static_cast<int>(x->under.summands.size()); ++i) {
        const auto& si = x->under.summands[i];
        for (int j = 0; j < static_cast<int>(y->under.summands.size()); ++j) {
            const auto& sj = y->under.summands[j];
            const auto& hom = cat.hom(si.obj, sj.obj);
            for (const auto& [v, vd] : si.mult.basis())
                for (const auto& [w, wd] : sj.mult.basis())
                    for (const auto& [xn, xd] : hom.basis()) {
                        TwEntryKey key{i, j, v, w, xn};
                        out.basis.push_back(key);
                        flat.emplace_back(tw_entry_name(key), wd - vd + xd);
                    }
        }
    }
    GradedVectorSpace space(flat);
    for (int i = 0; i < static_cast<int>(out.basis.size()); ++i)
        out.index[flat[i].first] = i;
    GradedLinearMap diff(cat.field, space, space, 1);
    for (size_t i = 0; i < out.basis.size(); ++i) {
        TwMorphism t;
        t.src = x;
        t.dst = y;
        t.degree = space.degree(flat[i].first);
        t.entries[out.basis[i]] = Scalar(cat.field, 1);
        TwMorphism dt = tw_mu({t});
        for (const auto& [key, c] : dt.entries)
            diff.add(flat[i].first, tw_entry_name(key), c);
    }
    out.complex = ChainComplex(space, diff);
    return out;
}

std::map<int, int> hom_tw_h_dims(const TwPtr& x, const TwPtr& y) {
    auto hc = hom_tw_complex(x, y);
    return cohomology(hc.complex, x->under.cat->field).dims;
}

TwPtr cone_tw(const TwMorphism& t) {
    if (t.degree != 0) throw std::invalid_argument("cone_tw needs a degree-0 morphism");
    if (!tw_closed(t)) throw std::invalid_argument("cone_tw needs a closed morphism");
    const auto& cat = *t.src->under.cat;
    auto c = std::make_shared<TwistedComplex>();
    c->under.cat = t.src->under.cat;
    const int lx = static_cast<int>(t.src->under.summands.size());
    for (const auto& s : t.src->under.summands)
        c->under.summands.push_back({"0." + s.label, s.mult.shift(1), s.obj});
    for (const auto& s : t.dst->under.summands)
        c->under.summands.push_back({"1." + s.label, s.mult, s.obj});
    int max_x = 0;
    for (int r : t.src->order) max_x = std::max(max_x, r);
    c->order = t.src->order;
    for (int r : t.dst->order) c->order.push_back(max_x + 1 + r);

    c->delta.src = c->under;
    c->delta.dst = c->under;
    c->delta.degree = 1;
    for (const auto& [key, v] : t.src->delta.entries) c->delta.add(key, v);
    for (const auto& [key, v] : t.dst->delta.entries) {
        TwEntryKey k = key;
        k.from += lx;
        k.to += lx;
        c->delta.add(k, v);
    }
    // -S(t): source multiplicities shifted; each entry carries (-1)^{|v_to|}
    // so that the Maurer-Cartan sum reduces to closedness of t
    for (const auto& [key, v] : t.entries) {
        TwEntryKey k = key;
        k.to += lx;
        const int wdeg = t.dst->under.summands[key.to].mult.degree(key.vto);
        c->delta.add(k, -(v * sgn(cat.field, wdeg)));
    }
    auto report = validate_twisted(*c);
    if (!report.pass)
        throw std::logic_error("cone_tw produced an invalid twisted complex: " +
                               report.violations.front());
    return c;
}

TwPtr shift_tw(int sigma, const TwPtr& x) {
    if (sigma == 0) return x;
    auto out = std::make_shared<TwistedComplex>(*x);
    for (auto& s : out->under.summands) s.mult = s.mult.shift(sigma);
    out->delta.src = out->under;
    out->delta.dst = out->under;
    return out;
}

TwPtr tensor_tw(const ChainComplex& z, const TwPtr& x) {
    const auto& cat = *x->under.cat;
    if (!cat.strict_units)
        throw std::invalid_argument("tensor_tw needs a strictly unital category");
    auto out = std::make_shared<TwistedComplex>();
    out->under.cat = x->under.cat;

    struct Line {
        std::string zn;
        int zdeg;
        int i;
    };
    std::vector<Line> lines;
    for (int i = 0; i < static_cast<int>(x->under.summands.size()); ++i)
        for (const auto& [zn, zdeg] : z.space.basis()) lines.push_back({zn, zdeg, i});
    std::sort(lines.begin(), lines.end(), [&](const Line& a, const Line& b) {
        if (x->order[a.i] != x->order[b.i]) return x->order[a.i] < x->order[b.i];
        if (a.zdeg != b.zdeg) return a.zdeg < b.zdeg;
        return a.zn < b.zn;
    });
    std::map<std::pair<std::string, int>, int> line_index;
    for (int li = 0; li < static_cast<int>(lines.size()); ++li) {
        const auto& ln = lines[li];
        const auto& s = x->under.summands[ln.i];
        out->under.summands.push_back(
            {"(" + ln.zn + "." + s.label + ")", s.mult.shift(-ln.zdeg), s.obj});
        out->order.push_back(li);
        line_index[{ln.zn, ln.i}] = li;
    }
    out->delta.src = out->under;
    out->delta.dst = out->under;
    out->delta.degree = 1;
    // id (x) delta, with the Koszul sign (-1)^{|alpha| |z|} on the
    // multiplicity part (forced by the Maurer-Cartan equation against the
    // (-1)^{|z|-1} dz (x) e part)
    for (const auto& [key, c] : x->delta.entries) {
        const int adeg = x->under.summands[key.to].mult.degree(key.vto) -
                         x->under.summands[key.from].mult.degree(key.vfrom);
        for (const auto& [zn, zdeg] : z.space.basis()) {
            TwEntryKey k = key;
            k.from = line_index.at({zn, key.from});
            k.to = line_index.at({zn, key.to});
            out->delta.add(k, c * sgn(cat.field, adeg * zdeg));
        }
    }
    // (-1)^{|z|-1} dz (x) e
    for (const auto& [zn, zdeg] : z.space.basis()) {
        Vec dz = z.differential.apply_basis(zn);
        if (vec_is_zero(dz)) continue;
        for (int i = 0; i < static_cast<int>(x->under.summands.size()); ++i) {
            const auto& s = x->under.summands[i];
            const std::string e = cat.strict_units->at(s.obj);
            for (const auto& [v, vd] : s.mult.basis())
                for (const auto& [zo, c] : dz)
                    out->delta.add(
                        TwEntryKey{line_index.at({zn, i}), line_index.at({zo, i}), v, v, e},
                        c * sgn(cat.field, zdeg - 1));
        }
    }
    auto report = validate_twisted(*out);
    if (!report.pass)
        throw std::logic_error("tensor_tw produced an invalid twisted complex: " +
                               report.violations.front());
    return out;
}

ChainComplex hom_from_object_complex(const CategoryPtr& cat, const std::string& v,
                                     const TwPtr& y, TwHomComplex* raw) {
    auto hc = hom_tw_complex(atom(cat, v), y);
    if (raw) *raw = hc;
    return hc.complex;
}

TwEvaluation ev_tw(const std::string& v, const TwPtr& y) {
    const auto& catp = y->under.cat;
    if (!catp->strict_units)
        throw std::invalid_argument("ev_tw needs a strictly unital category");
    TwHomComplex raw;
    ChainComplex z = hom_from_object_complex(catp, v, y, &raw);
    TwEvaluation ev;
    ev.source = tensor_tw(z, atom(catp, v));
    ev.target = y;
    ev.map.src = ev.source;
    ev.map.dst = y;
    ev.map.degree = 0;
    for (size_t i = 0; i < raw.basis.size(); ++i) {
        const auto& key = raw.basis[i];
        const std::string zname = tw_entry_name(key);
        const int from = ev.source->under.find("(" + zname + "." + v + ")");
        // the Koszul weight (-1)^{|z| (|x|-1)} makes the pullback of ev agree
        // with the module-level evaluation on the nose (and hence closed)
        const int zdeg = z.space.degree(zname);
        const int xdeg = catp->hom(v, y->under.summands[key.to].obj).degree(key.x);
        ev.map.entries[TwEntryKey{from, key.to, "k0", key.vto, key.x}] =
            sgn(catp->field, static_cast<long>(zdeg) * (xdeg - 1));
    }
    ev.map.validate();
    return ev;
}

TwEvaluation ev_dual_tw(const TwPtr& y, const std::string& v) {
    const auto& catp = y->under.cat;
    if (!catp->strict_units)
        throw std::invalid_argument("ev_dual_tw needs a strictly unital category");
    auto hc = hom_tw_complex(y, atom(catp, v));
    // dual complex: on basis functionals, (d* f)(a) = -(-1)^{|f|} f(d a)
    GradedVectorSpace dual = hc.complex.space.dual();
    GradedLinearMap ddual(catp->field, dual, dual, 1);
    for (const auto& [key, c] : hc.complex.differential.entries()) {
        const int fdeg = dual.degree(GradedVectorSpace::dual_name(key.second));
        ddual.add(GradedVectorSpace::dual_name(key.second),
                  GradedVectorSpace::dual_name(key.first), c * sgn(catp->field, fdeg + 1));
    }
    ChainComplex zdual(dual, ddual);

    TwEvaluation ev;
    ev.source = y;
    ev.target = tensor_tw(zdual, atom(catp, v));
    ev.map.src = y;
    ev.map.dst = ev.target;
    ev.map.degree = 0;
    for (size_t i = 0; i < hc.basis.size(); ++i) {
        const auto& key = hc.basis[i];  // entry of hom(Y, V): (from in Y) -> (0, "k0")
        const std::string cname = tw_entry_name(key);
        const std::string dname = GradedVectorSpace::dual_name(cname);
        const int to = ev.target->under.find("(" + dname + "." + v + ")");
        // the weight (-1)^{|c|} pairs the two differential contributions off
        // against each other (closedness)
        ev.map.entries[TwEntryKey{key.from, to, key.vfrom, "k0", key.x}] =
            sgn(catp->field, hc.complex.space.degree(cname));
    }
    ev.map.validate();
    return ev;
}

ModulePtr tw_to_module(const TwPtr& x) {
    const auto& catp = x->under.cat;
    const auto& cat = *catp;
    auto m = std::make_shared<AInfModule>();
    m->cat = catp;
    m->arity_bound = cat.arity_bound;

    std::map<std::string, TwHomComplex> hom_at;
    for (const auto& w : cat.objects) {
        auto hc = hom_tw_complex(atom(catp, w), x);
        m->spaces[w] = hc.complex.space;
        hom_at.emplace(w, std::move(hc));
    }
    for (int d = 1; d <= cat.arity_bound; ++d) {
        std::vector<std::string> chain;
        std::function<void()> emit = [&]() {
            const auto& hw = hom_at.at(chain.back());
            std::vector<std::string> args(d - 1);
            std::function<void(int)> loop = [&](int i) {
                if (i == d - 1) {
                    for (size_t bi = 0; bi < hw.basis.size(); ++bi) {
                        std::vector<TwMorphism> list;
                        for (int j = 0; j + 1 < d; ++j) {
                            TwMorphism aj;
                            aj.src = atom(catp, chain[j]);
                            aj.dst = atom(catp, chain[j + 1]);
                            aj.degree = cat.hom(chain[j], chain[j + 1]).degree(args[j]);
                            aj.entries[TwEntryKey{0, 0, "k0", "k0", args[j]}] =
                                Scalar(cat.field, 1);
                            list.push_back(std::move(aj));
                        }
                        TwMorphism b;
                        b.src = atom(catp, chain.back());
                        b.dst = x;
                        b.degree = hw.complex.space.degree(tw_entry_name(hw.basis[bi]));
                        b.entries[hw.basis[bi]] = Scalar(cat.field, 1);
                        list.push_back(std::move(b));
                        TwMorphism prod = tw_mu(list);
                        if (prod.entries.empty()) continue;
                        ModKey key{chain, tw_entry_name(hw.basis[bi]), args};
                        Vec& slot = m->mu[key];
                        for (const auto& [ekey, c] : prod.entries)
                            vec_add(slot, tw_entry_name(ekey), c);
                        if (vec_is_zero(slot)) m->mu.erase(key);
                    }
                    return;
                }
                for (const auto& [name, g] : cat.hom(chain[i], chain[i + 1]).basis()) {
                    args[i] = name;
                    loop(i + 1);
                }
            };
            loop(0);
        };
        std::function<void(int)> build = [&](int i) {
            if (i == d) {
                emit();
                return;
            }
            for (const auto& y : cat.objects) {
                if (i > 0 && cat.hom(chain.back(), y).dim() == 0) continue;
                chain.push_back(y);
                build(i + 1);
                chain.pop_back();
            }
        };
        chain.clear();
        build(0);
    }
    m->validate();
    return m;
}

PreModuleHom tw_to_module_mor(const TwMorphism& t) {
    const auto& catp = t.src->under.cat;
    const auto& cat = *catp;
    PreModuleHom out;
    out.source = tw_to_module(t.src);
    out.target = tw_to_module(t.dst);
    out.degree = t.degree;

    std::map<std::string, TwHomComplex> hom_at;
    for (const auto& w : cat.objects)
        hom_at.emplace(w, hom_tw_complex(atom(catp, w), t.src));

    for (int d = 1; d <= std::max(1, cat.arity_bound - 1); ++d) {
        std::vector<std::string> chain;
        std::function<void()> emit = [&]() {
            const auto& hw = hom_at.at(chain.back());
            std::vector<std::string> args(d - 1);
            std::function<void(int)> loop = [&](int i) {
                if (i == d - 1) {
                    for (size_t bi = 0; bi < hw.basis.size(); ++bi) {
                        std::vector<TwMorphism> list;
                        for (int j = 0; j + 1 < d; ++j) {
                            TwMorphism aj;
                            aj.src = atom(catp, chain[j]);
                            aj.dst = atom(catp, chain[j + 1]);
                            aj.degree = cat.hom(chain[j], chain[j + 1]).degree(args[j]);
                            aj.entries[TwEntryKey{0, 0, "k0", "k0", args[j]}] =
                                Scalar(cat.field, 1);
                            list.push_back(std::move(aj));
                        }
                        TwMorphism b;
                        b.src = atom(catp, chain.back());
                        b.dst = t.src;
                        b.degree = hw.complex.space.degree(tw_entry_name(hw.basis[bi]));
                        b.entries[hw.basis[bi]] = Scalar(cat.field, 1);
                        list.push_back(std::move(b));
                        list.push_back(t);
                        TwMorphism prod = tw_mu(list);
                        if (prod.entries.empty()) continue;
                        ModKey key{chain, tw_entry_name(hw.basis[bi]), args};
                        Vec& slot = out.table[key];
                        for (const auto& [ekey, c] : prod.entries)
                            vec_add(slot, tw_entry_name(ekey), c);
                        if (vec_is_zero(slot)) out.table.erase(key);
                    }
                    return;
                }
                for (const auto& [name, g] : cat.hom(chain[i], chain[i + 1]).basis()) {
                    args[i] = name;
                    loop(i + 1);
                }
            };
            loop(0);
        };
        std::function<void(int)> build = [&](int i) {
            if (i == d) {
                emit();
                return;
            }
            for (const auto& y : cat.objects) {
                if (i > 0 && cat.hom(chain.back(), y).dim() == 0) continue;
                chain.push_back(y);
                build(i + 1);
                chain.pop_back();
            }
        };
        chain.clear();
        build(0);
    }
    out.validate();
    return out;
}

}  // namespace ainf

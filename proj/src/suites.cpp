#include "ainf/suites.hpp"

#include <sstream>

#include "ainf/modhom.hpp"
#include "ainf/parallel.hpp"

namespace ainf {

namespace {

std::string dims_str(const std::map<int, int>& dims) {
    std::string out = "{";
    bool first = true;
    for (const auto& [g, n] : dims) {
        if (!first) out += ", ";
        first = false;
        out += std::to_string(g) + ":" + std::to_string(n);
    }
    return out + "}";
}

std::string key_str(const ModKey& key) {
    std::string s = "(";
    for (size_t i = 0; i < key.chain.size(); ++i) s += (i ? "," : "") + key.chain[i];
    s += "; " + key.b + ";";
    for (const auto& a : key.args) s += " " + a;
    return s + ")";
}

// the twisted complex Cone(h : S^{-2}V -> V) used as a companion fixture
TwPtr cone_h_complex(const CategoryPtr& cat, const CpTwistData& data) {
    TwMorphism th;
    th.src = shift_tw(-2, atom(cat, data.v));
    th.dst = atom(cat, data.v);
    th.degree = 0;
    for (const auto& [hn, hc] : data.h)
        th.entries[TwEntryKey{0, 0, "k0", "k0", hn}] = hc;
    return cone_tw(th);
}

PreModuleHom random_closed_unit_free(const ModulePtr& m0, const ModulePtr& m1, int degree,
                                     unsigned seed) {
    return mu1_Q(random_pre_module_hom(m0, m1, degree - 1, 3, seed, 60, true));
}

void suite_relations(const SuiteInput& in, VerifyReport& report) {
    auto rel = check_ainf_relations(*in.cat);
    std::string details = "checked " + std::to_string(rel.checked_tuples) + " tuples";
    if (!rel.pass) {
        const auto& f0 = rel.failures.front();
        details = "first failure at d=" + std::to_string(f0.d) + ", inputs (";
        for (size_t i = 0; i < f0.inputs.size(); ++i) details += (i ? "," : "") + f0.inputs[i];
        details += "), residual " + vec_str(f0.residual);
    }
    report.add("relations[" + in.label + "]", rel.pass, details);
}

void suite_unitality(const SuiteInput& in, VerifyReport& report) {
    auto strict = check_strict_unital(*in.cat);
    report.add("strictly-unital[" + in.label + "]", strict.pass,
               strict.pass ? "" : strict.violations.front());
    auto cu = check_c_unital(*in.cat);
    report.add("c-unital[" + in.label + "]", cu.pass, cu.pass ? "" : cu.violations.front());
}

void suite_classify(const SuiteInput& in, VerifyReport& report) {
    if (!in.cp) {
        report.add("cp-object[" + in.label + "]", false, "no CP^n-object found");
        return;
    }
    const auto& data = *in.cp;
    auto verdict = classify_cp_object(in.cat, data.v, data.h, data.n, data.integral);
    report.add("cp-object[" + in.label + "]", verdict.pass,
               "V=" + data.v + ", n=" + std::to_string(data.n) + ", H dims " +
                   dims_str(verdict.endo_dims));
    if (data.n == 1) {
        auto sph_int = make_canonical_integral(in.cat, data.v, 2);
        auto sph = classify_spherical(in.cat, data.v, 2, sph_int);
        report.add("spherical[" + in.label + "]", sph.pass,
                   "V=" + data.v + " as a 2-sphere object");
    }
}

void suite_shift(const SuiteInput& in, VerifyReport& report) {
    if (!in.cp) {
        report.add("shift[" + in.label + "]", false, "no CP^n-object found");
        return;
    }
    const auto& data = *in.cp;
    auto shift = verify_shift(in.cat, data);
    report.add("shift-dims[" + in.label + "]", shift.twist_dims == shift.shifted_dims,
               "twist " + dims_str(shift.twist_dims.count(data.v)
                                       ? shift.twist_dims.at(data.v)
                                       : std::map<int, int>{}));
    bool stages_ok = shift.pass;
    report.add("shift-projection-chain[" + in.label + "]", stages_ok,
               stages_ok ? std::to_string(shift.stages.size()) + " stages, survivor " +
                               shift.final_summand
                         : (shift.failures.empty() ? "" : shift.failures.front()));
    // invisibility on the other objects
    for (const auto& w : in.cat->objects) {
        if (w == data.v) continue;
        auto hc = cohomology_category(in.cat);
        if (!hc.dims(data.v, w).empty()) continue;
        auto yw = yoneda_module(in.cat, w);
        auto twist = phi_module(in.cat, data, yw);
        bool same = twist.result->h_dims() == yw->h_dims();
        bool qi = quasi_iso_check(twist.iota).is_quasi_iso;
        report.add("shift-invisibility[" + in.label + "," + w + "]", same && qi,
                   "Phi fixes Yoneda(" + w + ")");
    }
}

void suite_functor(const SuiteInput& in, VerifyReport& report, int count) {
    if (!in.cp) {
        report.add("functor[" + in.label + "]", false, "no CP^n-object found");
        return;
    }
    const auto& data = *in.cp;
    auto y = yoneda_module(in.cat, data.v);
    int phi_fail = 0, sph_fail = 0, done = 0;
    std::vector<PreModuleHom> homs;
    for (int i = 0; i < count; ++i)
        homs.push_back(
            random_pre_module_hom(y, y, (i % 4) - 1, 3, 42 + 7 * static_cast<unsigned>(i)));
    for (int i = 0; i < count; ++i) {
        const auto& t = homs[i];
        auto lhs1 = mu1_Q(phi_morphism(in.cat, data, t));
        auto rhs1 = phi_morphism(in.cat, data, mu1_Q(t));
        if (!(lhs1 + rhs1.scaled(Scalar(in.cat->field, -1))).table.empty()) ++phi_fail;
        auto l1s = mu1_Q(spherical_morphism(in.cat, data.v, t));
        auto r1s = spherical_morphism(in.cat, data.v, mu1_Q(t));
        if (!(l1s + r1s.scaled(Scalar(in.cat->field, -1))).table.empty()) ++sph_fail;
        if (i + 1 < count) {
            const auto& t2 = homs[i + 1];
            auto lhs2 = mu2_Q(phi_morphism(in.cat, data, t2), phi_morphism(in.cat, data, t));
            auto rhs2 = phi_morphism(in.cat, data, mu2_Q(t2, t));
            if (!(lhs2 + rhs2.scaled(Scalar(in.cat->field, -1))).table.empty()) ++phi_fail;
            auto l2s = mu2_Q(spherical_morphism(in.cat, data.v, t2),
                             spherical_morphism(in.cat, data.v, t));
            auto r2s = spherical_morphism(in.cat, data.v, mu2_Q(t2, t));
            if (!(l2s + r2s.scaled(Scalar(in.cat->field, -1))).table.empty()) ++sph_fail;
        }
        ++done;
    }
    report.add("functor-phi[" + in.label + "]", phi_fail == 0,
               std::to_string(done) + " random homs, " + std::to_string(phi_fail) +
                   " residuals");
    report.add("functor-sphere[" + in.label + "]", sph_fail == 0,
               std::to_string(done) + " random homs, " + std::to_string(sph_fail) +
                   " residuals");
}

void suite_alpha(const SuiteInput& in, VerifyReport& report, int wanted) {
    if (!in.cp || in.cp->n != 1) {
        report.add("alpha[" + in.label + "]", in.cp.has_value() && in.cp->n != 1,
                   in.cp ? "skipped: alpha needs a CP^1-object" : "no CP^n-object found");
        return;
    }
    const auto& data = *in.cp;
    std::vector<std::pair<std::string, ModulePtr>> mods;
    for (const auto& obj : in.cat->objects)
        mods.push_back({"yoneda_" + obj, yoneda_module(in.cat, obj)});
    mods.push_back({"cone_h", tw_to_module(cone_h_complex(in.cat, data))});

    for (const auto& [name, m] : mods) {
        auto alpha = alpha_map(in.cat, data, m);
        bool closed = is_closed(alpha);
        bool qi = quasi_iso_check(alpha).is_quasi_iso;
        report.add("alpha-closed[" + in.label + "," + name + "]", closed, "");
        report.add("alpha-quasi-iso[" + in.label + "," + name + "]", qi, "");
    }
    int checked = 0, fails = 0;
    for (unsigned seed = 0; checked < wanted && seed < 64; ++seed) {
        for (size_t i = 0; i < mods.size() && checked < wanted; ++i)
            for (size_t j = 0; j < mods.size() && checked < wanted; ++j) {
                const int deg = 2 * (static_cast<int>(seed % 3) - 1);
                auto t = random_closed_unit_free(mods[i].second, mods[j].second, deg,
                                                 5000 + 97 * seed);
                if (t.table.empty()) continue;
                auto ay = alpha_map(in.cat, data, mods[i].second);
                auto az = alpha_map(in.cat, data, mods[j].second);
                auto ttilde = t_squared_morphism(in.cat, data.v, t);
                auto that = phi_morphism(in.cat, data, t);
                auto lhs = mu2_Q(az, ttilde)
                               .scaled(Scalar(in.cat->field,
                                              ttilde.degree % 2 == 0 ? 1 : -1));
                if (!(lhs + mu2_Q(that, ay).scaled(Scalar(in.cat->field, -1)))
                         .table.empty())
                    ++fails;
                ++checked;
            }
    }
    report.add("alpha-naturality[" + in.label + "]", fails == 0 && checked >= wanted,
               std::to_string(checked) + " random closed morphisms, " +
                   std::to_string(fails) + " residuals");
}

std::vector<std::pair<std::string, TwPtr>> adjoint_objects(const SuiteInput& in) {
    std::vector<std::pair<std::string, TwPtr>> objs;
    for (const auto& obj : in.cat->objects) objs.push_back({obj, atom(in.cat, obj)});
    if (in.cp) {
        objs.push_back({"cone_h", cone_h_complex(in.cat, *in.cp)});
        objs.push_back({"SV", shift_tw(1, atom(in.cat, in.cp->v))});
    }
    return objs;
}

void suite_adjoint(const SuiteInput& in, VerifyReport& report) {
    if (!in.cp) {
        report.add("adjoint[" + in.label + "]", false, "no CP^n-object found");
        return;
    }
    const auto& data = *in.cp;
    auto objs = adjoint_objects(in);
    bool ok = true;
    std::string bad;
    for (const auto& [ny, y] : objs)
        for (const auto& [nz, z] : objs) {
            auto lhs = hom_tw_h_dims(phi_adjoint_tw(in.cat, data, y).result, z);
            auto rhs = hom_tw_h_dims(y, phi_tw(in.cat, data, z).result);
            if (lhs != rhs) {
                ok = false;
                bad = "left adjunction fails on (" + ny + "," + nz + "): " + dims_str(lhs) +
                      " vs " + dims_str(rhs);
            }
            auto lhs2 = hom_tw_h_dims(phi_tw(in.cat, data, y).result, z);
            auto rhs2 = hom_tw_h_dims(y, phi_adjoint_tw(in.cat, data, z).result);
            if (lhs2 != rhs2) {
                ok = false;
                bad = "right adjunction fails on (" + ny + "," + nz + ")";
            }
        }
    report.add("adjoint-ranks[" + in.label + "]", ok,
               ok ? std::to_string(objs.size() * objs.size()) + " ordered pairs, both sides"
                  : bad);
}

void suite_spanning(const SuiteInput& in, VerifyReport& report) {
    if (!in.cp) {
        report.add("spanning[" + in.label + "]", false, "no CP^n-object found");
        return;
    }
    const auto& data = *in.cp;
    auto hc = cohomology_category(in.cat);
    std::vector<TwPtr> candidate = {atom(in.cat, data.v)};
    for (const auto& w : in.cat->objects) {
        if (w == data.v) continue;
        if (hc.dims(data.v, w).empty()) candidate.push_back(atom(in.cat, w));
    }
    std::vector<TwPtr> catalog;
    for (const auto& obj : in.cat->objects) catalog.push_back(atom(in.cat, obj));
    auto audit = spanning_class_audit(in.cat, candidate, catalog);
    report.add("spanning-class[" + in.label + "]", audit.pass,
               audit.pass ? std::to_string(candidate.size()) + " candidates x " +
                                std::to_string(catalog.size()) + " catalog members"
                          : audit.failures.front());

    // full-faithfulness dims under the twist (quasi-equivalence evidence)
    bool ff = true;
    std::string bad;
    for (const auto& a : catalog)
        for (const auto& b : catalog) {
            auto lhs = hom_tw_h_dims(phi_tw(in.cat, data, a).result,
                                     phi_tw(in.cat, data, b).result);
            auto rhs = hom_tw_h_dims(a, b);
            if (lhs != rhs) {
                ff = false;
                bad = dims_str(lhs) + " vs " + dims_str(rhs);
            }
        }
    report.add("full-faithfulness[" + in.label + "]", ff, ff ? "" : bad);
}

void suite_crosslevel(const SuiteInput& in, VerifyReport& report) {
    if (!in.cp) {
        report.add("cross-level[" + in.label + "]", false, "no CP^n-object found");
        return;
    }
    const auto& data = *in.cp;
    std::vector<std::pair<std::string, TwPtr>> objs;
    for (const auto& obj : in.cat->objects) objs.push_back({obj, atom(in.cat, obj)});
    objs.push_back({"cone_h", cone_h_complex(in.cat, data)});
    bool ok = true;
    std::string bad;
    for (const auto& [name, y] : objs) {
        auto tw = phi_tw(in.cat, data, y);
        auto via_tw = tw_to_module(tw.result)->h_dims();
        auto via_mod = phi_module(in.cat, data, tw_to_module(y)).result->h_dims();
        if (via_tw != via_mod) {
            ok = false;
            bad = "disagreement on " + name;
        }
    }
    report.add("cross-level-phi[" + in.label + "]", ok,
               ok ? std::to_string(objs.size()) + " objects" : bad);
}

}  // namespace

std::optional<CpTwistData> find_cp_data(const CategoryPtr& cat) {
    for (const auto& v : cat->objects) {
        const auto& sp = cat->hom(v, v);
        if (sp.dim() == 0) continue;
        GradedLinearMap d1(cat->field, sp, sp, 1);
        for (const auto& [name, deg] : sp.basis())
            for (const auto& [out, c] : cat->mu_eval({v, v}, {name})) d1.add(name, out, c);
        auto h = cohomology(ChainComplex(sp, d1), cat->field);
        int n = 0;
        while (h.dims.count(2 * (n + 1))) ++n;
        if (n < 1) continue;
        for (const auto& [name, deg] : sp.basis()) {
            if (deg != 2) continue;
            if (!vec_is_zero(d1.apply_basis(name))) continue;
            Vec hv{{name, Scalar(cat->field, 1)}};
            try {
                return make_cp_data(cat, v, hv, n);
            } catch (const std::exception&) {
                continue;
            }
        }
    }
    return std::nullopt;
}

SuiteInput make_suite_input(const std::string& label, const CategoryPtr& cat,
                            std::optional<CpTwistData> cp) {
    SuiteInput in;
    in.label = label;
    in.cat = cat;
    in.cp = cp ? cp : find_cp_data(cat);
    return in;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "relations", "unitality", "classify", "shift",    "functor",
        "alpha",     "adjoint",   "spanning", "crosslevel", "all"};
    return names;
}

VerifyReport run_suite(const std::string& suite, const std::vector<SuiteInput>& inputs) {
    VerifyReport report;
    report.suite = suite;
    for (const auto& in : inputs) report.inputs.push_back(in.label);

    auto dispatch = [&](const std::string& name, const SuiteInput& in, VerifyReport& rep) {
        if (name == "relations") suite_relations(in, rep);
        else if (name == "unitality") suite_unitality(in, rep);
        else if (name == "classify") suite_classify(in, rep);
        else if (name == "shift") suite_shift(in, rep);
        else if (name == "functor") suite_functor(in, rep, 100);
        else if (name == "alpha") suite_alpha(in, rep, 20);
        else if (name == "adjoint") suite_adjoint(in, rep);
        else if (name == "spanning") suite_spanning(in, rep);
        else if (name == "crosslevel") suite_crosslevel(in, rep);
        else throw std::invalid_argument("unknown suite '" + name + "'");
    };

    if (suite == "all") {
        const std::vector<std::string> order = {"relations", "unitality", "classify",
                                                "shift",     "functor",   "alpha",
                                                "adjoint",   "spanning",  "crosslevel"};
        // run the (input, sub-suite) grid concurrently; merge in fixed order
        struct Task {
            size_t input;
            std::string name;
        };
        std::vector<Task> tasks;
        for (size_t i = 0; i < inputs.size(); ++i)
            for (const auto& name : order) tasks.push_back({i, name});
        std::vector<VerifyReport> partial(tasks.size());
        parallel_for(static_cast<int>(tasks.size()), [&](int ti) {
            dispatch(tasks[ti].name, inputs[tasks[ti].input], partial[ti]);
        });
        for (const auto& p : partial)
            for (const auto& c : p.checks) report.checks.push_back(c);
        return report;
    }
    for (const auto& in : inputs) dispatch(suite, in, report);
    return report;
}

}  // namespace ainf

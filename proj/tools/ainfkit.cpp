// ainfkit: exact-arithmetic toolkit for finite-dimensional A-infinity
// categories: relation checking, classification, twists and the verification
// suites.  Exit codes: 0 all checks pass, 1 verification failure, 2 bad input.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "ainf/io.hpp"
#include "ainf/suites.hpp"

using namespace ainf;

namespace {

int run_check(const std::string& cat_path) {
    auto cat = parse_category(cat_path);
    VerifyReport report;
    report.suite = "check";
    report.inputs = {cat_path};
    auto in = make_suite_input(cat_path, cat);
    for (const auto* s : {"relations", "unitality"}) {
        auto sub = run_suite(s, {in});
        for (auto& c : sub.checks) report.checks.push_back(c);
    }
    std::cout << report.summary();
    return report.pass() ? 0 : 1;
}

int run_cohomology(const std::string& cat_path, const std::string& src,
                   const std::string& dst) {
    auto cat = parse_category(cat_path);
    if (!cat->has_object(src) || !cat->has_object(dst))
        throw std::invalid_argument("unknown object in --source/--target");
    const auto& sp = cat->hom(src, dst);
    GradedLinearMap d1(cat->field, sp, sp, 1);
    for (const auto& [name, deg] : sp.basis())
        for (const auto& [out, c] : cat->mu_eval({src, dst}, {name})) d1.add(name, out, c);
    auto h = cohomology(ChainComplex(sp, d1), cat->field);
    std::cout << "H(hom(" << src << "," << dst << ")) dims:";
    for (const auto& [g, n] : h.dims) std::cout << " " << g << ":" << n;
    std::cout << "\nrepresentatives:\n";
    for (const auto& [name, deg] : h.h_space.basis())
        std::cout << "  " << name << " = " << vec_str(h.rep.apply_basis(name)) << "\n";
    return 0;
}

int run_classify(const std::string& cat_path, const std::string& object, int cp_n,
                 int sphere_n, const std::string& integral_path, const std::string& h_name) {
    auto cat = parse_category(cat_path);
    if (!cat->has_object(object)) throw std::invalid_argument("unknown object " + object);
    if ((cp_n > 0) == (sphere_n > 0))
        throw std::invalid_argument("use exactly one of --cp N or --spherical N");

    PairingIntegral integral;
    const int top = cp_n > 0 ? 2 * cp_n : sphere_n;
    if (!integral_path.empty())
        integral = parse_integral(integral_path, cat);
    else
        integral = make_canonical_integral(cat, object, top);

    ClassifyVerdict verdict;
    if (cp_n > 0) {
        std::vector<std::string> candidates;
        if (!h_name.empty()) {
            candidates.push_back(h_name);
        } else {
            for (const auto& [name, deg] : cat->hom(object, object).basis())
                if (deg == 2) candidates.push_back(name);
        }
        if (candidates.empty())
            throw std::invalid_argument("no degree-2 candidate for h; give --h NAME");
        for (const auto& cand : candidates) {
            verdict = classify_cp_object(cat, object, Vec{{cand, Scalar(cat->field, 1)}},
                                         cp_n, integral);
            if (verdict.pass) {
                std::cout << "PASS  " << object << " is a CP^" << cp_n << "-object with h = "
                          << cand << "\n";
                return 0;
            }
        }
        std::cout << "FAIL  " << object << " is not a CP^" << cp_n << "-object\n";
    } else {
        verdict = classify_spherical(cat, object, sphere_n, integral);
        if (verdict.pass) {
            std::cout << "PASS  " << object << " is spherical of dimension " << sphere_n
                      << "\n";
            return 0;
        }
        std::cout << "FAIL  " << object << " is not spherical of dimension " << sphere_n
                  << "\n";
    }
    for (const auto& f : verdict.failures) std::cout << "  " << f << "\n";
    return 1;
}

int run_twist(const std::string& cat_path, const std::string& kind, const std::string& object,
              const std::string& apply_path, const std::string& out_path, int n,
              const std::string& h_name, const std::string& integral_path) {
    auto cat = parse_category(cat_path);
    if (!cat->has_object(object)) throw std::invalid_argument("unknown object " + object);

    // target may be a module file or a twisted-complex file
    std::ifstream probe(apply_path);
    if (!probe) throw std::invalid_argument("cannot open " + apply_path);
    std::string header;
    std::getline(probe, header);
    probe.close();
    const bool is_twcx = header.rfind("ainf-twcx", 0) == 0;

    if (kind == "cp") {
        CpTwistData data;
        if (!h_name.empty() && n > 0) {
            Vec hv{{h_name, Scalar(cat->field, 1)}};
            data = make_cp_data(cat, object, hv, n);
        } else {
            auto found = find_cp_data(cat);
            if (!found || found->v != object)
                throw std::invalid_argument(
                    "no CP^n structure found on " + object + "; give --h and --n");
            data = *found;
        }
        if (!integral_path.empty()) data.integral = parse_integral(integral_path, cat);
        if (is_twcx) {
            auto y = parse_twcx(apply_path, cat);
            auto tw = phi_tw(cat, data, y);
            emit_twcx(*tw.result, out_path);
            std::cout << "wrote twisted complex " << out_path << " ("
                      << tw.result->under.summands.size() << " summands)\n";
        } else {
            auto y = parse_module(apply_path, cat);
            auto tw = phi_module(cat, data, y);
            emit_module(*tw.result, out_path);
            std::cout << "wrote module " << out_path << "; H dims:";
            for (const auto& [x, dims] : tw.result->h_dims()) {
                std::cout << " " << x << ":{";
                bool first = true;
                for (const auto& [g, m] : dims) {
                    std::cout << (first ? "" : ",") << g << ":" << m;
                    first = false;
                }
                std::cout << "}";
            }
            std::cout << "\n";
        }
        return 0;
    }
    if (kind == "sphere") {
        const int sn = n > 0 ? n : 2;
        auto integral = integral_path.empty()
                            ? make_canonical_integral(cat, object, sn)
                            : parse_integral(integral_path, cat);
        auto verdict = classify_spherical(cat, object, sn, integral);
        if (!verdict.pass)
            throw std::invalid_argument(object + " is not spherical of dimension " +
                                        std::to_string(sn));
        ModulePtr y = is_twcx ? tw_to_module(parse_twcx(apply_path, cat))
                              : parse_module(apply_path, cat);
        auto tv = spherical_twist(cat, object, y);
        emit_module(*tv.cone, out_path);
        std::cout << "wrote module " << out_path << "\n";
        return 0;
    }
    throw std::invalid_argument("--kind must be cp or sphere");
}

int run_quasi_iso(const std::string& cat_path, const std::string& morphism_path) {
    auto cat = parse_category(cat_path);
    auto t = parse_morphism(morphism_path, cat);
    auto verdict = quasi_iso_check(t);
    if (verdict.is_quasi_iso) {
        std::cout << "PASS  morphism is a quasi-isomorphism\n";
        return 0;
    }
    std::cout << "FAIL  not a quasi-isomorphism\n";
    for (const auto& f : verdict.failures) std::cout << "  " << f << "\n";
    return 1;
}

int run_fixture(const std::string& name, const std::string& out_dir) {
    auto files = make_fixture_files(name, out_dir);
    for (const auto& p : files) std::cout << "wrote " << p.string() << "\n";
    return 0;
}

int run_verify(const std::string& suite, const std::vector<std::string>& inputs,
               const std::string& report_path) {
    std::vector<SuiteInput> suite_inputs;
    for (const auto& path : inputs)
        suite_inputs.push_back(make_suite_input(path, parse_category(path)));
    auto report = run_suite(suite, suite_inputs);
    std::cout << report.summary();
    if (!report_path.empty()) {
        std::ofstream f(report_path);
        if (!f) throw std::runtime_error("cannot write " + report_path);
        f << report.to_json();
        std::cout << "report written to " << report_path << "\n";
    }
    if (!report.pass()) {
        for (const auto& c : report.checks)
            if (!c.pass) {
                std::cerr << "first failure: " << c.name
                          << (c.details.empty() ? "" : ": " + c.details) << "\n";
                break;
            }
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact A-infinity category toolkit"};
    app.require_subcommand(1);

    std::string cat_path, source, target, object, integral_path, h_name, morphism_path;
    std::string kind, apply_path, out_path, fixture_name, out_dir, report_path;
    int cp_n = 0, sphere_n = 0, twist_n = 0;
    std::string suite;
    std::vector<std::string> verify_inputs;

    auto* check = app.add_subcommand("check", "A-infinity relations and unitality audits");
    check->add_option("category", cat_path)->required();

    auto* coh = app.add_subcommand("cohomology", "H(hom(X,Y)) dims and representatives");
    coh->add_option("category", cat_path)->required();
    coh->add_option("--source", source)->required();
    coh->add_option("--target", target)->required();

    auto* cls = app.add_subcommand("classify", "CP^n / spherical object classification");
    cls->add_option("category", cat_path)->required();
    cls->add_option("--object", object)->required();
    cls->add_option("--cp", cp_n);
    cls->add_option("--spherical", sphere_n);
    cls->add_option("--integral", integral_path);
    cls->add_option("--class-h", h_name);

    auto* tw = app.add_subcommand("twist", "apply a projective or spherical twist");
    tw->add_option("category", cat_path)->required();
    tw->add_option("--kind", kind)->required();
    tw->add_option("--object", object)->required();
    tw->add_option("--apply", apply_path)->required();
    tw->add_option("--out", out_path)->required();
    tw->add_option("--n", twist_n);
    tw->add_option("--class-h", h_name);
    tw->add_option("--integral", integral_path);

    auto* qi = app.add_subcommand("quasi-iso", "test a module morphism file");
    qi->add_option("category", cat_path)->required();
    qi->add_option("--morphism", morphism_path)->required();

    auto* fx = app.add_subcommand("fixture", "write a named fixture (P<n>, 2OBJ<n>, CONE_H<n>)");
    fx->add_option("name", fixture_name)->required();
    fx->add_option("--out", out_dir)->required();

    auto* vf = app.add_subcommand("verify", "run a verification suite");
    vf->add_option("suite", suite)->required();
    vf->add_option("inputs", verify_inputs)->required();
    vf->add_option("--report", report_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return run_check(cat_path);
        if (*coh) return run_cohomology(cat_path, source, target);
        if (*cls)
            return run_classify(cat_path, object, cp_n, sphere_n, integral_path, h_name);
        if (*tw)
            return run_twist(cat_path, kind, object, apply_path, out_path, twist_n, h_name,
                             integral_path);
        if (*qi) return run_quasi_iso(cat_path, morphism_path);
        if (*fx) return run_fixture(fixture_name, out_dir);
        if (*vf) return run_verify(suite, verify_inputs, report_path);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

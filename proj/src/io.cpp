#include "ainf/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ainf/fixtures.hpp"

namespace ainf {

namespace {

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

struct LineReader {
    std::string path;
    std::istream& in;
    int lineno = 0;
    bool next(std::vector<std::string>* tokens) {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            tokens->clear();
            std::istringstream ss(line);
            std::string tok;
            while (ss >> tok) tokens->push_back(tok);
            if (!tokens->empty()) return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(path, lineno, msg); }
};

// splits pipe-separated token groups: "mu 2 V V V | h h | h2 | 1"
std::vector<std::vector<std::string>> split_groups(const std::vector<std::string>& tokens,
                                                   size_t from) {
    std::vector<std::vector<std::string>> groups(1);
    for (size_t i = from; i < tokens.size(); ++i) {
        if (tokens[i] == "|")
            groups.emplace_back();
        else
            groups.back().push_back(tokens[i]);
    }
    return groups;
}

std::string sorted_basis_block(const std::string& tag, const std::string& prefix,
                               const GradedVectorSpace& sp) {
    std::vector<std::pair<std::string, int>> basis = sp.basis();
    std::stable_sort(basis.begin(), basis.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second < b.second : a.first < b.first;
    });
    std::string out;
    for (const auto& [name, deg] : basis)
        out += tag + " " + prefix + name + " " + std::to_string(deg) + "\n";
    return out;
}

}  // namespace

std::string category_to_string(const AInfCategory& cat) {
    std::string out = "ainf-category v1\n";
    out += "field " + cat.field.str() + "\n";
    out += "arity_bound " + std::to_string(cat.arity_bound) + "\n";
    std::vector<std::string> objects = cat.objects;
    std::sort(objects.begin(), objects.end());
    for (const auto& o : objects) out += "object " + o + "\n";
    for (const auto& x : objects)
        for (const auto& y : objects) {
            auto it = cat.homs.find({x, y});
            if (it == cat.homs.end() || it->second.dim() == 0) continue;
            out += sorted_basis_block("hom", x + " " + y + " ", it->second);
        }
    if (cat.strict_units)
        for (const auto& [obj, e] : *cat.strict_units) out += "unit " + obj + " " + e + "\n";
    for (const auto& [key, vec] : cat.mu) {
        std::string base = "mu " + std::to_string(key.inputs.size());
        for (const auto& o : key.chain) base += " " + o;
        base += " |";
        for (const auto& a : key.inputs) base += " " + a;
        base += " |";
        for (const auto& [on, c] : vec) out += base + " " + on + " | " + c.str() + "\n";
    }
    return out;
}

void emit_category(const AInfCategory& cat, const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << category_to_string(cat);
}

CategoryPtr parse_category(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ParseError(path.string(), 0, "cannot open file");
    LineReader reader{path.string(), f};
    std::vector<std::string> tok;
    if (!reader.next(&tok) || tok.size() != 2 || tok[0] != "ainf-category" || tok[1] != "v1")
        reader.fail("expected header 'ainf-category v1'");

    auto cat = std::make_shared<AInfCategory>();
    std::map<std::pair<std::string, std::string>, std::vector<std::pair<std::string, int>>>
        hom_basis;
    bool have_field = false;
    struct MuLine {
        MuKey key;
        std::string out;
        std::string coeff;
        int lineno;
    };
    std::vector<MuLine> mu_lines;

    while (reader.next(&tok)) {
        if (tok[0] == "field") {
            if (have_field) reader.fail("duplicate field line");
            have_field = true;
            if (tok.size() == 2 && tok[1] == "Q") {
                cat->field = Field::rationals();
            } else if (tok.size() == 3 && tok[1] == "Fp") {
                try {
                    cat->field = Field::prime_field(std::stoll(tok[2]));
                } catch (const std::exception& e) {
                    reader.fail(e.what());
                }
            } else {
                reader.fail("field must be 'Q' or 'Fp <prime>'");
            }
        } else if (tok[0] == "arity_bound") {
            if (tok.size() != 2) reader.fail("arity_bound needs one integer");
            cat->arity_bound = std::stoi(tok[1]);
        } else if (tok[0] == "object") {
            if (tok.size() != 2 || !valid_name(tok[1])) reader.fail("object needs a name");
            cat->objects.push_back(tok[1]);
        } else if (tok[0] == "hom") {
            if (tok.size() != 5) reader.fail("hom needs: src dst name degree");
            if (!valid_name(tok[3])) reader.fail("invalid basis name '" + tok[3] + "'");
            hom_basis[{tok[1], tok[2]}].emplace_back(tok[3], std::stoi(tok[4]));
        } else if (tok[0] == "unit") {
            if (tok.size() != 3) reader.fail("unit needs: object name");
            if (!cat->strict_units) cat->strict_units.emplace();
            (*cat->strict_units)[tok[1]] = tok[2];
        } else if (tok[0] == "mu") {
            auto groups = split_groups(tok, 1);
            if (groups.size() != 4) reader.fail("mu needs four |-separated groups");
            if (groups[0].size() < 2) reader.fail("mu needs an arity and an object chain");
            int d = 0;
            try {
                d = std::stoi(groups[0][0]);
            } catch (...) {
                reader.fail("bad arity '" + groups[0][0] + "'");
            }
            MuLine line;
            line.lineno = reader.lineno;
            line.key.chain.assign(groups[0].begin() + 1, groups[0].end());
            line.key.inputs = groups[1];
            if (static_cast<int>(line.key.chain.size()) != d + 1)
                reader.fail("mu chain must list " + std::to_string(d + 1) + " objects");
            if (static_cast<int>(line.key.inputs.size()) != d)
                reader.fail("mu needs " + std::to_string(d) + " inputs");
            if (groups[2].size() != 1) reader.fail("mu needs a single output name");
            if (groups[3].size() != 1) reader.fail("mu needs a single coefficient");
            line.out = groups[2][0];
            line.coeff = groups[3][0];
            mu_lines.push_back(std::move(line));
        } else {
            reader.fail("unknown directive '" + tok[0] + "'");
        }
    }
    if (!have_field) throw ParseError(path.string(), reader.lineno, "missing field line");
    for (auto& [pair, basis] : hom_basis) {
        try {
            cat->homs[pair] = GradedVectorSpace(basis);
        } catch (const std::exception& e) {
            throw ParseError(path.string(), 0, e.what());
        }
    }
    for (const auto& line : mu_lines) {
        Scalar c(cat->field);
        try {
            c = Scalar::parse(cat->field, line.coeff);
        } catch (const std::exception& e) {
            throw ParseError(path.string(), line.lineno, e.what());
        }
        if (c.is_zero()) continue;
        Vec& slot = cat->mu[line.key];
        vec_add(slot, line.out, c);
        if (vec_is_zero(slot)) cat->mu.erase(line.key);
    }
    try {
        cat->validate();
    } catch (const std::exception& e) {
        throw ParseError(path.string(), 0, e.what());
    }
    return cat;
}

void emit_module(const AInfModule& m, const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << "ainf-module v1\n";
    f << "arity_bound " << m.arity_bound << "\n";
    for (const auto& [x, sp] : m.spaces)
        if (sp.dim() > 0) f << sorted_basis_block("space", x + " ", sp);
    for (const auto& [key, vec] : m.mu) {
        std::string base = "mu " + std::to_string(key.chain.size());
        for (const auto& o : key.chain) base += " " + o;
        base += " | " + key.b + " |";
        for (const auto& a : key.args) base += " " + a;
        base += " |";
        for (const auto& [on, c] : vec) f << base << " " << on << " | " << c.str() << "\n";
    }
}

ModulePtr parse_module(const std::filesystem::path& path, const CategoryPtr& cat) {
    std::ifstream f(path);
    if (!f) throw ParseError(path.string(), 0, "cannot open file");
    LineReader reader{path.string(), f};
    std::vector<std::string> tok;
    if (!reader.next(&tok) || tok.size() != 2 || tok[0] != "ainf-module")
        reader.fail("expected header 'ainf-module v1'");
    auto m = std::make_shared<AInfModule>();
    m->cat = cat;
    std::map<std::string, std::vector<std::pair<std::string, int>>> basis;
    while (reader.next(&tok)) {
        if (tok[0] == "arity_bound") {
            m->arity_bound = std::stoi(tok.at(1));
        } else if (tok[0] == "space") {
            if (tok.size() != 4) reader.fail("space: obj name degree");
            basis[tok[1]].emplace_back(tok[2], std::stoi(tok[3]));
        } else if (tok[0] == "mu") {
            auto groups = split_groups(tok, 1);
            if (groups.size() != 5) reader.fail("mu needs five |-separated groups");
            ModKey key;
            key.chain.assign(groups[0].begin() + 1, groups[0].end());
            if (groups[1].size() != 1) reader.fail("mu needs one module element");
            key.b = groups[1][0];
            key.args = groups[2];
            if (groups[3].size() != 1 || groups[4].size() != 1)
                reader.fail("mu needs one output and one coefficient");
            Scalar c(cat->field);
            try {
                c = Scalar::parse(cat->field, groups[4][0]);
            } catch (const std::exception& e) {
                reader.fail(e.what());
            }
            if (c.is_zero()) continue;
            Vec& slot = m->mu[key];
            vec_add(slot, groups[3][0], c);
            if (vec_is_zero(slot)) m->mu.erase(key);
        } else {
            reader.fail("unknown directive '" + tok[0] + "'");
        }
    }
    for (const auto& x : cat->objects) {
        auto it = basis.find(x);
        m->spaces[x] = it == basis.end() ? GradedVectorSpace{} : GradedVectorSpace(it->second);
    }
    try {
        m->validate();
    } catch (const std::exception& e) {
        throw ParseError(path.string(), 0, e.what());
    }
    return m;
}

void emit_morphism(const PreModuleHom& t, const std::string& source_rel,
                   const std::string& target_rel, const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << "ainf-morphism v1\n";
    f << "degree " << t.degree << "\n";
    f << "source " << source_rel << "\n";
    f << "target " << target_rel << "\n";
    for (const auto& [key, vec] : t.table) {
        std::string base = "t " + std::to_string(key.chain.size());
        for (const auto& o : key.chain) base += " " + o;
        base += " | " + key.b + " |";
        for (const auto& a : key.args) base += " " + a;
        base += " |";
        for (const auto& [on, c] : vec) f << base << " " << on << " | " << c.str() << "\n";
    }
}

PreModuleHom parse_morphism(const std::filesystem::path& path, const CategoryPtr& cat) {
    std::ifstream f(path);
    if (!f) throw ParseError(path.string(), 0, "cannot open file");
    LineReader reader{path.string(), f};
    std::vector<std::string> tok;
    if (!reader.next(&tok) || tok.size() != 2 || tok[0] != "ainf-morphism")
        reader.fail("expected header 'ainf-morphism v1'");
    PreModuleHom t;
    bool have_source = false, have_target = false;
    while (reader.next(&tok)) {
        if (tok[0] == "degree") {
            t.degree = std::stoi(tok.at(1));
        } else if (tok[0] == "source" || tok[0] == "target") {
            if (tok.size() != 2) reader.fail(tok[0] + " needs a path");
            auto module_path = path.parent_path() / tok[1];
            if (tok[0] == "source") {
                t.source = parse_module(module_path, cat);
                have_source = true;
            } else {
                t.target = parse_module(module_path, cat);
                have_target = true;
            }
        } else if (tok[0] == "t") {
            if (!have_source || !have_target)
                reader.fail("t lines must come after source and target");
            auto groups = split_groups(tok, 1);
            if (groups.size() != 5) reader.fail("t needs five |-separated groups");
            ModKey key;
            key.chain.assign(groups[0].begin() + 1, groups[0].end());
            if (groups[1].size() != 1) reader.fail("t needs one module element");
            key.b = groups[1][0];
            key.args = groups[2];
            if (groups[3].size() != 1 || groups[4].size() != 1)
                reader.fail("t needs one output and one coefficient");
            Scalar c(cat->field);
            try {
                c = Scalar::parse(cat->field, groups[4][0]);
            } catch (const std::exception& e) {
                reader.fail(e.what());
            }
            if (c.is_zero()) continue;
            Vec& slot = t.table[key];
            vec_add(slot, groups[3][0], c);
            if (vec_is_zero(slot)) t.table.erase(key);
        } else {
            reader.fail("unknown directive '" + tok[0] + "'");
        }
    }
    if (!have_source || !have_target)
        throw ParseError(path.string(), reader.lineno, "missing source or target module");
    try {
        t.validate();
    } catch (const std::exception& e) {
        throw ParseError(path.string(), 0, e.what());
    }
    return t;
}

void emit_twcx(const TwistedComplex& x, const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << "ainf-twcx v1\n";
    std::vector<int> idx(x.under.summands.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return x.order[a] < x.order[b]; });
    for (int i : idx) {
        const auto& s = x.under.summands[i];
        f << "summand " << s.label << " " << s.obj << "\n";
        for (const auto& [n, g] : s.mult.basis())
            f << "mbasis " << s.label << " " << n << " " << g << "\n";
    }
    for (const auto& [key, c] : x.delta.entries) {
        f << "delta " << x.under.summands[key.from].label << " " << key.vfrom << " "
          << x.under.summands[key.to].label << " " << key.vto << " " << key.x << " "
          << c.str() << "\n";
    }
}

TwPtr parse_twcx(const std::filesystem::path& path, const CategoryPtr& cat) {
    std::ifstream f(path);
    if (!f) throw ParseError(path.string(), 0, "cannot open file");
    LineReader reader{path.string(), f};
    std::vector<std::string> tok;
    if (!reader.next(&tok) || tok.size() != 2 || tok[0] != "ainf-twcx")
        reader.fail("expected header 'ainf-twcx v1'");
    auto x = std::make_shared<TwistedComplex>();
    x->under.cat = cat;
    std::map<std::string, std::vector<std::pair<std::string, int>>> mbasis;
    std::vector<std::array<std::string, 6>> delta_lines;
    while (reader.next(&tok)) {
        if (tok[0] == "summand") {
            if (tok.size() != 3) reader.fail("summand: label object");
            x->under.summands.push_back({tok[1], GradedVectorSpace{}, tok[2]});
        } else if (tok[0] == "mbasis") {
            if (tok.size() != 4) reader.fail("mbasis: label name degree");
            mbasis[tok[1]].emplace_back(tok[2], std::stoi(tok[3]));
        } else if (tok[0] == "delta") {
            if (tok.size() != 7) reader.fail("delta: from vfrom to vto x coeff");
            delta_lines.push_back({tok[1], tok[2], tok[3], tok[4], tok[5], tok[6]});
        } else {
            reader.fail("unknown directive '" + tok[0] + "'");
        }
    }
    for (auto& s : x->under.summands) {
        auto it = mbasis.find(s.label);
        if (it != mbasis.end()) s.mult = GradedVectorSpace(it->second);
    }
    for (size_t i = 0; i < x->under.summands.size(); ++i)
        x->order.push_back(static_cast<int>(i));
    x->delta.src = x->under;
    x->delta.dst = x->under;
    x->delta.degree = 1;
    for (const auto& line : delta_lines) {
        TwEntryKey key;
        try {
            key.from = x->under.find(line[0]);
            key.to = x->under.find(line[2]);
            key.vfrom = line[1];
            key.vto = line[3];
            key.x = line[4];
            x->delta.add(key, Scalar::parse(cat->field, line[5]));
        } catch (const std::exception& e) {
            throw ParseError(path.string(), 0, e.what());
        }
    }
    auto report = validate_twisted(*x);
    if (!report.pass) throw ParseError(path.string(), 0, report.violations.front());
    return x;
}

void emit_integral(const PairingIntegral& integral, const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << "ainf-integral v1\n";
    f << "object " << integral.object << "\n";
    f << "top_degree " << integral.top_degree << "\n";
    for (const auto& [n, c] : integral.functional) f << "on " << n << " " << c.str() << "\n";
}

PairingIntegral parse_integral(const std::filesystem::path& path, const CategoryPtr& cat) {
    std::ifstream f(path);
    if (!f) throw ParseError(path.string(), 0, "cannot open file");
    LineReader reader{path.string(), f};
    std::vector<std::string> tok;
    if (!reader.next(&tok) || tok.size() != 2 || tok[0] != "ainf-integral")
        reader.fail("expected header 'ainf-integral v1'");
    PairingIntegral integral;
    while (reader.next(&tok)) {
        if (tok[0] == "object") {
            integral.object = tok.at(1);
        } else if (tok[0] == "top_degree") {
            integral.top_degree = std::stoi(tok.at(1));
        } else if (tok[0] == "on") {
            if (tok.size() != 3) reader.fail("on: basis-name coefficient");
            vec_add(integral.functional, tok[1], Scalar::parse(cat->field, tok[2]));
        } else {
            reader.fail("unknown directive '" + tok[0] + "'");
        }
    }
    return integral;
}

std::vector<std::filesystem::path> make_fixture_files(const std::string& name,
                                                      const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto parse_n = [&](size_t prefix) -> int {
        const std::string digits = name.substr(prefix);
        if (digits.empty()) throw std::invalid_argument("fixture " + name + " needs an index");
        return std::stoi(digits);
    };

    CategoryPtr cat;
    int n = 0;
    if (name.rfind("2OBJ", 0) == 0) {
        n = parse_n(4);
        cat = make_fix_2obj(n);
    } else if (name.rfind("CONE_H", 0) == 0) {
        n = parse_n(6);
        cat = make_fix_p(n);
    } else if (name.rfind("P", 0) == 0) {
        n = parse_n(1);
        cat = make_fix_p(n);
    } else {
        throw std::invalid_argument("unknown fixture '" + name +
                                    "' (use P<n>, 2OBJ<n> or CONE_H<n>)");
    }

    auto cat_path = dir / (name + ".cat");
    emit_category(*cat, cat_path);
    written.push_back(cat_path);

    auto integral = make_canonical_integral(cat, "V", 2 * n);
    auto int_path = dir / (name + ".integral");
    emit_integral(integral, int_path);
    written.push_back(int_path);

    auto yon_path = dir / (name + ".yoneda_V.mod");
    emit_module(*yoneda_module(cat, "V"), yon_path);
    written.push_back(yon_path);

    // the twisted complex Cone(h : S^{-2}V -> V)
    TwMorphism th;
    th.src = shift_tw(-2, atom(cat, "V"));
    th.dst = atom(cat, "V");
    th.degree = 0;
    th.entries[TwEntryKey{0, 0, "k0", "k0", "h"}] = Scalar(cat->field, 1);
    auto wh = cone_tw(th);
    auto wh_path = dir / (name + ".cone_h.twcx");
    emit_twcx(*wh, wh_path);
    written.push_back(wh_path);

    if (name.rfind("CONE_H", 0) == 0) {
        auto mod_path = dir / (name + ".cone_h.mod");
        emit_module(*tw_to_module(wh), mod_path);
        written.push_back(mod_path);
    }
    return written;
}

}  // namespace ainf

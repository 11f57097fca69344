#include "ainf/fixtures.hpp"

namespace ainf {

std::string h_power_name(int k) {
    if (k == 0) return "e";
    if (k == 1) return "h";
    return "h" + std::to_string(k);
}

CategoryPtr make_fix_p(int n, const Field& field) {
    if (n < 1) throw std::invalid_argument("fixture P(n) needs n >= 1");
    auto cat = std::make_shared<AInfCategory>();
    cat->field = field;
    cat->objects = {"V"};
    std::vector<std::pair<std::string, int>> basis;
    for (int k = 0; k <= n; ++k) basis.emplace_back(h_power_name(k), 2 * k);
    cat->homs[{"V", "V"}] = GradedVectorSpace(basis);
    cat->arity_bound = 2;
    cat->strict_units = std::map<std::string, std::string>{{"V", "e"}};
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (i + j > n) continue;
            // application order (a1, a2) encodes mu^2(a2, a1)
            MuKey key{{"V", "V", "V"}, {h_power_name(i), h_power_name(j)}};
            cat->mu[key].emplace(h_power_name(i + j), Scalar(field, 1));
        }
    cat->validate();
    return cat;
}

CategoryPtr make_fix_2obj(int n, const Field& field) {
    auto base = make_fix_p(n, field);
    auto cat = std::make_shared<AInfCategory>(*base);
    cat->objects.push_back("W");
    cat->homs[{"W", "W"}] = GradedVectorSpace({{"eW", 0}});
    (*cat->strict_units)["W"] = "eW";
    MuKey key{{"W", "W", "W"}, {"eW", "eW"}};
    cat->mu[key].emplace("eW", Scalar(field, 1));
    cat->validate();
    return cat;
}

}  // namespace ainf

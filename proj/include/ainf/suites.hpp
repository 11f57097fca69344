#pragma once

#include <optional>

#include "ainf/report.hpp"
#include "ainf/twist.hpp"

namespace ainf {

/// Scans a category for a CP^n-object: objects in canonical order, degree-2
/// cocycle basis candidates in basis order, first classification that passes.
std::optional<CpTwistData> find_cp_data(const CategoryPtr& cat);

/// One verification input: a category plus the (found or supplied) twist
/// datum and a label for the report.
struct SuiteInput {
    std::string label;
    CategoryPtr cat;
    std::optional<CpTwistData> cp;
};

SuiteInput make_suite_input(const std::string& label, const CategoryPtr& cat,
                            std::optional<CpTwistData> cp = std::nullopt);

/// Known suites: relations, unitality, classify, shift, functor, alpha,
/// adjoint, spanning, all.  Unknown names throw std::invalid_argument.
VerifyReport run_suite(const std::string& suite, const std::vector<SuiteInput>& inputs);

const std::vector<std::string>& suite_names();

}  // namespace ainf

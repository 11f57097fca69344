#pragma once

#include <filesystem>

#include "ainf/classify.hpp"
#include "ainf/module.hpp"
#include "ainf/twisted.hpp"

namespace ainf {

/// Input-file errors carry line-precise diagnostics and map to exit code 2.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& path, int line, const std::string& msg)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + msg) {}
};

/// Line-based category format ("ainf-category v1").  Parsing accepts any
/// entry order and non-canonical coefficients; emission is canonical
/// (objects sorted, basis by (degree, name), mu entries by key) so that
/// parse-then-emit is byte-stable.
CategoryPtr parse_category(const std::filesystem::path& path);
void emit_category(const AInfCategory& cat, const std::filesystem::path& path);
std::string category_to_string(const AInfCategory& cat);

ModulePtr parse_module(const std::filesystem::path& path, const CategoryPtr& cat);
void emit_module(const AInfModule& m, const std::filesystem::path& path);

/// Morphism files reference their source/target module files by path
/// (relative to the morphism file).
PreModuleHom parse_morphism(const std::filesystem::path& path, const CategoryPtr& cat);
void emit_morphism(const PreModuleHom& t, const std::string& source_rel,
                   const std::string& target_rel, const std::filesystem::path& path);

TwPtr parse_twcx(const std::filesystem::path& path, const CategoryPtr& cat);
void emit_twcx(const TwistedComplex& x, const std::filesystem::path& path);

PairingIntegral parse_integral(const std::filesystem::path& path, const CategoryPtr& cat);
void emit_integral(const PairingIntegral& integral, const std::filesystem::path& path);

/// Writes the named fixture (P<n>, 2OBJ<n>, CONE_H<n>) and its companion
/// files into the directory; returns the paths written.
std::vector<std::filesystem::path> make_fixture_files(const std::string& name,
                                                      const std::filesystem::path& dir);

}  // namespace ainf

#pragma once

#include <string>
#include <vector>

namespace ainf {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string details;  // residual witnesses, rank/dim tables, counts
};

/// Machine-readable verification report; serialization is deterministic
/// (insertion-ordered keys, exact scalars as strings).
struct VerifyReport {
    std::string suite;
    std::vector<std::string> inputs;
    std::vector<CheckResult> checks;

    bool pass() const;
    void add(const std::string& name, bool ok, const std::string& details = "");
    std::string to_json() const;
    std::string summary() const;  // one line per check, for the terminal
};

}  // namespace ainf

#pragma once

#include <string>
#include <vector>

#include "renorm/config.hpp"
#include "renorm/matrix.hpp"

namespace renorm {

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
    /// One line per check ("PASS <name>" / "FAIL <name>: <detail>") followed
    /// by a summary line; byte-identical across runs for a fixed config.
    std::string to_text() const;
};

/// Runs the full identity suite at the given working parameters.  Every
/// check is exact; there are no tolerances anywhere.
VerifyReport run_verify(const Config& cfg);

}  // namespace renorm

#pragma once

#include "renorm/errors.hpp"

namespace renorm {

/// Working parameters shared by the character, Birkhoff and matrix layers.
struct Config {
    int max_degree = 5;  // forests up to this total degree are exercised
    int z_hi = 6;        // certified z order required of final results
    int tau_cap = 4;     // flow polynomials live in Q[tau]/(tau^{cap+1})

    /// Order the primitive building blocks are expanded to, so that
    /// products of up to max_degree factors stay certified through z_hi.
    int build_hi() const { return z_hi + max_degree; }

    void validate() const {
        if (max_degree < 1) throw DomainError("config: max_degree must be >= 1");
        if (z_hi < max_degree) throw DomainError("config: z_hi must be >= max_degree");
        if (tau_cap < 2) throw DomainError("config: tau_cap must be >= 2");
    }
};

}  // namespace renorm

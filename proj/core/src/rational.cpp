#include "renorm/rational.hpp"

#include "renorm/errors.hpp"

namespace renorm {

std::string rat_to_string(const Rat& q) {
    return q.get_str();
}

Rat rat_pow(const Rat& base, long exp) {
    if (exp == 0) return 1;
    if (base == 0) {
        if (exp < 0) throw DomainError("rat_pow: zero base with negative exponent");
        return 0;
    }
    Rat b = exp < 0 ? Rat(base.get_den(), base.get_num()) : base;
    b.canonicalize();
    unsigned long n = exp < 0 ? -static_cast<unsigned long>(exp) : exp;
    Rat out = 1;
    while (n > 0) {
        if (n & 1) out *= b;
        b *= b;
        n >>= 1;
    }
    out.canonicalize();
    return out;
}

Rat factorial(unsigned n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rat(f);
}

}  // namespace renorm

// Acceptance runner: executes the full identity suite twice at the default
// configuration, printing one line per criterion, and checks that the two
// reports agree byte for byte.
#include <cstdio>
#include <string>

#include "renorm/verify.hpp"

int main() {
    renorm::Config cfg;
    renorm::VerifyReport first = renorm::run_verify(cfg);
    std::string text = first.to_text();
    std::fputs(text.c_str(), stdout);

    renorm::VerifyReport second = renorm::run_verify(cfg);
    bool deterministic = second.to_text() == text;
    std::printf("%s determinism: two runs produce byte-identical reports\n",
                deterministic ? "PASS" : "FAIL");

    return (first.all_pass() && deterministic) ? 0 : 1;
}

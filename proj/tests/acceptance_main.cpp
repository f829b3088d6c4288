// Acceptance suite: runs every verification criterion at its stated
// tolerance and prints one pass/fail line per criterion.

#include <cstdio>
#include <cstring>

#include "starsurf/battery.hpp"

int main(int argc, char** argv) {
    starsurf::BatteryOptions opts;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--skip-exact") == 0) opts.skip_exact = true;
        if (std::strcmp(argv[i], "--skip-float") == 0) opts.skip_float = true;
    }

    auto results = starsurf::run_battery(opts);
    int failures = 0;
    for (const auto& r : results) {
        const char* tag = r.skipped ? "SKIP" : r.pass ? "PASS" : "FAIL";
        if (!r.pass) ++failures;
        std::printf("[%s] criterion %s: %s", tag, r.id.c_str(), r.name.c_str());
        if (!r.skipped) std::printf("  (%s) [%.2fs]", r.detail.c_str(), r.seconds);
        std::printf("\n");
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures == 0 ? 0 : 1;
}

#include "property_suite.hpp"

#include <cstdio>

int main() {
    const int failures = run_property_suites();
    if (failures == 0) std::printf("all property suites passed\n");
    return failures;
}

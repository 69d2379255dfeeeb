#pragma once

// Randomized property suites shared by the standalone property runner and
// the acceptance harness. Returns the number of failed suites.
int run_property_suites();

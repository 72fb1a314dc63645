#pragma once

namespace harmspace {

/// Numerical tolerances shared by checks and suites. Math code never
/// hard-codes these; callers pass them in.
struct Tolerances {
    double relative = 1e-8;
    double absolute = 1e-14;
    double orthonormality = 1e-10;
    double unit_norm = 1e-12;
    double slope = 0.05;
};

} // namespace harmspace

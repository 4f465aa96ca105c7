#pragma once

#include <cmath>

// Absolute-tolerance comparison.
inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

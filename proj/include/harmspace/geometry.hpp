#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "harmspace/error.hpp"

namespace harmspace {

/// A vector in R^n for n <= 3.
struct Vec {
    int dim = 0;
    std::array<double, 3> c{0.0, 0.0, 0.0};

    Vec() = default;
    Vec(double x, double y) : dim(2), c{x, y, 0.0} {}
    Vec(double x, double y, double z) : dim(3), c{x, y, z} {}

    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

    double dot(const Vec& o) const {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) s += c[i] * o.c[i];
        return s;
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec scaled(double a) const {
        Vec v = *this;
        for (int i = 0; i < dim; ++i) v.c[i] *= a;
        return v;
    }
    Vec operator-(const Vec& o) const {
        Vec v = *this;
        for (int i = 0; i < dim; ++i) v.c[i] -= o.c[i];
        return v;
    }
    Vec operator+(const Vec& o) const {
        Vec v = *this;
        for (int i = 0; i < dim; ++i) v.c[i] += o.c[i];
        return v;
    }
    Vec normalized() const { return scaled(1.0 / norm()); }

    static Vec zero(int n) {
        Vec v;
        v.dim = n;
        return v;
    }
    static Vec axis(int n, int i) {
        Vec v = zero(n);
        v.c[static_cast<std::size_t>(i)] = 1.0;
        return v;
    }
};

/// Cosine of the angle between two unit vectors together with 1 - cos,
/// the latter computed without cancellation.
struct AngleCosine {
    double u;
    double one_minus_u;
};

inline AngleCosine angle_cosine(const Vec& a, const Vec& b) {
    const double d2 = (a - b).dot(a - b);
    const double omu = 0.5 * d2;
    return {1.0 - omu, omu};
}

/// x = r x' with r in [0,1) and |x'| = 1.
struct BallPoint {
    double radius = 0.0;
    Vec direction;

    BallPoint() = default;
    BallPoint(double r, const Vec& dir) : radius(r), direction(dir) {
        if (!(r >= 0.0) || !(r < 1.0)) throw DomainError("ball point radius must lie in [0,1)");
        if (std::abs(dir.norm() - 1.0) > 1e-12) throw DomainError("ball point direction must be a unit vector");
    }
    static BallPoint from_cartesian(const Vec& x) {
        const double r = x.norm();
        if (r == 0.0) return BallPoint(0.0, Vec::axis(x.dim, x.dim - 1));
        return BallPoint(r, x.scaled(1.0 / r));
    }
    int dim() const { return direction.dim; }
    Vec cartesian() const { return direction.scaled(radius); }
};

/// (y, s) in the upper half-space, y in R^n, s > 0.
struct HalfSpacePoint {
    std::vector<double> x;
    double t = 1.0;

    HalfSpacePoint() = default;
    HalfSpacePoint(std::vector<double> horizontal, double height) : x(std::move(horizontal)), t(height) {
        if (!(t > 0.0)) throw DomainError("half-space point needs positive height");
    }
    int dim() const { return static_cast<int>(x.size()); }
};

inline void require_unit(const Vec& v, double tol = 1e-12) {
    if (std::abs(v.norm() - 1.0) > tol) throw DomainError("expected a unit vector");
}

} // namespace harmspace

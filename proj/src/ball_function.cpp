#include "harmspace/ball_function.hpp"

#include <cmath>

#include "harmspace/error.hpp"
#include "harmspace/kernels.hpp"

namespace harmspace {

BallFunction BallFunction::from_expansion(HarmonicFunction f) {
    BallFunction b;
    b.kind_ = Kind::expansion;
    b.n_ = f.dimension();
    b.basis_ = std::make_shared<HarmonicBasis>(f.dimension(), f.max_degree());
    b.expansion_ = std::make_shared<HarmonicFunction>(std::move(f));
    b.sphere_degree_ = 0;
    return b;
}

BallFunction BallFunction::zonal(int n, const Vec& axis, ZonalProfile F, double concentration) {
    require_unit(axis, 1e-12);
    if (!(concentration >= 0.0) || !(concentration < 1.0))
        throw DomainError("BallFunction::zonal: concentration must lie in [0,1)");
    BallFunction b;
    b.kind_ = Kind::zonal;
    b.n_ = n;
    b.axis_ = axis;
    b.profile_ = std::move(F);
    b.concentration_ = concentration;
    return b;
}

BallFunction BallFunction::sampled(int n, Sampler F, int sphere_degree) {
    BallFunction b;
    b.kind_ = Kind::sampled;
    b.n_ = n;
    b.sampler_ = std::move(F);
    b.sphere_degree_ = sphere_degree;
    b.concentration_ = 1.0;
    return b;
}

double BallFunction::eval(double r, const Vec& dir) const {
    switch (kind_) {
    case Kind::expansion: {
        const std::vector<double> y = basis_->evaluate_all(dir);
        return expansion_->eval(r, y);
    }
    case Kind::zonal: {
        const double d = std::sqrt((dir - axis_).dot(dir - axis_));
        const double theta = 2.0 * std::asin(std::min(1.0, 0.5 * d));
        return profile_(r, theta);
    }
    case Kind::sampled: return sampler_(dir.scaled(r));
    }
    return 0.0;
}

double BallFunction::eval(const Vec& x) const {
    const double r = x.norm();
    const Vec dir = r == 0.0 ? Vec::axis(x.dim, x.dim - 1) : x.scaled(1.0 / r);
    return eval(r, dir);
}

BallFunction BallFunction::scaled(double a) const {
    BallFunction b = *this;
    switch (kind_) {
    case Kind::expansion: b.expansion_ = std::make_shared<HarmonicFunction>(expansion_->scaled(a)); break;
    case Kind::zonal: {
        auto F = profile_;
        b.profile_ = [F, a](double r, double th) { return a * F(r, th); };
        break;
    }
    case Kind::sampled: {
        auto F = sampler_;
        b.sampler_ = [F, a](const Vec& x) { return a * F(x); };
        break;
    }
    }
    return b;
}

BallFunction kernel_function(double m, const BallPoint& y) {
    auto q = std::make_shared<BergmanKernelBall>(y.dim(), m);
    const double rho = y.radius;
    return BallFunction::zonal(
        y.dim(), y.direction,
        [q, rho](double r, double theta) {
            const double sh = std::sin(0.5 * theta);
            return q->profile(r * rho, 2.0 * sh * sh);
        },
        rho);
}

} // namespace harmspace

#pragma once

#include <functional>
#include <memory>

#include "harmspace/geometry.hpp"
#include "harmspace/harmonic_fn.hpp"

namespace harmspace {

/// A function on the ball in one of three representations: a finite expansion,
/// a function of (r, angle to a fixed axis), or an opaque point evaluator.
class BallFunction {
public:
    enum class Kind { expansion, zonal, sampled };
    /// F(r, theta) with theta the angle between x' and the axis.
    using ZonalProfile = std::function<double(double r, double theta)>;
    using Sampler = std::function<double(const Vec& x)>;

    static BallFunction from_expansion(HarmonicFunction f);
    /// `concentration` rho in [0, 1): the profile varies at angular scale 1 - r rho.
    static BallFunction zonal(int n, const Vec& axis, ZonalProfile F, double concentration);
    static BallFunction sampled(int n, Sampler F, int sphere_degree);

    Kind kind() const { return kind_; }
    int dimension() const { return n_; }

    double eval(const Vec& x) const;
    double eval(double r, const Vec& direction) const;

    const HarmonicFunction& expansion() const { return *expansion_; }
    const Vec& axis() const { return axis_; }
    const ZonalProfile& profile() const { return profile_; }
    double concentration() const { return concentration_; }
    int sphere_degree() const { return sphere_degree_; }
    /// Whether the function extends continuously to the closed ball (used for sup at r = 1).
    bool defined_on_boundary() const { return kind_ != Kind::sampled && concentration_ < 1.0; }

    BallFunction scaled(double a) const;

private:
    Kind kind_ = Kind::sampled;
    int n_ = 2;
    std::shared_ptr<HarmonicFunction> expansion_;
    std::shared_ptr<HarmonicBasis> basis_;
    Vec axis_;
    ZonalProfile profile_;
    Sampler sampler_;
    double concentration_ = 0.0;
    int sphere_degree_ = 0;
};

/// f_{m,y}(x) = Q_m(x, y) in closed form (integer m) or by series, as a zonal function about y'.
BallFunction kernel_function(double m, const BallPoint& y);

} // namespace harmspace

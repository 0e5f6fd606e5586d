#pragma once

#include <vector>

#include <Eigen/Core>

#include "normalproj/surface.hpp"

namespace normalproj {

struct OracleOptions {
    int grid_n = 60;
    int newton_iters = 50;
    double newton_tol = 1e-12;
    ParamDomain domain;
    double merge_tol = 1e-6;
    /// Seed box used when the domain is unbounded.
    double unbounded_extent = 3.0;

    void validate() const;
};

struct CriticalPoint {
    double u = 0.0;
    double v = 0.0;
    double distance = 0.0;
};

/// Gradient of D_p(u, v) = |phi(u, v) - p|^2.
Eigen::Vector2d gradient_D(const SurfaceParam& s, const Eigen::Vector3d& p, double u, double v);
/// Hessian of D_p.
Eigen::Matrix2d hessian_D(const SurfaceParam& s, const Eigen::Vector3d& p, double u, double v);

/// Critical points of D_p in the domain, found by damped Newton from a
/// grid of seeds, merged in (u, v) and sorted by distance.
std::vector<CriticalPoint> oracle_project(const SurfaceParam& s, const Eigen::Vector3d& p, const OracleOptions& opts = {});

}  // namespace normalproj

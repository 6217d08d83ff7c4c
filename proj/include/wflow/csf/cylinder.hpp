#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace wflow::csf {

struct csf_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Punctured flat cylinder R/LZ with conformal factor rho vanishing
/// quadratically at the punctures: rho = (sum_i 1/d_i^2)^-1 with
/// d_i^2 = dist_per(x, x_i)^2 + y^2. This reproduces the local model
/// (x-x_i)^2 + y^2 to leading order and is smooth, periodic and positive
/// away from the punctures.
struct CylinderConfig {
    double L = 0;
    std::vector<double> punctures;  // sorted, in [0, L)
    std::vector<double> m;          // m[i] = length of segment from x_{i-1} to x_i

    int n() const { return static_cast<int>(punctures.size()); }

    double dist_per(double a, double b) const {
        double d = std::fmod(std::abs(a - b), L);
        return std::min(d, L - d);
    }

    double rho(double x, double y) const {
        double s = 0;
        for (double xi : punctures) {
            double dx = dist_per(x, xi);
            s += 1.0 / (dx * dx + y * y);
        }
        if (!(s > 0)) throw csf_error("rho: evaluation at infinity");
        return 1.0 / s;
    }
};

inline CylinderConfig build_cylinder(double L, std::vector<double> punctures) {
    if (!(L > 0)) throw std::domain_error("build_cylinder: L must be positive");
    if (punctures.size() < 1) throw std::domain_error("build_cylinder: need punctures");
    if (!std::is_sorted(punctures.begin(), punctures.end()))
        throw std::domain_error("build_cylinder: punctures must be sorted");
    for (double x : punctures)
        if (x < 0 || x >= L) throw std::domain_error("build_cylinder: punctures must lie in [0, L)");
    for (size_t i = 0; i + 1 < punctures.size(); ++i)
        if (!(punctures[i + 1] > punctures[i]))
            throw std::domain_error("build_cylinder: duplicate punctures");
    CylinderConfig cfg;
    cfg.L = L;
    cfg.punctures = std::move(punctures);
    int n = cfg.n();
    for (int i = 0; i < n; ++i) {
        double prev = cfg.punctures[(i + n - 1) % n];
        double gap = cfg.punctures[i] - prev;
        if (gap <= 0) gap += L;
        cfg.m.push_back(gap);
    }
    double total = 0;
    for (double g : cfg.m) total += g;
    if (std::abs(total - L) > 1e-9 * L) throw csf_error("build_cylinder: segment lengths do not sum to L");
    return cfg;
}

}  // namespace wflow::csf

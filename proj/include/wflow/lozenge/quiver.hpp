#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace wflow::loz {

struct lozenge_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Quiver with Hermitian vertex spaces: per-vertex dimension, trace mass and
/// central curvature scalar, plus arrows carrying the representation matrices.
struct QuiverData {
    struct Vertex {
        int dim = 1;
        double mass = 1.0;
        double rho = 0.0;
    };
    struct Arrow {
        int src = 0;
        int dst = 0;
        Eigen::MatrixXcd alpha;  // d_dst x d_src, the (0,1)-component
    };

    std::vector<Vertex> vertices;
    std::vector<Arrow> arrows;

    void validate() const {
        if (vertices.empty()) throw lozenge_error("quiver: no vertices");
        for (const auto& v : vertices) {
            if (v.dim < 1) throw lozenge_error("quiver: vertex dimension must be >= 1");
            if (!(v.mass > 0)) throw lozenge_error("quiver: vertex mass must be positive");
        }
        int n = static_cast<int>(vertices.size());
        for (const auto& a : arrows) {
            if (a.src < 0 || a.src >= n || a.dst < 0 || a.dst >= n)
                throw lozenge_error("quiver: arrow endpoint out of range");
            if (a.alpha.rows() != vertices[a.dst].dim || a.alpha.cols() != vertices[a.src].dim)
                throw lozenge_error("quiver: arrow matrix has wrong shape");
        }
    }
};

}  // namespace wflow::loz

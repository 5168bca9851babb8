#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>
#include <vector>

namespace ontoview::testing {

/// Dense Google-matrix power iteration.
inline Eigen::VectorXd dense_pagerank(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                      bool directed, double damping) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    auto link = [&](std::size_t from, std::size_t to) {
        m(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from)) += 1.0;
    };
    for (const auto& [a, b] : edges) {
        link(a, b);
        if (!directed) {
            link(b, a);
        }
    }
    const auto size = static_cast<Eigen::Index>(n);
    for (Eigen::Index col = 0; col < size; ++col) {
        const double out = m.col(col).sum();
        if (out == 0.0) {
            m.col(col).setConstant(1.0 / static_cast<double>(n));
        } else {
            m.col(col) /= out;
        }
    }
    const Eigen::MatrixXd google =
        damping * m + Eigen::MatrixXd::Constant(size, size, (1.0 - damping) / static_cast<double>(n));
    Eigen::VectorXd x = Eigen::VectorXd::Constant(size, 1.0 / static_cast<double>(n));
    for (int i = 0; i < 100000; ++i) {
        const Eigen::VectorXd next = google * x;
        const double delta = (next - x).cwiseAbs().maxCoeff();
        x = next;
        if (delta < 1e-15) {
            break;
        }
    }
    return x / x.sum();
}

}  // namespace ontoview::testing

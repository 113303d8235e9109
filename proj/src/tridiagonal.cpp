#include "rotorchain/tridiagonal.hpp"

#include "rotorchain/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

namespace rotorchain {

namespace {

void sort_and_fix_signs(Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
    const auto n = values.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return values(a) < values(b); });

    Eigen::VectorXd sorted_values(n);
    Eigen::MatrixXd sorted_vectors(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        sorted_values(k) = values(order[static_cast<std::size_t>(k)]);
        sorted_vectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
        // First nonzero component positive; for an irreducible tridiagonal the
        // first component never vanishes.
        for (Eigen::Index p = 0; p < n; ++p) {
            const double x = sorted_vectors(p, k);
            if (std::abs(x) > 1e-12) {
                if (x < 0.0)
                    sorted_vectors.col(k) *= -1.0;
                break;
            }
        }
    }
    values = std::move(sorted_values);
    vectors = std::move(sorted_vectors);
}

} // namespace

TridiagonalEigensystem solve_uniform_tridiagonal(double a, double t, int n) {
    if (n < 1)
        throw DomainError("solve_uniform_tridiagonal: n must be >= 1");
    Eigen::VectorXd values(n);
    Eigen::MatrixXd vectors(n, n);
    const double scale = std::sqrt(2.0 / (n + 1));
    const double step = std::numbers::pi / (n + 1);
    for (int k = 1; k <= n; ++k) {
        values(k - 1) = a + 2.0 * t * std::cos(k * step);
        for (int p = 1; p <= n; ++p)
            vectors(p - 1, k - 1) = scale * std::sin(p * k * step);
    }
    sort_and_fix_signs(values, vectors);
    return {std::move(values), std::move(vectors)};
}

TridiagonalEigensystem solve_symmetric_tridiagonal(std::span<const double> diag,
                                                   std::span<const double> off) {
    const auto n = static_cast<Eigen::Index>(diag.size());
    if (n < 1)
        throw DomainError("solve_symmetric_tridiagonal: empty matrix");
    if (static_cast<Eigen::Index>(off.size()) != n - 1)
        throw DomainError("solve_symmetric_tridiagonal: off-diagonal must have size n - 1");

    Eigen::VectorXd d(n);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i)
        d(i) = diag[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        e(i) = off[static_cast<std::size_t>(i)];
    Eigen::MatrixXd z = Eigen::MatrixXd::Identity(n, n);

    const double eps = std::numeric_limits<double>::epsilon();
    const int max_sweeps = 60 * static_cast<int>(n) + 60;
    double shift_total = 0.0;
    double tst1 = 0.0;

    for (Eigen::Index l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d(l)) + std::abs(e(l)));
        Eigen::Index m = l;
        while (m < n && std::abs(e(m)) > eps * tst1)
            ++m;
        // e(n-1) == 0, so m < n always holds here.

        if (m > l) {
            int sweeps = 0;
            do {
                if (++sweeps > max_sweeps)
                    throw std::runtime_error("solve_symmetric_tridiagonal: QL iteration did not converge");

                double g = d(l);
                double p = (d(l + 1) - g) / (2.0 * e(l));
                double r = std::hypot(p, 1.0);
                if (p < 0.0)
                    r = -r;
                d(l) = e(l) / (p + r);
                d(l + 1) = e(l) * (p + r);
                const double dl1 = d(l + 1);
                double h = g - d(l);
                for (Eigen::Index i = l + 2; i < n; ++i)
                    d(i) -= h;
                shift_total += h;

                p = d(m);
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = e(l + 1);
                double s = 0.0, s2 = 0.0;
                for (Eigen::Index i = m - 1; i >= l; --i) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e(i);
                    h = c * p;
                    r = std::hypot(p, e(i));
                    e(i + 1) = s * r;
                    s = e(i) / r;
                    c = p / r;
                    p = c * d(i) - s * g;
                    d(i + 1) = h + s * (c * g + s * d(i));
                    for (Eigen::Index k = 0; k < n; ++k) {
                        h = z(k, i + 1);
                        z(k, i + 1) = s * z(k, i) + c * h;
                        z(k, i) = c * z(k, i) - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e(l) / dl1;
                e(l) = s * p;
                d(l) = c * p;
            } while (std::abs(e(l)) > eps * tst1);
        }
        d(l) += shift_total;
        e(l) = 0.0;
    }

    sort_and_fix_signs(d, z);
    return {std::move(d), std::move(z)};
}

} // namespace rotorchain

#include "rotorchain/entanglement.hpp"

#include "rotorchain/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rotorchain {

namespace {

Eigen::Index product(std::span<const int> dims) {
    return std::accumulate(dims.begin(), dims.end(), Eigen::Index{1},
                           [](Eigen::Index acc, int d) { return acc * d; });
}

void check_site(int n, int p, const char* what) {
    if (p < 1 || p > n)
        throw DomainError(std::string(what) + ": site " + std::to_string(p) + " outside 1.." + std::to_string(n));
}

} // namespace

DensityMatrix::DensityMatrix(std::vector<int> dims, Eigen::MatrixXcd matrix)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
    if (dims_.empty() || std::any_of(dims_.begin(), dims_.end(), [](int d) { return d < 1; }))
        throw DomainError("DensityMatrix: subsystem dimensions must be positive");
    const Eigen::Index total = product(dims_);
    if (matrix_.rows() != total || matrix_.cols() != total)
        throw DomainError("DensityMatrix: matrix is " + std::to_string(matrix_.rows()) + "x" +
                          std::to_string(matrix_.cols()) + ", dims imply " + std::to_string(total));
}

DensityMatrix::Diagnostics DensityMatrix::diagnostics() const {
    Diagnostics d{};
    d.trace_error = std::abs(matrix_.trace() - Complex(1.0, 0.0));
    d.hermiticity_error = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd herm = 0.5 * (matrix_ + matrix_.adjoint());
    d.min_eigenvalue = hermitian_eigenvalues(herm)(0);
    return d;
}

bool DensityMatrix::is_valid() const {
    const Diagnostics d = diagnostics();
    return d.trace_error <= 1e-10 && d.hermiticity_error <= 1e-12 && d.min_eigenvalue >= -1e-10;
}

Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& rho, std::span<const int> dims, int subsystem) {
    if (subsystem < 0 || subsystem >= static_cast<int>(dims.size()))
        throw DomainError("partial_transpose: subsystem index " + std::to_string(subsystem) + " out of range");
    const Eigen::Index total = product(dims);
    if (rho.rows() != total || rho.cols() != total)
        throw DomainError("partial_transpose: matrix size does not match dims");

    Eigen::Index stride = 1;
    for (std::size_t k = dims.size(); k-- > static_cast<std::size_t>(subsystem) + 1;)
        stride *= dims[k];
    const Eigen::Index d = dims[static_cast<std::size_t>(subsystem)];

    Eigen::MatrixXcd out(total, total);
    for (Eigen::Index c = 0; c < total; ++c) {
        const Eigen::Index dc = (c / stride) % d;
        for (Eigen::Index r = 0; r < total; ++r) {
            const Eigen::Index dr = (r / stride) % d;
            out(r + (dc - dr) * stride, c + (dr - dc) * stride) = rho(r, c);
        }
    }
    return out;
}

Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho, int subsystem) {
    return partial_transpose(rho.matrix(), rho.dims(), subsystem);
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
    if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.real(), Eigen::EigenvaluesOnly);
        return solver.eigenvalues();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double negativity(const DensityMatrix& rho, const Bipartition& split) {
    const int count = static_cast<int>(rho.dims().size());
    std::vector<int> seen(static_cast<std::size_t>(count), 0);
    for (const auto* side : {&split.a, &split.b})
        for (int k : *side) {
            if (k < 0 || k >= count)
                throw DomainError("negativity: subsystem " + std::to_string(k) + " out of range");
            ++seen[static_cast<std::size_t>(k)];
        }
    if (std::any_of(seen.begin(), seen.end(), [](int s) { return s != 1; }))
        throw DomainError("negativity: bipartition must cover every subsystem exactly once");

    Eigen::MatrixXcd pt = rho.matrix();
    for (int k : split.b)
        pt = partial_transpose(pt, rho.dims(), k);
    const Eigen::VectorXd ev = hermitian_eigenvalues(0.5 * (pt + pt.adjoint()));
    double sum = 0.0;
    for (Eigen::Index i = 0; i < ev.size() && ev(i) < -kNegativityCutoff; ++i)
        sum += -ev(i);
    return sum;
}

double log_negativity(const DensityMatrix& rho, const Bipartition& split) {
    return std::log2(2.0 * negativity(rho, split) + 1.0);
}

double log_negativity(const DensityMatrix& rho) {
    if (rho.dims().size() != 2)
        throw DomainError("log_negativity: default bipartition needs exactly two subsystems");
    return log_negativity(rho, Bipartition{{0}, {1}});
}

ManifoldDensity ManifoldDensity::pure(const ManifoldState& state) {
    return ManifoldDensity{state.params, state.amplitudes * state.amplitudes.adjoint()};
}

ManifoldDensity ManifoldDensity::mixture(std::span<const std::pair<double, ManifoldState>> components) {
    if (components.empty())
        throw DomainError("ManifoldDensity::mixture: no components");
    const ModelParams& params = components.front().second.params;
    const int dim = manifold::dimension(params.n_molecules);
    ManifoldDensity rho{params, Eigen::MatrixXcd::Zero(dim, dim)};
    double total = 0.0;
    for (const auto& [w, state] : components) {
        if (w < 0.0)
            throw DomainError("ManifoldDensity::mixture: negative weight");
        if (state.amplitudes.size() != dim)
            throw DomainError("ManifoldDensity::mixture: component size mismatch");
        rho.matrix += w * (state.amplitudes * state.amplitudes.adjoint());
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw DomainError("ManifoldDensity::mixture: weights sum to " + std::to_string(total));
    return rho;
}

ManifoldDensity level_density(const ManifoldSpectrum& spectrum, BlockLabel label, int level) {
    if (label == BlockLabel::HPlus)
        return ManifoldDensity::pure(ManifoldState::eigenstate(spectrum, label, level));
    const std::pair<double, ManifoldState> parts[] = {
        {0.5, ManifoldState::eigenstate(spectrum, BlockLabel::HOneUp, level)},
        {0.5, ManifoldState::eigenstate(spectrum, BlockLabel::HOneDown, level)},
    };
    return ManifoldDensity::mixture(parts);
}

ManifoldDensity lowest_excited_density(const ManifoldSpectrum& spectrum) {
    return level_density(spectrum, spectrum.lowest_excited_block(), 0);
}

DensityMatrix pair_reduced(const ManifoldDensity& rho, int i, int j) {
    const int n = rho.n_molecules();
    check_site(n, i, "pair_reduced");
    check_site(n, j, "pair_reduced");
    if (i >= j)
        throw DomainError("pair_reduced: need i < j, got i=" + std::to_string(i) + " j=" + std::to_string(j));

    // Manifold configurations whose traced-out part is all-ground, with their
    // two-site index 4 * (state of i) + (state of j).
    std::vector<std::pair<int, int>> kept{{0, 0}};
    for (BlockLabel label : kBlockLabels) {
        kept.emplace_back(manifold::index(i, label), 4 * local_state(label));
        kept.emplace_back(manifold::index(j, label), local_state(label));
    }

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kPairDim, kPairDim);
    for (const auto& [a, pa] : kept)
        for (const auto& [b, pb] : kept)
            out(pa, pb) += rho.matrix(a, b);
    // Excitation elsewhere: the pair is left in |g g>.
    for (int q = 1; q <= n; ++q) {
        if (q == i || q == j)
            continue;
        for (BlockLabel label : kBlockLabels) {
            const int idx = manifold::index(q, label);
            out(0, 0) += rho.matrix(idx, idx);
        }
    }
    return DensityMatrix({kSiteDim, kSiteDim}, std::move(out));
}

DensityMatrix one_vs_rest_embedding(const ManifoldDensity& rho, int p) {
    const int n = rho.n_molecules();
    check_site(n, p, "one_vs_rest");
    const int rest_dim = 3 * (n - 1) + 1;
    const int dim = manifold::dimension(n);

    // (site-p state, rest index) for each manifold configuration.
    std::vector<std::pair<int, int>> coords(static_cast<std::size_t>(dim));
    coords[0] = {0, 0};
    for (int q = 1; q <= n; ++q) {
        for (BlockLabel label : kBlockLabels) {
            const int idx = manifold::index(q, label);
            if (q == p) {
                coords[static_cast<std::size_t>(idx)] = {local_state(label), 0};
            } else {
                const int pos = q < p ? q - 1 : q - 2;
                coords[static_cast<std::size_t>(idx)] = {0, 1 + 3 * pos + flavor(label)};
            }
        }
    }

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kSiteDim * rest_dim, kSiteDim * rest_dim);
    for (int a = 0; a < dim; ++a) {
        const auto [la, ra] = coords[static_cast<std::size_t>(a)];
        for (int b = 0; b < dim; ++b) {
            const auto [lb, rb] = coords[static_cast<std::size_t>(b)];
            out(la * rest_dim + ra, lb * rest_dim + rb) = rho.matrix(a, b);
        }
    }
    return DensityMatrix({kSiteDim, rest_dim}, std::move(out));
}

double pairwise_L_sum(const ManifoldDensity& rho, int d) {
    const int n = rho.n_molecules();
    if (d < 1 || d > n - 1)
        throw DomainError("pairwise_L_sum: distance must be in 1..N-1");
    double sum = 0.0;
    for (int i = 1; i + d <= n; ++i)
        sum += log_negativity(pair_reduced(rho, i, i + d));
    return sum;
}

double pairwise_L_mean(const ManifoldDensity& rho, int d) {
    return pairwise_L_sum(rho, d) / (rho.n_molecules() - d);
}

double one_vs_rest_L(const ManifoldDensity& rho, int p) {
    return log_negativity(one_vs_rest_embedding(rho, p), Bipartition{{1}, {0}});
}

double jz_variance(const ManifoldDensity& rho) {
    double mean = 0.0;
    double mean_sq = 0.0;
    for (int p = 1; p <= rho.n_molecules(); ++p) {
        const double up = rho.matrix(manifold::index(p, BlockLabel::HOneUp), manifold::index(p, BlockLabel::HOneUp)).real();
        const double down =
            rho.matrix(manifold::index(p, BlockLabel::HOneDown), manifold::index(p, BlockLabel::HOneDown)).real();
        mean += up - down;
        mean_sq += up + down;
    }
    return mean_sq - mean * mean;
}

} // namespace rotorchain

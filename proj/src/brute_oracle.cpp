#include "rotorchain/brute_oracle.hpp"

#include "rotorchain/errors.hpp"
#include "rotorchain/thermal_ensemble.hpp"

#include <algorithm>
#include <cmath>

namespace rotorchain {

namespace {

Eigen::Index ipow4(int n) { return Eigen::Index{1} << (2 * n); }

/// Local state of 1-based site p in basis index idx.
int digit(Eigen::Index idx, int n, int p) { return static_cast<int>((idx >> (2 * (n - p))) & 3); }

Eigen::Index with_digit(Eigen::Index idx, int n, int p, int value) {
    const int shift = 2 * (n - p);
    return (idx & ~(Eigen::Index{3} << shift)) | (Eigen::Index{value} << shift);
}

void check_size(int n) {
    if (n < 2)
        throw DomainError("brute oracle: N must be >= 2");
    if (n > kMaxOracleSites)
        throw ResourceError("brute oracle: N = " + std::to_string(n) + " exceeds the limit of " +
                            std::to_string(kMaxOracleSites) + " sites (dimension 4^N)");
}

int site_m(int local) { return local == 2 ? 1 : local == 3 ? -1 : 0; }

} // namespace

Eigen::MatrixXcd full_hamiltonian(const ModelParams& params) {
    params.validate(true);
    const int n = params.n_molecules;
    check_size(n);
    const Eigen::Index dim = ipow4(n);
    const SiteBasis bare = SiteBasis::bare();
    const Matrix4c h1 = site_hamiltonian(bare, params);
    const Matrix16c v = pair_dipole_operator(bare, params);

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        for (int p = 1; p <= n; ++p) {
            const int b = digit(col, n, p);
            for (int a = 0; a < kSiteDim; ++a)
                if (h1(a, b) != Complex(0.0))
                    h(with_digit(col, n, p, a), col) += h1(a, b);
        }
        for (int p = 1; p < n; ++p) {
            const int b = 4 * digit(col, n, p) + digit(col, n, p + 1);
            for (int a = 0; a < kPairDim; ++a) {
                if (v(a, b) == Complex(0.0))
                    continue;
                const Eigen::Index row = with_digit(with_digit(col, n, p, a / 4), n, p + 1, a % 4);
                h(row, col) += v(a, b);
            }
        }
    }
    return h;
}

Eigen::VectorXi total_m(int n) {
    check_size(n);
    const Eigen::Index dim = ipow4(n);
    Eigen::VectorXi m(dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        int sum = 0;
        for (int p = 1; p <= n; ++p)
            sum += site_m(digit(idx, n, p));
        m(idx) = sum;
    }
    return m;
}

std::vector<Eigen::Index> m_sector(int n, int m) {
    const Eigen::VectorXi all = total_m(n);
    std::vector<Eigen::Index> out;
    for (Eigen::Index i = 0; i < all.size(); ++i)
        if (all(i) == m)
            out.push_back(i);
    return out;
}

DenseEigensystem dense_eigensolve(const Eigen::MatrixXcd& h) {
    if (h.rows() != h.cols())
        throw DomainError("dense_eigensolve: matrix must be square");
    if (h.rows() > kMaxDenseDimension)
        throw ResourceError("dense_eigensolve: dimension " + std::to_string(h.rows()) + " exceeds " +
                            std::to_string(kMaxDenseDimension));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("dense_eigensolve: eigensolver failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXcd embed_state(const ManifoldState& state) {
    const int n = state.params.n_molecules;
    check_size(n);
    const Eigen::Matrix4d r = SiteBasis::dressed(state.params.e_z, state.params).rotation();

    auto product = [&](int excited_site, int local) {
        Eigen::VectorXd vec = Eigen::VectorXd::Ones(1);
        for (int p = 1; p <= n; ++p) {
            const Eigen::Vector4d site = r.row(p == excited_site ? local : 0).transpose();
            Eigen::VectorXd next(vec.size() * 4);
            for (Eigen::Index i = 0; i < vec.size(); ++i)
                next.segment<4>(4 * i) = vec(i) * site;
            vec = std::move(next);
        }
        return vec;
    };

    Eigen::VectorXcd out = state.ground_amplitude() * product(0, 0).cast<Complex>();
    for (int p = 1; p <= n; ++p)
        for (BlockLabel label : kBlockLabels) {
            const Complex c = state.amplitudes(manifold::index(p, label));
            if (c != Complex(0.0))
                out += c * product(p, local_state(label)).cast<Complex>();
        }
    return out;
}

Eigen::MatrixXcd embed_density(const ManifoldDensity& rho) {
    const int n = rho.params.n_molecules;
    const int dim = manifold::dimension(n);
    Eigen::MatrixXcd basis(ipow4(n), dim);
    for (int k = 0; k < dim; ++k) {
        ManifoldState e{rho.params, Eigen::VectorXcd::Zero(dim)};
        e.amplitudes(k) = 1.0;
        basis.col(k) = embed_state(e);
    }
    return basis * rho.matrix * basis.adjoint();
}

DensityMatrix full_reduced(const Eigen::MatrixXcd& rho, int n, std::span<const int> keep) {
    check_size(n);
    const Eigen::Index dim = ipow4(n);
    if (rho.rows() != dim || rho.cols() != dim)
        throw DomainError("full_reduced: matrix is not 4^N square");
    if (keep.empty() || !std::is_sorted(keep.begin(), keep.end()) ||
        std::adjacent_find(keep.begin(), keep.end()) != keep.end() || keep.front() < 1 || keep.back() > n)
        throw DomainError("full_reduced: kept sites must be distinct, ascending and within 1..N");

    std::vector<int> traced;
    for (int p = 1; p <= n; ++p)
        if (!std::binary_search(keep.begin(), keep.end(), p))
            traced.push_back(p);

    auto kept_index = [&](Eigen::Index idx) {
        Eigen::Index k = 0;
        for (int p : keep)
            k = 4 * k + digit(idx, n, p);
        return k;
    };
    auto traced_index = [&](Eigen::Index idx) {
        Eigen::Index k = 0;
        for (int p : traced)
            k = 4 * k + digit(idx, n, p);
        return k;
    };

    const Eigen::Index out_dim = ipow4(static_cast<int>(keep.size()));
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim, out_dim);
    std::vector<Eigen::Index> ki(static_cast<std::size_t>(dim)), ti(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) {
        ki[static_cast<std::size_t>(i)] = kept_index(i);
        ti[static_cast<std::size_t>(i)] = traced_index(i);
    }
    for (Eigen::Index c = 0; c < dim; ++c)
        for (Eigen::Index r = 0; r < dim; ++r)
            if (ti[static_cast<std::size_t>(r)] == ti[static_cast<std::size_t>(c)])
                out(ki[static_cast<std::size_t>(r)], ki[static_cast<std::size_t>(c)]) += rho(r, c);
    return DensityMatrix(std::vector<int>(keep.size(), kSiteDim), std::move(out));
}

double full_pair_log_negativity(const Eigen::MatrixXcd& rho, int n, int i, int j) {
    const int keep[] = {i, j};
    return log_negativity(full_reduced(rho, n, keep));
}

double full_one_vs_rest_log_negativity(const Eigen::MatrixXcd& rho, int n, int p) {
    check_size(n);
    if (p < 1 || p > n)
        throw DomainError("full_one_vs_rest_log_negativity: site out of range");
    const DensityMatrix full(std::vector<int>(static_cast<std::size_t>(n), kSiteDim), rho);
    Bipartition split;
    for (int q = 1; q <= n; ++q)
        (q == p ? split.b : split.a).push_back(q - 1);
    return log_negativity(full, split);
}

bool ValidationReport::eigenvalues_ok() const {
    return max_eigenvalue_deviation <= tolerances.eigenvalue_coefficient * params.v_dip * params.v_dip;
}

nlohmann::ordered_json ValidationReport::to_json() const {
    nlohmann::ordered_json j;
    j["n_molecules"] = params.n_molecules;
    j["v_dip"] = params.v_dip;
    j["e_z"] = params.e_z;
    j["max_eigenvalue_deviation"] = max_eigenvalue_deviation;
    j["eigenvalue_bound"] = tolerances.eigenvalue_coefficient * params.v_dip * params.v_dip;
    j["jz_commutator"] = jz_commutator;
    j["m_sector_splitting"] = m_sector_splitting;
    j["max_ground_l_prime"] = max_ground_l_prime;
    j["ground_l_prime_bound"] = tolerances.ground_l_prime;
    j["max_representation_deviation"] = max_representation_deviation;
    j["representation_bound"] = tolerances.representation;
    j["max_matched_state_deviation"] = max_matched_state_deviation;
    j["eigenvalues_ok"] = eigenvalues_ok();
    j["ground_ok"] = ground_ok();
    j["representation_ok"] = representation_ok();
    j["passed"] = passed();
    return j;
}

ValidationReport validate_manifold(const ModelParams& params, const ValidationTolerances& tolerances) {
    params.validate(true);
    const int n = params.n_molecules;
    if (n > 5)
        throw ResourceError("validate_manifold: N = " + std::to_string(n) + " exceeds the limit of 5 sites");

    ValidationReport report;
    report.params = params;
    report.tolerances = tolerances;

    const Eigen::MatrixXcd h = full_hamiltonian(params);
    const Eigen::VectorXi m = total_m(n);
    for (Eigen::Index c = 0; c < h.cols(); ++c)
        for (Eigen::Index r = 0; r < h.rows(); ++r)
            report.jz_commutator = std::max(report.jz_commutator, std::abs(double(m(r) - m(c)) * h(r, c)));

    // Diagonalize the m = 0, +1, -1 sectors of the full Hamiltonian.
    auto sector_solve = [&](int sector_m) {
        const auto idx = m_sector(n, sector_m);
        const auto k = static_cast<Eigen::Index>(idx.size());
        Eigen::MatrixXcd sub(k, k);
        for (Eigen::Index a = 0; a < k; ++a)
            for (Eigen::Index b = 0; b < k; ++b)
                sub(a, b) = h(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
        DenseEigensystem sys = dense_eigensolve(sub);
        Eigen::MatrixXcd full_vectors = Eigen::MatrixXcd::Zero(h.rows(), k);
        for (Eigen::Index a = 0; a < k; ++a)
            full_vectors.row(idx[static_cast<std::size_t>(a)]) = sys.vectors.row(a);
        return DenseEigensystem{std::move(sys.values), std::move(full_vectors)};
    };
    const DenseEigensystem s0 = sector_solve(0);
    const DenseEigensystem sp = sector_solve(1);
    const DenseEigensystem sm = sector_solve(-1);
    report.m_sector_splitting = (sp.values - sm.values).cwiseAbs().maxCoeff();

    const ManifoldSpectrum spectrum = solve_manifold(params);
    // m = 0: ground + HPlus; m = +1 / -1: the H1 blocks.
    std::vector<double> manifold_m0{spectrum.ground_energy};
    for (Eigen::Index k = 0; k < n; ++k)
        manifold_m0.push_back(spectrum.subspace(BlockLabel::HPlus).eigenvalues(k));
    std::sort(manifold_m0.begin(), manifold_m0.end());
    for (std::size_t k = 0; k < manifold_m0.size(); ++k)
        report.max_eigenvalue_deviation =
            std::max(report.max_eigenvalue_deviation, std::abs(manifold_m0[k] - s0.values(static_cast<Eigen::Index>(k))));
    for (Eigen::Index k = 0; k < n; ++k) {
        report.max_eigenvalue_deviation = std::max(
            report.max_eigenvalue_deviation, std::abs(spectrum.subspace(BlockLabel::HOneUp).eigenvalues(k) - sp.values(k)));
        report.max_eigenvalue_deviation = std::max(
            report.max_eigenvalue_deviation, std::abs(spectrum.subspace(BlockLabel::HOneDown).eigenvalues(k) - sm.values(k)));
    }

    auto all_measures = [&](const Eigen::MatrixXcd& rho_full) {
        std::vector<double> out;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                out.push_back(full_pair_log_negativity(rho_full, n, i, j));
        for (int p = 1; p <= n; ++p)
            out.push_back(full_one_vs_rest_log_negativity(rho_full, n, p));
        return out;
    };
    auto manifold_measures = [&](const ManifoldDensity& rho) {
        std::vector<double> out;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                out.push_back(log_negativity(pair_reduced(rho, i, j)));
        for (int p = 1; p <= n; ++p)
            out.push_back(one_vs_rest_L(rho, p));
        return out;
    };
    auto max_diff = [](const std::vector<double>& a, const std::vector<double>& b) {
        double d = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            d = std::max(d, std::abs(a[i] - b[i]));
        return d;
    };

    // Full ground eigenvector: first-order ground state is a product state.
    {
        const Eigen::VectorXcd g = s0.vectors.col(0);
        const Eigen::MatrixXcd rho = g * g.adjoint();
        for (int p = 1; p <= n; ++p)
            report.max_ground_l_prime = std::max(report.max_ground_l_prime, full_one_vs_rest_log_negativity(rho, n, p));
    }

    std::vector<ManifoldDensity> states{ManifoldDensity::pure(ManifoldState::ground(params))};
    for (int k = 0; k < n; ++k) {
        states.push_back(level_density(spectrum, BlockLabel::HPlus, k));
        states.push_back(level_density(spectrum, BlockLabel::HOneUp, k));
    }
    states.push_back(thermal_state({1.0, params}).density);
    for (const auto& rho : states)
        report.max_representation_deviation =
            std::max(report.max_representation_deviation, max_diff(manifold_measures(rho), all_measures(embed_density(rho))));

    // Matched eigenstates; skipped without coupling, where levels are degenerate.
    if (params.v_dip > 0.0) {
        for (int k = 0; k < n; ++k) {
            const Eigen::VectorXcd plus = s0.vectors.col(k + 1);
            const auto full_plus = all_measures(plus * plus.adjoint());
            report.max_matched_state_deviation = std::max(
                report.max_matched_state_deviation,
                max_diff(manifold_measures(level_density(spectrum, BlockLabel::HPlus, k)), full_plus));
            const Eigen::VectorXcd up = sp.vectors.col(k);
            const Eigen::VectorXcd down = sm.vectors.col(k);
            const auto full_one = all_measures(0.5 * (up * up.adjoint() + down * down.adjoint()));
            report.max_matched_state_deviation = std::max(
                report.max_matched_state_deviation,
                max_diff(manifold_measures(level_density(spectrum, BlockLabel::HOneUp, k)), full_one));
        }
    }
    return report;
}

} // namespace rotorchain

#include "rotorchain/manifold_hamiltonian.hpp"

#include "rotorchain/errors.hpp"
#include "rotorchain/parallel.hpp"
#include "rotorchain/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rotorchain {

std::string_view to_string(BlockLabel label) {
    switch (label) {
    case BlockLabel::HPlus:
        return "HPlus";
    case BlockLabel::HOneUp:
        return "HOneUp";
    case BlockLabel::HOneDown:
        return "HOneDown";
    }
    return "?";
}

Eigen::MatrixXd TridiagonalBlock::dense() const {
    const auto n = static_cast<Eigen::Index>(diagonal.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        m(i, i) = diagonal[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        m(i, i + 1) = m(i + 1, i) = off_diagonal[static_cast<std::size_t>(i)];
    return m;
}

ManifoldCouplings manifold_couplings(const ModelParams& params) {
    const SiteBasis basis = SiteBasis::dressed(params.e_z, params);
    const Matrix4c h = site_hamiltonian(basis, params);
    const Matrix16c v = pair_dipole_operator(basis, params);

    ManifoldCouplings c{};
    for (int a = 0; a < kSiteDim; ++a) {
        c.site_energy[static_cast<std::size_t>(a)] = h(a, a).real();
        for (int b = 0; b < kSiteDim; ++b)
            c.bond[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = v(4 * a + b, 4 * a + b).real();
    }
    for (BlockLabel label : kBlockLabels) {
        const int f = local_state(label);
        // <g f| V |f g>: excitation moves from the left site to the right one.
        c.hop[static_cast<std::size_t>(flavor(label))] = v(4 * 0 + f, 4 * f + 0).real();
    }
    return c;
}

BlockHamiltonian build_block_hamiltonian(const ModelParams& params) {
    params.validate(true);
    const int n = params.n_molecules;
    const ManifoldCouplings c = manifold_couplings(params);
    const double e_g = c.site_energy[0];
    const double bond_gg = c.bond[0][0];

    BlockHamiltonian h;
    h.params = params;
    h.ground_energy = n * e_g + (n - 1) * bond_gg;

    for (BlockLabel label : kBlockLabels) {
        const auto f = static_cast<std::size_t>(local_state(label));
        TridiagonalBlock& block = h.blocks[static_cast<std::size_t>(label)];
        block.diagonal.resize(static_cast<std::size_t>(n));
        block.off_diagonal.assign(static_cast<std::size_t>(n - 1),
                                  c.hop[static_cast<std::size_t>(flavor(label))]);
        for (int p = 1; p <= n; ++p) {
            double diag = (n - 1) * e_g + c.site_energy[f];
            // Bonds touching p see the excited site; all others stay ground-ground.
            int touching = 0;
            if (p > 1) {
                diag += c.bond[0][f];
                ++touching;
            }
            if (p < n) {
                diag += c.bond[f][0];
                ++touching;
            }
            diag += (n - 1 - touching) * bond_gg;
            block.diagonal[static_cast<std::size_t>(p - 1)] = diag;
        }
    }
    return h;
}

SubspaceSpectrum solve_block(const BlockHamiltonian& h, BlockLabel label) {
    const TridiagonalBlock& b = h.block(label);
    TridiagonalEigensystem sys = solve_symmetric_tridiagonal(b.diagonal, b.off_diagonal);
    return {label, std::move(sys.values), std::move(sys.vectors)};
}

double ManifoldSpectrum::lowest_gap_difference() const {
    return lowest(BlockLabel::HPlus) - lowest(BlockLabel::HOneUp);
}

BlockLabel ManifoldSpectrum::lowest_excited_block() const {
    return lowest_gap_difference() <= 0.0 ? BlockLabel::HPlus : BlockLabel::HOneUp;
}

std::vector<ManifoldSpectrum::Level> ManifoldSpectrum::sorted_levels() const {
    std::vector<Level> levels;
    levels.push_back({ground_energy, -1, 0});
    for (const auto& s : subspaces)
        for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k)
            levels.push_back({s.eigenvalues(k), static_cast<int>(s.label), static_cast<int>(k)});
    std::stable_sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) {
        if (a.energy != b.energy)
            return a.energy < b.energy;
        return a.block < b.block;
    });
    return levels;
}

ManifoldSpectrum solve_manifold(const ModelParams& params) {
    const BlockHamiltonian h = build_block_hamiltonian(params);
    ManifoldSpectrum s;
    s.params = params;
    s.ground_energy = h.ground_energy;
    s.subspaces[0] = solve_block(h, BlockLabel::HPlus);
    s.subspaces[1] = solve_block(h, BlockLabel::HOneUp);
    // The m = -1 block is the same matrix; solving it separately keeps the
    // two degenerate partners unmixed.
    s.subspaces[2] = solve_block(h, BlockLabel::HOneDown);
    return s;
}

ManifoldState ManifoldState::ground(const ModelParams& params) {
    ManifoldState s{params, Eigen::VectorXcd::Zero(manifold::dimension(params.n_molecules))};
    s.amplitudes(0) = 1.0;
    return s;
}

ManifoldState ManifoldState::single_excitation(const ModelParams& params, BlockLabel label,
                                               const Eigen::VectorXcd& site_amplitudes) {
    const int n = params.n_molecules;
    if (site_amplitudes.size() != n)
        throw DomainError("single_excitation: expected " + std::to_string(n) + " site amplitudes");
    ManifoldState s{params, Eigen::VectorXcd::Zero(manifold::dimension(n))};
    for (int p = 1; p <= n; ++p)
        s.amplitudes(manifold::index(p, label)) = site_amplitudes(p - 1);
    return s;
}

ManifoldState ManifoldState::eigenstate(const ManifoldSpectrum& spectrum, BlockLabel label, int level) {
    const auto& sub = spectrum.subspace(label);
    if (level < 0 || level >= sub.eigenvectors.cols())
        throw DomainError("eigenstate: level index out of range");
    return single_excitation(spectrum.params, label, sub.eigenvectors.col(level).cast<Complex>());
}

Eigen::VectorXcd ManifoldState::excitation_amplitudes(BlockLabel label) const {
    const int n = params.n_molecules;
    Eigen::VectorXcd c(n);
    for (int p = 1; p <= n; ++p)
        c(p - 1) = amplitudes(manifold::index(p, label));
    return c;
}

std::vector<ManifoldSpectrum> spectra_on_grid(const ModelParams& params, std::span<const double> e_z_grid) {
    std::vector<ManifoldSpectrum> out(e_z_grid.size());
    parallel_for(e_z_grid.size(), [&](std::size_t i) { out[i] = solve_manifold(params.with_field(e_z_grid[i])); });
    return out;
}

ScanResult spectrum_vs_field(const ModelParams& params, std::span<const double> e_z_grid) {
    if (e_z_grid.empty())
        throw DomainError("spectrum_vs_field: empty grid");
    if (!std::is_sorted(e_z_grid.begin(), e_z_grid.end()))
        throw DomainError("spectrum_vs_field: grid must be ascending");
    const auto spectra = spectra_on_grid(params, e_z_grid);

    ScanResult table({"e_z", "subspace", "level_index", "degeneracy", "energy"});
    for (std::size_t i = 0; i < spectra.size(); ++i) {
        const auto& s = spectra[i];
        const double ez = e_z_grid[i];
        table.add_row({ez, std::string("ground"), std::int64_t{0}, std::int64_t{1}, s.ground_energy});
        const auto& plus = s.subspace(BlockLabel::HPlus).eigenvalues;
        for (Eigen::Index k = 0; k < plus.size(); ++k)
            table.add_row({ez, std::string("HPlus"), std::int64_t{k}, std::int64_t{1}, plus(k)});
        const auto& one = s.subspace(BlockLabel::HOneUp).eigenvalues;
        for (Eigen::Index k = 0; k < one.size(); ++k)
            table.add_row({ez, std::string("HOne"), std::int64_t{k}, std::int64_t{2}, one(k)});
    }
    return table;
}

double find_crossing(const ModelParams& params, double e_z_lo, double e_z_hi, double tol) {
    if (!(e_z_lo >= 0.0) || !(e_z_hi > e_z_lo))
        throw DomainError("find_crossing: need 0 <= lo < hi");
    auto gap = [&](double ez) { return solve_manifold(params.with_field(ez)).lowest_gap_difference(); };
    double f_lo = gap(e_z_lo);
    const double f_hi = gap(e_z_hi);
    if (f_lo == 0.0)
        return e_z_lo;
    if (f_hi == 0.0)
        return e_z_hi;
    if ((f_lo > 0.0) == (f_hi > 0.0))
        throw NoCrossingError("no crossing in range [" + format_double(e_z_lo) + ", " + format_double(e_z_hi) +
                              "]: lowest HPlus - lowest HOne keeps its sign");

    double lo = e_z_lo, hi = e_z_hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = gap(mid);
        if (std::abs(f_mid) <= tol || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
            return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<LevelCrossing> crossing_map(const ModelParams& params, std::span<const double> e_z_grid) {
    const auto spectra = spectra_on_grid(params, e_z_grid);
    const int n = params.n_molecules;
    std::vector<LevelCrossing> out;
    for (std::size_t g = 0; g + 1 < spectra.size(); ++g) {
        const auto& a = spectra[g];
        const auto& b = spectra[g + 1];
        for (int k = 0; k < n; ++k) {
            for (int l = 0; l < n; ++l) {
                const double da = a.subspace(BlockLabel::HPlus).eigenvalues(k) - a.subspace(BlockLabel::HOneUp).eigenvalues(l);
                const double db = b.subspace(BlockLabel::HPlus).eigenvalues(k) - b.subspace(BlockLabel::HOneUp).eigenvalues(l);
                if ((da > 0.0) == (db > 0.0))
                    continue;
                // Linear interpolation between grid points; use find_crossing for the lowest pair.
                const double w = da / (da - db);
                out.push_back({k, l, e_z_grid[g] + w * (e_z_grid[g + 1] - e_z_grid[g])});
            }
        }
    }
    return out;
}

} // namespace rotorchain

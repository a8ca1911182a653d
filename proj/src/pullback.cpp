#include "weldlab/pullback.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "weldlab/fft.hpp"

namespace weldlab {

namespace {

using Eigen::Index;

// Complex 2K x 2K matrix of the pullback on coordinates (a, b) in the basis
// {e_n, f_n}: a' = M a + N b, b' = conj(N) a + conj(M) b.
Eigen::MatrixXcd complex_operator(const OperatorBlocks& blocks) {
    const Index k = static_cast<Index>(blocks.dim);
    Eigen::MatrixXcd pi(2 * k, 2 * k);
    const Eigen::MatrixXcd m = blocks.M_square();
    const Eigen::MatrixXcd n = blocks.N_square();
    pi.topLeftCorner(k, k) = m;
    pi.topRightCorner(k, k) = n;
    pi.bottomLeftCorner(k, k) = n.conjugate();
    pi.bottomRightCorner(k, k) = m.conjugate();
    return pi;
}

// Unitary change of basis from real coordinates (x^c, x^s) to (a, b):
// a = (x^c - i x^s)/sqrt(2), b = conj(a).
Eigen::MatrixXcd basis_unitary(Index k) {
    const std::complex<double> i(0.0, 1.0);
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * k, 2 * k);
    u.topLeftCorner(k, k) = r * Eigen::MatrixXcd::Identity(k, k);
    u.topRightCorner(k, k) = -i * r * Eigen::MatrixXcd::Identity(k, k);
    u.bottomLeftCorner(k, k) = r * Eigen::MatrixXcd::Identity(k, k);
    u.bottomRightCorner(k, k) = i * r * Eigen::MatrixXcd::Identity(k, k);
    return u;
}

} // namespace

OperatorBlocks compute_blocks(const CircleMap& map, std::size_t dim, std::size_t quadrature,
                              std::size_t tail) {
    if (dim == 0) throw std::invalid_argument("compute_blocks: dim must be >= 1");
    if (tail == 0) tail = 4 * dim;
    if (tail < dim) throw std::invalid_argument("compute_blocks: tail < dim");
    if (quadrature < 8 * dim || quadrature < 4 * tail)
        throw std::invalid_argument("compute_blocks: quadrature grid too small");

    const std::size_t g = quadrature;
    std::vector<std::complex<double>> unit(g), power(g, {1.0, 0.0});
    for (std::size_t j = 0; j < g; ++j) {
        const double alpha = map(two_pi * static_cast<double>(j) / static_cast<double>(g));
        unit[j] = {std::cos(alpha), std::sin(alpha)};
    }

    OperatorBlocks out;
    out.dim = dim;
    out.tail = tail;
    out.quadrature = g;
    out.M.resize(static_cast<Index>(dim), static_cast<Index>(tail));
    out.N.resize(static_cast<Index>(dim), static_cast<Index>(tail));

    const double inv_g = 1.0 / static_cast<double>(g);
    std::vector<std::complex<double>> spec(g);
    for (std::size_t n = 1; n <= tail; ++n) {
        for (std::size_t j = 0; j < g; ++j) power[j] *= unit[j];
        spec = power;
        dft(spec, -1);
        // One transform serves both blocks: phi^{-n} = conj(phi^n) on |z|=1,
        // so its m-th coefficient is conj(spec[g-m]).
        for (std::size_t m = 1; m <= dim; ++m) {
            const double scale =
                std::sqrt(static_cast<double>(m) / static_cast<double>(n)) * inv_g;
            out.M(static_cast<Index>(m - 1), static_cast<Index>(n - 1)) = scale * spec[m];
            out.N(static_cast<Index>(m - 1), static_cast<Index>(n - 1)) =
                scale * std::conj(spec[g - m]);
        }
    }
    return out;
}

std::pair<double, double> symplectic_defect(const OperatorBlocks& blocks) {
    const Index k = static_cast<Index>(blocks.dim);
    const Eigen::MatrixXcd d1 = blocks.M * blocks.M.adjoint() - blocks.N * blocks.N.adjoint() -
                                Eigen::MatrixXcd::Identity(k, k);
    const Eigen::MatrixXcd d2 =
        blocks.M * blocks.N.transpose() - blocks.N * blocks.M.transpose();
    return {d1.norm(), d2.norm()};
}

double hs_norm_N(const OperatorBlocks& blocks) { return blocks.N_square().norm(); }

double cov_defect(const OperatorBlocks& blocks) {
    // |Pi Pi* - I|_F from the Hermitian block form: the 11 block is
    // MM* + NN* - I, the 12 block MN^t + NM^t; the lower blocks are their
    // conjugates, so the squared norm doubles.
    const Index k = static_cast<Index>(blocks.dim);
    const Eigen::MatrixXcd b11 = blocks.M * blocks.M.adjoint() + blocks.N * blocks.N.adjoint() -
                                 Eigen::MatrixXcd::Identity(k, k);
    const Eigen::MatrixXcd b12 =
        blocks.M * blocks.N.transpose() + blocks.N * blocks.M.transpose();
    return std::sqrt(2.0 * b11.squaredNorm() + 2.0 * b12.squaredNorm());
}

double cov_defect_factored(const OperatorBlocks& blocks) {
    const Eigen::MatrixXcd p11 = blocks.N * blocks.N.adjoint();
    const Eigen::MatrixXcd p12 = blocks.M * blocks.N.transpose();
    return 2.0 * std::sqrt(2.0 * p11.squaredNorm() + 2.0 * p12.squaredNorm());
}

FourierField apply(const OperatorBlocks& blocks, const FourierField& field) {
    if (field.order > blocks.dim)
        throw std::invalid_argument("apply: field order exceeds block dimension");
    const Index k = static_cast<Index>(blocks.dim);
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(k);
    for (std::size_t n = 1; n <= field.order; ++n)
        a(static_cast<Index>(n - 1)) = std::sqrt(static_cast<double>(n)) * field.coeffs[n - 1];
    const Eigen::VectorXcd ap =
        blocks.M_square() * a + blocks.N_square() * a.conjugate();
    FourierField out(blocks.dim);
    for (std::size_t m = 1; m <= blocks.dim; ++m)
        out.coeffs[m - 1] = ap(static_cast<Index>(m - 1)) / std::sqrt(static_cast<double>(m));
    return out;
}

double mean_of_pullback(const CircleMap& map, const FourierField& field,
                        std::size_t quadrature) {
    double s = 0.0;
    for (std::size_t j = 0; j < quadrature; ++j)
        s += field.evaluate_at(map(two_pi * static_cast<double>(j) / static_cast<double>(quadrature)));
    return s / static_cast<double>(quadrature);
}

Eigen::VectorXd real_coords(const FourierField& field, std::size_t dim) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(2 * static_cast<Index>(dim));
    const double r2 = std::sqrt(2.0);
    const std::size_t top = std::min(dim, field.order);
    for (std::size_t n = 1; n <= top; ++n) {
        const double rn = std::sqrt(static_cast<double>(n));
        x(static_cast<Index>(n - 1)) = r2 * rn * field.coeffs[n - 1].real();
        x(static_cast<Index>(dim + n - 1)) = -r2 * rn * field.coeffs[n - 1].imag();
    }
    return x;
}

Eigen::MatrixXd real_operator(const OperatorBlocks& blocks) {
    const Index k = static_cast<Index>(blocks.dim);
    const Eigen::MatrixXcd u = basis_unitary(k);
    const Eigen::MatrixXcd a = u.adjoint() * complex_operator(blocks) * u;
    return a.real();  // imaginary part vanishes identically
}

DensityModel build_density(const OperatorBlocks& blocks, const FourierField& shift) {
    if (shift.order > blocks.dim)
        throw std::invalid_argument("build_density: shift order exceeds block dimension");
    // Marginal covariance of the first dim deformed modes, with the block
    // products summed over all tail columns. The square compression A A^T
    // would be near-singular when the map shifts frequencies past dim; the
    // marginal keeps the contribution of the discarded high input modes and
    // stays well conditioned.
    const Index k = static_cast<Index>(blocks.dim);
    const Eigen::MatrixXcd p11 = blocks.M * blocks.M.adjoint() + blocks.N * blocks.N.adjoint();
    const Eigen::MatrixXcd p12 =
        blocks.M * blocks.N.transpose() + blocks.N * blocks.M.transpose();
    Eigen::MatrixXcd p(2 * k, 2 * k);
    p.topLeftCorner(k, k) = p11;
    p.topRightCorner(k, k) = p12;
    p.bottomLeftCorner(k, k) = p12.conjugate();
    p.bottomRightCorner(k, k) = p11.conjugate();
    const Eigen::MatrixXcd u = basis_unitary(k);
    Eigen::MatrixXd s = (u.adjoint() * p * u).real() -
                        Eigen::MatrixXd::Identity(2 * k, 2 * k);
    s = 0.5 * (s + s.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("build_density: eigendecomposition failed");
    if (es.eigenvalues().minCoeff() <= -1.0 + 1e-12)
        throw std::runtime_error("build_density: degenerate deformed covariance");
    DensityModel model;
    model.dim = 2 * blocks.dim;
    model.eigvals = es.eigenvalues();
    model.basis = es.eigenvectors();
    model.mean_coords = model.basis.transpose() * real_coords(shift, blocks.dim);
    return model;
}

double DensityModel::expected_rho_squared() const {
    double log_e = 0.0;
    for (Index k = 0; k < eigvals.size(); ++k) {
        const double a = eigvals(k);
        if (std::abs(a) >= 1.0) return std::numeric_limits<double>::infinity();
        const double b = mean_coords(k);
        log_e += -0.5 * std::log1p(-a * a) + b * b / (1.0 - a);
    }
    return std::exp(log_e);
}

double eval_density(const DensityModel& model, const FourierField& field) {
    // Modes of the field beyond the model dimension are ignored; the density
    // depends only on the modeled coordinates.
    const Eigen::VectorXd y = model.basis.transpose() * real_coords(field, model.dim / 2);
    double log_rho = 0.0;
    for (Index k = 0; k < model.eigvals.size(); ++k) {
        const double v = 1.0 + model.eigvals(k);
        const double d = y(k) - model.mean_coords(k);
        log_rho += -0.5 * std::log(v) - d * d / (2.0 * v) + 0.5 * y(k) * y(k);
    }
    return std::exp(log_rho);
}

} // namespace weldlab

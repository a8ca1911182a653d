// Pullback operator of a circle homeomorphism on mean-zero fields: matrix
// blocks, symplectic and Hilbert-Schmidt diagnostics, and truncated Gaussian
// Radon-Nikodym densities.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>

#include "weldlab/circle_map.hpp"
#include "weldlab/spectra.hpp"

namespace weldlab {

// Matrix blocks of the pullback in the basis e_n = e^{in.}/sqrt(n),
// f_n = conj(e_n):
//   M_{mn} = (1/2pi) sqrt(m/n) int phi(e^{i t})^n  e^{-imt} dt
//   N_{mn} = (1/2pi) sqrt(m/n) int phi(e^{i t})^-n e^{-imt} dt
// Rows run m = 1..dim; columns n = 1..tail with tail >= dim. The extra
// columns carry the tail mass needed for accurate defect products; the
// operator itself acts through the leading dim x dim blocks.
struct OperatorBlocks {
    std::size_t dim = 0;
    std::size_t tail = 0;
    std::size_t quadrature = 0;
    Eigen::MatrixXcd M;  // dim x tail
    Eigen::MatrixXcd N;  // dim x tail

    Eigen::MatrixXcd M_square() const { return M.leftCols(static_cast<Eigen::Index>(dim)); }
    Eigen::MatrixXcd N_square() const { return N.leftCols(static_cast<Eigen::Index>(dim)); }
};

// Truncated Gaussian density data: eigenvalues a_k of the deformed marginal
// covariance minus identity (AA^T - I with A the rectangular real block
// representation), mean coordinates b_k of the shift in the eigenbasis, and
// the eigenbasis itself.
struct DensityModel {
    std::size_t dim = 0;  // 2K real coordinates
    Eigen::VectorXd eigvals;
    Eigen::VectorXd mean_coords;
    Eigen::MatrixXd basis;  // columns are eigenvectors

    double expected_rho_squared() const;
};

OperatorBlocks compute_blocks(const CircleMap& map, std::size_t dim, std::size_t quadrature,
                              std::size_t tail = 0);

// (|MM* - NN* - I|_F, |MN^t - NM^t|_F), products summed over all tail columns.
std::pair<double, double> symplectic_defect(const OperatorBlocks& blocks);

double hs_norm_N(const OperatorBlocks& blocks);

// Frobenius norm of AA^T - I in the real 2K-coordinate representation;
// agrees with the block factorization 2|Pi (0, N^t; N*, 0)|_F.
double cov_defect(const OperatorBlocks& blocks);
double cov_defect_factored(const OperatorBlocks& blocks);

FourierField apply(const OperatorBlocks& blocks, const FourierField& field);

double mean_of_pullback(const CircleMap& map, const FourierField& field,
                        std::size_t quadrature = 8192);

// Real coordinates (x^c_1..x^c_K, x^s_1..x^s_K) of a mean-zero field; these
// are i.i.d. standard normal under the log-correlated field law.
Eigen::VectorXd real_coords(const FourierField& field, std::size_t dim);

// Real 2K x 2K matrix of the pullback acting on the standard-normal
// coordinates above.
Eigen::MatrixXd real_operator(const OperatorBlocks& blocks);

DensityModel build_density(const OperatorBlocks& blocks, const FourierField& shift);

double eval_density(const DensityModel& model, const FourierField& field);

} // namespace weldlab

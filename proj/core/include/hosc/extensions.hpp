#pragma once

#include <hosc/grid.hpp>

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <variant>

namespace hosc {

/// cos(theta) f(+-0) = sin(theta) f'(+-0) on one half-line, theta in [0, pi).
struct HalfLine {
    Side side = Side::plus;
    double theta = 0.0;
};

/// Continuous f with sqrt2 cos(theta) f(0) + sin(theta) [f'(-0) - f'(+0)] = 0.
struct BTheta {
    double theta = 0.0;
};

/// Two-sided conditions parametrized by the unitary
/// K = e^{i phi} [[e^{i b1} sin a, e^{-i b2} cos a], [e^{i b2} cos a, -e^{-i b1} sin a]].
struct CK {
    double phi = 0.0;
    double alpha = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
};

using Extension = std::variant<HalfLine, BTheta, CK>;

/// theta in [0, pi) for the theta families, finite CK parameters.
void validate(const Extension& ext);

[[nodiscard]] Eigen::Matrix2cd k_matrix(const CK& ck);

/// Rows (a_j, b_j, c_j, d_j) of the two conditions
/// a_j f(-0) + b_j f'(-0) + c_j f(+0) + d_j f'(+0) = 0 defined by K.
[[nodiscard]] Eigen::Matrix<std::complex<double>, 2, 4> ck_rows(const Eigen::Matrix2cd& k);

/// Norm of the boundary-condition defect divided by max(1, |b|). For HalfLine
/// only that side's traces enter (also in |b|); for BTheta the continuity
/// defect f(+0) - f(-0) is part of the residual.
[[nodiscard]] double boundary_residual(const Extension& ext, const BoundaryData& b);

enum class SpecialCase { classical, delta, delta_prime };

/// classical: K = i antidiag(1, 1), i.e. f and f' continuous.
/// delta(alpha):       K = i e^{ i alpha} [[sin, cos], [cos, -sin]]  (phi = alpha + pi/2)
/// delta_prime(alpha): K = i e^{-i alpha} [[sin, cos], [cos, -sin]]  (phi = pi/2 - alpha)
/// alpha must lie in (0, pi) for the delta cases and is ignored for classical.
[[nodiscard]] CK ck_from_special(SpecialCase c, double alpha = 0.0);

/// Coupling strength c = cot(theta)/sqrt2 of BTheta; theta = 0 is the
/// Dirichlet point c = +inf, carried as a tag.
struct Coupling {
    bool dirichlet = false;
    double c = 0.0;

    static Coupling finite(double c) { return {false, c}; }
    static Coupling dirichlet_point() { return {true, 0.0}; }
};

[[nodiscard]] BTheta btheta_from_coupling(Coupling c);
[[nodiscard]] BTheta btheta_from_coupling(double c);
[[nodiscard]] Coupling coupling_from_btheta(double theta);

/// Hermitian form [x, y] = y^* G x on C^n.
struct IndefiniteForm {
    int dimension = 0;
    Eigen::MatrixXcd gram;

    [[nodiscard]] std::complex<double> operator()(const Eigen::VectorXcd& x,
                                                  const Eigen::VectorXcd& y) const;
    /// dim ker G + min(#positive, #negative eigenvalues).
    [[nodiscard]] int max_neutral_dimension() const;
};

/// Traces (f(+-0), f'(+-0)); the minus form is the negative of the plus form.
[[nodiscard]] IndefiniteForm halfline_form(Side side);
/// Traces (f(0), f'(-0), f'(+0)).
[[nodiscard]] IndefiniteForm btheta_form();
/// Traces (f(-0), f'(-0), f(+0), f'(+0)).
[[nodiscard]] IndefiniteForm ck_form();

struct NeutralityReport {
    bool neutral = false;
    int dimension = 0;           ///< dim of the solution space L
    int expected_dimension = 0;  ///< maximal neutral dimension of the form
    double max_form_value = 0.0; ///< max |[u_i, u_j]| over an orthonormal basis of L
    std::pair<int, int> offending{-1, -1};
    std::string detail;
};

/// Builds the solution space L of the extension's conditions in its trace
/// space and checks that L is neutral and of maximal dimension.
[[nodiscard]] NeutralityReport neutral_subspace_check(const Extension& ext, double tol = 1e-10);
/// Same check for the conditions defined by an arbitrary 2x2 K.
[[nodiscard]] NeutralityReport neutral_subspace_check(const Eigen::Matrix2cd& k, double tol = 1e-10);

/// (theta, plus) <-> (pi - theta, minus) for theta in (0, pi); theta = 0 only
/// changes side. An involution.
[[nodiscard]] std::pair<double, Side> symmetry_map(double theta, Side side);

/// "family=btheta theta=1.25", "family=halfline-plus theta=0",
/// "family=ck phi=.. alpha=.. beta1=.. beta2=..". Values use %.17g.
[[nodiscard]] std::string to_string(const Extension& ext);
/// Inverse of to_string; throws DomainError on unknown families, unknown or
/// missing keys and unparsable numbers.
[[nodiscard]] Extension parse_extension(const std::string& text);

} // namespace hosc

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

// Stokes-vector description of two-component states and of the Hermitian
// analyzer matrix.  The analyzer matrix
//
//     [ a           h e^{-i phi} ]
//     [ h e^{i phi} d            ]
//
// carries its own Stokes set (p0, p1, p2, p3); an incident state carries
// (s0, s1, s2, s3).  Eigenstates of the matrix are exactly the states whose
// Stokes direction is (anti)parallel to the matrix direction, which is what
// eigencondition_residuals measures.
namespace qda {

enum class Branch { plus, minus };

inline constexpr double branch_sign(Branch branch) {
  return branch == Branch::plus ? 1.0 : -1.0;
}

// Two-component state psi = (A_x cos(beta) e^{i alpha_x},
//                            A_y sin(beta) e^{i (alpha_x + delta)}).
// Amplitudes are kept only so round trips can be tested; unit-normalized
// Stokes output is the default everywhere else.
template <class Scalar = double>
struct SpinorParams {
  Scalar amplitude_x{1};
  Scalar amplitude_y{1};
  Scalar beta{0};
  Scalar alpha_x{0};
  Scalar delta{0};

  Eigen::Matrix<std::complex<Scalar>, 2, 1> spinor() const {
    using Complex = std::complex<Scalar>;
    const Complex phase_x = std::polar(Scalar(1), alpha_x);
    const Complex phase_y = std::polar(Scalar(1), alpha_x + delta);
    return {amplitude_x * std::cos(beta) * phase_x,
            amplitude_y * std::sin(beta) * phase_y};
  }
};

template <class Scalar = double>
struct StokesField {
  Eigen::Matrix<Scalar, 4, 1> s{Scalar(1), Scalar(0), Scalar(0), Scalar(0)};

  Scalar s0() const { return s[0]; }
  Scalar s1() const { return s[1]; }
  Scalar s2() const { return s[2]; }
  Scalar s3() const { return s[3]; }
  Eigen::Matrix<Scalar, 3, 1> direction() const { return s.template tail<3>(); }
};

// Parameters of the Hermitian analyzer matrix; h >= 0.
template <class Scalar = double>
struct HermitianParams {
  Scalar a{0};
  Scalar d{0};
  Scalar h{0};
  Scalar phi{0};

  Eigen::Matrix<std::complex<Scalar>, 2, 2> matrix() const {
    using Complex = std::complex<Scalar>;
    Eigen::Matrix<Complex, 2, 2> m;
    m(0, 0) = Complex(a, Scalar(0));
    m(1, 1) = Complex(d, Scalar(0));
    m(0, 1) = std::polar(h, -phi);
    m(1, 0) = std::polar(h, phi);
    return m;
  }
};

template <class Scalar = double>
struct MatrixStokes {
  Eigen::Matrix<Scalar, 4, 1> p{Scalar(0), Scalar(0), Scalar(0), Scalar(0)};
  Scalar two_alpha{0};
  Scalar phi{0};

  Scalar p0() const { return p[0]; }
  Scalar p1() const { return p[1]; }
  Scalar p2() const { return p[2]; }
  Scalar p3() const { return p[3]; }
  Eigen::Matrix<Scalar, 3, 1> direction() const { return p.template tail<3>(); }
};

template <class Scalar = double>
struct EigenPair {
  Scalar lambda_plus{0};
  Scalar lambda_minus{0};
};

// Stokes components of a spinor: s0 = |x|^2 + |y|^2, s1 = |x|^2 - |y|^2,
// s2 + i s3 = 2 conj(x) y.  With normalize the output is scaled to s0 = 1.
template <class Scalar>
StokesField<Scalar> stokes_from_spinor(const SpinorParams<Scalar>& params, bool normalize = true) {
  const auto psi = params.spinor();
  const std::complex<Scalar> cross = std::conj(psi[0]) * psi[1];
  StokesField<Scalar> field;
  field.s[0] = std::norm(psi[0]) + std::norm(psi[1]);
  field.s[1] = std::norm(psi[0]) - std::norm(psi[1]);
  field.s[2] = Scalar(2) * cross.real();
  field.s[3] = Scalar(2) * cross.imag();
  if (normalize) {
    if (field.s[0] == Scalar(0)) {
      throw std::domain_error("stokes_from_spinor: zero-intensity spinor");
    }
    field.s /= field.s[0];
  }
  return field;
}

// Canonical angle representative: 2*beta in [0, pi], so sin(2*beta) >= 0.
// (2*beta, delta) and (-2*beta, delta + pi) describe the same field; the
// representative with sin(2*beta) >= 0 is returned.
template <class Scalar>
SpinorParams<Scalar> spinor_from_stokes(const StokesField<Scalar>& field) {
  const Scalar linear = std::hypot(field.s2(), field.s3());
  SpinorParams<Scalar> params;
  params.amplitude_x = std::sqrt(field.s0());
  params.amplitude_y = params.amplitude_x;
  params.beta = Scalar(0.5) * std::atan2(linear, field.s1());
  params.alpha_x = Scalar(0);
  params.delta = linear == Scalar(0) ? Scalar(0) : std::atan2(field.s3(), field.s2());
  return params;
}

// Stokes set and eigenvalues of the analyzer matrix:
//   p0 = sqrt((a-d)^2 + 4 h^2),  2*alpha = atan2(2h, a-d),
//   p = (p0, p0 cos 2a, p0 sin 2a cos phi, p0 sin 2a sin phi),
//   lambda_{+/-} = ((a+d) +/- p0) / 2.
template <class Scalar>
std::pair<MatrixStokes<Scalar>, EigenPair<Scalar>> matrix_stokes(const HermitianParams<Scalar>& params) {
  if (params.h == Scalar(0) && params.a == params.d) {
    throw std::invalid_argument("matrix_stokes: degenerate matrix (a == d, h == 0)");
  }
  if (params.h < Scalar(0)) {
    throw std::invalid_argument("matrix_stokes: h must be non-negative");
  }
  MatrixStokes<Scalar> m;
  const Scalar diff = params.a - params.d;
  const Scalar p0 = std::hypot(diff, Scalar(2) * params.h);
  m.two_alpha = std::atan2(Scalar(2) * params.h, diff);
  m.phi = params.phi;
  m.p[0] = p0;
  m.p[1] = p0 * std::cos(m.two_alpha);
  m.p[2] = p0 * std::sin(m.two_alpha) * std::cos(params.phi);
  m.p[3] = p0 * std::sin(m.two_alpha) * std::sin(params.phi);
  EigenPair<Scalar> lambda;
  lambda.lambda_plus = (params.a + params.d + p0) / Scalar(2);
  lambda.lambda_minus = (params.a + params.d - p0) / Scalar(2);
  return {m, lambda};
}

// Residuals of the three eigenstate conditions for the given branch:
//   |p.s -/+ p0 s0|,  |s3 p2 - s2 p3|,  |s1 p1 -/+ p1^2 s0 / p0|.
// All three vanish when the field is the branch eigenstate of the matrix.
template <class Scalar>
Eigen::Matrix<Scalar, 3, 1> eigencondition_residuals(const StokesField<Scalar>& field,
                                                     const MatrixStokes<Scalar>& matrix,
                                                     Branch branch) {
  const Scalar sign = static_cast<Scalar>(branch_sign(branch));
  Eigen::Matrix<Scalar, 3, 1> residuals;
  residuals[0] = std::abs(matrix.direction().dot(field.direction()) - sign * matrix.p0() * field.s0());
  residuals[1] = std::abs(field.s3() * matrix.p2() - field.s2() * matrix.p3());
  residuals[2] = std::abs(field.s1() * matrix.p1() -
                          sign * matrix.p1() * matrix.p1() * field.s0() / matrix.p0());
  return residuals;
}

}  // namespace qda

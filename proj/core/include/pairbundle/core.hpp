#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace pb {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDefaultRelTol = 1e-9;

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct SymMat2 {
  cd a{0.0};
  cd b{0.0};
  cd d{0.0};

  SymMat2() = default;
  SymMat2(cd a_, cd b_, cd d_) : a(a_), b(b_), d(d_) {}

  // Averages the off-diagonal entries of a general matrix.
  static SymMat2 from_matrix(const Mat2& m);

  Mat2 matrix() const;
  bool operator==(const SymMat2&) const = default;
};

SymMat2 operator+(const SymMat2& x, const SymMat2& y);
SymMat2 operator-(const SymMat2& x, const SymMat2& y);
SymMat2 operator*(cd s, const SymMat2& x);

struct GroupElement {
  cd c{1.0};
  Mat2 P = Mat2::Identity();

  static GroupElement identity() { return {}; }
};

struct PairAB {
  Mat2 A = Mat2::Zero();
  SymMat2 B;
};

// Throws ValidationError on non-finite entries.
Mat2 make_mat2(cd m00, cd m01, cd m10, cd m11);
void require_finite(const Mat2& m, const char* what);
void require_finite(const SymMat2& m, const char* what);
void validate(const GroupElement& g);
void validate(const PairAB& x);

PairAB apply_action(const GroupElement& g, const PairAB& x);
Mat2 apply_psi1(const GroupElement& g, const Mat2& A);
SymMat2 apply_psi2(const Mat2& P, const SymMat2& B);

double max_norm(const Mat2& m);
double max_norm(const SymMat2& m);
double max_norm(const PairAB& x);
double pair_distance(const PairAB& x, const PairAB& y);

Mat2 cosquare(const Mat2& A);
// det [[A, conj B], [B, conj A]]; the raw value is real up to round-off.
cd det_invariant_raw(const PairAB& x);
double det_invariant(const PairAB& x);

enum class DetSign { Negative = -1, Zero = 0, Positive = 1 };
std::string to_string(DetSign s);
// Zero when the 4x4 matrix has sigma_min / sigma_max <= tol; otherwise the sign of det_invariant.
DetSign det_sign(const PairAB& x, double tol = 1e-9);

// apply_action(g, apply_action(h, x)) == apply_action(group_compose(h, g), x)
GroupElement group_compose(const GroupElement& h, const GroupElement& g);
GroupElement group_inverse(const GroupElement& g);

// max(1, ||x||) as used by every relative tolerance.
double tolerance_scale(const PairAB& x);

}  // namespace pb

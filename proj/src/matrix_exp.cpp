#include <array>
#include <cmath>

#include "modalent/errors.hpp"
#include "modalent/local_ops.hpp"

namespace modalent {

namespace {

// Higham (2005), degree 13
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Matrix matrix_exp(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::invalid_argument, "matrix_exp needs a square matrix");
  if (!a.allFinite()) throw Error(ErrorKind::non_finite, "matrix_exp input");
  const Eigen::Index n = a.rows();
  if (n == 0) return a;

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 == 0.0) return Matrix::Identity(n, n);
  int s = 0;
  if (norm1 > kTheta13) s = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
  const Matrix as = a / std::ldexp(1.0, s);

  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = as * as;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const auto& b = kPade13;

  const Matrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  const Matrix u = as * u_inner;
  const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  if (!r.allFinite()) throw Error(ErrorKind::non_finite, "matrix_exp overflow");
  return r;
}

LocalOperator matrix_exp(const LocalOperator& a) { return LocalOperator(matrix_exp(a.matrix())); }

}  // namespace modalent

#ifndef SQUEEZE_TYPES_HPP
#define SQUEEZE_TYPES_HPP

#include <Eigen/Dense>
#include <complex>

namespace squeeze {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// hard cap on the complex dimension accepted anywhere
inline constexpr int kMaxDim = 8;

/// Hermitian inner product <u,v> = sum_k u_k * conj(v_k); linear in u.
inline cplx hdot(const CVec& u, const CVec& v) { return v.dot(u); }

/// interleaved real view (x1,y1,x2,y2,...) of a complex vector
inline RVec to_real(const CVec& z) {
  RVec r(2 * z.size());
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    r[2 * k] = z[k].real();
    r[2 * k + 1] = z[k].imag();
  }
  return r;
}

inline CVec to_complex(const RVec& r) {
  CVec z(r.size() / 2);
  for (Eigen::Index k = 0; k < z.size(); ++k) z[k] = cplx(r[2 * k], r[2 * k + 1]);
  return z;
}

/// real 2n x 2n representation of a complex linear map, interleaved ordering
inline RMat to_real_matrix(const CMat& M) {
  RMat R(2 * M.rows(), 2 * M.cols());
  for (Eigen::Index j = 0; j < M.rows(); ++j)
    for (Eigen::Index k = 0; k < M.cols(); ++k) {
      const double a = M(j, k).real(), b = M(j, k).imag();
      R(2 * j, 2 * k) = a;
      R(2 * j, 2 * k + 1) = -b;
      R(2 * j + 1, 2 * k) = b;
      R(2 * j + 1, 2 * k + 1) = a;
    }
  return R;
}

/// multiply by the unit phase that makes the first entry with |.| > tol real positive
inline CVec phase_normalized(const CVec& w, double tol = 1e-9) {
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    if (std::abs(w[k]) > tol) {
      CVec out = w * (std::abs(w[k]) / w[k]);
      out[k] = cplx(std::abs(w[k]), 0.0);  // snap the pivot entry exactly
      return out;
    }
  }
  return w;
}

/// lexicographic comparison of (Re,Im)-interleaved coordinates with tolerance;
/// returns +1 if a > b, -1 if a < b, 0 if equal within tol componentwise
inline int lex_compare(const CVec& a, const CVec& b, double tol = 1e-9) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const double dr = a[k].real() - b[k].real();
    if (std::abs(dr) > tol) return dr > 0 ? 1 : -1;
    const double di = a[k].imag() - b[k].imag();
    if (std::abs(di) > tol) return di > 0 ? 1 : -1;
  }
  return 0;
}

}  // namespace squeeze

#endif

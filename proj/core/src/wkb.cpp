#include "diracedge/wkb.hpp"

#include <cmath>

namespace diracedge {

Eigen::Vector2d halfwave_eigenvector(double v) {
  double half = 0.25 * pi - 0.5 * std::atan(v);
  return {std::cos(half), std::sin(half)};
}

Eigen::Vector2d halfwave_eigenvector_deriv(double v) {
  Eigen::Vector2d u = halfwave_eigenvector(v);
  double f = 0.5 / (1.0 + v * v);
  return {u[1] * f, -u[0] * f};
}

namespace {

// Smooth data of one branch at its evaluation point: the phase slope v and
// its derivatives, the transported amplitude and its derivatives, and the raw
// phase pieces.  For the minus branch everything is read at the mirrored
// frequency and the slope is negated afterwards.
struct AmplitudeData {
  double H, rest;
  double v, dxv, dtv;
  complex alpha, dxalpha, dtalpha;
};

AmplitudeData amplitude_data(const PhaseTables& T, int n, double x,
                             double xi) {
  PhaseTables::FieldPoint fp = T.fields(x, xi);
  const ModelCoefficients& mc = T.coefficients();
  double bracket = std::sqrt(1.0 + xi * xi);
  double lam = mc.lambda.value(x);
  double dlam = mc.lambda.deriv(x);
  double muv = mc.mu.value(x);
  double sv = mc.s ? mc.s(x) : 0.0;

  AmplitudeData d;
  d.H = fp.H;
  d.rest = fp.rest;
  d.v = fp.W * bracket;
  d.dxv = fp.dxW * bracket;
  double vb = std::hypot(1.0, d.v);
  // d_t d_x phi = d_x(-lambda <d_x phi>)
  d.dtv = -dlam * vb - lam * d.v * d.dxv / vb;

  double Phi = 2.0 * double(n) * (1.0 + xi * xi) * fp.gamma + fp.Ssrc;
  double dxPhi = 2.0 * double(n) * (1.0 + xi * xi) * fp.dxgamma + fp.dxSsrc;
  complex osc = std::exp(-iu * Phi);
  d.alpha = fp.A0 * osc;
  d.dxalpha = (fp.dxA0 - iu * fp.A0 * dxPhi) * osc;
  // Transport identity: d_t alpha = -nu d_x alpha - (d_x nu / 2) alpha
  //                                 - i (s + 2 n mu v <v>) alpha,
  // with nu = lambda v / <v>; this avoids any time differencing.
  double nuv = lam * d.v / vb;
  double dxnu = dlam * d.v / vb + lam * d.dxv / (vb * vb * vb);
  d.dtalpha = -nuv * d.dxalpha - 0.5 * dxnu * d.alpha -
              iu * (sv + 2.0 * double(n) * muv * d.v * vb) * d.alpha;
  return d;
}

inline Eigen::Vector2cd sigma3(const Eigen::Vector2cd& b) {
  return {b[0], -b[1]};
}
inline Eigen::Vector2cd sigma1(const Eigen::Vector2cd& b) {
  return {b[1], b[0]};
}

// First transport remainder L1 applied to b0 = amp * e(v), where e is the
// polarization vector and ep its derivative in v.
Eigen::Vector2cd first_remainder(const PhaseTables& T, const AmplitudeData& d,
                                 int n, double x, double v, double dxv,
                                 double dtv, const Eigen::Vector2d& e,
                                 const Eigen::Vector2d& ep) {
  const ModelCoefficients& mc = T.coefficients();
  double lam = mc.lambda.value(x);
  double dlam = mc.lambda.deriv(x);
  double muv = mc.mu.value(x);
  double sv = mc.s ? mc.s(x) : 0.0;

  Eigen::Vector2cd b0 = d.alpha * e.cast<complex>();
  Eigen::Vector2cd dtb0 = d.dtalpha * e.cast<complex>() +
                          d.alpha * dtv * ep.cast<complex>();
  Eigen::Vector2cd dxb0 = d.dxalpha * e.cast<complex>() +
                          d.alpha * dxv * ep.cast<complex>();
  Eigen::Vector2cd out = dtb0 / iu + lam * sigma3(dxb0) / iu +
                         (dlam / (2.0 * iu)) * sigma3(b0) +
                         2.0 * double(n) * muv * v *
                             (sigma1(b0) + v * sigma3(b0)) +
                         sv * b0;
  return out;
}

}  // namespace

WkbValue evaluate_wkb(const PhaseTables& tables, int n, Branch branch,
                      double x, double xi) {
  const ModelCoefficients& mc = tables.coefficients();
  double lam = mc.lambda.value(x);
  double bracket = std::sqrt(1.0 + xi * xi);
  WkbValue out;

  if (branch == Branch::plus) {
    AmplitudeData d = amplitude_data(tables, n, x, xi);
    out.phase = d.H * xi - d.rest / bracket;
    Eigen::Vector2d u = halfwave_eigenvector(d.v);
    Eigen::Vector2d up = halfwave_eigenvector_deriv(d.v);
    out.b0 = d.alpha * u.cast<complex>();
    Eigen::Vector2cd L1b0 =
        first_remainder(tables, d, n, x, d.v, d.dxv, d.dtv, u, up);
    // Kernel of the normal operator is spanned by u; the complement carries
    // the eigenvalue -2 lambda <v>, so the corrector lives along
    // q = i sigma_2 u with coefficient +<L1 b0, q> / (2 lambda <v>).
    Eigen::Vector2d q{u[1], -u[0]};
    complex coef = (q[0] * L1b0[0] + q[1] * L1b0[1]) /
                   (2.0 * lam * std::hypot(1.0, d.v));
    out.b1 = coef * q.cast<complex>();
  } else {
    // Counter-propagating branch: phase -phi(t,x,-xi); its amplitude is the
    // mirrored alpha and its polarization is i sigma_2 u evaluated at the
    // mirrored slope.
    AmplitudeData d = amplitude_data(tables, n, x, -xi);
    out.phase = d.H * xi + d.rest / bracket;
    double v = -d.v, dxv = -d.dxv, dtv = -d.dtv;
    Eigen::Vector2d u = halfwave_eigenvector(v);
    Eigen::Vector2d up = halfwave_eigenvector_deriv(v);
    Eigen::Vector2d q{u[1], -u[0]};
    // d q / d v = (u2', -u1') = i sigma_2 u'
    Eigen::Vector2d qp{up[1], -up[0]};
    out.b0 = d.alpha * q.cast<complex>();
    Eigen::Vector2cd L1b0 = first_remainder(tables, d, n, x, v, dxv, dtv, q, qp);
    // Here the normal operator annihilates q and carries +2 lambda <v> on u,
    // so the corrector coefficient flips sign.
    complex coef = -(u[0] * L1b0[0] + u[1] * L1b0[1]) /
                   (2.0 * lam * std::hypot(1.0, v));
    out.b1 = coef * u.cast<complex>();
  }
  return out;
}

}  // namespace diracedge

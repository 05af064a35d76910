#include "triwell/potential.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "triwell/log.hpp"
#include "triwell/units.hpp"

namespace triwell {
namespace {

double sig(double z) { return 1.0 / (1.0 + std::exp(-z)); }
double dsig(double z) {
  const double s = sig(z);
  return s * (1.0 - s);
}

} // namespace

std::vector<std::pair<std::string, double>> PotentialParams::named() const {
  return {{"k1", k1},       {"x_p", x_p},         {"x_r", x_r},
          {"k_tilt", k_tilt}, {"h_b", h_b},       {"x_b", x_b},
          {"s_b", s_b},     {"a_r", a_r},         {"theta_a", theta_a},
          {"w_a", w_a},     {"b_p", b_p},         {"theta_b", theta_b},
          {"w_b", w_b},     {"phi0_deg", phi0_deg}, {"c0", c0}};
}

void PotentialParams::set(const std::string& key, double value) {
  if (key == "k1") k1 = value;
  else if (key == "x_p") x_p = value;
  else if (key == "x_r") x_r = value;
  else if (key == "k_tilt") k_tilt = value;
  else if (key == "h_b") h_b = value;
  else if (key == "x_b") x_b = value;
  else if (key == "s_b") s_b = value;
  else if (key == "a_r") a_r = value;
  else if (key == "theta_a") theta_a = value;
  else if (key == "w_a") w_a = value;
  else if (key == "b_p") b_p = value;
  else if (key == "theta_b") theta_b = value;
  else if (key == "w_b") w_b = value;
  else if (key == "phi0_deg") phi0_deg = value;
  else if (key == "c0") c0 = value;
  else throw std::invalid_argument("unknown surface parameter: " + key);
}

PotentialSurface PotentialSurface::with_params(const PotentialParams& p,
                                               SurfaceVariant v) {
  PotentialSurface s;
  s.p_ = p;
  s.variant_ = v;
  s.calibrated_ = true;
  return s;
}

double PotentialSurface::energy_ev(double theta, double phi) const {
  const double x = std::cos(theta);
  const double dxp = x - p_.x_p, dxr = x - p_.x_r, dxb = x - p_.x_b;
  const double vth = p_.k1 * dxp * dxp * dxr * dxr - p_.k_tilt * x +
                     p_.h_b * std::exp(-dxb * dxb / (2 * p_.s_b * p_.s_b));
  const double sb = sig((p_.theta_b - theta) / p_.w_b);
  const double b = -p_.b_p * sb;
  const double a = p_.a_r * sig((theta - p_.theta_a) / p_.w_a) +
                   4 * std::cos(p_.phi0_deg * units::deg_to_rad) * p_.b_p * sb;
  return p_.c0 + vth + a * (1 - std::cos(phi)) + b * (1 - std::cos(2 * phi));
}

double PotentialSurface::energy(double theta, double phi) const {
  if (!calibrated_)
    throw std::logic_error("surface not calibrated; use a factory or calibrate()");
  return energy_ev(theta, phi) / units::hartree_to_ev;
}

std::array<double, 2> PotentialSurface::grad_ev(double theta, double phi) const {
  const double x = std::cos(theta);
  const double dxp = x - p_.x_p, dxr = x - p_.x_r, dxb = x - p_.x_b;
  const double bump = p_.h_b * std::exp(-dxb * dxb / (2 * p_.s_b * p_.s_b));
  const double dvth_dx = 2 * p_.k1 * dxp * dxr * (dxr + dxp) - p_.k_tilt -
                         bump * dxb / (p_.s_b * p_.s_b);
  const double sb = sig((p_.theta_b - theta) / p_.w_b);
  const double dsb = -dsig((p_.theta_b - theta) / p_.w_b) / p_.w_b;
  const double c0phi = 4 * std::cos(p_.phi0_deg * units::deg_to_rad) * p_.b_p;
  const double a = p_.a_r * sig((theta - p_.theta_a) / p_.w_a) + c0phi * sb;
  const double b = -p_.b_p * sb;
  const double da = p_.a_r * dsig((theta - p_.theta_a) / p_.w_a) / p_.w_a +
                    c0phi * dsb;
  const double db = -p_.b_p * dsb;
  const double dth = dvth_dx * (-std::sin(theta)) +
                     da * (1 - std::cos(phi)) + db * (1 - std::cos(2 * phi));
  const double dph = a * std::sin(phi) + 2 * b * std::sin(2 * phi);
  return {dth, dph};
}

std::array<double, 4> PotentialSurface::hessian_ev(double theta,
                                                   double phi) const {
  const double h = 1e-6;
  const auto gtp = grad_ev(theta + h, phi), gtm = grad_ev(theta - h, phi);
  const auto gpp = grad_ev(theta, phi + h), gpm = grad_ev(theta, phi - h);
  const double htt = (gtp[0] - gtm[0]) / (2 * h);
  const double hpp = (gpp[1] - gpm[1]) / (2 * h);
  const double htp = 0.5 * ((gtp[1] - gtm[1]) / (2 * h) +
                            (gpp[0] - gpm[0]) / (2 * h));
  return {htt, htp, htp, hpp};
}

PotentialFn PotentialSurface::as_fn() const {
  if (!calibrated_)
    throw std::logic_error("surface not calibrated; use a factory or calibrate()");
  PotentialSurface copy = *this;
  return [copy](double th, double ph) { return copy.energy(th, ph); };
}

StationaryPoint PotentialSurface::find_stationary(const std::string& name,
                                                  double theta0,
                                                  double phi0) const {
  double th = theta0, ph = phi0;
  const double tol_ev = 1e-8 * units::hartree_to_ev * 0.01; // well below spec
  for (int it = 0; it < 200; ++it) {
    const auto g = grad_ev(th, ph);
    const double gn = std::hypot(g[0], g[1]);
    if (gn < tol_ev) break;
    const auto hs = hessian_ev(th, ph);
    const double det = hs[0] * hs[3] - hs[1] * hs[2];
    double dth, dph;
    if (std::fabs(det) < 1e-12) {
      dth = -g[0];
      dph = -g[1];
    } else {
      dth = -(hs[3] * g[0] - hs[1] * g[1]) / det;
      dph = -(-hs[2] * g[0] + hs[0] * g[1]) / det;
    }
    const double len = std::hypot(dth, dph);
    if (len > 0.3) {
      dth *= 0.3 / len;
      dph *= 0.3 / len;
    }
    th += dth;
    ph += dph;
    if (th < 0.05 || th > units::pi - 0.05)
      throw std::runtime_error("stationary search left the domain for " + name);
  }
  StationaryPoint sp;
  sp.name = name;
  sp.theta = th;
  sp.phi = ph;
  const auto g = grad_ev(th, ph);
  sp.grad_norm = std::hypot(g[0], g[1]) / units::hartree_to_ev;
  if (sp.grad_norm > 1e-8)
    throw std::runtime_error("stationary search failed to converge for " + name);
  sp.energy_ev = energy_ev(th, ph);
  const auto hs = hessian_ev(th, ph);
  const double tr = hs[0] + hs[3], det = hs[0] * hs[3] - hs[1] * hs[2];
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
  const double l1 = tr / 2 - disc, l2 = tr / 2 + disc;
  sp.index = (l1 < 0 ? 1 : 0) + (l2 < 0 ? 1 : 0);
  sp.freq_cm1 = normal_modes_cm1(th, ph, KineticSpec{});
  return sp;
}

std::array<double, 2> PotentialSurface::normal_modes_cm1(
    double theta, double phi, const KineticSpec& kin) const {
  const auto hs = hessian_ev(theta, phi);
  const double s2 = std::sin(theta) * std::sin(theta);
  // generalized problem H u = lambda M u with M = diag(I_theta, I_phi sin^2),
  // reduced to the symmetric form M^-1/2 H M^-1/2
  const double m1 = std::sqrt(kin.i_theta), m2 = std::sqrt(kin.i_phi * s2);
  const double conv = 1.0 / units::hartree_to_ev;
  const double a = hs[0] * conv / (m1 * m1);
  const double b = hs[1] * conv / (m1 * m2);
  const double d = hs[3] * conv / (m2 * m2);
  const double tr = a + d, det = a * d - b * b;
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
  auto freq = [](double lam) {
    const double w = std::sqrt(std::fabs(lam)) * units::hartree_to_cm1;
    return lam >= 0 ? w : -w;
  };
  return {freq(tr / 2 - disc), freq(tr / 2 + disc)};
}

double PotentialSurface::vri_theta() const {
  auto curv = [this](double th) {
    const double sb = sig((p_.theta_b - th) / p_.w_b);
    const double a = p_.a_r * sig((th - p_.theta_a) / p_.w_a) +
                     4 * std::cos(p_.phi0_deg * units::deg_to_rad) * p_.b_p * sb;
    return a - 4 * p_.b_p * sb; // A + 4B on the phi = 0 line
  };
  double lo = 0.3, hi = units::pi - 0.3;
  if (curv(lo) > 0 || curv(hi) < 0)
    throw std::runtime_error("no valley-ridge crossing on the phi = 0 line");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (curv(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

CalibrationTargets CalibrationTargets::for_variant(SurfaceVariant v) {
  CalibrationTargets t;
  if (v == SurfaceVariant::Mp2Like) {
    t.r_ev = 0.451;
    t.ts1_ev = 1.911;
    t.ts2_ev = 0.216;
  }
  return t;
}

std::string CalibrationReport::to_text() const {
  std::ostringstream os;
  os.precision(10);
  os << "variant "
     << (variant == SurfaceVariant::QcisdLike ? "qcisd_like" : "mp2_like")
     << "\nconverged " << (converged ? "yes" : "no")
     << "\nsimplex_evaluations " << simplex_evaluations << "\n";
  for (const auto& sp : points)
    os << sp.name << " theta " << sp.theta << " phi " << sp.phi << " energy_ev "
       << sp.energy_ev << " index " << sp.index << " freq_cm1 " << sp.freq_cm1[0]
       << " " << sp.freq_cm1[1] << "\n";
  os << "splitting_ev " << splitting_ev << " (target " << targets.splitting_ev
     << ")\ntunneling_period_ps " << tunneling_period_ps << "\nvri_theta "
     << vri_theta << "\nparams";
  for (const auto& [k, v] : params.named()) os << " " << k << "=" << v;
  os << "\n";
  return os.str();
}

} // namespace triwell

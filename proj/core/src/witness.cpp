#include "pairbundle/witness.hpp"

#include "pairbundle/closure.hpp"
#include "pairbundle/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pb {

namespace {

const cd I(0.0, 1.0);

Mat2 M(cd a, cd b, cd c, cd d) { return make_mat2(a, b, c, d); }

Mat2 theta_A(double th) { return M(1.0, 0.0, 0.0, std::polar(1.0, th)); }
Mat2 tau_A(double t) { return M(0.0, 1.0, t, 0.0); }
Mat2 jordan_A() { return M(0.0, 1.0, 1.0, I); }
const Mat2 kX = (Mat2() << 0.0, 1.0, 1.0, 0.0).finished();

BundleLabel lab(const char* s) { return *parse_label(s); }

PairAB pair(const Mat2& A, const SymMat2& B = {}) { return {A, B}; }

WitnessFamily family(const char* id, const char* src, BundleParams sp, const char* dst, std::function<Mat2(double)> P,
                     std::function<PairAB(double)> target, std::string prov, bool typo = false) {
  WitnessFamily f;
  f.id = id;
  f.source = lab(src);
  f.source_params = std::move(sp);
  f.target = lab(dst);
  f.c_of_s = [](double) { return cd(1.0); };
  f.P_of_s = std::move(P);
  f.target_instance_of_s = std::move(target);
  f.provenance = std::move(prov);
  f.known_typo = typo;
  return f;
}

BundleParams with_ad(double a, double d) {
  BundleParams p;
  p.a = a;
  p.d = d;
  return p;
}

BundleParams with_d(double d) {
  BundleParams p;
  p.d = d;
  return p;
}

std::vector<WitnessFamily> build_catalog() {
  std::vector<WitnessFamily> v;
  const double th = 1.0, tau = 0.5;

  v.push_back(family(
      "W1", "one_zero/zero", {}, "one_theta/zero", [](double s) { return M(1.0, 0.0, 0.0, s); },
      [=](double) { return pair(theta_A(th)); }, "A-only degeneration 1+0 -> 1+e^{it}: P(s) = 1+s"));
  v.push_back(family(
      "W2", "one_zero/zero", {}, "tau_form/zero",
      [=](double s) { return M(1.0, 0.0, 1.0, s) / std::sqrt(1.0 + tau); }, [=](double) { return pair(tau_A(tau)); },
      "A-only degeneration 1+0 -> [[0,1],[t,0]]: P(s) = (1/sqrt(1+t)) [[1,0],[1,s]]"));
  v.push_back(family(
      "W3", "one_plus_minus/zero", {}, "jordan_i/zero",
      [](double s) { return 0.5 * M(1.0 / s, 1.0 / s, s, -s); }, [](double) { return pair(jordan_A()); },
      "A-only degeneration 1+(-1) -> [[0,1],[1,i]]: printed P(s) = 1/2 [[1/s,1/s],[s,-s]]", true));
  v.push_back(family(
      "W4", "one_plus_minus/zero", {}, "tau_form/zero",
      [](double) { return M(1.0, 1.0, 1.0, -1.0) / std::sqrt(2.0); },
      [](double s) { return pair(tau_A(1.0 - s)); },
      "A-only degeneration 1+(-1) -> [[0,1],[t,0]] with t = 1-s: P = (1/sqrt 2)[[1,1],[1,-1]]"));
  v.push_back(family(
      "W5", "jordan_i/zero", {}, "tau_form/zero",
      [](double s) {
        const double r = std::sqrt(s);
        return M(r, -2.0 * I, -I * r, 1.0) / (2.0 * r);
      },
      [](double s) { return pair(tau_A(1.0 - s)); },
      "A-only degeneration [[0,1],[1,i]] -> [[0,1],[t,0]] with t = 1-s: printed P(s) = 1/(2 sqrt s) "
      "[[sqrt s,-2i],[-i sqrt s,1]]"));
  v.push_back(family(
      "W6", "identity/zero", {}, "one_theta/zero", [](double) { return Mat2(Mat2::Identity()); },
      [](double s) { return pair(theta_A(s)); }, "A-only degeneration I2 -> 1+e^{it} with t = s: P = I"));
  v.push_back(family(
      "W7", "nilpotent/zero", {}, "tau_form/zero", [](double) { return Mat2(Mat2::Identity()); },
      [](double s) { return pair(tau_A(s)); }, "A-only degeneration [[0,1],[0,0]] -> [[0,1],[t,0]] with t = s: P = I"));
  v.push_back(family(
      "W8", "jordan_i/zero", {}, "one_theta/zero",
      [](double s) {
        const double ss = std::sin(s);
        const double phi = std::acos(std::pow(ss, 0.75));
        const double q = std::pow(ss, 0.25);
        return M(q, std::polar(1.0, phi), q, std::polar(1.0, -phi)) / std::sqrt(ss);
      },
      [](double s) { return pair(theta_A(s)); },
      "A-only degeneration [[0,1],[1,i]] -> 1+e^{it} with t = s: printed P(s) = (1/sqrt(sin s)) "
      "[[(sin s)^(1/4), e^{ip}],[(sin s)^(1/4), e^{-ip}]], cos p = (sin s)^(3/4)"));

  // Sources (0, 1+0).
  v.push_back(family(
      "W9", "zero/rank1", {}, "identity/diag_ad", [](double s) { return M(s, 0.0, 0.0, s * s * s); },
      [](double s) {
        return pair(Mat2::Identity(), SymMat2(1.0 / (s * s), 0.0, (1.0 + s) / (s * s)));
      },
      "degeneration (0,1+0) -> (I2,a+d): P(s) = s+s^3, B(s) = 1/s^2 + (1+(d-a)s)/s^2 with d-a = 1"));
  v.push_back(family(
      "W10", "zero/rank1", {}, "identity/diag_0d", [](double s) { return M(0.0, s, s, 0.0); },
      [](double s) { return pair(Mat2::Identity(), SymMat2(0.0, 0.0, 1.0 / (s * s))); },
      "degeneration (0,1+0) -> (I2,0+d): P(s) = [[0,s],[s,0]], d = 1/s^2"));
  v.push_back(family(
      "W11", "zero/rank1", {}, "jordan_i/diag_0d", [](double s) { return M(s, 1.0, s, s * s); },
      [](double s) { return pair(jordan_A(), SymMat2(0.0, 0.0, 1.0 / (s * s))); },
      "degeneration (0,1+0) -> ([[0,1],[1,i]],0+d): P(s) = [[s,1],[s,s^2]], d = 1/s^2"));
  v.push_back(family(
      "W12", "zero/rank1", {}, "jordan_i/anti_diag",
      [](double s) { return (1.0 + I) / 2.0 * M(1.0 / s, s * s, -I * s, s * s); },
      [](double) { return pair(jordan_A(), SymMat2(0.0, 1.0, 0.0)); },
      "degeneration (0,1+0) -> ([[0,1],[1,i]],bX): P(s) = (1+i)/(2 sqrt b) [[1/s,s^2],[-is,s^2]], b = 1"));
  v.push_back(family(
      "W13", "zero/rank1", {}, "jordan_i/diag_a_zeta", [](double s) { return M(1.0, 0.0, 0.0, s); },
      [](double) { return pair(jordan_A(), SymMat2(1.0, 0.0, cd(0.3, 0.4))); },
      "degeneration (0,1+0) -> ([[0,1],[1,i]],a+z): P(s) = (1/sqrt a)+s, a = 1"));
  const double phi = 0.7;
  const cd zeta(0.3, 0.4);
  v.push_back(family(
      "W14", "zero/rank1", {}, "tau_form/phase_form",
      [=](double s) { return M(std::polar(1.0, -phi / 2), 0.0, 0.0, s); },
      [=](double) { return pair(tau_A(tau), SymMat2(std::polar(1.0, phi), 1.0, zeta)); },
      "degeneration (0,1+0) -> ([[0,1],[t,0]],[[e^{ip},b],[b,z]]): P(s) = (1/sqrt e^{ip})+s"));
  v.push_back(family(
      "W15", "zero/rank1", {}, "tau_form/anti_diag", [](double s) { return M(s, s * s, s, s * s * s); },
      [=](double s) { return pair(tau_A(tau), SymMat2(0.0, 1.0 / (2 * s * s), 0.0)); },
      "degeneration (0,1+0) -> ([[0,1],[t,0]],bX): P(s) = [[s,s^2],[s,s^3]], b = 1/(2s^2)"));
  v.push_back(family(
      "W16", "zero/rank1", {}, "one_zero/diag_a1", [](double s) { return M(s, s, 1.0, s); },
      [](double) { return pair(M(1.0, 0.0, 0.0, 0.0), SymMat2(1.0, 0.0, 1.0)); },
      "degeneration (0,1+0) -> (1+0,a+1): P(s) = [[s,s],[1,s]], a = 1"));
  v.push_back(family(
      "W17", "zero/rank1", {}, "one_zero/swap",
      [](double s) { return M(s, s * s, 1.0 / s, s * s) / std::sqrt(2.0); },
      [](double) { return pair(M(1.0, 0.0, 0.0, 0.0), SymMat2(0.0, 1.0, 0.0)); },
      "degeneration (0,1+0) -> (1+0,X): P(s) = (1/sqrt 2)[[s,s^2],[1/s,s^2]]"));
  v.push_back(family(
      "W24", "zero/rank1", {}, "one_theta/full_hermitian_like",
      [](double s) { return M(1.0, 0.0, 1.0, s) / std::sqrt(cd(1.0 + 2.0 + 2.0 * cd(1.0, 1.0))); },
      [](double s) { return pair(theta_A(kPi - s), SymMat2(1.0, cd(1.0, 1.0), 2.0)); },
      "degeneration (0,1+0) -> (1+e^{it},[[a,z],[z,d]]) with t = pi-s: P(s) = (1/sqrt(a+2z+d)) [[1,0],[1,s]]"));

  // Sources (0, I2).
  v.push_back(family(
      "W18", "zero/rank2", {}, "tau_form/one_zeta", [](double s) { return M(1.0, 1.0, s, -s); },
      [=](double s) { return pair(tau_A(tau), SymMat2(1.0, 0.0, std::polar(1.0, s) / (s * s))); },
      "degeneration (0,I2) -> ([[0,1],[t,0]],1+z): printed P(s) = [[1,1],[s,-s]], z = e^{is}/s^2", true));
  v.push_back(family(
      "W19a", "zero/rank2", {}, "nilpotent/diag_a1", [](double s) { return M(s, s, 1.0, -1.0); },
      [](double s) { return pair(M(0.0, 1.0, 0.0, 0.0), SymMat2(1.0 / (s * s), 0.0, 1.0)); },
      "degeneration (0,I2) -> ([[0,1],[0,0]],a+1): printed P(s) = [[s,s],[1,-1]], a = 1/s^2", true));
  v.push_back(family(
      "W19b", "zero/rank2", {}, "one_zero/diag_a1", [](double s) { return M(s, s, 1.0, -1.0); },
      [](double s) { return pair(M(1.0, 0.0, 0.0, 0.0), SymMat2(1.0 / (s * s), 0.0, 1.0)); },
      "degeneration (0,I2) -> (1+0,a+1): printed P(s) = [[s,s],[1,-1]], a = 1/s^2", true));
  v.push_back(family(
      "W20a", "zero/rank2", {}, "identity/diag_ad",
      [](double s) { return M(s, s, s, -s) / std::sqrt(2.0); },
      [](double s) { return pair(Mat2::Identity(), SymMat2(1.0 / (s * s), 0.0, (1.0 + s) / (s * s))); },
      "degeneration (0,I2) -> (I2,a+d): P(s) = (1/sqrt 2)[[s,s],[s,-s]], a = 1/s^2, d = (1+s)/s^2"));
  v.push_back(family(
      "W20b", "zero/rank2", {}, "one_plus_minus/diag_ad",
      [](double s) { return M(s, s, s, -s) / std::sqrt(2.0); },
      [](double s) {
        return pair(M(1.0, 0.0, 0.0, -1.0), SymMat2(1.0 / (s * s), 0.0, (1.0 + s) / (s * s)));
      },
      "degeneration (0,I2) -> (1+(-1),a+d): P(s) = (1/sqrt 2)[[s,s],[s,-s]], a = 1/s^2, d = (1+s)/s^2"));
  v.push_back(family(
      "W25", "zero/rank2", {}, "one_theta/full_hermitian_like",
      [](double s) { return s / std::sqrt(2.0) * std::polar(1.0, kPi / 4) * M(1.0, -I, -I, 1.0); },
      [=](double s) { return pair(theta_A(th), SymMat2(1.0, 1.0 / (s * s), 2.0)); },
      "degeneration (0,I2) -> (1+e^{it},[[a,z],[z,d]]): P(s) = (s/sqrt 2) e^{i pi/4} [[1,-i],[-i,1]], z = 1/s^2"));

  // Sources (1+s, a+d) with s = +1 and -1.
  for (int sg : {1, -1}) {
    const double at = 1.0, dt = 2.0;
    const char* id = sg > 0 ? "W21a" : "W21b";
    const char* src = sg > 0 ? "identity/diag_ad" : "one_plus_minus/diag_ad";
    v.push_back(family(
        id, src, with_ad(at, dt), "one_theta/off_diag_plus_d",
        [=](double) {
          const double ra = std::sqrt(at), rd = std::sqrt(dt);
          return M(-I * rd, ra, I * ra, sg * rd) / std::sqrt(dt + sg * at);
        },
        [=](double s) {
          const double b = std::sqrt(at * dt);
          return pair(theta_A(sg > 0 ? s : kPi - s), SymMat2(0.0, b, dt - sg * at));
        },
        sg > 0 ? "degeneration (I2,a+d) -> (1+e^{it},[[0,b],[b,d]]) with t = s: "
                 "P = (1/sqrt(d+a)) [[-i sqrt d, sqrt a],[i sqrt a, sqrt d]]"
               : "degeneration (1+(-1),a+d) -> (1+e^{it},[[0,b],[b,d]]) with t = pi-s: "
                 "P = (1/sqrt(d-a)) [[-i sqrt d, sqrt a],[i sqrt a, -sqrt d]]"));
  }
  v.push_back(family(
      "W22", "identity/scalar", with_d(1.0), "one_theta/anti_diag",
      [](double) { return M(1.0, I, 1.0, -I) / std::sqrt(2.0); },
      [](double s) { return pair(theta_A(s), SymMat2(0.0, 1.0 + s, 0.0)); },
      "degeneration (I2,dI2) -> (1+e^{it},bX) with t = s, b = d+s: P = (1/sqrt 2)[[1,i],[1,-i]]"));
  v.push_back(family(
      "W23", "one_plus_minus/zero", {}, "one_plus_minus/x_diag_10",
      [](double s) { return 0.5 * M(2 * s, 1.0 / s, 2 * s, -1.0 / s); },
      [](double) { return pair(kX, SymMat2(1.0, 0.0, 0.0)); },
      "degeneration (1+(-1),0) -> ([[0,1],[1,0]],1+0): printed P(s) = 1/2 [[2s,1/s],[2s,-1/s]]", true));
  return v;
}

Mat2 corrected(const WitnessCorrection& k, Mat2 P) {
  if (k.transpose) P.transposeInPlace();
  if (k.swap == WitnessCorrection::Swap::Left) P = kX * P;
  if (k.swap == WitnessCorrection::Swap::Right) P = P * kX;
  return k.scale * P;
}

double residual_at(const WitnessFamily& f, const PairAB& src, double s) {
  try {
    const auto g = f.element(s);
    validate(g);
    return pair_distance(apply_action(g, f.target_instance_of_s(s)), src);
  } catch (const std::exception&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

std::string to_string(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::Unverified: return "unverified";
    case WitnessStatus::Verified: return "verified";
    case WitnessStatus::Repaired: return "repaired";
    case WitnessStatus::Refuted: return "refuted";
  }
  return "?";
}

bool WitnessCorrection::is_identity() const {
  return scale == 1.0 && phase == 0.0 && !transpose && swap == Swap::None;
}

std::string WitnessCorrection::describe() const {
  if (is_identity()) return "none";
  std::ostringstream os;
  os.precision(6);
  const char* sep = "";
  if (transpose) {
    os << "transpose P";
    sep = ", ";
  }
  if (swap == Swap::Left) {
    os << sep << "P -> X P";
    sep = ", ";
  }
  if (swap == Swap::Right) {
    os << sep << "P -> P X";
    sep = ", ";
  }
  if (scale != 1.0) {
    os << sep << "scale P by " << scale;
    sep = ", ";
  }
  if (phase != 0.0) os << sep << "c -> c e^{i " << phase << "}";
  return os.str();
}

GroupElement WitnessFamily::element(double s) const {
  GroupElement g;
  g.c = c_of_s(s) * std::polar(1.0, correction.phase);
  g.P = corrected(correction, P_of_s(s));
  return g;
}

PairAB WitnessFamily::source_pair() const { return representative(source, source_params); }

const std::vector<WitnessFamily>& witness_catalog() {
  static const std::vector<WitnessFamily> c = build_catalog();
  return c;
}

std::optional<WitnessFamily> witness_by_id(std::string_view id) {
  for (const auto& f : witness_catalog())
    if (f.id == id) return f;
  return std::nullopt;
}

std::vector<WitnessFamily> witnesses_for(const BundleLabel& src, const BundleLabel& dst) {
  std::vector<WitnessFamily> out;
  for (const auto& f : witness_catalog())
    if (f.source == src && f.target == dst) out.push_back(f);
  return out;
}

std::optional<WitnessFamily> witness_lookup(const BundleLabel& src, const BundleLabel& dst) {
  auto v = witnesses_for(src, dst);
  if (v.empty()) return std::nullopt;
  return v.front();
}

WitnessEval witness_eval(const WitnessFamily& f, double s) {
  if (!(s > 0.0 && s <= f.s_max)) throw ValidationError("s must lie in (0, s_max]");
  WitnessEval e;
  e.g = f.element(s);
  require_finite(e.g.P, "P(s)");
  if (!(std::abs(e.g.P.determinant()) > 1e-300)) throw SingularError("P(s) is singular");
  e.image = apply_action(e.g, f.target_instance_of_s(s));
  e.residual = pair_distance(e.image, f.source_pair());
  return e;
}

std::vector<double> geometric_grid(double s_max, int n, double ratio) {
  if (!(s_max > 0) || n < 1 || !(ratio > 0 && ratio < 1)) throw ValidationError("invalid grid specification");
  std::vector<double> g;
  double s = s_max;
  for (int i = 0; i < n; ++i, s *= ratio) g.push_back(s);
  return g;
}

WitnessReport witness_verify(const WitnessFamily& f, const std::vector<double>& s_grid, double tol) {
  if (s_grid.size() < 2) throw ValidationError("insufficient grid");
  WitnessReport r;
  r.id = f.id;
  auto grid = s_grid;
  std::sort(grid.begin(), grid.end(), std::greater<>());
  const PairAB src = f.source_pair();
  for (double s : grid) r.points.push_back({s, residual_at(f, src, s)});
  r.decreasing = true;
  for (std::size_t i = 1; i < r.points.size(); ++i)
    if (!(r.points[i].residual < r.points[i - 1].residual)) r.decreasing = false;
  r.final_residual = r.points.back().residual;
  const std::size_t tail = std::min<std::size_t>(4, r.points.size() - 1);
  double acc = 0.0;
  int cnt = 0;
  for (std::size_t i = r.points.size() - tail; i < r.points.size(); ++i) {
    const double a = r.points[i - 1].residual, b = r.points[i].residual;
    if (a > 0 && b > 0 && std::isfinite(a) && std::isfinite(b)) {
      acc += std::log(a / b) / std::log(r.points[i - 1].s / r.points[i].s);
      ++cnt;
    }
  }
  r.order = cnt ? acc / cnt : 0.0;
  const bool converged = r.decreasing && r.final_residual < tol;
  if (converged) {
    r.status = f.status == WitnessStatus::Repaired ? WitnessStatus::Repaired : WitnessStatus::Verified;
    r.message = "residual decreasing to " + std::to_string(r.final_residual);
  } else {
    r.status = WitnessStatus::Refuted;
    r.message = r.decreasing ? "residual decreasing but above tolerance" : "residual does not decrease along the grid";
  }
  return r;
}

RepairResult witness_repair(const WitnessFamily& f, double tol) {
  const auto grid = geometric_grid(f.s_max);
  RepairResult out;
  out.family = f;
  out.report = witness_verify(f, grid, tol);
  if (out.report.status == WitnessStatus::Verified || out.report.status == WitnessStatus::Repaired) {
    out.family.status = out.report.status;
    return out;
  }

  const PairAB src = f.source_pair();
  const double s1 = 1e-6, s2 = 1e-7;
  auto objective = [&](const WitnessCorrection& k) {
    WitnessFamily g = f;
    g.correction = k;
    const double r1 = residual_at(g, src, s1), r2 = residual_at(g, src, s2);
    return std::log1p(r1) + std::log1p(r2);
  };

  WitnessCorrection best;
  double best_val = objective(best);
  using Sw = WitnessCorrection::Swap;
  for (bool tr : {false, true}) {
    for (Sw sw : {Sw::None, Sw::Left, Sw::Right}) {
      for (double t0 : {1.0, 0.5, 2.0, 0.25, 4.0}) {
        for (double p0 : {0.0, kPi / 2, kPi, -kPi / 2}) {
          auto fn = [&](const std::vector<double>& x) {
            WitnessCorrection k;
            k.transpose = tr;
            k.swap = sw;
            k.scale = std::exp(x[0]);
            k.phase = x[1];
            return objective(k);
          };
          CompassOptions opt;
          opt.step0 = 0.25;
          opt.step_min = 1e-10;
          opt.max_evals = 4000;
          const auto r = compass_minimize(fn, {std::log(t0), p0}, opt);
          if (r.value < 0.5 * best_val) {
            best_val = r.value;
            best.transpose = tr;
            best.swap = sw;
            best.scale = std::exp(r.x[0]);
            best.phase = std::remainder(r.x[1], 2 * kPi);
            if (std::abs(best.phase) < 1e-6) best.phase = 0.0;
            if (std::abs(best.scale - 1.0) < 1e-6) best.scale = 1.0;
          }
        }
      }
    }
  }

  if (!best.is_identity()) {
    WitnessFamily g = f;
    g.correction = best;
    g.status = WitnessStatus::Repaired;
    auto rep = witness_verify(g, grid, tol);
    if (rep.status == WitnessStatus::Repaired) {
      g.provenance += " [repaired: " + best.describe() + "]";
      out.family = std::move(g);
      out.report = std::move(rep);
      out.report.message = "repaired (" + best.describe() + "); " + out.report.message;
      out.changed = true;
      return out;
    }
  }
  out.family.status = WitnessStatus::Refuted;
  out.report.status = WitnessStatus::Refuted;
  out.report.message = "no correction in the search space restores convergence; " + out.report.message;
  return out;
}

}  // namespace pb

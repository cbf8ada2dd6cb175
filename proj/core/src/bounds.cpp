#include "pairbundle/bounds.hpp"

#include "pairbundle/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace pb {

namespace {

constexpr double kShapeTol = 1e-12;
constexpr double kRoundoff = 1e-12;

// Absolute round-off allowance for quantities of size `scale`.
double allowance(double scale) { return kRoundoff * (1.0 + scale); }

BoundReport make_report(double bound, double observed, double scale) {
  BoundReport r;
  r.bound_value = bound;
  r.observed_value = observed;
  r.margin = bound + allowance(scale) - observed;
  return r;
}

BoundReport vacuous() {
  BoundReport r;
  r.hypothesis_ok = false;
  return r;
}

bool is_zero_det(cd det, double norm) { return std::abs(det) <= 1e-14 * std::max(1.0, norm * norm); }

bool near(cd a, cd b, double scale = 1.0) { return std::abs(a - b) <= kShapeTol * std::max(1.0, scale); }

double sign_bound(double normE, double normT, double det_abs, bool singular, double k) {
  if (singular) return std::sqrt(normE * (normT * 4 + 2));
  return normE * (4 * normT + k) / det_abs;
}

struct Entries {
  cd x, y, u, v;
};

Entries entries(const Mat2& P) { return {P(0, 0), P(0, 1), P(1, 0), P(1, 1)}; }

// A~ / A shape predicates.
bool is_alpha0(const Mat2& M) {
  const double s = max_norm(M);
  return near(M(0, 1), 0, s) && near(M(1, 0), 0, s) && near(M(1, 1), 0, s);
}
bool is_01w(const Mat2& M) { return near(M(0, 0), 0) && near(M(0, 1), 1) && near(M(1, 0), 1); }
bool is_sym(const Mat2& M) { return near(M(0, 1), M(1, 0), max_norm(M)); }
bool is_diag(const Mat2& M) {
  const double s = max_norm(M);
  return near(M(0, 1), 0, s) && near(M(1, 0), 0, s);
}
bool is_theta(const Mat2& M) {
  return is_diag(M) && near(M(0, 0), 1) && std::abs(std::abs(M(1, 1)) - 1) <= kShapeTol;
}
bool is_tau(const Mat2& M) {
  return near(M(0, 0), 0) && near(M(0, 1), 1) && near(M(1, 1), 0) && std::abs(M(1, 0).imag()) <= kShapeTol &&
         M(1, 0).real() >= -kShapeTol && M(1, 0).real() < 1;
}
bool is_x(const Mat2& M) { return near(M(0, 0), 0) && near(M(1, 1), 0) && near(M(0, 1), 1) && near(M(1, 0), 1); }
bool is_j(const Mat2& M) {
  return near(M(0, 0), 0) && near(M(0, 1), 1) && near(M(1, 0), 1) && near(M(1, 1), cd(0, 1));
}
bool is_identity(const Mat2& M) { return is_diag(M) && near(M(0, 0), 1) && near(M(1, 1), 1); }
bool is_one_sigma(const Mat2& M) { return is_diag(M) && near(M(0, 0), 1) && (near(M(1, 1), 1) || near(M(1, 1), -1)); }
bool is_one_zero(const Mat2& M) { return is_diag(M) && near(M(0, 0), 1) && near(M(1, 1), 0); }
bool is_one_minus_one(const Mat2& M) { return is_diag(M) && near(M(0, 0), 1) && near(M(1, 1), -1); }

double theta_of(const Mat2& M) { return std::abs(std::arg(M(1, 1))); }

}  // namespace

BoundReport detxe_bound(const Mat2& X, const Mat2& D) {
  const double nX = max_norm(X), nD = max_norm(D);
  const double obs = std::abs((X + D).determinant() - X.determinant());
  return make_report(nD * (4 * nX + 2 * nD), obs, (nX + nD) * (nX + nD));
}

std::string to_string(LemadetMode m) {
  switch (m) {
    case LemadetMode::PAE: return "PAE";
    case LemadetMode::CE: return "cE";
    case LemadetMode::PBF: return "PBF";
    case LemadetMode::Part3: return "part3";
  }
  return "?";
}

std::optional<LemadetMode> parse_lemadet_mode(const std::string& s) {
  for (auto m : {LemadetMode::PAE, LemadetMode::CE, LemadetMode::PBF, LemadetMode::Part3})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

BoundReport lemadet_verify(const PairAB& tilde, const PairAB& x, const GroupElement& g, LemadetMode mode) {
  validate(g);
  const Mat2& At = tilde.A;
  const Mat2& A = x.A;
  const Mat2 Bt = tilde.B.matrix();
  const Mat2 B = x.B.matrix();
  const Mat2& P = g.P;
  const Mat2 E = g.c * P.adjoint() * A * P - At;
  const Mat2 F = P.transpose() * B * P - Bt;
  const double nE = max_norm(E), nF = max_norm(F);
  const double nAt = max_norm(At), nBt = max_norm(Bt);
  const cd dAt = At.determinant(), dA = A.determinant(), dBt = Bt.determinant(), dB = B.determinant();
  const cd dP = P.determinant();
  const bool sAt = is_zero_det(dAt, nAt), sBt = is_zero_det(dBt, nBt);

  switch (mode) {
    case LemadetMode::PAE: {
      if (!(nE <= std::min(std::abs(dAt) / (8 * nAt + 4), 1.0))) return vacuous();
      const double obs = std::abs(std::sqrt(std::abs(dA)) * std::abs(dP) - std::sqrt(std::abs(dAt)));
      return make_report(sign_bound(nE, nAt, std::abs(dAt), sAt, 2), obs, std::sqrt(std::abs(dAt)));
    }
    case LemadetMode::CE: {
      if (sAt || is_zero_det(dA, max_norm(A))) return vacuous();
      if (!(nE <= std::min(std::abs(dAt) / (8 * nAt + 4), 1.0))) return vacuous();
      const double delta = std::arg(dAt / dA);
      const cd e = std::polar(1.0, delta / 2);
      const double obs = std::min(std::abs(g.c - e), std::abs(g.c + e));
      return make_report(nE * (8 * nAt + 4) / std::abs(dAt), obs, 1.0);
    }
    case LemadetMode::PBF: {
      if (!(nF <= std::min(std::abs(dBt) / (4 * max_norm(B) + 2), 1.0))) return vacuous();
      const cd lhs = std::sqrt(dB) * dP;
      const cd rt = std::sqrt(dBt);
      const double obs = std::min(std::abs(lhs - rt), std::abs(lhs + rt));
      return make_report(sign_bound(nF, nBt, std::abs(dBt), sBt, 2), obs, std::abs(rt));
    }
    case LemadetMode::Part3: {
      if (sAt || is_zero_det(dA, max_norm(A))) return vacuous();
      const double inv_norm = max_norm(Mat2(At.inverse()));
      if (!(nE <= std::min({1.0, 1.0 / inv_norm, std::abs(dAt) / (8 * nAt + 4)}))) return vacuous();
      if (!(nF <= 1.0)) return vacuous();
      const double obs = std::abs(std::abs(dAt * dB) - std::abs(dBt * dA));
      const double m = std::max({nAt, nBt, std::abs(dAt), std::abs(dBt)});
      const double bound = std::max(nE, nF) * std::abs(dA) / std::abs(dAt) * (4 * m + 2) * (4 * m + 2);
      return make_report(bound, obs, std::abs(dAt * dB) + std::abs(dBt * dA));
    }
  }
  return vacuous();
}

std::string to_string(Table3Row r) { return "C" + std::to_string(static_cast<int>(r)); }

std::optional<Table3Row> parse_table3_row(const std::string& s) {
  for (int i = 1; i <= 14; ++i)
    if (s == "C" + std::to_string(i)) return static_cast<Table3Row>(i);
  return std::nullopt;
}

std::vector<double> table3_residuals(Table3Row row, const Mat2& At, const Mat2& A, cd c, const Mat2& P) {
  require_finite(At, "A~");
  require_finite(A, "A");
  require_finite(P, "P");
  if (!(std::abs(c) > 0)) throw ValidationError("c must be nonzero");
  auto [x, y, u, v] = entries(P);
  const cd xb = std::conj(x), yb = std::conj(y), ub = std::conj(u), vb = std::conj(v);
  const double ax = std::norm(x), ay = std::norm(y), au = std::norm(u), av = std::norm(v);
  const cd I(0, 1);
  auto mismatch = [&](const char* want) {
    throw ValidationError(to_string(row) + ": expected " + std::string(want));
  };
  // Each entry is a function of the sign s = (-1)^k; the row's residuals use the best k.
  using Expr = std::function<cd(double)>;
  std::vector<Expr> ex;
  bool k_fixed_even = false;
  auto fixed = [](cd z) { return Expr([z](double) { return z; }); };

  switch (row) {
    case Table3Row::C1: {
      if (!is_alpha0(At) || !is_identity(A)) mismatch("A~ = a+0, A = I2");
      const cd al = At(0, 0);
      ex = {fixed(ax + au - al / c), fixed(y * y), fixed(v * v)};
      break;
    }
    case Table3Row::C2: {
      if (!is_alpha0(At) || !is_theta(A)) mismatch("A~ = a+0, A = 1+e^{it}");
      const cd al = At(0, 0), e = A(1, 1);
      const double th = theta_of(A);
      ex = {fixed(ax + e * au - al / c), fixed(ay + e * av), fixed(std::sin(th) * std::abs(ub * v)),
            fixed(std::abs(xb * y + std::cos(th) * ub * v))};
      break;
    }
    case Table3Row::C3: {
      if (!is_01w(At) || !is_theta(A)) mismatch("A~ = [[0,1],[1,w]], A = 1+e^{it}");
      const double th = theta_of(A);
      ex = {fixed(ax - au), fixed(ay - av), [=](double s) { return xb * y - ub * v - s; },
            fixed(std::abs(std::sin(th)))};
      if (near(At(1, 1), I)) {
        ex.push_back(fixed(std::sin(th) * av - 1.0));
        ex.push_back(fixed(std::sin(th) * au));
        k_fixed_even = true;
      }
      break;
    }
    case Table3Row::C4: {
      if (!is_alpha0(At) || !is_tau(A)) mismatch("A~ = a+0, A = [[0,1],[t,0]]");
      const double t = A(1, 0).real();
      const cd al = At(0, 0), yv = yb * v, xu = xb * u;
      ex = {fixed(yv.real()), fixed((1 - t) * yv.imag()), fixed(xb * v), fixed(ub * y),
            fixed((1 + t) * xu.real() + I * (1 - t) * xu.imag() - al / c)};
      break;
    }
    case Table3Row::C5: {
      if (!is_01w(At) || !is_tau(A)) mismatch("A~ = [[0,1],[1,w]], A = [[0,1],[t,0]]");
      const double t = A(1, 0).real();
      const cd w = At(1, 1), xu = xb * u, yv = yb * v;
      ex = {fixed(xu.real()), fixed((1 - t) * xu.imag()), fixed((1 - t) * (1 - t)),
            [=](double s) { return xb * v + ub * y - s; },
            [=](double s) { return (1 + t) * yv.real() + I * (1 - t) * yv.imag() - s * w; }};
      break;
    }
    case Table3Row::C6: {
      if (!is_sym(At) || !is_x(A)) mismatch("A~ symmetric, A = [[0,1],[1,0]]");
      const cd al = At(0, 0), be = At(0, 1), w = At(1, 1);
      ex = {[=](double s) { return 2 * (yb * v).real() - s * w; },
            [=](double s) { return 2 * (xb * u).real() - s * al; },
            [=](double s) { return xb * v + ub * y - s * be; }};
      break;
    }
    case Table3Row::C7: {
      if (!is_alpha0(At) || !is_j(A)) mismatch("A~ = a+0, A = [[0,1],[1,i]]");
      const cd al = At(0, 0);
      ex = {fixed(xb * v + ub * y), fixed(ub * v), fixed((yb * u).real()), fixed(v * v),
            fixed(2 * (xb * u).real() + I * au - al / c)};
      break;
    }
    case Table3Row::C8: {
      if (!is_theta(At) || !is_theta(A)) mismatch("A~ = 1+e^{it~}, A = 1+e^{it}");
      ex = {fixed(u * u), fixed(y * y), fixed(ax - 1), fixed(av - 1)};
      break;
    }
    case Table3Row::C9: {
      if (!is_sym(At) || !is_j(A)) mismatch("A~ symmetric, A = [[0,1],[1,i]]");
      const cd al = At(0, 0), be = At(0, 1), w = At(1, 1);
      ex = {[=](double s) { return 2 * (xb * u).real() - s * al; },
            [=](double s) { return 2 * (yb * v).real() - s * w.real(); },
            [=](double s) { return xb * v + ub * y - s * be; }, fixed(u * u),
            [=](double s) { return av - s * w.imag(); }};
      break;
    }
    case Table3Row::C10: {
      if (!is_tau(At) || !is_tau(A)) mismatch("A~ = [[0,1],[t~,0]], A = [[0,1],[t,0]]");
      ex = {fixed(xb * u), fixed(yb * v), fixed(yb * u), fixed(vb * x - 1.0 / c)};
      if (A(1, 0).real() > kShapeTol) ex.push_back([=](double s) { return c - s; });
      break;
    }
    case Table3Row::C11: {
      if (!is_diag(At) || !is_one_sigma(A)) mismatch("A~ = a+w, A = 1+s");
      const double sg = A(1, 1).real();
      const cd al = At(0, 0), w = At(1, 1);
      ex = {fixed(ax + sg * au - al / c), fixed(xb * y + sg * ub * v), fixed(ay + sg * av - sg * w / c)};
      if (near(w, sg)) {
        ex.push_back([=](double s) { return c - s; });
        if (sg > 0) k_fixed_even = true;
      }
      break;
    }
    case Table3Row::C12: {
      if (!is_one_sigma(At) || !is_theta(A)) mismatch("A~ = 1+s, A = 1+e^{it}");
      const double sg = At(1, 1).real();
      ex = {[=](double s) { return ax + sg * au - s; }, fixed(xb * y + sg * ub * v),
            [=](double s) { return ay + sg * av - s; }, [=](double s) { return c - s; }};
      if (sg > 0) k_fixed_even = true;
      break;
    }
    case Table3Row::C13: {
      if (!is_alpha0(At) || !is_one_zero(A)) mismatch("A~ = a+0, A = 1+0");
      const cd al = At(0, 0);
      ex = {fixed(y * y), fixed(ax - al)};
      const Mat2 E = c * P.adjoint() * A * P - At;
      if (near(al, 1) && max_norm(E) <= 0.5) ex.push_back(fixed(c - 1.0));
      break;
    }
    case Table3Row::C14: {
      if (!is_x(At) || !is_one_minus_one(A)) mismatch("A~ = [[0,1],[1,0]], A = 1+(-1)");
      ex = {[=](double s) { return xb * y - ub * v - s; }, fixed(ax - au), fixed(ay - av)};
      break;
    }
  }

  // The parity of k is shared across the row.
  std::vector<double> best;
  double best_max = std::numeric_limits<double>::infinity();
  for (double s : {1.0, -1.0}) {
    if (k_fixed_even && s < 0) continue;
    std::vector<double> r;
    for (const auto& e : ex) r.push_back(std::abs(e(s)));
    const double m = *std::max_element(r.begin(), r.end());
    if (m < best_max) {
      best_max = m;
      best = std::move(r);
    }
  }
  return best;
}

std::string to_string(Table4Row r) { return "D" + std::to_string(static_cast<int>(r)); }

std::optional<Table4Row> parse_table4_row(const std::string& s) {
  for (int i = 1; i <= 5; ++i)
    if (s == "D" + std::to_string(i)) return static_cast<Table4Row>(i);
  return std::nullopt;
}

double table4_bound(const SymMat2& Bt, double normF) {
  const double nBt = max_norm(Bt);
  const cd det = Bt.matrix().determinant();
  if (is_zero_det(det, nBt)) return std::sqrt(normF * (4 * nBt + 3));
  return normF * (4 * nBt + 2 + std::abs(det)) / std::abs(det);
}

Table4Report table4_residuals(Table4Row row, const SymMat2& Bt, const SymMat2& B, const Mat2& P) {
  require_finite(Bt, "B~");
  require_finite(B, "B");
  require_finite(P, "P");
  const double sB = max_norm(B);
  auto mismatch = [&](const char* want) {
    throw ValidationError(to_string(row) + ": expected B = " + std::string(want));
  };
  switch (row) {
    case Table4Row::D1:
      if (!near(B.a, 0, sB)) mismatch("[[0,b],[b,d]]");
      break;
    case Table4Row::D2:
      if (!near(B.d, 0, sB)) mismatch("[[a,b],[b,0]]");
      break;
    case Table4Row::D3:
      if (!near(B.a, 0, sB) || !near(B.d, 0, sB)) mismatch("[[0,b],[b,0]]");
      break;
    case Table4Row::D4:
      if (!near(B.a, 0, sB) || !near(B.b, 0, sB)) mismatch("0+d");
      break;
    case Table4Row::D5:
      if (!near(B.b, 0, sB) || !near(B.d, 0, sB)) mismatch("a+0");
      break;
  }
  const SymMat2 F = SymMat2::from_matrix(P.transpose() * B.matrix() * P) - Bt;
  const cd e1 = F.a, e2 = F.b, e4 = F.d;
  const cd at = Bt.a, bt = Bt.b, dt = Bt.d;
  auto [x, y, u, v] = entries(P);
  const cd I(0, 1);
  const cd root = std::sqrt(Bt.matrix().determinant());
  const double nF = max_norm(F);

  Table4Report rep;
  const double bound = table4_bound(Bt, nF);
  const double scale = max_norm(Bt) + max_norm(P) * max_norm(P) * sB;

  if (row == Table4Row::D4 || row == Table4Row::D5) {
    if (row == Table4Row::D4)
      rep.defects = {std::abs(u * (bt + e2) - v * (at + e1)), std::abs(v * (bt + e2) - u * (dt + e4))};
    else
      rep.defects = {std::abs(y * (bt + e2) - x * (dt + e4)), std::abs(x * (bt + e2) - y * (at + e1))};
    const double worst = *std::max_element(rep.defects.begin(), rep.defects.end());
    rep.bound = make_report(bound, 0.0, scale);
    rep.bound.margin = allowance(scale * max_norm(P)) - worst;
    return rep;
  }

  // Solve each equation for its free eps and take the sign index that makes both small.
  double best = std::numeric_limits<double>::infinity();
  for (int l = 0; l < 2; ++l) {
    const double sg = l == 0 ? 1.0 : -1.0;
    const cd w1 = I * sg * root + bt, w2 = -I * sg * root + bt;
    cd ep1, ep2;
    switch (row) {
      case Table4Row::D1:
        ep1 = v * (at + e1) / u - w1;
        ep2 = u * (dt + e4) / v - w2;
        break;
      case Table4Row::D2:
        ep1 = x * (dt + e4) / y - w1;
        ep2 = y * (at + e1) / x - w2;
        break;
      default:
        ep1 = 2.0 * B.b * v * x - w1;
        ep2 = 2.0 * B.b * u * y - w2;
        break;
    }
    const double obs = std::max(std::abs(ep1), std::abs(ep2));
    if (obs < best || (std::isnan(best) && !std::isnan(obs))) {
      best = obs;
      rep.sign_index = l;
      rep.defects = {std::abs(ep1), std::abs(ep2)};
    }
  }
  rep.bound = make_report(bound, best, scale);
  return rep;
}

namespace {

BoundSweep finish(BoundSweep s, const BoundReport& r) {
  if (!r.hypothesis_ok) return s;
  ++s.in_hypothesis;
  if (!r.pass()) ++s.violations;
  s.min_margin = std::min(s.min_margin, r.margin);
  if (r.bound_value > 0) s.worst_ratio = std::max(s.worst_ratio, r.observed_value / r.bound_value);
  return s;
}

Mat2 scaled_to(Rng& rng, double target) {
  Mat2 m = random_polydisc(rng, 1.0);
  const double n = max_norm(m);
  return n > 0 ? Mat2(m * (target / n)) : m;
}

SymMat2 sym_scaled_to(Rng& rng, double target) {
  SymMat2 m = random_sym_polydisc(rng, 1.0);
  const double n = max_norm(m);
  return n > 0 ? (target / n) * m : m;
}

}  // namespace

BoundSweep lemadet_sweep(LemadetMode mode, long samples, std::uint64_t seed) {
  if (samples < 1) throw ValidationError("samples must be >= 1");
  BoundSweep s;
  s.name = to_string(mode);
  const std::string stream = "lemadet/" + s.name;
  // Draws until `samples` in-hypothesis cases are collected, capped at 20x attempts.
  for (long i = 0; s.in_hypothesis < samples && i < 20 * samples; ++i) {
    Rng rng = make_stream(seed, stream, static_cast<std::uint64_t>(i));
    ++s.samples;
    PairAB tilde, x;
    GroupElement g = random_group_element(rng);
    const Mat2 Pi = g.P.inverse();
    const double u3 = std::pow(uniform(rng), 3);
    tilde.A = random_polydisc(rng, 1.0);
    if (mode == LemadetMode::PAE && i % 4 == 0) {
      Vec2 a, b;
      a << random_in_disc(rng, 1.0), random_in_disc(rng, 1.0);
      b << random_in_disc(rng, 1.0), random_in_disc(rng, 1.0);
      tilde.A = a * b.transpose();
    }
    const double nAt = max_norm(tilde.A);
    const double dAt = std::abs(tilde.A.determinant());
    double hypE = std::min(dAt / (8 * nAt + 4), 1.0);
    if (mode == LemadetMode::Part3 && dAt > 0) hypE = std::min(hypE, 1.0 / max_norm(Mat2(tilde.A.inverse())));
    const Mat2 E = scaled_to(rng, hypE * u3);
    x.A = (1.0 / g.c) * Pi.adjoint() * (tilde.A + E) * Pi;

    tilde.B = random_sym_polydisc(rng, 1.0);
    if (mode == LemadetMode::PBF && i % 4 == 0) {
      const cd p = random_in_disc(rng, 1.0), q = random_in_disc(rng, 1.0);
      tilde.B = {p * p, p * q, q * q};
    }
    SymMat2 F = sym_scaled_to(rng, std::pow(uniform(rng), 3));
    auto build_B = [&] { x.B = SymMat2::from_matrix(Pi.transpose() * (tilde.B + F).matrix() * Pi); };
    build_B();
    if (mode == LemadetMode::PBF) {
      const double dBt = std::abs(tilde.B.matrix().determinant());
      for (int it = 0; it < 8; ++it) {
        const double h = std::min(dBt / (4 * max_norm(x.B) + 2), 1.0);
        const double nF = max_norm(F);
        if (nF <= h) break;
        F = (h / nF * (1 - 1e-9)) * F;
        build_B();
      }
    }
    s = finish(std::move(s), lemadet_verify(tilde, x, g, mode));
  }
  return s;
}

BoundSweep detxe_sweep(long samples, std::uint64_t seed) {
  if (samples < 1) throw ValidationError("samples must be >= 1");
  BoundSweep s;
  s.name = "detxe";
  for (long i = 0; i < samples; ++i) {
    Rng rng = make_stream(seed, "detxe", static_cast<std::uint64_t>(i));
    ++s.samples;
    const Mat2 X = random_polydisc(rng, 10.0 * uniform(rng));
    const Mat2 D = random_polydisc(rng, 10.0 * std::pow(uniform(rng), 2));
    s = finish(std::move(s), detxe_bound(X, D));
  }
  return s;
}

BoundSweep table4_sweep(Table4Row row, long samples, std::uint64_t seed) {
  if (samples < 1) throw ValidationError("samples must be >= 1");
  BoundSweep s;
  s.name = to_string(row);
  const std::string stream = "table4/" + s.name;
  for (long i = 0; i < samples; ++i) {
    Rng rng = make_stream(seed, stream, static_cast<std::uint64_t>(i));
    ++s.samples;
    SymMat2 B;
    const cd b = random_in_disc(rng, 1.0), d = random_in_disc(rng, 1.0);
    switch (row) {
      case Table4Row::D1: B = {0.0, b, d}; break;
      case Table4Row::D2: B = {d, b, 0.0}; break;
      case Table4Row::D3: B = {0.0, b, 0.0}; break;
      case Table4Row::D4: B = {0.0, 0.0, d}; break;
      case Table4Row::D5: B = {d, 0.0, 0.0}; break;
    }
    Mat2 P = random_invertible(rng);
    // B~ at the normal-form scale ||B~|| <= 1.
    P /= std::sqrt(max_norm(SymMat2::from_matrix(P.transpose() * B.matrix() * P)));
    const SymMat2 F = sym_scaled_to(rng, 1e-3 * std::pow(uniform(rng), 3));
    const SymMat2 Bt = SymMat2::from_matrix(P.transpose() * B.matrix() * P) - F;
    s = finish(std::move(s), table4_residuals(row, Bt, B, P).bound);
  }
  return s;
}

}  // namespace pb

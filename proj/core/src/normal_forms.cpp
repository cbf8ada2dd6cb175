#include "pairbundle/normal_forms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace pb {

namespace {

using P = Param;

std::vector<LabelInfo> build_taxonomy() {
  auto L = [](ALabel a, BShape b, int dim, std::vector<Param> ps, RankRange r, std::string note = {},
              bool supp = false) {
    LabelInfo li;
    li.label = {a, b};
    li.name = to_string(li.label);
    li.dim = dim;
    li.params = std::move(ps);
    li.rank = r;
    li.note = std::move(note);
    li.supplementary = supp;
    return li;
  };
  using A = ALabel;
  using S = BShape;
  return {
      L(A::OneTheta, S::FullHermitianLike, 14, {P::Theta, P::A, P::D, P::ZetaStar}, {1, 2}),
      L(A::OneTheta, S::OffDiagPlusD, 12, {P::Theta, P::B, P::D}, {2, 2}),
      L(A::OneTheta, S::OffDiagPlusA, 12, {P::Theta, P::A, P::B}, {2, 2}),
      L(A::OneTheta, S::DiagAD, 12, {P::Theta, P::A, P::D}, {2, 2}),
      L(A::OneTheta, S::AntiDiag, 10, {P::Theta, P::B}, {2, 2}),
      L(A::OneTheta, S::DiagA0, 10, {P::Theta, P::A}, {1, 1}),
      L(A::OneTheta, S::Diag0D, 10, {P::Theta, P::D}, {1, 1}),
      L(A::OneTheta, S::Zero, 8, {P::Theta}, {0, 0}),

      L(A::TauForm, S::PhaseForm, 14, {P::Tau, P::Phi, P::B, P::Zeta}, {1, 2}),
      L(A::TauForm, S::OffDiagPhase, 12, {P::Tau, P::B, P::Phi}, {2, 2}),
      L(A::TauForm, S::OneZeta, 12, {P::Tau, P::Zeta}, {1, 2}),
      L(A::TauForm, S::Diag01, 10, {P::Tau}, {1, 1}),
      L(A::TauForm, S::AntiDiag, 10, {P::Tau, P::B}, {2, 2}),
      L(A::TauForm, S::Zero, 8, {P::Tau}, {0, 0}),

      L(A::JordanI, S::SymABetaZeta, 13, {P::A, P::Beta, P::Zeta}, {1, 2},
        "not printed; generic stratum of the [[0,1],[1,i]] column, a nonzero real beta survives the stabilizer",
        true),
      L(A::JordanI, S::DiagAZeta, 12, {P::A, P::Zeta}, {1, 2}),
      L(A::JordanI, S::OffDiagDelta, 11, {P::B, P::Delta}, {2, 2},
        "not printed; a nonzero real delta survives the stabilizer when a = 0", true),
      L(A::JordanI, S::AntiDiag, 10, {P::B}, {2, 2}),
      L(A::JordanI, S::Diag0D, 9, {P::D}, {1, 1}),
      L(A::JordanI, S::Zero, 7, {}, {0, 0}),

      L(A::Nilpotent, S::ZetaStarB1, 12, {P::ZetaStar, P::B}, {1, 2},
        "no sign identification on zeta*: the stabilizer fixes arg(ad/b^2)"),
      L(A::Nilpotent, S::OffDiagB1, 10, {P::B}, {2, 2}),
      L(A::Nilpotent, S::DiagA1, 10, {P::A}, {2, 2}),
      L(A::Nilpotent, S::OneB0, 10, {P::B}, {2, 2}),
      L(A::Nilpotent, S::AntiDiag, 8, {P::B}, {2, 2}),
      L(A::Nilpotent, S::Diag10, 8, {}, {1, 1}, "printed next to 0+1 at the same dimension; kept distinct"),
      L(A::Nilpotent, S::Diag01, 8, {}, {1, 1}, "printed next to 1+0 at the same dimension; kept distinct",
        false),
      L(A::Nilpotent, S::Zero, 6, {}, {0, 0}),

      L(A::Identity, S::DiagAD, 11, {P::A, P::D}, {2, 2}),
      L(A::Identity, S::Scalar, 9, {P::D}, {2, 2}),
      L(A::Identity, S::Diag0D, 9, {P::D}, {1, 1}),
      L(A::Identity, S::Zero, 5, {}, {0, 0}),

      L(A::OnePlusMinus, S::DiagAD, 11, {P::A, P::D}, {2, 2}),
      L(A::OnePlusMinus, S::Scalar, 9, {P::D}, {2, 2}),
      L(A::OnePlusMinus, S::AntiDiag, 9, {P::B}, {2, 2}),
      L(A::OnePlusMinus, S::Diag0D, 9, {P::D}, {1, 1}),
      L(A::OnePlusMinus, S::Zero, 5, {}, {0, 0}),
      L(A::OnePlusMinus, S::XOneXi, 11, {P::D, P::Theta}, {2, 2},
        "listed under A = [[0,1],[1,0]], which is *-congruent to 1+(-1)"),
      L(A::OnePlusMinus, S::XOffDiagB1, 10, {P::B}, {2, 2},
        "listed under A = [[0,1],[1,0]], which is *-congruent to 1+(-1)"),
      L(A::OnePlusMinus, S::XDiag10, 8, {}, {1, 1},
        "listed under A = [[0,1],[1,0]], which is *-congruent to 1+(-1)"),

      L(A::OneZero, S::DiagA1, 10, {P::A}, {2, 2},
        "printed dimension 11 exceeds the 4 + 6 real dimensions available over A = 1+0; tangent rank is 10"),
      L(A::OneZero, S::Swap, 8, {}, {2, 2},
        "printed twice (dimensions 9 and 8); one orbit of dimension 8, duplicates merged"),
      L(A::OneZero, S::Diag01, 8, {}, {1, 1}),
      L(A::OneZero, S::DiagA0, 6, {P::A}, {1, 1}),
      L(A::OneZero, S::Zero, 4, {}, {0, 0}),

      L(A::Zero, S::Rank2, 6, {}, {2, 2}),
      L(A::Zero, S::Rank1, 4, {}, {1, 1}),
      L(A::Zero, S::Zero, 0, {}, {0, 0}),
  };
}

const std::map<BundleLabel, std::size_t>& index() {
  static const std::map<BundleLabel, std::size_t> idx = [] {
    std::map<BundleLabel, std::size_t> m;
    const auto& t = taxonomy();
    for (std::size_t i = 0; i < t.size(); ++i) m[t[i].label] = i;
    return m;
  }();
  return idx;
}

double need(const std::optional<double>& v, const char* name) {
  if (!v) throw ValidationError(std::string("missing parameter ") + name);
  return *v;
}

cd need(const std::optional<cd>& v, const char* name) {
  if (!v) throw ValidationError(std::string("missing parameter ") + name);
  return *v;
}

bool is_complex(Param p) { return p == Param::Zeta || p == Param::ZetaStar; }

double wrap_pi(double x, bool* odd) {
  const double k = std::floor(x / kPi);
  double r = x - k * kPi;
  if (r >= kPi) r -= kPi;
  if (r < 0) r = 0;
  if (odd) *odd = std::fmod(std::abs(k), 2.0) == 1.0;
  return r;
}

}  // namespace

const std::vector<LabelInfo>& taxonomy() {
  static const std::vector<LabelInfo> t = build_taxonomy();
  return t;
}

bool is_catalogued(const BundleLabel& l) { return index().count(l) > 0; }

const LabelInfo& label_info(const BundleLabel& l) {
  auto it = index().find(l);
  if (it == index().end()) throw ValidationError("label not in the taxonomy: " + to_string(l));
  return taxonomy()[it->second];
}

std::string to_string(ALabel a) {
  switch (a) {
    case ALabel::Zero: return "zero";
    case ALabel::OneZero: return "one_zero";
    case ALabel::Identity: return "identity";
    case ALabel::OnePlusMinus: return "one_plus_minus";
    case ALabel::OneTheta: return "one_theta";
    case ALabel::Nilpotent: return "nilpotent";
    case ALabel::TauForm: return "tau_form";
    case ALabel::JordanI: return "jordan_i";
  }
  return "?";
}

std::string to_string(BLabel b) {
  switch (b) {
    case BLabel::Zero: return "zero";
    case BLabel::Rank1: return "rank1";
    case BLabel::Rank2: return "rank2";
  }
  return "?";
}

std::string to_string(BShape b) {
  switch (b) {
    case BShape::Zero: return "zero";
    case BShape::FullHermitianLike: return "full_hermitian_like";
    case BShape::OffDiagPlusD: return "off_diag_plus_d";
    case BShape::OffDiagPlusA: return "off_diag_plus_a";
    case BShape::DiagAD: return "diag_ad";
    case BShape::AntiDiag: return "anti_diag";
    case BShape::DiagA0: return "diag_a0";
    case BShape::Diag0D: return "diag_0d";
    case BShape::PhaseForm: return "phase_form";
    case BShape::OffDiagPhase: return "off_diag_phase";
    case BShape::OneZeta: return "one_zeta";
    case BShape::Diag01: return "diag_01";
    case BShape::DiagAZeta: return "diag_a_zeta";
    case BShape::SymABetaZeta: return "sym_a_beta_zeta";
    case BShape::OffDiagDelta: return "off_diag_delta";
    case BShape::ZetaStarB1: return "zeta_star_b1";
    case BShape::OffDiagB1: return "off_diag_b1";
    case BShape::DiagA1: return "diag_a1";
    case BShape::OneB0: return "one_b_0";
    case BShape::Diag10: return "diag_10";
    case BShape::Scalar: return "scalar";
    case BShape::XOneXi: return "x_one_xi";
    case BShape::XOffDiagB1: return "x_off_diag_b1";
    case BShape::XDiag10: return "x_diag_10";
    case BShape::Swap: return "swap";
    case BShape::Rank2: return "rank2";
    case BShape::Rank1: return "rank1";
  }
  return "?";
}

std::string to_string(const BundleLabel& l) { return to_string(l.a) + "/" + to_string(l.b); }

std::string to_string(Param p) {
  switch (p) {
    case Param::Theta: return "theta";
    case Param::Tau: return "tau";
    case Param::Phi: return "phi";
    case Param::A: return "a";
    case Param::B: return "b";
    case Param::D: return "d";
    case Param::Beta: return "beta";
    case Param::Delta: return "delta";
    case Param::Zeta: return "zeta";
    case Param::ZetaStar: return "zeta_star";
  }
  return "?";
}

std::optional<ALabel> parse_alabel(std::string_view s) {
  for (ALabel a : {ALabel::Zero, ALabel::OneZero, ALabel::Identity, ALabel::OnePlusMinus, ALabel::OneTheta,
                   ALabel::Nilpotent, ALabel::TauForm, ALabel::JordanI})
    if (to_string(a) == s) return a;
  return std::nullopt;
}

std::optional<BundleLabel> parse_label(std::string_view s) {
  for (const auto& li : taxonomy())
    if (li.name == s) return li.label;
  return std::nullopt;
}

int a_bundle_dimension(ALabel a) {
  switch (a) {
    case ALabel::Zero: return 0;
    case ALabel::OneZero: return 4;
    case ALabel::Identity: return 5;
    case ALabel::OnePlusMinus: return 5;
    case ALabel::Nilpotent: return 6;
    case ALabel::JordanI: return 7;
    case ALabel::OneTheta: return 8;
    case ALabel::TauForm: return 8;
  }
  return -1;
}

int b_rank(BLabel b) { return b == BLabel::Zero ? 0 : b == BLabel::Rank1 ? 1 : 2; }

BLabel b_label_of_rank(int r) { return r <= 0 ? BLabel::Zero : r == 1 ? BLabel::Rank1 : BLabel::Rank2; }

Mat2 a_representative(ALabel a, const BundleParams& p) {
  Mat2 m = Mat2::Zero();
  switch (a) {
    case ALabel::Zero: break;
    case ALabel::OneZero: m(0, 0) = 1.0; break;
    case ALabel::Identity: m = Mat2::Identity(); break;
    case ALabel::OnePlusMinus: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    case ALabel::OneTheta:
      m(0, 0) = 1.0;
      m(1, 1) = std::polar(1.0, need(p.theta, "theta"));
      break;
    case ALabel::Nilpotent: m(0, 1) = 1.0; break;
    case ALabel::TauForm:
      m(0, 1) = 1.0;
      m(1, 0) = need(p.tau, "tau");
      break;
    case ALabel::JordanI:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      m(1, 1) = cd(0.0, 1.0);
      break;
  }
  return m;
}

PairAB representative(const BundleLabel& l, const BundleParams& p) {
  const auto violations = validate_params(l, p);
  if (!violations.empty()) throw ValidationError(violations.front());

  PairAB x;
  x.A = a_representative(l.a, p);
  if (l.a == ALabel::OnePlusMinus &&
      (l.b == BShape::XOneXi || l.b == BShape::XOffDiagB1 || l.b == BShape::XDiag10)) {
    x.A << 0.0, 1.0, 1.0, 0.0;
  }
  SymMat2& B = x.B;
  switch (l.b) {
    case BShape::Zero: break;
    case BShape::FullHermitianLike: B = {*p.a, *p.zeta_star, *p.d}; break;
    case BShape::OffDiagPlusD: B = {0.0, *p.b, *p.d}; break;
    case BShape::OffDiagPlusA: B = {*p.a, *p.b, 0.0}; break;
    case BShape::DiagAD: B = {*p.a, 0.0, *p.d}; break;
    case BShape::AntiDiag: B = {0.0, *p.b, 0.0}; break;
    case BShape::DiagA0: B = {*p.a, 0.0, 0.0}; break;
    case BShape::Diag0D: B = {0.0, 0.0, *p.d}; break;
    case BShape::PhaseForm: B = {std::polar(1.0, *p.phi), *p.b, *p.zeta}; break;
    case BShape::OffDiagPhase: B = {0.0, *p.b, std::polar(1.0, *p.phi)}; break;
    case BShape::OneZeta: B = {1.0, 0.0, *p.zeta}; break;
    case BShape::Diag01: B = {0.0, 0.0, 1.0}; break;
    case BShape::DiagAZeta: B = {*p.a, 0.0, *p.zeta}; break;
    case BShape::SymABetaZeta: B = {*p.a, *p.beta, *p.zeta}; break;
    case BShape::OffDiagDelta: B = {0.0, *p.b, *p.delta}; break;
    case BShape::ZetaStarB1: B = {*p.zeta_star, *p.b, 1.0}; break;
    case BShape::OffDiagB1: B = {0.0, *p.b, 1.0}; break;
    case BShape::DiagA1: B = {*p.a, 0.0, 1.0}; break;
    case BShape::OneB0: B = {1.0, *p.b, 0.0}; break;
    case BShape::Diag10: B = {1.0, 0.0, 0.0}; break;
    case BShape::Scalar: B = {*p.d, 0.0, *p.d}; break;
    case BShape::XOneXi: B = {1.0, 0.0, std::polar(*p.d, *p.theta)}; break;
    case BShape::XOffDiagB1: B = {0.0, *p.b, 1.0}; break;
    case BShape::XDiag10: B = {1.0, 0.0, 0.0}; break;
    case BShape::Swap: B = {0.0, 1.0, 0.0}; break;
    case BShape::Rank2: B = {1.0, 0.0, 1.0}; break;
    case BShape::Rank1: B = {1.0, 0.0, 0.0}; break;
  }
  return x;
}

int table_dimension(const BundleLabel& l) { return label_info(l).dim; }

BundleParams canonicalize_params(const BundleLabel& l, const BundleParams& p) {
  BundleParams q;
  const auto& li = label_info(l);
  for (Param k : li.params) {
    switch (k) {
      case Param::Theta: q.theta = p.theta; break;
      case Param::Tau: q.tau = p.tau; break;
      case Param::Phi: q.phi = p.phi; break;
      case Param::A: q.a = p.a; break;
      case Param::B: q.b = p.b; break;
      case Param::D: q.d = p.d; break;
      case Param::Beta: q.beta = p.beta; break;
      case Param::Delta: q.delta = p.delta; break;
      case Param::Zeta: q.zeta = p.zeta; break;
      case Param::ZetaStar: q.zeta_star = p.zeta_star; break;
    }
  }
  if (l.a == ALabel::OneTheta && l.b == BShape::FullHermitianLike && q.zeta_star) {
    const cd z = *q.zeta_star;
    const double arg = std::arg(z);
    if (arg < 0 || arg >= kPi) q.zeta_star = -z;
    if (q.zeta_star->imag() == 0.0) q.zeta_star = cd(q.zeta_star->real(), 0.0);
  }
  if (q.phi) {
    bool odd = false;
    q.phi = wrap_pi(*q.phi, &odd);
    if (odd && q.zeta) q.zeta = -*q.zeta;
  }
  if ((l.a == ALabel::Identity || l.a == ALabel::OnePlusMinus) && l.b == BShape::DiagAD && q.a && q.d &&
      *q.a > *q.d)
    std::swap(q.a, q.d);
  return q;
}

std::vector<std::string> validate_params(const BundleLabel& l, const BundleParams& p) {
  std::vector<std::string> out;
  if (!is_catalogued(l)) {
    out.push_back("label not in the taxonomy: " + to_string(l));
    return out;
  }
  const auto& li = label_info(l);
  auto finite = [](double v) { return std::isfinite(v); };
  for (Param k : li.params) {
    switch (k) {
      case Param::Theta:
        if (!p.theta) out.push_back("missing parameter theta");
        else if (!(*p.theta > 0 && *p.theta < kPi)) out.push_back("θ must lie in (0,π)");
        break;
      case Param::Tau:
        if (!p.tau) out.push_back("missing parameter tau");
        else if (!(*p.tau > 0 && *p.tau < 1)) out.push_back("τ must lie in (0,1)");
        break;
      case Param::Phi:
        if (!p.phi) out.push_back("missing parameter phi");
        else if (!finite(*p.phi)) out.push_back("φ must be finite");
        break;
      case Param::A:
        if (!p.a) out.push_back("missing parameter a");
        else if (!(*p.a > 0) || !finite(*p.a)) out.push_back("a must be > 0");
        break;
      case Param::B:
        if (!p.b) out.push_back("missing parameter b");
        else if (!(*p.b > 0) || !finite(*p.b)) out.push_back("b must be > 0");
        break;
      case Param::D:
        if (!p.d) out.push_back("missing parameter d");
        else if (!(*p.d > 0) || !finite(*p.d)) out.push_back("d must be > 0");
        break;
      case Param::Beta:
        if (!p.beta) out.push_back("missing parameter beta");
        else if (*p.beta == 0 || !finite(*p.beta)) out.push_back("β must be a nonzero real");
        break;
      case Param::Delta:
        if (!p.delta) out.push_back("missing parameter delta");
        else if (*p.delta == 0 || !finite(*p.delta)) out.push_back("δ must be a nonzero real");
        break;
      case Param::Zeta:
        if (!p.zeta) out.push_back("missing parameter zeta");
        else if (!finite(p.zeta->real()) || !finite(p.zeta->imag())) out.push_back("ζ must be finite");
        break;
      case Param::ZetaStar:
        if (!p.zeta_star) out.push_back("missing parameter zeta_star");
        else if (*p.zeta_star == cd(0.0) || !finite(p.zeta_star->real()) || !finite(p.zeta_star->imag()))
          out.push_back("ζ* must be a nonzero complex number");
        break;
    }
  }
  if ((l.a == ALabel::Identity || l.a == ALabel::OnePlusMinus) && l.b == BShape::DiagAD && p.a && p.d &&
      !(*p.a < *p.d)) {
    if (*p.a == *p.d) out.push_back("a<d required; use dI₂ label");
    else out.push_back("a<d required");
  }
  return out;
}

BundleParams generic_params(const BundleLabel& l) {
  BundleParams q;
  for (Param k : label_info(l).params) {
    switch (k) {
      case Param::Theta: q.theta = 1.0; break;
      case Param::Tau: q.tau = 0.5; break;
      case Param::Phi: q.phi = 0.7; break;
      case Param::A: q.a = 1.0; break;
      case Param::B: q.b = 1.0; break;
      case Param::D: q.d = 2.0; break;
      case Param::Beta: q.beta = 0.6; break;
      case Param::Delta: q.delta = 0.8; break;
      case Param::Zeta: q.zeta = cd(0.3, 0.4); break;
      case Param::ZetaStar: q.zeta_star = cd(1.0, 1.0); break;
    }
  }
  return q;
}

int real_param_count(const BundleLabel& l) {
  int n = 0;
  for (Param k : label_info(l).params) n += is_complex(k) ? 2 : 1;
  return n;
}

std::vector<double> params_to_real(const BundleLabel& l, const BundleParams& p) {
  std::vector<double> v;
  for (Param k : label_info(l).params) {
    switch (k) {
      case Param::Theta: v.push_back(need(p.theta, "theta")); break;
      case Param::Tau: v.push_back(need(p.tau, "tau")); break;
      case Param::Phi: v.push_back(need(p.phi, "phi")); break;
      case Param::A: v.push_back(need(p.a, "a")); break;
      case Param::B: v.push_back(need(p.b, "b")); break;
      case Param::D: v.push_back(need(p.d, "d")); break;
      case Param::Beta: v.push_back(need(p.beta, "beta")); break;
      case Param::Delta: v.push_back(need(p.delta, "delta")); break;
      case Param::Zeta: {
        const cd z = need(p.zeta, "zeta");
        v.push_back(z.real());
        v.push_back(z.imag());
        break;
      }
      case Param::ZetaStar: {
        const cd z = need(p.zeta_star, "zeta_star");
        v.push_back(z.real());
        v.push_back(z.imag());
        break;
      }
    }
  }
  return v;
}

BundleParams params_from_real(const BundleLabel& l, const std::vector<double>& v) {
  BundleParams q;
  std::size_t i = 0;
  auto next = [&] {
    if (i >= v.size()) throw ValidationError("too few real parameters for " + to_string(l));
    return v[i++];
  };
  for (Param k : label_info(l).params) {
    switch (k) {
      case Param::Theta: q.theta = next(); break;
      case Param::Tau: q.tau = next(); break;
      case Param::Phi: q.phi = next(); break;
      case Param::A: q.a = next(); break;
      case Param::B: q.b = next(); break;
      case Param::D: q.d = next(); break;
      case Param::Beta: q.beta = next(); break;
      case Param::Delta: q.delta = next(); break;
      case Param::Zeta: {
        const double re = next();
        q.zeta = cd(re, next());
        break;
      }
      case Param::ZetaStar: {
        const double re = next();
        q.zeta_star = cd(re, next());
        break;
      }
    }
  }
  return q;
}

double params_distance(const BundleLabel& l, const BundleParams& x, const BundleParams& y) {
  const auto a = params_to_real(l, x);
  const auto b = params_to_real(l, y);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace pb

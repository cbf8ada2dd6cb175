#pragma once

#include "pairbundle/core.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pb {

enum class ALabel { Zero, OneZero, Identity, OnePlusMinus, OneTheta, Nilpotent, TauForm, JordanI };

enum class BLabel { Zero, Rank1, Rank2 };

enum class BShape {
  Zero,
  FullHermitianLike,  // [[a, z*], [z*, d]]
  OffDiagPlusD,       // [[0, b], [b, d]]
  OffDiagPlusA,       // [[a, b], [b, 0]]
  DiagAD,             // a + d
  AntiDiag,           // [[0, b], [b, 0]]
  DiagA0,
  Diag0D,
  PhaseForm,     // [[e^{i phi}, b], [b, zeta]]
  OffDiagPhase,  // [[0, b], [b, e^{i phi}]]
  OneZeta,       // 1 + zeta
  Diag01,
  DiagAZeta,     // a + zeta
  SymABetaZeta,  // [[a, beta], [beta, zeta]], beta real nonzero
  OffDiagDelta,  // [[0, b], [b, delta]], delta real nonzero
  ZetaStarB1,    // [[z*, b], [b, 1]]
  OffDiagB1,     // [[0, b], [b, 1]]
  DiagA1,
  OneB0,  // [[1, b], [b, 0]]
  Diag10,
  Scalar,  // d I
  XOneXi,         // 1 + d e^{i theta}, paired with A = [[0,1],[1,0]]
  XOffDiagB1,     // [[0, b], [b, 1]], paired with A = [[0,1],[1,0]]
  XDiag10,        // 1 + 0, paired with A = [[0,1],[1,0]]
  Swap,           // [[0, 1], [1, 0]]
  Rank2,          // I
  Rank1,          // 1 + 0
};

struct BundleLabel {
  ALabel a = ALabel::Zero;
  BShape b = BShape::Zero;
  auto operator<=>(const BundleLabel&) const = default;
};

enum class Param { Theta, Tau, Phi, A, B, D, Beta, Delta, Zeta, ZetaStar };

struct BundleParams {
  std::optional<double> theta, tau, phi, a, b, d, beta, delta;
  std::optional<cd> zeta, zeta_star;

  bool operator==(const BundleParams&) const = default;
};

struct RankRange {
  int lo = 0;
  int hi = 0;
  bool pure() const { return lo == hi; }
};

struct LabelInfo {
  BundleLabel label;
  std::string name;
  int dim = 0;
  std::vector<Param> params;
  RankRange rank;
  bool supplementary = false;
  std::string note;
};

const std::vector<LabelInfo>& taxonomy();
const LabelInfo& label_info(const BundleLabel& l);
bool is_catalogued(const BundleLabel& l);

std::string to_string(ALabel a);
std::string to_string(BLabel b);
std::string to_string(BShape b);
std::string to_string(const BundleLabel& l);
std::string to_string(Param p);
std::optional<ALabel> parse_alabel(std::string_view s);
std::optional<BundleLabel> parse_label(std::string_view s);

// Real dimension of the Psi_1 bundle of the A-label.
int a_bundle_dimension(ALabel a);
// Rank of the B-label.
int b_rank(BLabel b);
BLabel b_label_of_rank(int r);

Mat2 a_representative(ALabel a, const BundleParams& p);
PairAB representative(const BundleLabel& l, const BundleParams& p);
int table_dimension(const BundleLabel& l);
BundleParams canonicalize_params(const BundleLabel& l, const BundleParams& p);
std::vector<std::string> validate_params(const BundleLabel& l, const BundleParams& p);
BundleParams generic_params(const BundleLabel& l);

// Flat real coordinates of the label's parameters (complex parameters take two slots).
int real_param_count(const BundleLabel& l);
std::vector<double> params_to_real(const BundleLabel& l, const BundleParams& p);
BundleParams params_from_real(const BundleLabel& l, const std::vector<double>& v);

// Largest absolute difference over the label's parameters.
double params_distance(const BundleLabel& l, const BundleParams& x, const BundleParams& y);

}  // namespace pb

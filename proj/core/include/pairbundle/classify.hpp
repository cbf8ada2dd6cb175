#pragma once

#include "pairbundle/core.hpp"
#include "pairbundle/normal_forms.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace pb {

struct ToleranceConfig {
  double rank_tol = 1e-8;         // singular-value ratios and entry zero tests
  double eig_cluster_tol = 1e-7;  // distance of normalized traces from the +-2 boundary
  double unit_circle_tol = 1e-8;  // Hermitian / parallel / diagonalizable residuals

  void validate() const;
  ToleranceConfig scaled(double f) const;
};

class AmbiguityError : public std::runtime_error {
 public:
  AmbiguityError(const std::string& what, std::vector<std::string> candidates)
      : std::runtime_error(what), candidates_(std::move(candidates)) {}
  const std::vector<std::string>& candidates() const { return candidates_; }

 private:
  std::vector<std::string> candidates_;
};

class ClassificationError : public std::runtime_error {
 public:
  ClassificationError(int stage, const std::string& what)
      : std::runtime_error("stage " + std::to_string(stage) + ": " + what), stage_(stage) {}
  int stage() const { return stage_; }

 private:
  int stage_;
};

struct AClassification {
  ALabel label = ALabel::Zero;
  BundleParams params;  // theta or tau only
  GroupElement reducer;
  double residual = 0.0;
};

struct BClassification {
  BLabel label = BLabel::Zero;
  Mat2 reducer = Mat2::Identity();
  double residual = 0.0;
};

struct Classification {
  BundleLabel label;
  BundleParams params;
  GroupElement reducer;
  double residual = 0.0;
  bool ambiguous = false;
  std::vector<BundleLabel> alternatives;
};

struct StabilizerReduction {
  BShape shape = BShape::Zero;
  BundleParams params;  // B-part parameters only
  cd c{1.0};
  Mat2 P = Mat2::Identity();
  double membership = 0.0;  // ||c P^* A0 P - A_target||
};

// Throws AmbiguityError when the decision flips under tol*10 or tol/10.
AClassification classify_A(const Mat2& A, const ToleranceConfig& tol = {});
BClassification classify_B(const SymMat2& B, const ToleranceConfig& tol = {});

// Boundary cases return the lower-dimensional label with ambiguous = true.
Classification classify_pair(const PairAB& x, const ToleranceConfig& tol = {});

// B must already be expressed in the frame where A is the canonical a_representative.
StabilizerReduction stabilizer_reduce_B(ALabel a, const BundleParams& a_params, const SymMat2& B,
                                        const ToleranceConfig& tol = {});

namespace detail {

struct AResult {
  ALabel label = ALabel::Zero;
  BundleParams params;
  GroupElement reducer;
  bool forced_ambiguous = false;
};

// Error scale of the entries of R^T B R given the frame R and the input scale beta.
struct Frame {
  Mat2 R = Mat2::Identity();
  double beta = 1.0;
  SymMat2 B_in;
};

AResult classify_A_once(const Mat2& A, const ToleranceConfig& tol, double scale);
StabilizerReduction reduce_once(ALabel a, const BundleParams& a_params, const SymMat2& B, const Frame& f,
                                const ToleranceConfig& tol);
Classification classify_once(const PairAB& x, const ToleranceConfig& tol, bool* forced_ambiguous);

}  // namespace detail

}  // namespace pb

#pragma once

#include "pairbundle/core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pb {

struct BoundReport {
  bool hypothesis_ok = true;
  double bound_value = 0.0;
  double observed_value = 0.0;
  double margin = 0.0;  // bound - observed

  // A report whose hypothesis fails is vacuous and counts as a pass.
  bool pass() const { return !hypothesis_ok || margin >= 0.0; }
};

// |det(X + D) - det X| <= ||D|| (4||X|| + 2||D||)
BoundReport detxe_bound(const Mat2& X, const Mat2& D);

enum class LemadetMode { PAE, CE, PBF, Part3 };
std::string to_string(LemadetMode m);
std::optional<LemadetMode> parse_lemadet_mode(const std::string& s);

// E = c P^* A P - A~ and F = P^T B P - B~ with (A~, B~) = tilde and (A, B) = x.
// PAE:   |sqrt|det A| |det P| - |sqrt det A~|| against the E bound.
// CE:    min_k |c - (-1)^k e^{i Delta/2}|, Delta = arg(det A~ / det A).
// PBF:   min over the square-root branch of |sqrt(det B) det P - sqrt(det B~)|.
// Part3: ||det A~ det B| - |det B~ det A||.
BoundReport lemadet_verify(const PairAB& tilde, const PairAB& x, const GroupElement& g, LemadetMode mode);

// Rows in printed order; the row fixes the A~ and A shapes.
enum class Table3Row { C1 = 1, C2, C3, C4, C5, C6, C7, C8, C9, C10, C11, C12, C13, C14 };
std::optional<Table3Row> parse_table3_row(const std::string& s);
std::string to_string(Table3Row r);

// Moduli of the row's expressions, each minimized over k in {0, 1}.
// Throws ValidationError when A~ or A does not have the row's shape.
std::vector<double> table3_residuals(Table3Row row, const Mat2& A_tilde, const Mat2& A, cd c, const Mat2& P);

enum class Table4Row { D1 = 1, D2, D3, D4, D5 };
std::optional<Table4Row> parse_table4_row(const std::string& s);
std::string to_string(Table4Row r);

struct Table4Report {
  BoundReport bound;  // observed = max(|eps2'|, |eps2''|) for D1-D3, 0 for D4-D5
  std::vector<double> defects;  // equation defects at the optimal sign index
  int sign_index = 0;
};

// F = P^T B P - B~ with B in the row's shape.
Table4Report table4_residuals(Table4Row row, const SymMat2& B_tilde, const SymMat2& B, const Mat2& P);
double table4_bound(const SymMat2& B_tilde, double normF);

struct BoundSweep {
  std::string name;
  long samples = 0;
  long in_hypothesis = 0;
  long violations = 0;
  double worst_ratio = 0.0;  // max observed / bound
  double min_margin = 1e300;
};

// Random in-hypothesis instances: A~, B~ in the unit polydisc, P with condition <= 1e3,
// E and F scaled inside the mode's hypothesis. Collects `samples` in-hypothesis cases.
BoundSweep lemadet_sweep(LemadetMode mode, long samples, std::uint64_t seed);
// X, D in polydiscs of radius <= 10.
BoundSweep detxe_sweep(long samples, std::uint64_t seed);
// Random congruences of row-shaped B scaled so that ||P^T B P|| = 1, with ||F|| <= 1e-3.
BoundSweep table4_sweep(Table4Row row, long samples, std::uint64_t seed);

}  // namespace pb

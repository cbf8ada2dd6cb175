#pragma once

#include <pairbundle/core.hpp>
#include <pairbundle/rng.hpp>

namespace pbt {

using namespace pb;

inline PairAB random_pair(Rng& r, double rad = 1.0) { return {random_polydisc(r, rad), random_sym_polydisc(r, rad)}; }

inline Mat2 m2(cd a, cd b, cd c, cd d) { return make_mat2(a, b, c, d); }

inline const cd I{0.0, 1.0};

}  // namespace pbt

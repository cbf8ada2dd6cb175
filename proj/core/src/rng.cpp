#include "pairbundle/rng.hpp"

#include <cmath>

namespace pb {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::string_view name, std::uint64_t index) {
  return splitmix64(seed ^ fnv1a(name) ^ splitmix64(index));
}

Rng make_stream(std::uint64_t seed, std::string_view name, std::uint64_t index) {
  std::seed_seq seq{stream_seed(seed, name, index), static_cast<std::uint64_t>(index)};
  return Rng(seq);
}

double uniform(Rng& r, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(r); }

cd random_in_disc(Rng& r, double rad) {
  return std::polar(rad * std::sqrt(uniform(r)), uniform(r, 0.0, 2 * kPi));
}

Mat2 random_polydisc(Rng& r, double rad) {
  Mat2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = random_in_disc(r, rad);
  return m;
}

SymMat2 random_sym_polydisc(Rng& r, double rad) {
  const cd a = random_in_disc(r, rad);
  const cd b = random_in_disc(r, rad);
  const cd d = random_in_disc(r, rad);
  return {a, b, d};
}

Mat2 random_unitary(Rng& r) {
  std::normal_distribution<double> n;
  Mat2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = cd(n(r), n(r));
  Eigen::HouseholderQR<Mat2> qr(m);
  Mat2 q = qr.householderQ();
  const Mat2 R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 2; ++j) {
    const cd d = R(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Mat2 random_invertible(Rng& r, double max_cond) {
  const double lc = uniform(r) * std::log(max_cond);
  const double s = std::exp(uniform(r, -1.0, 1.0));
  Mat2 D = Mat2::Zero();
  D(0, 0) = s;
  D(1, 1) = s * std::exp(-lc);
  return random_unitary(r) * D * random_unitary(r);
}

GroupElement random_group_element(Rng& r, double max_cond) {
  GroupElement g;
  g.c = std::polar(1.0, uniform(r, 0.0, 2 * kPi));
  g.P = random_invertible(r, max_cond);
  return g;
}

}  // namespace pb
